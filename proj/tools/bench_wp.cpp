// Word-problem scaling: median time of is_trivial on seeded random words of
// length 2^k, and on the trivial words alpha^n((adacac)^4) of length 24 * 2^n.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "treegrp/constructions.hpp"

using namespace treegrp;

namespace {

Word random_word(std::mt19937_64& rng, std::size_t n) {
  Word w;
  for (std::size_t i = 0; i < n; ++i) w.push_back(Letter{static_cast<std::uint8_t>(rng() % 4), false});
  return w;
}

double median_seconds(const std::vector<Word>& words, const Context& ctx) {
  std::vector<double> times;
  for (const auto& w : words) {
    const auto start = std::chrono::steady_clock::now();
    volatile bool t = is_trivial(w, ctx);
    (void)t;
    times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());
  return times[times.size() / 2];
}

}  // namespace

int main() {
  const auto g = build_context("(012)");
  std::mt19937_64 rng(1);
  std::printf("kind,n,median_s,per_nlogn_ns\n");
  auto report = [](const char* kind, std::size_t n, double t) {
    std::printf("%s,%zu,%.6f,%.3f\n", kind, n, t, t * 1e9 / (static_cast<double>(n) * std::log2(static_cast<double>(n))));
  };
  for (unsigned k = 6; k <= 16; ++k) {
    const std::size_t n = std::size_t{1} << k;
    std::vector<Word> raw;
    for (int i = 0; i < 9; ++i) raw.push_back(random_word(rng, n));
    report("random", n, median_seconds(raw, *g));
  }
  for (const auto& r : lysenok_relators(12, *g)) {
    if (r.family != "(adacac)^4") continue;
    report("relator", r.word.size(), median_seconds({r.word}, *g));
  }
}
