#pragma once

#include <array>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "treegrp/context.hpp"
#include "treegrp/omega_sequence.hpp"
#include "treegrp/permutation.hpp"

namespace treegrp {

enum class OmegaClassKind { Omega0, Omega1Only, Omega2 };

struct OmegaClass {
  OmegaClassKind kind;
  std::size_t stabilization_index = 0;  // Omega2 only: first n with w_n = w_{n+1} = ...

  std::string str() const {
    switch (kind) {
      case OmegaClassKind::Omega0: return "Omega0";
      case OmegaClassKind::Omega1Only: return "Omega1-only";
      case OmegaClassKind::Omega2: return "Omega2(n=" + std::to_string(stabilization_index) + ")";
    }
    return "?";
  }
};

inline OmegaSequence parse_omega(std::string_view text) { return OmegaSequence::parse(text); }

inline OmegaSequence shift(const OmegaSequence& omega) { return omega.shift(); }

inline OmegaClass classify(const OmegaSequence& omega) {
  const std::set<char> symbols(omega.period().begin(), omega.period().end());
  if (symbols.size() == 3) return {OmegaClassKind::Omega0};
  if (symbols.size() == 2) return {OmegaClassKind::Omega1Only};
  return {OmegaClassKind::Omega2, omega.preperiod().size() + 1};
}

/// Klein letters of the omega family, indexed 0 = b, 1 = c, 2 = d.
enum class KleinLetter : int { b = 0, c = 1, d = 2 };

/// First-level coordinate of a Klein generator under a symbol: true means
/// the root swap `a`, false means the identity. Symbol s assigns the
/// identity to d, c, b for s = 0, 1, 2 respectively:
///   0 -> (a, a, 1),  1 -> (a, 1, a),  2 -> (1, a, a).
inline bool coordinate_is_a(int symbol, KleinLetter x) { return static_cast<int>(x) != 2 - symbol; }

/// A Klein generator is trivial iff its coordinate is 1 at every position.
inline bool klein_generator_trivial(const OmegaSequence& omega, KleinLetter x) {
  for (const std::string* part : {&omega.preperiod(), &omega.period()})
    for (char ch : *part)
      if (coordinate_is_a(ch - '0', x)) return false;
  return true;
}

/// 1-based index of the first position j with coordinate 1 for x, or 0 if none.
inline std::size_t first_identity_position(const OmegaSequence& omega, KleinLetter x) {
  const std::size_t horizon = omega.preperiod().size() + omega.period().size();
  for (std::size_t j = 1; j <= horizon; ++j)
    if (!coordinate_is_a(omega.symbol(j), x)) return j;
  return 0;
}

namespace detail {

struct OmegaOrbit {
  std::deque<Context> contexts;
};

inline ContextPtr make_omega_context(const OmegaSequence& omega) {
  auto orbit = std::make_shared<OmegaOrbit>();
  std::map<std::string, std::size_t> index;
  std::vector<OmegaSequence> states;
  for (OmegaSequence s = omega; !index.count(s.str()); s = s.shift()) {
    index.emplace(s.str(), states.size());
    states.push_back(s);
  }
  for (const auto& s : states) {
    std::vector<Generator> gens;
    gens.push_back(Generator{'a', 2, Permutation::transposition(2, 0, 1), {Word{}, Word{}}, false});
    for (int x = 0; x < 3; ++x) {
      const auto kx = static_cast<KleinLetter>(x);
      Word coordinate = coordinate_is_a(s.symbol(1), kx) ? Word{Letter{0, false}} : Word{};
      Word tail{Letter{static_cast<std::uint8_t>(x + 1), false}};
      gens.push_back(Generator{static_cast<char>('b' + x), 2, Permutation::identity(2), {coordinate, tail},
                               klein_generator_trivial(s, kx)});
    }
    auto& ctx = orbit->contexts.emplace_back("omega:" + s.str(), 2, std::move(gens));
    ctx.set_klein({1, 2, 3});
    ctx.set_omega(s);
    ctx.set_description("G_" + s.str());
  }
  for (std::size_t i = 0; i < states.size(); ++i)
    orbit->contexts[i].set_child(&orbit->contexts[index.at(states[i].shift().str())]);
  return ContextPtr(orbit, &orbit->contexts.front());
}

}  // namespace detail

/// The binary context of G_omega: `a` swaps the two subtrees and each Klein
/// generator x has sections (coordinate_x(w_1), x) with the tail read in the
/// context of the shifted sequence. Contexts are cached per sequence so
/// repeated builds share memoized results.
inline ContextPtr build_context(const OmegaSequence& omega) {
  static std::mutex mutex;
  static std::map<std::string, ContextPtr> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(omega.str());
  if (it != cache.end()) return it->second;
  ContextPtr ctx = detail::make_omega_context(omega);
  cache.emplace(omega.str(), ctx);
  return ctx;
}

inline ContextPtr build_context(std::string_view omega_text) { return build_context(parse_omega(omega_text)); }

struct DegenerateReport {
  std::vector<char> trivial;                     // subset of {b, c, d}
  std::vector<std::pair<char, char>> coincide;  // pairs equal as group elements

  bool degenerate() const { return !trivial.empty() || !coincide.empty(); }

  std::string str() const {
    if (!degenerate()) return "no degeneracies";
    std::string out;
    for (char t : trivial) out += std::string(out.empty() ? "" : "; ") + t + " trivial";
    for (auto [x, y] : coincide) out += std::string(out.empty() ? "" : "; ") + x + " = " + y;
    return out;
  }
};

/// Scans preperiod plus one period. Since bcd = 1, two Klein generators
/// coincide exactly when the third one is trivial.
inline DegenerateReport degenerate_report(const OmegaSequence& omega) {
  DegenerateReport report;
  const char names[3] = {'b', 'c', 'd'};
  for (int x = 0; x < 3; ++x) {
    if (!klein_generator_trivial(omega, static_cast<KleinLetter>(x))) continue;
    report.trivial.push_back(names[x]);
    const int y = (x + 1) % 3, z = (x + 2) % 3;
    report.coincide.emplace_back(names[std::min(y, z)], names[std::max(y, z)]);
  }
  return report;
}

}  // namespace treegrp
