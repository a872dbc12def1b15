#pragma once

#include <cstdint>
#include <deque>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "treegrp/context.hpp"
#include "treegrp/errors.hpp"
#include "treegrp/level_action.hpp"
#include "treegrp/permutation.hpp"

namespace treegrp {

// ---------------------------------------------------------------------------
// Normal form
// ---------------------------------------------------------------------------

/// Rewrites `w` into the context's normal form: trivial generators are
/// dropped, runs of one generator are reduced modulo its order, and adjacent
/// Klein letters are multiplied out. For the omega family this yields words
/// alternating between `a` and {b,c,d}.
inline Word normalize(const Word& w, const Context& ctx) {
  struct Syllable {
    std::uint8_t gen;
    long long exp;
  };
  const auto& klein = ctx.klein();
  auto in_klein = [&](std::uint8_t g) {
    return klein && ((*klein)[0] == g || (*klein)[1] == g || (*klein)[2] == g);
  };
  auto reduce = [&](std::uint8_t g, long long e) {
    const long long n = ctx.generator(g).order;
    return n > 0 ? ((e % n) + n) % n : e;
  };

  std::vector<Syllable> stack;
  stack.reserve(w.size());
  for (const auto& letter : w) {
    if (letter.gen >= ctx.size()) throw Error(ErrorKind::UnknownLetter, "generator index out of range");
    std::uint8_t g = letter.gen;
    long long e = letter.inverse ? -1 : 1;
    while (true) {
      if (ctx.generator(g).trivial) break;
      e = reduce(g, e);
      if (e == 0) break;
      if (!stack.empty() && stack.back().gen == g) {
        const long long merged = reduce(g, stack.back().exp + e);
        if (merged == 0)
          stack.pop_back();
        else
          stack.back().exp = merged;
        break;
      }
      if (!stack.empty() && in_klein(g) && in_klein(stack.back().gen)) {
        const std::uint8_t other = stack.back().gen;
        stack.pop_back();
        g = static_cast<std::uint8_t>((*klein)[0] ^ (*klein)[1] ^ (*klein)[2] ^ g ^ other);
        e = 1;
        continue;
      }
      stack.push_back({g, e});
      break;
    }
  }

  Word out;
  out.reserve(stack.size());
  for (const auto& s : stack) {
    const long long n = ctx.generator(s.gen).order;
    long long count = s.exp;
    bool inverse = false;
    if (n > 0 && 2 * count > n) {
      count = n - count;
      inverse = true;
    } else if (n == 0 && count < 0) {
      count = -count;
      inverse = true;
    }
    for (long long i = 0; i < count; ++i) out.push_back(Letter{s.gen, inverse});
  }
  return out;
}

inline Word parse_normal(std::string_view text, const Context& ctx) { return normalize(parse_word(text, ctx), ctx); }

/// True when the word is a power of a single generator.
inline bool is_single_syllable(const Word& w) {
  for (const auto& l : w)
    if (l.gen != w.front().gen || l.inverse != w.front().inverse) return false;
  return !w.empty();
}

// ---------------------------------------------------------------------------
// Wreath recursion
// ---------------------------------------------------------------------------

inline Permutation root_permutation(const Word& w, const Context& ctx) {
  Permutation result = Permutation::identity(ctx.arity());
  for (const auto& l : w) {
    const auto& root = ctx.generator(l.gen).root;
    result = result * (l.inverse ? root.inverse() : root);
  }
  return result;
}

struct Split {
  std::vector<Word> sections;  // normalized, over the child context
  Permutation root;
};

/// Sections of a word at every first-level vertex. With q acting first,
/// (p q)|_i = p|_{q(i)} q|_i, which extends to words letter by letter.
inline Split split_sections(const Word& w, const Context& ctx) {
  const unsigned d = ctx.arity();
  Split out;
  out.root = root_permutation(w, ctx);
  out.sections.resize(d);
  std::vector<const Word*> pieces(w.size());
  std::vector<bool> invert(w.size());
  for (unsigned i = 0; i < d; ++i) {
    Permutation::Point pos = i;
    std::size_t total = 0;
    for (std::size_t k = w.size(); k-- > 0;) {
      const auto& g = ctx.generator(w[k].gen);
      if (!w[k].inverse) {
        pieces[k] = &g.sections[pos];
        invert[k] = false;
        pos = g.root(pos);
      } else {
        const Permutation::Point pre = g.root.inverse()(pos);
        pieces[k] = &g.sections[pre];
        invert[k] = true;
        pos = pre;
      }
      total += pieces[k]->size();
    }
    Word section;
    section.reserve(total);
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (invert[k]) {
        Word inv = inverse_word(*pieces[k]);
        section.insert(section.end(), inv.begin(), inv.end());
      } else {
        section.insert(section.end(), pieces[k]->begin(), pieces[k]->end());
      }
    }
    out.sections[i] = normalize(section, ctx.child());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Word problem
// ---------------------------------------------------------------------------

/// Outcome of the branch algorithm. A nontrivial verdict carries a level at
/// which the element's action is provably nontrivial.
struct Triviality {
  bool trivial = true;
  unsigned witness_level = 0;
};

namespace detail {

/// Smallest depth at which a single-syllable word moves a vertex, found by
/// breadth-first search over its sections.
inline unsigned syllable_witness(const Word& w, const Context& ctx) {
  struct Node {
    Word word;
    const Context* ctx;
    unsigned depth;
  };
  std::deque<Node> queue{{w, &ctx, 0}};
  std::set<std::pair<const Context*, std::string>> seen{{&ctx, word_key(w)}};
  while (!queue.empty() && seen.size() < 100000) {
    Node node = std::move(queue.front());
    queue.pop_front();
    auto split = split_sections(node.word, *node.ctx);
    if (!split.root.is_identity()) return node.depth + 1;
    const Context* child = &node.ctx->child();
    for (auto& s : split.sections) {
      if (s.empty()) continue;
      if (seen.insert({child, word_key(s)}).second) queue.push_back({std::move(s), child, node.depth + 1});
    }
  }
  return 0;
}

inline Triviality decide(const Word& input, const Context& ctx, unsigned depth) {
  const Word w = normalize(input, ctx);
  if (w.empty()) return {};
  const Permutation root = root_permutation(w, ctx);
  if (!root.is_identity()) return {false, depth + 1};
  if (is_single_syllable(w) && ctx.generator(w.front().gen).order != 0) {
    // A nontrivial generator raised to a power below its exact order.
    const unsigned extra = syllable_witness(w, ctx);
    return {false, extra ? depth + extra : 0};
  }
  const Split split = split_sections(w, ctx);
  for (const auto& s : split.sections) {
    Triviality t = decide(s, ctx.child(), depth + 1);
    if (!t.trivial) return t;
  }
  return {};
}

}  // namespace detail

/// Branch algorithm: normalize; a nontrivial root permutation decides
/// "nontrivial"; a single syllable is nontrivial by construction of the
/// normal form; otherwise recurse on every first-level section.
inline Triviality decide_triviality(const Word& w, const Context& ctx) { return detail::decide(w, ctx, 0); }

inline bool is_trivial(const Word& w, const Context& ctx) { return decide_triviality(w, ctx).trivial; }

struct EqualityOptions {
  bool prefilter = true;
  unsigned prefilter_level = 6;
};

/// Equality via triviality of w1 * w2^-1. The optional prefilter compares
/// finite-level actions first; it can only short-circuit a "different" answer.
inline bool are_equal(const Word& w1, const Word& w2, const Context& ctx, EqualityOptions options = {}) {
  if (options.prefilter) {
    if (!(word_level_action(w1, ctx, options.prefilter_level) == word_level_action(w2, ctx, options.prefilter_level)))
      return false;
  }
  return is_trivial(concat(w1, inverse_word(w2)), ctx);
}

// ---------------------------------------------------------------------------
// Orders
// ---------------------------------------------------------------------------

struct OrderBudget {
  std::uint64_t max_steps = 1'000'000;
  std::size_t max_word_length = 1u << 20;
};

struct OrderResult {
  bool finite = false;
  std::uint64_t value = 0;  // meaningful when finite
  std::uint64_t steps = 0;
  std::size_t max_length = 0;

  bool undetermined() const { return !finite; }
};

namespace detail {

class OrderComputation {
 public:
  explicit OrderComputation(OrderBudget budget) : budget_(budget) {}

  // Returns 0 for "undetermined".
  std::uint64_t run(const Word& input, const Context& ctx) {
    const Word w = normalize(input, ctx);
    if (w.empty()) return 1;
    max_length_ = std::max(max_length_, w.size());
    if (w.size() > budget_.max_word_length) return 0;
    const std::string key = word_key(w);
    if (auto hit = ctx.cached_order(key)) return *hit;
    if (++steps_ > budget_.max_steps) return 0;
    const auto frame = std::make_pair(&ctx, key);
    if (!active_.insert(frame).second) return 0;  // the recursion returned to itself

    std::uint64_t result = 0;
    if (is_single_syllable(w) && ctx.generator(w.front().gen).order != 0) {
      const std::uint64_t n = ctx.generator(w.front().gen).order;
      result = n / std::gcd(n, static_cast<std::uint64_t>(w.size()));
    } else {
      result = by_sections(w, ctx);
    }
    active_.erase(frame);
    if (result) ctx.store_order(key, result);
    return result;
  }

  std::uint64_t steps() const { return steps_; }
  std::size_t max_length() const { return max_length_; }

 private:
  std::uint64_t by_sections(const Word& w, const Context& ctx) {
    const Split split = split_sections(w, ctx);
    std::uint64_t result = 1;
    for (const auto& cycle : split.root.cycles()) {
      // First-return section of w^k at cycle[0]: w|_{s^{k-1} i} ... w|_{s i} w|_i.
      Word ret;
      for (std::size_t j = cycle.size(); j-- > 0;) {
        const Word& piece = split.sections[cycle[j]];
        ret.insert(ret.end(), piece.begin(), piece.end());
      }
      const std::uint64_t sub = run(ret, ctx.child());
      if (!sub) return 0;
      std::uint64_t contribution = 0;
      if (__builtin_mul_overflow(sub, static_cast<std::uint64_t>(cycle.size()), &contribution)) return 0;
      const std::uint64_t g = std::gcd(result, contribution);
      if (__builtin_mul_overflow(result / g, contribution, &result)) return 0;
    }
    return result;
  }

  OrderBudget budget_;
  std::uint64_t steps_ = 0;
  std::size_t max_length_ = 0;
  std::set<std::pair<const Context*, std::string>> active_;
};

}  // namespace detail

/// Order by the recursive rule: for each cycle of the root permutation of
/// length k, k times the order of the first-return section; lcm over cycles.
/// Finite results are memoized per context; undetermined ones are not.
inline OrderResult order(const Word& w, const Context& ctx, OrderBudget budget = {}) {
  detail::OrderComputation comp(budget);
  const std::uint64_t v = comp.run(w, ctx);
  return OrderResult{v != 0, v, comp.steps(), comp.max_length()};
}

// ---------------------------------------------------------------------------
// Level-1 stabilizers
// ---------------------------------------------------------------------------

struct StabilizerGenerator {
  Word word;
  std::vector<Word> sections;  // psi-image, over the child context
};

struct StabilizerSections {
  bool level_one_trivial = false;       // the subgroup fixes every first-level vertex
  std::vector<Word> transversal;        // transversal[x] maps vertex 0 to x
  std::vector<StabilizerGenerator> generators;
};

/// Schreier generators t_{s(x)}^-1 s t_x of the first-level stabilizer of
/// <gens>, each with its tuple of first-level sections.
inline StabilizerSections stabilizer_sections(std::span<const Word> gens, const Context& ctx) {
  const unsigned d = ctx.arity();
  std::vector<Permutation> roots;
  for (const auto& g : gens) roots.push_back(root_permutation(g, ctx));

  StabilizerSections out;
  std::vector<std::optional<Word>> transversal(d);
  transversal[0] = Word{};
  std::vector<Permutation::Point> queue{0};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const auto x = queue[q];
    for (std::size_t s = 0; s < gens.size(); ++s) {
      const auto y = roots[s](x);
      if (!transversal[y]) {
        transversal[y] = normalize(concat(gens[s], *transversal[x]), ctx);
        queue.push_back(y);
      }
    }
  }

  bool all_trivial = true;
  for (const auto& r : roots) all_trivial = all_trivial && r.is_identity();
  if (all_trivial) {
    out.level_one_trivial = true;
    out.transversal = {Word{}};
    for (const auto& g : gens) {
      Word w = normalize(g, ctx);
      if (w.empty()) continue;
      out.generators.push_back({w, split_sections(w, ctx).sections});
    }
    return out;
  }
  if (queue.size() != d) {
    std::string orbit;
    for (auto x : queue) orbit += (orbit.empty() ? "" : " ") + std::to_string(x);
    throw Error(ErrorKind::NotApplicable,
                "first-level action is neither transitive nor trivial; orbit of 0 is {" + orbit + "}");
  }
  for (const auto& t : transversal) out.transversal.push_back(*t);

  for (Permutation::Point x = 0; x < d; ++x) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      const auto y = roots[s](x);
      Word candidate = normalize(concat(inverse_word(*transversal[y]), concat(gens[s], *transversal[x])), ctx);
      if (is_trivial(candidate, ctx)) continue;
      bool duplicate = false;
      for (const auto& existing : out.generators) {
        if (are_equal(existing.word, candidate, ctx)) {
          duplicate = true;
          break;
        }
      }
      if (duplicate) continue;
      auto sections = split_sections(candidate, ctx).sections;
      out.generators.push_back({std::move(candidate), std::move(sections)});
    }
  }
  return out;
}

}  // namespace treegrp
