#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "treegrp/context.hpp"
#include "treegrp/element.hpp"
#include "treegrp/errors.hpp"
#include "treegrp/level_action.hpp"
#include "treegrp/perm_group.hpp"
#include "treegrp/solver.hpp"

namespace treegrp {

// ---------------------------------------------------------------------------
// Growth
// ---------------------------------------------------------------------------

struct GrowthOptions {
  bool prefilter = true;
  unsigned prefilter_level = 6;
  std::size_t max_elements = 2'000'000;
};

struct GrowthSeries {
  std::string context;
  std::vector<std::string> generators;
  std::vector<std::uint64_t> values;  // values[n] = ball size of radius n
  bool complete = true;                // false when the element budget ran out

  std::string csv() const {
    std::string out = "n,gamma\n";
    for (std::size_t n = 0; n < values.size(); ++n) out += std::to_string(n) + "," + std::to_string(values[n]) + "\n";
    return out;
  }
};

/// Ball sizes by breadth-first search. Elements are bucketed by their
/// level-k action and distinct words in one bucket are separated by the
/// solver; with the prefilter off every element shares one bucket.
inline GrowthSeries growth_series(const ContextPtr& ctx, std::span<const Word> genset, unsigned radius,
                                  GrowthOptions options = {}) {
  GrowthSeries series;
  series.context = ctx->description();
  std::vector<Word> gens;
  for (const auto& g : genset) {
    gens.push_back(normalize(g, *ctx));
    series.generators.push_back(format_word(gens.back(), *ctx));
  }
  for (const auto& g : gens) {
    bool closed = false;
    for (const auto& h : gens) closed = closed || are_equal(inverse_word(g), h, *ctx);
    if (!closed) throw Error(ErrorKind::InvalidArgument, "generating set is not closed under inverses");
  }

  const unsigned level = options.prefilter ? options.prefilter_level : 0;
  std::vector<Permutation> gen_actions;
  for (const auto& g : gens) gen_actions.push_back(word_level_action(g, *ctx, level));

  std::unordered_map<Permutation, std::vector<std::size_t>, PermutationHash> buckets;
  std::vector<Word> elements{Word{}};
  std::vector<Permutation> actions{Permutation::identity(int_pow(ctx->arity(), level))};
  buckets[actions[0]].push_back(0);
  const EqualityOptions exact{false, 0};

  std::size_t layer_begin = 0;
  series.values.push_back(1);
  for (unsigned n = 1; n <= radius; ++n) {
    const std::size_t layer_end = elements.size();
    for (std::size_t e = layer_begin; e < layer_end; ++e) {
      for (std::size_t s = 0; s < gens.size(); ++s) {
        Word w = normalize(concat(elements[e], gens[s]), *ctx);
        Permutation p = actions[e] * gen_actions[s];
        auto& bucket = buckets[p];
        bool seen = false;
        for (auto idx : bucket)
          if (are_equal(w, elements[idx], *ctx, exact)) {
            seen = true;
            break;
          }
        if (seen) continue;
        bucket.push_back(elements.size());
        elements.push_back(std::move(w));
        actions.push_back(std::move(p));
        if (elements.size() > options.max_elements) {
          series.complete = false;
          return series;
        }
      }
    }
    layer_begin = layer_end;
    series.values.push_back(elements.size());
  }
  return series;
}

/// Number of normal-form words of length <= n over the context alphabet; an
/// upper bound for the ball sizes.
inline std::vector<std::uint64_t> normal_word_counts(const Context& ctx, unsigned radius) {
  std::vector<Letter> letters;
  for (std::size_t g = 0; g < ctx.size(); ++g) {
    if (ctx.generator(g).trivial) continue;
    letters.push_back(Letter{static_cast<std::uint8_t>(g), false});
    if (ctx.generator(g).order != 2) letters.push_back(Letter{static_cast<std::uint8_t>(g), true});
  }
  std::vector<std::uint64_t> counts{1};
  std::vector<Word> layer{Word{}};
  for (unsigned n = 1; n <= radius; ++n) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (const auto& l : letters) {
        Word v = w;
        v.push_back(l);
        if (normalize(v, ctx) == v) next.push_back(std::move(v));
      }
    counts.push_back(counts.back() + next.size());
    layer = std::move(next);
  }
  return counts;
}

// ---------------------------------------------------------------------------
// Level orbits and congruence indices
// ---------------------------------------------------------------------------

struct OrbitReport {
  unsigned level = 0;
  std::vector<std::vector<Permutation::Point>> orbits;
  bool transitive() const { return orbits.size() == 1; }
};

inline std::vector<Permutation> level_actions(std::span<const Word> gens, const Context& ctx, unsigned level) {
  std::vector<Permutation> out;
  for (const auto& g : gens) out.push_back(word_level_action(g, ctx, level));
  return out;
}

inline std::vector<Word> context_generators(const Context& ctx) {
  std::vector<Word> out;
  for (std::size_t g = 0; g < ctx.size(); ++g)
    if (!ctx.generator(g).trivial) out.push_back(Word{Letter{static_cast<std::uint8_t>(g), false}});
  return out;
}

inline OrbitReport level_orbits(std::span<const Word> gens, const Context& ctx, unsigned level) {
  const auto actions = level_actions(gens, ctx, level);
  return {level, PermGroup::orbits_of(int_pow(ctx.arity(), level), actions)};
}

struct IndexOptions {
  bool normal_closure = false;
  std::size_t max_cosets = 1u << 16;
  unsigned max_level = 12;
};

/// Normal closure of `gens` inside the group generated by `ambient`.
inline PermGroup normal_closure(std::size_t degree, std::span<const Permutation> gens, std::span<const Permutation> ambient) {
  PermGroup h(degree);
  std::vector<Permutation> pending(gens.begin(), gens.end());
  while (!pending.empty()) {
    Permutation x = std::move(pending.back());
    pending.pop_back();
    if (h.contains(x)) continue;
    h.add_generator(x);
    for (const auto& g : ambient) pending.push_back(g.inverse() * x * g);
  }
  return h;
}

/// [G_n : H_n] for the level-n images, counted by breadth-first enumeration
/// of right cosets H g with membership tests in H_n.
inline std::uint64_t congruence_index(const Context& ctx, std::span<const Word> subgroup, unsigned level,
                                      IndexOptions options = {}) {
  if (level > options.max_level)
    throw Error(ErrorKind::BudgetExceeded, "level " + std::to_string(level) + " exceeds cap " + std::to_string(options.max_level));
  const std::size_t degree = int_pow(ctx.arity(), level);
  const auto ambient = level_actions(context_generators(ctx), ctx, level);
  const auto sub = level_actions(subgroup, ctx, level);
  PermGroup h = options.normal_closure ? normal_closure(degree, sub, ambient) : PermGroup(degree, sub);

  std::vector<Permutation> reps{Permutation::identity(degree)};
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (const auto& s : ambient) {
      Permutation candidate = reps[i] * s;
      bool known = false;
      for (const auto& r : reps)
        if (h.contains(candidate * r.inverse())) {
          known = true;
          break;
        }
      if (known) continue;
      reps.push_back(std::move(candidate));
      if (reps.size() > options.max_cosets)
        throw Error(ErrorKind::BudgetExceeded, "more than " + std::to_string(options.max_cosets) + " cosets");
    }
  }
  return reps.size();
}

// ---------------------------------------------------------------------------
// Torsion sampling
// ---------------------------------------------------------------------------

struct TorsionSample {
  Word word;
  OrderResult order;
};

struct TorsionReport {
  std::uint64_t seed = 0;
  std::string generator = "mt19937_64";
  std::size_t count = 0, max_length = 0;
  OrderBudget budget;
  unsigned prime = 2;  // orders are expected to be powers of this
  std::vector<TorsionSample> samples;

  std::size_t undetermined() const {
    std::size_t n = 0;
    for (const auto& s : samples) n += s.order.undetermined();
    return n;
  }

  /// Finite orders that are not powers of `prime`.
  std::vector<std::size_t> violations() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (!samples[i].order.finite) continue;
      std::uint64_t v = samples[i].order.value;
      while (v % prime == 0) v /= prime;
      if (v != 1) out.push_back(i);
    }
    return out;
  }
};

/// Random words: length uniform in [1, maxlen], letters uniform over the
/// nontrivial generators, inverted with probability 1/2 when not involutions.
inline TorsionReport torsion_sample(const ContextPtr& ctx, std::size_t count, std::size_t max_length,
                                    OrderBudget budget, std::uint64_t seed) {
  if (count == 0 || max_length == 0 || budget.max_steps == 0)
    throw Error(ErrorKind::InvalidArgument, "count, maxlen and budget must be positive");
  TorsionReport report;
  report.seed = seed;
  report.count = count;
  report.max_length = max_length;
  report.budget = budget;
  report.prime = ctx->arity();
  std::vector<std::uint8_t> gens;
  for (std::size_t g = 0; g < ctx->size(); ++g)
    if (!ctx->generator(g).trivial) gens.push_back(static_cast<std::uint8_t>(g));
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    Word w;
    if (!gens.empty()) {
      const std::size_t len = 1 + static_cast<std::size_t>(rng() % max_length);
      for (std::size_t k = 0; k < len; ++k) {
        const auto g = gens[static_cast<std::size_t>(rng() % gens.size())];
        const bool inverse = ctx->generator(g).order != 2 && (rng() & 1);
        w.push_back(Letter{g, inverse});
      }
    }
    w = normalize(w, *ctx);
    OrderResult r = order(w, *ctx, budget);
    report.samples.push_back({std::move(w), r});
  }
  return report;
}

// ---------------------------------------------------------------------------
// Stabilizer projections
// ---------------------------------------------------------------------------

struct ProjectionComparison {
  bool equal = true;
  std::string witness;  // a generator on one side missing from the other
};

/// Compares the level-n image of one coordinate projection of the first-level
/// stabilizer of <gens> with the level-n image of <reference> (words over the
/// child context), by mutual generator membership.
inline ProjectionComparison projection_compare(std::span<const Word> gens, const Context& ctx, unsigned side,
                                               std::span<const Word> reference, unsigned level) {
  if (side >= ctx.arity()) throw Error(ErrorKind::InvalidArgument, "side out of range");
  const Context& child = ctx.child();
  const auto stab = stabilizer_sections(gens, ctx);
  std::vector<Word> projection;
  for (const auto& g : stab.generators) projection.push_back(g.sections[side]);
  const std::size_t degree = int_pow(child.arity(), level);
  const auto proj_actions = level_actions(projection, child, level);
  const auto ref_actions = level_actions(reference, child, level);
  const PermGroup p(degree, proj_actions), r(degree, ref_actions);
  for (std::size_t i = 0; i < proj_actions.size(); ++i)
    if (!r.contains(proj_actions[i])) return {false, "projection generator " + format_word(projection[i], child) + " not in reference"};
  for (std::size_t i = 0; i < ref_actions.size(); ++i)
    if (!p.contains(ref_actions[i])) return {false, "reference generator " + format_word(reference[i], child) + " not in projection"};
  return {};
}

struct RealizedPair {
  Word word;         // product of stabilizer generators, over ctx
  bool swapped;      // true when the sections match the pair in reverse order
};

/// Bounded search for a stabilizer element whose two sections equal the
/// given pair, in either coordinate order. Candidates are products of at
/// most `max_length` stabilizer generators and their inverses.
inline std::optional<RealizedPair> realize_pair(const StabilizerSections& stab, const Context& ctx, const Word& left,
                                                const Word& right, std::size_t max_length) {
  const Context& child = ctx.child();
  std::vector<Word> letters;
  for (const auto& g : stab.generators) {
    letters.push_back(g.word);
    letters.push_back(inverse_word(g.word));
  }
  auto matches = [&](const Word& w) -> std::optional<RealizedPair> {
    const auto s = split_sections(w, ctx);
    if (!s.root.is_identity()) return std::nullopt;
    if (are_equal(s.sections[0], left, child) && are_equal(s.sections[1], right, child)) return RealizedPair{w, false};
    if (are_equal(s.sections[0], right, child) && are_equal(s.sections[1], left, child)) return RealizedPair{w, true};
    return std::nullopt;
  };
  if (auto hit = matches(Word{})) return hit;
  std::vector<Word> layer{Word{}};
  std::unordered_map<std::string, bool> seen{{word_key(Word{}), true}};
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (const auto& l : letters) {
        Word v = normalize(concat(w, l), ctx);
        if (!seen.emplace(word_key(v), true).second) continue;
        if (auto hit = matches(v)) return hit;
        next.push_back(std::move(v));
      }
    layer = std::move(next);
  }
  return std::nullopt;
}

}  // namespace treegrp
