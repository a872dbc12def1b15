#pragma once

#include <cstdint>

#include "treegrp/context.hpp"
#include "treegrp/permutation.hpp"

namespace treegrp {

inline std::size_t int_pow(std::size_t base, unsigned exp) {
  std::size_t r = 1;
  while (exp--) r *= base;
  return r;
}

inline Permutation word_level_action(const Word& w, const Context& ctx, unsigned level);

/// Action of one letter on the arity^level leaves. Leaf indices read the
/// root-to-leaf digit string most significant digit first, so the leaves
/// under first-level vertex i form the block [i*B, (i+1)*B).
inline Permutation letter_level_action(const Context& ctx, Letter letter, unsigned level) {
  if (auto cached = ctx.cached_level_action(letter.gen, letter.inverse, level)) return *cached;

  Permutation result;
  if (level == 0) {
    result = Permutation::identity(1);
  } else if (letter.inverse) {
    result = letter_level_action(ctx, Letter{letter.gen, false}, level).inverse();
  } else {
    const auto& g = ctx.generator(letter.gen);
    const unsigned d = ctx.arity();
    const std::size_t block = int_pow(d, level - 1);
    std::vector<Permutation::Point> images(block * d);
    for (unsigned i = 0; i < d; ++i) {
      const Permutation sub = word_level_action(g.sections[i], ctx.child(), level - 1);
      const std::size_t target = g.root(i) * block;
      for (std::size_t r = 0; r < block; ++r)
        images[i * block + r] = static_cast<Permutation::Point>(target + sub(static_cast<Permutation::Point>(r)));
    }
    result = Permutation(std::move(images));
  }
  ctx.store_level_action(letter.gen, letter.inverse, level, result);
  return result;
}

inline Permutation word_level_action(const Word& w, const Context& ctx, unsigned level) {
  const std::size_t n = int_pow(ctx.arity(), level);
  if (w.empty()) return Permutation::identity(n);
  // Rightmost letter acts first: result = g1 * g2 * ... * gk.
  Permutation result = letter_level_action(ctx, w.front(), level);
  for (std::size_t i = 1; i < w.size(); ++i) result = result * letter_level_action(ctx, w[i], level);
  return result;
}

}  // namespace treegrp
