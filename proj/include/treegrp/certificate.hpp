#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "treegrp/element.hpp"
#include "treegrp/errors.hpp"
#include "treegrp/perm_group.hpp"
#include "treegrp/presentation.hpp"
#include "treegrp/solver.hpp"

namespace treegrp {

struct RelatorVerdict {
  std::string relator;  // as printed in the source presentation
  bool verified = false;
  unsigned witness_level = 0;  // failed relators only
};

struct EpimorphismCertificate {
  Presentation source;
  ContextPtr target;
  std::vector<TreeElement> assignment;  // one per source generator
  std::vector<RelatorVerdict> verdicts;
  /// Unset unless computed; false means the images generate a proper
  /// subgroup of the target's level-6 image.
  std::optional<bool> surjective_at_level6;

  bool verified() const {
    for (const auto& v : verdicts)
      if (!v.verified) return false;
    return true;
  }

  std::string str() const {
    std::string out = source.name + " -> " + target->description() + "\n";
    for (std::size_t i = 0; i < assignment.size(); ++i)
      out += "  " + source.generators[i] + " |-> " + assignment[i].str() + "\n";
    for (const auto& v : verdicts) {
      out += "  " + v.relator + ": ";
      out += v.verified ? "verified" : "failed (witness level " + std::to_string(v.witness_level) + ")";
      out += "\n";
    }
    if (surjective_at_level6) out += std::string("  level-6 image: ") + (*surjective_at_level6 ? "full" : "non-surjective") + "\n";
    out += verified() ? "certificate verified" : "certificate FAILED";
    return out;
  }
};

/// The image of a relator under an assignment of source generators.
inline Word relator_image(const Relator& r, const std::vector<TreeElement>& assignment) {
  Word base;
  for (const auto& l : r.base) {
    const Word& w = assignment.at(l.gen).word();
    const Word unit = l.power < 0 ? inverse_word(w) : w;
    for (int k = 0; k < (l.power < 0 ? -l.power : l.power); ++k) base.insert(base.end(), unit.begin(), unit.end());
  }
  Word out;
  out.reserve(base.size() * static_cast<std::size_t>(r.exponent));
  for (int k = 0; k < r.exponent; ++k) out.insert(out.end(), base.begin(), base.end());
  return out;
}

inline RelatorVerdict check_relator(const Relator& r, const Presentation& p, const std::vector<TreeElement>& assignment,
                                    const Context& ctx) {
  const Triviality t = decide_triviality(relator_image(r, assignment), ctx);
  return {format_relator(r, p), t.trivial, t.witness_level};
}

/// Tests every relator image with the branch algorithm.
inline EpimorphismCertificate verify_epimorphism(const Presentation& source, std::vector<TreeElement> assignment,
                                                 ContextPtr target) {
  if (assignment.size() != source.generators.size())
    throw Error(ErrorKind::InvalidArgument, "assignment must cover every generator of " + source.name);
  for (const auto& e : assignment)
    if (&e.context() != target.get()) throw Error(ErrorKind::ContextMismatch, "assignment word outside target context");
  EpimorphismCertificate cert{source, target, std::move(assignment), {}, std::nullopt};
  for (const auto& r : source.relators) cert.verdicts.push_back(check_relator(r, source, cert.assignment, *target));
  return cert;
}

/// Whether `images` generate the same level-n image as the context's generators.
inline bool generates_level_image(const std::vector<TreeElement>& images, const Context& ctx, unsigned level) {
  const std::size_t degree = int_pow(ctx.arity(), level);
  PermGroup full(degree), sub(degree);
  for (std::size_t g = 0; g < ctx.size(); ++g) full.add_generator(letter_level_action(ctx, Letter{static_cast<std::uint8_t>(g), false}, level));
  for (const auto& e : images) sub.add_generator(word_level_action(e.word(), ctx, level));
  return full.log2_order() - sub.log2_order() < 1e-9;
}

struct SearchOptions {
  std::size_t max_word_length = 2;
  std::size_t max_nodes = 2'000'000;
};

namespace detail {

/// Nontrivial normal words of length <= L, shortest first, then by letter order.
inline std::vector<Word> enumerate_normal_words(const Context& ctx, std::size_t max_length) {
  std::vector<Letter> letters;
  for (std::size_t g = 0; g < ctx.size(); ++g) {
    if (ctx.generator(g).trivial) continue;
    letters.push_back(Letter{static_cast<std::uint8_t>(g), false});
    if (ctx.generator(g).order != 2) letters.push_back(Letter{static_cast<std::uint8_t>(g), true});
  }
  std::vector<Word> out;
  std::set<std::string> seen{word_key(Word{})};
  std::vector<Word> layer{Word{}};
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (const auto& l : letters) {
        Word v = w;
        v.push_back(l);
        if (normalize(v, ctx) != v) continue;
        if (!seen.insert(word_key(v)).second) continue;
        next.push_back(v);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

}  // namespace detail

/// Bounded search for a homomorphism from `source` into `ctx`: each source
/// generator goes to a nontrivial word of length <= L satisfying the
/// generator's own power relator, and every relator is checked as soon as
/// its letters are assigned. Certificates whose images generate the full
/// level-6 image are preferred; otherwise the first one found is returned
/// marked non-surjective.
inline std::optional<EpimorphismCertificate> search_homomorphism(const Presentation& source, ContextPtr ctx,
                                                                 SearchOptions options = {}) {
  const std::size_t n = source.generators.size();
  const auto words = detail::enumerate_normal_words(*ctx, options.max_word_length);

  // Candidates per generator, filtered by the single-generator relators.
  std::vector<std::vector<TreeElement>> candidates(n);
  for (std::size_t g = 0; g < n; ++g)
    for (const auto& w : words) {
      TreeElement e(ctx, w);
      bool ok = true;
      for (const auto& r : source.relators) {
        bool only_g = true;
        for (const auto& l : r.base) only_g = only_g && l.gen == g;
        if (!only_g) continue;
        std::vector<TreeElement> probe(n, e);
        if (!is_trivial(relator_image(r, probe), *ctx)) ok = false;
      }
      if (ok) candidates[g].push_back(std::move(e));
    }

  // Relators become checkable once their highest generator is assigned.
  std::vector<std::vector<const Relator*>> due(n);
  for (const auto& r : source.relators) {
    std::size_t top = 0;
    for (const auto& l : r.base) top = std::max(top, l.gen);
    due[top].push_back(&r);
  }

  std::optional<EpimorphismCertificate> first;
  std::vector<TreeElement> current;
  std::size_t nodes = 0;
  const std::function<bool(std::size_t)> descend = [&](std::size_t g) -> bool {
    if (g == n) {
      const bool surjective = generates_level_image(current, *ctx, 6);
      auto cert = verify_epimorphism(source, current, ctx);
      cert.surjective_at_level6 = surjective;
      if (surjective) {
        first = std::move(cert);
        return true;
      }
      if (!first) first = std::move(cert);
      return false;
    }
    for (const auto& e : candidates[g]) {
      if (++nodes > options.max_nodes) return true;
      current.push_back(e);
      bool ok = true;
      for (const Relator* r : due[g])
        if (!is_trivial(relator_image(*r, current), *ctx)) {
          ok = false;
          break;
        }
      if (ok && descend(g + 1)) return true;
      current.pop_back();
    }
    return false;
  };
  descend(0);
  return first;
}

}  // namespace treegrp
