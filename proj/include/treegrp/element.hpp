#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "treegrp/context.hpp"
#include "treegrp/errors.hpp"
#include "treegrp/level_action.hpp"
#include "treegrp/solver.hpp"

namespace treegrp {

/// An element of a context's group, held as a normalized word.
class TreeElement {
 public:
  TreeElement(ContextPtr ctx, const Word& w) : ctx_(std::move(ctx)), word_(normalize(w, *ctx_)) {}

  static TreeElement identity(ContextPtr ctx) { return TreeElement(std::move(ctx), Word{}); }

  static TreeElement parse(ContextPtr ctx, std::string_view text) {
    Word w = parse_word(text, *ctx);
    return TreeElement(std::move(ctx), w);
  }

  const Context& context() const { return *ctx_; }
  const ContextPtr& context_ptr() const { return ctx_; }
  const Word& word() const { return word_; }
  std::size_t length() const { return word_.size(); }
  std::string str() const { return format_word(word_, *ctx_); }

  /// Letter-for-letter equality of normal forms (not group equality).
  friend bool operator==(const TreeElement& x, const TreeElement& y) {
    return x.ctx_.get() == y.ctx_.get() && x.word_ == y.word_;
  }

 private:
  ContextPtr ctx_;
  Word word_;
};

inline void require_same_context(const TreeElement& g, const TreeElement& h) {
  if (&g.context() != &h.context())
    throw Error(ErrorKind::ContextMismatch, g.context().description() + " vs " + h.context().description());
}

inline TreeElement compose(const TreeElement& g, const TreeElement& h) {
  require_same_context(g, h);
  return TreeElement(g.context_ptr(), concat(g.word(), h.word()));
}

inline TreeElement invert(const TreeElement& g) { return TreeElement(g.context_ptr(), inverse_word(g.word())); }

inline TreeElement power(const TreeElement& g, long long n) {
  const Word unit = n < 0 ? inverse_word(g.word()) : g.word();
  Word w;
  for (long long i = 0; i < (n < 0 ? -n : n); ++i) w.insert(w.end(), unit.begin(), unit.end());
  return TreeElement(g.context_ptr(), w);
}

inline Permutation root_permutation(const TreeElement& g) { return root_permutation(g.word(), g.context()); }

/// Section at a vertex given as a digit string, e.g. "10" is the second
/// child's first child. The result lives in the corresponding descendant context.
inline TreeElement section(const TreeElement& g, std::string_view vertex) {
  ContextPtr ctx = g.context_ptr();
  Word w = g.word();
  for (char ch : vertex) {
    const int digit = ch - '0';
    if (digit < 0 || digit >= static_cast<int>(ctx->arity()))
      throw Error(ErrorKind::BadVertex, "digit '" + std::string(1, ch) + "' out of range for arity " +
                                            std::to_string(ctx->arity()));
    w = split_sections(w, *ctx).sections[static_cast<std::size_t>(digit)];
    ctx = child_handle(ctx);
  }
  return TreeElement(ctx, w);
}

inline Permutation level_action(const TreeElement& g, unsigned n) { return word_level_action(g.word(), g.context(), n); }

/// Portrait of depth k: root permutations of all sections above level k,
/// plus the sections at level k themselves.
struct Portrait {
  unsigned arity = 2;
  unsigned depth = 0;
  std::vector<std::vector<Permutation>> labels;  // labels[j][v], v indexes level-j vertices
  std::vector<TreeElement> leaves;               // sections at the level-k vertices
};

inline Portrait portrait(const TreeElement& g, unsigned depth) {
  Portrait p;
  p.arity = g.context().arity();
  p.depth = depth;
  std::vector<TreeElement> current{g};
  for (unsigned j = 0; j < depth; ++j) {
    std::vector<Permutation> labels;
    std::vector<TreeElement> next;
    labels.reserve(current.size());
    for (const auto& e : current) {
      auto split = split_sections(e.word(), e.context());
      labels.push_back(split.root);
      const ContextPtr child = child_handle(e.context_ptr());
      for (auto& s : split.sections) next.emplace_back(child, s);
    }
    p.labels.push_back(std::move(labels));
    current = std::move(next);
  }
  p.leaves = std::move(current);
  return p;
}

/// Level action reconstructed from the portrait labels alone (level <= depth).
inline Permutation portrait_level_action(const Portrait& p, unsigned level) {
  if (level > p.depth) throw Error(ErrorKind::InvalidArgument, "level exceeds portrait depth");
  const std::size_t n = int_pow(p.arity, level);
  std::vector<Permutation::Point> images(n);
  for (std::size_t leaf = 0; leaf < n; ++leaf) {
    std::size_t vertex = 0;  // index of the current source vertex at level j
    std::size_t image = 0;
    for (unsigned j = 0; j < level; ++j) {
      const std::size_t digit = (leaf / int_pow(p.arity, level - 1 - j)) % p.arity;
      const auto& label = p.labels[j][vertex];
      image = image * p.arity + label(static_cast<Permutation::Point>(digit));
      vertex = vertex * p.arity + digit;
    }
    images[leaf] = static_cast<Permutation::Point>(image);
  }
  return Permutation(std::move(images));
}

inline bool is_trivial(const TreeElement& g) { return is_trivial(g.word(), g.context()); }

inline bool are_equal(const TreeElement& g, const TreeElement& h, EqualityOptions options = {}) {
  require_same_context(g, h);
  return are_equal(g.word(), h.word(), g.context(), options);
}

inline OrderResult order(const TreeElement& g, OrderBudget budget = {}) { return order(g.word(), g.context(), budget); }

}  // namespace treegrp
