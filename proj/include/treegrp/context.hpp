#pragma once

#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "treegrp/errors.hpp"
#include "treegrp/omega_sequence.hpp"
#include "treegrp/permutation.hpp"

namespace treegrp {

/// One letter of a word: a generator index, possibly inverted.
struct Letter {
  std::uint8_t gen = 0;
  bool inverse = false;

  friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

inline Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l.inverse = !l.inverse;
  return out;
}

inline Word concat(const Word& u, const Word& v) {
  Word out;
  out.reserve(u.size() + v.size());
  out.insert(out.end(), u.begin(), u.end());
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

/// Compact byte string used as a hash key for words.
inline std::string word_key(const Word& w) {
  std::string key;
  key.reserve(w.size());
  for (const auto& l : w) key.push_back(static_cast<char>(l.gen * 2 + (l.inverse ? 1 : 0)));
  return key;
}

/// A generator of a tree-automorphism group given by wreath recursion:
/// a root permutation of the arity and one section word per first-level
/// vertex, written over the alphabet of the owning context's child.
struct Generator {
  char letter = '?';
  /// Exact order of the generator when nontrivial; 0 means infinite.
  unsigned order = 2;
  Permutation root;
  std::vector<Word> sections;
  bool trivial = false;
};

class Context;
using ContextPtr = std::shared_ptr<const Context>;

/// A named alphabet of tree automorphisms. Contexts are immutable once
/// published through a ContextPtr; the only mutable state is a set of
/// mutex-guarded caches whose contents never change any result.
class Context {
 public:
  Context(std::string id, unsigned arity, std::vector<Generator> generators)
      : id_(std::move(id)), arity_(arity), generators_(std::move(generators)) {}

  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;

  const std::string& id() const { return id_; }
  unsigned arity() const { return arity_; }
  std::span<const Generator> generators() const { return generators_; }
  const Generator& generator(std::size_t i) const { return generators_.at(i); }
  std::size_t size() const { return generators_.size(); }

  std::optional<std::uint8_t> find_letter(char letter) const {
    for (std::size_t i = 0; i < generators_.size(); ++i)
      if (generators_[i].letter == letter) return static_cast<std::uint8_t>(i);
    return std::nullopt;
  }

  const Context& child() const { return *child_; }
  bool has_child() const { return child_ != nullptr; }

  /// Three involutions forming a Klein four-group (product of two distinct
  /// members is the third). Present for the omega family only.
  const std::optional<std::array<std::uint8_t, 3>>& klein() const { return klein_; }

  const std::optional<OmegaSequence>& omega() const { return omega_; }

  const std::string& description() const { return description_.empty() ? id_ : description_; }

  // Builder hooks; only called before the context is published.
  void set_child(const Context* child) { child_ = child; }
  void set_klein(std::array<std::uint8_t, 3> klein) { klein_ = klein; }
  void set_omega(OmegaSequence omega) { omega_ = std::move(omega); }
  void set_description(std::string text) { description_ = std::move(text); }
  void set_keepalive(std::shared_ptr<const void> owner) { keepalive_ = std::move(owner); }
  Generator& mutable_generator(std::size_t i) { return generators_.at(i); }

  std::optional<Permutation> cached_level_action(std::size_t gen, bool inverse, unsigned level) const {
    std::lock_guard lock(mutex_);
    auto it = level_cache_.find({gen, inverse, level});
    if (it == level_cache_.end()) return std::nullopt;
    return it->second;
  }

  void store_level_action(std::size_t gen, bool inverse, unsigned level, const Permutation& p) const {
    std::lock_guard lock(mutex_);
    level_cache_.emplace(std::make_tuple(gen, inverse, level), p);
  }

  std::optional<std::uint64_t> cached_order(const std::string& key) const {
    std::lock_guard lock(mutex_);
    auto it = order_cache_.find(key);
    if (it == order_cache_.end()) return std::nullopt;
    return it->second;
  }

  void store_order(const std::string& key, std::uint64_t order) const {
    std::lock_guard lock(mutex_);
    order_cache_.emplace(key, order);
  }

 private:
  std::string id_;
  std::string description_;
  unsigned arity_;
  std::vector<Generator> generators_;
  const Context* child_ = nullptr;
  std::optional<std::array<std::uint8_t, 3>> klein_;
  std::optional<OmegaSequence> omega_;
  std::shared_ptr<const void> keepalive_;

  mutable std::mutex mutex_;
  mutable std::map<std::tuple<std::size_t, bool, unsigned>, Permutation> level_cache_;
  mutable std::unordered_map<std::string, std::uint64_t> order_cache_;
};

/// Handle to the child context sharing ownership with `ctx`.
inline ContextPtr child_handle(const ContextPtr& ctx) { return ContextPtr(ctx, &ctx->child()); }

inline std::string format_word(const Word& w, const Context& ctx) {
  if (w.empty()) return "1";
  std::string out;
  out.reserve(w.size());
  for (const auto& l : w) {
    const char c = ctx.generator(l.gen).letter;
    out.push_back(l.inverse ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c);
  }
  return out;
}

namespace detail {

class WordParser {
 public:
  WordParser(std::string_view text, const Context& ctx) : text_(text), ctx_(ctx) {}

  Word parse() {
    Word w = sequence();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return w;
  }

 private:
  Word sequence() {
    Word out;
    while (true) {
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] == ')') return out;
      Word f = factor();
      out.insert(out.end(), f.begin(), f.end());
    }
  }

  Word factor() {
    Word base;
    const char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      base = sequence();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("missing ')'");
      ++pos_;
    } else if (ch == '1') {
      ++pos_;
    } else if (std::isalpha(static_cast<unsigned char>(ch))) {
      ++pos_;
      const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      auto gen = ctx_.find_letter(lower);
      if (!gen)
        throw Error(ErrorKind::UnknownLetter,
                    std::string("letter '") + ch + "' is not a generator of " + ctx_.description());
      base.push_back(Letter{*gen, ch != lower});
    } else {
      fail("unexpected '" + std::string(1, ch) + "'");
    }
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip_space();
      bool negative = false;
      if (pos_ < text_.size() && text_[pos_] == '-') {
        negative = true;
        ++pos_;
      }
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("exponent expected");
      long long e = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        e = e * 10 + (text_[pos_++] - '0');
        if (e > 1'000'000) fail("exponent too large");
      }
      Word unit = negative ? inverse_word(base) : base;
      Word out;
      out.reserve(unit.size() * static_cast<std::size_t>(e));
      for (long long i = 0; i < e; ++i) out.insert(out.end(), unit.begin(), unit.end());
      return out;
    }
    return base;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::SyntaxError, msg + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  std::string_view text_;
  const Context& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses letters (uppercase = inverse), `1` for the identity, and
/// parenthesized groups with integer exponents, e.g. "(ad)^4" or "x^-1y".
inline Word parse_word(std::string_view text, const Context& ctx) { return detail::WordParser(text, ctx).parse(); }

}  // namespace treegrp
