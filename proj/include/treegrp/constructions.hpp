#pragma once

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "treegrp/certificate.hpp"
#include "treegrp/context.hpp"
#include "treegrp/coxeter.hpp"
#include "treegrp/element.hpp"
#include "treegrp/errors.hpp"
#include "treegrp/omega.hpp"
#include "treegrp/presentation.hpp"
#include "treegrp/solver.hpp"

namespace treegrp {

// ---------------------------------------------------------------------------
// Presentations
// ---------------------------------------------------------------------------

namespace detail {

inline Presentation make_presentation(std::string name, std::vector<std::string> gens,
                                      const std::vector<std::pair<std::vector<std::string>, int>>& relators) {
  Presentation p{std::move(name), std::move(gens), {}};
  for (const auto& [letters, exponent] : relators) p.relators.push_back(p.rel(letters, exponent));
  return p;
}

inline std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace detail

/// Accepts xi, phi, upsilon, pi, lambda, delta, L (case-insensitive).
inline Presentation target_presentation(std::string_view name) {
  using detail::make_presentation;
  const std::string key = detail::lower(name);
  if (key == "xi")
    return make_presentation("Xi", {"a", "c", "d"},
                             {{{"a"}, 2}, {{"c"}, 2}, {{"d"}, 2}, {{"c", "d"}, 2}, {{"a", "d"}, 4}, {{"a", "c"}, 8}});
  if (key == "phi")
    return make_presentation("Phi", {"x", "y", "z"},
                             {{{"x"}, 2}, {{"y"}, 2}, {{"z"}, 2}, {{"x", "y"}, 4}, {{"x", "z"}, 4}, {{"y", "z"}, 4}});
  if (key == "upsilon")
    return make_presentation("Upsilon", {"a", "b", "c", "d"},
                             {{{"a"}, 2},
                              {{"b"}, 2},
                              {{"c"}, 2},
                              {{"d"}, 2},
                              {{"a", "c"}, 2},
                              {{"a", "d"}, 2},
                              {{"b", "d"}, 2},
                              {{"a", "b"}, 4},
                              {{"b", "c"}, 4},
                              {{"c", "d"}, 4}});
  if (key == "pi")
    return make_presentation("Pi", {"a", "b", "c", "d"},
                             {{{"a"}, 2},
                              {{"b"}, 2},
                              {{"c"}, 2},
                              {{"d"}, 2},
                              {{"b", "c"}, 2},
                              {{"b", "d"}, 2},
                              {{"c", "d"}, 2},
                              {{"a", "b"}, 4},
                              {{"a", "c"}, 4},
                              {{"a", "d"}, 4}});
  if (key == "lambda") return make_presentation("Lambda", {"u", "v"}, {{{"u"}, 4}, {{"v"}, 4}, {{"u", "v"}, 4}});
  if (key == "delta") return make_presentation("Delta", {"x", "y"}, {{{"x"}, 2}, {{"y"}, 4}, {{"x", "y"}, 8}});
  if (key == "l") return make_presentation("L", {"x1", "x2"}, {{{"x1"}, 4}, {{"x2"}, 8}, {{"x2", "x1'"}, 2}});
  throw Error(ErrorKind::UnknownName, "no presentation named '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Tower contexts
// ---------------------------------------------------------------------------

namespace detail {

/// Holds a single-level context whose sections live in a parent context.
struct TowerContext {
  std::deque<Context> contexts;
};

/// Exact generator orders and triviality flags. Exact for generators that
/// either stabilize level one or have trivial sections.
inline void fill_tower_orders(Context& ctx) {
  for (std::size_t g = 0; g < ctx.size(); ++g) {
    auto& gen = ctx.mutable_generator(g);
    bool trivial = gen.root.is_identity();
    std::uint64_t order = gen.root.order();
    for (const auto& s : gen.sections) {
      const auto r = treegrp::order(s, ctx.child());
      trivial = trivial && r.finite && r.value == 1;
      order = r.finite && order ? std::lcm(order, r.value) : 0;
    }
    gen.order = static_cast<unsigned>(order);
    gen.trivial = trivial;
  }
}

inline ContextPtr make_tower(const ContextPtr& parent, std::string id, std::string description,
                             std::vector<Generator> gens) {
  auto holder = std::make_shared<TowerContext>();
  auto& ctx = holder->contexts.emplace_back(std::move(id), 2, std::move(gens));
  ctx.set_child(parent.get());
  ctx.set_keepalive(parent);
  ctx.set_description(std::move(description));
  fill_tower_orders(ctx);
  return ContextPtr(holder, &holder->contexts.front());
}

template <class Key, class Make>
ContextPtr cached(const Key& key, Make make) {
  static std::mutex mutex;
  static std::map<Key, ContextPtr> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  ContextPtr ctx = make();
  cache.emplace(key, ctx);
  return ctx;
}

}  // namespace detail

/// Binary context with a = root swap, b = (1, v), c = (u, u), d = (v, v),
/// where u = ad and v = (ac)^2 are read in G_omega.
inline ContextPtr lambda1_context(const OmegaSequence& omega) {
  return detail::cached(std::string("lambda1:") + omega.str(), [&] {
    const ContextPtr g = build_context(omega);
    const Word u = parse_normal("ad", *g), v = parse_normal("acac", *g);
    std::vector<Generator> gens{
        Generator{'a', 2, Permutation::transposition(2, 0, 1), {Word{}, Word{}}, false},
        Generator{'b', 2, Permutation::identity(2), {Word{}, v}, false},
        Generator{'c', 2, Permutation::identity(2), {u, u}, false},
        Generator{'d', 2, Permutation::identity(2), {v, v}, false},
    };
    return detail::make_tower(g, "lambda1:" + omega.str(), "Lambda1_" + omega.str(), std::move(gens));
  });
}

/// Binary context generated by a and the level-one stabilizing elements
/// p = (a, 1), q = (1, b), r = (1, c), sections read in G_omega.
inline ContextPtr v_context(const OmegaSequence& omega) {
  return detail::cached(std::string("v:") + omega.str(), [&] {
    const ContextPtr g = build_context(omega);
    const Word a = parse_normal("a", *g), b = parse_normal("b", *g), c = parse_normal("c", *g);
    std::vector<Generator> gens{
        Generator{'a', 2, Permutation::transposition(2, 0, 1), {Word{}, Word{}}, false},
        Generator{'p', 2, Permutation::identity(2), {a, Word{}}, false},
        Generator{'q', 2, Permutation::identity(2), {Word{}, b}, false},
        Generator{'r', 2, Permutation::identity(2), {Word{}, c}, false},
    };
    return detail::make_tower(g, "v:" + omega.str(), "V_" + omega.str(), std::move(gens));
  });
}

inline bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

/// p-ary context: x rotates the root, y = (x, x^-1, 1, ..., 1, y).
inline ContextPtr gupta_sidki_context(unsigned p) {
  if (p < 3 || p > 61 || !is_prime(p))
    throw Error(ErrorKind::BadPrime, std::to_string(p) + " is not an odd prime in [3, 61]");
  return detail::cached(std::to_string(p), [&] {
    auto holder = std::make_shared<detail::TowerContext>();
    std::vector<Word> y_sections(p);
    y_sections[0] = Word{Letter{0, false}};
    y_sections[1] = Word{Letter{0, true}};
    y_sections[p - 1] = Word{Letter{1, false}};
    std::vector<Generator> gens{
        Generator{'x', p, Permutation::rotation(p), std::vector<Word>(p), false},
        Generator{'y', p, Permutation::identity(p), std::move(y_sections), false},
    };
    auto& ctx = holder->contexts.emplace_back("gupta-sidki:" + std::to_string(p), p, std::move(gens));
    ctx.set_child(&ctx);
    ctx.set_description("GS_" + std::to_string(p));
    return ContextPtr(holder, &ctx);
  });
}

// ---------------------------------------------------------------------------
// Quotient maps
// ---------------------------------------------------------------------------

struct QuotientSpec {
  Presentation source;
  OmegaSequence omega;
  ContextPtr target;
  std::string image_name;               // the subgroup the images generate
  std::vector<TreeElement> assignment;  // one per source generator
  std::vector<std::string> warnings;

  EpimorphismCertificate verify() const { return verify_epimorphism(source, assignment, target); }
};

/// The concrete quotient maps. Xi, Phi, Lambda, Delta and L land in G_omega
/// itself (the image subgroups G, Q, S, L); Upsilon and Pi land in the tower
/// contexts. For L the labels follow the relator set: x1 |-> ad has order 4
/// and x2 |-> ac has order 8; Delta then maps x |-> x1^-1 x2 = b, y |-> x1.
inline QuotientSpec quotient_context(std::string_view name, const OmegaSequence& omega) {
  const Presentation source = target_presentation(name);
  const std::string key = source.name;
  ContextPtr g = build_context(omega);
  auto words = [](const ContextPtr& ctx, std::initializer_list<const char*> texts) {
    std::vector<TreeElement> out;
    for (const char* t : texts) out.push_back(TreeElement::parse(ctx, t));
    return out;
  };
  QuotientSpec spec{source, omega, g, "", {}, {}};
  if (key == "Xi") {
    spec.image_name = "G_" + omega.str();
    spec.assignment = words(g, {"a", "c", "d"});
  } else if (key == "Phi") {
    spec.image_name = "Q_" + omega.str();
    spec.assignment = words(g, {"a", "d", "cac"});
  } else if (key == "Lambda") {
    spec.image_name = "S_" + omega.str();
    spec.assignment = words(g, {"ad", "acac"});
  } else if (key == "Upsilon") {
    spec.target = lambda1_context(omega);
    spec.image_name = spec.target->description();
    spec.assignment = words(spec.target, {"a", "b", "c", "d"});
  } else if (key == "Pi") {
    spec.target = v_context(omega);
    spec.image_name = spec.target->description();
    spec.assignment = words(spec.target, {"a", "q", "r", "p"});
  } else if (key == "L") {
    spec.image_name = "L_" + omega.str();
    spec.assignment = words(g, {"ad", "ac"});
  } else if (key == "Delta") {
    spec.image_name = "L_" + omega.str();
    spec.assignment = words(g, {"(ad)^-1 ac", "ad"});
  }
  if ((key == "Xi" || key == "Delta" || key == "L") && omega.symbol(1) != 0)
    spec.warnings.push_back("omega does not begin with 0; (ad)^4 need not hold");
  return spec;
}

inline QuotientSpec quotient_context(std::string_view name, std::string_view omega) {
  return quotient_context(name, parse_omega(omega));
}

inline std::string_view presentation_key(CriticalGroup c) {
  switch (c) {
    case CriticalGroup::Xi: return "xi";
    case CriticalGroup::Phi: return "phi";
    case CriticalGroup::Upsilon: return "upsilon";
    case CriticalGroup::Pi: return "pi";
  }
  return "";
}

/// Composes a successful reduction with the concrete quotient map of its
/// target: killed vertices go to the identity, kept ones to the image of
/// their critical generator.
inline EpimorphismCertificate reduction_certificate(const CoxeterGraph& graph, const ReductionResult& reduction,
                                                    const OmegaSequence& omega) {
  if (!reduction.success) throw Error(ErrorKind::NotApplicable, "reduction did not succeed");
  const QuotientSpec spec = quotient_context(presentation_key(reduction.target), omega);
  std::vector<TreeElement> assignment;
  for (std::size_t v = 0; v < graph.size(); ++v) {
    const auto& image = reduction.assignment[v];
    assignment.push_back(image ? spec.assignment[spec.source.generator_index(*image)] : TreeElement::identity(spec.target));
  }
  return verify_epimorphism(coxeter_presentation(graph), std::move(assignment), spec.target);
}

// ---------------------------------------------------------------------------
// Relators of the recursive presentation
// ---------------------------------------------------------------------------

struct LysenokRelator {
  std::string family;  // "a^2", ..., "(ad)^4", "(adacac)^4"
  unsigned n = 0;      // substitution depth
  Word word;
};

/// alpha: a -> aca, b -> d, c -> b, d -> c, applied letterwise then normalized.
inline Word lysenok_substitute(const Word& w, const Context& ctx) {
  const auto a = *ctx.find_letter('a'), b = *ctx.find_letter('b'), c = *ctx.find_letter('c'), d = *ctx.find_letter('d');
  Word out;
  out.reserve(w.size() * 2);
  for (const auto& l : w) {
    if (l.gen == a) {
      out.insert(out.end(), {Letter{a, false}, Letter{c, false}, Letter{a, false}});
    } else if (l.gen == b) {
      out.push_back(Letter{d, false});
    } else if (l.gen == c) {
      out.push_back(Letter{b, false});
    } else if (l.gen == d) {
      out.push_back(Letter{c, false});
    }
  }
  return normalize(out, ctx);
}

/// a^2, b^2, c^2, d^2, bcd and alpha^n of (ad)^4 and (adacac)^4 for n <= max_n,
/// written in the letters of `ctx` (an omega context).
inline std::vector<LysenokRelator> lysenok_relators(unsigned max_n, const Context& ctx) {
  std::vector<LysenokRelator> out;
  for (const char* r : {"a^2", "b^2", "c^2", "d^2", "bcd"}) out.push_back({r, 0, parse_word(r, ctx)});
  for (const char* family : {"(ad)^4", "(adacac)^4"}) {
    Word w = parse_normal(family, ctx);
    for (unsigned n = 0; n <= max_n; ++n) {
      out.push_back({family, n, w});
      w = lysenok_substitute(w, ctx);
    }
  }
  return out;
}

}  // namespace treegrp
