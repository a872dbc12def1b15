#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treegrp/errors.hpp"
#include "treegrp/presentation.hpp"

namespace treegrp {

/// Coxeter label m_ij in {2, 3, ...} or infinity.
class Label {
 public:
  constexpr explicit Label(std::uint64_t m = 2) : m_(m) {}
  static constexpr Label infinity() { return Label(0); }

  constexpr bool infinite() const { return m_ == 0; }
  constexpr std::uint64_t value() const { return m_; }
  /// Coxeter graph convention: an edge iff m >= 3.
  constexpr bool is_edge() const { return infinite() || m_ >= 3; }
  constexpr bool power_of_two() const { return infinite() || (m_ >= 2 && (m_ & (m_ - 1)) == 0); }

  std::string str() const { return infinite() ? "inf" : std::to_string(m_); }

  friend constexpr bool operator==(Label, Label) = default;

  /// Order comparison with infinity above every integer.
  friend constexpr bool operator<(Label x, Label y) {
    if (x.infinite()) return false;
    if (y.infinite()) return true;
    return x.m_ < y.m_;
  }
  friend constexpr bool operator>=(Label x, Label y) { return !(x < y); }

 private:
  std::uint64_t m_;
};

/// m | n, with infinity divisible by everything.
inline bool divides(Label m, Label n) {
  if (n.infinite()) return true;
  if (m.infinite()) return false;
  return n.value() % m.value() == 0;
}

/// Label of a merged pair: both inherited relators hold, so the order divides
/// both; an infinite label contributes no relator.
inline Label merge_labels(Label m, Label n) {
  if (m.infinite()) return n;
  if (n.infinite()) return m;
  return Label(std::gcd(m.value(), n.value()));
}

class CoxeterGraph {
 public:
  std::size_t add_vertex(const std::string& name) {
    if (find(name)) throw Error(ErrorKind::SyntaxError, "vertex '" + name + "' declared twice");
    vertices_.push_back(name);
    return vertices_.size() - 1;
  }

  void set_label(std::size_t i, std::size_t j, Label m) {
    if (i == j) throw Error(ErrorKind::SyntaxError, "self-pair on '" + vertices_.at(i) + "'");
    labels_[key(i, j)] = m;
  }

  bool has_explicit_label(std::size_t i, std::size_t j) const { return labels_.count(key(i, j)) > 0; }

  Label label(std::size_t i, std::size_t j) const {
    auto it = labels_.find(key(i, j));
    return it == labels_.end() ? Label(2) : it->second;
  }

  bool adjacent(std::size_t i, std::size_t j) const { return i != j && label(i, j).is_edge(); }

  std::size_t size() const { return vertices_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::string& name(std::size_t i) const { return vertices_.at(i); }

  std::optional<std::size_t> find(const std::string& name) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      if (vertices_[i] == name) return i;
    return std::nullopt;
  }

  std::vector<std::size_t> neighbors(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < size(); ++j)
      if (adjacent(i, j)) out.push_back(j);
    return out;
  }

  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& [k, m] : labels_) n += m.is_edge();
    return n;
  }

  bool connected() const {
    if (vertices_.empty()) return true;
    std::vector<bool> seen(size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto w : neighbors(v))
        if (!seen[w]) seen[w] = stack.emplace_back(w), true;
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  }

  bool is_tree() const { return connected() && edge_count() + 1 == size(); }

  /// Explicit labels, i < j.
  const std::map<std::pair<std::size_t, std::size_t>, Label>& labels() const { return labels_; }

 private:
  static std::pair<std::size_t, std::size_t> key(std::size_t i, std::size_t j) { return {std::min(i, j), std::max(i, j)}; }

  std::vector<std::string> vertices_;
  std::map<std::pair<std::size_t, std::size_t>, Label> labels_;
};

/// Line-oriented graph format: `gen <name>`, `rel <u> <v> <label>` with
/// label a positive integer >= 2 or `inf`; `#` starts a comment. Pairs not
/// listed default to 2.
inline CoxeterGraph parse_graph(std::string_view text) {
  CoxeterGraph g;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](ErrorKind kind, const std::string& msg) {
    throw Error(kind, "line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream tokens(line);
    std::vector<std::string> t;
    for (std::string s; tokens >> s;) t.push_back(s);
    if (t.empty()) continue;
    if (t[0] == "gen") {
      if (t.size() != 2) fail(ErrorKind::SyntaxError, "expected 'gen <name>'");
      if (g.find(t[1])) fail(ErrorKind::SyntaxError, "vertex '" + t[1] + "' declared twice");
      g.add_vertex(t[1]);
    } else if (t[0] == "rel") {
      if (t.size() != 4) fail(ErrorKind::SyntaxError, "expected 'rel <u> <v> <label>'");
      auto u = g.find(t[1]), v = g.find(t[2]);
      if (!u) fail(ErrorKind::UnknownVertex, "'" + t[1] + "' is not declared");
      if (!v) fail(ErrorKind::UnknownVertex, "'" + t[2] + "' is not declared");
      if (*u == *v) fail(ErrorKind::SyntaxError, "self-pair '" + t[1] + "'");
      if (g.has_explicit_label(*u, *v)) fail(ErrorKind::DuplicateEdge, t[1] + " " + t[2]);
      Label m;
      if (t[3] == "inf") {
        m = Label::infinity();
      } else {
        if (t[3].empty() || t[3].size() > 18 || !std::all_of(t[3].begin(), t[3].end(), ::isdigit))
          fail(ErrorKind::SyntaxError, "bad label '" + t[3] + "'");
        const auto value = std::stoull(t[3]);
        if (value < 2) fail(ErrorKind::SyntaxError, "label must be >= 2");
        m = Label(value);
      }
      g.set_label(*u, *v, m);
    } else {
      fail(ErrorKind::SyntaxError, "unknown directive '" + t[0] + "'");
    }
  }
  return g;
}

inline std::string format_graph(const CoxeterGraph& g) {
  std::string out;
  for (const auto& v : g.vertices()) out += "gen " + v + "\n";
  for (const auto& [k, m] : g.labels()) out += "rel " + g.name(k.first) + " " + g.name(k.second) + " " + m.str() + "\n";
  return out;
}

struct LabelError {
  std::string u, v;
  Label label;

  std::string str() const { return u + "-" + v + ": label " + label.str() + " is not a power of 2 or inf"; }
};

/// Every label must be 2, 4, 8, ... or infinity.
inline std::vector<LabelError> validate_labels(const CoxeterGraph& g) {
  std::vector<LabelError> errors;
  for (const auto& [k, m] : g.labels())
    if (!m.power_of_two()) errors.push_back({g.name(k.first), g.name(k.second), m});
  return errors;
}

enum class Exclusion { SingleVertex, DihedralEdge, Crystallographic244, BadLabel, Disconnected };

struct HypothesisVerdict {
  bool satisfies = false;
  Exclusion reason = Exclusion::SingleVertex;
  Label bad_label;  // for BadLabel

  std::string str() const {
    if (satisfies) return "Satisfies";
    switch (reason) {
      case Exclusion::SingleVertex: return "Excluded(single-vertex)";
      case Exclusion::DihedralEdge: return "Excluded(dihedral-edge)";
      case Exclusion::Crystallographic244: return "Excluded(crystallographic-244)";
      case Exclusion::BadLabel: return "Excluded(bad-label(" + bad_label.str() + "))";
      case Exclusion::Disconnected: return "Excluded(disconnected)";
    }
    return "Excluded";
  }
};

/// Satisfies iff the graph is not a tree, or is a tree on >= 4 vertices, or
/// is a two-edge tree whose labels are >= 4 and >= 8 (infinity counts as >= 8).
inline HypothesisVerdict hypothesis_check(const CoxeterGraph& g) {
  HypothesisVerdict v;
  if (auto errors = validate_labels(g); !errors.empty()) {
    v.reason = Exclusion::BadLabel;
    v.bad_label = errors.front().label;
    return v;
  }
  if (g.size() <= 1) return v;
  if (!g.connected()) {
    v.reason = Exclusion::Disconnected;
    return v;
  }
  if (!g.is_tree() || g.size() >= 4) {
    v.satisfies = true;
    return v;
  }
  if (g.size() == 2) {
    v.reason = Exclusion::DihedralEdge;
    return v;
  }
  std::vector<Label> edge_labels;
  for (const auto& [k, m] : g.labels())
    if (m.is_edge()) edge_labels.push_back(m);
  std::sort(edge_labels.begin(), edge_labels.end());
  if (edge_labels[0] >= Label(4) && edge_labels[1] >= Label(8)) {
    v.satisfies = true;
    return v;
  }
  v.reason = Exclusion::Crystallographic244;
  return v;
}

/// 1/m + 1/n + 1/q < 1 in exact integer arithmetic; 1/inf = 0.
inline bool moussong_triangle(Label m, Label n, Label q) {
  for (Label x : {m, n, q})
    if (!x.infinite() && x.value() < 2) throw Error(ErrorKind::InvalidArgument, "labels must be >= 2");
  using Wide = unsigned __int128;
  std::vector<Wide> finite;
  for (Label x : {m, n, q})
    if (!x.infinite()) finite.push_back(x.value());
  Wide product = 1;
  for (Wide f : finite) product *= f;
  Wide numerator = 0;  // sum of 1/f scaled by product
  for (Wide f : finite) numerator += product / f;
  return numerator < product;
}

inline Presentation coxeter_presentation(const CoxeterGraph& g, std::string name = "C") {
  Presentation p;
  p.name = std::move(name);
  p.generators = g.vertices();
  for (std::size_t i = 0; i < g.size(); ++i) p.relators.push_back(Relator{{{i, 1}}, 2});
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      const Label m = g.label(i, j);
      if (m.infinite()) continue;
      p.relators.push_back(Relator{{{i, 1}, {j, 1}}, static_cast<int>(m.value())});
    }
  return p;
}

// ---------------------------------------------------------------------------
// Reduction onto the critical groups
// ---------------------------------------------------------------------------

enum class CriticalGroup { Xi, Phi, Upsilon, Pi };

inline const char* to_string(CriticalGroup c) {
  switch (c) {
    case CriticalGroup::Xi: return "Xi";
    case CriticalGroup::Phi: return "Phi";
    case CriticalGroup::Upsilon: return "Upsilon";
    case CriticalGroup::Pi: return "Pi";
  }
  return "?";
}

struct Move {
  enum class Kind { Kill, Identify, LowerLabel };
  Kind kind;
  std::string u, v;
  Label label;

  std::string str() const {
    switch (kind) {
      case Kind::Kill: return "kill(" + u + ")";
      case Kind::Identify: return "identify(" + u + ", " + v + ")";
      case Kind::LowerLabel: return "lower-label(" + u + ", " + v + ", " + label.str() + ")";
    }
    return "?";
  }
};

struct ReductionResult {
  bool success = false;
  CriticalGroup target = CriticalGroup::Xi;
  std::vector<Move> moves;
  /// Per source vertex: the critical generator it maps to, or nullopt when killed.
  std::vector<std::optional<std::string>> assignment;
  std::vector<std::string> trace;
  std::string reason;
};

namespace detail {

inline std::optional<std::vector<std::size_t>> shortest_cycle(const CoxeterGraph& g) {
  std::optional<std::vector<std::size_t>> best;
  for (std::size_t u = 0; u < g.size(); ++u) {
    for (std::size_t v = u + 1; v < g.size(); ++v) {
      if (!g.adjacent(u, v)) continue;
      // Shortest u-v path avoiding the edge u-v.
      std::vector<std::ptrdiff_t> parent(g.size(), -1);
      std::vector<std::size_t> queue{u};
      parent[u] = static_cast<std::ptrdiff_t>(u);
      for (std::size_t q = 0; q < queue.size() && parent[v] < 0; ++q) {
        for (auto w : g.neighbors(queue[q])) {
          if (queue[q] == u && w == v) continue;
          if (parent[w] >= 0) continue;
          parent[w] = static_cast<std::ptrdiff_t>(queue[q]);
          queue.push_back(w);
        }
      }
      if (parent[v] < 0) continue;
      std::vector<std::size_t> cycle;
      for (std::size_t x = v; x != u; x = static_cast<std::size_t>(parent[x])) cycle.push_back(x);
      cycle.push_back(u);
      std::reverse(cycle.begin(), cycle.end());
      if (!best || cycle.size() < best->size()) best = std::move(cycle);
    }
  }
  return best;
}

struct Selection {
  std::vector<std::size_t> keep;                  // kept vertices, in target generator order
  std::vector<std::string> names;                 // target generator names
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (i, j) indices into keep
  std::vector<Label> wanted;                      // label for each edge
};

inline ReductionResult realize(const CoxeterGraph& g, CriticalGroup target, const Selection& sel,
                               std::vector<std::string> trace) {
  ReductionResult r;
  r.success = true;
  r.target = target;
  r.trace = std::move(trace);
  r.assignment.assign(g.size(), std::nullopt);
  for (std::size_t v = 0; v < g.size(); ++v) {
    auto it = std::find(sel.keep.begin(), sel.keep.end(), v);
    if (it == sel.keep.end())
      r.moves.push_back({Move::Kind::Kill, g.name(v), "", Label()});
    else
      r.assignment[v] = sel.names[static_cast<std::size_t>(it - sel.keep.begin())];
  }
  for (std::size_t e = 0; e < sel.edges.size(); ++e) {
    const auto u = sel.keep[sel.edges[e].first], v = sel.keep[sel.edges[e].second];
    const Label have = g.label(u, v);
    if (have == sel.wanted[e]) continue;
    r.moves.push_back({Move::Kind::LowerLabel, g.name(u), g.name(v), sel.wanted[e]});
  }
  r.trace.push_back(std::string("success: ") + to_string(target));
  return r;
}

inline std::string cycle_text(const CoxeterGraph& g, const std::vector<std::size_t>& cycle) {
  std::string s;
  for (auto v : cycle) s += (s.empty() ? "" : " ") + g.name(v);
  return s;
}

}  // namespace detail

/// Maps a graph satisfying the hypothesis onto one of the critical groups
/// using kill, identify, and lower-label moves. Cycles are tried first; the
/// literal cycle-shortening by identification merges labels by gcd, and the
/// trace records every collapse. Tree strategies (induced 4-path, induced
/// star, induced 3-path with labels {>=4, >=8}) follow.
inline ReductionResult reduce(const CoxeterGraph& g) {
  const auto verdict = hypothesis_check(g);
  if (!verdict.satisfies) throw Error(ErrorKind::HypothesisNotMet, verdict.str());

  std::vector<std::string> trace;
  const Label four(4), eight(8);

  if (!g.is_tree()) {
    auto cycle = detail::shortest_cycle(g);
    trace.push_back("shortest chordless cycle: " + detail::cycle_text(g, *cycle) + " (length " +
                    std::to_string(cycle->size()) + ")");
    if (cycle->size() == 3) {
      detail::Selection sel{*cycle, {"x", "y", "z"}, {{0, 1}, {0, 2}, {1, 2}}, {four, four, four}};
      return detail::realize(g, CriticalGroup::Phi, sel, std::move(trace));
    }
    // Identify adjacent cycle vertices; the merged vertex inherits gcd labels.
    const auto& c = *cycle;
    const std::size_t k = c.size();
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t u = c[i], v = c[(i + 1) % k];
      const std::size_t prev = c[(i + k - 1) % k], next = c[(i + 2) % k];
      const Label to_prev = merge_labels(g.label(u, prev), g.label(v, prev));
      const Label to_next = merge_labels(g.label(u, next), g.label(v, next));
      std::string step = "identify(" + g.name(u) + ", " + g.name(v) + "): merged label to " + g.name(prev) + " = gcd(" +
                         g.label(u, prev).str() + ", " + g.label(v, prev).str() + ") = " + to_prev.str() +
                         ", to " + g.name(next) + " = gcd(" + g.label(u, next).str() + ", " + g.label(v, next).str() +
                         ") = " + to_next.str();
      if (!to_prev.is_edge() || !to_next.is_edge()) step += "; label collapses to 2, cycle broken";
      trace.push_back(step);
    }
    trace.push_back("cycle strategy failed: every identification collapses a cycle label to 2");
  } else {
    trace.push_back("graph is a tree");
  }

  const std::size_t n = g.size();
  // Induced 4-vertex path: Upsilon.
  for (std::size_t p0 = 0; p0 < n; ++p0)
    for (auto p1 : g.neighbors(p0))
      for (auto p2 : g.neighbors(p1)) {
        if (p2 == p0 || g.adjacent(p0, p2)) continue;
        for (auto p3 : g.neighbors(p2)) {
          if (p3 == p1 || p3 == p0 || p3 < p0 || g.adjacent(p1, p3) || g.adjacent(p0, p3)) continue;
          detail::Selection sel{{p0, p1, p2, p3}, {"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {2, 3}}, {four, four, four}};
          trace.push_back("induced 4-vertex path: " + detail::cycle_text(g, sel.keep));
          return detail::realize(g, CriticalGroup::Upsilon, sel, std::move(trace));
        }
      }
  trace.push_back("no induced 4-vertex path");

  // Induced star with three leaves: Pi.
  for (std::size_t center = 0; center < n; ++center) {
    const auto nb = g.neighbors(center);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        for (std::size_t l = j + 1; l < nb.size(); ++l) {
          if (g.adjacent(nb[i], nb[j]) || g.adjacent(nb[i], nb[l]) || g.adjacent(nb[j], nb[l])) continue;
          detail::Selection sel{{center, nb[i], nb[j], nb[l]}, {"a", "b", "c", "d"}, {{0, 1}, {0, 2}, {0, 3}},
                                {four, four, four}};
          trace.push_back("induced star centred at " + g.name(center));
          return detail::realize(g, CriticalGroup::Pi, sel, std::move(trace));
        }
  }
  trace.push_back("no induced star with three leaves");

  // Induced 3-vertex path with labels {>=4, >=8}: Xi, with d -4- a -8- c.
  for (std::size_t center = 0; center < n; ++center) {
    const auto nb = g.neighbors(center);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = 0; j < nb.size(); ++j) {
        if (i == j || g.adjacent(nb[i], nb[j])) continue;
        const Label to_four = g.label(center, nb[i]), to_eight = g.label(center, nb[j]);
        if (!(to_eight >= eight)) continue;
        if (to_four >= eight && i > j) continue;  // both ends qualify for the 8-edge; keep the first ordering
        detail::Selection sel{{center, nb[i], nb[j]}, {"a", "d", "c"}, {{0, 1}, {0, 2}}, {four, eight}};
        trace.push_back("induced 3-vertex path " + g.name(nb[i]) + " " + g.name(center) + " " + g.name(nb[j]) +
                        " with labels " + to_four.str() + ", " + to_eight.str());
        return detail::realize(g, CriticalGroup::Xi, sel, std::move(trace));
      }
  }
  trace.push_back("no induced 3-vertex path with labels {>=4, >=8}");

  ReductionResult r;
  r.trace = std::move(trace);
  r.reason = "every strategy collapses a needed label to 2";
  return r;
}

}  // namespace treegrp
