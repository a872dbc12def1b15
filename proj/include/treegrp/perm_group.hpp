#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "treegrp/errors.hpp"
#include "treegrp/permutation.hpp"

namespace treegrp {

/// Permutation group with a base and strong generating set computed by the
/// deterministic Schreier-Sims algorithm. Transversals are stored explicitly,
/// which suits the small basic orbits of groups acting on rooted trees.
class PermGroup {
 public:
  using Point = Permutation::Point;

  explicit PermGroup(std::size_t degree) : degree_(degree) {}

  PermGroup(std::size_t degree, std::span<const Permutation> generators) : degree_(degree) {
    for (const auto& g : generators) add_generator(g);
  }

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  std::size_t base_length() const { return levels_.size(); }

  /// Adds a generator and restores the BSGS; members are ignored.
  void add_generator(const Permutation& g) {
    if (g.degree() != degree_) throw Error(ErrorKind::InvalidArgument, "degree mismatch");
    if (contains(g)) return;
    generators_.push_back(g);
    add_strong(g);
    close();
  }

  bool contains(const Permutation& g) const {
    auto [residue, level] = sift(g, 0);
    return level == levels_.size() && residue.is_identity();
  }

  /// |G| as a prime factorization of the product of basic orbit lengths.
  std::map<std::uint64_t, unsigned> order_factors() const {
    std::map<std::uint64_t, unsigned> out;
    for (const auto& level : levels_) {
      std::uint64_t n = level.orbit.size();
      for (std::uint64_t p = 2; p * p <= n; ++p)
        while (n % p == 0) {
          ++out[p];
          n /= p;
        }
      if (n > 1) ++out[n];
    }
    return out;
  }

  double log2_order() const {
    double total = 0;
    for (const auto& level : levels_) total += std::log2(static_cast<double>(level.orbit.size()));
    return total;
  }

  /// Orbits of the whole group on points, each sorted ascending.
  std::vector<std::vector<Point>> orbits() const { return orbits_of(degree_, generators_); }

  static std::vector<std::vector<Point>> orbits_of(std::size_t degree, std::span<const Permutation> gens) {
    std::vector<int> id(degree, -1);
    std::vector<std::vector<Point>> out;
    for (Point start = 0; start < degree; ++start) {
      if (id[start] >= 0) continue;
      const int label = static_cast<int>(out.size());
      std::vector<Point> orbit{start};
      id[start] = label;
      for (std::size_t i = 0; i < orbit.size(); ++i)
        for (const auto& g : gens) {
          const Point y = g(orbit[i]);
          if (id[y] < 0) {
            id[y] = label;
            orbit.push_back(y);
          }
        }
      std::sort(orbit.begin(), orbit.end());
      out.push_back(std::move(orbit));
    }
    return out;
  }

 private:
  struct Level {
    Point base = 0;
    std::vector<std::size_t> gens;  // indices into strong_
    std::vector<Point> orbit;
    std::vector<int> position;              // point -> orbit index or -1
    std::vector<Permutation> transversal;   // transversal[k](base) == orbit[k]
    std::vector<Permutation> inverses;      // inverses[k] == transversal[k].inverse()
    std::vector<std::vector<bool>> checked; // checked[k][j]: Schreier pair (orbit[k], gens[j]) done
  };

  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t from) const {
    for (std::size_t i = from; i < levels_.size(); ++i) {
      const auto& level = levels_[i];
      const int pos = level.position[g(level.base)];
      if (pos < 0) return {std::move(g), i};
      g = level.inverses[static_cast<std::size_t>(pos)] * g;
    }
    return {std::move(g), levels_.size()};
  }

  void new_level(Point base) {
    Level level;
    level.base = base;
    level.position.assign(degree_, -1);
    level.orbit.push_back(base);
    level.position[base] = 0;
    level.transversal.push_back(Permutation::identity(degree_));
    level.inverses.push_back(Permutation::identity(degree_));
    level.checked.emplace_back();
    levels_.push_back(std::move(level));
  }

  // Adds g to the generator lists of every level whose base prefix it fixes,
  // extending the base when g fixes all current base points.
  std::size_t add_strong(const Permutation& g) {
    const std::size_t index = strong_.size();
    strong_.push_back(g);
    std::size_t depth = 0;
    while (depth < levels_.size() && g(levels_[depth].base) == levels_[depth].base) ++depth;
    if (depth == levels_.size()) new_level(g.first_moved_point());
    for (std::size_t i = 0; i <= depth; ++i) {
      levels_[i].gens.push_back(index);
      extend_orbit(levels_[i]);
    }
    return depth;
  }

  void extend_orbit(Level& level) {
    for (auto& row : level.checked) row.resize(level.gens.size(), false);
    for (std::size_t k = 0; k < level.orbit.size(); ++k) {
      for (std::size_t j = 0; j < level.gens.size(); ++j) {
        const auto& s = strong_[level.gens[j]];
        const Point y = s(level.orbit[k]);
        if (level.position[y] >= 0) continue;
        level.position[y] = static_cast<int>(level.orbit.size());
        level.orbit.push_back(y);
        level.transversal.push_back(s * level.transversal[k]);
        level.inverses.push_back(level.transversal.back().inverse());
        level.checked.emplace_back(level.gens.size(), false);
      }
    }
  }

  void close() {
    std::size_t i = levels_.size();
    while (i-- > 0) {
      bool restarted = false;
      for (std::size_t k = 0; k < levels_[i].orbit.size() && !restarted; ++k) {
        for (std::size_t j = 0; j < levels_[i].gens.size() && !restarted; ++j) {
          Level& level = levels_[i];
          if (level.checked[k][j]) continue;
          level.checked[k][j] = true;
          const auto& s = strong_[level.gens[j]];
          const Point y = s(level.orbit[k]);
          const auto& u_y_inv = level.inverses[static_cast<std::size_t>(level.position[y])];
          Permutation h = u_y_inv * s * level.transversal[k];
          if (h.is_identity()) continue;
          auto [residue, stop] = sift(std::move(h), i + 1);
          if (residue.is_identity()) continue;
          const std::size_t depth = add_strong(residue);
          i = depth + 1;  // resume checking from the deepest touched level
          restarted = true;
        }
      }
    }
  }

  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::vector<Permutation> strong_;
  std::vector<Level> levels_;
};

}  // namespace treegrp
