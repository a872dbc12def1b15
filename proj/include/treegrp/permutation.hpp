#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <vector>

namespace treegrp {

/// A bijection of {0, ..., degree-1}. Products follow function composition:
/// (p * q)(x) == p(q(x)), so q acts first.
class Permutation {
 public:
  using Point = std::uint32_t;

  Permutation() = default;

  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {
    assert(is_bijection());
  }

  static Permutation identity(std::size_t degree) {
    std::vector<Point> images(degree);
    std::iota(images.begin(), images.end(), Point{0});
    return Permutation(std::move(images));
  }

  /// The cyclic shift i -> i + step (mod degree).
  static Permutation rotation(std::size_t degree, std::size_t step = 1) {
    std::vector<Point> images(degree);
    for (std::size_t i = 0; i < degree; ++i) images[i] = static_cast<Point>((i + step) % degree);
    return Permutation(std::move(images));
  }

  static Permutation transposition(std::size_t degree, Point i, Point j) {
    auto p = identity(degree);
    std::swap(p.images_[i], p.images_[j]);
    return p;
  }

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  const std::vector<Point>& images() const { return images_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  Permutation inverse() const {
    std::vector<Point> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Point>(i);
    return Permutation(std::move(inv));
  }

  friend Permutation operator*(const Permutation& p, const Permutation& q) {
    assert(p.degree() == q.degree());
    std::vector<Point> images(q.degree());
    for (std::size_t i = 0; i < images.size(); ++i) images[i] = p.images_[q.images_[i]];
    return Permutation(std::move(images));
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

  std::vector<std::vector<Point>> cycles() const {
    std::vector<std::vector<Point>> result;
    std::vector<bool> seen(images_.size(), false);
    for (Point start = 0; start < images_.size(); ++start) {
      if (seen[start]) continue;
      std::vector<Point> cycle;
      for (Point x = start; !seen[x]; x = images_[x]) {
        seen[x] = true;
        cycle.push_back(x);
      }
      result.push_back(std::move(cycle));
    }
    return result;
  }

  std::uint64_t order() const {
    std::uint64_t result = 1;
    for (const auto& cycle : cycles()) result = std::lcm(result, static_cast<std::uint64_t>(cycle.size()));
    return result;
  }

  Point first_moved_point() const {
    for (Point i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return i;
    return static_cast<Point>(images_.size());
  }

 private:
  bool is_bijection() const {
    std::vector<bool> hit(images_.size(), false);
    for (Point x : images_) {
      if (x >= images_.size() || hit[x]) return false;
      hit[x] = true;
    }
    return true;
  }

  std::vector<Point> images_;
};

inline std::ostream& operator<<(std::ostream& os, const Permutation& p) {
  os << '[';
  for (std::size_t i = 0; i < p.degree(); ++i) os << (i ? " " : "") << p(static_cast<Permutation::Point>(i));
  return os << ']';
}

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : p.images()) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace treegrp
