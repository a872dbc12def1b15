#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "treegrp/errors.hpp"

namespace treegrp {

struct RelatorLetter {
  std::size_t gen;
  int power = 1;
};

/// A relator written as base^exponent, e.g. (x2 x1^-1)^2.
struct Relator {
  std::vector<RelatorLetter> base;
  int exponent = 1;
};

struct Presentation {
  std::string name;
  std::vector<std::string> generators;
  std::vector<Relator> relators;

  std::size_t generator_index(const std::string& g) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (generators[i] == g) return i;
    throw Error(ErrorKind::UnknownName, "generator '" + g + "' not in " + name);
  }

  /// Convenience for building relators: rel({"a","d"}, 4) is (ad)^4.
  Relator rel(const std::vector<std::string>& letters, int exponent) const {
    Relator r;
    r.exponent = exponent;
    for (const auto& l : letters) {
      if (!l.empty() && l.back() == '\'')
        r.base.push_back({generator_index(l.substr(0, l.size() - 1)), -1});
      else
        r.base.push_back({generator_index(l), 1});
    }
    return r;
  }
};

inline std::string format_relator(const Relator& r, const Presentation& p) {
  bool spaced = false;
  for (const auto& g : p.generators) spaced = spaced || g.size() > 1;
  std::string base;
  for (std::size_t i = 0; i < r.base.size(); ++i) {
    if (i && spaced) base += ' ';
    base += p.generators[r.base[i].gen];
    if (r.base[i].power != 1) base += "^" + std::to_string(r.base[i].power);
  }
  if (r.exponent == 1) return base;
  if (r.base.size() == 1 && r.base[0].power == 1) return base + "^" + std::to_string(r.exponent);
  return "(" + base + ")^" + std::to_string(r.exponent);
}

}  // namespace treegrp
