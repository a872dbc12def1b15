#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "treegrp/errors.hpp"

namespace treegrp {

/// An eventually periodic sequence over {0,1,2}, written `<preperiod>(<period>)`.
/// Stored in canonical form: the period is primitive and the preperiod is as
/// short as possible, so equal sequences compare equal.
class OmegaSequence {
 public:
  OmegaSequence(std::string preperiod, std::string period)
      : preperiod_(std::move(preperiod)), period_(std::move(period)) {
    check_symbols(preperiod_);
    check_symbols(period_);
    if (period_.empty()) throw Error(ErrorKind::EmptyPeriod, "period must be nonempty");
    canonicalize();
  }

  static OmegaSequence parse(std::string_view text) {
    const auto open = text.find('(');
    const auto close = text.find(')');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open ||
        close + 1 != text.size())
      throw Error(ErrorKind::SyntaxError, "expected <preperiod>(<period>), got '" + std::string(text) + "'");
    if (text.find('(', open + 1) != std::string_view::npos)
      throw Error(ErrorKind::SyntaxError, "nested parenthesis in '" + std::string(text) + "'");
    return OmegaSequence(std::string(text.substr(0, open)), std::string(text.substr(open + 1, close - open - 1)));
  }

  const std::string& preperiod() const { return preperiod_; }
  const std::string& period() const { return period_; }

  /// Symbol at 1-based position i.
  int symbol(std::size_t i) const {
    if (i == 0) throw Error(ErrorKind::InvalidArgument, "positions are 1-based");
    const std::size_t k = i - 1;
    if (k < preperiod_.size()) return preperiod_[k] - '0';
    return period_[(k - preperiod_.size()) % period_.size()] - '0';
  }

  OmegaSequence shift() const {
    if (!preperiod_.empty()) return OmegaSequence(preperiod_.substr(1), period_);
    return OmegaSequence("", period_.substr(1) + period_.front());
  }

  std::string str() const { return preperiod_ + "(" + period_ + ")"; }

  friend bool operator==(const OmegaSequence&, const OmegaSequence&) = default;

 private:
  static void check_symbols(const std::string& s) {
    for (char ch : s)
      if (ch < '0' || ch > '2')
        throw Error(ErrorKind::SyntaxError, std::string("symbol '") + ch + "' is not in {0,1,2}");
  }

  void canonicalize() {
    const std::size_t n = period_.size();
    for (std::size_t len = 1; len < n; ++len) {
      if (n % len) continue;
      bool power = true;
      for (std::size_t i = len; i < n && power; ++i) power = period_[i] == period_[i - len];
      if (power) {
        period_.resize(len);
        break;
      }
    }
    while (!preperiod_.empty() && preperiod_.back() == period_.back()) {
      period_ = period_.back() + period_.substr(0, period_.size() - 1);
      preperiod_.pop_back();
    }
  }

  std::string preperiod_;
  std::string period_;
};

}  // namespace treegrp
