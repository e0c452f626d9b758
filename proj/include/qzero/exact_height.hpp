#pragma once

#include <compare>
#include <cstdio>
#include <ostream>
#include <string>

#include "qzero/error.hpp"
#include "qzero/exact_linalg.hpp"

namespace qzero {

/// The exact value base^(1/root) for a nonnegative rational base and a root
/// that is a power of two. Normalized so the root is as small as possible,
/// which makes equality structural.
class ExactHeight {
 public:
  static constexpr unsigned kMaxRoot = 64;

  ExactHeight() : base_(1), root_(1) {}
  ExactHeight(Rational base, unsigned root = 1) : base_(std::move(base)), root_(root) {  // NOLINT
    base_.canonicalize();
    if (base_ < 0) throw Error(ErrorCode::InvalidInput, "height base must be nonnegative");
    if (root_ == 0 || (root_ & (root_ - 1)) != 0 || root_ > kMaxRoot)
      throw Error(ErrorCode::InvalidInput, "height root must be a power of two <= 64");
    normalize();
  }
  ExactHeight(int v) : ExactHeight(Rational(v)) {}  // NOLINT

  const Rational& base() const noexcept { return base_; }
  unsigned root() const noexcept { return root_; }

  /// value^(k) as an exact rational; k must be a multiple of root().
  Rational power(unsigned k) const {
    if (k % root_ != 0) throw Error(ErrorCode::InvalidInput, "power is not rational");
    return pow(base_, k / root_);
  }

  ExactHeight pow_int(unsigned k) const {
    // (b^(1/e))^k = (b^k)^(1/e)
    return ExactHeight(pow(base_, k), root_);
  }

  /// value^(1/k), k a power of two.
  ExactHeight nth_root(unsigned k) const { return ExactHeight(base_, root_ * k); }

  ExactHeight inverse() const {
    if (base_ == 0) throw Error(ErrorCode::ZeroVector, "inverse of zero height");
    return ExactHeight(Rational(1 / base_), root_);
  }

  friend ExactHeight operator*(const ExactHeight& x, const ExactHeight& y) {
    const unsigned r = x.root_ > y.root_ ? x.root_ : y.root_;
    return ExactHeight(pow(x.base_, r / x.root_) * pow(y.base_, r / y.root_), r);
  }
  friend ExactHeight operator/(const ExactHeight& x, const ExactHeight& y) { return x * y.inverse(); }

  friend std::strong_ordering operator<=>(const ExactHeight& x, const ExactHeight& y) {
    const unsigned r = x.root_ > y.root_ ? x.root_ : y.root_;
    const Rational lhs = pow(x.base_, r / x.root_);
    const Rational rhs = pow(y.base_, r / y.root_);
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  friend bool operator==(const ExactHeight& x, const ExactHeight& y) {
    return x.root_ == y.root_ && x.base_ == y.base_;
  }

  double to_double() const;

  /// "b" or "b^(1/e)".
  std::string to_string() const {
    if (root_ == 1) return base_.get_str();
    return base_.get_str() + "^(1/" + std::to_string(root_) + ")";
  }

  /// Decimal rendering for human consumption only.
  std::string decimal() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", to_double());
    return buf;
  }

 private:
  void normalize() {
    while (root_ > 1 && root_ % 2 == 0) {
      auto s = rational_sqrt_exact(base_);
      if (!s) break;
      base_ = *s;
      root_ /= 2;
    }
  }

  Rational base_;
  unsigned root_;
};

inline double ExactHeight::to_double() const {
  double b = base_.get_d();
  double v = b;
  for (unsigned r = root_; r > 1; r /= 2) v = __builtin_sqrt(v);
  return v;
}

inline std::string to_string(const ExactHeight& h) { return h.to_string(); }

inline std::ostream& operator<<(std::ostream& os, const ExactHeight& h) { return os << h.to_string(); }

}  // namespace qzero
