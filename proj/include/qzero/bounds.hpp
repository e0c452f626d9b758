#pragma once

// Floating-point enclosures of the explicit constants and bound expressions,
// and three-state comparison of exact heights against them.

#include <cfenv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "qzero/error.hpp"
#include "qzero/exact_height.hpp"
#include "qzero/exact_linalg.hpp"
#include "qzero/orders.hpp"
#include "qzero/quaternion.hpp"

namespace qzero {

/// A closed interval [lo, hi] known to contain a real number.
struct BoundValue {
  double lo = 0;
  double hi = 0;
  std::string tag;

  static BoundValue exact(double v, std::string tag = {}) { return {v, v, std::move(tag)}; }
  bool contains(double v) const { return lo <= v && v <= hi; }
  double width() const { return hi - lo; }
  double mid() const { return lo / 2 + hi / 2; }
  double relative_width() const { return lo > 0 ? hi / lo - 1 : std::numeric_limits<double>::infinity(); }
};

namespace detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double down(double x) { return std::nextafter(x, -kInf); }
inline double up(double x) { return std::nextafter(x, kInf); }

/// Widens [lo, hi] by a relative margin on each side (positive values).
inline BoundValue pad(double lo, double hi, double rel, std::string tag) {
  return {down(lo * (1 - rel)), up(hi * (1 + rel)), std::move(tag)};
}

// Relative error allowance for library transcendental calls.
inline constexpr double kTranscendentalPad = 0x1p-42;
inline constexpr double kPowPad = 0x1p-50;

}  // namespace detail

// Interval arithmetic on positive enclosures. Each result is widened by one
// ulp in each direction, which covers round-to-nearest.

inline BoundValue operator*(const BoundValue& x, const BoundValue& y) {
  if (x.lo < 0 || y.lo < 0) throw Error(ErrorCode::InvalidInput, "interval product expects nonnegative operands");
  return {detail::down(x.lo * y.lo), detail::up(x.hi * y.hi), x.tag.empty() ? y.tag : x.tag};
}

inline BoundValue operator/(const BoundValue& x, const BoundValue& y) {
  if (x.lo < 0 || y.lo <= 0) throw Error(ErrorCode::InvalidInput, "interval quotient expects positive operands");
  return {detail::down(x.lo / y.hi), detail::up(x.hi / y.lo), x.tag.empty() ? y.tag : x.tag};
}

inline BoundValue sqrt(const BoundValue& x) {
  return {detail::down(std::sqrt(x.lo)), detail::up(std::sqrt(x.hi)), x.tag};
}

/// x^e for positive x and real e.
inline BoundValue pow(const BoundValue& x, double e) {
  if (x.lo <= 0) throw Error(ErrorCode::InvalidInput, "interval power expects a positive base");
  double a = std::pow(x.lo, e);
  double b = std::pow(x.hi, e);
  if (e < 0) std::swap(a, b);
  return detail::pad(a, b, detail::kPowPad, x.tag);
}

inline BoundValue with_tag(BoundValue v, std::string tag) {
  v.tag = std::move(tag);
  return v;
}

/// Enclosure of a nonnegative rational.
inline BoundValue enclose(const Rational& q) {
  const double d = q.get_d();  // truncates toward zero
  if (std::isinf(d)) return {std::numeric_limits<double>::max(), detail::kInf, {}};
  if (Rational(d) == q) return BoundValue::exact(d);
  return {d, detail::up(d), {}};
}

/// Enclosure of base^(1/root).
inline BoundValue enclose(const ExactHeight& h) {
  BoundValue v = enclose(h.base());
  for (unsigned r = h.root(); r > 1; r /= 2) {
    if (v.lo == v.hi) {
      const double s = std::sqrt(v.lo);
      if (s * s == v.lo) {
        v = BoundValue::exact(s);
        continue;
      }
    }
    v = sqrt(v);
  }
  return v;
}

inline BoundValue pi_enclosure() {
  return detail::pad(std::numbers::pi, std::numbers::pi, detail::kTranscendentalPad, "pi");
}

inline BoundValue gamma_enclosure(double x) {
  const double g = std::tgamma(x);
  return detail::pad(g, g, detail::kTranscendentalPad, "gamma");
}

// ---------------------------------------------------------------------------
// Field constants

/// Invariants of the number field K: degree, |discriminant|, and the numbers
/// of real and complex places.
struct FieldData {
  int degree = 1;
  double abs_discriminant = 1;
  int real_places = 1;
  int complex_places = 0;

  static FieldData rationals() { return {}; }
};

/// r(L) = pi^(-1/2) Gamma(L/2 + 1)^(1/L) at a real place.
inline BoundValue r_real(int l) {
  if (l < 1) throw Error(ErrorCode::InvalidInput, "L must be positive");
  return with_tag(pow(pi_enclosure(), -0.5) * pow(gamma_enclosure(l / 2.0 + 1), 1.0 / l), "r_real");
}

/// r(L) = (2 pi)^(-1/2) Gamma(L + 1)^(1/(2L)) at a complex place.
inline BoundValue r_complex(int l) {
  if (l < 1) throw Error(ErrorCode::InvalidInput, "L must be positive");
  const BoundValue two_pi = BoundValue::exact(2) * pi_enclosure();
  return with_tag(pow(two_pi, -0.5) * pow(gamma_enclosure(l + 1.0), 1.0 / (2.0 * l)), "r_complex");
}

/// C_K(L) = 2 |Delta|^(1/2d) prod_v r_v(L)^(d_v/d).
inline BoundValue C_K(int l, const FieldData& k = FieldData::rationals()) {
  const double d = k.degree;
  BoundValue c = BoundValue::exact(2);
  if (k.abs_discriminant != 1) c = c * pow(BoundValue::exact(k.abs_discriminant), 1 / (2 * d));
  if (k.real_places > 0) c = c * pow(r_real(l), k.real_places / d);
  if (k.complex_places > 0) c = c * pow(r_complex(l), 2 * k.complex_places / d);
  return with_tag(c, "C_K");
}

/// B_K(L) = 2^(L+1) C_K(1)^2 C_K(L-1)^(2(L-1)); the last factor is 1 at L = 1.
inline BoundValue B_K(int l, const FieldData& k = FieldData::rationals()) {
  if (l < 1) throw Error(ErrorCode::InvalidInput, "L must be positive");
  const BoundValue c1 = C_K(1, k);
  BoundValue b = BoundValue::exact(std::ldexp(1.0, l + 1)) * c1 * c1;
  if (l > 1) b = b * pow(C_K(l - 1, k), 2.0 * (l - 1));
  return with_tag(b, "B_K");
}

/// s = max{1,|alpha|,|beta|,|alpha beta|}^(1/2), t = min{...}^(1/2).
inline std::pair<ExactHeight, ExactHeight> s_t_constants(const AlgebraParams& a) {
  const Integer al = abs(a.alpha());
  const Integer be = abs(a.beta());
  const Integer ab = al * be;
  Integer hi = 1;
  Integer lo = 1;
  for (const Integer& v : {al, be, ab}) {
    if (v > hi) hi = v;
    if (v < lo) lo = v;
  }
  return {ExactHeight(Rational(hi), 2), ExactHeight(Rational(lo), 2)};
}

/// The constant of the main theorem for the order O.
inline BoundValue A_K(int n, int l, const AlgebraParams& a, const Order& o) {
  if (l < 1 || l > n) throw Error(ErrorCode::InvalidInput, "A_K requires 1 <= L <= N");
  const auto [s, t] = s_t_constants(a);
  const BoundValue two_pow = pow(BoundValue::exact(2), (20.0 * l - 3) / 2);
  const BoundValue n_pow = pow(BoundValue::exact(n), 4.0 * l - 1);
  const BoundValue root_b = sqrt(B_K(4 * l));
  const BoundValue m_pow = enclose(frakM(o).pow_int(static_cast<unsigned>(4 * (n - l))));
  const BoundValue s_pow = enclose(s.pow_int(static_cast<unsigned>(4 * l)));
  const BoundValue t_pow = enclose(t.pow_int(static_cast<unsigned>(4 * l - 1)).nth_root(2));
  return with_tag(two_pow * n_pow * root_b * m_pow * s_pow / t_pow, "A_K");
}

struct VaalerBounds {
  BoundValue b1;  // sqrt(B(4L)) (16 N^2 H(Q))^((4L-1)/2) H(V)
  BoundValue b2;  // B(4L) (16 N^2 H(Q))^(4L-1) H(V)^2
};

inline VaalerBounds vaaler_bounds(int l, int n, const ExactHeight& h_q, const ExactHeight& h_v) {
  if (l < 1) throw Error(ErrorCode::InvalidInput, "L must be positive");
  const unsigned e = static_cast<unsigned>(4 * l - 1);
  const ExactHeight scaled = ExactHeight(Rational(16 * n * n)) * h_q;
  const BoundValue b = B_K(4 * l);
  const BoundValue p1 = enclose(scaled.pow_int(e).nth_root(2));
  const BoundValue p2 = enclose(scaled.pow_int(e));
  const BoundValue v1 = enclose(h_v);
  const BoundValue v2 = enclose(h_v.pow_int(2));
  return {with_tag(sqrt(b) * p1 * v1, "vaaler_b1"), with_tag(b * p2 * v2, "vaaler_b2")};
}

/// Right-hand sides of the two inequalities of the main theorem.
struct TheoremBounds {
  BoundValue rhs1;  // A Hinf(F)^((4L-1)/2) H^O(Z)^4
  BoundValue rhs2;  // A^2 Hinf(F)^(4L-1) H^O(Z)^8
};

inline TheoremBounds theorem_bounds(const BoundValue& a_k, int l, const ExactHeight& hinf_f, const ExactHeight& h_z) {
  const unsigned e = static_cast<unsigned>(4 * l - 1);
  const BoundValue f1 = enclose(hinf_f.pow_int(e).nth_root(2));
  const BoundValue f2 = enclose(hinf_f.pow_int(e));
  const BoundValue z1 = enclose(h_z.pow_int(4));
  const BoundValue z2 = enclose(h_z.pow_int(8));
  return {with_tag(a_k * f1 * z1, "theorem_rhs1"), with_tag(a_k * a_k * f2 * z2, "theorem_rhs2")};
}

// ---------------------------------------------------------------------------
// Certification

enum class Verdict { Certified, Likely, Violated };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "certified";
    case Verdict::Likely: return "likely";
    case Verdict::Violated: return "violated";
  }
  return "unknown";
}

/// Certified when lhs <= rhs is proven by the enclosures, Violated when
/// lhs > rhs is proven, Likely otherwise.
inline Verdict certify_leq(const ExactHeight& lhs, const BoundValue& rhs) {
  const BoundValue l = enclose(lhs);
  if (l.hi <= rhs.lo) return Verdict::Certified;
  if (l.lo > rhs.hi) return Verdict::Violated;
  return Verdict::Likely;
}

}  // namespace qzero
