#pragma once

// Arithmetic in the definite quaternion algebra D = (alpha, beta / Q) with the
// fixed basis 1, i, j, k; the coordinate map D^N -> Q^{4N}; the splitting map
// into 2x2 matrices over E = Q(sqrt(alpha)); hermitian forms.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "qzero/error.hpp"
#include "qzero/exact_linalg.hpp"

namespace qzero {

/// Structure constants of D: i^2 = alpha, j^2 = beta, ij = -ji = k.
class AlgebraParams {
 public:
  AlgebraParams(Integer alpha, Integer beta) : alpha_(std::move(alpha)), beta_(std::move(beta)) {
    if (alpha_ >= 0 || beta_ >= 0)
      throw Error(ErrorCode::InvalidAlgebra, "alpha and beta must be negative integers");
  }

  const Integer& alpha() const noexcept { return alpha_; }
  const Integer& beta() const noexcept { return beta_; }

  friend bool operator==(const AlgebraParams&, const AlgebraParams&) = default;

 private:
  Integer alpha_;
  Integer beta_;
};

/// x = c[0] + c[1] i + c[2] j + c[3] k.
struct Quat {
  std::array<Rational, 4> c{};

  Quat() = default;
  Quat(int scalar) { c[0] = scalar; }  // NOLINT(google-explicit-constructor)
  Quat(const Rational& scalar) { c[0] = scalar; }  // NOLINT(google-explicit-constructor)
  Quat(Rational c0, Rational c1, Rational c2, Rational c3) : c{std::move(c0), std::move(c1), std::move(c2), std::move(c3)} {}

  static Quat i() { return {0, 1, 0, 0}; }
  static Quat j() { return {0, 0, 1, 0}; }
  static Quat k() { return {0, 0, 0, 1}; }
  /// The basis element eta_h, h = 0..3.
  static Quat basis(std::size_t h) {
    Quat q;
    q.c[h] = 1;
    return q;
  }

  bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0; }
  bool is_scalar() const { return c[1] == 0 && c[2] == 0 && c[3] == 0; }

  Quat& operator+=(const Quat& o) {
    for (std::size_t m = 0; m < 4; ++m) c[m] += o.c[m];
    return *this;
  }
  Quat& operator-=(const Quat& o) {
    for (std::size_t m = 0; m < 4; ++m) c[m] -= o.c[m];
    return *this;
  }
  friend Quat operator+(Quat a, const Quat& b) { return a += b; }
  friend Quat operator-(Quat a, const Quat& b) { return a -= b; }
  friend Quat operator-(Quat a) {
    for (auto& x : a.c) x = -x;
    return a;
  }
  friend Quat operator*(const Rational& s, Quat a) {
    for (auto& x : a.c) x *= s;
    return a;
  }
  friend bool operator==(const Quat& a, const Quat& b) { return a.c == b.c; }
  // Lets generic matrix code skip zero entries.
  friend bool operator==(const Quat& a, int s) { return a == Quat(s); }
};

using QuatVector = std::vector<Quat>;
using QuatMatrix = Matrix<Quat>;

inline Quat quat_mul(const Quat& x, const Quat& y, const AlgebraParams& a) {
  const Rational al(a.alpha());
  const Rational be(a.beta());
  const Rational ab = al * be;
  const auto& p = x.c;
  const auto& q = y.c;
  Quat r;
  r.c[0] = p[0] * q[0] + al * p[1] * q[1] + be * p[2] * q[2] - ab * p[3] * q[3];
  r.c[1] = p[0] * q[1] + p[1] * q[0] - be * p[2] * q[3] + be * p[3] * q[2];
  r.c[2] = p[0] * q[2] + p[2] * q[0] + al * p[1] * q[3] - al * p[3] * q[1];
  r.c[3] = p[0] * q[3] + p[3] * q[0] + p[1] * q[2] - p[2] * q[1];
  return r;
}

inline Quat conj(const Quat& x) { return {x.c[0], -x.c[1], -x.c[2], -x.c[3]}; }

inline Rational q_trace(const Quat& x) { return 2 * x.c[0]; }

inline Rational q_norm(const Quat& x, const AlgebraParams& a) {
  const Rational al(a.alpha());
  const Rational be(a.beta());
  return x.c[0] * x.c[0] - al * x.c[1] * x.c[1] - be * x.c[2] * x.c[2] + al * be * x.c[3] * x.c[3];
}

inline Quat q_inverse(const Quat& x, const AlgebraParams& a) {
  if (x.is_zero()) throw Error(ErrorCode::ZeroVector, "inverse of zero quaternion");
  return Rational(1 / q_norm(x, a)) * conj(x);
}

inline std::string to_string(const Quat& x) {
  return "[" + x.c[0].get_str() + "," + x.c[1].get_str() + "," + x.c[2].get_str() + "," + x.c[3].get_str() + "]";
}

// ---------------------------------------------------------------------------
// Coordinate map [.]: D^N -> Q^{4N}

inline RatVector coord_map(const Quat& x) { return {x.c[0], x.c[1], x.c[2], x.c[3]}; }

inline RatVector coord_map(const QuatVector& v) {
  RatVector out;
  out.reserve(4 * v.size());
  for (const auto& x : v)
    for (const auto& c : x.c) out.push_back(c);
  return out;
}

inline QuatVector coord_unmap(const RatVector& v) {
  if (v.size() % 4 != 0) throw Error(ErrorCode::DimensionMismatch, "coordinate vector length not divisible by 4");
  QuatVector out(v.size() / 4);
  for (std::size_t l = 0; l < out.size(); ++l)
    for (std::size_t m = 0; m < 4; ++m) out[l].c[m] = v[4 * l + m];
  return out;
}

inline QuatVector coord_unmap(const IntVector& v) { return coord_unmap(to_rational(v)); }

/// v * t, componentwise right multiplication.
inline QuatVector right_mul(const QuatVector& v, const Quat& t, const AlgebraParams& a) {
  QuatVector out(v.size());
  for (std::size_t l = 0; l < v.size(); ++l) out[l] = quat_mul(v[l], t, a);
  return out;
}

/// t * v, componentwise left multiplication.
inline QuatVector left_mul(const Quat& t, const QuatVector& v, const AlgebraParams& a) {
  QuatVector out(v.size());
  for (std::size_t l = 0; l < v.size(); ++l) out[l] = quat_mul(t, v[l], a);
  return out;
}

/// Rational 4x4 matrix of x -> q x in the basis 1, i, j, k.
inline RatMatrix left_mult_matrix(const Quat& q, const AlgebraParams& a) {
  RatMatrix m(4, 4);
  for (std::size_t h = 0; h < 4; ++h) {
    Quat col = quat_mul(q, Quat::basis(h), a);
    for (std::size_t r = 0; r < 4; ++r) m(r, h) = col.c[r];
  }
  return m;
}

/// Rational 4x4 matrix of x -> x q in the basis 1, i, j, k.
inline RatMatrix right_mult_matrix(const Quat& q, const AlgebraParams& a) {
  RatMatrix m(4, 4);
  for (std::size_t h = 0; h < 4; ++h) {
    Quat col = quat_mul(Quat::basis(h), q, a);
    for (std::size_t r = 0; r < 4; ++r) m(r, h) = col.c[r];
  }
  return m;
}

/// The rational 4r x 4n matrix of x -> C x on D^n (entries act from the left).
inline RatMatrix expand_left_action(const QuatMatrix& c, const AlgebraParams& a) {
  RatMatrix m(4 * c.rows(), 4 * c.cols());
  for (std::size_t r = 0; r < c.rows(); ++r)
    for (std::size_t l = 0; l < c.cols(); ++l) {
      if (c(r, l).is_zero()) continue;
      RatMatrix block = left_mult_matrix(c(r, l), a);
      for (std::size_t p = 0; p < 4; ++p)
        for (std::size_t q = 0; q < 4; ++q) m(4 * r + p, 4 * l + q) = block(p, q);
    }
  return m;
}

// ---------------------------------------------------------------------------
// Quaternion matrices

inline QuatMatrix quat_matmul(const QuatMatrix& x, const QuatMatrix& y, const AlgebraParams& a) {
  if (x.cols() != y.rows()) throw Error(ErrorCode::DimensionMismatch, "quaternion matrix product");
  QuatMatrix out(x.rows(), y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t k = 0; k < x.cols(); ++k) {
      if (x(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < y.cols(); ++j) out(i, j) += quat_mul(x(i, k), y(k, j), a);
    }
  return out;
}

/// Conjugate transpose C*.
inline QuatMatrix adjoint(const QuatMatrix& m) {
  QuatMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = conj(m(i, j));
  return out;
}

inline QuatMatrix column_matrix(const std::vector<QuatVector>& cols, std::size_t n) {
  return QuatMatrix::from_columns(cols, n);
}

// ---------------------------------------------------------------------------
// E = Q(sqrt(alpha)) and the splitting map

/// a + b sqrt(alpha); alpha is supplied by the caller's algebra.
struct QuadExtElem {
  Rational a;
  Rational b;

  QuadExtElem() = default;
  QuadExtElem(int s) : a(s) {}  // NOLINT(google-explicit-constructor)
  QuadExtElem(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {}

  bool is_zero() const { return a == 0 && b == 0; }
  bool is_rational() const { return b == 0; }

  friend QuadExtElem operator+(const QuadExtElem& x, const QuadExtElem& y) { return {x.a + y.a, x.b + y.b}; }
  friend QuadExtElem operator-(const QuadExtElem& x, const QuadExtElem& y) { return {x.a - y.a, x.b - y.b}; }
  friend QuadExtElem operator-(const QuadExtElem& x) { return {-x.a, -x.b}; }
  QuadExtElem& operator+=(const QuadExtElem& o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  friend bool operator==(const QuadExtElem& x, const QuadExtElem& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator==(const QuadExtElem& x, int s) { return x.a == s && x.b == 0; }
};

using ExtMatrix = Matrix<QuadExtElem>;

inline QuadExtElem ext_mul(const QuadExtElem& x, const QuadExtElem& y, const Integer& alpha) {
  return {x.a * y.a + Rational(alpha) * x.b * y.b, x.a * y.b + x.b * y.a};
}

/// Inverse in E; alpha < 0 is not a rational square so E is a field.
inline QuadExtElem ext_inv(const QuadExtElem& x, const Integer& alpha) {
  Rational n = x.a * x.a - Rational(alpha) * x.b * x.b;
  if (n == 0) throw Error(ErrorCode::ZeroVector, "inverse of zero in E");
  return {x.a / n, -x.b / n};
}

inline ExtMatrix ext_matmul(const ExtMatrix& x, const ExtMatrix& y, const Integer& alpha) {
  if (x.cols() != y.rows()) throw Error(ErrorCode::DimensionMismatch, "E-matrix product");
  ExtMatrix out(x.rows(), y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t k = 0; k < x.cols(); ++k)
      for (std::size_t j = 0; j < y.cols(); ++j) out(i, j) += ext_mul(x(i, k), y(k, j), alpha);
  return out;
}

/// Determinant over E by Gaussian elimination.
inline QuadExtElem ext_det(ExtMatrix m, const Integer& alpha) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NonSquareMatrix, "E determinant");
  const std::size_t n = m.rows();
  QuadExtElem d(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k).is_zero()) ++p;
    if (p == n) return QuadExtElem(0);
    if (p != k) {
      m.swap_rows(p, k);
      d = -d;
    }
    d = ext_mul(d, m(k, k), alpha);
    QuadExtElem inv = ext_inv(m(k, k), alpha);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k).is_zero()) continue;
      QuadExtElem f = ext_mul(m(i, k), inv, alpha);
      for (std::size_t j = k; j < n; ++j) m(i, j) = m(i, j) - ext_mul(f, m(k, j), alpha);
    }
  }
  return d;
}

/// rho(x) = [[x0 + x1 s, x2 + x3 s], [beta (x2 - x3 s), x0 - x1 s]], s = sqrt(alpha).
inline ExtMatrix rho(const Quat& x, const AlgebraParams& a) {
  const Rational be(a.beta());
  ExtMatrix m(2, 2);
  m(0, 0) = {x.c[0], x.c[1]};
  m(0, 1) = {x.c[2], x.c[3]};
  m(1, 0) = {be * x.c[2], -be * x.c[3]};
  m(1, 1) = {x.c[0], -x.c[1]};
  return m;
}

/// Blockwise extension of rho to quaternion matrices.
inline ExtMatrix rho(const QuatMatrix& x, const AlgebraParams& a) {
  ExtMatrix m(2 * x.rows(), 2 * x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c) {
      ExtMatrix b = rho(x(r, c), a);
      for (std::size_t p = 0; p < 2; ++p)
        for (std::size_t q = 0; q < 2; ++q) m(2 * r + p, 2 * c + q) = b(p, q);
    }
  return m;
}

/// det rho(M) for a square quaternion matrix; always rational (it is the
/// reduced norm), anything else is reported as NonRationalDeterminant.
inline Rational reduced_norm(const QuatMatrix& m, const AlgebraParams& a) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NonSquareMatrix, "reduced norm");
  QuadExtElem d = ext_det(rho(m, a), a.alpha());
  if (!d.is_rational()) throw Error(ErrorCode::NonRationalDeterminant, "det rho has irrational part");
  return d.a;
}

// ---------------------------------------------------------------------------
// Hermitian forms

/// F(x, y) = sum_{m,l} conj(x_m) f_ml y_l with f_ml = conj(f_lm).
class HermitianForm {
 public:
  explicit HermitianForm(QuatMatrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols()) throw Error(ErrorCode::NonSquareMatrix, "hermitian form matrix");
    for (std::size_t m = 0; m < n(); ++m)
      for (std::size_t l = 0; l < n(); ++l)
        if (matrix_(m, l) != conj(matrix_(l, m)))
          throw Error(ErrorCode::NotHermitian, "f_ml != conj(f_lm) at (" + std::to_string(m) + "," + std::to_string(l) + ")");
  }

  std::size_t n() const noexcept { return matrix_.rows(); }
  const QuatMatrix& matrix() const noexcept { return matrix_; }
  const Quat& operator()(std::size_t m, std::size_t l) const { return matrix_(m, l); }

  friend bool operator==(const HermitianForm&, const HermitianForm&) = default;

 private:
  QuatMatrix matrix_;
};

inline bool is_hermitian(const QuatMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) != conj(m(c, r))) return false;
  return true;
}

inline Quat eval_hermitian(const HermitianForm& f, const QuatVector& x, const QuatVector& y, const AlgebraParams& a) {
  if (x.size() != f.n() || y.size() != f.n()) throw Error(ErrorCode::DimensionMismatch, "hermitian form evaluation");
  Quat sum;
  for (std::size_t m = 0; m < f.n(); ++m) {
    if (x[m].is_zero()) continue;
    const Quat xm = conj(x[m]);
    for (std::size_t l = 0; l < f.n(); ++l) {
      if (f(m, l).is_zero() || y[l].is_zero()) continue;
      sum += quat_mul(quat_mul(xm, f(m, l), a), y[l], a);
    }
  }
  return sum;
}

/// F(x) = F(x, x), which lies in Q.
inline Rational eval_hermitian(const HermitianForm& f, const QuatVector& x, const AlgebraParams& a) {
  Quat v = eval_hermitian(f, x, x, a);
  if (!v.is_scalar()) throw Error(ErrorCode::NotHermitian, "F(x,x) has a pure quaternion part");
  return v.c[0];
}

// ---------------------------------------------------------------------------
// Right D-rank

/// The rational 4N x 4m matrix with columns [v * eta_h] for each vector v and
/// each basis element eta_h, in the order v1*1, v1*i, v1*j, v1*k, v2*1, ...
inline RatMatrix right_span_coordinates(const std::vector<QuatVector>& vs, const AlgebraParams& a) {
  if (vs.empty()) return RatMatrix();
  const std::size_t n = vs.front().size();
  std::vector<RatVector> cols;
  cols.reserve(4 * vs.size());
  for (const auto& v : vs) {
    if (v.size() != n) throw Error(ErrorCode::DimensionMismatch, "vectors of different lengths");
    for (std::size_t h = 0; h < 4; ++h) cols.push_back(coord_map(right_mul(v, Quat::basis(h), a)));
  }
  return RatMatrix::from_columns(cols, 4 * n);
}

/// Dimension of the right D-span of `vs`.
inline std::size_t d_rank(const std::vector<QuatVector>& vs, const AlgebraParams& a) {
  if (vs.empty()) return 0;
  const std::size_t r = rank(right_span_coordinates(vs, a));
  if (r % 4 != 0) throw Error(ErrorCode::RankMismatch, "rational rank of a right D-span is not divisible by 4");
  return r / 4;
}

}  // namespace qzero
