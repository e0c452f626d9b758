#pragma once

// Exact integer/rational linear algebra: dense matrices, fraction-free
// determinants, column Hermite normal form, kernels, saturation and lattice
// indices. Everything here is exact; there is no floating point.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "qzero/error.hpp"

namespace qzero {

using Integer = mpz_class;
using Rational = mpq_class;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Dense row-major matrix. Used with Integer, Rational, and the quaternion and
/// quadratic-extension element types.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix initializer");
      for (const auto& v : row) data_.push_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  /// Matrix whose columns are the given vectors (all of length `rows`).
  static Matrix from_columns(const std::vector<std::vector<T>>& columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw Error(ErrorCode::DimensionMismatch, "column length");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& entries() const noexcept { return data_; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  std::vector<std::vector<T>> columns() const {
    std::vector<std::vector<T>> out;
    out.reserve(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
    return out;
  }

  void swap_columns(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Columns [first, first + count).
  Matrix column_block(std::size_t first, std::size_t count) const {
    Matrix m(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < count; ++j) m(i, j) = (*this)(i, first + j);
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& v) {
  if (a.cols() != v.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector product");
  std::vector<T> out(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

// ---------------------------------------------------------------------------
// Scalars

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline Integer pow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rational pow(const Rational& base, unsigned long e) {
  return Rational(pow(Integer(base.get_num()), e), pow(Integer(base.get_den()), e));
}

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }
inline Integer abs(const Integer& z) { return z < 0 ? Integer(-z) : z; }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Exact square root of a nonnegative integer; nullopt when `n` is not a
/// perfect square.
inline std::optional<Integer> integer_sqrt_exact(const Integer& n) {
  if (n < 0 || mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

/// Exact square root of a nonnegative rational, when it is a rational square.
inline std::optional<Rational> rational_sqrt_exact(const Rational& q) {
  auto n = integer_sqrt_exact(q.get_num());
  auto d = integer_sqrt_exact(q.get_den());
  if (!n || !d) return std::nullopt;
  return Rational(*n, *d);
}

/// Floor of the square root of a nonnegative integer.
inline Integer isqrt_floor(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// ---------------------------------------------------------------------------
// Conversions and content

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

inline Integer common_denominator(const std::vector<Rational>& v) {
  Integer d = 1;
  for (const auto& q : v) d = lcm(d, Integer(q.get_den()));
  return d;
}

/// Returns (d, d*m) with d the least common denominator of all entries.
inline std::pair<Integer, IntMatrix> clear_denominators(const RatMatrix& m) {
  Integer d = common_denominator(m.entries());
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational scaled = m(i, j) * d;
      out(i, j) = scaled.get_num();
    }
  return {d, out};
}

inline Integer content(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

/// The primitive integer vector on the same rational line (up to sign,
/// which is preserved). Zero maps to zero.
inline IntVector primitive_vector(const RatVector& v) {
  Integer d = common_denominator(v);
  IntVector z(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational s = v[i] * d;
    z[i] = s.get_num();
  }
  Integer g = content(z);
  if (g != 0)
    for (auto& x : z) x /= g;
  return z;
}

inline IntVector primitive_vector(const IntVector& v) {
  Integer g = content(v);
  IntVector z = v;
  if (g != 0)
    for (auto& x : z) x /= g;
  return z;
}

inline RatVector to_rational(const IntVector& v) {
  RatVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rational(v[i]);
  return r;
}

// ---------------------------------------------------------------------------
// Determinants

/// Fraction-free Bareiss elimination.
inline Integer det(IntMatrix m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NonSquareMatrix, "det");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return 0;
      m.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// Rows are scaled to integers, Bareiss is applied, and the scaling undone.
inline Rational det(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NonSquareMatrix, "det");
  IntMatrix im(m.rows(), m.cols());
  Integer scale = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer d = common_denominator(m.row(i));
    scale *= d;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational s = m(i, j) * d;
      im(i, j) = s.get_num();
    }
  }
  Rational r(det(im), scale);
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------------------
// Row reduction over Q

struct RrefResult {
  RatMatrix reduced;
  std::vector<std::size_t> pivot_columns;
};

inline RrefResult rref(RatMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const RatMatrix& m) { return rref(m).pivot_columns.size(); }
inline std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

/// Basis (as columns) of the right kernel {x : M x = 0}; zero columns when
/// the kernel is trivial.
inline RatMatrix kernel_basis(const RatMatrix& m) {
  const auto [red, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector v(m.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -red(r, f);
    basis.push_back(std::move(v));
  }
  return RatMatrix::from_columns(basis, m.cols());
}

/// Solves A X = B for A of full column rank. nullopt when some column of B
/// is outside the column span of A.
inline std::optional<RatMatrix> solve(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "solve");
  RatMatrix aug(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) aug(i, a.cols() + j) = b(i, j);
  }
  const auto [red, pivots] = rref(aug);
  std::size_t in_a = 0;
  for (auto c : pivots) {
    if (c >= a.cols()) return std::nullopt;
    ++in_a;
  }
  if (in_a != a.cols()) throw Error(ErrorCode::RankDeficient, "solve: coefficient matrix lacks full column rank");
  RatMatrix x(a.cols(), b.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t j = 0; j < b.cols(); ++j) x(pivots[r], j) = red(r, a.cols() + j);
  return x;
}

inline RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NonSquareMatrix, "inverse");
  auto x = solve(m, RatMatrix::identity(m.rows()));
  if (!x) throw Error(ErrorCode::RankDeficient, "inverse");
  return *x;
}

/// Indices of a maximal linearly independent subset of the columns, chosen
/// greedily in column order.
inline std::vector<std::size_t> independent_columns(const RatMatrix& m) {
  return rref(m).pivot_columns;
}

// ---------------------------------------------------------------------------
// Hermite normal form

struct HnfResult {
  IntMatrix h;  // h = m * u
  IntMatrix u;  // unimodular
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;  // pivot row of column c, c < rank
};

/// Column Hermite normal form by unimodular column operations. The first
/// `rank` columns of H are in echelon form with positive pivots and every
/// entry left of a pivot reduced into [0, pivot); the remaining columns are
/// zero.
inline HnfResult hnf(const IntMatrix& m) {
  IntMatrix h = m;
  const std::size_t n = m.cols();
  IntMatrix u = IntMatrix::identity(n);
  std::vector<std::size_t> pivot_rows;
  std::size_t r = 0;

  auto combine = [&](IntMatrix& mat, std::size_t cr, std::size_t cj, const Integer& s, const Integer& t,
                     const Integer& x, const Integer& y) {
    // col_r <- s col_r + t col_j ; col_j <- x col_r + y col_j
    for (std::size_t i = 0; i < mat.rows(); ++i) {
      Integer a = mat(i, cr);
      Integer b = mat(i, cj);
      mat(i, cr) = s * a + t * b;
      mat(i, cj) = x * a + y * b;
    }
  };

  for (std::size_t i = 0; i < m.rows() && r < n; ++i) {
    for (std::size_t j = r + 1; j < n; ++j) {
      if (h(i, j) == 0) continue;
      if (h(i, r) == 0) {
        h.swap_columns(r, j);
        u.swap_columns(r, j);
        continue;
      }
      Integer a = h(i, r);
      Integer b = h(i, j);
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Integer x = -(b / g);
      Integer y = a / g;
      combine(h, r, j, s, t, x, y);
      combine(u, r, j, s, t, x, y);
    }
    if (h(i, r) == 0) continue;
    if (h(i, r) < 0) {
      for (std::size_t k = 0; k < h.rows(); ++k) h(k, r) = -h(k, r);
      for (std::size_t k = 0; k < n; ++k) u(k, r) = -u(k, r);
    }
    const Integer p = h(i, r);
    for (std::size_t j = 0; j < r; ++j) {
      Integer q = floor_div(h(i, j), p);
      if (q == 0) continue;
      for (std::size_t k = 0; k < h.rows(); ++k) h(k, j) -= q * h(k, r);
      for (std::size_t k = 0; k < n; ++k) u(k, j) -= q * u(k, r);
    }
    pivot_rows.push_back(i);
    ++r;
  }
  return {std::move(h), std::move(u), r, std::move(pivot_rows)};
}

/// Basis (as columns) of the integer kernel {x in Z^n : M x = 0}.
inline IntMatrix integer_kernel(const IntMatrix& m) {
  auto res = hnf(m);
  return res.u.column_block(res.rank, m.cols() - res.rank);
}

// ---------------------------------------------------------------------------
// Lattices

/// A full-column-rank integer matrix whose columns generate a lattice in
/// Z^ambient_dim.
class IntLattice {
 public:
  explicit IntLattice(IntMatrix basis) : basis_(std::move(basis)) {
    if (qzero::rank(basis_) != basis_.cols()) throw Error(ErrorCode::RankDeficient, "lattice basis columns are dependent");
  }

  std::size_t ambient_dim() const noexcept { return basis_.rows(); }
  std::size_t rank() const noexcept { return basis_.cols(); }
  const IntMatrix& basis() const noexcept { return basis_; }

  friend bool operator==(const IntLattice& a, const IntLattice& b) {
    return a.ambient_dim() == b.ambient_dim() && a.rank() == b.rank() &&
           hnf(a.basis_).h == hnf(b.basis_).h;
  }

 private:
  IntMatrix basis_;
};

/// [A : B] for B contained in A with the same rational span.
inline Integer lattice_index(const IntLattice& a, const IntLattice& b) {
  if (a.ambient_dim() != b.ambient_dim() || a.rank() != b.rank())
    throw Error(ErrorCode::RankMismatch, "lattices have different ranks");
  auto coeffs = solve(to_rational(a.basis()), to_rational(b.basis()));
  if (!coeffs) throw Error(ErrorCode::RankMismatch, "lattices span different subspaces");
  for (const auto& q : coeffs->entries())
    if (!is_integer(q)) throw Error(ErrorCode::NotSublattice, "generator is not an integer combination");
  return abs(det(*coeffs)).get_num();
}

/// Covolume |det| of the lattice generated by the columns of `gens`, measured
/// in the coordinate system of the ambient space. The generators must span
/// the whole ambient space.
inline Rational lattice_covolume(const RatMatrix& gens) {
  const auto [d, im] = clear_denominators(gens);
  auto res = hnf(im);
  if (res.rank != gens.rows()) throw Error(ErrorCode::RankDeficient, "generators do not span");
  Integer v = 1;
  for (std::size_t c = 0; c < res.rank; ++c) v *= res.h(res.pivot_rows[c], c);
  Rational out(v, pow(d, gens.rows()));
  out.canonicalize();
  return out;
}

/// Basis in Hermite normal form of span_Q(columns of M) intersected with
/// Z^ambient.
inline IntLattice saturate(const IntMatrix& m) {
  const std::size_t k = m.cols();
  const std::size_t n = m.rows();
  if (rank(m) != k) throw Error(ErrorCode::RankDeficient, "saturate: columns are dependent");
  if (k == 0) return IntLattice(IntMatrix(n, 0));
  IntMatrix kernel;
  if (k == n) {
    kernel = IntMatrix::identity(n);
  } else {
    // Equations cutting out the span, then their integer solutions.
    RatMatrix left = kernel_basis(to_rational(m).transpose());
    IntMatrix eqs(left.cols(), n);
    for (std::size_t r = 0; r < left.cols(); ++r) {
      IntVector row = primitive_vector(left.column(r));
      for (std::size_t j = 0; j < n; ++j) eqs(r, j) = row[j];
    }
    kernel = integer_kernel(eqs);
  }
  auto canon = hnf(kernel);
  return IntLattice(canon.h.column_block(0, canon.rank));
}

}  // namespace qzero
