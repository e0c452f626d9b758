#pragma once

// Height functions over Q (vectors, matrices, subspaces) and over D relative
// to an order (vectors, constraint matrices, right D-subspaces).

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "qzero/error.hpp"
#include "qzero/exact_height.hpp"
#include "qzero/exact_linalg.hpp"
#include "qzero/orders.hpp"
#include "qzero/quaternion.hpp"

namespace qzero {

// ---------------------------------------------------------------------------
// Local absolute values on Q

/// |a|_p = p^(-ord_p(a)).
inline Rational padic_abs(const Rational& a, const Integer& p) {
  if (a == 0) return 0;
  Integer num = abs(Integer(a.get_num()));
  Integer den(a.get_den());
  long ord = 0;
  while (mpz_divisible_p(num.get_mpz_t(), p.get_mpz_t()) != 0) {
    num /= p;
    ++ord;
  }
  while (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t()) != 0) {
    den /= p;
    --ord;
  }
  Rational pp(p);
  return ord >= 0 ? Rational(1 / pow(pp, static_cast<unsigned long>(ord))) : pow(pp, static_cast<unsigned long>(-ord));
}

/// Prime divisors of |n| by trial division (desk-scale inputs).
inline std::vector<Integer> prime_divisors(Integer n) {
  n = abs(n);
  std::vector<Integer> out;
  for (Integer p = 2; p * p <= n; ++p) {
    if (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t()) == 0) continue;
    out.push_back(p);
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t()) != 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// ---------------------------------------------------------------------------
// Heights on Q^N

inline bool is_zero_vector(const RatVector& x) {
  return std::all_of(x.begin(), x.end(), [](const Rational& q) { return q == 0; });
}

/// H(x): sup norm of the primitive integer representative.
inline ExactHeight height_H(const RatVector& x) {
  if (is_zero_vector(x)) throw Error(ErrorCode::ZeroVector, "height of the zero vector");
  Integer m = 0;
  for (const auto& y : primitive_vector(x)) m = std::max(m, abs(y));
  return ExactHeight(Rational(m));
}

/// h(x) = H(1, x).
inline ExactHeight height_h(const RatVector& x) {
  RatVector ext;
  ext.reserve(x.size() + 1);
  ext.emplace_back(1);
  ext.insert(ext.end(), x.begin(), x.end());
  return height_H(ext);
}

inline ExactHeight height_h(const IntVector& x) { return height_h(to_rational(x)); }

/// L2 height: euclidean norm of the primitive integer representative.
inline ExactHeight height_L2(const RatVector& x) {
  if (is_zero_vector(x)) throw Error(ErrorCode::ZeroVector, "height of the zero vector");
  Integer s = 0;
  for (const auto& y : primitive_vector(x)) s += y * y;
  return ExactHeight(Rational(s), 2);
}

/// Archimedean part max |x_i|.
inline ExactHeight height_inf_K(const RatVector& x) {
  Rational m = 0;
  for (const auto& q : x) m = std::max(m, abs(q));
  return ExactHeight(m);
}

/// Non-archimedean part prod_p max_i |x_i|_p = (common denominator)/(content).
inline ExactHeight height_fin_K(const RatVector& x) {
  if (is_zero_vector(x)) throw Error(ErrorCode::ZeroVector, "height of the zero vector");
  const Integer d = common_denominator(x);
  Integer g = 0;
  for (const auto& q : x) {
    Rational s = q * d;
    g = gcd(g, Integer(s.get_num()));
  }
  Rational r(d, g);
  r.canonicalize();
  return ExactHeight(r);
}

inline RatVector flatten(const RatMatrix& m) { return m.entries(); }

// ---------------------------------------------------------------------------
// Grassmann coordinates and subspace heights over Q

/// Visits all k-subsets of {0..n-1} in lexicographic order.
template <class Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Maximal minors det(X_I) over row subsets I in lexicographic order.
inline RatVector grassmann(const RatMatrix& x) {
  const std::size_t n = x.rows();
  const std::size_t l = x.cols();
  RatVector out;
  for_each_subset(n, l, [&](const std::vector<std::size_t>& rows) {
    RatMatrix sub(l, l);
    for (std::size_t a = 0; a < l; ++a)
      for (std::size_t b = 0; b < l; ++b) sub(a, b) = x(rows[a], b);
    out.push_back(det(sub));
  });
  if (is_zero_vector(out)) throw Error(ErrorCode::RankDeficient, "basis matrix does not have full column rank");
  return out;
}

/// H(V) for V the column span of `basis`.
inline ExactHeight height_subspace_K(const RatMatrix& basis) {
  if (basis.cols() == 0) return ExactHeight(1);
  return height_L2(grassmann(basis));
}

// ---------------------------------------------------------------------------
// Heights on D^N

/// |x|_v = sqrt(N(x)).
inline ExactHeight abs_v(const Quat& x, const AlgebraParams& a) { return ExactHeight(q_norm(x, a), 2); }

inline ExactHeight Hinf_D(const QuatVector& x, const AlgebraParams& a) {
  Rational m = 0;
  for (const auto& q : x) m = std::max(m, q_norm(q, a));
  return ExactHeight(m, 2);
}

/// h(x) = Hinf(1, x); for x in O^N this is the full inhomogeneous height.
inline ExactHeight h_D(const QuatVector& x, const AlgebraParams& a) {
  Rational m = 1;
  for (const auto& q : x) m = std::max(m, q_norm(q, a));
  return ExactHeight(m, 2);
}

/// [O : O x_1 + ... + O x_N]^(-1/4) for x in O^N.
inline ExactHeight Hfin_O(const Order& o, const QuatVector& x) {
  bool nonzero = false;
  for (const auto& q : x) {
    if (!o.contains(q)) throw Error(ErrorCode::CoordinateNotInOrder, "coordinate " + to_string(q) + " not in order");
    nonzero = nonzero || !q.is_zero();
  }
  if (!nonzero) throw Error(ErrorCode::ZeroVector, "finite height of the zero vector");
  std::vector<QuatVector> gens;
  for (const auto& q : x) {
    if (q.is_zero()) continue;
    for (const auto& w : o.basis()) gens.push_back({quat_mul(w, q, o.algebra())});
  }
  Rational index = order_lattice_index(o, gens, 1);
  return ExactHeight(Rational(1 / index), 4);
}

/// H^O(x) = Hinf(a x) Hfin^O(a x) for an integer a clearing x into O^N.
inline ExactHeight H_O_vector(const Order& o, const QuatVector& x) {
  const Integer a = clearing_integer({x}, o);
  QuatVector ax(x.size());
  for (std::size_t l = 0; l < x.size(); ++l) ax[l] = Rational(a) * x[l];
  return Hinf_D(ax, o.algebra()) * Hfin_O(o, ax);
}

// ---------------------------------------------------------------------------
// Constraint matrices and right D-subspaces

struct HinfEvaluations {
  ExactHeight via_product;  // |det rho(C C*)|^(1/4)
  ExactHeight via_minors;   // (sum over maximal minors C0 of |det rho(C0)|)^(1/2)
};

/// Both evaluations of Hinf(C) for a constraint matrix of full left row rank.
inline HinfEvaluations Hinf_matrix_both(const QuatMatrix& c, const AlgebraParams& a) {
  const std::size_t r = c.rows();
  if (r == 0) return {ExactHeight(1), ExactHeight(1)};
  const Rational prod = abs(reduced_norm(quat_matmul(c, adjoint(c), a), a));
  if (prod == 0) throw Error(ErrorCode::RankDeficient, "constraint matrix lacks full left row rank");
  Rational minors = 0;
  for_each_subset(c.cols(), r, [&](const std::vector<std::size_t>& cols) {
    QuatMatrix sub(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) sub(i, j) = c(i, cols[j]);
    minors += abs(reduced_norm(sub, a));
  });
  return {ExactHeight(prod, 4), ExactHeight(minors, 2)};
}

inline ExactHeight Hinf_matrix_C(const QuatMatrix& c, const AlgebraParams& a) {
  auto both = Hinf_matrix_both(c, a);
  if (!(both.via_product == both.via_minors))
    throw Error(ErrorCode::NonRationalDeterminant,
                "Cauchy-Binet evaluations disagree: " + both.via_product.to_string() + " vs " + both.via_minors.to_string());
  return both.via_product;
}

/// [O^r : C(O^N)] for C viewed as the map x -> C x. The image need not lie in
/// O^r; the generalized index is returned.
inline Rational constraint_image_index(const Order& o, const QuatMatrix& c) {
  const std::size_t r = c.rows();
  if (r == 0) return 1;
  std::vector<QuatVector> gens;
  gens.reserve(4 * c.cols());
  for (std::size_t l = 0; l < c.cols(); ++l)
    for (const auto& w : o.basis()) {
      QuatVector g(r);
      for (std::size_t i = 0; i < r; ++i) g[i] = quat_mul(c(i, l), w, o.algebra());
      gens.push_back(std::move(g));
    }
  return order_lattice_index(o, gens, r);
}

inline ExactHeight Hfin_matrix_C(const Order& o, const QuatMatrix& c) {
  return ExactHeight(Rational(1 / constraint_image_index(o, c)), 4);
}

/// H^O(C) = Hinf(C) Hfin^O(C).
inline ExactHeight height_from_constraint(const Order& o, const QuatMatrix& c) {
  return Hinf_matrix_C(c, o.algebra()) * Hfin_matrix_C(o, c);
}

/// H^O(X) = ([O^L : X*(O^N)]^(-1) |det rho(X* X)|)^(1/4) for an N x L basis
/// matrix; this is the constraint height of X*, which cuts out Z^perp.
inline ExactHeight height_from_basis(const Order& o, const QuatMatrix& x) {
  return height_from_constraint(o, adjoint(x));
}

/// Greedy choice of columns whose right D-span grows; stops at `target`
/// dimension when given.
inline std::vector<QuatVector> select_right_basis(const std::vector<QuatVector>& candidates, const AlgebraParams& a,
                                                  std::optional<std::size_t> target = std::nullopt) {
  std::vector<QuatVector> chosen;
  for (const auto& v : candidates) {
    if (target && chosen.size() == *target) break;
    chosen.push_back(v);
    if (d_rank(chosen, a) != chosen.size()) chosen.pop_back();
  }
  return chosen;
}

/// A right D-subspace Z of D^N. A basis is always held; a constraint matrix C
/// with Z = {x : C x = 0} is held when supplied or derived.
class SubspaceD {
 public:
  static SubspaceD from_basis(const QuatMatrix& x, const AlgebraParams& a) {
    std::vector<QuatVector> cols = x.columns();
    if (d_rank(cols, a) != x.cols()) throw Error(ErrorCode::RankDeficient, "basis columns are D-dependent");
    return SubspaceD(x, std::nullopt);
  }

  static SubspaceD from_columns(const std::vector<QuatVector>& cols, std::size_t n, const AlgebraParams& a) {
    return from_basis(QuatMatrix::from_columns(cols, n), a);
  }

  static SubspaceD from_constraint(const QuatMatrix& c, const AlgebraParams& a) {
    const std::size_t n = c.cols();
    RatMatrix k = kernel_basis(expand_left_action(c, a));
    std::vector<QuatVector> cands;
    for (const auto& col : k.columns()) cands.push_back(coord_unmap(col));
    std::vector<QuatVector> basis = select_right_basis(cands, a);
    if (basis.size() + c.rows() != n) throw Error(ErrorCode::RankDeficient, "constraint matrix lacks full left row rank");
    return SubspaceD(QuatMatrix::from_columns(basis, n), c);
  }

  static SubspaceD full(std::size_t n) { return SubspaceD(QuatMatrix::identity(n), std::nullopt); }

  std::size_t ambient_n() const noexcept { return basis_.rows(); }
  std::size_t dim() const noexcept { return basis_.cols(); }
  const QuatMatrix& basis() const noexcept { return basis_; }
  std::vector<QuatVector> basis_vectors() const { return basis_.columns(); }
  const std::optional<QuatMatrix>& constraint() const noexcept { return constraint_; }

  SubspaceD with_constraint(const QuatMatrix& c) const { return SubspaceD(basis_, c); }

 private:
  SubspaceD(QuatMatrix basis, std::optional<QuatMatrix> constraint)
      : basis_(std::move(basis)), constraint_(std::move(constraint)) {}

  QuatMatrix basis_;
  std::optional<QuatMatrix> constraint_;
};

/// Z^perp = {y : x* y = 0 for all x in Z}; carries X* as its constraint.
inline SubspaceD orthogonal_complement(const SubspaceD& z, const AlgebraParams& a) {
  return SubspaceD::from_constraint(adjoint(z.basis()), a);
}

/// A constraint matrix for Z: the adjoint of a basis of Z^perp.
inline QuatMatrix constraint_for(const SubspaceD& z, const AlgebraParams& a) {
  if (z.constraint()) return *z.constraint();
  return adjoint(orthogonal_complement(z, a).basis());
}

/// H^O(Z): the constraint form when a constraint matrix is held and L < N,
/// otherwise the basis form.
inline ExactHeight height_subspace_D(const Order& o, const SubspaceD& z) {
  if (z.constraint() && z.dim() < z.ambient_n()) return height_from_constraint(o, *z.constraint());
  return height_from_basis(o, z.basis());
}

}  // namespace qzero
