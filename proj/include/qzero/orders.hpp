#pragma once

// Orders in D: validation, membership, discriminants and the comparison
// constants built from them.

#include <array>
#include <optional>
#include <vector>

#include "qzero/error.hpp"
#include "qzero/exact_height.hpp"
#include "qzero/exact_linalg.hpp"
#include "qzero/quaternion.hpp"

namespace qzero {

/// A Z-lattice of rank 4 in D containing 1 and closed under multiplication.
class Order {
 public:
  /// Validates the basis; throws Degenerate, MissingUnit or NotClosed.
  static Order make(const AlgebraParams& algebra, const std::array<Quat, 4>& basis) {
    return Order(algebra, basis);
  }

  /// O_D = Z + Zi + Zj + Zk.
  static Order standard(const AlgebraParams& algebra) {
    return Order(algebra, {Quat(1), Quat::i(), Quat::j(), Quat::k()});
  }

  /// The order spanned by (1+i+j+k)/2, i, j, k; requires alpha = beta = -1.
  static Order hurwitz(const AlgebraParams& algebra) {
    const Rational h(1, 2);
    return Order(algebra, {Quat(h, h, h, h), Quat::i(), Quat::j(), Quat::k()});
  }

  const AlgebraParams& algebra() const noexcept { return algebra_; }
  const std::array<Quat, 4>& basis() const noexcept { return basis_; }
  /// Columns are the coordinates of the basis elements.
  const RatMatrix& coordinate_matrix() const noexcept { return coords_; }
  /// Hermite normal form of the coordinate matrix; equal for equal orders.
  const RatMatrix& normal_form() const noexcept { return hnf_cache_; }

  /// Coefficients of x in the order basis.
  RatVector coefficients(const Quat& x) const { return inverse_ * coord_map(x); }

  bool contains(const Quat& x) const {
    for (const auto& c : coefficients(x))
      if (!is_integer(c)) return false;
    return true;
  }

  bool contains(const QuatVector& v) const {
    for (const auto& x : v)
      if (!contains(x)) return false;
    return true;
  }

  friend bool operator==(const Order& a, const Order& b) {
    return a.algebra_ == b.algebra_ && a.hnf_cache_ == b.hnf_cache_;
  }

 private:
  Order(const AlgebraParams& algebra, const std::array<Quat, 4>& basis) : algebra_(algebra), basis_(basis) {
    std::vector<RatVector> cols;
    for (const auto& w : basis_) cols.push_back(coord_map(w));
    coords_ = RatMatrix::from_columns(cols, 4);
    if (rank(coords_) != 4) throw Error(ErrorCode::Degenerate, "order basis has rank < 4");
    inverse_ = inverse(coords_);
    if (!contains(Quat(1))) throw Error(ErrorCode::MissingUnit, "1 is not in the span of the basis");
    for (std::size_t h = 0; h < 4; ++h)
      for (std::size_t n = 0; n < 4; ++n)
        if (!contains(quat_mul(basis_[h], basis_[n], algebra_)))
          throw Error(ErrorCode::NotClosed, "product of basis elements " + std::to_string(h) + "," +
                                                std::to_string(n) + " leaves the lattice");
    const auto [d, im] = clear_denominators(coords_);
    auto res = hnf(im);
    hnf_cache_ = to_rational(res.h);
    for (auto i = 0u; i < 4; ++i)
      for (auto j = 0u; j < 4; ++j) hnf_cache_(i, j) /= d;
  }

  AlgebraParams algebra_;
  std::array<Quat, 4> basis_;
  RatMatrix coords_;
  RatMatrix inverse_;
  RatMatrix hnf_cache_;
};

/// det(Tr(w_h w_n)) for the order basis. Sign is kept; consumers use |.|.
inline Integer discriminant(const Order& o) {
  RatMatrix gram(4, 4);
  for (std::size_t h = 0; h < 4; ++h)
    for (std::size_t n = 0; n < 4; ++n) gram(h, n) = q_trace(quat_mul(o.basis()[h], o.basis()[n], o.algebra()));
  Rational d = det(gram);
  if (!is_integer(d)) throw Error(ErrorCode::NotClosed, "discriminant is not an integer");
  return d.get_num();
}

/// max{ sqrt|disc| / |4 alpha beta|, |4 alpha beta| / sqrt|disc| }.
inline ExactHeight frakM(const Order& o) {
  const Integer four_ab = abs(Integer(4 * o.algebra().alpha() * o.algebra().beta()));
  const Rational ratio(abs(discriminant(o)), four_ab * four_ab);
  Rational r = ratio;
  r.canonicalize();
  Rational big = r >= 1 ? r : Rational(1 / r);
  return ExactHeight(big, 2);
}

/// Minimal positive integer g with g i, g j, g k in the order.
inline Integer frakN(const Order& o) {
  Integer g = 1;
  for (const Quat& q : {Quat::i(), Quat::j(), Quat::k()})
    for (const auto& c : o.coefficients(q)) g = lcm(g, Integer(c.get_den()));
  return g;
}

/// Norms of the two order ideals relating O1 and O2 and their maximum.
struct OrderComparison {
  ExactHeight u1_norm;  // sqrt(|disc O2| / |disc O1|)
  ExactHeight u2_norm;  // sqrt(|disc O1| / |disc O2|)
  ExactHeight m_value;
};

inline OrderComparison compare_orders(const Order& o1, const Order& o2) {
  if (!(o1.algebra() == o2.algebra())) throw Error(ErrorCode::AlgebraMismatch, "orders in different algebras");
  Rational r(abs(discriminant(o2)), abs(discriminant(o1)));
  r.canonicalize();
  ExactHeight u1(r, 2);
  ExactHeight u2(Rational(1 / r), 2);
  return {u1, u2, u1 > u2 ? u1 : u2};
}

inline bool contains(const Order& o, const Quat& x) { return o.contains(x); }

/// Minimal positive rational b with every coordinate of every b v in O.
inline Rational rescale_to_order(const std::vector<QuatVector>& vs, const Order& o) {
  // {b : b c in Z} = (den/|num|) Z for c = num/den; intersect these ideals.
  Integer num_lcm = 1;
  Integer den_gcd = 0;
  for (const auto& v : vs)
    for (const auto& x : v)
      for (const auto& c : o.coefficients(x)) {
        if (c == 0) continue;
        num_lcm = lcm(num_lcm, Integer(c.get_den()));
        den_gcd = gcd(den_gcd, abs(Integer(c.get_num())));
      }
  if (den_gcd == 0) return 1;
  Rational b(num_lcm, den_gcd);
  b.canonicalize();
  return b;
}

/// Smallest positive integer a with a v in O^N for every v.
inline Integer clearing_integer(const std::vector<QuatVector>& vs, const Order& o) {
  Integer a = 1;
  for (const auto& v : vs)
    for (const auto& x : v)
      for (const auto& c : o.coefficients(x)) a = lcm(a, Integer(c.get_den()));
  return a;
}

/// Generalized index [O^m : Lambda] where Lambda is the Z-span of `gens`
/// (vectors in D^m). Lambda must have full rank 4m; it need not lie in O^m.
inline Rational order_lattice_index(const Order& o, const std::vector<QuatVector>& gens, std::size_t m) {
  if (m == 0) return 1;
  RatMatrix coeffs(4 * m, gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (gens[g].size() != m) throw Error(ErrorCode::DimensionMismatch, "lattice generator length");
    for (std::size_t l = 0; l < m; ++l) {
      RatVector c = o.coefficients(gens[g][l]);
      for (std::size_t h = 0; h < 4; ++h) coeffs(4 * l + h, g) = c[h];
    }
  }
  return lattice_covolume(coeffs);
}

}  // namespace qzero
