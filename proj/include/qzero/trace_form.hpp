#pragma once

// The rational quadratic form Q = Tr F on K^{4N} attached to a hermitian form
// F on D^N, and the heights of both.

#include <cstddef>
#include <vector>

#include "qzero/error.hpp"
#include "qzero/exact_height.hpp"
#include "qzero/exact_linalg.hpp"
#include "qzero/heights.hpp"
#include "qzero/orders.hpp"
#include "qzero/quaternion.hpp"

namespace qzero {

/// Symmetric 4N x 4N rational matrix B with Q(z) = z^t B z.
class TraceFormQ {
 public:
  explicit TraceFormQ(RatMatrix b) : b_(std::move(b)) {
    if (b_.rows() != b_.cols()) throw Error(ErrorCode::NonSquareMatrix, "trace matrix");
    for (std::size_t i = 0; i < b_.rows(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (b_(i, j) != b_(j, i)) throw Error(ErrorCode::NotHermitian, "trace matrix is not symmetric");
  }

  std::size_t dim() const noexcept { return b_.rows(); }
  const RatMatrix& matrix() const noexcept { return b_; }

 private:
  RatMatrix b_;
};

/// The 4x4 block of B belonging to one entry f of the hermitian matrix.
inline RatMatrix trace_block(const Quat& f, const AlgebraParams& a) {
  const Rational al(a.alpha());
  const Rational be(a.beta());
  const Rational ab = al * be;
  const Rational& f0 = f.c[0];
  const Rational& f1 = f.c[1];
  const Rational& f2 = f.c[2];
  const Rational& f3 = f.c[3];
  return RatMatrix{
      {2 * f0, 2 * al * f1, 2 * be * f2, -2 * ab * f3},
      {-2 * al * f1, -2 * al * f0, -2 * ab * f3, 2 * ab * f2},
      {-2 * be * f2, 2 * ab * f3, -2 * be * f0, -2 * ab * f1},
      {2 * ab * f3, -2 * ab * f2, 2 * ab * f1, 2 * ab * f0},
  };
}

inline TraceFormQ build_trace_matrix(const HermitianForm& f, const AlgebraParams& a) {
  const std::size_t n = f.n();
  RatMatrix b(4 * n, 4 * n);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t l = 0; l < n; ++l) {
      if (f(m, l).is_zero()) continue;
      const RatMatrix blk = trace_block(f(m, l), a);
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) b(4 * m + r, 4 * l + c) = blk(r, c);
    }
  return TraceFormQ(std::move(b));
}

inline Rational bilinear_B(const TraceFormQ& q, const RatVector& z, const RatVector& w) {
  if (z.size() != q.dim() || w.size() != q.dim()) throw Error(ErrorCode::DimensionMismatch, "trace form evaluation");
  const RatMatrix& b = q.matrix();
  Rational s = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < w.size(); ++j)
      if (w[j] != 0 && b(i, j) != 0) row += b(i, j) * w[j];
    s += z[i] * row;
  }
  return s;
}

inline Rational eval_Q(const TraceFormQ& q, const RatVector& z) { return bilinear_B(q, z, z); }

/// V_Z: columns [y_l * eta_h] for the basis vectors y_l of Z, in the order
/// y_1*1, y_1*i, y_1*j, y_1*k, y_2*1, ...
inline RatMatrix subspace_image(const SubspaceD& z, const AlgebraParams& a) {
  if (z.dim() == 0) return RatMatrix(4 * z.ambient_n(), 0);
  RatMatrix v = right_span_coordinates(z.basis_vectors(), a);
  if (rank(v) != 4 * z.dim()) throw Error(ErrorCode::RankDeficient, "subspace image has deficient rank");
  return v;
}

/// The entries of the hermitian matrix read as one vector in D^{N^2}.
inline QuatVector flatten(const HermitianForm& f) { return f.matrix().entries(); }

struct FormHeights {
  ExactHeight H_Q;       // H of B as a vector in K^{16 N^2}
  ExactHeight Hinf_F;    // archimedean height of F as given
  ExactHeight Hfin_O_F;  // finite O-height of F after clearing into O
  ExactHeight H_O_F;     // H^O(F)
  ExactHeight Hfin_B;    // finite height of B over K
};

inline FormHeights form_heights(const HermitianForm& f, const TraceFormQ& q, const Order& o) {
  const QuatVector flat = flatten(f);
  const Integer a = clearing_integer({flat}, o);
  QuatVector cleared(flat.size());
  for (std::size_t i = 0; i < flat.size(); ++i) cleared[i] = Rational(a) * flat[i];
  const RatVector bflat = q.matrix().entries();
  return {height_H(bflat), Hinf_D(flat, o.algebra()), Hfin_O(o, cleared), H_O_vector(o, flat), height_fin_K(bflat)};
}

}  // namespace qzero
