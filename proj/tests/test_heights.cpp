#include <gtest/gtest.h>

#include "qzero/checks.hpp"

using namespace qzero;

namespace {

const AlgebraParams kA(-1, -1);

QuatMatrix row_matrix(const QuatVector& v) {
  QuatMatrix m(1, v.size());
  for (std::size_t c = 0; c < v.size(); ++c) m(0, c) = v[c];
  return m;
}

}  // namespace

TEST(Heights, ProjectiveHeightOnRationals) {
  EXPECT_EQ(height_H({Rational(2), Rational(4)}), ExactHeight(2));
  EXPECT_EQ(height_H({Rational(1, 2), Rational(1, 3)}), ExactHeight(3));
  EXPECT_EQ(height_h(RatVector{Rational(1, 2)}), ExactHeight(2));
  EXPECT_EQ(height_h(RatVector{Rational(0)}), ExactHeight(1));
  EXPECT_THROW(height_H({Rational(0), Rational(0)}), Error);
}

TEST(Heights, ProductFormulaScalingInvariance) {
  InstanceRng rng(1);
  for (int it = 0; it < 200; ++it) {
    RatVector x{rng.rational(9), rng.rational(9), rng.nonzero_rational(9)};
    const Rational s = rng.nonzero_rational(7);
    RatVector y = x;
    for (auto& q : y) q *= s;
    EXPECT_EQ(height_H(x), height_H(y));
    EXPECT_EQ(height_inf_K(x) * height_fin_K(x), height_H(x));
  }
}

TEST(Heights, PaddicAbsoluteValue) {
  EXPECT_EQ(padic_abs(Rational(12), 2), Rational(1, 4));
  EXPECT_EQ(padic_abs(Rational(5, 9), 3), Rational(9));
  EXPECT_EQ(padic_abs(Rational(0), 5), Rational(0));
}

TEST(Heights, GrassmannCoordinatesAndCauchyBinet) {
  const RatMatrix x{{1, 0}, {0, 1}, {1, 1}};
  const RatVector g = grassmann(x);
  EXPECT_EQ(g, (RatVector{Rational(1), Rational(1), Rational(-1)}));
  const RatMatrix xtx = x.transpose() * x;
  Rational sq = 0;
  for (const auto& q : g) sq += q * q;
  EXPECT_EQ(det(xtx), sq);
  EXPECT_EQ(sq, 3);
  EXPECT_EQ(height_subspace_K(x), ExactHeight(3, 2));
  const RatMatrix v{{1, 0}, {0, 1}, {1, 1}};
  EXPECT_EQ(height_subspace_K(v), height_subspace_K(RatMatrix{{1, 1}, {0, 1}, {1, 2}}));
}

TEST(Heights, SubspaceHeightIsBasisIndependent) {
  std::mt19937_64 eng(2);
  std::uniform_int_distribution<long> d(-4, 4);
  for (int it = 0; it < 100; ++it) {
    RatMatrix x(4, 2);
    for (auto i = 0u; i < 4; ++i)
      for (auto j = 0u; j < 2; ++j) x(i, j) = d(eng);
    if (rank(x) != 2) continue;
    RatMatrix g{{Rational(d(eng)), Rational(1)}, {Rational(1), Rational(0)}};
    EXPECT_EQ(height_subspace_K(x), height_subspace_K(x * g));
  }
}

TEST(Heights, QuaternionVectorHeights) {
  const Order od = Order::standard(kA);
  const QuatVector x{Quat(1), Quat{1, 1, 0, 0}};
  EXPECT_EQ(Hinf_D(x, kA), ExactHeight(2, 2));
  EXPECT_EQ(Hinf_D(QuatVector{Quat(1), Quat::i()}, kA), ExactHeight(1));
  EXPECT_EQ(Hfin_O(od, x), ExactHeight(1));
  EXPECT_EQ(H_O_vector(od, x), ExactHeight(2, 2));
}

TEST(Heights, TwistedElementFiniteHeight) {
  const Order hu = Order::hurwitz(kA);
  for (long n = 1; n <= 6; ++n) {
    const QuatVector x{Quat{0, 1, Rational(n), 0}};
    EXPECT_EQ(Hfin_O(hu, x), ExactHeight(Rational(1, 1 + n * n), 2));
  }
}

TEST(Heights, RowMatrixHeightsAgree) {
  const QuatMatrix c = row_matrix({Quat(1), Quat::i()});
  const HinfEvaluations both = Hinf_matrix_both(c, kA);
  EXPECT_EQ(both.via_product, ExactHeight(2, 2));
  EXPECT_EQ(both.via_minors, ExactHeight(2, 2));
  const QuatMatrix c2 = row_matrix({Quat(1), Quat{1, 1, 0, 0}});
  EXPECT_EQ(Hinf_matrix_C(c2, kA), ExactHeight(3, 2));
}

TEST(Heights, MinorSumAgreesOnRandomMatrices) {
  InstanceRng rng(3);
  for (const auto& [al, be] : std::vector<std::pair<long, long>>{{-1, -1}, {-2, -3}}) {
    const AlgebraParams a(al, be);
    for (int it = 0; it < 60; ++it) {
      const std::size_t rows = 1 + it % 2;
      const QuatMatrix c = rng.constraint(rows, rows + 1, a, 3);
      const HinfEvaluations both = Hinf_matrix_both(c, a);
      EXPECT_EQ(both.via_product, both.via_minors);
    }
  }
}

TEST(Heights, LiteralSquaredMinorSumDisagrees) {
  // Squaring each minor's norm before summing overshoots the product
  // evaluation already for C = (1, 1+i).
  const QuatMatrix c = row_matrix({Quat(1), Quat{1, 1, 0, 0}});
  Rational squared = 0;
  for (std::size_t col = 0; col < 2; ++col) {
    const Rational nm = q_norm(c(0, col), kA);
    squared += nm * nm;
  }
  EXPECT_EQ(ExactHeight(squared, 4), ExactHeight(5, 4));
  EXPECT_NE(ExactHeight(squared, 4), Hinf_matrix_C(c, kA));
}

TEST(Heights, SubspaceHeightWorkedInstance) {
  const Order od = Order::standard(kA);
  const SubspaceD z = SubspaceD::from_columns({{Quat(1), Quat::i()}}, 2, kA);
  EXPECT_EQ(height_subspace_D(od, z), ExactHeight(2, 2));
  const SubspaceD zp = orthogonal_complement(z, kA);
  EXPECT_EQ(zp.dim(), 1u);
  EXPECT_EQ(d_rank({zp.basis_vectors()[0], QuatVector{Quat::i(), Quat(1)}}, kA), 1u);
  EXPECT_EQ(height_subspace_D(od, zp), ExactHeight(2, 2));
}

TEST(Heights, ConstraintAndBasisFormsAgree) {
  InstanceRng rng(4);
  const Order od = Order::standard(kA);
  for (int it = 0; it < 60; ++it) {
    const QuatMatrix c = rng.constraint(1, 3, kA, 3);
    const SubspaceD z = SubspaceD::from_constraint(c, kA);
    const SubspaceD basis_only = SubspaceD::from_basis(z.basis(), kA);
    EXPECT_EQ(height_subspace_D(od, z), height_subspace_D(od, basis_only));
  }
}

TEST(Heights, DualityOnRandomSubspaces) {
  InstanceRng rng(5);
  const Order od = Order::standard(kA);
  const Order hu = Order::hurwitz(kA);
  for (int it = 0; it < 60; ++it) {
    const std::size_t n = 2 + it % 2;
    const SubspaceD z = rng.subspace(n, 1 + it % (n - 1), kA, 4);
    EXPECT_TRUE(check_duality(z, od).ok);
    EXPECT_TRUE(check_duality(z, hu).ok);
  }
}

TEST(Heights, FullSpaceHasHeightOne) {
  EXPECT_EQ(height_subspace_D(Order::standard(kA), SubspaceD::full(3)), ExactHeight(1));
}
