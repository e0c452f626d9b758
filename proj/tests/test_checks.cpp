#include <gtest/gtest.h>

#include "qzero/checks.hpp"

using namespace qzero;

namespace {

const AlgebraParams kA(-1, -1);

}  // namespace

TEST(Checks, VectorHeightChainOnOrders) {
  InstanceRng rng(21);
  for (const Order& o : {Order::standard(kA), Order::hurwitz(kA)}) {
    for (int it = 0; it < 100; ++it) {
      const CheckResult r = check_vector_heights(o, rng.order_vector(o, 1 + it % 3, 4));
      EXPECT_TRUE(r.ok) << r.detail;
    }
  }
}

TEST(Checks, IntegralLowerBoundFailsForHalfIntegralVector) {
  // For x outside O_D^N the integral-coordinate lower bound is false; the
  // check falls back to the archimedean part.
  const Quat h{Rational(3, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)};
  const QuatVector x{h};
  EXPECT_EQ(height_H(coord_map(x)), ExactHeight(3));
  EXPECT_EQ(Hinf_D(x, kA), ExactHeight(3, 2));
  EXPECT_TRUE(check_vector_heights(Order::hurwitz(kA), x).ok);
}

TEST(Checks, FormHeightComparison) {
  InstanceRng rng(22);
  for (const auto& [al, be] : std::vector<std::pair<long, long>>{{-1, -1}, {-2, -3}}) {
    const AlgebraParams a(al, be);
    for (int it = 0; it < 50; ++it) {
      const CheckResult r = check_form_heights(rng.hermitian(1 + it % 3, 5, false), Order::standard(a));
      EXPECT_TRUE(r.ok) << r.detail;
    }
  }
}

TEST(Checks, OrderSandwiches) {
  InstanceRng rng(23);
  const Order od = Order::standard(kA);
  const Order hu = Order::hurwitz(kA);
  for (int it = 0; it < 60; ++it) {
    const std::size_t n = 2 + it % 2;
    const SubspaceD z = rng.subspace(n, 1 + it % (n - 1), kA, 5);
    EXPECT_TRUE(check_two_orders(z, od, hu).ok);
    EXPECT_TRUE(check_against_od(z, hu).ok);
  }
}

TEST(Checks, ImageHeightIsFourthPowerForSumOfSquares) {
  InstanceRng rng(24);
  const SubspaceD worked = SubspaceD::from_columns({{Quat(1), Quat::i()}}, 2, kA);
  EXPECT_TRUE(check_image_height(worked, kA).ok);
  for (int it = 0; it < 60; ++it) {
    const std::size_t n = 2 + it % 2;
    EXPECT_TRUE(check_image_height(rng.subspace(n, 1 + it % (n - 1), kA, 5), kA).ok);
  }
}

TEST(Checks, EuclideanImageHeightDiffersForOtherNormForms) {
  const AlgebraParams a(-1, -2);
  const SubspaceD z = SubspaceD::from_columns({{Quat(1), Quat::j()}}, 2, a);
  EXPECT_EQ(height_subspace_K(subspace_image(z, a)), ExactHeight(10));
  EXPECT_EQ(height_subspace_D(Order::standard(a), z).pow_int(4), ExactHeight(9));
  EXPECT_FALSE(check_image_height(z, a).ok);
  EXPECT_TRUE(check_image_covolume(z, a).ok);
}

TEST(Checks, NormMetricCovolumeForAllParameters) {
  InstanceRng rng(25);
  for (const auto& [al, be] : std::vector<std::pair<long, long>>{{-1, -2}, {-2, -3}, {-3, -5}}) {
    const AlgebraParams a(al, be);
    for (int it = 0; it < 20; ++it) {
      const CheckResult r = check_image_covolume(rng.subspace(2 + it % 2, 1, a, 4), a);
      EXPECT_TRUE(r.ok) << r.detail;
    }
  }
}

TEST(Checks, TwistedReportClosedForms) {
  ExactHeight prev_ratio(0);
  for (long n = 1; n <= 10; ++n) {
    const TwistedReport r = twisted_form_report(n);
    EXPECT_TRUE(r.closed_forms_ok);
    EXPECT_EQ(r.index, Rational((1 + n * n) * (1 + n * n)));
    const ExactHeight ratio = r.hfin_b / r.hfin_o_f;
    EXPECT_GT(ratio, prev_ratio);
    prev_ratio = ratio;
  }
}

TEST(Checks, PlantedFormCarriesItsZero) {
  InstanceRng rng(26);
  for (int it = 0; it < 20; ++it) {
    const PlantedForm p = planted_zero_form(rng, 2 + it % 2, kA);
    EXPECT_EQ(eval_hermitian(p.form, p.zero, kA), 0);
    EXPECT_NE(det(build_trace_matrix(p.form, kA).matrix()), 0);
  }
}

TEST(Checks, SelfTestPasses) {
  const SelfTestReport r = run_selftest(3, 40);
  EXPECT_EQ(r.failed, 0u);
  EXPECT_GT(r.passed, 100u);
}
