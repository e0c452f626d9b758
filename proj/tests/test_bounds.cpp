#include <cmath>

#include <gtest/gtest.h>

#include "qzero/bounds.hpp"

using namespace qzero;

namespace {

// Closed-form evaluation in long double, written without the interval code.
long double c_rationals(int l) {
  return 2.0L * std::pow(std::tgamma(l / 2.0L + 1), 1.0L / l) / std::sqrt(std::acos(-1.0L));
}

long double b_rationals(int l) {
  long double b = std::pow(2.0L, l + 1) * c_rationals(1) * c_rationals(1);
  if (l > 1) b *= std::pow(c_rationals(l - 1), 2.0L * (l - 1));
  return b;
}

long double a_oracle(int n, int l, long double m, long double s, long double t) {
  return std::pow(2.0L, (20.0L * l - 3) / 2) * std::pow(static_cast<long double>(n), 4.0L * l - 1) *
         std::sqrt(b_rationals(4 * l)) * std::pow(m, 4.0L * (n - l)) * std::pow(s, 4.0L * l) /
         std::pow(t, (4.0L * l - 1) / 2);
}

}  // namespace

TEST(Bounds, RealPlaceConstantAtOne) {
  const BoundValue r = r_real(1);
  EXPECT_TRUE(r.contains(0.5));
  EXPECT_LE(r.width(), 1e-12);
}

TEST(Bounds, FieldConstantAtOne) {
  const BoundValue c = C_K(1);
  EXPECT_TRUE(c.contains(1.0));
  EXPECT_LE(c.width(), 1e-12);
}

TEST(Bounds, BConstantAtTwo) {
  const BoundValue b = B_K(2);
  EXPECT_TRUE(b.contains(8.0));
}

TEST(Bounds, EnclosuresContainOracle) {
  for (int l = 1; l <= 8; ++l) {
    EXPECT_TRUE(C_K(l).contains(static_cast<double>(c_rationals(l)))) << l;
    EXPECT_LT(C_K(l).relative_width(), 1e-11);
  }
}

TEST(Bounds, TheoremConstantAgainstOracle) {
  const AlgebraParams a(-1, -1);
  const BoundValue od = A_K(2, 1, a, Order::standard(a));
  const long double expect = a_oracle(2, 1, 1, 1, 1);
  EXPECT_NEAR(od.mid() / static_cast<double>(expect), 1.0, 0.01);
  EXPECT_NEAR(od.mid(), 31291.1, 1.0);
  const BoundValue hu = A_K(2, 1, a, Order::hurwitz(a));
  EXPECT_NEAR(hu.mid() / od.mid(), 16.0, 1e-9);
}

TEST(Bounds, TheoremConstantGrid) {
  for (const auto& [al, be] : std::vector<std::pair<long, long>>{{-1, -1}, {-1, -2}, {-2, -3}}) {
    const AlgebraParams a(al, be);
    const Order od = Order::standard(a);
    const long double s = std::sqrt(static_cast<long double>(al * be));
    for (int n = 1; n <= 4; ++n) {
      for (int l = 1; l <= n; ++l) {
        const BoundValue v = A_K(n, l, a, od);
        EXPECT_NEAR(v.mid() / static_cast<double>(a_oracle(n, l, 1, s, 1)), 1.0, 1e-9) << n << " " << l;
        if (n > l) {
          EXPECT_LE(A_K(n - 1, l, a, od).hi, v.hi);
        }
      }
    }
  }
}

TEST(Bounds, SAndTConstants) {
  const auto [s, t] = s_t_constants(AlgebraParams(-2, -3));
  EXPECT_EQ(s, ExactHeight(6, 2));
  EXPECT_EQ(t, ExactHeight(1));
}

TEST(Bounds, VaalerBoundSubstitution) {
  const VaalerBounds v = vaaler_bounds(1, 2, ExactHeight(1), ExactHeight(1));
  const BoundValue expected = sqrt(B_K(4)) * BoundValue::exact(512);
  EXPECT_NEAR(v.b1.mid() / expected.mid(), 1.0, 1e-12);
}

TEST(Bounds, CertifyThreeStates) {
  EXPECT_EQ(certify_leq(ExactHeight(1), BoundValue{2, 3, ""}), Verdict::Certified);
  EXPECT_EQ(certify_leq(ExactHeight(5), BoundValue{2, 3, ""}), Verdict::Violated);
  EXPECT_EQ(certify_leq(ExactHeight(5, 2), BoundValue{2.2, 2.3, ""}), Verdict::Likely);
  EXPECT_EQ(certify_leq(ExactHeight(2), BoundValue::exact(2)), Verdict::Certified);
}

TEST(Bounds, IntervalEnclosesIrrationalHeights) {
  const BoundValue v = enclose(ExactHeight(2, 4));
  EXPECT_TRUE(v.contains(std::pow(2.0, 0.25)));
  EXPECT_LT(v.width(), 1e-13);
}

TEST(Bounds, InvalidDimensionsRejected) {
  const AlgebraParams a(-1, -1);
  EXPECT_THROW(A_K(2, 3, a, Order::standard(a)), Error);
  EXPECT_THROW(r_real(0), Error);
}
