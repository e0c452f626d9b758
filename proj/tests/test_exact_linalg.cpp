#include <random>

#include <gtest/gtest.h>

#include "qzero/exact_linalg.hpp"
#include "qzero/orders.hpp"

using namespace qzero;

namespace {

Integer cofactor_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, jj = 0; j < n; ++j)
        if (j != c) minor(i - 1, jj++) = m(i, j);
    const Integer term = m(0, c) * cofactor_det(minor);
    total += (c % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

IntMatrix random_int_matrix(std::mt19937_64& eng, std::size_t r, std::size_t c, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(eng);
  return m;
}

}  // namespace

TEST(ExactLinalg, BareissMatchesCofactorExpansion) {
  std::mt19937_64 eng(11);
  for (int it = 0; it < 200; ++it) {
    const std::size_t n = 1 + it % 5;
    const IntMatrix m = random_int_matrix(eng, n, n, 6);
    EXPECT_EQ(det(m), cofactor_det(m));
    EXPECT_EQ(det(to_rational(m)), Rational(cofactor_det(m)));
  }
}

TEST(ExactLinalg, HnfOfSmallMatrixKeepsDeterminant) {
  const IntMatrix m{{2, 1}, {0, 1}};
  const HnfResult r = hnf(m);
  EXPECT_EQ(r.rank, 2u);
  EXPECT_EQ(abs(det(r.h)), 2);
  EXPECT_EQ(r.h(0, 1), 0);
  EXPECT_GT(r.h(0, 0), 0);
  EXPECT_GT(r.h(1, 1), 0);
  EXPECT_EQ(abs(det(r.u)), 1);
}

TEST(ExactLinalg, HnfIsUnimodularTransform) {
  std::mt19937_64 eng(3);
  for (int it = 0; it < 100; ++it) {
    const IntMatrix m = random_int_matrix(eng, 3, 4, 5);
    const HnfResult r = hnf(m);
    IntMatrix mu(3, 4);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = 0; k < 4; ++k) mu(i, j) += m(i, k) * r.u(k, j);
    EXPECT_EQ(mu, r.h);
    EXPECT_EQ(abs(det(r.u)), 1);
    EXPECT_EQ(r.rank, rank(m));
    for (std::size_t c = r.rank; c < 4; ++c)
      for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(r.h(i, c), 0);
  }
}

TEST(ExactLinalg, KernelMultipliesToZero) {
  std::mt19937_64 eng(5);
  for (int it = 0; it < 50; ++it) {
    const RatMatrix m = to_rational(random_int_matrix(eng, 2, 4, 4));
    const RatMatrix k = kernel_basis(m);
    EXPECT_EQ(k.cols(), 4 - rank(m));
    EXPECT_EQ(rank(k), k.cols());
    const RatMatrix prod = m * k;
    for (const auto& q : prod.entries()) EXPECT_EQ(q, 0);
  }
}

TEST(ExactLinalg, SaturationOfSimpleLattice) {
  const IntMatrix m{{1, 0}, {0, 2}, {1, 0}};
  const IntLattice s = saturate(m);
  const IntLattice expected(IntMatrix{{1, 0}, {0, 1}, {1, 0}});
  EXPECT_EQ(s, expected);
  EXPECT_EQ(lattice_index(s, IntLattice(m)), 2);
}

TEST(ExactLinalg, SaturationContainsInputWithIndexOneOnPrimitiveInput) {
  std::mt19937_64 eng(17);
  for (int it = 0; it < 50; ++it) {
    IntMatrix m = random_int_matrix(eng, 4, 2, 5);
    if (rank(m) != 2) continue;
    const IntLattice s = saturate(m);
    const Integer idx = lattice_index(s, IntLattice(m));
    EXPECT_GE(idx, 1);
    EXPECT_EQ(lattice_index(s, saturate(s.basis())), 1);
  }
}

TEST(ExactLinalg, LatticeIndexOfTwistedIdeal) {
  const AlgebraParams a(-1, -1);
  const Order hu = Order::hurwitz(a);
  const Quat x{0, 1, 1, 0};
  std::vector<QuatVector> gens;
  for (const auto& w : hu.basis()) gens.push_back({quat_mul(w, x, a)});
  EXPECT_EQ(order_lattice_index(hu, gens, 1), 4);
}

TEST(ExactLinalg, LatticeIndexRejectsNonSublattice) {
  const IntLattice a(IntMatrix{{2, 0}, {0, 1}});
  const IntLattice b(IntMatrix{{1, 0}, {0, 1}});
  EXPECT_THROW(lattice_index(a, b), Error);
}

TEST(ExactLinalg, ExactSquareRoots) {
  EXPECT_EQ(integer_sqrt_exact(Integer(16)), Integer(4));
  EXPECT_FALSE(integer_sqrt_exact(Integer(15)).has_value());
  EXPECT_EQ(rational_sqrt_exact(Rational(9, 4)), Rational(3, 2));
  EXPECT_FALSE(rational_sqrt_exact(Rational(2)).has_value());
  EXPECT_EQ(isqrt_floor(Integer(99)), 9);
}

TEST(ExactLinalg, SolveAndInverseRoundTrip) {
  std::mt19937_64 eng(23);
  for (int it = 0; it < 50; ++it) {
    const RatMatrix m = to_rational(random_int_matrix(eng, 3, 3, 4));
    if (det(m) == 0) continue;
    const RatMatrix inv = inverse(m);
    EXPECT_EQ(m * inv, RatMatrix::identity(3));
  }
}
