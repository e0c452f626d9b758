#include <gtest/gtest.h>

#include "qzero/checks.hpp"
#include "qzero/zero_solver.hpp"

using namespace qzero;

namespace {

const AlgebraParams kA(-1, -1);

TraceFormQ diagonal(std::initializer_list<long> d) {
  RatMatrix m(d.size(), d.size());
  std::size_t i = 0;
  for (long x : d) {
    m(i, i) = x;
    ++i;
  }
  return TraceFormQ(m);
}

RatMatrix full_space(std::size_t n) { return RatMatrix::identity(n); }

// Every primitive isotropic vector with entries in [-1, 1], sign-normalized.
std::vector<IntVector> radius_one_zeros(const TraceFormQ& q) {
  std::vector<IntVector> out;
  const std::size_t n = q.dim();
  std::vector<long> c(n, -1);
  while (true) {
    IntVector z(c.begin(), c.end());
    if (!is_zero_vector(to_rational(z)) && eval_Q(q, to_rational(z)) == 0 && sign_normalize(z) == z) out.push_back(z);
    std::size_t p = 0;
    while (p < n && c[p] == 1) c[p++] = -1;
    if (p == n) break;
    ++c[p];
  }
  return out;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST(ZeroSolver, SmallestZeroOfDifferenceOfSquares) {
  const TraceFormQ q = diagonal({1, -1});
  const IntVector z = find_isotropic_vector(q, full_space(2), SolverConfig{});
  EXPECT_EQ(z, (IntVector{1, 1}));
  const auto all = radius_one_zeros(q);
  EXPECT_EQ(all.size(), 2u);
  for (const auto& w : all) EXPECT_FALSE(zero_preferred(w, z));
}

TEST(ZeroSolver, HyperbolicPlanePrefersFirstAxis) {
  const TraceFormQ q(RatMatrix{{0, 1}, {1, 0}});
  EXPECT_EQ(find_isotropic_vector(q, full_space(2), SolverConfig{}), (IntVector{1, 0}));
}

TEST(ZeroSolver, TernaryFormAtRadiusOne) {
  const TraceFormQ q = diagonal({1, 1, -2});
  EXPECT_EQ(find_isotropic_vector(q, full_space(3), SolverConfig{}), (IntVector{1, 1, 1}));
}

TEST(ZeroSolver, IsotropicBasisOfDifferenceOfSquares) {
  const TraceFormQ q = diagonal({1, -1});
  const auto xs = isotropic_basis(q, full_space(2), IntVector{1, 1});
  ASSERT_EQ(xs.size(), 2u);
  EXPECT_EQ(xs[0], (IntVector{1, 1}));
  EXPECT_EQ(sign_normalize(xs[1]), (IntVector{1, -1}));
}

TEST(ZeroSolver, IsotropicBasisOfHyperbolicTraceForm) {
  const TraceFormQ q = build_trace_matrix(hyperbolic_form(2), kA);
  const IntVector z1 = find_isotropic_vector(q, full_space(8), SolverConfig{});
  const auto xs = isotropic_basis(q, full_space(8), z1);
  ASSERT_EQ(xs.size(), 8u);
  RatMatrix cols(8, 8);
  for (std::size_t c = 0; c < 8; ++c) {
    EXPECT_EQ(eval_Q(q, to_rational(xs[c])), 0);
    for (std::size_t r = 0; r < 8; ++r) cols(r, c) = xs[c][r];
  }
  EXPECT_EQ(rank(cols), 8u);
  EXPECT_EQ(select_D_basis(xs, kA, 2).size(), 2u);
}

TEST(ZeroSolver, AnisotropicTernaryHitsCap) {
  const TraceFormQ q = diagonal({1, 1, -3});
  SolverConfig cfg;
  cfg.enumeration_cap = 4;
  EXPECT_EQ(code_of([&] { find_isotropic_vector(q, full_space(3), cfg); }), ErrorCode::CapExceeded);
}

TEST(ZeroSolver, DefiniteNormFormHitsCap) {
  QuatMatrix m(1, 1);
  m(0, 0) = Quat(1);
  EXPECT_EQ(code_of([&] { solve(HermitianForm(m), SubspaceD::full(1), Order::standard(kA), SolverConfig{}); }),
            ErrorCode::CapExceeded);
}

TEST(ZeroSolver, DegenerateRestrictionRejected) {
  QuatMatrix m(2, 2);
  m(0, 0) = Quat(1);
  m(1, 1) = Quat(-1);
  const SubspaceD z = SubspaceD::from_columns({{Quat(1), Quat::i()}}, 2, kA);
  EXPECT_EQ(code_of([&] { solve(HermitianForm(m), z, Order::standard(kA), SolverConfig{}); }),
            ErrorCode::DegenerateRestriction);
}

TEST(ZeroSolver, HyperbolicInstanceEndToEnd) {
  const auto c = solve(hyperbolic_form(2), SubspaceD::full(2), Order::standard(kA), SolverConfig{});
  ASSERT_EQ(c.ys.size(), 2u);
  EXPECT_EQ(c.ys[0], (QuatVector{Quat(1), Quat(0)}));
  EXPECT_EQ(c.ys[1], (QuatVector{Quat(0), Quat(1)}));
  EXPECT_TRUE(c.zeros_verified);
  EXPECT_TRUE(c.rank_verified);
  EXPECT_EQ(c.verdict1, Verdict::Certified);
  EXPECT_EQ(c.verdict2, Verdict::Certified);
  EXPECT_EQ(c.h_y[0], ExactHeight(1));
}

TEST(ZeroSolver, TwistedInstanceFirstVector) {
  const auto c = solve(twisted_hyperbolic_form(1), SubspaceD::full(2), Order::standard(kA), SolverConfig{});
  EXPECT_EQ(c.ys[0], (QuatVector{Quat(1), Quat(0)}));
  EXPECT_EQ(overall(c), Verdict::Certified);
}

TEST(ZeroSolver, PlantedZerosAreFound) {
  InstanceRng rng(77);
  for (const auto& [al, be] : std::vector<std::pair<long, long>>{{-1, -1}, {-1, -2}}) {
    const AlgebraParams a(al, be);
    for (int it = 0; it < 4; ++it) {
      const PlantedForm p = planted_zero_form(rng, 2, a);
      EXPECT_EQ(eval_hermitian(p.form, p.zero, a), 0);
      const auto c = solve(p.form, SubspaceD::full(2), Order::standard(a), SolverConfig{});
      EXPECT_TRUE(c.zeros_verified);
      EXPECT_TRUE(c.rank_verified);
      for (const auto& y : c.ys) EXPECT_EQ(eval_hermitian(p.form, y, a), 0);
    }
  }
}

TEST(ZeroSolver, ParallelEnumerationIsDeterministic) {
  InstanceRng rng(12);
  const PlantedForm p = planted_zero_form(rng, 2, kA);
  SolverConfig one;
  SolverConfig four;
  four.workers = 4;
  four.seed = 99;
  const auto a = solve(p.form, SubspaceD::full(2), Order::standard(kA), one);
  const auto b = solve(p.form, SubspaceD::full(2), Order::standard(kA), four);
  EXPECT_EQ(a.xs, b.xs);
  EXPECT_EQ(a.ys, b.ys);
}

TEST(ZeroSolver, DefinitenessTest) {
  EXPECT_TRUE(is_definite(RatMatrix{{2, 1}, {1, 2}}));
  EXPECT_TRUE(is_definite(RatMatrix{{-2, 1}, {1, -2}}));
  EXPECT_FALSE(is_definite(RatMatrix{{1, 0}, {0, -1}}));
  EXPECT_FALSE(is_definite(RatMatrix{{0, 1}, {1, 0}}));
}
