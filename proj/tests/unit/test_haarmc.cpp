#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "cartan_diag/closedform.hpp"
#include "cartan_diag/errors.hpp"
#include "cartan_diag/haarmc.hpp"

using namespace cartan;

namespace {

const cplx I{0.0, 1.0};

Weight root_coords(const RootSystem& rs, std::vector<double> x) { return rs.weight_from_root_coords(x); }

}  // namespace

TEST(GroupIntegral, ZeroLambdaIsExact) {
  const auto e = estimate_group_integral(3, Weight::zero(2), 5000, 1);
  EXPECT_EQ(e.mean, cplx(1.0));
  EXPECT_EQ(e.std_error, 0.0);
  EXPECT_TRUE(e.components.empty());
}

TEST(GroupIntegral, SU2MatchesCFunction) {
  const auto rs = RootSystem::build(Series::A, 1);
  const Weight lambda = root_coords(rs, {1.0});
  const auto e = estimate_group_integral(2, lambda, 50000, 11);
  EXPECT_LT(z_score(e.mean, c_function(rs, lambda).value, e.stderr_re, e.stderr_im), 4.0);
  EXPECT_EQ(e.n_samples, 50000);
}

TEST(GroupIntegral, RejectsBadRequests) {
  EXPECT_THROW(estimate_group_integral(2, Weight::zero(1), kMinSamples - 1, 1), InvalidArgument);
  EXPECT_THROW(estimate_group_integral(3, Weight::zero(1), 5000, 1), InvalidArgument);
  EXPECT_THROW(estimate_group_integral(2, Weight(std::vector<cplx>{I}), 5000, 1), InvalidArgument);
}

TEST(DiagonalIntegral, S2MassesAreHalf) {
  const auto s2 = SymmetricSpaceSpec::grassmannian(1, 1);
  const auto e = estimate_diagonal_integral(s2, root_coords(s2.ambient(), {0.5}), 40000, 3);
  ASSERT_EQ(e.components.size(), 2u);
  for (const auto& b : e.components) {
    EXPECT_TRUE(b.admissible);
    EXPECT_LT(std::abs(b.mass - 0.5) / b.mass_stderr, 4.0);
  }
  EXPECT_EQ(e.n_inadmissible, 0);
}

TEST(DiagonalIntegral, S2MatchesClosedForm) {
  const auto s2 = SymmetricSpaceSpec::grassmannian(1, 1);
  const Weight lambda = root_coords(s2.ambient(), {0.8});
  const auto e = estimate_diagonal_integral(s2, lambda, 40000, 4);
  EXPECT_LT(z_score(e.mean, 1.0 / (1.0 - 1.6 * I), e.stderr_re, e.stderr_im), 4.0);
}

TEST(DiagonalIntegral, DeterministicAcrossThreads) {
  const auto cp2 = SymmetricSpaceSpec::grassmannian(1, 2);
  const Weight lambda = root_coords(cp2.ambient(), {0.3, -0.7});
  const auto a = estimate_diagonal_integral(cp2, lambda, 3 * kShardSize + 17, 9, 1);
  const auto b = estimate_diagonal_integral(cp2, lambda, 3 * kShardSize + 17, 9, 4);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.stderr_re, b.stderr_re);
  ASSERT_EQ(a.components.size(), b.components.size());
  for (std::size_t i = 0; i < a.components.size(); ++i) {
    EXPECT_EQ(a.components[i].count, b.components[i].count);
    EXPECT_EQ(a.components[i].partial, b.components[i].partial);
  }
}

TEST(DiagonalIntegral, SeedChangesEstimate) {
  const auto cp2 = SymmetricSpaceSpec::grassmannian(1, 2);
  const Weight lambda = root_coords(cp2.ambient(), {0.3, -0.7});
  EXPECT_NE(estimate_diagonal_integral(cp2, lambda, 5000, 1).mean,
            estimate_diagonal_integral(cp2, lambda, 5000, 2).mean);
}

TEST(DiagonalIntegral, BinsAddUp) {
  const auto gr = SymmetricSpaceSpec::grassmannian(2, 2);
  const Weight lambda = root_coords(gr.ambient(), {0.2, 0.5, -0.4});
  const auto e = estimate_diagonal_integral(gr, lambda, 20000, 5);
  std::int64_t total = e.n_rejected;
  cplx weighted{}, partial{};
  for (const auto& b : e.components) {
    total += b.count;
    weighted += static_cast<double>(b.count) * b.mean;
    partial += b.partial;
  }
  EXPECT_EQ(total, e.n_samples);
  const double accepted = static_cast<double>(e.n_samples - e.n_rejected);
  EXPECT_NEAR(std::abs(weighted / accepted - e.mean), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(partial * static_cast<double>(e.n_samples) / accepted - e.mean), 0.0, 1e-12);
}

TEST(DiagonalIntegral, RejectsGroupCase) {
  EXPECT_THROW(estimate_diagonal_integral(SymmetricSpaceSpec::group(2), Weight::zero(1), 5000, 1), InvalidArgument);
}

TEST(ZScore, EdgeCases) {
  EXPECT_EQ(z_score(1.0, 1.0, 0.0, 0.0), 0.0);
  EXPECT_EQ(z_score(1.0, 2.0, 0.0, 0.0), std::numeric_limits<double>::infinity());
  EXPECT_DOUBLE_EQ(z_score(cplx(1.0, 1.0), cplx(1.2, 0.7), 0.1, 0.1), 3.0);
  EXPECT_DOUBLE_EQ(z_score(cplx(1.0, 1.0), cplx(1.2, 1.0), 0.1, 0.0), 2.0);
}

TEST(WorkerCount, HonoursEnvironmentCap) {
  ASSERT_EQ(setenv("CARTAN_DIAG_THREADS", "1", 1), 0);
  EXPECT_EQ(worker_count(), 1);
  unsetenv("CARTAN_DIAG_THREADS");
  EXPECT_GE(worker_count(), 1);
}

TEST(HyperbolicQuadrature, ZeroIsHalf) {
  EXPECT_NEAR(std::abs(hyperbolic_quadrature(Weight::zero(1)) - 0.5), 0.0, 1e-10);
}

TEST(HyperbolicQuadrature, MatchesHalfS2Transform) {
  const auto rs = RootSystem::build(Series::A, 1);
  for (double s : {0.25, 1.0, 2.0, 4.5}) {
    const cplx want = 0.5 / (1.0 - 2.0 * I * s);
    EXPECT_LT(std::abs(hyperbolic_quadrature(root_coords(rs, {s})) - want) / std::abs(want), 1e-6) << s;
  }
  const cplx one = hyperbolic_quadrature(root_coords(rs, {1.0}));
  EXPECT_NEAR(one.real(), 0.1, 1e-8);
  EXPECT_NEAR(one.imag(), 0.2, 1e-8);
}

TEST(HyperbolicQuadrature, RejectsHigherRank) {
  EXPECT_THROW(hyperbolic_quadrature(Weight::zero(2)), InvalidArgument);
}
