#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <Eigen/LU>

#include "cartan_diag/errors.hpp"
#include "cartan_diag/matreal.hpp"

using namespace cartan;

namespace {

constexpr cplx I{0.0, 1.0};

ComplexMatrix random_gaussian(int n, RngStream& rng) {
  ComplexMatrix g(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) g(r, c) = rng.complex_gaussian();
  return g;
}

ComplexMatrix det_one(ComplexMatrix g) {
  const cplx det = g.determinant();
  return g / std::pow(det, 1.0 / static_cast<double>(g.rows()));
}

// E |tr u|^2 over U(2) by midpoint quadrature in Euler angles:
// u = e^{i phi} [[e^{i psi} cos t, e^{i chi} sin t], [-e^{-i chi} sin t, e^{-i psi} cos t]]
// with Haar density proportional to sin t cos t on t in [0, pi/2].
double u2_trace_moment_quadrature() {
  const int nt = 400, np = 64;
  double num = 0.0, den = 0.0;
  for (int a = 0; a < nt; ++a) {
    const double t = (a + 0.5) * (std::numbers::pi / 2) / nt;
    const double w = std::sin(t) * std::cos(t);
    for (int b = 0; b < np; ++b) {
      const double psi = (b + 0.5) * 2 * std::numbers::pi / np;
      // tr u = e^{i phi} 2 cos t cos psi; phi and chi drop out of |tr u|^2
      const double tr = 2.0 * std::cos(t) * std::cos(psi);
      num += w * tr * tr;
      den += w;
    }
  }
  return num / den;
}

struct Moments {
  double mean = 0.0, se = 0.0;
};

template <class F>
Moments sample_moments(int n, int draws, std::uint64_t seed, F&& f) {
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < draws; ++i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    const double v = f(haar_unitary(n, rng));
    s += v;
    s2 += v * v;
  }
  const double mean = s / draws;
  return {mean, std::sqrt((s2 / draws - mean * mean) / draws)};
}

}  // namespace

TEST(Haar, SamplesAreUnitary) {
  for (int n = 1; n <= 6; ++n) {
    RngStream rng(1, static_cast<std::uint64_t>(n));
    EXPECT_LT(unitary_residual(haar_unitary(n, rng)), 1e-13);
  }
}

TEST(Haar, DeterministicPerStream) {
  RngStream a(5, 17), b(5, 17), c(5, 18);
  const auto ua = haar_unitary(3, a), ub = haar_unitary(3, b), uc = haar_unitary(3, c);
  EXPECT_EQ(max_abs_diff(ua, ub), 0.0);
  EXPECT_GT(max_abs_diff(ua, uc), 0.0);
}

TEST(Haar, FirstEntryHasMeanZero) {
  const int draws = 100000;
  for (int n : {2, 3}) {
    const auto re = sample_moments(n, draws, 11, [](const ComplexMatrix& u) { return u(0, 0).real(); });
    const auto im = sample_moments(n, draws, 12, [](const ComplexMatrix& u) { return u(0, 0).imag(); });
    EXPECT_LT(std::abs(re.mean), 4 * re.se);
    EXPECT_LT(std::abs(im.mean), 4 * im.se);
  }
}

TEST(Haar, FirstEntryModulusSquared) {
  for (int n : {2, 3, 4}) {
    const auto m = sample_moments(n, 100000, 13, [](const ComplexMatrix& u) { return std::norm(u(0, 0)); });
    EXPECT_LT(std::abs(m.mean - 1.0 / n), 4 * m.se) << "n = " << n;
  }
}

TEST(Haar, TraceMomentAgainstQuadrature) {
  // U(1): |tr u|^2 = 1 identically
  const auto m1 = sample_moments(1, 1000, 14, [](const ComplexMatrix& u) { return std::norm(u.trace()); });
  EXPECT_NEAR(m1.mean, 1.0, 1e-12);
  const double oracle = u2_trace_moment_quadrature();
  EXPECT_NEAR(oracle, 1.0, 1e-6);
  const auto m2 = sample_moments(2, 100000, 15, [](const ComplexMatrix& u) { return std::norm(u.trace()); });
  EXPECT_LT(std::abs(m2.mean - oracle), 4 * m2.se);
}

TEST(CartanEmbed, Examples) {
  const auto s2 = SymmetricSpaceSpec::grassmannian(1, 1);
  EXPECT_EQ(max_abs_diff(cartan_embed(ComplexMatrix::Identity(2, 2), s2), ComplexMatrix::Identity(2, 2)), 0.0);
  ComplexMatrix anti(2, 2);
  anti << 0.0, 1.0, -1.0, 0.0;
  EXPECT_LT(max_abs_diff(cartan_embed(anti, s2), -ComplexMatrix::Identity(2, 2)), 1e-15);
  EXPECT_THROW(cartan_embed(ComplexMatrix::Identity(2, 2), SymmetricSpaceSpec::group(2)), InvalidArgument);
}

TEST(CartanEmbed, RandomPointsAreCartanSymmetric) {
  for (auto [k, m] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 2}}) {
    const auto spec = SymmetricSpaceSpec::grassmannian(k, m);
    for (int i = 0; i < 200; ++i) {
      RngStream rng(21, static_cast<std::uint64_t>(i));
      const auto g = cartan_embed(haar_unitary(spec.n(), rng), spec);
      EXPECT_LT(cartan_residual(g, spec), 1e-12);
      EXPECT_TRUE(is_unitary(g));
      EXPECT_TRUE(is_cartan_symmetric(g, spec));
    }
  }
}

TEST(CartanEmbed, InvariantUnderUnitScalars) {
  const auto spec = SymmetricSpaceSpec::grassmannian(1, 2);
  RngStream rng(22, 0);
  const auto u = haar_unitary(3, rng);
  const cplx zeta = std::exp(I * 0.913);
  EXPECT_LT(max_abs_diff(cartan_embed(u, spec), cartan_embed(zeta * u, spec)), 1e-14);
}

TEST(LDU, Identity) {
  const auto f = ldu(ComplexMatrix::Identity(3, 3));
  EXPECT_EQ(max_abs_diff(f.l, ComplexMatrix::Identity(3, 3)), 0.0);
  EXPECT_EQ(max_abs_diff(f.u, ComplexMatrix::Identity(3, 3)), 0.0);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(f.d(i), cplx(1.0));
}

TEST(LDU, TwoByTwoClosedForm) {
  const cplx a{1.3, -0.4}, b{0.2, 0.9}, c{-0.7, 0.1}, d{2.0, 0.5};
  ComplexMatrix g(2, 2);
  g << a, b, c, d;
  const auto f = ldu(g);
  const cplx det = a * d - b * c;
  EXPECT_LT(std::abs(f.l(1, 0) - c / a), 1e-15);
  EXPECT_LT(std::abs(f.u(0, 1) - b / a), 1e-15);
  EXPECT_LT(std::abs(f.d(0) - a), 1e-15);
  EXPECT_LT(std::abs(f.d(1) - det / a), 1e-15);
  EXPECT_EQ(f.l(0, 1), cplx(0.0));
  EXPECT_EQ(f.u(1, 0), cplx(0.0));
}

TEST(LDU, RotationIsNonGeneric) {
  ComplexMatrix r(2, 2);
  r << 0.0, 1.0, -1.0, 0.0;
  EXPECT_THROW(ldu(r), NonGenericError);
}

TEST(LDU, RoundTripAndMinors) {
  for (int i = 0; i < 500; ++i) {
    RngStream rng(31, static_cast<std::uint64_t>(i));
    const int n = 2 + i % 5;
    const auto g = random_gaussian(n, rng);
    const auto f = ldu(g);
    EXPECT_LT(max_abs_diff(f.reconstruct(), g), 1e-10);
    cplx prev = 1.0;
    for (int k = 1; k <= n; ++k) {
      const cplx minor = g.topLeftCorner(k, k).determinant();
      EXPECT_LT(std::abs(f.minors(k - 1) - minor), 1e-10 * std::max(1.0, std::abs(minor)));
      EXPECT_LT(std::abs(f.d(k - 1) - minor / prev), 1e-9 * std::max(1.0, std::abs(minor / prev)));
      prev = minor;
    }
  }
}

TEST(Iwasawa, Examples) {
  const auto f = iwasawa(ComplexMatrix::Identity(3, 3));
  EXPECT_LT(max_abs_diff(f.l, ComplexMatrix::Identity(3, 3)), 1e-15);
  EXPECT_LT(max_abs_diff(f.u, ComplexMatrix::Identity(3, 3)), 1e-15);
  ComplexMatrix g = ComplexMatrix::Zero(2, 2);
  g(0, 0) = 2.0;
  g(1, 1) = 0.5;
  const auto h = iwasawa(g);
  EXPECT_NEAR(h.a(0), 2.0, 1e-15);
  EXPECT_NEAR(h.a(1), 0.5, 1e-15);
  EXPECT_LT(max_abs_diff(h.l, ComplexMatrix::Identity(2, 2)), 1e-15);
  EXPECT_LT(max_abs_diff(h.u, ComplexMatrix::Identity(2, 2)), 1e-15);
}

TEST(Iwasawa, RandomRoundTrip) {
  for (int i = 0; i < 500; ++i) {
    RngStream rng(41, static_cast<std::uint64_t>(i));
    const int n = 2 + i % 4;
    const auto g = det_one(random_gaussian(n, rng));
    const auto f = iwasawa(g);
    EXPECT_LT(max_abs_diff(f.reconstruct(), g), 1e-12);
    EXPECT_LT(unitary_residual(f.u), 1e-12);
    double prod = 1.0;
    for (int k = 0; k < n; ++k) {
      EXPECT_GT(f.a(k), 0.0);
      EXPECT_EQ(f.l(k, k), cplx(1.0));
      for (int c = k + 1; c < n; ++c) EXPECT_EQ(f.l(k, c), cplx(0.0));
      prod *= f.a(k);
    }
    EXPECT_NEAR(prod, 1.0, 1e-12);
  }
}

TEST(Iwasawa, StretchedInputsStayUnitary) {
  // a = diag(e^t, e^-t) rotated: the Cholesky route loses accuracy for large
  // t and the factorization must still return a unitary u
  ComplexMatrix k(2, 2);
  const double th = 0.3;
  k << std::cos(th), std::sin(th), -std::sin(th), std::cos(th);
  for (double t : {1.0, 5.0, 10.0, 15.0}) {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 0) = std::exp(t);
    a(1, 1) = std::exp(-t);
    const ComplexMatrix g = k * a * k.adjoint();
    const auto f = iwasawa(g);
    EXPECT_LT(unitary_residual(f.u), 1e-10) << t;
    EXPECT_LT(max_abs_diff(f.reconstruct(), g) / std::exp(t), 1e-12) << t;
  }
}

TEST(Iwasawa, DiagonalOnlyMatchesFullFactorization) {
  for (int i = 0; i < 200; ++i) {
    RngStream rng(42, static_cast<std::uint64_t>(i));
    const auto g = det_one(random_gaussian(3, rng));
    const auto a = iwasawa_diagonal(g);
    const auto f = iwasawa(g);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(a(k) / f.a(k), 1.0, 1e-10);
  }
}

TEST(Iwasawa, RejectsWrongDeterminant) {
  EXPECT_THROW(iwasawa(2.0 * ComplexMatrix::Identity(2, 2)), InvalidArgument);
}

TEST(APower, IdentityGivesOne) {
  const auto rs = RootSystem::build(Series::A, 2);
  const Weight mu(std::vector<cplx>{{0.3, -1.0}, {2.0, 0.7}});
  EXPECT_EQ(a_power(iwasawa(ComplexMatrix::Identity(3, 3)), mu), cplx(1.0));
}

TEST(APower, RankOneUnitary) {
  const auto rs = RootSystem::build(Series::A, 1);
  const double s = 0.8, r = 0.37;
  ComplexMatrix g(2, 2);
  const double q = std::sqrt(1 - r * r);
  g << cplx(r * std::cos(1.0), r * std::sin(1.0)), q, -q, cplx(r * std::cos(1.0), -r * std::sin(1.0));
  const Weight mu = cplx(0.0, -s) * rs.weight_of_root(Root{1});
  const cplx expected = std::pow(cplx(r), cplx(0.0, -2.0 * s));
  EXPECT_LT(std::abs(a_power(ldu(g), mu) - expected), 1e-14);
  EXPECT_NEAR(std::abs(a_power(ldu(g), mu)), 1.0, 1e-14);
}

TEST(APower, TwoDeltaAgainstDirectRootProduct) {
  const auto rs = RootSystem::build(Series::A, 3);
  const Weight two_delta = 2.0 * rs.weyl_vector();
  for (int i = 0; i < 100; ++i) {
    RngStream rng(51, static_cast<std::uint64_t>(i));
    const auto f = iwasawa(det_one(random_gaussian(4, rng)));
    // a^{e_p - e_q} = a_p / a_q
    double direct = 1.0;
    for (const auto& alpha : rs.positive_roots()) {
      const auto [p, q] = root_support(alpha);
      direct *= f.a(p) / f.a(q);
    }
    EXPECT_LT(std::abs(a_power(f, two_delta) - direct), 1e-12 * direct);
  }
}

TEST(ComponentOf, Examples) {
  const auto s2 = SymmetricSpaceSpec::grassmannian(1, 1);
  EXPECT_TRUE(component_of(ldu(ComplexMatrix::Identity(2, 2)), s2).is_identity());
  // near -identity: u = a small perturbation of the rotation
  ComplexMatrix u(2, 2);
  const double t = std::numbers::pi / 2 - 0.05;
  u << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
  const auto w = component_of(ldu(cartan_embed(u, s2)), s2);
  EXPECT_EQ(w.signs, (std::vector<int>{-1, -1}));
}

TEST(ComponentOf, RandomSamplesAreAdmissible) {
  const auto spec = SymmetricSpaceSpec::grassmannian(1, 2);
  for (int i = 0; i < 20000; ++i) {
    RngStream rng(61, static_cast<std::uint64_t>(i));
    const auto f = ldu(cartan_embed(haar_unitary(3, rng), spec));
    EXPECT_TRUE(is_admissible(spec, component_of(f, spec)));
    // upper factor is J l* J
    const ComplexMatrix j = diagonal_matrix(spec.involution_signs());
    const double scale = std::max({1.0, f.l.cwiseAbs().maxCoeff(), f.u.cwiseAbs().maxCoeff()});
    EXPECT_LT(max_abs_diff(f.u, j * f.l.adjoint() * j) / (scale * scale), 1e-10);
  }
}

TEST(ComponentOf, NonCartanInputRaisesPhaseError) {
  const auto spec = SymmetricSpaceSpec::grassmannian(1, 1);
  ComplexMatrix g(2, 2);
  g << std::exp(I * 0.5), 0.0, 0.0, std::exp(-I * 0.5);
  EXPECT_THROW(component_of(ldu(g), spec), PhaseError);
}
