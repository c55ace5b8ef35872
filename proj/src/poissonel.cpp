#include "cartan_diag/poissonel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "cartan_diag/errors.hpp"

namespace cartan {

namespace {

const cplx kI(0.0, 1.0);

double max_abs(const ComplexMatrix& m) {
  double r = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) r = std::max(r, std::abs(m(i, j)));
  return r;
}

ComplexMatrix j_matrix(int k, int m) {
  ComplexMatrix j = ComplexMatrix::Identity(k + m, k + m);
  for (int i = k; i < k + m; ++i) j(i, i) = -1.0;
  return j;
}

void check_dims(int k, int m) {
  if (k < 1 || m < 1 || k + m > kMaxDim) throw InvalidArgument("SU(k, m) requires k, m >= 1 and k + m <= 8");
}

ComplexMatrix pr_g0(const ComplexMatrix& x, const ComplexMatrix& j) {
  const Eigen::Index n = x.rows();
  ComplexMatrix up = ComplexMatrix::Zero(n, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < c; ++r) up(r, c) = x(r, c);
  ComplexMatrix out = -j * up.adjoint() * j + up;
  for (Eigen::Index i = 0; i < n; ++i) out(i, i) += kI * x(i, i).imag();
  return out;
}

// log a_j from the Iwasawa diagonal
std::vector<double> log_a(const ComplexMatrix& g) {
  const RealVector a = iwasawa_diagonal(g);
  std::vector<double> out(static_cast<std::size_t>(a.size()));
  for (Eigen::Index i = 0; i < a.size(); ++i) out[static_cast<std::size_t>(i)] = std::log(a(i));
  return out;
}

double mu_value(const ComplexMatrix& g, std::span<const double> d) {
  // Re tr(i diag(log a) i diag(d))
  const auto la = log_a(g);
  double s = 0.0;
  for (std::size_t i = 0; i < la.size(); ++i) s -= la[i] * d[i];
  return s;
}

Weight two_delta(int n) { return 2.0 * RootSystem::build(Series::A, n - 1).weyl_vector(); }

}  // namespace

NoncompactPoint::NoncompactPoint(int k, int m, const ComplexMatrix& g0) : k_(k), m_(m), g0_(g0) {
  check_dims(k, m);
  if (g0.rows() != k + m || g0.cols() != k + m) throw InvalidArgument("NoncompactPoint: matrix size must be k + m");
  const ComplexMatrix j = j_matrix(k, m);
  const double scale = std::max(1.0, max_abs(g0) * max_abs(g0));
  if (max_abs(g0.adjoint() * j * g0 - j) > 1e-10 * scale) {
    throw InvalidArgument("NoncompactPoint: g0 does not preserve the indefinite form");
  }
  if (std::abs(g0.determinant() - 1.0) > 1e-10 * scale) throw InvalidArgument("NoncompactPoint: det g0 != 1");
  iw_ = iwasawa(g0);
}

std::vector<int> NoncompactPoint::involution_signs() const {
  std::vector<int> s(static_cast<std::size_t>(n()), 1);
  std::fill(s.begin() + k_, s.end(), -1);
  return s;
}

std::vector<ComplexMatrix> p_basis(int k, int m) {
  check_dims(k, m);
  const int n = k + m;
  const double r = 1.0 / std::numbers::sqrt2;
  std::vector<ComplexMatrix> basis;
  for (int a = 0; a < k; ++a) {
    for (int b = k; b < n; ++b) {
      ComplexMatrix e = ComplexMatrix::Zero(n, n);
      e(a, b) = kI * r;
      e(b, a) = -kI * r;
      basis.push_back(e);
      e(a, b) = r;
      e(b, a) = r;
      basis.push_back(e);
    }
  }
  return basis;
}

Eigen::VectorXd p_coordinates(const ComplexMatrix& x, int k, int m) {
  const auto basis = p_basis(k, m);
  Eigen::VectorXd c(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) c(static_cast<Eigen::Index>(i)) = (basis[i] * x).trace().real();
  return c;
}

ComplexMatrix hermitian_exp(const ComplexMatrix& x) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(x);
  if (es.info() != Eigen::Success) throw NumericalError("hermitian_exp: eigendecomposition failed");
  const ComplexMatrix v = es.eigenvectors();
  return v * es.eigenvalues().array().exp().matrix().cast<cplx>().asDiagonal() * v.adjoint();
}

ComplexMatrix p_part(const ComplexMatrix& x, int k) {
  ComplexMatrix y = x;
  const Eigen::Index n = x.rows();
  y.topLeftCorner(k, k).setZero();
  y.bottomRightCorner(n - k, n - k).setZero();
  return y;
}

NoncompactPoint random_p_point(int k, int m, RngStream& rng, double max_norm) {
  const auto basis = p_basis(k, m);
  std::vector<double> c(basis.size());
  double norm = 0.0;
  for (double& ci : c) {
    ci = rng.gaussian();
    norm += ci * ci;
  }
  const double scale = max_norm * rng.uniform() / std::sqrt(norm);
  ComplexMatrix x = ComplexMatrix::Zero(k + m, k + m);
  for (std::size_t i = 0; i < basis.size(); ++i) x += (c[i] * scale) * basis[i];
  return NoncompactPoint(k, m, hermitian_exp(x));
}

ComplexMatrix random_k_element(int k, int m, RngStream& rng) {
  check_dims(k, m);
  ComplexMatrix out = ComplexMatrix::Zero(k + m, k + m);
  out.topLeftCorner(k, k) = haar_unitary(k, rng);
  out.bottomRightCorner(m, m) = haar_unitary(m, rng);
  const cplx det = out.determinant();
  out.col(0) /= det / std::abs(det);
  return out;
}

TangentOperator evens_lu_operator(const NoncompactPoint& p) {
  const int k = p.k(), m = p.m();
  const auto basis = p_basis(k, m);
  const ComplexMatrix j = j_matrix(k, m);
  const ComplexMatrix& g = p.g0();
  const ComplexMatrix gi = g.inverse();
  const auto dim = static_cast<Eigen::Index>(basis.size());
  TangentOperator op{k, m, Eigen::MatrixXd(dim, dim)};
  for (Eigen::Index c = 0; c < dim; ++c) {
    const ComplexMatrix x = g * basis[static_cast<std::size_t>(c)] * gi;
    const ComplexMatrix z = p_part(gi * pr_g0(kI * x, j) * g, k);
    for (Eigen::Index r = 0; r < dim; ++r) op.matrix(r, c) = (basis[static_cast<std::size_t>(r)] * z).trace().real();
  }
  return op;
}

Eigen::MatrixXd ad_on_p(const ComplexMatrix& k_elem, int k, int m) {
  const auto basis = p_basis(k, m);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  const ComplexMatrix ki = k_elem.adjoint();
  Eigen::MatrixXd r(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    const ComplexMatrix y = k_elem * basis[static_cast<std::size_t>(c)] * ki;
    for (Eigen::Index i = 0; i < dim; ++i) r(i, c) = (basis[static_cast<std::size_t>(i)] * y).trace().real();
  }
  return r;
}

double equivariance_residual(const NoncompactPoint& p, const ComplexMatrix& k_elem) {
  const NoncompactPoint q(p.k(), p.m(), p.g0() * k_elem);
  const Eigen::MatrixXd ad = ad_on_p(k_elem, p.k(), p.m());
  const Eigen::MatrixXd lhs = evens_lu_operator(q).matrix;
  const Eigen::MatrixXd rhs = ad.inverse() * evens_lu_operator(p).matrix * ad;
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

double skew_residual(const TangentOperator& op) { return (op.matrix + op.matrix.transpose()).cwiseAbs().maxCoeff(); }

double pfaffian(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw InvalidArgument("pfaffian: matrix must be square");
  if (n == 0) return 1.0;
  if (n % 2 == 1) return 0.0;
  double s = 0.0;
  for (Eigen::Index j = 1; j < n; ++j) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index t = 1; t < n; ++t)
      if (t != j) idx.push_back(t);
    Eigen::MatrixXd minor(n - 2, n - 2);
    for (Eigen::Index r = 0; r < n - 2; ++r)
      for (Eigen::Index c = 0; c < n - 2; ++c)
        minor(r, c) = a(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
    const double sign = (j % 2 == 1) ? 1.0 : -1.0;
    s += sign * a(0, j) * pfaffian(minor);
  }
  return s;
}

double pfaffian_residual(const NoncompactPoint& p) {
  const double pf = pfaffian(evens_lu_operator(p).matrix);
  const double target = a_power(p.iwasawa_factors(), two_delta(p.n())).real();
  return std::abs(pf - target) / std::abs(target);
}

namespace {

double momentum_residual_at(const NoncompactPoint& p, std::span<const double> d, double h, bool flip_sign) {
  const int k = p.k(), m = p.m(), n = p.n();
  const auto basis = p_basis(k, m);
  const ComplexMatrix& g = p.g0();
  ComplexMatrix x = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) x(i, i) = kI * d[static_cast<std::size_t>(i)];
  const Eigen::VectorXd xm = p_coordinates(p_part(g.inverse() * x * g, k), k, m);
  const Eigen::VectorXd omega_x = evens_lu_operator(p).matrix.partialPivLu().solve(xm);
  const double sign = flip_sign ? 1.0 : -1.0;
  double res = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const ComplexMatrix step = h * basis[i];
    const double dmu = (mu_value(g * hermitian_exp(step), d) - mu_value(g * hermitian_exp(-step), d)) / (2.0 * h);
    res = std::max(res, std::abs(dmu - sign * omega_x(static_cast<Eigen::Index>(i))));
  }
  return res;
}

}  // namespace

double momentum_residual(const NoncompactPoint& p, std::span<const double> d, double h, bool flip_sign) {
  if (!(h >= 1e-6 && h <= 1e-3)) throw InvalidArgument("momentum_residual: h must lie in [1e-6, 1e-3]");
  if (static_cast<int>(d.size()) != p.n()) throw InvalidArgument("momentum_residual: X has the wrong size");
  double trace = 0.0;
  for (double v : d) trace += v;
  if (std::abs(trace) > 1e-12) throw InvalidArgument("momentum_residual: X must be traceless");
  const double r = momentum_residual_at(p, d, h, flip_sign);
  if (!flip_sign && r > 1e-10) {
    // truncation error shrinks with h; growth means roundoff dominates
    const double coarse = momentum_residual_at(p, d, 2.0 * h, flip_sign);
    if (r > coarse) {
      throw NumericalError("momentum_residual: step " + std::to_string(h) +
                           " too small, residual grows under refinement (cancellation)");
    }
  }
  return r;
}

ComplexMatrix psi_map(const ComplexMatrix& g0, int k, int m) {
  const ComplexMatrix u = iwasawa(g0).u;
  const ComplexMatrix j = j_matrix(k, m);
  return u * j * u.adjoint() * j;
}

ComplexMatrix psi_map(const NoncompactPoint& p) {
  const ComplexMatrix u = p.iwasawa_factors().u;
  const ComplexMatrix j = j_matrix(p.k(), p.m());
  return u * j * u.adjoint() * j;
}

double jacobian_ratio(const NoncompactPoint& p, double h) {
  if (!(h > 0.0 && h <= 1e-2)) throw InvalidArgument("jacobian_ratio: h must lie in (0, 1e-2]");
  const int k = p.k(), m = p.m();
  const auto basis = p_basis(k, m);
  const ComplexMatrix psi = psi_map(p);
  const ComplexMatrix psi_inv = psi.inverse();
  std::vector<ComplexMatrix> images;
  for (const auto& e : basis) {
    const ComplexMatrix plus = psi_map(p.g0() * hermitian_exp(h * e), k, m);
    const ComplexMatrix minus = psi_map(p.g0() * hermitian_exp(-h * e), k, m);
    images.push_back((plus - minus) / (2.0 * h) * psi_inv);
  }
  const auto dim = static_cast<Eigen::Index>(images.size());
  Eigen::MatrixXd gram(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c)
      gram(r, c) = (images[static_cast<std::size_t>(r)].adjoint() * images[static_cast<std::size_t>(c)]).trace().real();
  const double det = gram.determinant();
  if (!(det > 0.0)) throw NumericalError("jacobian_ratio: degenerate differential");
  const double a_phi_2delta = a_power(ldu(psi), two_delta(p.n())).real();
  return std::sqrt(det) / a_phi_2delta;
}

double a_phi_two_ways_residual(const NoncompactPoint& p) {
  const LDUFactors f = ldu(psi_map(p));
  const RealVector& a = p.iwasawa_factors().a;
  double res = 0.0;
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    const double expected = 1.0 / (a(j) * a(j));
    res = std::max(res, std::abs(std::abs(f.d(j)) - expected) / expected);
  }
  return res;
}

double ray_monotonicity_violation(const ComplexMatrix& y, int k, int m, double t_max, int steps) {
  check_dims(k, m);
  if (steps < 1 || !(t_max > 0.0)) throw InvalidArgument("ray_monotonicity_violation: bad sampling");
  const int n = k + m;
  std::vector<double> prev;
  double worst = 0.0;
  for (int s = 0; s <= steps; ++s) {
    const double t = t_max * s / steps;
    const ComplexMatrix g = hermitian_exp(t * y);
    const ComplexMatrix h = g * g.adjoint();
    std::vector<double> cur;
    for (int j = 1; j < n; ++j) cur.push_back(std::log(h.topLeftCorner(j, j).determinant().real()));
    if (!prev.empty()) {
      for (std::size_t j = 0; j < cur.size(); ++j) worst = std::max(worst, prev[j] - cur[j]);
    }
    prev = std::move(cur);
  }
  return worst;
}

}  // namespace cartan
