#include "cartan_diag/matreal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/LU>
#include <Eigen/QR>

#include "cartan_diag/errors.hpp"

namespace cartan {

namespace {

void require_square(const ComplexMatrix& g, const char* what) {
  if (g.rows() != g.cols() || g.rows() < 1 || g.rows() > kMaxDim) {
    throw InvalidArgument(std::string(what) + ": expected a square matrix of size 1..8");
  }
}

double max_abs(const ComplexMatrix& m) {
  double r = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) r = std::max(r, std::abs(m(i, j)));
  return r;
}

ComplexMatrix j_conjugate(const ComplexMatrix& g, std::span<const int> j) {
  ComplexMatrix out = g;
  for (Eigen::Index c = 0; c < g.cols(); ++c)
    for (Eigen::Index r = 0; r < g.rows(); ++r)
      out(r, c) *= static_cast<double>(j[static_cast<std::size_t>(r)] * j[static_cast<std::size_t>(c)]);
  return out;
}

// Q R = m with R_kk > 0.
void phase_fixed_qr(const ComplexMatrix& m, ComplexMatrix& q, ComplexMatrix& r) {
  Eigen::HouseholderQR<ComplexMatrix> qr(m);
  q = qr.householderQ();
  r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    const double mod = std::abs(r(k, k));
    const cplx ph = mod > 0.0 ? r(k, k) / mod : cplx(1.0);
    q.col(k) *= ph;
    r.row(k) *= std::conj(ph);
  }
}

}  // namespace

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return max_abs(a - b); }

double unitary_residual(const ComplexMatrix& g) {
  require_square(g, "unitary_residual");
  return max_abs(g * g.adjoint() - ComplexMatrix::Identity(g.rows(), g.cols()));
}

double special_residual(const ComplexMatrix& g) {
  require_square(g, "special_residual");
  return std::abs(g.determinant() - 1.0);
}

double cartan_residual(const ComplexMatrix& g, std::span<const int> j) {
  require_square(g, "cartan_residual");
  if (static_cast<Eigen::Index>(j.size()) != g.rows()) throw InvalidArgument("cartan_residual: J has wrong size");
  return max_abs(g.adjoint() - j_conjugate(g, j));
}

double cartan_residual(const ComplexMatrix& g, const SymmetricSpaceSpec& spec) {
  return cartan_residual(g, spec.involution_signs());
}

bool is_unitary(const ComplexMatrix& g, double tol) { return unitary_residual(g) <= tol; }
bool is_special(const ComplexMatrix& g, double tol) { return special_residual(g) <= tol; }
bool is_cartan_symmetric(const ComplexMatrix& g, const SymmetricSpaceSpec& spec, double tol) {
  return cartan_residual(g, spec) <= tol;
}

ComplexMatrix diagonal_matrix(std::span<const int> signs) {
  const auto n = static_cast<Eigen::Index>(signs.size());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) out(i, i) = static_cast<double>(signs[static_cast<std::size_t>(i)]);
  return out;
}

ComplexMatrix haar_unitary(int n, RngStream& rng) {
  if (n < 1 || n > kMaxDim) throw InvalidArgument("haar_unitary: n must be in 1..8");
  for (;;) {
    ComplexMatrix z(n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) z(i, j) = rng.complex_gaussian();
    ComplexMatrix q, r;
    phase_fixed_qr(z, q, r);
    double rmin = std::abs(r(0, 0)), rmax = rmin;
    for (int k = 1; k < n; ++k) {
      rmin = std::min(rmin, std::abs(r(k, k)));
      rmax = std::max(rmax, std::abs(r(k, k)));
    }
    if (rmin > 1e-10 * rmax) return q;
  }
}

ComplexMatrix cartan_embed(const ComplexMatrix& u, const SymmetricSpaceSpec& spec) {
  if (spec.group_case()) throw InvalidArgument("cartan_embed: " + spec.name() + " has no involution");
  require_square(u, "cartan_embed");
  if (u.rows() != spec.n()) throw InvalidArgument("cartan_embed: matrix size does not match the space");
  const auto& j = spec.involution_signs();
  ComplexMatrix uj = u;
  for (Eigen::Index c = 0; c < u.cols(); ++c) uj.col(c) *= static_cast<double>(j[static_cast<std::size_t>(c)]);
  ComplexMatrix g = uj * u.adjoint();
  for (Eigen::Index c = 0; c < g.cols(); ++c) g.col(c) *= static_cast<double>(j[static_cast<std::size_t>(c)]);
  return g;
}

ComplexMatrix LDUFactors::reconstruct() const { return l * d.asDiagonal() * u; }

LDUFactors ldu(const ComplexMatrix& g, double tol) {
  require_square(g, "ldu");
  const Eigen::Index n = g.rows();
  LDUFactors f;
  f.l = ComplexMatrix::Identity(n, n);
  f.u = ComplexMatrix::Identity(n, n);
  f.d = ComplexVector::Zero(n);
  f.minors = ComplexVector::Zero(n);
  ComplexMatrix a = g;
  cplx minor = 1.0;
  double scale = 1.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    scale *= g.row(k).norm();
    const cplx pivot = a(k, k);
    minor *= pivot;
    if (!(std::abs(minor) >= tol * scale)) {
      throw NonGenericError("leading minor " + std::to_string(k + 1) + " vanishes (|Delta| = " +
                            std::to_string(std::abs(minor)) + "); matrix lies in a lower stratum");
    }
    f.d(k) = pivot;
    f.minors(k) = minor;
    for (Eigen::Index i = k + 1; i < n; ++i) f.l(i, k) = a(i, k) / pivot;
    for (Eigen::Index j = k + 1; j < n; ++j) f.u(k, j) = a(k, j) / pivot;
    for (Eigen::Index j = k + 1; j < n; ++j)
      for (Eigen::Index i = k + 1; i < n; ++i) a(i, j) -= f.l(i, k) * a(k, j);
  }
  return f;
}

ComplexMatrix IwasawaFactors::reconstruct() const { return l * a.cast<cplx>().asDiagonal() * u; }

IwasawaFactors iwasawa(const ComplexMatrix& g) {
  require_square(g, "iwasawa");
  const Eigen::Index n = g.rows();
  const cplx det = g.determinant();
  // det loses digits to cancellation when g is badly conditioned; allow for
  // that relative to the Hadamard bound
  double hadamard = 1.0;
  for (Eigen::Index r = 0; r < n; ++r) hadamard *= g.row(r).norm();
  if (!(std::abs(std::abs(det) - 1.0) <= std::max(1e-6, 1e-12 * hadamard))) {
    throw InvalidArgument("iwasawa: |det g| = " + std::to_string(std::abs(det)) + ", expected 1");
  }
  IwasawaFactors f;
  f.l = ComplexMatrix::Identity(n, n);
  f.a = RealVector::Zero(n);

  // g g* = l D l*, D = a^2
  const ComplexMatrix h = g * g.adjoint();
  bool ok = true;
  for (Eigen::Index j = 0; j < n && ok; ++j) {
    double dj = h(j, j).real();
    for (Eigen::Index k = 0; k < j; ++k) dj -= std::norm(f.l(j, k)) * f.a(k);
    if (!(dj > 0.0)) {
      ok = false;
      break;
    }
    f.a(j) = dj;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      cplx s = h(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= f.l(i, k) * std::conj(f.l(j, k)) * f.a(k);
      f.l(i, j) = s / dj;
    }
  }
  if (ok) {
    for (Eigen::Index j = 0; j < n; ++j) f.a(j) = std::sqrt(f.a(j));
    ComplexMatrix la = f.l * f.a.cast<cplx>().asDiagonal();
    f.u = la.triangularView<Eigen::Lower>().solve(g);
    if (unitary_residual(f.u) <= 1e-12) return f;
  }

  // g* = Q R  =>  g = R* Q*, R* = l a
  ComplexMatrix q, r;
  phase_fixed_qr(g.adjoint(), q, r);
  for (Eigen::Index k = 0; k < n; ++k) {
    f.a(k) = r(k, k).real();
    if (!(f.a(k) > 1e-300)) throw NumericalError("iwasawa: matrix is numerically singular");
  }
  const ComplexMatrix ra = r.adjoint();
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) f.l(i, j) = i == j ? cplx(1.0) : (i > j ? ra(i, j) / f.a(j) : cplx(0.0));
  f.u = q.adjoint();
  return f;
}

RealVector iwasawa_diagonal(const ComplexMatrix& g) {
  require_square(g, "iwasawa_diagonal");
  const Eigen::Index n = g.rows();
  const ComplexMatrix h = g * g.adjoint();
  RealVector a(n);
  double prev = 1.0;
  // |det g| = 1 fixes the last minor; computing it would cancel badly
  for (Eigen::Index k = 1; k <= n; ++k) {
    const double minor = k == n ? 1.0 : h.topLeftCorner(k, k).determinant().real();
    if (!(minor > 0.0)) throw NumericalError("iwasawa_diagonal: non-positive minor of g g*");
    a(k - 1) = std::sqrt(minor / prev);
    prev = minor;
  }
  return a;
}

cplx a_power_from_leading(std::span<const double> leading, const Weight& mu) {
  const auto r = static_cast<std::size_t>(mu.rank());
  if (leading.size() < r) throw InvalidArgument("a_power: weight rank exceeds matrix size");
  cplx exponent = 0.0;
  for (std::size_t j = 0; j < r; ++j) {
    if (!(leading[j] > 0.0)) throw NumericalError("a_power: zero diagonal entry");
    exponent += mu[static_cast<int>(j)] * std::log(leading[j]);
  }
  return std::exp(exponent);
}

cplx a_power(const LDUFactors& f, const Weight& mu) {
  std::vector<double> lead(static_cast<std::size_t>(f.minors.size()));
  for (std::size_t j = 0; j < lead.size(); ++j) lead[j] = std::abs(f.minors(static_cast<Eigen::Index>(j)));
  return a_power_from_leading(lead, mu);
}

cplx a_power(const RealVector& a, const Weight& mu) {
  std::vector<double> lead(static_cast<std::size_t>(a.size()));
  double p = 1.0;
  for (std::size_t j = 0; j < lead.size(); ++j) lead[j] = p *= a(static_cast<Eigen::Index>(j));
  return a_power_from_leading(lead, mu);
}

cplx a_power(const IwasawaFactors& f, const Weight& mu) { return a_power(f.a, mu); }

ComponentIndex component_of(const LDUFactors& f, const SymmetricSpaceSpec& spec, double tol) {
  const auto n = f.d.size();
  if (spec.group_case() || n != spec.n()) throw InvalidArgument("component_of: factors do not match the space");
  ComponentIndex w;
  w.signs.resize(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const cplx ph = f.d(k) / std::abs(f.d(k));
    if (std::abs(ph - 1.0) <= tol) {
      w.signs[static_cast<std::size_t>(k)] = 1;
    } else if (std::abs(ph + 1.0) <= tol) {
      w.signs[static_cast<std::size_t>(k)] = -1;
    } else {
      throw PhaseError("LDU phase " + std::to_string(k + 1) + " is (" + std::to_string(ph.real()) + ", " +
                       std::to_string(ph.imag()) + "), not +-1: input is not Cartan-symmetric");
    }
  }
  const ComplexMatrix expected = j_conjugate(f.l.adjoint(), spec.involution_signs());
  const double scale = std::max({1.0, max_abs(f.l), max_abs(f.u)});
  if (max_abs(f.u - expected) > 1e-8 * scale * scale) {
    throw PhaseError("LDU upper factor is not J l* J: input is not Cartan-symmetric");
  }
  return w;
}

}  // namespace cartan
