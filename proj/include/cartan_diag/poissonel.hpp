#pragma once

// The Evens-Lu Poisson structure on G0/K for G0 = SU(k, m).
//
// Conventions:
//  * p is spanned by the Hermitian block-off-diagonal matrices. The basis
//    lists, for each pair (a, b) with a in the first block and b in the
//    second, i(E_ab - E_ba)/sqrt2 and then (E_ab + E_ba)/sqrt2. It is
//    orthonormal for the trace form <X, Y> = Re tr(XY); the trace form
//    replaces the Killing form, to which it is proportional on su(n).
//  * sigma(X) = -J X* J, and pr(x) = sigma(x_+) + i Im(x_0) + x_+ where x_+
//    is the strictly upper triangular part and x_0 the diagonal.
//  * Omega(g0) x = p-part of g0^{-1} pr(i g0 x g0^{-1}) g0.
//  * The symplectic form is omega(u, v) = -<Omega^{-1} u, v>; with this
//    sign mu_X(g0) = Re tr(i log a(g0) X) is a momentum map for the left
//    action of the diagonal torus.

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "cartan_diag/matreal.hpp"

namespace cartan {

class NoncompactPoint {
 public:
  /// Throws InvalidArgument unless g0* J g0 = J and det g0 = 1 (to 1e-10,
  /// relative to |g0|^2).
  NoncompactPoint(int k, int m, const ComplexMatrix& g0);

  int k() const { return k_; }
  int m() const { return m_; }
  int n() const { return k_ + m_; }
  const ComplexMatrix& g0() const { return g0_; }
  const IwasawaFactors& iwasawa_factors() const { return iw_; }
  std::vector<int> involution_signs() const;

 private:
  int k_, m_;
  ComplexMatrix g0_;
  IwasawaFactors iw_;
};

struct TangentOperator {
  int k = 0, m = 0;
  Eigen::MatrixXd matrix;  // in p_basis(k, m)
};

std::vector<ComplexMatrix> p_basis(int k, int m);

/// Coordinates of a p-element in p_basis.
Eigen::VectorXd p_coordinates(const ComplexMatrix& x, int k, int m);

/// exp of a Hermitian matrix.
ComplexMatrix hermitian_exp(const ComplexMatrix& x);

/// exp(x) for a random x in p with |x| uniform in [0, max_norm].
NoncompactPoint random_p_point(int k, int m, RngStream& rng, double max_norm = 2.0);

/// Random element of K = S(U(k) x U(m)).
ComplexMatrix random_k_element(int k, int m, RngStream& rng);

/// Zero the diagonal blocks.
ComplexMatrix p_part(const ComplexMatrix& x, int k);

TangentOperator evens_lu_operator(const NoncompactPoint& p);

/// Matrix of Ad(k) on p in p_basis.
Eigen::MatrixXd ad_on_p(const ComplexMatrix& k_elem, int k, int m);

/// max |Omega(g0 k) - Ad(k)^{-1} Omega(g0) Ad(k)|.
double equivariance_residual(const NoncompactPoint& p, const ComplexMatrix& k_elem);

double skew_residual(const TangentOperator& op);

/// Pfaffian by recursive expansion along the first row.
double pfaffian(const Eigen::MatrixXd& a);

/// |Pf(Omega) - a^{2 delta}| / a^{2 delta}.
double pfaffian_residual(const NoncompactPoint& p);

/// max over basis directions y of |central difference of mu_X along y -
/// omega(X_M, y)|. X = i diag(d) with d real and traceless. Throws
/// InvalidArgument for h outside [1e-6, 1e-3] and NumericalError when the
/// residual grows as h shrinks (cancellation). `flip_sign` evaluates the
/// opposite orientation of omega.
double momentum_residual(const NoncompactPoint& p, std::span<const double> d, double h, bool flip_sign = false);

/// Psi(g0) = phi(u(g0)) = u J u* J.
ComplexMatrix psi_map(const NoncompactPoint& p);
ComplexMatrix psi_map(const ComplexMatrix& g0, int k, int m);

/// sqrt(det Gram) of the right-translated central-difference images of
/// the p-basis under Psi, divided by a_phi^{2 delta} of Psi(g0).
double jacobian_ratio(const NoncompactPoint& p, double h = 1e-4);

/// max_j | |d_j(LDU of Psi(g0))| - a_j^{-2} | / a_j^{-2}.
double a_phi_two_ways_residual(const NoncompactPoint& p);

/// Largest decrease of any log Delta_j(g g*) along g = exp(t y), t in
/// [0, t_max] on `steps` equal steps (0 when all are nondecreasing).
double ray_monotonicity_violation(const ComplexMatrix& y, int k, int m, double t_max = 2.0, int steps = 64);

}  // namespace cartan
