#pragma once

// Matrix realizations: Haar sampling on U(n), the Cartan embedding
// u -> u J u* J, and the LDU (Birkhoff) and Iwasawa factorizations.
//
// Haar samples are drawn on U(n) rather than SU(n). Both integrands used
// downstream are invariant under u -> zeta u for a unit scalar zeta: the
// Cartan embedding because J commutes with scalars, and |Delta_j(u)| because
// each minor only picks up the phase zeta^j. The pushforward of U(n)-Haar
// therefore agrees with that of SU(n)-Haar.

#include <span>
#include <vector>

#include <Eigen/Core>

#include "cartan_diag/rng.hpp"
#include "cartan_diag/rootsys.hpp"
#include "cartan_diag/symspace.hpp"

namespace cartan {

inline constexpr int kMaxDim = 8;
inline constexpr double kNonGenericTolerance = 1e-12;
inline constexpr double kPhaseTolerance = 1e-6;

using ComplexMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;
using ComplexVector = Eigen::Matrix<cplx, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using RealVector = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;

/// max |g g* - 1|
double unitary_residual(const ComplexMatrix& g);
/// |det g - 1|
double special_residual(const ComplexMatrix& g);
/// max |g* - J g J|
double cartan_residual(const ComplexMatrix& g, std::span<const int> j);
double cartan_residual(const ComplexMatrix& g, const SymmetricSpaceSpec& spec);

bool is_unitary(const ComplexMatrix& g, double tol = 1e-10);
bool is_special(const ComplexMatrix& g, double tol = 1e-10);
bool is_cartan_symmetric(const ComplexMatrix& g, const SymmetricSpaceSpec& spec, double tol = 1e-10);

/// Max-norm of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix diagonal_matrix(std::span<const int> signs);

ComplexMatrix haar_unitary(int n, RngStream& rng);

/// g = u J u* J. Throws InvalidArgument for the group case.
ComplexMatrix cartan_embed(const ComplexMatrix& u, const SymmetricSpaceSpec& spec);

struct LDUFactors {
  ComplexMatrix l;  // unit lower triangular
  ComplexVector d;
  ComplexMatrix u;  // unit upper triangular
  ComplexVector minors;  // Delta_1 .. Delta_n

  ComplexMatrix reconstruct() const;
};

/// Doolittle elimination without pivoting. Throws NonGenericError when
/// |Delta_k| < tol * (product of the first k row norms).
LDUFactors ldu(const ComplexMatrix& g, double tol = kNonGenericTolerance);

struct IwasawaFactors {
  ComplexMatrix l;  // unit lower triangular
  RealVector a;     // positive diagonal
  ComplexMatrix u;  // unitary

  ComplexMatrix reconstruct() const;
};

/// g = l a u via the triangular factorization of g g* = l a^2 l*, with a
/// QR-based fallback when the first route loses unitarity of u.
IwasawaFactors iwasawa(const ComplexMatrix& g);

/// Only the a-part of the Iwasawa decomposition, from the leading minors of
/// g g*. Stays accurate when g has very large entries. Assumes |det g| = 1.
RealVector iwasawa_diagonal(const ComplexMatrix& g);

/// a^mu = prod_j A_j^{mu(h_j)} where A_j = a_1 ... a_j is the modulus of
/// the j-th leading minor. `leading` holds A_1 .. A_r (r = mu.rank()).
cplx a_power_from_leading(std::span<const double> leading, const Weight& mu);
cplx a_power(const LDUFactors& f, const Weight& mu);
cplx a_power(const IwasawaFactors& f, const Weight& mu);
/// Same, for a bare positive diagonal a.
cplx a_power(const RealVector& a, const Weight& mu);

/// Sign pattern of the LDU diagonal of a Cartan-embedded matrix. Throws
/// PhaseError when a phase is farther than tol from +-1 or when the upper
/// factor is not J l* J.
ComponentIndex component_of(const LDUFactors& f, const SymmetricSpaceSpec& spec, double tol = kPhaseTolerance);

}  // namespace cartan
