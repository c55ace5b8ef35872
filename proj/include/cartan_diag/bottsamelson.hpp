#pragma once

// SL2-factor coordinates on Schubert cells for type A.
//
// For a reduced word w = r_n ... r_1 the point attached to factors
// (g_1, ..., g_n) is x = r_n i_n(g_n) ... r_1 i_1(g_1), where i_j embeds SL2
// into rows and columns (i_j, i_j + 1) and r_j is the embedded rotation
// [[0, 1], [-1, 0]]. Lowest-weight coefficients are leading principal
// minors, and the w-translate of sigma_lambda is evaluated at W^{-1} x with
// W = r_n ... r_1.

#include <span>
#include <vector>

#include <Eigen/Core>

#include "cartan_diag/matreal.hpp"
#include "cartan_diag/rootsys.hpp"

namespace cartan {

class SL2Factor {
 public:
  /// Throws InvalidArgument unless ad - bc = 1 within 1e-12.
  SL2Factor(cplx a, cplx b, cplx c, cplx d);
  static SL2Factor identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static SL2Factor rotation() { return {0.0, 1.0, -1.0, 0.0}; }
  /// Random factor with a != 0: a, b, c complex Gaussian, d = (1 + bc) / a.
  static SL2Factor random(RngStream& rng);

  const Eigen::Matrix2cd& matrix() const { return g_; }
  cplx a() const { return g_(0, 0); }
  bool in_sl2_prime() const { return g_(0, 0) != cplx(0.0); }

 private:
  Eigen::Matrix2cd g_;
};

struct ParabolicWordData {
  RootSystem rs;
  WeylWord word;
  /// Simple roots (1-based) on which lambda is allowed to vanish.
  std::vector<int> phi;
  /// tau_j = r_1 ... r_{j-1}(alpha_{i_j})
  std::vector<Root> tau;

  /// Checks that rs is of type A and the word is reduced.
  static ParabolicWordData make(const RootSystem& rs, const WeylWord& word, std::vector<int> phi = {});

  /// lambda_j = -lambda(h_{tau_j}). Throws InvalidArgument unless lambda is
  /// integral, antidominant, zero exactly on phi.
  std::vector<long long> exponents(const Weight& lambda) const;
};

/// Embeds g into rows/columns (i, i+1) of a (rank+1)-square identity.
ComplexMatrix sl2_embed(const RootSystem& rs, int i, const Eigen::Matrix2cd& g);
ComplexMatrix sl2_embed(const RootSystem& rs, int i, const SL2Factor& g);

/// W = r_n ... r_1 as a signed permutation matrix.
ComplexMatrix word_matrix(const ParabolicWordData& data);

ComplexMatrix bs_point(const ParabolicWordData& data, std::span<const SL2Factor> factors);

/// j-th leading principal minor by cofactor expansion over column
/// subsets (exact whenever the entries are small Gaussian integers).
cplx sigma_eval(const ComplexMatrix& g, int j);

/// sigma_lambda^w(x) = prod_j Delta_j(W^{-1} x)^{-lambda(h_j)}.
cplx sigma_translated(const ParabolicWordData& data, const ComplexMatrix& x, const Weight& lambda);

/// |LHS - RHS| / max(1, |RHS|) for the coordinate identity
///   sigma_lambda^w(bs_point) = prod_j a_j^{lambda_j}.
double verify_a26(const ParabolicWordData& data, std::span<const SL2Factor> factors, const Weight& lambda);

/// Z^{-1} prod over tau_k of 1 / (2 delta - i lambda)(h_{tau_k}) with
/// Z = prod 1 / (2 delta)(h_{tau_k}), tau_k the tau-inversion roots of the
/// longest word.
cplx factored_c_integral(const RootSystem& rs, const Weight& lambda);

}  // namespace cartan
