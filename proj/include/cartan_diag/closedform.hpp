#pragma once

// Closed-form evaluations: the c-function of the group case, the
// per-component product for an inner symmetric space, their sum, the
// Duistermaat-Heckman denominator at the basepoint, and the fixed-point sum
// for the eigenfunction integral at a diagonal element a.
//
// Every evaluation returns a FormulaValue carrying its factor audit trail.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cartan_diag/rootsys.hpp"
#include "cartan_diag/symspace.hpp"

namespace cartan {

/// Absolute tolerance on a denominator pairing before it counts as a pole.
inline constexpr double kPoleTolerance = 1e-12;

struct FactorRecord {
  Root root;
  cplx numerator;
  cplx denominator;
};

struct FormulaValue {
  std::string label;
  cplx value{};
  /// Scalar multiplying the product of factors (1/M, or an exponential).
  cplx prefactor{1.0};
  std::vector<FactorRecord> factors;
  /// Non-empty when the value is a sum of sub-terms.
  std::vector<FormulaValue> terms;

  /// Value rebuilt from the audit trail (product, or sum of terms).
  cplx recomputed() const;
};

/// prod_{alpha > 0} <2 delta, alpha> / <2 delta - i lambda, alpha>.
FormulaValue c_function(const RootSystem& rs, const Weight& lambda);

/// Exact value of the c-function at lambda = i nu for an integral weight
/// nu (fundamental coordinates), as a reduced fraction.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Fraction&) const = default;
};
Fraction c_function_exact(const RootSystem& rs, std::span<const std::int64_t> nu);

/// (1/M) prod over noncompact roots for Ad(w) Theta of
/// <delta, alpha> / <delta - i lambda, alpha>.
FormulaValue component_term(const SymmetricSpaceSpec& spec, const ComponentIndex& w, const Weight& lambda);

/// Sum of component_term over all components.
FormulaValue diagonal_fourier(const SymmetricSpaceSpec& spec, const Weight& lambda);

/// prod over noncompact roots of <delta + Lambda, alpha>. A vanishing
/// factor makes the value 0; it is not an error.
cplx dh_denominator(const SymmetricSpaceSpec& spec, const ComponentIndex& w, const Weight& Lambda);

/// Fixed-point sum over W(K, T0) / W(C_K(a), T0) of
///   a1(w a)^{-2(delta + Lambda)} / prod <(delta + Lambda)^{w^{-1}}, alpha>
/// where the product runs over noncompact positive roots and the compact
/// positive roots alpha with a^alpha != 1. a1(w a) is the Iwasawa middle
/// factor of the matrix w a. `a` lists the positive diagonal entries of a
/// (product 1).
FormulaValue eigenfunction_sum(const SymmetricSpaceSpec& spec, std::span<const double> a, const Weight& Lambda);

/// Coordinates of an A-series weight on e_1, ..., e_n (last entry 0).
std::vector<cplx> epsilon_coordinates(const Weight& lambda);
Weight weight_from_epsilon(std::span<const cplx> eps);

}  // namespace cartan
