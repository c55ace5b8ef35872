#pragma once

// Monte Carlo estimates of the diagonal Fourier transforms over Haar
// measure, and a deterministic radial quadrature for the rank-one
// noncompact integral.
//
// Samples are split into fixed-size shards. Shard s draws its samples from
// RngStream(seed, i) for the sample indices i it owns, and shard results are
// reduced in shard order, so estimates are bit-identical for any number of
// worker threads (CARTAN_DIAG_THREADS caps the pool).

#include <cstdint>
#include <vector>

#include "cartan_diag/rootsys.hpp"
#include "cartan_diag/symspace.hpp"

namespace cartan {

inline constexpr std::int64_t kMinSamples = 1000;
inline constexpr std::int64_t kShardSize = 4096;

struct ComponentBin {
  ComponentIndex component;
  bool admissible = true;
  std::int64_t count = 0;
  /// count / n_samples and its binomial standard error
  double mass = 0.0;
  double mass_stderr = 0.0;
  /// mean of the integrand over the samples in this component
  cplx mean{};
  double mean_stderr_re = 0.0;
  double mean_stderr_im = 0.0;
  /// sum over the component divided by n_samples (estimates the
  /// component's contribution to the integral)
  cplx partial{};
  double partial_stderr_re = 0.0;
  double partial_stderr_im = 0.0;
};

struct MCEstimate {
  cplx mean{};
  double stderr_re = 0.0;
  double stderr_im = 0.0;
  /// max(stderr_re, stderr_im)
  double std_error = 0.0;
  std::int64_t n_samples = 0;
  std::int64_t n_rejected = 0;
  std::int64_t n_inadmissible = 0;
  std::uint64_t seed = 0;
  /// Empty for the group case.
  std::vector<ComponentBin> components;
};

/// Number of worker threads: CARTAN_DIAG_THREADS if set, else the hardware
/// concurrency.
int worker_count();

/// Estimates the integral over SU(n) of a(g)^{-i lambda}.
MCEstimate estimate_group_integral(int n, const Weight& lambda, std::int64_t n_samples, std::uint64_t seed,
                                   int threads = 0);

/// Estimates the integral over the Cartan-embedded space of
/// a_phi(g)^{-i lambda}, binned by LDU component.
MCEstimate estimate_diagonal_integral(const SymmetricSpaceSpec& spec, const Weight& lambda, std::int64_t n_samples,
                                      std::uint64_t seed, int threads = 0);

/// z-score of an estimate against a target: max over real and imaginary
/// parts of |difference| / stderr; 0 when the difference is exactly 0 and
/// infinite when only the standard error vanishes.
double z_score(cplx estimate, cplx target, double stderr_re, double stderr_im);

/// Rank-one integral over SU(1,1)/U(1) of a(g0)^{-2 delta - 2(delta - i lambda)}
/// against the invariant measure, normalized so that lambda = 0 gives 1/2.
/// Throws QuadratureError when adaptive refinement cannot reach tol.
cplx hyperbolic_quadrature(const Weight& lambda, double tol = 1e-10);

}  // namespace cartan
