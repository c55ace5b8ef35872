#include "cartan_diag/haarmc.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <thread>

#include "cartan_diag/errors.hpp"
#include "cartan_diag/matreal.hpp"

namespace cartan {

namespace {

struct Moments {
  std::int64_t count = 0;
  double re = 0.0, im = 0.0, re2 = 0.0, im2 = 0.0;

  void add(cplx v) {
    ++count;
    re += v.real();
    im += v.imag();
    re2 += v.real() * v.real();
    im2 += v.imag() * v.imag();
  }
  void merge(const Moments& o) {
    count += o.count;
    re += o.re;
    im += o.im;
    re2 += o.re2;
    im2 += o.im2;
  }
};

struct ShardResult {
  Moments all;
  std::int64_t rejected = 0;
  std::map<std::vector<int>, Moments> bins;
};

// standard error of the mean of n values with the given sums (n >= 2)
double mean_stderr(double s, double s2, double n) {
  const double var = std::max(0.0, (s2 - s * s / n) / (n - 1.0));
  return std::sqrt(var / n);
}

using SampleFn = std::function<void(RngStream&, ShardResult&)>;

std::vector<ShardResult> run_shards(std::int64_t n_samples, std::uint64_t seed, int threads, const SampleFn& sample) {
  const std::int64_t n_shards = (n_samples + kShardSize - 1) / kShardSize;
  std::vector<ShardResult> shards(static_cast<std::size_t>(n_shards));
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};

  auto worker = [&] {
    for (;;) {
      const std::int64_t s = next.fetch_add(1);
      if (s >= n_shards || failed.load()) return;
      const std::int64_t lo = s * kShardSize, hi = std::min(n_samples, lo + kShardSize);
      try {
        for (std::int64_t i = lo; i < hi; ++i) {
          RngStream rng(seed, static_cast<std::uint64_t>(i));
          sample(rng, shards[static_cast<std::size_t>(s)]);
        }
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };

  const int t = static_cast<int>(std::clamp<std::int64_t>(threads > 0 ? threads : worker_count(), 1, n_shards));
  if (t == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < t; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return shards;
}

void check_request(const Weight& lambda, std::int64_t n_samples) {
  if (!lambda.is_real()) throw InvalidArgument("lambda must be real");
  if (n_samples < kMinSamples) throw InvalidArgument("n_samples must be at least 1000");
}

MCEstimate finish(const std::vector<ShardResult>& shards, std::int64_t n_samples, std::uint64_t seed) {
  ShardResult total;
  for (const auto& s : shards) {
    total.all.merge(s.all);
    total.rejected += s.rejected;
    for (const auto& [k, m] : s.bins) total.bins[k].merge(m);
  }
  MCEstimate e;
  e.n_samples = n_samples;
  e.n_rejected = total.rejected;
  e.seed = seed;
  const double acc = static_cast<double>(total.all.count);
  if (total.all.count < 2) throw NumericalError("fewer than two accepted samples");
  e.mean = {total.all.re / acc, total.all.im / acc};
  e.stderr_re = mean_stderr(total.all.re, total.all.re2, acc);
  e.stderr_im = mean_stderr(total.all.im, total.all.im2, acc);
  e.std_error = std::max(e.stderr_re, e.stderr_im);
  return e;
}

}  // namespace

int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("CARTAN_DIAG_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) return std::min(cap, hw);
  }
  return hw;
}

MCEstimate estimate_group_integral(int n, const Weight& lambda, std::int64_t n_samples, std::uint64_t seed,
                                   int threads) {
  check_request(lambda, n_samples);
  if (lambda.rank() != n - 1) throw InvalidArgument("lambda must have n - 1 coefficients");
  const Weight mu = cplx(0.0, -1.0) * lambda;
  auto shards = run_shards(n_samples, seed, threads, [&](RngStream& rng, ShardResult& out) {
    const ComplexMatrix u = haar_unitary(n, rng);
    try {
      out.all.add(a_power(ldu(u), mu));
    } catch (const NonGenericError&) {
      ++out.rejected;
    }
  });
  return finish(shards, n_samples, seed);
}

MCEstimate estimate_diagonal_integral(const SymmetricSpaceSpec& spec, const Weight& lambda, std::int64_t n_samples,
                                      std::uint64_t seed, int threads) {
  check_request(lambda, n_samples);
  if (spec.group_case()) throw InvalidArgument("estimate_diagonal_integral: " + spec.name() + " is a group case");
  if (lambda.rank() != spec.ambient().rank()) throw InvalidArgument("lambda rank does not match the space");
  const Weight mu = cplx(0.0, -1.0) * lambda;
  const int n = spec.n();
  auto shards = run_shards(n_samples, seed, threads, [&](RngStream& rng, ShardResult& out) {
    const ComplexMatrix g = cartan_embed(haar_unitary(n, rng), spec);
    LDUFactors f;
    try {
      f = ldu(g);
    } catch (const NonGenericError&) {
      ++out.rejected;
      return;
    }
    const ComponentIndex w = component_of(f, spec);
    const cplx v = a_power(f, mu);
    out.all.add(v);
    out.bins[w.signs].add(v);
  });

  MCEstimate e = finish(shards, n_samples, seed);
  std::map<std::vector<int>, Moments> bins;
  for (const auto& s : shards)
    for (const auto& [k, m] : s.bins) bins[k].merge(m);

  const double nn = static_cast<double>(n_samples);
  auto make_bin = [&](const ComponentIndex& w, bool admissible) {
    ComponentBin b;
    b.component = w;
    b.admissible = admissible;
    const auto it = bins.find(w.signs);
    if (it == bins.end()) return b;
    const Moments& m = it->second;
    b.count = m.count;
    b.mass = static_cast<double>(m.count) / nn;
    b.mass_stderr = std::sqrt(b.mass * (1.0 - b.mass) / nn);
    const double cnt = static_cast<double>(m.count);
    if (m.count > 0) b.mean = {m.re / cnt, m.im / cnt};
    if (m.count > 1) {
      b.mean_stderr_re = mean_stderr(m.re, m.re2, cnt);
      b.mean_stderr_im = mean_stderr(m.im, m.im2, cnt);
    }
    b.partial = {m.re / nn, m.im / nn};
    b.partial_stderr_re = mean_stderr(m.re, m.re2, nn);
    b.partial_stderr_im = mean_stderr(m.im, m.im2, nn);
    return b;
  };
  for (const auto& w : enumerate_components(spec)) e.components.push_back(make_bin(w, true));
  for (const auto& [signs, m] : bins) {
    ComponentIndex w{signs};
    if (!is_admissible(spec, w)) {
      e.n_inadmissible += m.count;
      e.components.push_back(make_bin(w, false));
    }
  }
  return e;
}

double z_score(cplx estimate, cplx target, double stderr_re, double stderr_im) {
  auto part = [](double diff, double se) {
    if (diff == 0.0) return 0.0;
    if (!(se > 0.0)) return std::numeric_limits<double>::infinity();
    return std::abs(diff) / se;
  };
  const cplx d = estimate - target;
  return std::max(part(d.real(), stderr_re), part(d.imag(), stderr_im));
}

namespace {

// Gauss-Kronrod 7/15 on [-1, 1]
constexpr std::array<double, 8> kXgk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  cplx value;
  double error;
};

template <class F>
Segment gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const cplx fc = f(c);
  cplx kron = fc * kWgk[7];
  cplx gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[static_cast<std::size_t>(j)];
    const cplx s = f(c - dx) + f(c + dx);
    kron += s * kWgk[static_cast<std::size_t>(j)];
    if (j % 2 == 1) gauss += s * kWg[static_cast<std::size_t>(j / 2)];
  }
  return {kron * h, std::abs((kron - gauss) * h)};
}

template <class F>
cplx adaptive(const F& f, double a, double b, double tol, int depth) {
  const Segment s = gk15(f, a, b);
  if (s.error <= tol) return s.value;
  if (depth >= 40) {
    throw QuadratureError("hyperbolic_quadrature: refinement failed on [" + std::to_string(a) + ", " +
                          std::to_string(b) + "], error estimate " + std::to_string(s.error));
  }
  const double c = 0.5 * (a + b);
  return adaptive(f, a, c, 0.5 * tol, depth + 1) + adaptive(f, c, b, 0.5 * tol, depth + 1);
}

constexpr double kRadiusMax = 40.0;

cplx radial_integral(const Weight& mu, double tol) {
  // geodesic radius rho: g0 = exp(rho/2 Y), g0 g0* = exp(rho Y) with Y the
  // Hermitian generator [[0,1],[1,0]]; the invariant area element is
  // sinh(rho) drho dtheta and the integrand does not depend on theta
  auto integrand = [&](double rho) -> cplx {
    ComplexMatrix g(2, 2);
    const double c = std::cosh(0.5 * rho), s = std::sinh(0.5 * rho);
    g << c, s, s, c;
    return a_power(iwasawa_diagonal(g), mu) * std::sinh(rho);
  };
  cplx total = 0.0;
  // unit-length panels keep the oscillation per panel bounded
  for (double lo = 0.0; lo < kRadiusMax; lo += 1.0) total += adaptive(integrand, lo, lo + 1.0, tol / kRadiusMax, 0);
  return total;
}

}  // namespace

cplx hyperbolic_quadrature(const Weight& lambda, double tol) {
  if (lambda.rank() != 1) throw InvalidArgument("hyperbolic_quadrature: rank-one weights only");
  if (!lambda.is_real()) throw InvalidArgument("hyperbolic_quadrature: lambda must be real");
  if (!(tol > 0.0)) throw InvalidArgument("hyperbolic_quadrature: tol must be positive");
  const RootSystem rs = RootSystem::build(Series::A, 1);
  const Weight delta = rs.weyl_vector();
  const Weight anchor_mu = -4.0 * delta;
  const Weight mu = anchor_mu + cplx(0.0, 2.0) * lambda;
  const cplx anchor = radial_integral(anchor_mu, tol * 1e-2);
  return 0.5 * radial_integral(mu, tol * 1e-2) / anchor;
}

}  // namespace cartan
