#include "cartan_diag/bottsamelson.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "cartan_diag/closedform.hpp"
#include "cartan_diag/errors.hpp"

namespace cartan {

SL2Factor::SL2Factor(cplx a, cplx b, cplx c, cplx d) {
  g_ << a, b, c, d;
  if (std::abs(a * d - b * c - 1.0) > 1e-12) throw InvalidArgument("SL2Factor: determinant is not 1");
}

SL2Factor SL2Factor::random(RngStream& rng) {
  cplx a = rng.complex_gaussian();
  while (std::abs(a) < 1e-3) a = rng.complex_gaussian();
  const cplx b = rng.complex_gaussian(), c = rng.complex_gaussian();
  return {a, b, c, (1.0 + b * c) / a};
}

ParabolicWordData ParabolicWordData::make(const RootSystem& rs, const WeylWord& word, std::vector<int> phi) {
  if (rs.series() != Series::A) throw InvalidArgument("Bott-Samelson coordinates are implemented for type A only");
  for (int i : phi) {
    if (i < 1 || i > rs.rank()) throw InvalidArgument("parabolic subset index out of range");
  }
  std::sort(phi.begin(), phi.end());
  ParabolicWordData d{rs, word, std::move(phi), rs.inversion_roots(word, InversionConvention::tau)};
  d.word.reduced = true;
  return d;
}

std::vector<long long> ParabolicWordData::exponents(const Weight& lambda) const {
  if (lambda.rank() != rs.rank()) throw InvalidArgument("lambda rank does not match the root system");
  for (int i = 1; i <= rs.rank(); ++i) {
    const cplx v = lambda[i - 1];
    const double r = std::round(v.real());
    if (v.imag() != 0.0 || std::abs(v.real() - r) > 1e-12) throw InvalidArgument("lambda must be integral");
    const bool in_phi = std::binary_search(phi.begin(), phi.end(), i);
    if (in_phi ? r != 0.0 : r >= 0.0) {
      throw InvalidArgument("lambda must be antidominant, vanishing exactly on the parabolic subset");
    }
  }
  std::vector<long long> out;
  for (const Root& t : tau) out.push_back(-std::llround(rs.coroot_value(lambda, t).real()));
  return out;
}

ComplexMatrix sl2_embed(const RootSystem& rs, int i, const Eigen::Matrix2cd& g) {
  if (rs.series() != Series::A) throw InvalidArgument("sl2_embed: type A only");
  if (i < 1 || i > rs.rank()) throw InvalidArgument("sl2_embed: index " + std::to_string(i) + " out of range");
  const int n = rs.rank() + 1;
  ComplexMatrix m = ComplexMatrix::Identity(n, n);
  m.block(i - 1, i - 1, 2, 2) = g;
  return m;
}

ComplexMatrix sl2_embed(const RootSystem& rs, int i, const SL2Factor& g) { return sl2_embed(rs, i, g.matrix()); }

ComplexMatrix word_matrix(const ParabolicWordData& data) {
  const int n = data.rs.rank() + 1;
  ComplexMatrix w = ComplexMatrix::Identity(n, n);
  for (int i : data.word.letters) w = sl2_embed(data.rs, i, SL2Factor::rotation()) * w;
  return w;
}

ComplexMatrix bs_point(const ParabolicWordData& data, std::span<const SL2Factor> factors) {
  if (factors.size() != data.word.length()) throw InvalidArgument("bs_point: need one factor per letter");
  const int n = data.rs.rank() + 1;
  ComplexMatrix x = ComplexMatrix::Identity(n, n);
  for (std::size_t j = 0; j < factors.size(); ++j) {
    const int i = data.word.letters[j];
    x = sl2_embed(data.rs, i, SL2Factor::rotation()) * sl2_embed(data.rs, i, factors[j]) * x;
  }
  return x;
}

cplx sigma_eval(const ComplexMatrix& g, int j) {
  if (j < 1 || j > g.rows() || j > g.cols()) throw InvalidArgument("sigma_eval: index out of range");
  // dp[mask] = signed sum over assignments of the first popcount(mask)
  // rows to the columns in mask
  const unsigned full = 1u << j;
  std::vector<cplx> dp(full, cplx(0.0));
  dp[0] = 1.0;
  for (unsigned mask = 0; mask < full; ++mask) {
    if (dp[mask] == cplx(0.0)) continue;
    const int row = std::popcount(mask);
    if (row == j) continue;
    for (int c = 0; c < j; ++c) {
      if (mask & (1u << c)) continue;
      // inversions: already-used columns to the right of c
      const int above = std::popcount(mask >> (c + 1));
      const cplx term = dp[mask] * g(row, c);
      dp[mask | (1u << c)] += (above % 2 == 0) ? term : -term;
    }
  }
  return dp[full - 1];
}

cplx sigma_translated(const ParabolicWordData& data, const ComplexMatrix& x, const Weight& lambda) {
  if (lambda.rank() != data.rs.rank()) throw InvalidArgument("lambda rank does not match the root system");
  // W is a signed permutation, so W^{-1} = W^T exactly
  const ComplexMatrix y = word_matrix(data).transpose() * x;
  cplx p = 1.0;
  for (int j = 1; j <= data.rs.rank(); ++j) {
    const auto c = -std::llround(lambda[j - 1].real());
    if (c == 0) continue;
    p *= std::pow(sigma_eval(y, j), static_cast<int>(c));
  }
  return p;
}

double verify_a26(const ParabolicWordData& data, std::span<const SL2Factor> factors, const Weight& lambda) {
  const auto exps = data.exponents(lambda);
  const cplx lhs = sigma_translated(data, bs_point(data, factors), lambda);
  cplx rhs = 1.0;
  for (std::size_t j = 0; j < factors.size(); ++j) rhs *= std::pow(factors[j].a(), static_cast<int>(exps[j]));
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

cplx factored_c_integral(const RootSystem& rs, const Weight& lambda) {
  if (lambda.rank() != rs.rank()) throw InvalidArgument("lambda rank does not match the root system");
  const Weight two_delta = 2.0 * rs.weyl_vector();
  const Weight shifted = two_delta - cplx(0.0, 1.0) * lambda;
  cplx z_inv = 1.0, prod = 1.0;
  for (const Root& t : rs.inversion_roots(rs.longest_word(), InversionConvention::tau)) {
    const cplx den = rs.coroot_value(shifted, t);
    if (std::abs(den) < kPoleTolerance) throw PoleError("factored_c_integral: pole at a positive root");
    z_inv *= rs.coroot_value(two_delta, t);
    prod /= den;
  }
  return z_inv * prod;
}

}  // namespace cartan
