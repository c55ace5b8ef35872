#include "cartan_diag/closedform.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/LU>

#include "cartan_diag/errors.hpp"
#include "cartan_diag/matreal.hpp"

namespace cartan {

namespace {

const cplx kI(0.0, 1.0);

std::string root_str(const Root& alpha) {
  std::string s = "(";
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(alpha[i]);
  }
  return s + ")";
}

void check_pole(const cplx& den, const Root& alpha, const char* where) {
  if (std::abs(den) < kPoleTolerance) {
    throw PoleError(std::string(where) + ": pole at root " + root_str(alpha) + " (denominator " +
                    std::to_string(std::abs(den)) + ")");
  }
}

void require_inner(const SymmetricSpaceSpec& spec, const char* where) {
  if (spec.group_case()) throw InvalidArgument(std::string(where) + ": " + spec.name() + " is a group case");
}

}  // namespace

cplx FormulaValue::recomputed() const {
  if (!terms.empty()) {
    cplx s = 0.0;
    for (const auto& t : terms) s += t.recomputed();
    return s;
  }
  cplx p = prefactor;
  for (const auto& f : factors) p *= f.numerator / f.denominator;
  return p;
}

FormulaValue c_function(const RootSystem& rs, const Weight& lambda) {
  if (lambda.rank() != rs.rank()) throw InvalidArgument("c_function: weight rank does not match root system");
  const Weight two_delta = 2.0 * rs.weyl_vector();
  const Weight shifted = two_delta - kI * lambda;
  FormulaValue v;
  v.label = "c(" + rs.label() + ")";
  cplx p = 1.0;
  for (const Root& alpha : rs.positive_roots()) {
    const cplx num = rs.pairing(two_delta, alpha);
    const cplx den = rs.pairing(shifted, alpha);
    check_pole(den, alpha, "c_function");
    v.factors.push_back({alpha, num, den});
    p *= num / den;
  }
  v.value = p;
  return v;
}

Fraction c_function_exact(const RootSystem& rs, std::span<const std::int64_t> nu) {
  if (static_cast<int>(nu.size()) != rs.rank()) throw InvalidArgument("c_function_exact: rank mismatch");
  // lambda = i nu gives 2 delta - i lambda = 2 delta + nu; pair through coroots
  // so every factor is an integer ratio (the form scale cancels per root).
  Fraction f{1, 1};
  const Weight two_delta = 2.0 * rs.weyl_vector();
  std::vector<double> nu_d(nu.begin(), nu.end());
  const Weight nu_w = Weight::real(nu_d);
  for (const Root& alpha : rs.positive_roots()) {
    const auto num = static_cast<std::int64_t>(std::llround(rs.coroot_value(two_delta, alpha).real()));
    const auto den = static_cast<std::int64_t>(std::llround(rs.coroot_value(two_delta + nu_w, alpha).real()));
    if (den == 0) throw PoleError("c_function_exact: pole at root " + root_str(alpha));
    f.num *= num;
    f.den *= den;
    const std::int64_t g = std::gcd(f.num, f.den);
    f.num /= g;
    f.den /= g;
  }
  if (f.den < 0) {
    f.num = -f.num;
    f.den = -f.den;
  }
  return f;
}

FormulaValue component_term(const SymmetricSpaceSpec& spec, const ComponentIndex& w, const Weight& lambda) {
  require_inner(spec, "component_term");
  if (!is_admissible(spec, w)) throw InvalidArgument("component_term: " + w.str() + " is not an admissible component");
  const RootSystem& rs = spec.ambient();
  if (lambda.rank() != rs.rank()) throw InvalidArgument("component_term: weight rank does not match the space");
  const Weight delta = rs.weyl_vector();
  const Weight shifted = delta - kI * lambda;
  FormulaValue v;
  v.label = w.str();
  v.prefactor = 1.0 / static_cast<double>(order_M(spec));
  cplx p = v.prefactor;
  for (const Root& alpha : noncompact_roots(spec, w)) {
    const cplx num = rs.pairing(delta, alpha);
    const cplx den = rs.pairing(shifted, alpha);
    check_pole(den, alpha, "component_term");
    v.factors.push_back({alpha, num, den});
    p *= num / den;
  }
  v.value = p;
  return v;
}

FormulaValue diagonal_fourier(const SymmetricSpaceSpec& spec, const Weight& lambda) {
  require_inner(spec, "diagonal_fourier");
  FormulaValue v;
  v.label = spec.name();
  for (const auto& w : enumerate_components(spec)) {
    v.terms.push_back(component_term(spec, w, lambda));
    v.value += v.terms.back().value;
  }
  return v;
}

cplx dh_denominator(const SymmetricSpaceSpec& spec, const ComponentIndex& w, const Weight& Lambda) {
  require_inner(spec, "dh_denominator");
  const RootSystem& rs = spec.ambient();
  if (Lambda.rank() != rs.rank()) throw InvalidArgument("dh_denominator: weight rank does not match the space");
  const Weight shifted = rs.weyl_vector() + Lambda;
  cplx p = 1.0;
  for (const Root& alpha : noncompact_roots(spec, w)) p *= rs.pairing(shifted, alpha);
  return p;
}

std::vector<cplx> epsilon_coordinates(const Weight& lambda) {
  const int r = lambda.rank();
  std::vector<cplx> eps(static_cast<std::size_t>(r + 1));
  for (int i = r - 1; i >= 0; --i) eps[static_cast<std::size_t>(i)] = eps[static_cast<std::size_t>(i + 1)] + lambda[i];
  return eps;
}

Weight weight_from_epsilon(std::span<const cplx> eps) {
  if (eps.size() < 2) throw InvalidArgument("weight_from_epsilon: need at least two coordinates");
  std::vector<cplx> c(eps.size() - 1);
  for (std::size_t i = 0; i + 1 < eps.size(); ++i) c[i] = eps[i] - eps[i + 1];
  return Weight(std::move(c));
}

FormulaValue eigenfunction_sum(const SymmetricSpaceSpec& spec, std::span<const double> a, const Weight& Lambda) {
  require_inner(spec, "eigenfunction_sum");
  const RootSystem& rs = spec.ambient();
  const int n = spec.n(), k = spec.k();
  if (static_cast<int>(a.size()) != n) throw InvalidArgument("eigenfunction_sum: a has the wrong length");
  if (Lambda.rank() != rs.rank()) throw InvalidArgument("eigenfunction_sum: weight rank does not match the space");
  double prod = 1.0;
  for (double x : a) {
    if (!(x > 0.0)) throw InvalidArgument("eigenfunction_sum: entries of a must be positive");
    prod *= x;
  }
  if (std::abs(prod - 1.0) > 1e-10) throw InvalidArgument("eigenfunction_sum: entries of a must have product 1");

  const Weight shifted = rs.weyl_vector() + Lambda;
  const std::vector<cplx> eps = epsilon_coordinates(shifted);
  ComponentIndex identity;
  identity.signs.assign(static_cast<std::size_t>(n), 1);

  // roots of the tangent space at a fixed point: noncompact ones and the
  // compact ones not in the centralizer of a
  std::vector<Root> roots;
  for (const Root& alpha : rs.positive_roots()) {
    const auto [p, q] = root_support(alpha);
    if (classify_root(spec, identity, alpha) == RootType::noncompact ||
        a[static_cast<std::size_t>(p)] != a[static_cast<std::size_t>(q)]) {
      roots.push_back(alpha);
    }
  }

  // coset representatives of W(K) / W(C_K(a)): distinct rearrangements of
  // a inside each block, realized by the order-preserving permutation
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  auto less_in_a = [&](int x, int y) {
    const double ax = a[static_cast<std::size_t>(x)], ay = a[static_cast<std::size_t>(y)];
    return ax != ay ? ax < ay : x < y;
  };
  std::vector<std::vector<int>> block_arrangements[2];
  for (int b = 0; b < 2; ++b) {
    const int lo = b == 0 ? 0 : k, hi = b == 0 ? k : n;
    std::vector<int> idx(perm.begin() + lo, perm.begin() + hi);
    std::sort(idx.begin(), idx.end(), less_in_a);
    std::vector<std::vector<double>> seen;
    do {
      std::vector<double> vals;
      for (int i : idx) vals.push_back(a[static_cast<std::size_t>(i)]);
      if (std::find(seen.begin(), seen.end(), vals) == seen.end()) {
        seen.push_back(vals);
        block_arrangements[b].push_back(idx);
      }
    } while (std::next_permutation(idx.begin(), idx.end(), less_in_a));
  }

  FormulaValue v;
  v.label = "eigenfunction_sum(" + spec.name() + ")";
  for (const auto& top : block_arrangements[0]) {
    for (const auto& bottom : block_arrangements[1]) {
      // position i of w a carries a_{pi(i)}
      std::vector<int> pi(top);
      pi.insert(pi.end(), bottom.begin(), bottom.end());

      ComplexMatrix wa = ComplexMatrix::Zero(n, n);
      for (int i = 0; i < n; ++i) wa(i, pi[static_cast<std::size_t>(i)]) = a[static_cast<std::size_t>(pi[static_cast<std::size_t>(i)])];
      if (wa.determinant().real() < 0.0) wa.row(0) *= -1.0;
      const IwasawaFactors f = iwasawa(wa);

      FormulaValue term;
      term.label = "w=(";
      for (int i = 0; i < n; ++i) term.label += (i ? "," : "") + std::to_string(pi[static_cast<std::size_t>(i)] + 1);
      term.label += ")";
      term.prefactor = a_power(f, -2.0 * shifted);

      std::vector<cplx> nu(eps.size());
      for (std::size_t i = 0; i < eps.size(); ++i) nu[i] = eps[static_cast<std::size_t>(pi[i])];
      const Weight twisted = weight_from_epsilon(nu);
      cplx p = term.prefactor;
      for (const Root& alpha : roots) {
        const cplx den = rs.pairing(twisted, alpha);
        check_pole(den, alpha, "eigenfunction_sum");
        term.factors.push_back({alpha, 1.0, den});
        p /= den;
      }
      term.value = p;
      v.value += p;
      v.terms.push_back(std::move(term));
    }
  }
  return v;
}

}  // namespace cartan
