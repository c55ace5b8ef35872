#include "cartan_diag/symspace.hpp"

#include <algorithm>
#include <charconv>

#include "cartan_diag/errors.hpp"

namespace cartan {

bool ComponentIndex::is_identity() const {
  return std::all_of(signs.begin(), signs.end(), [](int s) { return s == 1; });
}

ComponentIndex ComponentIndex::negated() const {
  ComponentIndex out = *this;
  for (int& s : out.signs) s = -s;
  return out;
}

std::string ComponentIndex::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (i) s += ',';
    s += signs[i] > 0 ? '+' : '-';
  }
  return s + ")";
}

namespace {

std::int64_t factorial(int n) {
  std::int64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

int parse_int(std::string_view text, const std::string& key) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidArgument("malformed space name '" + key + "'");
  }
  return v;
}

}  // namespace

SymmetricSpaceSpec::SymmetricSpaceSpec(std::string name, bool group_case, int k, int m)
    : name_(std::move(name)),
      group_case_(group_case),
      n_(k + m),
      k_(k),
      m_(m),
      ambient_(RootSystem::build(Series::A, k + m - 1)) {
  j_.assign(static_cast<std::size_t>(n_), 1);
  if (!group_case_) std::fill(j_.begin() + k_, j_.end(), -1);
}

SymmetricSpaceSpec SymmetricSpaceSpec::group(int n) {
  if (n < 2 || n > 8) throw InvalidArgument("group case requires 2 <= n <= 8");
  return SymmetricSpaceSpec("group:su" + std::to_string(n), true, n, 0);
}

SymmetricSpaceSpec SymmetricSpaceSpec::grassmannian(int k, int m) {
  if (k < 1 || m < 1 || k + m > 8) throw InvalidArgument("Grassmannian requires k, m >= 1 and k + m <= 8");
  return SymmetricSpaceSpec("gr:" + std::to_string(k) + "," + std::to_string(m), false, k, m);
}

SymmetricSpaceSpec SymmetricSpaceSpec::from_name(const std::string& name) {
  const std::string_view v(name);
  if (v.starts_with("group:su")) return group(parse_int(v.substr(8), name));
  if (v.starts_with("gr:")) {
    const auto body = v.substr(3);
    const auto comma = body.find(',');
    if (comma == std::string_view::npos) throw InvalidArgument("malformed space name '" + name + "'");
    return grassmannian(parse_int(body.substr(0, comma), name), parse_int(body.substr(comma + 1), name));
  }
  throw InvalidArgument("unknown space '" + name + "' (try `spaces`)");
}

std::int64_t SymmetricSpaceSpec::weyl_order_k() const {
  if (group_case_) return factorial(n_);
  return factorial(k_) * factorial(m_);
}

std::vector<std::string> catalog_names() { return {"group:su2", "group:su3", "gr:1,1", "gr:1,2", "gr:2,2"}; }

std::pair<int, int> root_support(const Root& alpha) {
  int p = -1, q = -1;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 1) {
      if (p < 0) p = static_cast<int>(i);
      else if (q != -1) throw InvalidArgument("not an A-type root");
    } else if (alpha[i] == 0) {
      if (p >= 0 && q < 0) q = static_cast<int>(i);
    } else {
      throw InvalidArgument("not a positive A-type root");
    }
  }
  if (p < 0) throw InvalidArgument("zero vector is not a root");
  if (q < 0) q = static_cast<int>(alpha.size());
  // ones must be contiguous on [p, q)
  for (std::size_t i = static_cast<std::size_t>(q); i < alpha.size(); ++i) {
    if (alpha[i] != 0) throw InvalidArgument("not an A-type root");
  }
  return {p, q};
}

bool is_admissible(const SymmetricSpaceSpec& spec, const ComponentIndex& w) {
  if (w.size() != spec.n()) return false;
  int minus = 0, plus_wj = 0;
  for (int i = 0; i < spec.n(); ++i) {
    const int s = w.signs[static_cast<std::size_t>(i)];
    if (s != 1 && s != -1) return false;
    if (s < 0) ++minus;
    if (s * spec.involution_signs()[static_cast<std::size_t>(i)] > 0) ++plus_wj;
  }
  if (minus % 2 != 0) return false;
  return plus_wj == spec.k();
}

std::vector<ComponentIndex> enumerate_components(const SymmetricSpaceSpec& spec) {
  if (spec.group_case()) {
    throw InvalidArgument("enumerate_components: " + spec.name() + " is a group case (single component)");
  }
  const int n = spec.n();
  std::vector<ComponentIndex> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    ComponentIndex w;
    w.signs.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) w.signs[static_cast<std::size_t>(i)] = (mask >> (n - 1 - i)) & 1u ? -1 : 1;
    if (is_admissible(spec, w)) out.push_back(std::move(w));
  }
  std::sort(out.begin(), out.end(), [](const ComponentIndex& a, const ComponentIndex& b) {
    return a.signs > b.signs;  // identity first
  });
  if (static_cast<std::int64_t>(out.size()) != order_M(spec)) {
    throw NumericalError("component count " + std::to_string(out.size()) + " disagrees with M = " +
                         std::to_string(order_M(spec)) + " for " + spec.name());
  }
  return out;
}

RootType classify_root(const SymmetricSpaceSpec& spec, const ComponentIndex& w, const Root& alpha) {
  if (w.size() != spec.n()) throw InvalidArgument("component index has wrong length");
  const auto [p, q] = root_support(alpha);
  const auto& j = spec.involution_signs();
  const int chi = w.character(p, q) * j[static_cast<std::size_t>(p)] * j[static_cast<std::size_t>(q)];
  return chi > 0 ? RootType::compact : RootType::noncompact;
}

std::vector<Root> noncompact_roots(const SymmetricSpaceSpec& spec, const ComponentIndex& w) {
  std::vector<Root> out;
  for (const Root& alpha : spec.ambient().positive_roots()) {
    if (classify_root(spec, w, alpha) == RootType::noncompact) out.push_back(alpha);
  }
  return out;
}

std::int64_t order_M(const SymmetricSpaceSpec& spec) {
  if (spec.group_case()) throw InvalidArgument("order_M: " + spec.name() + " is a group case");
  return spec.ambient().weyl_order() / spec.weyl_order_k();
}

}  // namespace cartan
