#include "cartan_diag/rootsys.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "cartan_diag/errors.hpp"

namespace cartan {

// ---------------------------------------------------------------- Weight

Weight Weight::real(std::span<const double> coefficients) {
  return Weight(std::vector<cplx>(coefficients.begin(), coefficients.end()));
}

bool Weight::is_real(double tol) const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [tol](cplx c) { return std::abs(c.imag()) <= tol; });
}

static void require_same_rank(const Weight& a, const Weight& b) {
  if (a.rank() != b.rank()) {
    throw InvalidArgument("weight rank mismatch: " + std::to_string(a.rank()) + " vs " +
                          std::to_string(b.rank()));
  }
}

Weight Weight::operator+(const Weight& other) const {
  require_same_rank(*this, other);
  std::vector<cplx> out(coeffs_);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] += other.coeffs_[j];
  return Weight(std::move(out));
}

Weight Weight::operator-(const Weight& other) const {
  require_same_rank(*this, other);
  std::vector<cplx> out(coeffs_);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] -= other.coeffs_[j];
  return Weight(std::move(out));
}

Weight Weight::operator-() const { return cplx(-1.0) * *this; }

Weight operator*(cplx s, const Weight& w) {
  std::vector<cplx> out(w.coeffs_);
  for (auto& c : out) c *= s;
  return Weight(std::move(out));
}

// ------------------------------------------------------------ RootSystem

Series parse_series(char c) {
  switch (c) {
    case 'A': case 'a': return Series::A;
    case 'B': case 'b': return Series::B;
    case 'C': case 'c': return Series::C;
    case 'D': case 'd': return Series::D;
    default: throw InvalidArgument(std::string("unsupported root system series '") + c + "'");
  }
}

char series_char(Series s) {
  switch (s) {
    case Series::A: return 'A';
    case Series::B: return 'B';
    case Series::C: return 'C';
    case Series::D: return 'D';
  }
  return '?';
}

namespace {

Eigen::MatrixXd simple_gram(Series series, int r) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(r, r);
  switch (series) {
    case Series::A:
      for (int i = 0; i < r; ++i) {
        b(i, i) = 2.0;
        if (i + 1 < r) b(i, i + 1) = b(i + 1, i) = -1.0;
      }
      break;
    case Series::B:
      // alpha_i = e_i - e_{i+1} (long), alpha_r = e_r (short)
      for (int i = 0; i < r; ++i) {
        b(i, i) = (i + 1 < r) ? 2.0 : 1.0;
        if (i + 1 < r) b(i, i + 1) = b(i + 1, i) = -1.0;
      }
      break;
    case Series::C:
      // (e_i - e_{i+1})/sqrt2 (short), sqrt2 e_r (long)
      for (int i = 0; i < r; ++i) {
        b(i, i) = (i + 1 < r) ? 1.0 : 2.0;
        if (i + 1 < r) b(i, i + 1) = b(i + 1, i) = (i + 2 < r) ? -0.5 : -1.0;
      }
      break;
    case Series::D:
      // alpha_i = e_i - e_{i+1} for i < r, alpha_r = e_{r-1} + e_r
      for (int i = 0; i < r; ++i) b(i, i) = 2.0;
      for (int i = 0; i + 2 < r; ++i) b(i, i + 1) = b(i + 1, i) = -1.0;
      b(r - 3, r - 1) = b(r - 1, r - 3) = -1.0;
      break;
  }
  return b;
}

std::int64_t factorial(int n) {
  std::int64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

RootSystem RootSystem::build(Series series, int rank) {
  const int min_rank = series == Series::A ? 1 : (series == Series::D ? 3 : 2);
  if (rank < min_rank || rank > 8) {
    throw InvalidArgument(std::string("unsupported root system ") + series_char(series) +
                          std::to_string(rank) + ": rank must be in [" +
                          std::to_string(min_rank) + ", 8]");
  }
  RootSystem rs;
  rs.series_ = series;
  rs.rank_ = rank;
  rs.gram_ = simple_gram(series, rank);
  rs.cartan_.resize(rank, rank);
  for (int i = 0; i < rank; ++i) {
    for (int j = 0; j < rank; ++j) {
      rs.cartan_(i, j) = static_cast<int>(std::lround(2.0 * rs.gram_(i, j) / rs.gram_(i, i)));
    }
  }

  // Grow positive roots height by height with root strings:
  // beta + alpha_i is a root iff q > 0, where q = p - beta(h_i) and p is
  // the largest k with beta - k alpha_i a root.
  std::set<Root> known;
  std::vector<Root> layer;
  for (int i = 1; i <= rank; ++i) {
    layer.push_back(rs.simple_root(i));
    known.insert(layer.back());
  }
  std::vector<Root> all = layer;
  while (!layer.empty()) {
    std::set<Root> next;
    for (const Root& beta : layer) {
      for (int i = 0; i < rank; ++i) {
        int p = 0;
        Root down = beta;
        while (true) {
          down[static_cast<std::size_t>(i)] -= 1;
          if (!known.count(down)) break;
          ++p;
        }
        int beta_hi = 0;
        for (int j = 0; j < rank; ++j) beta_hi += beta[static_cast<std::size_t>(j)] * rs.cartan_(i, j);
        if (p - beta_hi > 0) {
          Root up = beta;
          up[static_cast<std::size_t>(i)] += 1;
          if (!known.count(up)) next.insert(up);
        }
      }
    }
    layer.assign(next.begin(), next.end());
    for (const Root& r : layer) {
      known.insert(r);
      all.push_back(r);
    }
  }
  std::sort(all.begin(), all.end(), [&](const Root& a, const Root& b) {
    const int ha = rs.height(a), hb = rs.height(b);
    if (ha != hb) return ha < hb;
    return a > b;
  });
  rs.positive_ = std::move(all);
  return rs;
}

std::string RootSystem::label() const { return std::string(1, series_char(series_)) + std::to_string(rank_); }

void RootSystem::check_weight(const Weight& w) const {
  if (w.rank() != rank_) {
    throw InvalidArgument("weight has " + std::to_string(w.rank()) + " coefficients, root system " +
                          label() + " has rank " + std::to_string(rank_));
  }
}

void RootSystem::check_root(const Root& r) const {
  if (static_cast<int>(r.size()) != rank_) {
    throw InvalidArgument("root has " + std::to_string(r.size()) + " coordinates, root system " +
                          label() + " has rank " + std::to_string(rank_));
  }
}

double RootSystem::norm2(const Root& alpha) const { return pairing(alpha, alpha); }

int RootSystem::height(const Root& alpha) const { return std::accumulate(alpha.begin(), alpha.end(), 0); }

bool RootSystem::is_positive_root(const Root& alpha) const {
  return std::binary_search(positive_.begin(), positive_.end(), alpha, [&](const Root& a, const Root& b) {
    const int ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return a > b;
  });
}

Root RootSystem::simple_root(int i) const {
  if (i < 1 || i > rank_) throw InvalidArgument("simple root index out of range: " + std::to_string(i));
  Root r(static_cast<std::size_t>(rank_), 0);
  r[static_cast<std::size_t>(i - 1)] = 1;
  return r;
}

Weight RootSystem::fundamental_weight(int j) const {
  if (j < 1 || j > rank_) throw InvalidArgument("fundamental weight index out of range: " + std::to_string(j));
  std::vector<cplx> c(static_cast<std::size_t>(rank_));
  c[static_cast<std::size_t>(j - 1)] = 1.0;
  return Weight(std::move(c));
}

Weight RootSystem::weyl_vector() const {
  return Weight(std::vector<cplx>(static_cast<std::size_t>(rank_), cplx(1.0)));
}

Weight RootSystem::weight_of_root(const Root& alpha) const {
  check_root(alpha);
  std::vector<cplx> c(static_cast<std::size_t>(rank_));
  for (int i = 0; i < rank_; ++i) {
    int v = 0;
    for (int j = 0; j < rank_; ++j) v += alpha[static_cast<std::size_t>(j)] * cartan_(i, j);
    c[static_cast<std::size_t>(i)] = v;
  }
  return Weight(std::move(c));
}

Weight RootSystem::weight_from_root_coords(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != rank_) {
    throw InvalidArgument("expected " + std::to_string(rank_) + " root coordinates, got " +
                          std::to_string(x.size()));
  }
  std::vector<cplx> c(static_cast<std::size_t>(rank_));
  for (int i = 0; i < rank_; ++i) {
    double v = 0.0;
    for (int j = 0; j < rank_; ++j) v += x[static_cast<std::size_t>(j)] * cartan_(i, j);
    c[static_cast<std::size_t>(i)] = v;
  }
  return Weight(std::move(c));
}

cplx RootSystem::pairing(const Weight& lambda, const Root& alpha) const {
  check_weight(lambda);
  check_root(alpha);
  // <Lambda_i, alpha_j> = delta_ij <alpha_j, alpha_j> / 2
  cplx s = 0.0;
  for (int i = 0; i < rank_; ++i) {
    s += static_cast<double>(alpha[static_cast<std::size_t>(i)]) * 0.5 * gram_(i, i) * lambda[i];
  }
  return s;
}

double RootSystem::pairing(const Root& alpha, const Root& beta) const {
  check_root(alpha);
  check_root(beta);
  double s = 0.0;
  for (int i = 0; i < rank_; ++i) {
    for (int j = 0; j < rank_; ++j) {
      s += alpha[static_cast<std::size_t>(i)] * gram_(i, j) * beta[static_cast<std::size_t>(j)];
    }
  }
  return s;
}

cplx RootSystem::coroot_value(const Weight& lambda, const Root& alpha) const {
  return 2.0 * pairing(lambda, alpha) / norm2(alpha);
}

Root RootSystem::reflect(int i, const Root& beta) const {
  check_root(beta);
  int bh = 0;
  for (int j = 0; j < rank_; ++j) bh += beta[static_cast<std::size_t>(j)] * cartan_(i - 1, j);
  Root out = beta;
  out[static_cast<std::size_t>(i - 1)] -= bh;
  return out;
}

Weight RootSystem::reflect(int i, const Weight& lambda) const {
  check_weight(lambda);
  // s_i(lambda) = lambda - lambda(h_i) alpha_i, and alpha_i(h_j) = A_{j i}.
  std::vector<cplx> c(lambda.coefficients().begin(), lambda.coefficients().end());
  const cplx li = lambda[i - 1];
  for (int j = 0; j < rank_; ++j) c[static_cast<std::size_t>(j)] -= li * static_cast<double>(cartan_(j, i - 1));
  return Weight(std::move(c));
}

std::int64_t RootSystem::weyl_order() const {
  switch (series_) {
    case Series::A: return factorial(rank_ + 1);
    case Series::B:
    case Series::C: return (std::int64_t{1} << rank_) * factorial(rank_);
    case Series::D: return (std::int64_t{1} << (rank_ - 1)) * factorial(rank_);
  }
  return 0;
}

RootSystem RootSystem::with_form_scale(double c) const {
  if (!(c > 0.0)) throw InvalidArgument("form scale must be positive");
  RootSystem out = *this;
  out.scale_ = scale_ * c;
  out.gram_ = gram_ * c;
  return out;
}

WeylWord RootSystem::longest_word() const {
  // Walk delta to -delta by reflecting in any simple root still pairing
  // positively; each step lengthens the word by one.
  WeylWord word;
  Weight v = weyl_vector();
  while (true) {
    int pick = 0;
    for (int i = 1; i <= rank_; ++i) {
      if (v[i - 1].real() > 0.5) {
        pick = i;
        break;
      }
    }
    if (pick == 0) break;
    v = reflect(pick, v);
    word.letters.push_back(pick);
  }
  word.reduced = true;
  return word;
}

std::vector<Root> RootSystem::inversion_roots(const WeylWord& word, InversionConvention convention) const {
  const std::size_t n = word.letters.size();
  for (int l : word.letters) {
    if (l < 1 || l > rank_) throw InvalidArgument("word letter out of range: " + std::to_string(l));
  }
  std::vector<Root> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    Root r = simple_root(word.letters[j]);
    if (convention == InversionConvention::beta) {
      for (std::size_t k = j + 1; k < n; ++k) r = reflect(word.letters[k], r);
    } else {
      for (std::size_t k = j; k-- > 0;) r = reflect(word.letters[k], r);
    }
    out.push_back(std::move(r));
  }
  std::set<Root> seen;
  for (const Root& r : out) {
    if (!is_positive_root(r) || !seen.insert(r).second) {
      throw InvalidArgument("word is not reduced: inversion roots repeat or turn negative");
    }
  }
  return out;
}

// ------------------------------------------------------------ free functions

std::int64_t weyl_group_order(const RootSystem& rs) { return rs.weyl_order(); }

std::int64_t weyl_group_order(std::span<const RootSystem> factors) {
  std::int64_t p = 1;
  for (const auto& f : factors) p *= f.weyl_order();
  return p;
}

cplx form_pairing(const RootSystem& rs, const Weight& lambda, const Root& alpha) {
  return rs.pairing(lambda, alpha);
}

double form_pairing(const RootSystem& rs, const Root& alpha, const Root& beta) {
  return rs.pairing(alpha, beta);
}

WeylWord longest_word(const RootSystem& rs) { return rs.longest_word(); }

std::vector<Root> inversion_roots(const RootSystem& rs, const WeylWord& word, InversionConvention convention) {
  return rs.inversion_roots(word, convention);
}

}  // namespace cartan
