#pragma once

// Finite-type root systems (series A-D) and Weyl group words.
//
// Roots are stored as integer coefficient vectors over the simple roots.
// Weights are complex coefficient vectors over the fundamental weights, so
// that lambda(h_i) is simply the i-th coefficient.  The invariant form is
// normalized to <alpha, alpha> = 2 on long roots and may be rescaled with
// RootSystem::with_form_scale; every ratio computed downstream is
// independent of that scale.

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace cartan {

using cplx = std::complex<double>;

enum class Series { A, B, C, D };

/// Coefficients over the simple roots.
using Root = std::vector<int>;

class Weight {
 public:
  Weight() = default;
  explicit Weight(std::vector<cplx> coefficients) : coeffs_(std::move(coefficients)) {}

  static Weight zero(int rank) { return Weight(std::vector<cplx>(static_cast<std::size_t>(rank))); }
  static Weight real(std::span<const double> coefficients);

  int rank() const { return static_cast<int>(coeffs_.size()); }
  std::span<const cplx> coefficients() const { return coeffs_; }
  cplx operator[](int j) const { return coeffs_[static_cast<std::size_t>(j)]; }

  /// True when every imaginary part is within tol of zero.
  bool is_real(double tol = 0.0) const;

  Weight operator+(const Weight& other) const;
  Weight operator-(const Weight& other) const;
  Weight operator-() const;
  friend Weight operator*(cplx s, const Weight& w);
  bool operator==(const Weight&) const = default;

 private:
  std::vector<cplx> coeffs_;
};

/// A word (r_1, ..., r_n) of simple reflections read as w = r_n ... r_1.
/// letters[0] is the index of r_1; indices are 1-based.
struct WeylWord {
  std::vector<int> letters;
  bool reduced = false;

  std::size_t length() const { return letters.size(); }
};

enum class InversionConvention {
  beta,  // beta_j = r_n ... r_{j+1} (alpha_j)
  tau,   // tau_j  = r_1 ... r_{j-1} (alpha_j)
};

class RootSystem {
 public:
  /// Throws InvalidArgument for unsupported (series, rank).
  static RootSystem build(Series series, int rank);

  Series series() const { return series_; }
  int rank() const { return rank_; }
  std::string label() const;

  const Eigen::MatrixXi& cartan_matrix() const { return cartan_; }
  /// Gram matrix of the simple roots under the (possibly rescaled) form.
  const Eigen::MatrixXd& form() const { return gram_; }
  double form_scale() const { return scale_; }

  /// Ordered by height, ties broken by descending lexicographic order of
  /// the simple-root coordinates (so alpha_1 precedes alpha_2).
  const std::vector<Root>& positive_roots() const { return positive_; }

  double norm2(const Root& alpha) const;
  int height(const Root& alpha) const;
  bool is_positive_root(const Root& alpha) const;

  Root simple_root(int i) const;  // 1-based
  Weight fundamental_weight(int j) const;  // 1-based
  Weight weyl_vector() const;  // delta
  Weight weight_of_root(const Root& alpha) const;
  /// sum_i x_i alpha_i as a weight.
  Weight weight_from_root_coords(std::span<const double> x) const;

  /// <lambda, alpha>.
  cplx pairing(const Weight& lambda, const Root& alpha) const;
  /// <alpha, beta> for two roots.
  double pairing(const Root& alpha, const Root& beta) const;
  /// lambda(h_alpha) = 2 <lambda, alpha> / <alpha, alpha>.
  cplx coroot_value(const Weight& lambda, const Root& alpha) const;

  Root reflect(int i, const Root& beta) const;
  Weight reflect(int i, const Weight& lambda) const;

  std::int64_t weyl_order() const;

  /// Copy with the invariant form multiplied by c > 0.
  RootSystem with_form_scale(double c) const;

  WeylWord longest_word() const;
  /// Throws InvalidArgument when the word is not reduced.
  std::vector<Root> inversion_roots(const WeylWord& word, InversionConvention convention) const;

 private:
  RootSystem() = default;
  void check_weight(const Weight& w) const;
  void check_root(const Root& r) const;

  Series series_ = Series::A;
  int rank_ = 0;
  double scale_ = 1.0;
  Eigen::MatrixXi cartan_;
  Eigen::MatrixXd gram_;
  std::vector<Root> positive_;
};

Series parse_series(char c);
char series_char(Series s);

std::int64_t weyl_group_order(const RootSystem& rs);
/// Order of the Weyl group of a product of root systems.
std::int64_t weyl_group_order(std::span<const RootSystem> factors);

cplx form_pairing(const RootSystem& rs, const Weight& lambda, const Root& alpha);
double form_pairing(const RootSystem& rs, const Root& alpha, const Root& beta);

WeylWord longest_word(const RootSystem& rs);
std::vector<Root> inversion_roots(const RootSystem& rs, const WeylWord& word,
                                  InversionConvention convention);

}  // namespace cartan
