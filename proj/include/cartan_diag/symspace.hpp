#pragma once

// Inner involutions of SU(n) and the component calculus of the generic
// stratum of the Cartan-embedded symmetric space.
//
// A spec is either the group case (X = SU(n), no involution) or the
// Grassmannian Gr(k, C^{k+m}) with Theta = Ad(J), J = diag(+1 x k, -1 x m).
// Components of the generic stratum are indexed by sign vectors w in
// {+-1}^n with an even number of -1 entries (order-two elements of the
// diagonal torus of SU(n)), admissible when wJ has the same signature as J.
// By interlacing, the k x k leading minors of u J u* gain one positive or
// one negative eigenvalue per step, so the sign patterns wJ that occur are
// exactly the arrangements of k plus and m minus signs: C(n, k) = M of them.

#include <cstdint>
#include <string>
#include <vector>

#include "cartan_diag/rootsys.hpp"

namespace cartan {

struct ComponentIndex {
  std::vector<int> signs;  // each entry +1 or -1

  int size() const { return static_cast<int>(signs.size()); }
  bool is_identity() const;
  /// Character value w^alpha for alpha = e_p - e_q (p, q 0-based).
  int character(int p, int q) const { return signs[static_cast<std::size_t>(p)] * signs[static_cast<std::size_t>(q)]; }
  ComponentIndex negated() const;
  std::string str() const;  // e.g. "(+,-,-)"

  auto operator<=>(const ComponentIndex&) const = default;
};

enum class RootType { compact, noncompact };

class SymmetricSpaceSpec {
 public:
  static SymmetricSpaceSpec group(int n);
  static SymmetricSpaceSpec grassmannian(int k, int m);
  /// Resolves a catalog key such as "group:su2" or "gr:1,2".
  static SymmetricSpaceSpec from_name(const std::string& name);

  const std::string& name() const { return name_; }
  bool group_case() const { return group_case_; }
  int n() const { return n_; }
  int k() const { return k_; }
  int m() const { return m_; }
  const RootSystem& ambient() const { return ambient_; }
  /// Diagonal of J (group case: all +1, unused).
  const std::vector<int>& involution_signs() const { return j_; }

  /// |W(K)| = k! m! for S(U(k) x U(m)).
  std::int64_t weyl_order_k() const;

 private:
  SymmetricSpaceSpec(std::string name, bool group_case, int k, int m);

  std::string name_;
  bool group_case_ = false;
  int n_ = 0, k_ = 0, m_ = 0;
  RootSystem ambient_;
  std::vector<int> j_;
};

/// Catalog keys in display order.
std::vector<std::string> catalog_names();

/// Support (p, q), 0-based with p < q, of an A-series root e_p - e_q.
/// Throws InvalidArgument for coefficient vectors that are not positive
/// A-type roots.
std::pair<int, int> root_support(const Root& alpha);

bool is_admissible(const SymmetricSpaceSpec& spec, const ComponentIndex& w);

/// Sign vectors indexing the open components; throws for the group case.
std::vector<ComponentIndex> enumerate_components(const SymmetricSpaceSpec& spec);

RootType classify_root(const SymmetricSpaceSpec& spec, const ComponentIndex& w, const Root& alpha);

/// Positive roots of noncompact type for Ad(w) Theta.
std::vector<Root> noncompact_roots(const SymmetricSpaceSpec& spec, const ComponentIndex& w);

/// |W(U)| / |W(K)|.
std::int64_t order_M(const SymmetricSpaceSpec& spec);

}  // namespace cartan
