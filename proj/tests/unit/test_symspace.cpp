#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "cartan_diag/errors.hpp"
#include "cartan_diag/matreal.hpp"
#include "cartan_diag/symspace.hpp"

using namespace cartan;

namespace {

ComponentIndex ci(std::initializer_list<int> s) { return ComponentIndex{std::vector<int>(s)}; }

// Independent oracle: the sign patterns actually hit by Haar samples.
std::set<std::vector<int>> observed_components(const SymmetricSpaceSpec& spec, int samples) {
  std::set<std::vector<int>> seen;
  for (int i = 0; i < samples; ++i) {
    RngStream rng(99, static_cast<std::uint64_t>(i));
    seen.insert(component_of(ldu(cartan_embed(haar_unitary(spec.n(), rng), spec)), spec).signs);
  }
  return seen;
}

}  // namespace

TEST(Catalog, NamesResolve) {
  for (const auto& name : catalog_names()) EXPECT_EQ(SymmetricSpaceSpec::from_name(name).name(), name);
  EXPECT_TRUE(SymmetricSpaceSpec::from_name("group:su3").group_case());
  const auto cp2 = SymmetricSpaceSpec::from_name("gr:1,2");
  EXPECT_FALSE(cp2.group_case());
  EXPECT_EQ(cp2.n(), 3);
  EXPECT_EQ(cp2.involution_signs(), (std::vector<int>{1, -1, -1}));
  EXPECT_EQ(cp2.ambient().rank(), 2);
}

TEST(Catalog, RejectsUnknownNames) {
  EXPECT_THROW(SymmetricSpaceSpec::from_name("gr:2"), InvalidArgument);
  EXPECT_THROW(SymmetricSpaceSpec::from_name("sphere"), InvalidArgument);
  EXPECT_THROW(SymmetricSpaceSpec::from_name("group:suX"), InvalidArgument);
}

TEST(Components, HandEnumeratedCounts) {
  EXPECT_EQ(enumerate_components(SymmetricSpaceSpec::grassmannian(1, 1)).size(), 2u);
  EXPECT_EQ(enumerate_components(SymmetricSpaceSpec::grassmannian(1, 2)).size(), 3u);
  EXPECT_EQ(enumerate_components(SymmetricSpaceSpec::grassmannian(2, 2)).size(), 6u);
}

TEST(Components, S2Representatives) {
  const auto comps = enumerate_components(SymmetricSpaceSpec::grassmannian(1, 1));
  EXPECT_EQ(comps, (std::vector<ComponentIndex>{ci({1, 1}), ci({-1, -1})}));
}

TEST(Components, RejectedSignVectors) {
  const auto cp2 = SymmetricSpaceSpec::grassmannian(1, 2);
  EXPECT_FALSE(is_admissible(cp2, ci({1, -1, -1})));
  const auto gr = SymmetricSpaceSpec::grassmannian(2, 2);
  EXPECT_FALSE(is_admissible(gr, ci({-1, -1, 1, 1})));
  EXPECT_FALSE(is_admissible(gr, ci({1, 1, -1, -1})));
  EXPECT_TRUE(is_admissible(gr, ci({1, -1, 1, -1})));
}

TEST(Components, MatchSampledPatterns) {
  for (auto [k, m] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 2}, std::pair{1, 3}, std::pair{2, 3}}) {
    const auto spec = SymmetricSpaceSpec::grassmannian(k, m);
    const auto comps = enumerate_components(spec);
    std::set<std::vector<int>> got;
    for (const auto& w : comps) got.insert(w.signs);
    EXPECT_EQ(got, observed_components(spec, 4000)) << spec.name();
    EXPECT_EQ(static_cast<std::int64_t>(comps.size()), order_M(spec)) << spec.name();
  }
}

TEST(Components, ContainIdentityFirst) {
  for (auto [k, m] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 2}}) {
    const auto comps = enumerate_components(SymmetricSpaceSpec::grassmannian(k, m));
    EXPECT_TRUE(comps.front().is_identity());
  }
}

TEST(Components, GroupCaseRejected) {
  EXPECT_THROW(enumerate_components(SymmetricSpaceSpec::group(2)), InvalidArgument);
}

TEST(OrderM, Values) {
  EXPECT_EQ(order_M(SymmetricSpaceSpec::grassmannian(1, 1)), 2);
  EXPECT_EQ(order_M(SymmetricSpaceSpec::grassmannian(1, 2)), 3);
  EXPECT_EQ(order_M(SymmetricSpaceSpec::grassmannian(2, 2)), 6);
  EXPECT_EQ(SymmetricSpaceSpec::grassmannian(2, 2).weyl_order_k(), 4);
}

TEST(ClassifyRoot, Examples) {
  const auto s2 = SymmetricSpaceSpec::grassmannian(1, 1);
  EXPECT_EQ(classify_root(s2, ci({1, 1}), Root{1}), RootType::noncompact);
  const auto cp2 = SymmetricSpaceSpec::grassmannian(1, 2);
  const auto nc = noncompact_roots(cp2, ci({1, 1, 1}));
  EXPECT_EQ(nc, (std::vector<Root>{Root{1, 0}, Root{1, 1}}));
  // alpha_2 joins the two -1 entries of J: compact
  EXPECT_EQ(classify_root(cp2, ci({1, 1, 1}), Root{0, 1}), RootType::compact);
}

TEST(ClassifyRoot, NoncompactCountIsKM) {
  for (auto [k, m] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 2}, std::pair{2, 3}}) {
    const auto spec = SymmetricSpaceSpec::grassmannian(k, m);
    for (const auto& w : enumerate_components(spec)) {
      EXPECT_EQ(static_cast<int>(noncompact_roots(spec, w).size()), k * m) << spec.name() << " " << w.str();
    }
  }
}

TEST(ClassifyRoot, InvariantUnderGlobalSign) {
  const auto spec = SymmetricSpaceSpec::grassmannian(2, 2);
  for (const auto& w : enumerate_components(spec)) {
    for (const auto& a : spec.ambient().positive_roots()) {
      EXPECT_EQ(classify_root(spec, w, a), classify_root(spec, w.negated(), a));
    }
  }
}

TEST(ComponentIndex, Characters) {
  const auto w = ci({1, -1, -1});
  EXPECT_EQ(w.character(0, 1), -1);
  EXPECT_EQ(w.character(1, 2), 1);
  EXPECT_EQ(w.str(), "(+,-,-)");
  EXPECT_EQ(w.negated(), ci({-1, 1, 1}));
}

TEST(RootSupport, Decodes) {
  EXPECT_EQ(root_support(Root{0, 1, 1}), (std::pair<int, int>{1, 3}));
  EXPECT_EQ(root_support(Root{1, 0, 0}), (std::pair<int, int>{0, 1}));
  EXPECT_THROW(root_support(Root{1, 0, 1}), InvalidArgument);
  EXPECT_THROW(root_support(Root{2, 1}), InvalidArgument);
}
