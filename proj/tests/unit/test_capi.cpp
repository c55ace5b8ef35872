#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "cartan_diag/cartan_diag.h"

namespace {

struct SpaceGuard {
  cd_space* p = nullptr;
  ~SpaceGuard() { cd_space_free(p); }
};

struct ReportGuard {
  cd_report* p = nullptr;
  ~ReportGuard() { cd_report_free(p); }
};

cd_verify_config config(const char* space, const double* lambda, size_t len) {
  cd_verify_config c;
  cd_default_config(&c);
  c.space = space;
  c.lambda = lambda;
  c.lambda_len = len;
  c.n_samples = 5000;
  c.seed = 3;
  return c;
}

}  // namespace

TEST(CApi, VersionAndStatusNames) {
  EXPECT_FALSE(std::string(cd_version()).empty());
  EXPECT_STREQ(cd_status_name(CD_OK), "ok");
  EXPECT_STREQ(cd_status_name(CD_ERR_POLE), "pole");
}

TEST(CApi, Defaults) {
  cd_verify_config c;
  cd_default_config(&c);
  EXPECT_EQ(c.seed, 20240611u);
  EXPECT_EQ(c.n_samples, 100000);
  EXPECT_EQ(c.space, nullptr);
  EXPECT_EQ(c.tol.z, 3.0);
  EXPECT_EQ(cd_default_tolerances().momentum, 1e-5);
  cd_default_config(nullptr);
}

TEST(CApi, Catalog) {
  ASSERT_GE(cd_catalog_size(), 5u);
  for (size_t i = 0; i < cd_catalog_size(); ++i) {
    SpaceGuard s;
    ASSERT_EQ(cd_space_open(cd_catalog_name(i), &s.p), CD_OK) << cd_last_error();
    EXPECT_STREQ(cd_space_name(s.p), cd_catalog_name(i));
  }
  EXPECT_EQ(cd_catalog_name(cd_catalog_size()), nullptr);
}

TEST(CApi, SpaceProperties) {
  SpaceGuard s;
  ASSERT_EQ(cd_space_open("gr:2,2", &s.p), CD_OK);
  EXPECT_EQ(cd_space_rank(s.p), 3);
  EXPECT_EQ(cd_space_is_group(s.p), 0);
  EXPECT_EQ(cd_space_order_m(s.p), 6);
  EXPECT_EQ(cd_space_component_count(s.p), 6u);
  EXPECT_NE(cd_space_component_label(s.p, 0), nullptr);
  EXPECT_EQ(cd_space_component_label(s.p, 6), nullptr);
  SpaceGuard g;
  ASSERT_EQ(cd_space_open("group:su3", &g.p), CD_OK);
  EXPECT_EQ(cd_space_is_group(g.p), 1);
  EXPECT_EQ(cd_space_order_m(g.p), 1);
  EXPECT_EQ(cd_space_component_count(g.p), 0u);
}

TEST(CApi, OpenErrors) {
  cd_space* s = nullptr;
  EXPECT_EQ(cd_space_open("gr:9,9", &s), CD_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(s, nullptr);
  EXPECT_FALSE(std::string(cd_last_error()).empty());
  EXPECT_EQ(cd_space_open(nullptr, &s), CD_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(cd_space_rank(nullptr), 0);
  EXPECT_EQ(cd_space_name(nullptr), nullptr);
}

TEST(CApi, Formulas) {
  SpaceGuard su2;
  ASSERT_EQ(cd_space_open("group:su2", &su2.p), CD_OK);
  const double one = 1.0;
  cd_complex z{};
  ASSERT_EQ(cd_c_function(su2.p, &one, 1, &z), CD_OK);
  EXPECT_NEAR(z.re, 0.5, 1e-15);
  EXPECT_NEAR(z.im, 0.5, 1e-15);
  EXPECT_EQ(cd_diagonal_fourier(su2.p, &one, 1, &z), CD_ERR_INVALID_ARGUMENT);

  SpaceGuard s2;
  ASSERT_EQ(cd_space_open("gr:1,1", &s2.p), CD_OK);
  const double s = 0.5;
  ASSERT_EQ(cd_diagonal_fourier(s2.p, &s, 1, &z), CD_OK);
  // 1 / (1 - i)
  EXPECT_NEAR(z.re, 0.5, 1e-15);
  EXPECT_NEAR(z.im, 0.5, 1e-15);
  ASSERT_EQ(cd_component_term(s2.p, 1, &s, 1, &z), CD_OK);
  EXPECT_NEAR(z.re, 0.25, 1e-15);
  EXPECT_EQ(cd_component_term(s2.p, 2, &s, 1, &z), CD_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(cd_c_function(s2.p, &s, 1, &z), CD_ERR_INVALID_ARGUMENT);
  const double two[2] = {0.1, 0.2};
  EXPECT_EQ(cd_diagonal_fourier(s2.p, two, 2, &z), CD_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(cd_diagonal_fourier(s2.p, &s, 1, nullptr), CD_ERR_INVALID_ARGUMENT);
}

TEST(CApi, EvalRows) {
  const double one = 1.0;
  const auto c = config("group:su2", &one, 1);
  ReportGuard r;
  ASSERT_EQ(cd_eval(&c, &r.p), CD_OK) << cd_last_error();
  EXPECT_EQ(cd_report_passed(r.p), 1);
  ASSERT_EQ(cd_report_row_count(r.p), 2u);
  cd_row row{};
  ASSERT_EQ(cd_report_row(r.p, 0, &row), CD_OK);
  EXPECT_STREQ(row.component, "overall");
  EXPECT_EQ(row.mc_present, 0);
  EXPECT_EQ(cd_report_row(r.p, 5, &row), CD_ERR_INVALID_ARGUMENT);
}

TEST(CApi, VerifyAndJsonRoundTrip) {
  const double lam[2] = {0.3, -0.7};
  const auto c = config("gr:1,2", lam, 2);
  ReportGuard r;
  ASSERT_EQ(cd_verify(&c, &r.p), CD_OK) << cd_last_error();
  EXPECT_GE(cd_report_wall_clock(r.p), 0.0);
  const std::string payload = cd_report_payload_json(r.p);
  ReportGuard back;
  ASSERT_EQ(cd_report_from_json(cd_report_json(r.p), &back.p), CD_OK) << cd_last_error();
  EXPECT_EQ(std::string(cd_report_payload_json(back.p)), payload);
  EXPECT_EQ(cd_report_row_count(back.p), cd_report_row_count(r.p));
  cd_report* bad = nullptr;
  EXPECT_EQ(cd_report_from_json("[1,", &bad), CD_ERR_INVALID_ARGUMENT);
}

TEST(CApi, VerifyErrors) {
  cd_report* r = nullptr;
  EXPECT_EQ(cd_verify(nullptr, &r), CD_ERR_INVALID_ARGUMENT);
  const double one = 1.0;
  auto c = config("group:su2", &one, 1);
  c.n_samples = 10;
  EXPECT_EQ(cd_verify(&c, &r), CD_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(r, nullptr);
  c = config("group:su3", &one, 1);
  EXPECT_EQ(cd_eval(&c, &r), CD_ERR_INVALID_ARGUMENT);
}

TEST(CApi, Certify) {
  ReportGuard r;
  ASSERT_EQ(cd_certify("bottsamelson", 1, nullptr, &r.p), CD_OK) << cd_last_error();
  EXPECT_EQ(cd_report_passed(r.p), 1);
  cd_report* bad = nullptr;
  EXPECT_EQ(cd_certify("nosuch", 1, nullptr, &bad), CD_ERR_INVALID_ARGUMENT);
}

TEST(CApi, FormatTable) {
  const double one = 1.0;
  const auto c = config("group:su2", &one, 1);
  ReportGuard r;
  ASSERT_EQ(cd_eval(&c, &r.p), CD_OK);
  const cd_report* list[1] = {r.p};
  char* text = nullptr;
  ASSERT_EQ(cd_format_table(list, 1, "csv", &text), CD_OK);
  EXPECT_EQ(std::string(text).rfind("space,lambda,component", 0), 0u);
  cd_string_free(text);
  EXPECT_EQ(cd_format_table(list, 0, "csv", &text), CD_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(cd_write_table(list, 1, "csv", "/nonexistent-dir/t.csv"), CD_ERR_IO);
}
