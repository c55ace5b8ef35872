#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "cartan_diag/errors.hpp"
#include "cartan_diag/report.hpp"

using namespace cartan;

namespace {

VerifyConfig config(std::string space, std::vector<double> lambda, std::int64_t n = 5000) {
  VerifyConfig c;
  c.space = std::move(space);
  c.lambda = std::move(lambda);
  c.n_samples = n;
  c.seed = 17;
  return c;
}

const ReportRow& row(const Report& r, const std::string& component) {
  for (const auto& x : r.rows)
    if (x.component == component) return x;
  throw std::runtime_error("missing row " + component);
}

}  // namespace

TEST(Validate, RejectsBadConfigs) {
  EXPECT_NO_THROW(validate(config("gr:1,2", {0.1, 0.2})));
  EXPECT_THROW(validate(config("gr:9,9", {0.0})), InvalidArgument);
  EXPECT_THROW(validate(config("gr:1,2", {0.1})), InvalidArgument);
  EXPECT_THROW(validate(config("group:su2", {0.1}, 10)), InvalidArgument);
}

TEST(Eval, GroupRows) {
  const auto r = run_eval(config("group:su2", {1.0}));
  EXPECT_EQ(r.command, "eval");
  const auto& overall = row(r, "overall");
  EXPECT_NEAR(overall.closed.real(), 0.5, 1e-15);
  EXPECT_NEAR(overall.closed.imag(), 0.5, 1e-15);
  EXPECT_FALSE(overall.mc.has_value());
  EXPECT_LT(std::abs(row(r, "factored").closed - overall.closed), 1e-14);
  EXPECT_TRUE(r.passed);
}

TEST(Eval, InnerRowsSumToOverall) {
  const auto r = run_eval(config("gr:2,2", {0.3, -0.2, 0.5}));
  ASSERT_EQ(r.rows.size(), 7u);
  cplx sum{};
  for (const auto& x : r.rows)
    if (x.component != "overall") sum += x.closed;
  EXPECT_LT(std::abs(sum - row(r, "overall").closed), 1e-14);
}

TEST(Verify, S2Passes) {
  const auto r = run_verify(config("gr:1,1", {0.6}, 20000));
  EXPECT_EQ(r.command, "verify");
  EXPECT_TRUE(r.passed);
  const auto& overall = row(r, "overall");
  ASSERT_TRUE(overall.mc.has_value());
  EXPECT_GT(overall.std_error, 0.0);
  EXPECT_LT(overall.z, 3.0);
  EXPECT_EQ(row(r, "inadmissible").mc, cplx(0.0));
  EXPECT_TRUE(r.payload.contains("closed_form"));
  EXPECT_TRUE(r.payload.contains("estimate"));
  EXPECT_EQ(r.payload["order_m"], 2);
}

TEST(Verify, TinyToleranceFails) {
  auto c = config("group:su2", {0.7}, 5000);
  c.tol.z = 1e-9;
  EXPECT_FALSE(run_verify(c).passed);
}

TEST(Verify, PayloadDeterministic) {
  auto a = config("gr:1,2", {0.3, -0.7}, 9000);
  auto b = a;
  a.threads = 1;
  b.threads = 3;
  EXPECT_EQ(payload_json(run_verify(a)), payload_json(run_verify(b)));
}

TEST(Certify, SuitesPass) {
  for (const char* suite : {"poisson", "bottsamelson", "factorizations"}) {
    const auto r = run_certify(suite, kDefaultSeed, Tolerances{});
    EXPECT_TRUE(r.passed) << suite;
    EXPECT_FALSE(r.rows.empty());
    for (const auto& x : r.rows) EXPECT_EQ(x.space, suite);
  }
}

TEST(Certify, UnknownSuite) { EXPECT_THROW(run_certify("nosuch", 1, Tolerances{}), InvalidArgument); }

TEST(Json, RoundTrip) {
  const auto r = run_verify(config("gr:1,1", {0.4}));
  const auto back = report_from_json(report_json(r));
  EXPECT_EQ(back.command, r.command);
  EXPECT_EQ(back.passed, r.passed);
  ASSERT_EQ(back.rows.size(), r.rows.size());
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    EXPECT_EQ(back.rows[i].component, r.rows[i].component);
    EXPECT_EQ(back.rows[i].closed, r.rows[i].closed);
    EXPECT_EQ(back.rows[i].mc, r.rows[i].mc);
    EXPECT_EQ(back.rows[i].z, r.rows[i].z);
  }
  EXPECT_EQ(payload_json(back), payload_json(r));
  EXPECT_THROW(report_from_json("{not json"), InvalidArgument);
}

TEST(Json, NonFiniteRows) {
  ReportRow x;
  x.z = std::numeric_limits<double>::infinity();
  const auto j = rows_json(std::span<const ReportRow>(&x, 1));
  EXPECT_EQ(j[0]["z"], "inf");
}

TEST(Json, MetadataOutsidePayload) {
  const auto r = run_eval(config("group:su2", {1.0}));
  const auto j = nlohmann::json::parse(report_json(r));
  EXPECT_TRUE(j.contains("payload"));
  EXPECT_TRUE(j["metadata"].contains("timestamp"));
  EXPECT_EQ(j["metadata"]["version"], library_version());
  EXPECT_FALSE(j["payload"].contains("timestamp"));
}

TEST(Table, CsvLayout) {
  const std::vector<Report> reports{run_eval(config("group:su2", {1.0})), run_eval(config("gr:1,1", {0.5}))};
  const std::string csv = emit_table(reports, "csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "space,lambda,component,closed_re,closed_im,mc_re,mc_im,stderr,z,pass");
  EXPECT_NE(csv.find("group:su2,1,overall,0.5,0.5,,"), std::string::npos);
  // header plus 2 rows for su2 and 3 for S2
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
  const auto j = nlohmann::json::parse(emit_table(reports, "json"));
  EXPECT_EQ(j.size(), 2u);
}

TEST(Table, Errors) {
  const std::vector<Report> none;
  EXPECT_THROW(emit_table(none, "csv"), InvalidArgument);
  const std::vector<Report> one{run_eval(config("group:su2", {1.0}))};
  EXPECT_THROW(emit_table(one, "xml"), InvalidArgument);
  EXPECT_THROW(write_table(one, "csv", "/nonexistent-dir/x.csv"), IoError);
}
