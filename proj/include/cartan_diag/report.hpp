#pragma once

// Orchestration behind the CLI: closed-form evaluation, Monte Carlo
// verification, certification suites, and report serialization.
//
// A report is {"payload": ..., "metadata": ...}. Only the payload is covered
// by the determinism contract; timestamps, wall-clock time and host name
// live in the metadata block.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "cartan_diag/closedform.hpp"
#include "cartan_diag/haarmc.hpp"

namespace cartan {

struct Tolerances {
  double z = 3.0;
  double pfaffian_su11 = 1e-8;
  double pfaffian_su12 = 1e-7;
  double skew = 1e-12;
  double equivariance = 1e-10;
  double momentum = 1e-5;
  double jacobian = 1e-5;
  double a_phi = 1e-8;
  double a26 = 1e-10;
  double factored = 1e-12;
  double roundtrip = 1e-10;
  double quadrature = 1e-6;
};

inline constexpr std::uint64_t kDefaultSeed = 20240611;
inline constexpr std::int64_t kDefaultSamples = 100000;

struct VerifyConfig {
  std::string space;
  /// Simple-root coordinates: lambda = sum_i x_i alpha_i.
  std::vector<double> lambda;
  std::int64_t n_samples = kDefaultSamples;
  std::uint64_t seed = kDefaultSeed;
  Tolerances tol;
  int threads = 0;
};

struct ReportRow {
  std::string space;
  std::string lambda;
  std::string component;
  cplx closed{};
  std::optional<cplx> mc;
  double std_error = 0.0;
  double z = 0.0;
  bool pass = true;
};

struct Report {
  std::string command;
  nlohmann::json payload;
  std::vector<ReportRow> rows;
  bool passed = true;
  double wall_clock = 0.0;
};

std::string library_version();

/// Throws InvalidArgument for unknown spaces, wrong lambda length or
/// n_samples < 1000.
void validate(const VerifyConfig& config);

Report run_eval(const VerifyConfig& config);
Report run_verify(const VerifyConfig& config);

/// suite in {poisson, bottsamelson, factorizations}
Report run_certify(const std::string& suite, std::uint64_t seed, const Tolerances& tol);

nlohmann::json formula_json(const FormulaValue& v);
nlohmann::json estimate_json(const MCEstimate& e);
/// Non-finite numbers are written as the strings "inf", "-inf", "nan".
nlohmann::json rows_json(std::span<const ReportRow> rows);

/// Full report with metadata, pretty-printed.
std::string report_json(const Report& r);
/// Payload only (the determinism-covered part), compact.
std::string payload_json(const Report& r);
/// Rebuilds a report (payload and rows) from report_json output.
Report report_from_json(const std::string& text);

/// format is "csv" or "json". Throws InvalidArgument for an empty list.
std::string emit_table(std::span<const Report> reports, const std::string& format);
/// Writes emit_table output to path; throws IoError on failure.
void write_table(std::span<const Report> reports, const std::string& format, const std::string& path);

}  // namespace cartan
