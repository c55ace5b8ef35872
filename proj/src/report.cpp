#include "cartan_diag/report.hpp"

#include <unistd.h>

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>

#include "cartan_diag/bottsamelson.hpp"
#include "cartan_diag/errors.hpp"

#ifndef CARTAN_DIAG_VERSION
#define CARTAN_DIAG_VERSION "0.0.0"
#endif

namespace cartan {

using nlohmann::json;

namespace {

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, end);
}

std::string lambda_label(std::span<const double> x) {
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ";" : "") + fmt(x[i]);
  return s;
}

json number(double x) {
  if (std::isfinite(x)) return x;
  return fmt(x);
}

double from_number(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::quiet_NaN();
  }
  throw InvalidArgument("report: expected a number");
}

json row_json(const ReportRow& r) {
  json j = {{"space", r.space},          {"lambda", r.lambda},   {"component", r.component},
            {"closed_re", r.closed.real()}, {"closed_im", r.closed.imag()}, {"stderr", number(r.std_error)},
            {"z", number(r.z)},          {"pass", r.pass}};
  if (r.mc) {
    j["mc_re"] = number(r.mc->real());
    j["mc_im"] = number(r.mc->imag());
  } else {
    j["mc_re"] = nullptr;
    j["mc_im"] = nullptr;
  }
  return j;
}

ReportRow row_from_json(const json& j) {
  ReportRow r;
  r.space = j.at("space").get<std::string>();
  r.lambda = j.at("lambda").get<std::string>();
  r.component = j.at("component").get<std::string>();
  r.closed = {j.at("closed_re").get<double>(), j.at("closed_im").get<double>()};
  if (!j.at("mc_re").is_null()) r.mc = cplx(from_number(j.at("mc_re")), from_number(j.at("mc_im")));
  r.std_error = from_number(j.at("stderr"));
  r.z = from_number(j.at("z"));
  r.pass = j.at("pass").get<bool>();
  return r;
}

json tolerances_json(const Tolerances& t) {
  return {{"z", t.z},
          {"pfaffian_su11", t.pfaffian_su11},
          {"pfaffian_su12", t.pfaffian_su12},
          {"skew", t.skew},
          {"equivariance", t.equivariance},
          {"momentum", t.momentum},
          {"jacobian", t.jacobian},
          {"a_phi", t.a_phi},
          {"a26", t.a26},
          {"factored", t.factored},
          {"roundtrip", t.roundtrip},
          {"quadrature", t.quadrature}};
}

std::string timestamp_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string host_name() {
  char buf[256] = {0};
  if (gethostname(buf, sizeof buf - 1) != 0) return "unknown";
  return buf;
}

Weight lambda_weight(const SymmetricSpaceSpec& spec, std::span<const double> x) {
  return spec.ambient().weight_from_root_coords(x);
}

void finish_payload(Report& r) {
  r.payload["rows"] = rows_json(r.rows);
  r.payload["passed"] = r.passed;
}

}  // namespace

json rows_json(std::span<const ReportRow> rows) {
  json out = json::array();
  for (const auto& row : rows) out.push_back(row_json(row));
  return out;
}

std::string library_version() { return CARTAN_DIAG_VERSION; }

void validate(const VerifyConfig& config) {
  const auto spec = SymmetricSpaceSpec::from_name(config.space);
  if (static_cast<int>(config.lambda.size()) != spec.ambient().rank()) {
    throw InvalidArgument("lambda for " + config.space + " needs " + std::to_string(spec.ambient().rank()) +
                          " coefficient(s), got " + std::to_string(config.lambda.size()));
  }
  for (double x : config.lambda) {
    if (!std::isfinite(x)) throw InvalidArgument("lambda coefficients must be finite");
  }
  if (config.n_samples < kMinSamples) throw InvalidArgument("samples must be at least 1000");
  if (!(config.tol.z > 0.0)) throw InvalidArgument("z tolerance must be positive");
}

json formula_json(const FormulaValue& v) {
  json j = {{"label", v.label},
            {"value_re", v.value.real()},
            {"value_im", v.value.imag()},
            {"prefactor_re", v.prefactor.real()},
            {"prefactor_im", v.prefactor.imag()}};
  json factors = json::array();
  for (const auto& f : v.factors) {
    factors.push_back({{"root", f.root},
                       {"numerator_re", f.numerator.real()},
                       {"numerator_im", f.numerator.imag()},
                       {"denominator_re", f.denominator.real()},
                       {"denominator_im", f.denominator.imag()}});
  }
  j["factors"] = factors;
  if (!v.terms.empty()) {
    json terms = json::array();
    for (const auto& t : v.terms) terms.push_back(formula_json(t));
    j["terms"] = terms;
  }
  return j;
}

json estimate_json(const MCEstimate& e) {
  json comps = json::array();
  for (const auto& b : e.components) {
    comps.push_back({{"component", b.component.str()},
                     {"admissible", b.admissible},
                     {"count", b.count},
                     {"mass", b.mass},
                     {"mass_stderr", b.mass_stderr},
                     {"mean_re", b.mean.real()},
                     {"mean_im", b.mean.imag()},
                     {"mean_stderr_re", b.mean_stderr_re},
                     {"mean_stderr_im", b.mean_stderr_im},
                     {"partial_re", b.partial.real()},
                     {"partial_im", b.partial.imag()},
                     {"partial_stderr_re", b.partial_stderr_re},
                     {"partial_stderr_im", b.partial_stderr_im}});
  }
  return {{"mean_re", e.mean.real()},
          {"mean_im", e.mean.imag()},
          {"stderr", e.std_error},
          {"stderr_re", e.stderr_re},
          {"stderr_im", e.stderr_im},
          {"n_samples", e.n_samples},
          {"n_rejected", e.n_rejected},
          {"n_inadmissible", e.n_inadmissible},
          {"seed", e.seed},
          {"components", comps}};
}

Report run_eval(const VerifyConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  if (static_cast<int>(config.lambda.size()) != SymmetricSpaceSpec::from_name(config.space).ambient().rank()) {
    validate(config);  // reports the lambda mismatch
  }
  const auto spec = SymmetricSpaceSpec::from_name(config.space);
  const Weight lambda = lambda_weight(spec, config.lambda);
  const std::string lam = lambda_label(config.lambda);
  Report r;
  r.command = "eval";
  r.payload = {{"command", "eval"}, {"space", spec.name()}, {"lambda", config.lambda}};
  if (spec.group_case()) {
    const FormulaValue c = c_function(spec.ambient(), lambda);
    const cplx factored = factored_c_integral(spec.ambient(), lambda);
    r.payload["closed_form"] = formula_json(c);
    r.payload["factored"] = {{"re", factored.real()}, {"im", factored.imag()}};
    r.rows.push_back({spec.name(), lam, "overall", c.value, std::nullopt, 0.0, 0.0, true});
    r.rows.push_back({spec.name(), lam, "factored", factored, std::nullopt, 0.0, 0.0, true});
  } else {
    const FormulaValue f = diagonal_fourier(spec, lambda);
    r.payload["closed_form"] = formula_json(f);
    r.payload["order_m"] = order_M(spec);
    r.rows.push_back({spec.name(), lam, "overall", f.value, std::nullopt, 0.0, 0.0, true});
    for (const auto& t : f.terms) r.rows.push_back({spec.name(), lam, t.label, t.value, std::nullopt, 0.0, 0.0, true});
  }
  finish_payload(r);
  r.wall_clock = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

Report run_verify(const VerifyConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  validate(config);
  const auto spec = SymmetricSpaceSpec::from_name(config.space);
  const Weight lambda = lambda_weight(spec, config.lambda);
  const std::string lam = lambda_label(config.lambda);
  const double zt = config.tol.z;

  Report r;
  r.command = "verify";
  r.payload = {{"command", "verify"},
               {"space", spec.name()},
               {"lambda", config.lambda},
               {"n_samples", config.n_samples},
               {"seed", config.seed},
               {"tolerances", tolerances_json(config.tol)}};

  if (spec.group_case()) {
    const FormulaValue c = c_function(spec.ambient(), lambda);
    const MCEstimate e = estimate_group_integral(spec.n(), lambda, config.n_samples, config.seed, config.threads);
    const double z = z_score(e.mean, c.value, e.stderr_re, e.stderr_im);
    r.payload["closed_form"] = formula_json(c);
    r.payload["estimate"] = estimate_json(e);
    r.rows.push_back({spec.name(), lam, "overall", c.value, e.mean, e.std_error, z, z <= zt});
  } else {
    const FormulaValue f = diagonal_fourier(spec, lambda);
    const MCEstimate e = estimate_diagonal_integral(spec, lambda, config.n_samples, config.seed, config.threads);
    const auto m = static_cast<double>(order_M(spec));
    r.payload["closed_form"] = formula_json(f);
    r.payload["estimate"] = estimate_json(e);
    r.payload["order_m"] = order_M(spec);
    const double z = z_score(e.mean, f.value, e.stderr_re, e.stderr_im);
    r.rows.push_back({spec.name(), lam, "overall", f.value, e.mean, e.std_error, z, z <= zt});

    // per component: the conditional mean against M * component_term, and
    // the Haar mass of the component against 1/M
    for (std::size_t i = 0; i < f.terms.size(); ++i) {
      const ComponentBin& b = e.components[i];
      const cplx target = m * f.terms[i].value;
      const double zc = z_score(b.mean, target, b.mean_stderr_re, b.mean_stderr_im);
      r.rows.push_back({spec.name(), lam, b.component.str(), target, b.mean,
                        std::max(b.mean_stderr_re, b.mean_stderr_im), zc, zc <= zt});
    }
    for (std::size_t i = 0; i < f.terms.size(); ++i) {
      const ComponentBin& b = e.components[i];
      const double zm = z_score(cplx(b.mass), cplx(1.0 / m), b.mass_stderr, b.mass_stderr);
      r.rows.push_back({spec.name(), lam, "mass" + b.component.str(), cplx(1.0 / m), cplx(b.mass), b.mass_stderr,
                        zm, zm <= zt});
    }
    const double bad = static_cast<double>(e.n_inadmissible) / static_cast<double>(e.n_samples);
    r.rows.push_back({spec.name(), lam, "inadmissible", cplx(0.0), cplx(bad), 0.0, z_score(cplx(bad), 0.0, 0.0, 0.0),
                      e.n_inadmissible == 0});
  }
  for (const auto& row : r.rows) r.passed = r.passed && row.pass;
  finish_payload(r);
  r.wall_clock = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::string payload_json(const Report& r) { return r.payload.dump(); }

std::string report_json(const Report& r) {
  const json j = {{"payload", r.payload},
                  {"metadata",
                   {{"timestamp", timestamp_utc()},
                    {"wall_clock", r.wall_clock},
                    {"version", library_version()},
                    {"host", host_name()}}}};
  return j.dump(2);
}

Report report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("report is not valid JSON: ") + e.what());
  }
  try {
    Report r;
    r.payload = j.contains("payload") ? j.at("payload") : j;
    r.command = r.payload.value("command", "");
    r.passed = r.payload.at("passed").get<bool>();
    for (const auto& row : r.payload.at("rows")) r.rows.push_back(row_from_json(row));
    if (j.contains("metadata")) r.wall_clock = j.at("metadata").value("wall_clock", 0.0);
    return r;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("report is missing fields: ") + e.what());
  }
}

std::string emit_table(std::span<const Report> reports, const std::string& format) {
  if (reports.empty()) throw InvalidArgument("emit_table: no reports");
  if (format == "json") {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(r.payload);
    return arr.dump(2) + "\n";
  }
  if (format != "csv") throw InvalidArgument("unknown format '" + format + "' (json or csv)");
  std::ostringstream out;
  out << "space,lambda,component,closed_re,closed_im,mc_re,mc_im,stderr,z,pass\n";
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  for (const auto& r : reports) {
    for (const auto& row : r.rows) {
      out << quote(row.space) << ',' << quote(row.lambda) << ',' << quote(row.component) << ','
          << fmt(row.closed.real()) << ',' << fmt(row.closed.imag()) << ',' << (row.mc ? fmt(row.mc->real()) : "")
          << ',' << (row.mc ? fmt(row.mc->imag()) : "") << ',' << fmt(row.std_error) << ',' << fmt(row.z) << ','
          << (row.pass ? "true" : "false") << '\n';
    }
  }
  return out.str();
}

void write_table(std::span<const Report> reports, const std::string& format, const std::string& path) {
  const std::string text = emit_table(reports, format);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw IoError("write to '" + path + "' failed");
}

}  // namespace cartan
