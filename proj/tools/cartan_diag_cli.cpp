// cartan-diag: batch driver over the C API.
//
// Exit codes: 0 when every gate passes, 1 when a gate fails, 2 for usage
// or input errors, 3 for numerical and i/o failures.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <toml.hpp>

#include "cartan_diag/cartan_diag.h"

namespace {

constexpr int kExitGate = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct ReportDeleter {
  void operator()(cd_report* r) const { cd_report_free(r); }
};
using ReportPtr = std::unique_ptr<cd_report, ReportDeleter>;

struct SpaceDeleter {
  void operator()(cd_space* s) const { cd_space_free(s); }
};
using SpacePtr = std::unique_ptr<cd_space, SpaceDeleter>;

struct CliError {
  int code;
  std::string message;
};

void check(cd_status s) {
  if (s == CD_OK) return;
  const int code = s == CD_ERR_INVALID_ARGUMENT ? kExitUsage : kExitRuntime;
  throw CliError{code, std::string(cd_status_name(s)) + ": " + cd_last_error()};
}

struct TolFlag {
  const char* name;
  double cd_tolerances::* field;
};

constexpr TolFlag kTolFlags[] = {
    {"z", &cd_tolerances::z},
    {"pfaffian-su11", &cd_tolerances::pfaffian_su11},
    {"pfaffian-su12", &cd_tolerances::pfaffian_su12},
    {"skew", &cd_tolerances::skew},
    {"equivariance", &cd_tolerances::equivariance},
    {"momentum", &cd_tolerances::momentum},
    {"jacobian", &cd_tolerances::jacobian},
    {"a-phi", &cd_tolerances::a_phi},
    {"a26", &cd_tolerances::a26},
    {"factored", &cd_tolerances::factored},
    {"roundtrip", &cd_tolerances::roundtrip},
    {"quadrature", &cd_tolerances::quadrature},
};

// Values as given on the command line; unset ones fall back to the config
// file and then to the library defaults.
struct Options {
  std::string config;
  std::optional<std::string> space, out, format, suite;
  std::vector<double> lambda;
  std::optional<long long> samples, threads;
  std::optional<unsigned long long> seed;
  std::optional<double> tol[std::size(kTolFlags)];
  std::vector<std::string> inputs;
};

std::string toml_key(std::string flag) {
  for (char& c : flag)
    if (c == '-') c = '_';
  return flag;
}

// Merges TOML keys (space, lambda, samples, seed, threads, format, out,
// suite, tol_*) under the command-line values.
void apply_config(Options& o) {
  if (o.config.empty()) return;
  toml::table t;
  try {
    t = toml::parse_file(o.config);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "config " << o.config << ": " << e.description() << " at " << e.source().begin;
    throw CliError{kExitUsage, msg.str()};
  }
  auto str = [&](const char* key, std::optional<std::string>& dst) {
    if (dst || !t.contains(key)) return;
    if (auto v = t[key].value<std::string>()) dst = *v;
    else throw CliError{kExitUsage, std::string("config key '") + key + "' must be a string"};
  };
  auto integer = [&](const char* key, auto& dst) {
    if (dst || !t.contains(key)) return;
    if (auto v = t[key].value<std::int64_t>()) dst = *v;
    else throw CliError{kExitUsage, std::string("config key '") + key + "' must be an integer"};
  };
  str("space", o.space);
  str("out", o.out);
  str("format", o.format);
  str("suite", o.suite);
  integer("samples", o.samples);
  integer("seed", o.seed);
  integer("threads", o.threads);
  if (o.lambda.empty() && t.contains("lambda")) {
    const auto* arr = t["lambda"].as_array();
    if (arr == nullptr) throw CliError{kExitUsage, "config key 'lambda' must be an array of numbers"};
    for (const auto& el : *arr) {
      auto v = el.value<double>();
      if (!v) throw CliError{kExitUsage, "config key 'lambda' must be an array of numbers"};
      o.lambda.push_back(*v);
    }
  }
  for (std::size_t i = 0; i < std::size(kTolFlags); ++i) {
    const std::string key = "tol_" + toml_key(kTolFlags[i].name);
    if (o.tol[i] || !t.contains(key)) continue;
    if (auto v = t[key].value<double>()) o.tol[i] = *v;
    else throw CliError{kExitUsage, "config key '" + key + "' must be a number"};
  }
}

cd_tolerances tolerances(const Options& o) {
  cd_tolerances t = cd_default_tolerances();
  for (std::size_t i = 0; i < std::size(kTolFlags); ++i) {
    if (o.tol[i]) t.*(kTolFlags[i].field) = *o.tol[i];
  }
  return t;
}

std::string format_of(const Options& o) {
  const std::string f = o.format.value_or("json");
  if (f != "json" && f != "csv") throw CliError{kExitUsage, "--format must be json or csv"};
  return f;
}

void write_text(const std::optional<std::string>& path, const std::string& text) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream f(*path, std::ios::binary);
  if (!f) throw CliError{kExitRuntime, "cannot open '" + *path + "' for writing"};
  f << text;
  if (!f) throw CliError{kExitRuntime, "write to '" + *path + "' failed"};
}

std::string table_text(const std::vector<const cd_report*>& reports, const std::string& format) {
  char* raw = nullptr;
  check(cd_format_table(reports.data(), reports.size(), format.c_str(), &raw));
  std::string text(raw);
  cd_string_free(raw);
  return text;
}

void print_summary(const cd_report* r) {
  const size_t n = cd_report_row_count(r);
  for (size_t i = 0; i < n; ++i) {
    cd_row row;
    check(cd_report_row(r, i, &row));
    std::fprintf(stderr, "%-5s %-10s %-12s closed=%.10g%+.10gi", row.pass ? "PASS" : "FAIL", row.space,
                 row.component, row.closed.re, row.closed.im);
    if (row.mc_present) {
      std::fprintf(stderr, "  mc=%.10g%+.10gi  stderr=%.3g  z=%.3g", row.mc.re, row.mc.im, row.std_error, row.z);
    }
    std::fputc('\n', stderr);
  }
  std::fprintf(stderr, "%s (%.2fs)\n", cd_report_passed(r) ? "all gates passed" : "gate failure",
               cd_report_wall_clock(r));
}

int emit_report(cd_report* r, const Options& o) {
  const std::string format = format_of(o);
  if (format == "json") {
    write_text(o.out, std::string(cd_report_json(r)) + "\n");
  } else {
    write_text(o.out, table_text({r}, "csv"));
  }
  print_summary(r);
  return cd_report_passed(r) ? 0 : kExitGate;
}

cd_verify_config verify_config(const Options& o) {
  if (!o.space) throw CliError{kExitUsage, "--space is required"};
  if (o.lambda.empty()) throw CliError{kExitUsage, "--lambda is required"};
  cd_verify_config c;
  cd_default_config(&c);
  c.space = o.space->c_str();
  c.lambda = o.lambda.data();
  c.lambda_len = o.lambda.size();
  if (o.samples) c.n_samples = *o.samples;
  if (o.seed) c.seed = *o.seed;
  if (o.threads) c.threads = static_cast<int>(*o.threads);
  c.tol = tolerances(o);
  return c;
}

int cmd_spaces() {
  for (size_t i = 0; i < cd_catalog_size(); ++i) {
    cd_space* raw = nullptr;
    check(cd_space_open(cd_catalog_name(i), &raw));
    SpacePtr s(raw);
    std::cout << cd_space_name(s.get()) << "  rank=" << cd_space_rank(s.get());
    if (cd_space_is_group(s.get())) {
      std::cout << "  group\n";
      continue;
    }
    std::cout << "  M=" << cd_space_order_m(s.get()) << "  components=";
    for (size_t j = 0; j < cd_space_component_count(s.get()); ++j) {
      std::cout << (j ? " " : "") << cd_space_component_label(s.get(), j);
    }
    std::cout << '\n';
  }
  return 0;
}

int cmd_eval(const Options& o) {
  const cd_verify_config c = verify_config(o);
  cd_report* raw = nullptr;
  check(cd_eval(&c, &raw));
  return emit_report(ReportPtr(raw).get(), o);
}

int cmd_verify(const Options& o) {
  const cd_verify_config c = verify_config(o);
  cd_report* raw = nullptr;
  check(cd_verify(&c, &raw));
  return emit_report(ReportPtr(raw).get(), o);
}

int cmd_certify(const Options& o) {
  if (!o.suite) throw CliError{kExitUsage, "a suite is required (poisson, bottsamelson, factorizations)"};
  const cd_tolerances t = tolerances(o);
  cd_report* raw = nullptr;
  cd_verify_config defaults;
  cd_default_config(&defaults);
  check(cd_certify(o.suite->c_str(), o.seed.value_or(defaults.seed), &t, &raw));
  return emit_report(ReportPtr(raw).get(), o);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw CliError{kExitUsage, "cannot read '" + path + "'"};
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

int cmd_table(const Options& o) {
  if (o.inputs.empty()) throw CliError{kExitUsage, "table needs at least one report file"};
  std::vector<ReportPtr> owned;
  std::vector<const cd_report*> reports;
  bool passed = true;
  for (const auto& path : o.inputs) {
    cd_report* raw = nullptr;
    const cd_status s = cd_report_from_json(read_file(path).c_str(), &raw);
    if (s != CD_OK) throw CliError{kExitUsage, path + ": " + cd_last_error()};
    owned.emplace_back(raw);
    reports.push_back(raw);
    passed = passed && cd_report_passed(raw);
  }
  write_text(o.out, table_text(reports, format_of(o)));
  return passed ? 0 : kExitGate;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option_function<std::string>("--out", [&o](const std::string& v) { o.out = v; }, "Output file");
  sub->add_option_function<std::string>("--format", [&o](const std::string& v) { o.format = v; },
                                        "json (default) or csv");
  for (std::size_t i = 0; i < std::size(kTolFlags); ++i) {
    sub->add_option_function<double>(std::string("--tol-") + kTolFlags[i].name,
                                     [&o, i](double v) { o.tol[i] = v; }, "Gate tolerance");
  }
}

void add_space_flags(CLI::App* sub, Options& o, bool sampling) {
  sub->add_option_function<std::string>("--space", [&o](const std::string& v) { o.space = v; },
                                        "Space name (see `spaces`)");
  sub->add_option("--lambda", o.lambda, "Simple-root coordinates, comma separated")->delimiter(',');
  if (sampling) {
    sub->add_option_function<long long>("--samples", [&o](long long v) { o.samples = v; }, "Monte Carlo samples");
    sub->add_option_function<unsigned long long>("--seed", [&o](unsigned long long v) { o.seed = v; }, "RNG seed");
    sub->add_option_function<long long>("--threads", [&o](long long v) { o.threads = v; },
                                        "Worker threads (default: CARTAN_DIAG_THREADS or all cores)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diagonal distributions of symmetric spaces: closed forms, Monte Carlo checks, certificates"};
  app.set_version_flag("--version", std::string(cd_version()));
  app.require_subcommand(1);
  Options o;
  app.add_option("--config", o.config, "TOML file with flat keys; command-line flags win")->check(CLI::ExistingFile);

  auto* spaces = app.add_subcommand("spaces", "List the catalog");
  auto* eval = app.add_subcommand("eval", "Closed-form values only");
  add_space_flags(eval, o, false);
  add_common(eval, o);
  auto* verify = app.add_subcommand("verify", "Monte Carlo against the closed form");
  add_space_flags(verify, o, true);
  add_common(verify, o);
  auto* certify = app.add_subcommand("certify", "Run a certification suite");
  certify->add_option_function<std::string>("suite", [&o](const std::string& v) { o.suite = v; },
                                            "poisson, bottsamelson or factorizations");
  certify->add_option_function<unsigned long long>("--seed", [&o](unsigned long long v) { o.seed = v; }, "RNG seed");
  add_common(certify, o);
  auto* table = app.add_subcommand("table", "Merge report files into one table");
  table->add_option("reports", o.inputs, "Report JSON files")->required()->check(CLI::ExistingFile);
  table->add_option_function<std::string>("--out", [&o](const std::string& v) { o.out = v; }, "Output file");
  table->add_option_function<std::string>("--format", [&o](const std::string& v) { o.format = v; },
                                          "csv (default) or json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    apply_config(o);
    if (spaces->parsed()) return cmd_spaces();
    if (eval->parsed()) return cmd_eval(o);
    if (verify->parsed()) return cmd_verify(o);
    if (certify->parsed()) return cmd_certify(o);
    if (!o.format) o.format = "csv";
    return cmd_table(o);
  } catch (const CliError& e) {
    std::cerr << "cartan-diag: " << e.message << '\n';
    return e.code;
  }
}
