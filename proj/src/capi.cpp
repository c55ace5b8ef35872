#include "cartan_diag/cartan_diag.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "cartan_diag/closedform.hpp"
#include "cartan_diag/errors.hpp"
#include "cartan_diag/report.hpp"

struct cd_space {
  cartan::SymmetricSpaceSpec spec;
  std::vector<cartan::ComponentIndex> components;
  std::vector<std::string> labels;
};

struct cd_report {
  cartan::Report report;
  std::string json_cache;
  std::string payload_cache;
};

namespace {

thread_local std::string last_error;

cd_status fail(cd_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

// Runs f, mapping library exceptions onto status codes.
template <class F>
cd_status guarded(F&& f) {
  try {
    f();
    return CD_OK;
  } catch (const cartan::InvalidArgument& e) {
    return fail(CD_ERR_INVALID_ARGUMENT, e.what());
  } catch (const cartan::PoleError& e) {
    return fail(CD_ERR_POLE, e.what());
  } catch (const cartan::NonGenericError& e) {
    return fail(CD_ERR_NON_GENERIC, e.what());
  } catch (const cartan::PhaseError& e) {
    return fail(CD_ERR_PHASE, e.what());
  } catch (const cartan::QuadratureError& e) {
    return fail(CD_ERR_QUADRATURE, e.what());
  } catch (const cartan::NumericalError& e) {
    return fail(CD_ERR_NUMERICAL, e.what());
  } catch (const cartan::IoError& e) {
    return fail(CD_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(CD_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CD_ERR_INTERNAL, "unknown error");
  }
}

cartan::Tolerances to_cpp(const cd_tolerances& t) {
  return {t.z,        t.pfaffian_su11, t.pfaffian_su12, t.skew,     t.equivariance, t.momentum,
          t.jacobian, t.a_phi,         t.a26,           t.factored, t.roundtrip,    t.quadrature};
}

cd_tolerances to_c(const cartan::Tolerances& t) {
  return {t.z,        t.pfaffian_su11, t.pfaffian_su12, t.skew,     t.equivariance, t.momentum,
          t.jacobian, t.a_phi,         t.a26,           t.factored, t.roundtrip,    t.quadrature};
}

cartan::VerifyConfig to_cpp(const cd_verify_config* c) {
  if (c == nullptr) throw cartan::InvalidArgument("config is NULL");
  if (c->space == nullptr) throw cartan::InvalidArgument("config.space is NULL");
  if (c->lambda == nullptr && c->lambda_len > 0) throw cartan::InvalidArgument("config.lambda is NULL");
  cartan::VerifyConfig v;
  v.space = c->space;
  v.lambda.assign(c->lambda, c->lambda + c->lambda_len);
  v.n_samples = c->n_samples;
  v.seed = c->seed;
  v.tol = to_cpp(c->tol);
  v.threads = c->threads;
  return v;
}

cartan::Weight weight_of(const cd_space* space, const double* lambda, size_t len) {
  if (space == nullptr) throw cartan::InvalidArgument("space is NULL");
  if (lambda == nullptr && len > 0) throw cartan::InvalidArgument("lambda is NULL");
  const auto& rs = space->spec.ambient();
  if (static_cast<int>(len) != rs.rank()) {
    throw cartan::InvalidArgument("lambda needs " + std::to_string(rs.rank()) + " coefficient(s)");
  }
  return rs.weight_from_root_coords(std::span<const double>(lambda, len));
}

cd_complex to_c(cartan::cplx z) { return {z.real(), z.imag()}; }

std::vector<cartan::Report> collect(const cd_report* const* reports, size_t n) {
  if (reports == nullptr && n > 0) throw cartan::InvalidArgument("reports is NULL");
  std::vector<cartan::Report> out;
  for (size_t i = 0; i < n; ++i) {
    if (reports[i] == nullptr) throw cartan::InvalidArgument("report is NULL");
    out.push_back(reports[i]->report);
  }
  return out;
}

}  // namespace

extern "C" {

const char* cd_version(void) {
  static const std::string v = cartan::library_version();
  return v.c_str();
}

const char* cd_last_error(void) { return last_error.c_str(); }

const char* cd_status_name(cd_status s) {
  switch (s) {
    case CD_OK: return "ok";
    case CD_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CD_ERR_POLE: return "pole";
    case CD_ERR_NON_GENERIC: return "non-generic input";
    case CD_ERR_PHASE: return "phase error";
    case CD_ERR_NUMERICAL: return "numerical error";
    case CD_ERR_QUADRATURE: return "quadrature error";
    case CD_ERR_IO: return "i/o error";
    case CD_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

cd_tolerances cd_default_tolerances(void) { return to_c(cartan::Tolerances{}); }

void cd_default_config(cd_verify_config* config) {
  if (config == nullptr) return;
  *config = cd_verify_config{};
  config->n_samples = cartan::kDefaultSamples;
  config->seed = cartan::kDefaultSeed;
  config->tol = cd_default_tolerances();
}

size_t cd_catalog_size(void) { return cartan::catalog_names().size(); }

const char* cd_catalog_name(size_t i) {
  static const std::vector<std::string> names = cartan::catalog_names();
  return i < names.size() ? names[i].c_str() : nullptr;
}

cd_status cd_space_open(const char* name, cd_space** out) {
  return guarded([&] {
    if (name == nullptr || out == nullptr) throw cartan::InvalidArgument("NULL argument");
    *out = nullptr;
    auto spec = cartan::SymmetricSpaceSpec::from_name(name);
    std::vector<cartan::ComponentIndex> comps;
    std::vector<std::string> labels;
    if (!spec.group_case()) {
      comps = cartan::enumerate_components(spec);
      for (const auto& w : comps) labels.push_back(w.str());
    }
    *out = new cd_space{std::move(spec), std::move(comps), std::move(labels)};
  });
}

void cd_space_free(cd_space* space) { delete space; }

const char* cd_space_name(const cd_space* space) { return space ? space->spec.name().c_str() : nullptr; }

int cd_space_rank(const cd_space* space) { return space ? space->spec.ambient().rank() : 0; }

int cd_space_is_group(const cd_space* space) { return space && space->spec.group_case() ? 1 : 0; }

int64_t cd_space_order_m(const cd_space* space) {
  if (space == nullptr) return 0;
  return space->spec.group_case() ? 1 : cartan::order_M(space->spec);
}

size_t cd_space_component_count(const cd_space* space) { return space ? space->components.size() : 0; }

const char* cd_space_component_label(const cd_space* space, size_t i) {
  if (space == nullptr || i >= space->labels.size()) return nullptr;
  return space->labels[i].c_str();
}

cd_status cd_c_function(const cd_space* space, const double* lambda, size_t len, cd_complex* out) {
  return guarded([&] {
    const auto w = weight_of(space, lambda, len);
    if (out == nullptr) throw cartan::InvalidArgument("out is NULL");
    if (!space->spec.group_case()) throw cartan::InvalidArgument("c-function needs a group-case space");
    *out = to_c(cartan::c_function(space->spec.ambient(), w).value);
  });
}

cd_status cd_component_term(const cd_space* space, size_t component, const double* lambda, size_t len,
                            cd_complex* out) {
  return guarded([&] {
    const auto w = weight_of(space, lambda, len);
    if (out == nullptr) throw cartan::InvalidArgument("out is NULL");
    if (space->spec.group_case()) throw cartan::InvalidArgument("component terms need an inner symmetric space");
    if (component >= space->components.size()) throw cartan::InvalidArgument("component index out of range");
    *out = to_c(cartan::component_term(space->spec, space->components[component], w).value);
  });
}

cd_status cd_diagonal_fourier(const cd_space* space, const double* lambda, size_t len, cd_complex* out) {
  return guarded([&] {
    const auto w = weight_of(space, lambda, len);
    if (out == nullptr) throw cartan::InvalidArgument("out is NULL");
    if (space->spec.group_case()) throw cartan::InvalidArgument("diagonal Fourier transform needs an inner space");
    *out = to_c(cartan::diagonal_fourier(space->spec, w).value);
  });
}

cd_status cd_eval(const cd_verify_config* config, cd_report** out) {
  return guarded([&] {
    if (out == nullptr) throw cartan::InvalidArgument("out is NULL");
    *out = nullptr;
    *out = new cd_report{cartan::run_eval(to_cpp(config)), {}, {}};
  });
}

cd_status cd_verify(const cd_verify_config* config, cd_report** out) {
  return guarded([&] {
    if (out == nullptr) throw cartan::InvalidArgument("out is NULL");
    *out = nullptr;
    *out = new cd_report{cartan::run_verify(to_cpp(config)), {}, {}};
  });
}

cd_status cd_certify(const char* suite, uint64_t seed, const cd_tolerances* tol, cd_report** out) {
  return guarded([&] {
    if (suite == nullptr || out == nullptr) throw cartan::InvalidArgument("NULL argument");
    *out = nullptr;
    const cartan::Tolerances t = tol ? to_cpp(*tol) : cartan::Tolerances{};
    *out = new cd_report{cartan::run_certify(suite, seed, t), {}, {}};
  });
}

void cd_report_free(cd_report* report) { delete report; }

int cd_report_passed(const cd_report* report) { return report && report->report.passed ? 1 : 0; }

double cd_report_wall_clock(const cd_report* report) { return report ? report->report.wall_clock : 0.0; }

size_t cd_report_row_count(const cd_report* report) { return report ? report->report.rows.size() : 0; }

cd_status cd_report_row(const cd_report* report, size_t i, cd_row* out) {
  return guarded([&] {
    if (report == nullptr || out == nullptr) throw cartan::InvalidArgument("NULL argument");
    if (i >= report->report.rows.size()) throw cartan::InvalidArgument("row index out of range");
    const auto& r = report->report.rows[i];
    *out = cd_row{r.space.c_str(), r.lambda.c_str(), r.component.c_str(), to_c(r.closed), r.mc ? 1 : 0,
                  to_c(r.mc.value_or(0.0)), r.std_error, r.z, r.pass ? 1 : 0};
  });
}

const char* cd_report_json(cd_report* report) {
  if (report == nullptr) return nullptr;
  report->json_cache = cartan::report_json(report->report);
  return report->json_cache.c_str();
}

const char* cd_report_payload_json(cd_report* report) {
  if (report == nullptr) return nullptr;
  report->payload_cache = cartan::payload_json(report->report);
  return report->payload_cache.c_str();
}

cd_status cd_report_from_json(const char* text, cd_report** out) {
  return guarded([&] {
    if (text == nullptr || out == nullptr) throw cartan::InvalidArgument("NULL argument");
    *out = nullptr;
    *out = new cd_report{cartan::report_from_json(text), {}, {}};
  });
}

cd_status cd_format_table(const cd_report* const* reports, size_t n, const char* format, char** out) {
  return guarded([&] {
    if (format == nullptr || out == nullptr) throw cartan::InvalidArgument("NULL argument");
    *out = nullptr;
    const auto all = collect(reports, n);
    const std::string text = cartan::emit_table(all, format);
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (buf == nullptr) throw std::bad_alloc();
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
  });
}

cd_status cd_write_table(const cd_report* const* reports, size_t n, const char* format, const char* path) {
  return guarded([&] {
    if (format == nullptr || path == nullptr) throw cartan::InvalidArgument("NULL argument");
    cartan::write_table(collect(reports, n), format, path);
  });
}

void cd_string_free(char* s) { std::free(s); }

}  // extern "C"
