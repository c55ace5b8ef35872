#ifndef CARTAN_DIAG_H
#define CARTAN_DIAG_H

/* C interface to the cartan_diag library.
 *
 * Every fallible call returns a cd_status; on failure cd_last_error() holds
 * a message for the calling thread until its next failing call. Handles are
 * opaque and freed with their matching *_free function. Strings returned as
 * const char* are owned by the handle they came from. Weights are passed in
 * simple-root coordinates: lambda = sum_i lambda[i] alpha_{i+1}.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CD_API __declspec(dllexport)
#else
#define CD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cd_status {
  CD_OK = 0,
  CD_ERR_INVALID_ARGUMENT = 1,
  CD_ERR_POLE = 2,
  CD_ERR_NON_GENERIC = 3,
  CD_ERR_PHASE = 4,
  CD_ERR_NUMERICAL = 5,
  CD_ERR_QUADRATURE = 6,
  CD_ERR_IO = 7,
  CD_ERR_INTERNAL = 8
} cd_status;

typedef struct cd_complex {
  double re;
  double im;
} cd_complex;

typedef struct cd_tolerances {
  double z;
  double pfaffian_su11;
  double pfaffian_su12;
  double skew;
  double equivariance;
  double momentum;
  double jacobian;
  double a_phi;
  double a26;
  double factored;
  double roundtrip;
  double quadrature;
} cd_tolerances;

typedef struct cd_verify_config {
  const char* space;
  const double* lambda;
  size_t lambda_len;
  int64_t n_samples;
  uint64_t seed;
  cd_tolerances tol;
  /* 0: CARTAN_DIAG_THREADS or the hardware concurrency */
  int threads;
} cd_verify_config;

/* One comparison row. mc_present is 0 for closed-form-only rows. */
typedef struct cd_row {
  const char* space;
  const char* lambda;
  const char* component;
  cd_complex closed;
  int mc_present;
  cd_complex mc;
  double std_error;
  double z;
  int pass;
} cd_row;

typedef struct cd_space cd_space;
typedef struct cd_report cd_report;

CD_API const char* cd_version(void);
CD_API const char* cd_last_error(void);
CD_API const char* cd_status_name(cd_status s);

CD_API cd_tolerances cd_default_tolerances(void);
/* Fills defaults (seed, sample count, tolerances); space and lambda stay NULL. */
CD_API void cd_default_config(cd_verify_config* config);

CD_API size_t cd_catalog_size(void);
CD_API const char* cd_catalog_name(size_t i);

CD_API cd_status cd_space_open(const char* name, cd_space** out);
CD_API void cd_space_free(cd_space* space);
CD_API const char* cd_space_name(const cd_space* space);
CD_API int cd_space_rank(const cd_space* space);
CD_API int cd_space_is_group(const cd_space* space);
/* M = |W(U)| / |W(K)|; 1 for the group case. */
CD_API int64_t cd_space_order_m(const cd_space* space);
CD_API size_t cd_space_component_count(const cd_space* space);
CD_API const char* cd_space_component_label(const cd_space* space, size_t i);

/* Group case only. */
CD_API cd_status cd_c_function(const cd_space* space, const double* lambda, size_t len, cd_complex* out);
/* Inner case only; component indexes follow cd_space_component_label. */
CD_API cd_status cd_component_term(const cd_space* space, size_t component, const double* lambda, size_t len,
                                   cd_complex* out);
CD_API cd_status cd_diagonal_fourier(const cd_space* space, const double* lambda, size_t len, cd_complex* out);

CD_API cd_status cd_eval(const cd_verify_config* config, cd_report** out);
CD_API cd_status cd_verify(const cd_verify_config* config, cd_report** out);
/* suite: "poisson", "bottsamelson" or "factorizations"; tol may be NULL. */
CD_API cd_status cd_certify(const char* suite, uint64_t seed, const cd_tolerances* tol, cd_report** out);

CD_API void cd_report_free(cd_report* report);
CD_API int cd_report_passed(const cd_report* report);
CD_API double cd_report_wall_clock(const cd_report* report);
CD_API size_t cd_report_row_count(const cd_report* report);
CD_API cd_status cd_report_row(const cd_report* report, size_t i, cd_row* out);
/* Full report with a metadata block. */
CD_API const char* cd_report_json(cd_report* report);
/* The deterministic payload only. */
CD_API const char* cd_report_payload_json(cd_report* report);
CD_API cd_status cd_report_from_json(const char* text, cd_report** out);

/* format: "csv" or "json". The string from cd_format_table is released
 * with cd_string_free. */
CD_API cd_status cd_format_table(const cd_report* const* reports, size_t n, const char* format, char** out);
CD_API cd_status cd_write_table(const cd_report* const* reports, size_t n, const char* format, const char* path);
CD_API void cd_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
