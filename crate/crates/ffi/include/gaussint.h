#ifndef GAUSSINT_H
#define GAUSSINT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Report layout for [`gi_verify_all_report`].
typedef enum GiReportFormat {
  GI_REPORT_FORMAT_JSON = 0,
  GI_REPORT_FORMAT_CSV = 1,
  GI_REPORT_FORMAT_MARKDOWN = 2,
} GiReportFormat;

// Result code of every fallible entry point.
typedef enum GiStatus {
  GI_STATUS_OK = 0,
  GI_STATUS_NULL_POINTER = 1,
  GI_STATUS_INVALID_UTF8 = 2,
  GI_STATUS_UNKNOWN_ID = 3,
  GI_STATUS_INVALID_PARAMS = 4,
  GI_STATUS_DOMAIN = 5,
  GI_STATUS_PARSE = 6,
  GI_STATUS_NO_MATCH = 7,
  GI_STATUS_QUADRATURE = 8,
  GI_STATUS_INTERNAL = 9,
} GiStatus;

// Outcome of a single certification.
typedef enum GiVerifyStatus {
  GI_VERIFY_STATUS_PASS = 0,
  GI_VERIFY_STATUS_FAIL = 1,
  GI_VERIFY_STATUS_ORACLE_NONCONVERGED = 2,
} GiVerifyStatus;

// A parsed and normalized integral query.
typedef struct GiQuery GiQuery;

// One verification record, without the textual fields.
typedef struct GiRecord {
  double closed_value;
  double quad_value;
  double abs_diff;
  double tol;
  enum GiVerifyStatus status;
  size_t evaluations;
} GiRecord;

// Quadrature result for a parsed query.
typedef struct GiQuadrature {
  double value;
  double abs_error_estimate;
  size_t evaluations;
  bool converged;
} GiQuadrature;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failure on this thread, or NULL if none.
//
// The pointer stays valid until the next failing call on the same thread.
const char *gi_last_error_message(void);

// Library version as a static string.
const char *gi_version(void);

// Γ(x). Fails with `Domain` at poles and on overflow.
//
// # Safety
//
// Pointer arguments must be NULL or valid as described in the crate docs.
enum GiStatus gi_gamma(double x, double *out);

// Real erf on the whole line.
double gi_erf(double x);

// Real erfc on the whole line.
double gi_erfc(double x);

// Real erfi; ±infinity once the value overflows.
double gi_erfi(double x);

// Complex erf for |z| ≤ 6.
//
// # Safety
//
// Pointer arguments must be NULL or valid as described in the crate docs.
enum GiStatus gi_erf_complex(double re, double im, double *out_re, double *out_im);

// Modified Bessel function of the first kind, I_n(z).
//
// # Safety
//
// Pointer arguments must be NULL or valid as described in the crate docs.
enum GiStatus gi_bessel_i(int n, double z, double *out);

// Principal branch of the Lambert W function, x ≥ −1/e.
//
// # Safety
//
// Pointer arguments must be NULL or valid as described in the crate docs.
enum GiStatus gi_lambert_w0(double x, double *out);

// Number of catalog entries, auxiliary entries included.
size_t gi_catalog_len(void);

// Static id of the entry at `index`, or NULL when out of range.
const char *gi_catalog_id(size_t index);

// Closed-form value of entry `id` with `len` named parameters.
//
// # Safety
//
// Pointer arguments must be NULL or valid as described in the crate docs.
enum GiStatus gi_closed_form(const char *id,
                             const char *const *names,
                             const double *values,
                             size_t len,
                             double *out);

// Certifies entry `id` against the quadrature oracle.
//
// A `tol` of zero or less uses the entry's tolerance class. Oracle failures
// still produce a record; only argument errors return a non-`Ok` status.
//
// # Safety
//
// Pointer arguments must be NULL or valid as described in the crate docs.
enum GiStatus gi_verify(const char *id,
                        const char *const *names,
                        const double *values,
                        size_t len,
                        double tol,
                        struct GiRecord *out);

// Verifies the whole catalog over the default parameter grids and writes
// the report to `*out`, to be released with [`gi_string_free`].
//
// # Safety
//
// Pointer arguments must be NULL or valid as described in the crate docs.
enum GiStatus gi_verify_all_report(enum GiReportFormat format, char **out);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
//
// Pointer arguments must be NULL or valid as described in the crate docs.
void gi_string_free(char *s);

// Parses `text` into a new query handle.
//
// On a parse error the status is `Parse`, and if `error_pos` is non-NULL it
// receives the 1-based character position of the problem.
//
// # Safety
//
// Pointer arguments must be NULL or valid as described in the crate docs.
enum GiStatus gi_query_parse(const char *text, struct GiQuery **out, size_t *error_pos);

// Releases a query handle. NULL is ignored.
//
// # Safety
//
// Pointer arguments must be NULL or valid as described in the crate docs.
void gi_query_free(struct GiQuery *q);

// Static id of the catalog entry the query matches; `NoMatch` otherwise.
//
// # Safety
//
// Pointer arguments must be NULL or valid as described in the crate docs.
enum GiStatus gi_query_match(const struct GiQuery *q, const char **id);

// Value of parameter `name` bound by the match.
//
// # Safety
//
// Pointer arguments must be NULL or valid as described in the crate docs.
enum GiStatus gi_query_param(const struct GiQuery *q, const char *name, double *out);

// Closed-form value of the matched entry at the bound parameters.
//
// # Safety
//
// Pointer arguments must be NULL or valid as described in the crate docs.
enum GiStatus gi_query_closed_form(const struct GiQuery *q, double *out);

// Integrates the query's integrand numerically to absolute tolerance `tol`,
// splitting at the matched entry's breakpoints when there is a match.
//
// # Safety
//
// Pointer arguments must be NULL or valid as described in the crate docs.
enum GiStatus gi_query_integrate(const struct GiQuery *q, double tol, struct GiQuadrature *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GAUSSINT_H */
