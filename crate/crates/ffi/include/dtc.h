#ifndef DTC_H
#define DTC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Coefficient field for homology queries.
typedef enum DtcField {
  DTC_FIELD_RATIONAL = 0,
  DTC_FIELD_MOD2 = 1,
} DtcField;

// Result of a fallible call.
typedef enum DtcStatus {
  DTC_STATUS_OK = 0,
  DTC_STATUS_NULL_ARGUMENT = 1,
  DTC_STATUS_INVALID_UTF8 = 2,
  DTC_STATUS_INVALID_ARGUMENT = 3,
  // the computation ran and reported a failure
  DTC_STATUS_FAILED = 4,
  DTC_STATUS_BUFFER_TOO_SMALL = 5,
  DTC_STATUS_PANIC = 6,
} DtcStatus;

// Opaque simplicial complex handle.
typedef struct DtcComplex DtcComplex;

// Opaque planner handle.
typedef struct DtcPlanner DtcPlanner;

// Summary of a planner audit.
typedef struct DtcAuditSummary {
  size_t samples;
  size_t violations;
  size_t max_support;
  size_t declared_pieces;
  double max_endpoint_error;
} DtcAuditSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until the
// next call into the library from the same thread; do not free it.
const char *dtc_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed already.
void dtc_string_free(char *s);

// Library version as a static string.
const char *dtc_version(void);

// Looks up a registered planner (`"circle"`, `"rpn(2)"`, ...) or one of the
// negative-control fixtures. Null when the name is unknown.
//
// # Safety
// `name` must be null or a nul-terminated string.
struct DtcPlanner *dtc_planner_new(const char *name);

// # Safety
// `p` must be null or a handle from `dtc_planner_new` not yet freed.
void dtc_planner_free(struct DtcPlanner *p);

// Declared number of pieces, 0 for a null handle.
//
// # Safety
// `p` must be null or a live planner handle.
size_t dtc_planner_pieces(const struct DtcPlanner *p);

// Plans from `from_json` to `to_json` (points in the planner's JSON
// encoding) and writes the distributed path as JSON to `*out`:
// `{"support": n, "pieces": [{"weight": "p/q", "path": ...}]}`.
//
// # Safety
// Pointers must be valid; `*out` receives a string for `dtc_string_free`.
enum DtcStatus dtc_planner_plan(const struct DtcPlanner *p,
                                const char *from_json,
                                const char *to_json,
                                char **out);

// Audits `samples` random endpoint pairs. Writes the summary to `*summary`
// and returns `DTC_STATUS_FAILED` when any violation was found.
//
// # Safety
// `p` must be a live planner handle and `summary` writable.
enum DtcStatus dtc_planner_audit(const struct DtcPlanner *p,
                                 size_t samples,
                                 uint64_t seed,
                                 struct DtcAuditSummary *summary);

// Parses `{"vertices": N, "maximal": [[...], ...]}`. Null on error.
//
// # Safety
// `json` must be null or a nul-terminated string.
struct DtcComplex *dtc_complex_from_json(const char *json);

// Built-in triangulation by name (`"S2"`, `"T2"`, `"RP2"`, ...). Null when
// the name is unknown.
//
// # Safety
// `name` must be null or a nul-terminated string.
struct DtcComplex *dtc_complex_fixture(const char *name);

// # Safety
// `c` must be null or a complex handle not yet freed.
void dtc_complex_free(struct DtcComplex *c);

// Betti numbers over `field`. Writes up to `cap` values to `out` and the
// full count to `*len`; returns `DTC_STATUS_BUFFER_TOO_SMALL` when `cap`
// is short. `out` may be null when `cap` is 0.
//
// # Safety
// `out` must hold `cap` values and `len` be writable.
enum DtcStatus dtc_complex_betti(const struct DtcComplex *c,
                                 enum DtcField field,
                                 size_t *out,
                                 size_t cap,
                                 size_t *len);

// Rational lower bounds: `*dcat` gets the cup-length and `*dtc` the
// zero-divisor cup-length.
//
// # Safety
// `c` must be a live complex handle; `dcat` and `dtc` writable.
enum DtcStatus dtc_complex_lower_bounds(const struct DtcComplex *c, size_t *dcat, size_t *dtc);

// Full bounds report as JSON, the same document `dtc bounds` prints.
//
// # Safety
// `c` must be a live complex handle; `*out` receives a string for
// `dtc_string_free`.
enum DtcStatus dtc_complex_bounds_json(const struct DtcComplex *c, char **out);

// Runs the command line with `argc` arguments (program name first) and
// returns its exit code, or -1 when the arguments themselves are unusable.
// Captured output goes to `*out` and `*err`; either may be null to discard.
//
// # Safety
// `argv` must hold `argc` nul-terminated strings.
int32_t dtc_run(size_t argc, const char *const *argv, char **out, char **err);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DTC_H */
