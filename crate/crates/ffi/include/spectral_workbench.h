#ifndef SPECTRAL_WORKBENCH_H
#define SPECTRAL_WORKBENCH_H

/* Generated by cbindgen from spectral-workbench-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes for every fallible entry point. `SW_OK` is zero so callers
 * can treat the status as a boolean failure flag.
 */
typedef enum SwStatus {
  SW_OK = 0,
  /**
   * A required pointer argument was null.
   */
  SW_NULL_ARGUMENT = 1,
  /**
   * Input text was not valid JSON for the expected schema.
   */
  SW_BAD_JSON = 2,
  /**
   * Structurally valid input violated a precondition (overlap, not a
   * tiling, window too small, …).
   */
  SW_FAILED_PRECONDITION = 3,
  /**
   * A search stopped early on its node budget; partial output was still
   * written.
   */
  SW_BUDGET_EXHAUSTED = 4,
  /**
   * A string argument was not valid UTF-8 or not a `p/q` rational.
   */
  SW_BAD_ARGUMENT = 5,
} SwStatus;

/**
 * Opaque handle to a finite union of half-open rational intervals.
 */
typedef struct SwDomain SwDomain;

/**
 * Opaque handle to a periodic point set `offsets + period·Z`.
 */
typedef struct SwPeriodicSet SwPeriodicSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Release a string returned by any `sw_*` function.
 * # Safety
 * `s` must be null or a pointer previously returned by this library and
 * not yet freed.
 */
void sw_string_free(char *s);

/**
 * Parse a domain from `{"intervals": [["p/q","p/q"], …]}` JSON and store a
 * new handle in `*out`.
 * # Safety
 * `json` must be a NUL-terminated string valid for reads; `out` must be
 * valid for writes.
 */
enum SwStatus sw_domain_parse(const char *json, struct SwDomain **out);

/**
 * Release a domain handle.
 * # Safety
 * `domain` must be null or a handle from this library, not yet freed.
 */
void sw_domain_free(struct SwDomain *domain);

/**
 * Serialize a domain back to its JSON form. Returns null on null input.
 * # Safety
 * `domain` must be null or a live handle from this library.
 */
char *sw_domain_to_json(const struct SwDomain *domain);

/**
 * Translate and rescale to leftmost point 0 and measure 1; stores a new
 * handle in `*out` (the input handle stays valid).
 * # Safety
 * `domain` must be a live handle; `out` must be valid for writes.
 */
enum SwStatus sw_domain_normalize(const struct SwDomain *domain, struct SwDomain **out);

/**
 * Total measure of the domain, as a double.
 * # Safety
 * `domain` must be a live handle; `out` must be valid for writes.
 */
enum SwStatus sw_domain_measure_f64(const struct SwDomain *domain, double *out);

/**
 * Parse a periodic set from `{"period": "p/q", "offsets": […]}` JSON.
 * # Safety
 * `json` must be a NUL-terminated string valid for reads; `out` must be
 * valid for writes.
 */
enum SwStatus sw_periodic_set_parse(const char *json, struct SwPeriodicSet **out);

/**
 * Release a periodic-set handle.
 * # Safety
 * `set` must be null or a handle from this library, not yet freed.
 */
void sw_periodic_set_free(struct SwPeriodicSet *set);

/**
 * Serialize a periodic set back to its JSON form. Returns null on null
 * input.
 * # Safety
 * `set` must be null or a live handle from this library.
 */
char *sw_periodic_set_to_json(const struct SwPeriodicSet *set);

/**
 * Exact spectrum verification; writes the full verdict object as JSON.
 * # Safety
 * `domain` and `set` must be live handles; `out_json` must be valid for
 * writes.
 */
enum SwStatus sw_verify_spectrum(const struct SwDomain *domain,
                                 const struct SwPeriodicSet *set,
                                 char **out_json);

/**
 * Exact level-`d` tiling check; writes 1 or 0 to `*out_tiles`.
 * # Safety
 * `domain` must be a live handle; `out_tiles` must be valid for writes.
 */
enum SwStatus sw_verify_tiling(const struct SwDomain *domain, uint64_t d, bool *out_tiles);

/**
 * Arithmetic-progression extension through the sampled window
 * `set ∩ [lo, hi)`; `lo`, `hi`, `a`, `d` are `"p/q"` strings. Writes the
 * verdict object as JSON.
 * # Safety
 * `domain` and `set` must be live handles; the four rational arguments
 * must be NUL-terminated strings valid for reads; `out_json` must be
 * valid for writes.
 */
enum SwStatus sw_ap_extend(const struct SwDomain *domain,
                           const struct SwPeriodicSet *set,
                           const char *lo,
                           const char *hi,
                           const char *a,
                           const char *d,
                           char **out_json);

/**
 * Value of the domain's transform at a real frequency.
 * # Safety
 * `domain` must be a live handle; `out_re` and `out_im` must be valid for
 * writes.
 */
enum SwStatus sw_eval_transform(const struct SwDomain *domain,
                                double xi,
                                double *out_re,
                                double *out_im);

/**
 * Numeric zero scan of the transform over `[lo, hi]`; writes a JSON array
 * of doubles.
 * # Safety
 * `domain` must be a live handle; `out_json` must be valid for writes.
 */
enum SwStatus sw_scan_zeros(const struct SwDomain *domain,
                            double lo,
                            double hi,
                            double tol,
                            char **out_json);

/**
 * Exhaustive periodic-spectrum search up to period `d_max`. `denom` and
 * `budget` of 0 mean "use the default". Writes the outcome object as JSON
 * even when the budget ran out (status `SwBudgetExhausted`).
 * # Safety
 * `domain` must be a live handle; `out_json` must be valid for writes.
 */
enum SwStatus sw_search(const struct SwDomain *domain,
                        uint64_t d_max,
                        uint64_t denom,
                        uint64_t budget,
                        char **out_json);

/**
 * Fiber decomposition of a level-`d` tiling domain; writes the
 * decomposition object as JSON.
 * # Safety
 * `domain` must be a live handle; `out_json` must be valid for writes.
 */
enum SwStatus sw_decompose(const struct SwDomain *domain, uint64_t d, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPECTRAL_WORKBENCH_H */
