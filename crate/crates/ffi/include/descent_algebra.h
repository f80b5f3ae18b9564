#ifndef DESCENT_ALGEBRA_H
#define DESCENT_ALGEBRA_H

/* Generated by cbindgen from the Rust sources; edits are overwritten. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DaFlavor {
  DA_FLAVOR_ORDINARY = 0,
  DA_FLAVOR_TYPE_B = 1,
  DA_FLAVOR_AUGMENTED = 2,
} DaFlavor;

typedef enum DaKind {
  DA_KIND_A = 0,
  DA_KIND_CYCLIC = 1,
  DA_KIND_B = 2,
  DA_KIND_AUGMENTED = 3,
} DaKind;

typedef enum DaLaw {
  DA_LAW_A = 0,
  DA_LAW_CYCLIC = 1,
  DA_LAW_B = 2,
  DA_LAW_AUG = 3,
  DA_LAW_MIXED = 4,
} DaLaw;

typedef enum DaQPair {
  DA_Q_PAIR_AA = 0,
  DA_Q_PAIR_BB = 1,
  DA_Q_PAIR_AUG_AUG = 2,
  DA_Q_PAIR_AUG_B = 3,
} DaQPair;

/**
 * Result codes. The first four match the command line exit codes.
 */
typedef enum DaStatus {
  DA_STATUS_OK = 0,
  DA_STATUS_VERIFICATION_FAILED = 1,
  DA_STATUS_INVALID_INPUT = 2,
  DA_STATUS_CAPACITY = 3,
  DA_STATUS_NULL_POINTER = 4,
  DA_STATUS_INVARIANT_VIOLATION = 5,
  DA_STATUS_PANIC = 6,
} DaStatus;

/**
 * Opaque rational group algebra element.
 */
typedef struct DaElement DaElement;

/**
 * Opaque poset of either type.
 */
typedef struct DaPoset DaPoset;

/**
 * Opaque verification report.
 */
typedef struct DaReport DaReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *da_version(void);

/**
 * Message of the last failure on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *da_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void da_string_free(char *s);

/**
 * Descent statistics of the window `perm[0..len]` as JSON. With `is_signed`
 * the window is read as a signed permutation.
 *
 * # Safety
 * `perm` must point to `len` readable values; `out` must be writable.
 */
enum DaStatus da_permutation_stats_json(const int32_t *perm,
                                        size_t len,
                                        bool is_signed,
                                        char **out);

/**
 * Eulerian polynomial coefficients. Writes at most `cap` values into
 * `counts` and the full length into `len`; a short buffer is an error.
 *
 * # Safety
 * `counts` must have room for `cap` values; `len` must be writable.
 */
enum DaStatus da_eulerian_polynomial(size_t n,
                                     enum DaKind kind,
                                     uint64_t *counts,
                                     size_t cap,
                                     size_t *len);

/**
 * The Eulerian element of index `i`.
 *
 * # Safety
 * `out` must be writable.
 */
enum DaStatus da_element_eulerian(size_t n, enum DaKind kind, size_t i, struct DaElement **out);

/**
 * The structure polynomial at `x = num/den`, barred when `bar`.
 *
 * # Safety
 * `out` must be writable.
 */
enum DaStatus da_element_structure(size_t n,
                                   enum DaKind kind,
                                   int64_t num,
                                   int64_t den,
                                   bool bar,
                                   struct DaElement **out);

/**
 * Parses an element from its JSON wire format.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum DaStatus da_element_from_json(const char *json, struct DaElement **out);

/**
 * # Safety
 * `e` must be a live handle; `out` must be writable.
 */
enum DaStatus da_element_to_json(const struct DaElement *e, char **out);

/**
 * `a · b` in the group algebra.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum DaStatus da_element_convolve(const struct DaElement *a,
                                  const struct DaElement *b,
                                  struct DaElement **out);

/**
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum DaStatus da_element_add(const struct DaElement *a,
                             const struct DaElement *b,
                             struct DaElement **out);

/**
 * Multiplies every coefficient by `num/den`.
 *
 * # Safety
 * `e` must be a live handle; `out` must be writable.
 */
enum DaStatus da_element_scale(const struct DaElement *e,
                               int64_t num,
                               int64_t den,
                               struct DaElement **out);

/**
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum DaStatus da_element_equal(const struct DaElement *a, const struct DaElement *b, bool *out);

/**
 * Number of nonzero terms; 0 for a null handle.
 *
 * # Safety
 * `e` must be null or a live handle.
 */
size_t da_element_support_size(const struct DaElement *e);

/**
 * # Safety
 * `e` must be null or a handle from this library, not yet freed.
 */
void da_element_free(struct DaElement *e);

/**
 * Checks a product law. A failing identity still yields a report and
 * `DA_STATUS_VERIFICATION_FAILED`.
 *
 * # Safety
 * `out` must be writable.
 */
enum DaStatus da_verify_product(size_t n, enum DaLaw law, struct DaReport **out);

/**
 * Checks an identity by its command line name (`a`, `loday`, `theta`, ...).
 *
 * # Safety
 * `identity` must be a NUL-terminated string; `out` must be writable.
 */
enum DaStatus da_verify_named(size_t n, const char *identity, struct DaReport **out);

/**
 * Checks a q-product identity at `(k, l)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum DaStatus da_verify_q(size_t n,
                          enum DaQPair pair,
                          uint32_t k,
                          uint32_t l,
                          struct DaReport **out);

/**
 * # Safety
 * `r` must be null or a live handle.
 */
bool da_report_pass(const struct DaReport *r);

/**
 * Report JSON; `no_timing` zeroes the `millis` field.
 *
 * # Safety
 * `r` must be a live handle; `out` must be writable.
 */
enum DaStatus da_report_to_json(const struct DaReport *r, bool no_timing, char **out);

/**
 * # Safety
 * `r` must be null or a handle from this library, not yet freed.
 */
void da_report_free(struct DaReport *r);

/**
 * Parses the poset text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum DaStatus da_poset_parse(const char *text, struct DaPoset **out);

/**
 * Number of P-partitions with parameter `k`, by enumeration.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum DaStatus da_poset_count_partitions(const struct DaPoset *p,
                                        size_t k,
                                        enum DaFlavor flavor,
                                        uint64_t *out);

/**
 * Linear extensions as a JSON array of windows.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum DaStatus da_poset_linear_extensions_json(const struct DaPoset *p, char **out);

/**
 * # Safety
 * `p` must be null or a handle from this library, not yet freed.
 */
void da_poset_free(struct DaPoset *p);

/**
 * The `a`-shuffle distribution on `n` cards as JSON.
 *
 * # Safety
 * `out` must be writable.
 */
enum DaStatus da_shuffle_json(size_t n, uint64_t a, char **out);

/**
 * Distance to uniform after `1..=m` two-packet shuffles, as CSV with
 * `places` decimal digits.
 *
 * # Safety
 * `out` must be writable.
 */
enum DaStatus da_shuffle_tvd_csv(size_t n, uint32_t m, size_t places, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DESCENT_ALGEBRA_H */
