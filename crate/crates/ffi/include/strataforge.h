#ifndef STRATAFORGE_H
#define STRATAFORGE_H

/* Generated by cbindgen; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result codes. Zero is success; each library error family has its own code.
 */
typedef enum SfStatus {
  SF_STATUS_OK = 0,
  SF_STATUS_NULL_POINTER = 1,
  SF_STATUS_INVALID_UTF8 = 2,
  SF_STATUS_INDEX_OUT_OF_RANGE = 3,
  SF_STATUS_GRAPH = 10,
  SF_STATUS_STRATA = 11,
  SF_STATUS_FILL = 12,
  SF_STATUS_HURWITZ = 13,
  SF_STATUS_BOUND = 14,
  SF_STATUS_REWRITE = 15,
  SF_STATUS_CONFIG = 16,
  SF_STATUS_PANIC = 99,
} SfStatus;

/**
 * Kind of statement queried on a fill result.
 */
typedef enum SfFlag {
  SF_FLAG_OPEN = 0,
  SF_FLAG_RATIONAL_TAILS = 1,
  SF_FLAG_COMPACT_TYPE = 2,
  SF_FLAG_BAR = 3,
} SfFlag;

/**
 * The fixed point of the filling rules over a set of facts.
 */
typedef struct SfFillResult SfFillResult;

/**
 * An ordered list of stable graphs.
 */
typedef struct SfGraphSet SfGraphSet;

/**
 * An exact polynomial.
 */
typedef struct SfPoly SfPoly;

/**
 * A normal-form engine for one preset and number of markings.
 */
typedef struct SfRewriter SfRewriter;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last error on this thread, or null. The pointer stays
 * valid until the next call into the library on the same thread.
 */
const char *sf_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *sf_version(void);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void sf_string_free(char *s);

/**
 * Enumerates all stable graphs of type `(g, n)` with `3g - 3 + n <= cap`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum SfStatus sf_graphs_enumerate(uint32_t g, uint32_t n, uint32_t cap, struct SfGraphSet **out);

/**
 * Number of graphs in the set, or 0 for null.
 *
 * # Safety
 * `set` must be null or a live handle.
 */
uintptr_t sf_graph_set_len(const struct SfGraphSet *set);

/**
 * JSON serialization of graph `index`. Free with [`sf_string_free`].
 *
 * # Safety
 * `set` must be a live handle and `out` a valid pointer.
 */
enum SfStatus sf_graph_set_json(const struct SfGraphSet *set, uintptr_t index, char **out);

/**
 * Hex canonical key of graph `index`. Free with [`sf_string_free`].
 *
 * # Safety
 * `set` must be a live handle and `out` a valid pointer.
 */
enum SfStatus sf_graph_set_key(const struct SfGraphSet *set, uintptr_t index, char **out);

/**
 * Order of the automorphism group of graph `index`, acting on half-edges.
 *
 * # Safety
 * `set` must be a live handle and `out` a valid pointer.
 */
enum SfStatus sf_graph_set_automorphisms(const struct SfGraphSet *set,
                                         uintptr_t index,
                                         uint64_t *out);

/**
 * # Safety
 * `set` must be null or a live handle; it is invalid afterwards.
 */
void sf_graph_set_free(struct SfGraphSet *set);

/**
 * Propagates the filling rules over `facts_json` (null selects the
 * built-in fact table) on the grid `g <= max_g`, `n <= max_n`.
 *
 * # Safety
 * `facts_json` must be null or a NUL-terminated string; `out` must be valid.
 */
enum SfStatus sf_fill_run(const char *facts_json,
                          uint32_t max_g,
                          uint32_t max_n,
                          struct SfFillResult **out);

/**
 * Whether `flag` was derived at `(g, n)`.
 *
 * # Safety
 * `res` must be a live handle and `out` a valid pointer.
 */
enum SfStatus sf_fill_holds(const struct SfFillResult *res,
                            enum SfFlag flag,
                            uint32_t g,
                            uint32_t n,
                            bool *out);

/**
 * Largest `n` with `flag` at genus `g`, or -1 if there is none.
 *
 * # Safety
 * `res` must be a live handle and `out` a valid pointer.
 */
enum SfStatus sf_fill_height(const struct SfFillResult *res,
                             enum SfFlag flag,
                             uint32_t g,
                             int64_t *out);

/**
 * Text chart of the grid. Free with [`sf_string_free`].
 *
 * # Safety
 * `res` must be a live handle and `out` a valid pointer.
 */
enum SfStatus sf_fill_chart(const struct SfFillResult *res, char **out);

/**
 * # Safety
 * `res` must be null or a live handle; it is invalid afterwards.
 */
void sf_fill_free(struct SfFillResult *res);

/**
 * Builds a rewriter for a preset such as `"trig:4"` and `n` markings.
 *
 * # Safety
 * `preset` must be a NUL-terminated string; `out` must be valid.
 */
enum SfStatus sf_rewriter_new(const char *preset, uint32_t n, struct SfRewriter **out);

/**
 * # Safety
 * `rw` must be null or a live handle; it is invalid afterwards.
 */
void sf_rewriter_free(struct SfRewriter *rw);

/**
 * Parses a polynomial expression.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be valid.
 */
enum SfStatus sf_poly_parse(const char *text, struct SfPoly **out);

/**
 * Printable (and re-parseable) form of a polynomial.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum SfStatus sf_poly_to_string(const struct SfPoly *p, char **out);

/**
 * Whether the polynomial is zero.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum SfStatus sf_poly_is_zero(const struct SfPoly *p, bool *out);

/**
 * # Safety
 * `p` must be null or a live handle; it is invalid afterwards.
 */
void sf_poly_free(struct SfPoly *p);

/**
 * Normal form of `p` modulo the rewriter's relations, as a new handle.
 *
 * # Safety
 * `rw` and `p` must be live handles; `out` must be valid.
 */
enum SfStatus sf_rewriter_normal_form(const struct SfRewriter *rw,
                                      const struct SfPoly *p,
                                      struct SfPoly **out);

/**
 * Point-independence bound for trigonal curves of genus `g`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum SfStatus sf_bound_trigonal(uint32_t g, int64_t *out);

/**
 * Genus and point-independence bound for plane curves of degree `d`.
 *
 * # Safety
 * `out_genus` and `out_bound` must be valid pointers.
 */
enum SfStatus sf_bound_plane(uint32_t d, uint32_t *out_genus, int64_t *out_bound);

/**
 * Point-independence bound for tetragonal curves of genus `g` whose
 * splitting type starts with `f1`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum SfStatus sf_bound_tetragonal(uint32_t g, uint32_t f1, int64_t *out);

/**
 * Number of branch points and total number of ramification points of
 * the degree-`k` genus-`g` profile with one point of extra ramification `a`.
 *
 * # Safety
 * `out_m` and `out_total` must be valid pointers.
 */
enum SfStatus sf_fph_profile(uint32_t k,
                             uint32_t g,
                             uint32_t a,
                             uint32_t *out_m,
                             uint64_t *out_total);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STRATAFORGE_H */
