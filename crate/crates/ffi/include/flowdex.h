#ifndef FLOWDEX_H
#define FLOWDEX_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FlowdexStatus {
  FLOWDEX_STATUS_OK = 0,
  FLOWDEX_STATUS_NOT_FOUND = 1,
  FLOWDEX_STATUS_INVALID_ARGUMENT = 2,
  FLOWDEX_STATUS_BUDGET_EXCEEDED = 3,
  FLOWDEX_STATUS_PARSE_ERROR = 4,
  FLOWDEX_STATUS_VERIFICATION_FAILED = 5,
  FLOWDEX_STATUS_NULL_POINTER = 6,
  FLOWDEX_STATUS_INTERNAL = 7,
} FlowdexStatus;

/**
 * Opaque flow certificate.
 */
typedef struct FlowdexCertificate FlowdexCertificate;

/**
 * Opaque multigraph.
 */
typedef struct FlowdexGraph FlowdexGraph;

typedef struct FlowdexGSample {
  double g1;
  double g2;
  double g3;
  double min_g;
} FlowdexGSample;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *flowdex_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void flowdex_string_free(char *s);

/**
 * Parses the text graph format.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum FlowdexStatus flowdex_graph_parse(const char *text, struct FlowdexGraph **out);

/**
 * Builds a named graph such as `petersen`, `k4`, `k33` or `c5`.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum FlowdexStatus flowdex_graph_named(const char *name, struct FlowdexGraph **out);

/**
 * # Safety
 * `g` must be null or a graph from this library, not yet freed.
 */
void flowdex_graph_free(struct FlowdexGraph *g);

/**
 * # Safety
 * `g` must be a valid graph.
 */
size_t flowdex_graph_vertex_count(const struct FlowdexGraph *g);

/**
 * # Safety
 * `g` must be a valid graph.
 */
size_t flowdex_graph_edge_count(const struct FlowdexGraph *g);

/**
 * Searches for a nowhere-zero `k`-flow. On success writes the tail, head
 * and value of every edge into the caller's arrays, each of length
 * `flowdex_graph_edge_count(g)`. Returns `NOT_FOUND` when none exists.
 * A `budget` of 0 uses the default.
 *
 * # Safety
 * `g` must be a valid graph and the output arrays must hold `m` elements.
 */
enum FlowdexStatus flowdex_find_int_nzf(const struct FlowdexGraph *g,
                                        uint32_t k,
                                        uint64_t budget,
                                        size_t *tails,
                                        size_t *heads,
                                        int64_t *values);

/**
 * Builds the six-flow construction with one of the vector columns
 * (`d2-anyp`, `d3-anyp`, `d3-inf`, `d3-one`) and certifies it at `p`
 * (`INFINITY` allowed).
 *
 * # Safety
 * `g` must be a valid graph, `column` a NUL-terminated string, `out`
 * writable.
 */
enum FlowdexStatus flowdex_build_six_flow(const struct FlowdexGraph *g,
                                          const char *column,
                                          double p,
                                          struct FlowdexCertificate **out);

/**
 * Multi-start search for a `d`-dimensional flow with small norm ratio.
 *
 * # Safety
 * `g` must be a valid graph; `out_r` and `out` must be writable.
 */
enum FlowdexStatus flowdex_optimize(const struct FlowdexGraph *g,
                                    size_t d,
                                    double p,
                                    size_t restarts,
                                    uint64_t seed,
                                    double *out_r,
                                    struct FlowdexCertificate **out);

/**
 * Parses a certificate from its text form.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum FlowdexStatus flowdex_certificate_parse(const char *text, struct FlowdexCertificate **out);

/**
 * Text form of a certificate; free with [`flowdex_string_free`].
 *
 * # Safety
 * `cert` must be a valid certificate; `out` must be writable.
 */
enum FlowdexStatus flowdex_certificate_to_text(const struct FlowdexCertificate *cert, char **out);

/**
 * Returns `OK` when the certificate verifies at `tolerance`, otherwise
 * `VERIFICATION_FAILED` with the itemized report as the last error.
 *
 * # Safety
 * `cert` must be a valid certificate.
 */
enum FlowdexStatus flowdex_certificate_verify(const struct FlowdexCertificate *cert,
                                              double tolerance);

/**
 * Claimed ratio bound `r`, or NaN for a null pointer.
 *
 * # Safety
 * `cert` must be null or a valid certificate.
 */
double flowdex_certificate_r(const struct FlowdexCertificate *cert);

/**
 * # Safety
 * `cert` must be a valid certificate.
 */
size_t flowdex_certificate_dimension(const struct FlowdexCertificate *cert);

/**
 * # Safety
 * `cert` must be null or a certificate from this library, not yet freed.
 */
void flowdex_certificate_free(struct FlowdexCertificate *cert);

/**
 * `g1`, `g2`, `g3` and their minimum at `p` (`INFINITY` allowed).
 *
 * # Safety
 * `out` must be writable.
 */
enum FlowdexStatus flowdex_g_funcs(double p, struct FlowdexGSample *out);

/**
 * Crossover of `g1` and `g2` on `[1, 2]`.
 *
 * # Safety
 * `out` must be writable.
 */
enum FlowdexStatus flowdex_crossover_p0(double *out);

/**
 * Upper bound for `g2` on `[p1, p2]`.
 *
 * # Safety
 * `out` must be writable.
 */
enum FlowdexStatus flowdex_phi_interval(double p1, double p2, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FLOWDEX_H */
