#ifndef SOLID_TORUS_H
#define SOLID_TORUS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum StStatus {
  ST_STATUS_OK = 0,
  ST_STATUS_NULL_ARGUMENT = 1,
  ST_STATUS_INVALID_UTF8 = 2,
  ST_STATUS_PARSE_ERROR = 3,
  ST_STATUS_INVALID_INPUT = 4,
  ST_STATUS_NOT_FOUND = 5,
  ST_STATUS_OVERFLOW = 6,
  ST_STATUS_PANIC = 7,
} StStatus;

/**
 * A normal surface in standard coordinates.
 */
typedef struct StNormalVector StNormalVector;

/**
 * A validated triangulation.
 */
typedef struct StTriangulation StTriangulation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into the library on the same thread.
 */
const char *st_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void st_string_free(char *s);

/**
 * Parses the exchange text format.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum StStatus st_triangulation_parse(const char *text, struct StTriangulation **out);

/**
 * The layered solid torus `T_i`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum StStatus st_family(size_t i, struct StTriangulation **out);

/**
 * # Safety
 * `t` must be null or a handle from this library, not yet freed.
 */
void st_triangulation_free(struct StTriangulation *t);

/**
 * # Safety
 * `t` must be a live handle and `out` a valid pointer.
 */
enum StStatus st_triangulation_tet_count(const struct StTriangulation *t, size_t *out);

/**
 * Canonical text; free with `st_string_free`.
 *
 * # Safety
 * `t` must be a live handle and `out` a valid pointer.
 */
enum StStatus st_triangulation_serialize(const struct StTriangulation *t, char **out);

/**
 * Rank of `H1` and the boundary kernel slope. `has_kernel` is false when the
 * boundary is not a torus with a primitive kernel.
 *
 * # Safety
 * `t` must be a live handle; the output pointers must be valid.
 */
enum StStatus st_first_homology(const struct StTriangulation *t,
                                size_t *rank,
                                bool *has_kernel,
                                int64_t *kernel_x,
                                int64_t *kernel_y);

/**
 * Whether `min_{|n| <= window} |n x_{i+2} - y_{i+2}| >= x_{i+2}/3` and the
 * golden-ratio bound both hold.
 *
 * # Safety
 * `pass` must be a valid pointer.
 */
enum StStatus st_verify_61_2(size_t i, int64_t window, bool *pass);

/**
 * Least-complexity normal meridian disc with at most `max_pieces` pieces.
 * Returns `NotFound` when the budget holds none.
 *
 * # Safety
 * `t` must be a live handle and `out` a valid pointer.
 */
enum StStatus st_minimal_meridian_disc(const struct StTriangulation *t,
                                       uint64_t max_pieces,
                                       struct StNormalVector **out);

/**
 * Reads a vector from a JSON array of 7-integer arrays, checked against `t`.
 *
 * # Safety
 * `t` must be a live handle, `json` nul-terminated and `out` valid.
 */
enum StStatus st_normal_vector_from_json(const struct StTriangulation *t,
                                         const char *json,
                                         struct StNormalVector **out);

/**
 * JSON text of the vector; free with `st_string_free`.
 *
 * # Safety
 * `v` must be a live handle and `out` a valid pointer.
 */
enum StStatus st_normal_vector_to_json(const struct StNormalVector *v, char **out);

/**
 * Number of normal triangles and quadrilaterals.
 *
 * # Safety
 * `v` must be a live handle and `out` a valid pointer.
 */
enum StStatus st_normal_vector_piece_count(const struct StNormalVector *v, uint64_t *out);

/**
 * # Safety
 * `v` must be null or a handle from this library, not yet freed.
 */
void st_normal_vector_free(struct StNormalVector *v);

/**
 * Parallelity-bundle checks for the manifold cut along `v`: every component
 * is a product (`claim1`), and every component meeting the annulus meets
 * both sides of the disc (`claim2`).
 *
 * # Safety
 * `t` and `v` must be live handles; the output pointers must be valid.
 */
enum StStatus st_check_claims(const struct StTriangulation *t,
                              const struct StNormalVector *v,
                              bool *claim1,
                              bool *claim2);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SOLID_TORUS_H */
