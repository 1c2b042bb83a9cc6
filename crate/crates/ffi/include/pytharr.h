#ifndef PYTHARR_H
#define PYTHARR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PytharrStatus {
  PYTHARR_STATUS_OK = 0,
  PYTHARR_STATUS_NULL_POINTER = 1,
  PYTHARR_STATUS_INVALID_UTF8 = 2,
  PYTHARR_STATUS_PARSE_ERROR = 3,
  PYTHARR_STATUS_DOMAIN_ERROR = 4,
  PYTHARR_STATUS_PANIC = 5,
} PytharrStatus;

/**
 * Opaque handle to a parsed instance.
 */
typedef struct PytharrInstance PytharrInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *pytharr_last_error(void);

const char *pytharr_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void pytharr_string_free(char *s);

/**
 * Parses an instance. On success `*out` receives a new handle.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PytharrStatus pytharr_instance_from_json(const char *json, struct PytharrInstance **out);

/**
 * # Safety
 * `inst` must be null or a handle from this library, not yet freed.
 */
void pytharr_instance_free(struct PytharrInstance *inst);

/**
 * # Safety
 * `inst` must be a live handle and `out` a valid pointer.
 */
enum PytharrStatus pytharr_instance_to_json(const struct PytharrInstance *inst, char **out);

/**
 * Hyperplane equations as JSON.
 *
 * # Safety
 * `inst` must be a live handle and `out` a valid pointer.
 */
enum PytharrStatus pytharr_arrangement_json(const struct PytharrInstance *inst, char **out);

/**
 * Intersection semilattice as JSON.
 *
 * # Safety
 * `inst` must be a live handle and `out` a valid pointer.
 */
enum PytharrStatus pytharr_semilattice_json(const struct PytharrInstance *inst, char **out);

/**
 * # Safety
 * `inst` must be a live handle and `out` a valid pointer.
 */
enum PytharrStatus pytharr_is_gain_generic(const struct PytharrInstance *inst, bool *out);

/**
 * Lattice of flats as JSON. `bias` is null for the full lattice, or
 * comma-separated circles as on the command line (`abs,bct`).
 *
 * # Safety
 * `inst` must be a live handle, `bias` null or a NUL-terminated string and
 * `out` a valid pointer.
 */
enum PytharrStatus pytharr_flats_json(const struct PytharrInstance *inst,
                                      const char *bias,
                                      char **out);

/**
 * # Safety
 * `a` and `b` must be live handles and `out` a valid pointer.
 */
enum PytharrStatus pytharr_are_equivalent(const struct PytharrInstance *a,
                                          const struct PytharrInstance *b,
                                          bool *out);

/**
 * Gains of `source` moved onto the shape of `target`. `map` lists
 * `target_edge=source_edge` pairs separated by commas.
 *
 * # Safety
 * `source` and `target` must be live handles, `map` a NUL-terminated string
 * and `out` a valid pointer.
 */
enum PytharrStatus pytharr_transport_onto(const struct PytharrInstance *source,
                                          const struct PytharrInstance *target,
                                          const char *map,
                                          struct PytharrInstance **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PYTHARR_H */
