#ifndef VSLINK_H
#define VSLINK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  VSL_CALCULUS_VIRTUAL = 0,
  VSL_CALCULUS_WELDED = 1,
  VSL_CALCULUS_UNWELDED = 2,
  VSL_CALCULUS_COBORDISM = 3,
  VSL_CALCULUS_WELDED_CONCORDANCE = 4,
} VslCalculus;

typedef enum {
  VSL_STATUS_OK = 0,
  VSL_STATUS_NULL_ARGUMENT = 1,
  VSL_STATUS_INVALID_UTF8 = 2,
  VSL_STATUS_PARSE = 3,
  VSL_STATUS_INVALID_DIAGRAM = 4,
  VSL_STATUS_UNSUPPORTED = 5,
  VSL_STATUS_MOVE = 6,
  VSL_STATUS_TRACE = 7,
  VSL_STATUS_BUFFER_TOO_SMALL = 8,
  VSL_STATUS_INTERNAL = 9,
} VslStatus;

/**
 * Opaque diagram handle.
 */
typedef struct VslDiagram VslDiagram;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *vsl_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void vsl_string_free(char *s);

/**
 * Parses GSLD text into a new diagram handle.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
VslStatus vsl_diagram_parse(const char *text, VslDiagram **out);

/**
 * The trivial diagram on `strands` strands.
 *
 * # Safety
 * `out` must be writable.
 */
VslStatus vsl_diagram_empty(size_t strands, VslDiagram **out);

/**
 * # Safety
 * `d` must be null or a handle from this library not yet freed.
 */
void vsl_diagram_free(VslDiagram *d);

/**
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
VslStatus vsl_diagram_clone(const VslDiagram *d, VslDiagram **out);

/**
 * Number of strands, or 0 for a null handle.
 *
 * # Safety
 * `d` must be null or a live handle.
 */
size_t vsl_diagram_strands(const VslDiagram *d);

/**
 * Number of chords, or 0 for a null handle.
 *
 * # Safety
 * `d` must be null or a live handle.
 */
size_t vsl_diagram_chords(const VslDiagram *d);

/**
 * Canonical GSLD text; free the result with `vsl_string_free`.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
VslStatus vsl_diagram_serialize(const VslDiagram *d, char **out);

/**
 * Writes `n(n-1)` linking numbers in lexicographic `(i, j)` order.
 * `len` always receives the required length; if `cap` is smaller the
 * call fails with `BufferTooSmall` and nothing is written.
 *
 * # Safety
 * `d` must be a live handle; `buf` must hold `cap` values (may be null
 * when `cap` is 0); `len` must be writable.
 */
VslStatus vsl_linking_vector(const VslDiagram *d, int64_t *buf, size_t cap, size_t *len);

/**
 * Standard-form diagram realizing the given linking vector.
 *
 * # Safety
 * `entries` must hold `len` values (may be null when `len` is 0); `out`
 * must be writable.
 */
VslStatus vsl_standard_form(size_t strands, const int64_t *entries, size_t len, VslDiagram **out);

/**
 * Normal form under `unwelded` or `cobordism`. If `trace` is non-null it
 * receives the certificate trace text.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable; `trace` may be null.
 */
VslStatus vsl_normalize(const VslDiagram *d, VslCalculus calculus, VslDiagram **out, char **trace);

/**
 * Decides equivalence. When equivalent and `certificate` is non-null it
 * receives a trace from `a` to a relabeling of `b`; otherwise it is set
 * to null.
 *
 * # Safety
 * `a` and `b` must be live handles; `verdict` must be writable;
 * `certificate` may be null.
 */
VslStatus vsl_equivalent(const VslDiagram *a,
                         const VslDiagram *b,
                         VslCalculus calculus,
                         bool *verdict,
                         char **certificate);

/**
 * Replays trace text from `initial`, checking every step and fingerprint,
 * and returns the final diagram.
 *
 * # Safety
 * `initial` must be a live handle; `trace` a NUL-terminated string; `out`
 * writable.
 */
VslStatus vsl_replay_trace(const VslDiagram *initial, const char *trace, VslDiagram **out);

/**
 * Welded-concordance unknotting trace for a one-strand diagram.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
VslStatus vsl_welded_unknot_trace(const VslDiagram *d, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VSLINK_H */
