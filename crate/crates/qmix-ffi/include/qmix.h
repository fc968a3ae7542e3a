#ifndef QMIX_H
#define QMIX_H

/* Generated from the qmix-ffi crate by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a C-ABI call.
 */
typedef enum {
  /**
   * The call succeeded.
   */
  QmixOk = 0,
  /**
   * A required pointer argument was null.
   */
  QmixNullPointer = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  QmixUtf8 = 2,
  /**
   * A JSON document failed to parse.
   */
  QmixParse = 3,
  /**
   * Arguments were well-formed but violated a domain rule.
   */
  QmixInvalidArgument = 4,
  /**
   * The run completed and at least one check failed.
   */
  QmixChecksFailed = 5,
  /**
   * A conditioning outcome has vanishing probability.
   */
  QmixZeroProbability = 6,
  /**
   * An unexpected internal failure; details in the last error message.
   */
  QmixInternal = 7,
} QmixStatus;

/**
 * Opaque handle to a validated density matrix.
 */
typedef struct QmixDensityMatrix QmixDensityMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread, as a
 * NUL-terminated UTF-8 string owned by the library. The pointer stays
 * valid until the next qmix call on the same thread; do not free it.
 */
const char *qmix_last_error_message(void);

/**
 * Builds a density matrix from `2 * 4^qubits` row-major interleaved
 * `[re, im]` doubles. The matrix must be Hermitian, unit-trace, and
 * positive semidefinite. On success writes a new handle to `out`.
 *
 * # Safety
 * `entries` must point to `entry_count` readable doubles and `out` to a
 * writable pointer slot.
 */
QmixStatus qmix_density_new(size_t qubits,
                            const double *entries,
                            size_t entry_count,
                            QmixDensityMatrix **out);

/**
 * Builds the rank-one density matrix of a pure state given as
 * `2 * 2^qubits` interleaved `[re, im]` amplitude doubles.
 *
 * # Safety
 * `amplitudes` must point to `amplitude_count` readable doubles and `out`
 * to a writable pointer slot.
 */
QmixStatus qmix_density_from_pure(size_t qubits,
                                  const double *amplitudes,
                                  size_t amplitude_count,
                                  QmixDensityMatrix **out);

/**
 * Deep-copies a density matrix into a new handle.
 *
 * # Safety
 * `handle` must be a live pointer from this library and `out` a writable
 * pointer slot.
 */
QmixStatus qmix_density_clone(const QmixDensityMatrix *handle, QmixDensityMatrix **out);

/**
 * Releases a handle returned by this library. Null is a no-op.
 *
 * # Safety
 * `handle` must be null or a live pointer from this library, and must not
 * be used afterwards.
 */
void qmix_density_free(QmixDensityMatrix *handle);

/**
 * Writes the register width of a density matrix to `out`.
 *
 * # Safety
 * `handle` must be a live pointer from this library and `out` writable.
 */
QmixStatus qmix_density_qubits(const QmixDensityMatrix *handle, size_t *out);

/**
 * Copies the matrix out as `2 * 4^qubits` row-major interleaved `[re, im]`
 * doubles. `buffer_count` must match that length exactly.
 *
 * # Safety
 * `handle` must be a live pointer from this library and `buffer` must
 * point to `buffer_count` writable doubles.
 */
QmixStatus qmix_density_entries(const QmixDensityMatrix *handle,
                                double *buffer,
                                size_t buffer_count);

/**
 * Writes tr(ρ²) to `out`.
 *
 * # Safety
 * `handle` must be a live pointer from this library and `out` writable.
 */
QmixStatus qmix_density_purity(const QmixDensityMatrix *handle, double *out);

/**
 * Writes the trace distance ½‖ρ − σ‖₁ between two equal-width density
 * matrices to `out`.
 *
 * # Safety
 * `rho` and `sigma` must be live pointers from this library and `out`
 * writable.
 */
QmixStatus qmix_trace_distance(const QmixDensityMatrix *rho,
                               const QmixDensityMatrix *sigma,
                               double *out);

/**
 * Traces out the listed qubits (0 = most significant) and writes the
 * reduced density matrix to `out`. At least one qubit must remain.
 *
 * # Safety
 * `handle` must be a live pointer from this library, `traced` must point
 * to `traced_count` readable indices, and `out` must be writable.
 */
QmixStatus qmix_density_trace_out(const QmixDensityMatrix *handle,
                                  const size_t *traced,
                                  size_t traced_count,
                                  QmixDensityMatrix **out);

/**
 * Applies the nonselective computational-basis measurement update
 * ρ → Σ_m P_m ρ P_m on the listed target qubits and writes the collapsed
 * state to `out`.
 *
 * # Safety
 * `handle` must be a live pointer from this library, `targets` must point
 * to `target_count` readable indices, and `out` must be writable.
 */
QmixStatus qmix_collapse_computational(const QmixDensityMatrix *handle,
                                       const size_t *targets,
                                       size_t target_count,
                                       QmixDensityMatrix **out);

/**
 * Parses a JSON scenario spec, runs it, and writes the report document to
 * `out_json` as a NUL-terminated string (release it with
 * [`qmix_string_free`]). Returns `QmixChecksFailed` — with the report
 * still written — when the run completes but a check fails.
 *
 * # Safety
 * `spec_json` must be a NUL-terminated readable string and `out_json` a
 * writable pointer slot.
 */
QmixStatus qmix_run_spec_json(const char *spec_json, char **out_json);

/**
 * Runs every scenario with canonical parameters and writes the combined
 * JSON report array to `out_json` (release it with [`qmix_string_free`]).
 * Returns `QmixChecksFailed` — with the report still written — if any
 * scenario fails a check.
 *
 * # Safety
 * `out_json` must be a writable pointer slot.
 */
QmixStatus qmix_run_all_json(char **out_json);

/**
 * Releases a string returned by a run function. Null is a no-op.
 *
 * # Safety
 * `text` must be null or a pointer from a qmix run function, and must not
 * be used afterwards.
 */
void qmix_string_free(char *text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QMIX_H */
