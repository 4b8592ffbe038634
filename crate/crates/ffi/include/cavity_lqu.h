#ifndef CAVITY_LQU_H
#define CAVITY_LQU_H

/* This file is generated by cbindgen from cavity-lqu-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of a fallible C-API call.
typedef enum CavityLquStatus {
  CAVITY_LQU_STATUS_OK = 0,
  // A required pointer argument was null.
  CAVITY_LQU_STATUS_NULL_ARGUMENT = 1,
  CAVITY_LQU_STATUS_INVALID_ARGUMENT = 2,
  CAVITY_LQU_STATUS_NOT_HERMITIAN = 3,
  CAVITY_LQU_STATUS_NO_CONVERGENCE = 4,
  CAVITY_LQU_STATUS_NOT_POSITIVE = 5,
  CAVITY_LQU_STATUS_BAD_INDEX = 6,
  CAVITY_LQU_STATUS_BAD_DIMENSION = 7,
  CAVITY_LQU_STATUS_BAD_AMPLITUDES = 8,
  CAVITY_LQU_STATUS_NUMERICAL_NEGATIVE = 9,
  // The matrix violates the density-matrix invariants.
  CAVITY_LQU_STATUS_INVALID_STATE = 10,
  // Failure that has no dedicated code.
  CAVITY_LQU_STATUS_INTERNAL = 11,
} CavityLquStatus;

// Opaque handle to a validated density matrix.
typedef struct CavityLquState CavityLquState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Creates the two-qubit pure state `alpha|00> + beta|11>` with
// `beta = sqrt(1 - alpha²)`. Returns null if `alpha` is outside `[0, 1]`.
struct CavityLquState *cavity_lqu_state_pure(double alpha);

// Creates the two-qubit Werner state with mixing weight `p`. Returns null
// if `p` is outside `[0, 1]`.
struct CavityLquState *cavity_lqu_state_werner(double p);

// Releases a state handle. Passing null is a no-op.
//
// # Safety
// `state` must be a pointer previously returned by one of the constructor
// functions of this library and not yet freed.
void cavity_lqu_state_free(struct CavityLquState *state);

// Number of qubits of the state; 0 if `state` is null.
//
// # Safety
// `state` must be a live handle from this library or null.
uint32_t cavity_lqu_state_n_qubits(const struct CavityLquState *state);

// Reads one matrix entry of the state into `out_re` / `out_im`.
//
// # Safety
// `state` must be a live handle or null; `out_re` and `out_im` must point
// to writable doubles or be null.
enum CavityLquStatus cavity_lqu_state_element(const struct CavityLquState *state,
                                              size_t row,
                                              size_t col,
                                              double *out_re,
                                              double *out_im);

// Evolves a two-qubit cavity state for a dimensionless time `kappa_t`,
// producing the four-qubit joint state (qubit order `c1, c2, r1, r2`) in
// `*out`.
//
// # Safety
// `initial` must be a live handle or null; `out` must point to a writable
// pointer slot or be null.
enum CavityLquStatus cavity_lqu_evolve(const struct CavityLquState *initial,
                                       double kappa_t,
                                       struct CavityLquState **out);

// Reduces a four-qubit joint state to the parties selected in `keep_mask`
// (bit 0 = c1, bit 1 = c2, bit 2 = r1, bit 3 = r2), kept in that order.
//
// # Safety
// `joint` must be a live handle or null; `out` must point to a writable
// pointer slot or be null.
enum CavityLquStatus cavity_lqu_reduce(const struct CavityLquState *joint,
                                       uint32_t keep_mask,
                                       struct CavityLquState **out);

// Closed-form LQU of the state with the measurement on `measured_qubit`.
//
// # Safety
// `state` must be a live handle or null; `out` must point to a writable
// double or be null.
enum CavityLquStatus cavity_lqu_bipartite(const struct CavityLquState *state,
                                          uint32_t measured_qubit,
                                          double *out);

// Multi-qubit LQU: writes the combined geometric mean to `*out_combined`
// and, when `out_per_qubit` is non-null, the per-qubit values into the
// first `n_qubits` slots of that buffer (`per_qubit_len` must be at least
// `n_qubits`).
//
// # Safety
// `state` must be a live handle or null; `out_combined` must point to a
// writable double or be null; `out_per_qubit` must be null or point to at
// least `per_qubit_len` writable doubles.
enum CavityLquStatus cavity_lqu_multiqubit(const struct CavityLquState *state,
                                           double *out_combined,
                                           double *out_per_qubit,
                                           size_t per_qubit_len);

// Skew information of the observable `sigma·(ax, ay, az)` measured on
// `measured_qubit`. The axis must be a unit vector.
//
// # Safety
// `state` must be a live handle or null; `out` must point to a writable
// double or be null.
enum CavityLquStatus cavity_lqu_skew_information(const struct CavityLquState *state,
                                                 double axis_x,
                                                 double axis_y,
                                                 double axis_z,
                                                 uint32_t measured_qubit,
                                                 double *out);

// Brute-force LQU: minimizes the skew information over a deterministic
// sphere grid of `n_directions` axes (at least 1000).
//
// # Safety
// `state` must be a live handle or null; `out` must point to a writable
// double or be null.
enum CavityLquStatus cavity_lqu_bruteforce(const struct CavityLquState *state,
                                           uint32_t measured_qubit,
                                           size_t n_directions,
                                           double *out);

// Wootters concurrence of a two-qubit state. `out_pre_max` optionally
// receives the unclamped spin-flip combination.
//
// # Safety
// `state` must be a live handle or null; `out_value` must point to a
// writable double or be null; `out_pre_max` may be null.
enum CavityLquStatus cavity_lqu_concurrence(const struct CavityLquState *state,
                                            double *out_value,
                                            double *out_pre_max);

// Writes the channel amplitudes `xi = exp(-kappa_t/2)` and
// `chi = sqrt(1 - exp(-kappa_t))` for a dimensionless time.
//
// # Safety
// `out_xi` and `out_chi` must point to writable doubles or be null.
enum CavityLquStatus cavity_lqu_amplitudes(double kappa_t, double *out_xi, double *out_chi);

// The mirror time `kappa_t'` with `exp(-kappa_t') = 1 - exp(-kappa_t)`;
// swaps the cavity-pair and reservoir-pair trajectories. Returns infinity
// at `kappa_t = 0`.
double cavity_lqu_mirror_time(double kappa_t);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CAVITY_LQU_H */
