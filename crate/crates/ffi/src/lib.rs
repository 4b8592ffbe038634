//! C ABI for the cavity-lqu library.
//!
//! States are passed around as opaque [`CavityLquState`] handles allocated by
//! the constructor functions and released with [`cavity_lqu_state_free`].
//! Constructors return a null pointer on failure; every other fallible
//! function returns a [`CavityLquStatus`] code and writes its results through
//! out-pointers, which are only written on `CAVITY_LQU_STATUS_OK`.
//!
//! All functions are safe to call from multiple threads as long as each
//! handle is only used by one thread at a time; the underlying library is
//! pure and allocates fresh states.

use cavity_lqu::channel;
use cavity_lqu::entanglement;
use cavity_lqu::linalg::partial_trace;
use cavity_lqu::lqu;
use cavity_lqu::states::{pure_state, werner_state, PureInitialState, WernerParam};
use cavity_lqu::{DensityMatrix, Error, Observable};

/// Result code of a fallible C-API call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CavityLquStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    InvalidArgument = 2,
    NotHermitian = 3,
    NoConvergence = 4,
    NotPositive = 5,
    BadIndex = 6,
    BadDimension = 7,
    BadAmplitudes = 8,
    NumericalNegative = 9,
    /// The matrix violates the density-matrix invariants.
    InvalidState = 10,
    /// Failure that has no dedicated code.
    Internal = 11,
}

fn status_of(e: &Error) -> CavityLquStatus {
    match e {
        Error::NotHermitian { .. } => CavityLquStatus::NotHermitian,
        Error::NoConvergence { .. } => CavityLquStatus::NoConvergence,
        Error::NotPositive { .. } => CavityLquStatus::NotPositive,
        Error::BadIndex { .. } => CavityLquStatus::BadIndex,
        Error::BadDimension { .. } => CavityLquStatus::BadDimension,
        Error::BadAmplitudes { .. } => CavityLquStatus::BadAmplitudes,
        Error::NumericalNegative { .. } => CavityLquStatus::NumericalNegative,
        Error::InvalidState { .. } => CavityLquStatus::InvalidState,
        Error::InvalidArgument(_) => CavityLquStatus::InvalidArgument,
        Error::AtSweepPoint { source, .. } => status_of(source),
        _ => CavityLquStatus::Internal,
    }
}

/// Opaque handle to a validated density matrix.
pub struct CavityLquState {
    inner: DensityMatrix,
}

fn into_handle(state: DensityMatrix) -> *mut CavityLquState {
    Box::into_raw(Box::new(CavityLquState { inner: state }))
}

/// Borrows the state behind `ptr`, or returns `NullArgument`.
macro_rules! try_deref {
    ($ptr:expr) => {
        match unsafe { $ptr.as_ref() } {
            Some(handle) => &handle.inner,
            None => return CavityLquStatus::NullArgument,
        }
    };
}

macro_rules! try_out {
    ($ptr:expr) => {
        match unsafe { $ptr.as_mut() } {
            Some(slot) => slot,
            None => return CavityLquStatus::NullArgument,
        }
    };
}

/// Creates the two-qubit pure state `alpha|00> + beta|11>` with
/// `beta = sqrt(1 - alpha²)`. Returns null if `alpha` is outside `[0, 1]`.
#[no_mangle]
pub extern "C" fn cavity_lqu_state_pure(alpha: f64) -> *mut CavityLquState {
    match PureInitialState::from_alpha(alpha) {
        Ok(s) => into_handle(pure_state(&s)),
        Err(_) => std::ptr::null_mut(),
    }
}

/// Creates the two-qubit Werner state with mixing weight `p`. Returns null
/// if `p` is outside `[0, 1]`.
#[no_mangle]
pub extern "C" fn cavity_lqu_state_werner(p: f64) -> *mut CavityLquState {
    match WernerParam::new(p) {
        Ok(w) => into_handle(werner_state(&w)),
        Err(_) => std::ptr::null_mut(),
    }
}

/// Releases a state handle. Passing null is a no-op.
///
/// # Safety
/// `state` must be a pointer previously returned by one of the constructor
/// functions of this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cavity_lqu_state_free(state: *mut CavityLquState) {
    if !state.is_null() {
        drop(unsafe { Box::from_raw(state) });
    }
}

/// Number of qubits of the state; 0 if `state` is null.
///
/// # Safety
/// `state` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn cavity_lqu_state_n_qubits(state: *const CavityLquState) -> u32 {
    match unsafe { state.as_ref() } {
        Some(handle) => handle.inner.n_qubits() as u32,
        None => 0,
    }
}

/// Reads one matrix entry of the state into `out_re` / `out_im`.
///
/// # Safety
/// `state` must be a live handle or null; `out_re` and `out_im` must point
/// to writable doubles or be null.
#[no_mangle]
pub unsafe extern "C" fn cavity_lqu_state_element(
    state: *const CavityLquState,
    row: usize,
    col: usize,
    out_re: *mut f64,
    out_im: *mut f64,
) -> CavityLquStatus {
    let state = try_deref!(state);
    let out_re = try_out!(out_re);
    let out_im = try_out!(out_im);
    let dim = state.dim();
    if row >= dim || col >= dim {
        return CavityLquStatus::BadIndex;
    }
    let z = state.mat()[(row, col)];
    *out_re = z.re;
    *out_im = z.im;
    CavityLquStatus::Ok
}

/// Evolves a two-qubit cavity state for a dimensionless time `kappa_t`,
/// producing the four-qubit joint state (qubit order `c1, c2, r1, r2`) in
/// `*out`.
///
/// # Safety
/// `initial` must be a live handle or null; `out` must point to a writable
/// pointer slot or be null.
#[no_mangle]
pub unsafe extern "C" fn cavity_lqu_evolve(
    initial: *const CavityLquState,
    kappa_t: f64,
    out: *mut *mut CavityLquState,
) -> CavityLquStatus {
    let initial = try_deref!(initial);
    let out = try_out!(out);
    match channel::evolve(initial, kappa_t) {
        Ok(joint) => {
            *out = into_handle(joint.rho().clone());
            CavityLquStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Reduces a four-qubit joint state to the parties selected in `keep_mask`
/// (bit 0 = c1, bit 1 = c2, bit 2 = r1, bit 3 = r2), kept in that order.
///
/// # Safety
/// `joint` must be a live handle or null; `out` must point to a writable
/// pointer slot or be null.
#[no_mangle]
pub unsafe extern "C" fn cavity_lqu_reduce(
    joint: *const CavityLquState,
    keep_mask: u32,
    out: *mut *mut CavityLquState,
) -> CavityLquStatus {
    let joint = try_deref!(joint);
    let out = try_out!(out);
    if joint.n_qubits() != 4 {
        return CavityLquStatus::BadDimension;
    }
    if keep_mask == 0 || keep_mask > 0b1111 {
        return CavityLquStatus::BadIndex;
    }
    let keep: Vec<usize> = (0..4).filter(|q| keep_mask & (1 << q) != 0).collect();
    let reduced = partial_trace(joint.mat(), 4, &keep)
        .and_then(|mat| DensityMatrix::new(keep.len(), mat));
    match reduced {
        Ok(state) => {
            *out = into_handle(state);
            CavityLquStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Closed-form LQU of the state with the measurement on `measured_qubit`.
///
/// # Safety
/// `state` must be a live handle or null; `out` must point to a writable
/// double or be null.
#[no_mangle]
pub unsafe extern "C" fn cavity_lqu_bipartite(
    state: *const CavityLquState,
    measured_qubit: u32,
    out: *mut f64,
) -> CavityLquStatus {
    let state = try_deref!(state);
    let out = try_out!(out);
    match lqu::lqu_bipartite(state, measured_qubit as usize) {
        Ok(v) => {
            *out = v;
            CavityLquStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Multi-qubit LQU: writes the combined geometric mean to `*out_combined`
/// and, when `out_per_qubit` is non-null, the per-qubit values into the
/// first `n_qubits` slots of that buffer (`per_qubit_len` must be at least
/// `n_qubits`).
///
/// # Safety
/// `state` must be a live handle or null; `out_combined` must point to a
/// writable double or be null; `out_per_qubit` must be null or point to at
/// least `per_qubit_len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn cavity_lqu_multiqubit(
    state: *const CavityLquState,
    out_combined: *mut f64,
    out_per_qubit: *mut f64,
    per_qubit_len: usize,
) -> CavityLquStatus {
    let state = try_deref!(state);
    let out_combined = try_out!(out_combined);
    let n = state.n_qubits();
    if !out_per_qubit.is_null() && per_qubit_len < n {
        return CavityLquStatus::BadDimension;
    }
    match lqu::lqu_multiqubit(state) {
        Ok(breakdown) => {
            *out_combined = breakdown.combined;
            if !out_per_qubit.is_null() {
                let buf = unsafe { std::slice::from_raw_parts_mut(out_per_qubit, n) };
                for (slot, &(_, v)) in buf.iter_mut().zip(&breakdown.per_qubit) {
                    *slot = v;
                }
            }
            CavityLquStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Skew information of the observable `sigma·(ax, ay, az)` measured on
/// `measured_qubit`. The axis must be a unit vector.
///
/// # Safety
/// `state` must be a live handle or null; `out` must point to a writable
/// double or be null.
#[no_mangle]
pub unsafe extern "C" fn cavity_lqu_skew_information(
    state: *const CavityLquState,
    axis_x: f64,
    axis_y: f64,
    axis_z: f64,
    measured_qubit: u32,
    out: *mut f64,
) -> CavityLquStatus {
    let state = try_deref!(state);
    let out = try_out!(out);
    let obs = match Observable::new([axis_x, axis_y, axis_z]) {
        Ok(obs) => obs,
        Err(e) => return status_of(&e),
    };
    match lqu::skew_information(state, &obs, measured_qubit as usize) {
        Ok(v) => {
            *out = v;
            CavityLquStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Brute-force LQU: minimizes the skew information over a deterministic
/// sphere grid of `n_directions` axes (at least 1000).
///
/// # Safety
/// `state` must be a live handle or null; `out` must point to a writable
/// double or be null.
#[no_mangle]
pub unsafe extern "C" fn cavity_lqu_bruteforce(
    state: *const CavityLquState,
    measured_qubit: u32,
    n_directions: usize,
    out: *mut f64,
) -> CavityLquStatus {
    let state = try_deref!(state);
    let out = try_out!(out);
    match lqu::lqu_bruteforce(state, measured_qubit as usize, n_directions) {
        Ok(v) => {
            *out = v;
            CavityLquStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Wootters concurrence of a two-qubit state. `out_pre_max` optionally
/// receives the unclamped spin-flip combination.
///
/// # Safety
/// `state` must be a live handle or null; `out_value` must point to a
/// writable double or be null; `out_pre_max` may be null.
#[no_mangle]
pub unsafe extern "C" fn cavity_lqu_concurrence(
    state: *const CavityLquState,
    out_value: *mut f64,
    out_pre_max: *mut f64,
) -> CavityLquStatus {
    let state = try_deref!(state);
    let out_value = try_out!(out_value);
    match entanglement::concurrence(state) {
        Ok(c) => {
            *out_value = c.value;
            if let Some(slot) = unsafe { out_pre_max.as_mut() } {
                *slot = c.pre_max;
            }
            CavityLquStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Writes the channel amplitudes `xi = exp(-kappa_t/2)` and
/// `chi = sqrt(1 - exp(-kappa_t))` for a dimensionless time.
///
/// # Safety
/// `out_xi` and `out_chi` must point to writable doubles or be null.
#[no_mangle]
pub unsafe extern "C" fn cavity_lqu_amplitudes(
    kappa_t: f64,
    out_xi: *mut f64,
    out_chi: *mut f64,
) -> CavityLquStatus {
    let out_xi = try_out!(out_xi);
    let out_chi = try_out!(out_chi);
    match channel::AmplitudeChannel::new(kappa_t) {
        Ok(ch) => {
            *out_xi = ch.xi();
            *out_chi = ch.chi();
            CavityLquStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// The mirror time `kappa_t'` with `exp(-kappa_t') = 1 - exp(-kappa_t)`;
/// swaps the cavity-pair and reservoir-pair trajectories. Returns infinity
/// at `kappa_t = 0`.
#[no_mangle]
pub extern "C" fn cavity_lqu_mirror_time(kappa_t: f64) -> f64 {
    channel::mirror_time(kappa_t)
}
