//! Wootters concurrence and sudden-death / sudden-birth event detection.
//!
//! Concurrence is the standard two-qubit entanglement monotone
//! `max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4))` where the `l_i` are
//! the descending eigenvalues of `rho · (sy⊗sy) rho* (sy⊗sy)`. It serves as
//! an independent cross-check on the parameter regimes where cavity
//! entanglement dies at finite time and reservoir entanglement is born at
//! finite time.

use crate::channel::evolve;
use crate::error::Result;
use crate::linalg::{eigh, matrix_sqrt, ComplexMatrix, RANK_FLOOR_REL};
use crate::states::DensityMatrix;

/// Concurrence values at or below this threshold count as zero when scanning
/// for death/birth crossings. Clamped values are exactly 0, but the scan
/// stays robust if clamping is ever bypassed for diagnostics.
pub const ZERO_THRESHOLD: f64 = 1e-12;
/// Bisection tolerance (in `kappa_t`) for death/birth event refinement.
pub const EVENT_TIME_TOL: f64 = 1e-6;

/// Concurrence with its pre-clamp value, useful for diagnosing how far below
/// zero the spin-flip spectrum combination went.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConcurrenceResult {
    /// `max(0, pre_max)`.
    pub value: f64,
    /// `sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)`, unclamped.
    pub pre_max: f64,
}

/// Wootters concurrence of a two-qubit state.
///
/// The complex conjugation `rho*` is taken in the computational basis, which
/// is the basis the spin-flip construction presumes. The eigenvalues of
/// `rho rho~` are computed as those of the Hermitian PSD matrix
/// `sqrt(rho) rho~ sqrt(rho)`, which shares its spectrum.
pub fn concurrence(rho: &DensityMatrix) -> Result<ConcurrenceResult> {
    if rho.n_qubits() != 2 {
        return Err(crate::error::Error::BadDimension {
            detail: format!(
                "concurrence requires a 2-qubit state, got {} qubits",
                rho.n_qubits()
            ),
        });
    }
    let yy = ComplexMatrix::pauli_y().kron(&ComplexMatrix::pauli_y());
    let flipped = yy.matmul(&rho.mat().conj()).matmul(&yy);
    let sqrt_rho = matrix_sqrt(rho.mat())?;
    let herm = sqrt_rho.matmul(&flipped).matmul(&sqrt_rho);
    let decomp = eigh(&herm)?;
    // eigenvalues ascending; take square roots in descending order, treating
    // round-off-level values as exact zeros so sqrt does not amplify them
    let floor = decomp
        .eigenvalues
        .last()
        .map_or(0.0, |&l| l.max(0.0) * RANK_FLOOR_REL);
    let mu: Vec<f64> = decomp
        .eigenvalues
        .iter()
        .rev()
        .map(|&l| if l <= floor { 0.0 } else { l.sqrt() })
        .collect();
    let pre_max = mu[0] - mu[1] - mu[2] - mu[3];
    Ok(ConcurrenceResult {
        value: pre_max.max(0.0),
        pre_max,
    })
}

fn cavity_alive(rho_cc: &DensityMatrix, kappa_t: f64) -> Result<bool> {
    let cc = evolve(rho_cc, kappa_t)?.cavity_pair()?;
    Ok(concurrence(&cc)?.value > ZERO_THRESHOLD)
}

fn reservoir_alive(rho_cc: &DensityMatrix, kappa_t: f64) -> Result<bool> {
    let rr = evolve(rho_cc, kappa_t)?.reservoir_pair()?;
    Ok(concurrence(&rr)?.value > ZERO_THRESHOLD)
}

/// Bisects the flip of `alive` inside `[lo, hi]` down to [`EVENT_TIME_TOL`].
fn refine_crossing(
    mut lo: f64,
    mut hi: f64,
    mut alive_at: impl FnMut(f64) -> Result<bool>,
    alive_at_lo: bool,
) -> Result<f64> {
    while hi - lo > EVENT_TIME_TOL {
        let mid = 0.5 * (lo + hi);
        if alive_at(mid)? == alive_at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Scans `kappa_t` in `[0, kt_max]` and returns the cavity entanglement
/// death time and the reservoir entanglement birth time, each refined by
/// bisection and `None` when no crossing occurs in range.
pub fn death_birth_times(
    rho_cc: &DensityMatrix,
    kt_max: f64,
    resolution: f64,
) -> Result<(Option<f64>, Option<f64>)> {
    if !(kt_max.is_finite() && kt_max > 0.0) || !(resolution.is_finite() && resolution > 0.0) {
        return Err(crate::error::Error::InvalidArgument(format!(
            "kt_max and resolution must be positive, got {} and {}",
            kt_max, resolution
        )));
    }
    let steps = (kt_max / resolution).ceil() as usize;
    let mut death = None;
    let mut birth = None;
    let mut prev_kt = 0.0;
    let mut prev_cavity = cavity_alive(rho_cc, 0.0)?;
    let mut prev_reservoir = reservoir_alive(rho_cc, 0.0)?;
    for i in 1..=steps {
        let kt = (i as f64 * resolution).min(kt_max);
        let cavity = cavity_alive(rho_cc, kt)?;
        let reservoir = reservoir_alive(rho_cc, kt)?;
        if death.is_none() && prev_cavity && !cavity {
            death = Some(refine_crossing(
                prev_kt,
                kt,
                |t| cavity_alive(rho_cc, t),
                true,
            )?);
        }
        if birth.is_none() && !prev_reservoir && reservoir {
            birth = Some(refine_crossing(
                prev_kt,
                kt,
                |t| reservoir_alive(rho_cc, t),
                false,
            )?);
        }
        if death.is_some() && birth.is_some() {
            break;
        }
        prev_kt = kt;
        prev_cavity = cavity;
        prev_reservoir = reservoir;
    }
    Ok((death, birth))
}
