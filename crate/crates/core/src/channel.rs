//! Cavity-reservoir amplitude-transfer dynamics.
//!
//! Each cavity qubit leaks its excitation into its own reservoir qubit
//! through the exact isometry
//!
//! ```text
//! |0>_c -> |0>_c |0>_r
//! |1>_c -> xi |1>_c |0>_r + chi |0>_c |1>_r
//! ```
//!
//! with `xi = exp(-kappa_t/2)` and `chi = sqrt(1 - exp(-kappa_t))`. Applying
//! the isometry to both cavities of a two-qubit state (reservoirs start in
//! vacuum) yields a four-qubit state ordered `[c1, c2, r1, r2]`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{partial_trace, ComplexMatrix};
use crate::states::DensityMatrix;

/// Finite stand-in for `kappa_t = infinity`; `1 - chi²` is below 2e-22 here,
/// far beyond double precision relative to the state entries.
pub const KAPPA_T_INFINITY: f64 = 50.0;

/// The four effective qubits of the joint state, in storage order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Party {
    C1,
    C2,
    R1,
    R2,
}

impl Party {
    /// Qubit index inside the joint state (qubit 0 = most significant bit).
    pub fn qubit(self) -> usize {
        match self {
            Party::C1 => 0,
            Party::C2 => 1,
            Party::R1 => 2,
            Party::R2 => 3,
        }
    }
}

/// Amplitudes of the transfer at a fixed dimensionless time `kappa_t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmplitudeChannel {
    kappa_t: f64,
    xi: f64,
    chi: f64,
}

impl AmplitudeChannel {
    pub fn new(kappa_t: f64) -> Result<Self> {
        if !kappa_t.is_finite() || kappa_t < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "kappa_t must be finite and nonnegative, got {}",
                kappa_t
            )));
        }
        Ok(Self {
            kappa_t,
            xi: (-kappa_t / 2.0).exp(),
            chi: (1.0 - (-kappa_t).exp()).sqrt(),
        })
    }

    pub fn kappa_t(&self) -> f64 {
        self.kappa_t
    }

    /// Survival amplitude `exp(-kappa_t/2)` of the cavity excitation.
    pub fn xi(&self) -> f64 {
        self.xi
    }

    /// Transfer amplitude `sqrt(1 - exp(-kappa_t))` into the reservoir.
    pub fn chi(&self) -> f64 {
        self.chi
    }

    /// The 4x2 isometry mapping one cavity qubit into (cavity, reservoir).
    /// Satisfies `V† V = I`.
    pub fn isometry(&self) -> ComplexMatrix {
        let mut v = ComplexMatrix::zeros(4, 2);
        v[(0, 0)] = Complex64::ONE; // |0> -> |00>
        v[(2, 1)] = Complex64::new(self.xi, 0.0); // |1> -> xi|10> + chi|01>
        v[(1, 1)] = Complex64::new(self.chi, 0.0);
        v
    }
}

/// The time `kappa_t'` that swaps the roles of `xi²` and `chi²`, i.e.
/// `exp(-kappa_t') = 1 - exp(-kappa_t)`. At this mirror time the cavity-pair
/// state equals the reservoir-pair state at `kappa_t`. Diverges as
/// `kappa_t -> 0`.
pub fn mirror_time(kappa_t: f64) -> f64 {
    -f64::ln_1p(-(-kappa_t).exp())
}

/// Permutation that relabels the tensor factors from the pair order
/// `(c1, r1, c2, r2)` produced by `V ⊗ V` to the storage order
/// `(c1, c2, r1, r2)`.
fn pair_to_block_permutation() -> ComplexMatrix {
    let mut p = ComplexMatrix::zeros(16, 16);
    for old in 0..16usize {
        let c1 = (old >> 3) & 1;
        let r1 = (old >> 2) & 1;
        let c2 = (old >> 1) & 1;
        let r2 = old & 1;
        let new = (c1 << 3) | (c2 << 2) | (r1 << 1) | r2;
        p[(new, old)] = Complex64::ONE;
    }
    p
}

/// Four-qubit state of both cavities and both reservoirs, qubits ordered
/// `[c1, c2, r1, r2]`.
#[derive(Clone, Debug, PartialEq)]
pub struct JointState {
    rho: DensityMatrix,
}

impl JointState {
    pub fn rho(&self) -> &DensityMatrix {
        &self.rho
    }

    /// Reduced state of the listed parties, in the order given.
    pub fn reduced(&self, keep: &[Party]) -> Result<DensityMatrix> {
        let qubits: Vec<usize> = keep.iter().map(|p| p.qubit()).collect();
        let mat = partial_trace(self.rho.mat(), 4, &qubits)?;
        DensityMatrix::new(keep.len(), mat)
    }

    /// Reduced state of the two cavities.
    pub fn cavity_pair(&self) -> Result<DensityMatrix> {
        self.reduced(&[Party::C1, Party::C2])
    }

    /// Reduced state of the two reservoirs.
    pub fn reservoir_pair(&self) -> Result<DensityMatrix> {
        self.reduced(&[Party::R1, Party::R2])
    }
}

/// Evolves a two-qubit cavity state for a dimensionless time `kappa_t`,
/// with both reservoirs starting in vacuum. The joint map is the isometry
/// `W = P · (V ⊗ V)`, so the evolution is exactly trace-preserving and maps
/// pure states to pure states.
pub fn evolve(rho_cc: &DensityMatrix, kappa_t: f64) -> Result<JointState> {
    if rho_cc.n_qubits() != 2 {
        return Err(Error::BadDimension {
            detail: format!(
                "evolve requires a 2-qubit cavity state, got {} qubits",
                rho_cc.n_qubits()
            ),
        });
    }
    let channel = AmplitudeChannel::new(kappa_t)?;
    let v = channel.isometry();
    let w = pair_to_block_permutation().matmul(&v.kron(&v));
    let rho4 = w.matmul(rho_cc.mat()).matmul(&w.adjoint());
    Ok(JointState {
        rho: DensityMatrix::new(4, rho4)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{pure_state, werner_state, PureInitialState, WernerParam};

    fn bell() -> DensityMatrix {
        pure_state(&PureInitialState::from_alpha(std::f64::consts::FRAC_1_SQRT_2).unwrap())
    }

    #[test]
    fn amplitudes_at_zero_and_infinity() {
        let ch = AmplitudeChannel::new(0.0).unwrap();
        assert_eq!(ch.xi(), 1.0);
        assert_eq!(ch.chi(), 0.0);

        let ch = AmplitudeChannel::new(KAPPA_T_INFINITY).unwrap();
        assert!(ch.xi() < 2e-11);
        assert!((ch.chi() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn amplitudes_at_half_transfer() {
        let ch = AmplitudeChannel::new(std::f64::consts::LN_2).unwrap();
        assert!((ch.xi() * ch.xi() - 0.5).abs() < 1e-15);
        assert!((ch.chi() * ch.chi() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn amplitudes_are_normalized_and_monotone() {
        let mut prev_xi = f64::INFINITY;
        let mut prev_chi = -f64::INFINITY;
        for i in 0..=200 {
            let kt = i as f64 * 0.05;
            let ch = AmplitudeChannel::new(kt).unwrap();
            assert!((ch.xi() * ch.xi() + ch.chi() * ch.chi() - 1.0).abs() < 1e-12);
            assert!(ch.xi() < prev_xi || i == 0);
            assert!(ch.chi() > prev_chi || i == 0);
            prev_xi = ch.xi();
            prev_chi = ch.chi();
        }
    }

    #[test]
    fn rejects_negative_time() {
        assert!(AmplitudeChannel::new(-0.1).is_err());
        assert!(AmplitudeChannel::new(f64::NAN).is_err());
    }

    #[test]
    fn isometry_is_an_isometry() {
        for kt in [0.0, 0.3, std::f64::consts::LN_2, 5.0, KAPPA_T_INFINITY] {
            let v = AmplitudeChannel::new(kt).unwrap().isometry();
            let vtv = v.adjoint().matmul(&v);
            assert!(vtv.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-12);
        }
    }

    #[test]
    fn isometry_limits() {
        let v0 = AmplitudeChannel::new(0.0).unwrap().isometry();
        let ket1 = ComplexMatrix::basis_column(2, 1);
        // |1> -> |10> at kappa_t = 0
        assert!(v0.matmul(&ket1).max_abs_diff(&ComplexMatrix::basis_column(4, 2)) < 1e-15);

        let vinf = AmplitudeChannel::new(KAPPA_T_INFINITY).unwrap().isometry();
        // |1> -> |01> at kappa_t -> infinity
        assert!(vinf.matmul(&ket1).max_abs_diff(&ComplexMatrix::basis_column(4, 1)) < 1e-10);
    }

    #[test]
    fn permutation_reorders_pair_basis() {
        let p = pair_to_block_permutation();
        // (c1,r1,c2,r2) = (0,1,0,0) i.e. index 4 maps to (c1,c2,r1,r2) = (0,0,1,0) i.e. index 2
        let moved = p.matmul(&ComplexMatrix::basis_column(16, 0b0100));
        assert!(moved.max_abs_diff(&ComplexMatrix::basis_column(16, 0b0010)) < 1e-15);
        // (1,0,1,0) -> (1,1,0,0)
        let moved = p.matmul(&ComplexMatrix::basis_column(16, 0b1010));
        assert!(moved.max_abs_diff(&ComplexMatrix::basis_column(16, 0b1100)) < 1e-15);
    }

    #[test]
    fn evolve_at_zero_is_identity_with_vacuum_reservoirs() {
        let rho = werner_state(&WernerParam::new(0.6).unwrap());
        let joint = evolve(&rho, 0.0).unwrap();
        let vac = ComplexMatrix::basis_column(4, 0);
        let expected = rho.mat().kron(&vac.matmul(&vac.adjoint()));
        assert!(joint.rho().mat().max_abs_diff(&expected) < 1e-14);
        assert!(joint.cavity_pair().unwrap().mat().max_abs_diff(rho.mat()) < 1e-14);
        let rr = joint.reservoir_pair().unwrap();
        assert!((rr.mat()[(0, 0)].re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn evolve_transfers_everything_at_infinity() {
        for rho in [bell(), werner_state(&WernerParam::new(0.35).unwrap())] {
            let joint = evolve(&rho, KAPPA_T_INFINITY).unwrap();
            let vac = ComplexMatrix::basis_column(4, 0);
            let expected = vac.matmul(&vac.adjoint()).kron(rho.mat());
            assert!(joint.rho().mat().max_abs_diff(&expected) < 1e-10);
            let rr = joint.reservoir_pair().unwrap();
            assert!(rr.mat().max_abs_diff(rho.mat()) < 1e-10);
        }
    }

    #[test]
    fn bell_input_symmetric_at_half_transfer() {
        let joint = evolve(&bell(), std::f64::consts::LN_2).unwrap();
        let cc = joint.cavity_pair().unwrap();
        let rr = joint.reservoir_pair().unwrap();
        assert!(cc.mat().max_abs_diff(rr.mat()) < 1e-10);
    }

    #[test]
    fn evolution_preserves_trace_and_purity() {
        let rho = pure_state(&PureInitialState::from_alpha(0.3).unwrap());
        for i in 0..=25 {
            let kt = 2.0 * i as f64;
            let joint = evolve(&rho, kt).unwrap();
            assert!((joint.rho().mat().trace().re - 1.0).abs() < 1e-12);
            assert!((joint.rho().purity() - 1.0).abs() < 1e-10, "kt = {}", kt);
        }
    }

    #[test]
    fn mirror_symmetry_of_reduced_states() {
        let states = [
            pure_state(&PureInitialState::from_alpha((1.0_f64 / 3.0).sqrt()).unwrap()),
            werner_state(&WernerParam::new(0.6).unwrap()),
        ];
        for rho in states {
            for i in 1..=12 {
                let kt = 0.25 * i as f64;
                let ktm = mirror_time(kt);
                let rr = evolve(&rho, kt).unwrap().reservoir_pair().unwrap();
                let cc_mirror = evolve(&rho, ktm).unwrap().cavity_pair().unwrap();
                assert!(
                    rr.mat().max_abs_diff(cc_mirror.mat()) < 1e-10,
                    "kt = {}",
                    kt
                );
            }
        }
    }

    #[test]
    fn evolve_rejects_wrong_arity() {
        let single = DensityMatrix::new(1, ComplexMatrix::identity(2).scale(0.5)).unwrap();
        assert!(matches!(
            evolve(&single, 1.0),
            Err(Error::BadDimension { .. })
        ));
    }

    #[test]
    fn reduced_keeps_requested_order() {
        let joint = evolve(&bell(), 0.7).unwrap();
        let cr = joint.reduced(&[Party::C1, Party::R1]).unwrap();
        let rc = joint.reduced(&[Party::R1, Party::C1]).unwrap();
        // swapping the keep order transposes the tensor factors
        assert!((cr.mat()[(1, 1)].re - rc.mat()[(2, 2)].re).abs() < 1e-12);
        assert!((cr.mat()[(2, 2)].re - rc.mat()[(1, 1)].re).abs() < 1e-12);
    }
}
