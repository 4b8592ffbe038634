//! Exact dynamics of two quantum-correlated cavity qubits leaking into two
//! independent reservoir qubits, together with the correlation measures needed
//! to follow where the quantumness goes.
//!
//! The physical picture: each cavity holds at most one photon and couples to
//! its own reservoir, so the pair of cavities plus the pair of reservoirs
//! behaves as four qubits. The excitation transfer is an exact isometry
//! parameterized by the dimensionless time `kappa_t`, with survival amplitude
//! `xi = exp(-kappa_t / 2)` and transfer amplitude `chi = sqrt(1 - exp(-kappa_t))`.
//!
//! On top of the dynamics the crate computes:
//!
//! - local quantum uncertainty (LQU) for any qubit of an n-qubit state, via
//!   the closed-form 3x3 eigenvalue formula ([`lqu::lqu_bipartite`]),
//! - a combined multi-qubit LQU as the geometric mean over all single-qubit
//!   bipartitions ([`lqu::lqu_multiqubit`]),
//! - Wigner-Yanase skew information and a brute-force sphere-grid minimizer
//!   that serves as an independent oracle for the closed form,
//! - Wootters concurrence and sudden-death/sudden-birth event times
//!   ([`entanglement`]),
//! - kappa_t sweeps that emit CSV curves and detect the windows where the
//!   cavity and reservoir LQU curves merge ([`sweep`]).
//!
//! The `cavity-lqu` binary exposes the sweeps on the command line; see the
//! `sweep` and `events` subcommands.

pub mod channel;
pub mod entanglement;
pub mod error;
pub mod linalg;
pub mod lqu;
pub mod states;
pub mod sweep;

pub use channel::{AmplitudeChannel, JointState, Party};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, EigenDecomposition};
pub use lqu::{LquBreakdown, LquMatrix, Observable};
pub use states::{DensityMatrix, PureInitialState, WernerParam};
pub use sweep::{MergeEvents, StateSpec, SweepConfig, SweepRecord};
