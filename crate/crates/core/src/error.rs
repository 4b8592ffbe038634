//! Error type shared by all modules.

use crate::states::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Input to a Hermitian-only operation deviates too far from `m == m†`.
    #[error("matrix is not Hermitian: max |m - m†| entry {deviation:.3e} exceeds {tolerance:.0e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    /// The Jacobi eigensolver hit its sweep cap before the off-diagonal norm
    /// dropped below threshold.
    #[error("eigensolver did not converge within {max_sweeps} sweeps (off-diagonal norm {off_diag_norm:.3e})")]
    NoConvergence {
        max_sweeps: usize,
        off_diag_norm: f64,
    },

    /// A matrix square root was requested for a matrix with a genuinely
    /// negative eigenvalue (beyond round-off).
    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue:.3e}")]
    NotPositive { eigenvalue: f64 },

    #[error("bad qubit index: {reason}")]
    BadIndex { reason: String },

    #[error("dimension mismatch: {detail}")]
    BadDimension { detail: String },

    #[error("amplitudes are not normalized: alpha² + beta² = {norm_sq} (must be 1 within {tolerance:.0e})")]
    BadAmplitudes { norm_sq: f64, tolerance: f64 },

    /// An LQU value came out below the `-1e-9` clamping floor, which signals
    /// an invalid input state rather than round-off.
    #[error("LQU evaluated to {value:.3e}, below the numerical clamping floor")]
    NumericalNegative { value: f64 },

    #[error("invalid density matrix: {}", format_violations(violations))]
    InvalidState { violations: Vec<Violation> },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The brute-force minimizer and the closed form disagree beyond the
    /// cross-check tolerance.
    #[error("oracle disagreement at kappa_t = {kappa_t}: closed form {formula:.9}, brute force {oracle:.9}")]
    OracleMismatch {
        kappa_t: f64,
        formula: f64,
        oracle: f64,
    },

    /// Wraps a module error with the sweep point at which it occurred.
    #[error("at sweep point kappa_t = {kappa_t}: {source}")]
    AtSweepPoint {
        kappa_t: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("failed writing {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(Violation::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
