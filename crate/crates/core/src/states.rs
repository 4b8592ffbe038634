//! Validated density matrices and the two initial-state families used by the
//! cavity-reservoir sweeps: the pure family `alpha|00> + beta|11>` and the
//! Werner mixtures `p|Phi><Phi| + (1-p)/4 * I`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{eigh, ComplexMatrix};

/// Tolerance for the Hermiticity, unit-trace and positivity checks.
pub const STATE_TOL: f64 = 1e-9;
/// Tolerance on `alpha² + beta² = 1`.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// A named invariant violation found by [`validate`], with its magnitude.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    NonFinite,
    WrongShape {
        rows: usize,
        cols: usize,
        expected_dim: usize,
    },
    NotHermitian {
        deviation: f64,
    },
    TraceDeviation {
        deviation: f64,
    },
    NegativeEigenvalue {
        eigenvalue: f64,
    },
    EigensolveFailed {
        detail: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonFinite => write!(f, "NonFinite"),
            Violation::WrongShape {
                rows,
                cols,
                expected_dim,
            } => write!(
                f,
                "WrongShape({}x{}, expected {0}x{0} with dim {})",
                rows, cols, expected_dim
            ),
            Violation::NotHermitian { deviation } => write!(f, "NotHermitian({:.3e})", deviation),
            Violation::TraceDeviation { deviation } => write!(f, "TraceDeviation({})", deviation),
            Violation::NegativeEigenvalue { eigenvalue } => {
                write!(f, "NegativeEigenvalue({})", eigenvalue)
            }
            Violation::EigensolveFailed { detail } => write!(f, "EigensolveFailed({})", detail),
        }
    }
}

/// Checks the density-matrix invariants for an `n_qubits` state and reports
/// every violation found; an empty list means the matrix is a valid state.
/// Reports, never fails.
pub fn validate(n_qubits: usize, mat: &ComplexMatrix) -> Vec<Violation> {
    let expected_dim = 1usize << n_qubits;
    if !mat.is_square() || mat.rows() != expected_dim {
        return vec![Violation::WrongShape {
            rows: mat.rows(),
            cols: mat.cols(),
            expected_dim,
        }];
    }
    if !mat.all_finite() {
        return vec![Violation::NonFinite];
    }

    let mut violations = Vec::new();
    let hermitian_dev = mat.hermiticity_deviation();
    if hermitian_dev > STATE_TOL {
        violations.push(Violation::NotHermitian {
            deviation: hermitian_dev,
        });
    }
    let trace_dev = (mat.trace().re - 1.0).abs().max(mat.trace().im.abs());
    if trace_dev > STATE_TOL {
        violations.push(Violation::TraceDeviation { deviation: trace_dev });
    }
    if hermitian_dev <= STATE_TOL {
        // eigenvalue check only makes sense once the matrix is Hermitian
        match eigh(mat) {
            Ok(decomp) => {
                for &lambda in &decomp.eigenvalues {
                    if lambda < -STATE_TOL {
                        violations.push(Violation::NegativeEigenvalue { eigenvalue: lambda });
                    }
                }
            }
            Err(e) => violations.push(Violation::EigensolveFailed {
                detail: e.to_string(),
            }),
        }
    }
    violations
}

/// A validated quantum state over `n_qubits` qubits: Hermitian, unit trace,
/// positive semidefinite (all within [`STATE_TOL`]).
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(n_qubits: usize, mat: ComplexMatrix) -> Result<Self> {
        let violations = validate(n_qubits, &mat);
        if violations.is_empty() {
            Ok(Self { n_qubits, mat })
        } else {
            Err(Error::InvalidState { violations })
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    /// `Tr(rho²)`; 1 for pure states, `1/dim` for the maximally mixed state.
    pub fn purity(&self) -> f64 {
        self.mat.mul_trace(&self.mat).re
    }
}

/// Real nonnegative amplitudes of the pure family `alpha|00> + beta|11>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PureInitialState {
    alpha: f64,
    beta: f64,
}

impl PureInitialState {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) || !(0.0..=1.0).contains(&beta) {
            return Err(Error::InvalidArgument(format!(
                "amplitudes must lie in [0, 1], got alpha = {}, beta = {}",
                alpha, beta
            )));
        }
        let norm_sq = alpha * alpha + beta * beta;
        if (norm_sq - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::BadAmplitudes {
                norm_sq,
                tolerance: NORMALIZATION_TOL,
            });
        }
        Ok(Self { alpha, beta })
    }

    /// Completes `beta = sqrt(1 - alpha²)`.
    pub fn from_alpha(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidArgument(format!(
                "alpha must lie in [0, 1], got {}",
                alpha
            )));
        }
        Ok(Self {
            alpha,
            beta: (1.0 - alpha * alpha).sqrt(),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Mixing weight of a two-qubit Werner state; entangled for `p > 1/3`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WernerParam {
    p: f64,
}

impl WernerParam {
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidArgument(format!(
                "Werner parameter must lie in [0, 1], got {}",
                p
            )));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// Rank-1 projector onto `alpha|00> + beta|11>`.
pub fn pure_state(s: &PureInitialState) -> DensityMatrix {
    let mut ket = ComplexMatrix::zeros(4, 1);
    ket[(0, 0)] = Complex64::new(s.alpha, 0.0);
    ket[(3, 0)] = Complex64::new(s.beta, 0.0);
    let mat = ket.matmul(&ket.adjoint());
    DensityMatrix::new(2, mat).expect("projector onto a normalized vector is a valid state")
}

/// `p |Phi><Phi| + (1-p)/4 * I` with `|Phi> = (|00> + |11>)/sqrt(2)`.
pub fn werner_state(w: &WernerParam) -> DensityMatrix {
    let root_half = std::f64::consts::FRAC_1_SQRT_2;
    let mut phi = ComplexMatrix::zeros(4, 1);
    phi[(0, 0)] = Complex64::new(root_half, 0.0);
    phi[(3, 0)] = Complex64::new(root_half, 0.0);
    let mixture = phi
        .matmul(&phi.adjoint())
        .scale(w.p)
        .add(&ComplexMatrix::identity(4).scale((1.0 - w.p) / 4.0));
    DensityMatrix::new(2, mixture).expect("Werner mixture is a valid state for p in [0, 1]")
}
