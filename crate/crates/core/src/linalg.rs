//! Dense complex linear algebra for small quantum systems.
//!
//! Everything here works on [`ComplexMatrix`], a row-major `Vec<Complex64>`
//! matrix. The systems of interest are at most four qubits (16x16), so the
//! implementations favor robustness and clarity over asymptotic speed: the
//! Hermitian eigensolver is a cyclic Jacobi iteration, and the partial trace
//! is a direct index loop.
//!
//! Qubit index convention: qubit 0 is the **most significant bit** of the
//! computational-basis index, i.e. `|q0 q1 ... q(n-1)>` maps to the integer
//! `q0 * 2^(n-1) + ... + q(n-1)`.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hermiticity tolerance on `max |m - m†|` accepted by [`eigh`].
pub const HERMITICITY_TOL: f64 = 1e-9;
/// Eigenvalues in `[-EIGENVALUE_FLOOR, 0)` are treated as round-off zeros.
pub const EIGENVALUE_FLOOR: f64 = 1e-9;

const JACOBI_MAX_SWEEPS: usize = 100;
/// Convergence threshold on the off-diagonal Frobenius norm, relative to the
/// matrix norm so that matrices of tiny overall scale (e.g. spin-flip
/// spectra of nearly-product states) still get solved to full precision.
const JACOBI_OFF_DIAG_TOL: f64 = 1e-12;
/// Eigenvalues at or below `RANK_FLOOR_REL * lambda_max` are treated as exact
/// zeros when taking square roots. Square roots amplify round-off violently
/// near zero (`sqrt(1e-16) = 1e-8`), so without this floor rank-deficient
/// states lose half their digits.
pub const RANK_FLOOR_REL: f64 = 1e-13;

/// Dense matrix of complex amplitudes, row-major.
///
/// Most callers use square matrices; rectangular shapes appear only for
/// isometries (e.g. the 4x2 cavity-to-cavity⊗reservoir map).
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from real entries, row by row.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    /// Column vector for the computational basis state with the given index.
    pub fn basis_column(dim: usize, index: usize) -> Self {
        assert!(index < dim);
        let mut v = Self::zeros(dim, 1);
        v[(index, 0)] = Complex64::ONE;
        v
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square matrix.
    ///
    /// Panics if the matrix is rectangular; use `rows()`/`cols()` there.
    pub fn dim(&self) -> usize {
        assert!(self.is_square(), "dim() requires a square matrix");
        self.rows
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "matmul shape mismatch: {}x{} times {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik == Complex64::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        out
    }

    pub fn scale(&self, factor: f64) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= factor;
        }
        out
    }

    pub fn scale_complex(&self, factor: Complex64) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= factor;
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conj(&self) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.conj();
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace requires a square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// `Tr(self · other)` without forming the product.
    pub fn mul_trace(&self, other: &Self) -> Complex64 {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.rows, other.cols);
        let mut sum = Complex64::ZERO;
        for i in 0..self.rows {
            for k in 0..self.cols {
                sum += self[(i, k)] * other[(k, i)];
            }
        }
        sum
    }

    /// Kronecker (tensor) product; `self` supplies the high-order factor.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let aij = self[(i, j)];
                if aij == Complex64::ZERO {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = aij * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max entry of `|m - m†|`; zero for exactly Hermitian matrices.
    pub fn hermiticity_deviation(&self) -> f64 {
        assert!(self.is_square());
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn pauli_x() -> Self {
        Self::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
    }

    pub fn pauli_y() -> Self {
        let mut m = Self::zeros(2, 2);
        m[(0, 1)] = Complex64::new(0.0, -1.0);
        m[(1, 0)] = Complex64::new(0.0, 1.0);
        m
    }

    pub fn pauli_z() -> Self {
        Self::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]])
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Result of a Hermitian eigendecomposition: `m = V · diag(λ) · V†` with the
/// eigenvalues sorted ascending and orthonormal eigenvector columns.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// `V · diag(f(λ)) · V†`, the standard way to apply a scalar function to
    /// a Hermitian matrix.
    pub fn recompose_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let dim = v.dim();
        let mut out = ComplexMatrix::zeros(dim, dim);
        for (a, &lambda) in self.eigenvalues.iter().enumerate() {
            let fl = f(lambda);
            if fl == 0.0 {
                continue;
            }
            for i in 0..dim {
                let via = v[(i, a)] * fl;
                for j in 0..dim {
                    out[(i, j)] += via * v[(j, a)].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.recompose_with(|x| x)
    }
}

/// Frobenius norm of the off-diagonal part.
fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

fn frobenius_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            sum += a[(i, j)].norm_sqr();
        }
    }
    sum.sqrt()
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// The input must be Hermitian within [`HERMITICITY_TOL`]; it is symmetrized
/// as `(m + m†)/2` before solving so the result is deterministic under
/// round-off. Eigenvalues come back sorted ascending.
pub fn eigh(m: &ComplexMatrix) -> Result<EigenDecomposition> {
    if !m.is_square() {
        return Err(Error::BadDimension {
            detail: format!("eigh requires a square matrix, got {}x{}", m.rows(), m.cols()),
        });
    }
    if !m.all_finite() {
        return Err(Error::InvalidArgument(
            "eigh input contains NaN or infinite entries".into(),
        ));
    }
    let deviation = m.hermiticity_deviation();
    if deviation > HERMITICITY_TOL {
        return Err(Error::NotHermitian {
            deviation,
            tolerance: HERMITICITY_TOL,
        });
    }

    let n = m.dim();
    // symmetrize: a = (m + m†)/2
    let mut a = m.add(&m.adjoint()).scale(0.5);
    let mut v = ComplexMatrix::identity(n);
    // the Frobenius norm is invariant under the rotations, so fix the
    // convergence threshold once
    let threshold = JACOBI_OFF_DIAG_TOL * frobenius_norm(&a);

    for _sweep in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            return Ok(sorted_decomposition(&a, v));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let phase = apq / r;
                let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // A <- A·J with col_p = c·e_p - s·conj(phase)·e_q,
                //            col_q = s·phase·e_p + c·e_q
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c - akq * s * phase.conj();
                    a[(k, q)] = akp * s * phase + akq * c;
                }
                // A <- J†·A
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c - aqk * s * phase;
                    a[(q, k)] = apk * s * phase.conj() + aqk * c;
                }
                // the rotation zeroes this pair by construction
                a[(p, q)] = Complex64::ZERO;
                a[(q, p)] = Complex64::ZERO;
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;

                // V <- V·J
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c - vkq * s * phase.conj();
                    v[(k, q)] = vkp * s * phase + vkq * c;
                }
            }
        }
    }

    let off_diag_norm = off_diagonal_norm(&a);
    if off_diag_norm <= threshold {
        return Ok(sorted_decomposition(&a, v));
    }
    Err(Error::NoConvergence {
        max_sweeps: JACOBI_MAX_SWEEPS,
        off_diag_norm,
    })
}

fn sorted_decomposition(a: &ComplexMatrix, v: ComplexMatrix) -> EigenDecomposition {
    let n = a.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    EigenDecomposition {
        eigenvalues,
        eigenvectors,
    }
}

/// Principal square root of a Hermitian positive semidefinite matrix.
///
/// Eigenvalues in `[-EIGENVALUE_FLOOR, 0)` are clamped to zero and anything
/// more negative is reported as [`Error::NotPositive`]. Eigenvalues below
/// [`RANK_FLOOR_REL`] relative to the largest are also treated as zeros; see
/// the constant's note on round-off amplification.
pub fn matrix_sqrt(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let decomp = eigh(rho)?;
    if let Some(&lambda) = decomp
        .eigenvalues
        .iter()
        .find(|&&lambda| lambda < -EIGENVALUE_FLOOR)
    {
        return Err(Error::NotPositive { eigenvalue: lambda });
    }
    let floor = decomp
        .eigenvalues
        .last()
        .map_or(0.0, |&l| l.max(0.0) * RANK_FLOOR_REL);
    Ok(decomp.recompose_with(|lambda| if lambda <= floor { 0.0 } else { lambda.sqrt() }))
}

/// Traces out every qubit not listed in `keep`, returning the reduced matrix
/// over the kept qubits **in the order given by `keep`**.
pub fn partial_trace(rho: &ComplexMatrix, n_qubits: usize, keep: &[usize]) -> Result<ComplexMatrix> {
    let dim = 1usize << n_qubits;
    if !rho.is_square() || rho.rows() != dim {
        return Err(Error::BadDimension {
            detail: format!(
                "partial_trace over {} qubits requires a {}x{} matrix, got {}x{}",
                n_qubits,
                dim,
                dim,
                rho.rows(),
                rho.cols()
            ),
        });
    }
    if keep.is_empty() {
        return Err(Error::BadIndex {
            reason: "keep set is empty".into(),
        });
    }
    let mut kept = vec![false; n_qubits];
    for &q in keep {
        if q >= n_qubits {
            return Err(Error::BadIndex {
                reason: format!("qubit {} out of range for {} qubits", q, n_qubits),
            });
        }
        if kept[q] {
            return Err(Error::BadIndex {
                reason: format!("duplicate qubit {} in keep set", q),
            });
        }
        kept[q] = true;
    }
    let traced: Vec<usize> = (0..n_qubits).filter(|&q| !kept[q]).collect();

    let k = keep.len();
    let m = traced.len();
    let out_dim = 1usize << k;
    let trace_dim = 1usize << m;
    // bit position of qubit q inside the full index (qubit 0 = MSB)
    let shift = |q: usize| n_qubits - 1 - q;

    // full-index contribution of each reduced index / traced assignment
    let base: Vec<usize> = (0..out_dim)
        .map(|i| {
            keep.iter()
                .enumerate()
                .fold(0, |acc, (a, &q)| acc | (((i >> (k - 1 - a)) & 1) << shift(q)))
        })
        .collect();
    let offsets: Vec<usize> = (0..trace_dim)
        .map(|t| {
            traced
                .iter()
                .enumerate()
                .fold(0, |acc, (b, &q)| acc | (((t >> (m - 1 - b)) & 1) << shift(q)))
        })
        .collect();

    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    for i in 0..out_dim {
        for j in 0..out_dim {
            let mut sum = Complex64::ZERO;
            for off in &offsets {
                sum += rho[(base[i] | off, base[j] | off)];
            }
            out[(i, j)] = sum;
        }
    }
    Ok(out)
}

/// Embeds a single-qubit operator at `qubit`, identity elsewhere:
/// `I ⊗ ... ⊗ op ⊗ ... ⊗ I` over `n_qubits` qubits.
pub fn embed_qubit_op(op: &ComplexMatrix, qubit: usize, n_qubits: usize) -> Result<ComplexMatrix> {
    if op.rows() != 2 || op.cols() != 2 {
        return Err(Error::BadDimension {
            detail: format!("embed_qubit_op takes a 2x2 operator, got {}x{}", op.rows(), op.cols()),
        });
    }
    if qubit >= n_qubits {
        return Err(Error::BadIndex {
            reason: format!("qubit {} out of range for {} qubits", qubit, n_qubits),
        });
    }
    let left = ComplexMatrix::identity(1 << qubit);
    let right = ComplexMatrix::identity(1 << (n_qubits - 1 - qubit));
    Ok(left.kron(op).kron(&right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
        let a = ComplexMatrix::from_fn(dim, dim, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        a.add(&a.adjoint())
    }

    #[test]
    fn kron_identity_cases() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(i2.kron(&i2), ComplexMatrix::identity(4));

        let sz_i = ComplexMatrix::pauli_z().kron(&i2);
        let expected = ComplexMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, -1.0, 0.0],
            &[0.0, 0.0, 0.0, -1.0],
        ]);
        assert!(sz_i.max_abs_diff(&expected) == 0.0);
    }

    #[test]
    fn kron_double_bit_flip() {
        let xx = ComplexMatrix::pauli_x().kron(&ComplexMatrix::pauli_x());
        let ket00 = ComplexMatrix::basis_column(4, 0);
        let flipped = xx.matmul(&ket00);
        assert!(flipped.max_abs_diff(&ComplexMatrix::basis_column(4, 3)) < 1e-15);
    }

    #[test]
    fn kron_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random_hermitian(&mut rng, 2);
        let b = random_hermitian(&mut rng, 2);
        let c = random_hermitian(&mut rng, 2);
        let left = a.kron(&b).kron(&c);
        let right = a.kron(&b.kron(&c));
        assert!(left.max_abs_diff(&right) < 1e-14);
    }

    #[test]
    fn eigh_diagonal() {
        let m = ComplexMatrix::from_real_rows(&[&[0.2, 0.0], &[0.0, 0.8]]);
        let d = eigh(&m).unwrap();
        assert!((d.eigenvalues[0] - 0.2).abs() < 1e-14);
        assert!((d.eigenvalues[1] - 0.8).abs() < 1e-14);
    }

    #[test]
    fn eigh_pauli_x_spectrum() {
        let d = eigh(&ComplexMatrix::pauli_x()).unwrap();
        assert!((d.eigenvalues[0] + 1.0).abs() < 1e-12);
        assert!((d.eigenvalues[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigh_pauli_y_spectrum() {
        // exercises the complex-phase path of the rotation
        let d = eigh(&ComplexMatrix::pauli_y()).unwrap();
        assert!((d.eigenvalues[0] + 1.0).abs() < 1e-12);
        assert!((d.eigenvalues[1] - 1.0).abs() < 1e-12);
        let r = d.reconstruct();
        assert!(r.max_abs_diff(&ComplexMatrix::pauli_y()) < 1e-12);
    }

    #[test]
    fn eigh_reconstructs_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for dim in [2usize, 3, 4, 8, 16] {
            for _ in 0..20 {
                let h = random_hermitian(&mut rng, dim);
                let d = eigh(&h).unwrap();
                assert!(
                    d.reconstruct().max_abs_diff(&h) < 1e-10,
                    "reconstruction failed for dim {}",
                    dim
                );
                let v = &d.eigenvectors;
                let vtv = v.adjoint().matmul(v);
                assert!(vtv.max_abs_diff(&ComplexMatrix::identity(dim)) < 1e-10);
                for w in d.eigenvalues.windows(2) {
                    assert!(w[0] <= w[1], "eigenvalues not ascending");
                }
            }
        }
    }

    #[test]
    fn eigh_rejects_non_hermitian() {
        let mut m = ComplexMatrix::zeros(2, 2);
        m[(0, 1)] = Complex64::ONE;
        match eigh(&m) {
            Err(Error::NotHermitian { deviation, .. }) => assert!(deviation > 0.9),
            other => panic!("expected NotHermitian, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn sqrt_maximally_mixed() {
        let m = ComplexMatrix::identity(4).scale(0.25);
        let s = matrix_sqrt(&m).unwrap();
        assert!(s.max_abs_diff(&ComplexMatrix::identity(4).scale(0.5)) < 1e-12);
    }

    #[test]
    fn sqrt_projector_is_idempotent() {
        // |psi><psi| with |psi> = (|0> + i|1>)/sqrt(2)
        let mut psi = ComplexMatrix::zeros(2, 1);
        psi[(0, 0)] = Complex64::new(1.0 / 2.0_f64.sqrt(), 0.0);
        psi[(1, 0)] = Complex64::new(0.0, 1.0 / 2.0_f64.sqrt());
        let proj = psi.matmul(&psi.adjoint());
        let s = matrix_sqrt(&proj).unwrap();
        assert!(s.max_abs_diff(&proj) < 1e-12);
    }

    #[test]
    fn sqrt_diagonal() {
        let m = ComplexMatrix::from_real_rows(&[&[0.64, 0.0], &[0.0, 0.36]]);
        let s = matrix_sqrt(&m).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[&[0.8, 0.0], &[0.0, 0.6]]);
        assert!(s.max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn sqrt_rejects_negative_eigenvalue() {
        let m = ComplexMatrix::from_real_rows(&[&[1.5, 0.0], &[0.0, -0.5]]);
        match matrix_sqrt(&m) {
            Err(Error::NotPositive { eigenvalue }) => assert!((eigenvalue + 0.5).abs() < 1e-12),
            other => panic!("expected NotPositive, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn sqrt_squares_back_on_random_psd() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            let a = ComplexMatrix::from_fn(4, 4, |_, _| {
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            let psd = a.matmul(&a.adjoint());
            let s = matrix_sqrt(&psd).unwrap();
            assert!(s.matmul(&s).max_abs_diff(&psd) < 1e-8);
        }
    }

    #[test]
    fn partial_trace_product_factor() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_hermitian(&mut rng, 4);
        let rho_cc = a.matmul(&a.adjoint());
        let rho_cc = rho_cc.scale(1.0 / rho_cc.trace().re);
        let vac = ComplexMatrix::basis_column(4, 0);
        let rho = rho_cc.kron(&vac.matmul(&vac.adjoint()));
        let reduced = partial_trace(&rho, 4, &[0, 1]).unwrap();
        assert!(reduced.max_abs_diff(&rho_cc) < 1e-12);
    }

    #[test]
    fn partial_trace_bell_marginal() {
        let mut bell = ComplexMatrix::zeros(4, 1);
        bell[(0, 0)] = Complex64::new(1.0 / 2.0_f64.sqrt(), 0.0);
        bell[(3, 0)] = Complex64::new(1.0 / 2.0_f64.sqrt(), 0.0);
        let rho = bell.matmul(&bell.adjoint());
        let reduced = partial_trace(&rho, 2, &[0]).unwrap();
        assert!(reduced.max_abs_diff(&ComplexMatrix::identity(2).scale(0.5)) < 1e-12);
    }

    #[test]
    fn partial_trace_middle_qubit_of_basis_state() {
        // |010>: qubit 0 = 0, qubit 1 = 1, qubit 2 = 0  (MSB-first)
        let ket = ComplexMatrix::basis_column(8, 0b010);
        let rho = ket.matmul(&ket.adjoint());
        let reduced = partial_trace(&rho, 3, &[1]).unwrap();
        let one = ComplexMatrix::basis_column(2, 1);
        assert!(reduced.max_abs_diff(&one.matmul(&one.adjoint())) < 1e-15);
    }

    #[test]
    fn partial_trace_pins_msb_convention() {
        // |01>: qubit 0 (MSB) is 0, qubit 1 (LSB) is 1
        let ket = ComplexMatrix::basis_column(4, 0b01);
        let rho = ket.matmul(&ket.adjoint());
        let q0 = partial_trace(&rho, 2, &[0]).unwrap();
        let q1 = partial_trace(&rho, 2, &[1]).unwrap();
        assert!((q0[(0, 0)].re - 1.0).abs() < 1e-15, "qubit 0 should be |0>");
        assert!((q1[(1, 1)].re - 1.0).abs() < 1e-15, "qubit 1 should be |1>");
    }

    #[test]
    fn partial_trace_keep_order_swaps_qubits() {
        // keep=[1,0] must transpose the tensor factors relative to keep=[0,1]
        let ket = ComplexMatrix::basis_column(4, 0b01);
        let rho = ket.matmul(&ket.adjoint());
        let swapped = partial_trace(&rho, 2, &[1, 0]).unwrap();
        let ket10 = ComplexMatrix::basis_column(4, 0b10);
        assert!(swapped.max_abs_diff(&ket10.matmul(&ket10.adjoint())) < 1e-15);
    }

    #[test]
    fn partial_trace_composes_and_preserves_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let a = ComplexMatrix::from_fn(16, 16, |_, _| {
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            let rho = a.matmul(&a.adjoint());
            let rho = rho.scale(1.0 / rho.trace().re);

            let step1 = partial_trace(&rho, 4, &[0, 1]).unwrap();
            let step2 = partial_trace(&step1, 2, &[0]).unwrap();
            let direct = partial_trace(&rho, 4, &[0]).unwrap();
            assert!(step2.max_abs_diff(&direct) < 1e-12);
            assert!((direct.trace().re - rho.trace().re).abs() < 1e-12);
        }
    }

    #[test]
    fn partial_trace_rejects_bad_indices() {
        let rho = ComplexMatrix::identity(4).scale(0.25);
        assert!(matches!(
            partial_trace(&rho, 2, &[2]),
            Err(Error::BadIndex { .. })
        ));
        assert!(matches!(
            partial_trace(&rho, 2, &[0, 0]),
            Err(Error::BadIndex { .. })
        ));
        assert!(matches!(
            partial_trace(&rho, 2, &[]),
            Err(Error::BadIndex { .. })
        ));
    }

    #[test]
    fn embed_places_operator_at_qubit() {
        let sz = ComplexMatrix::pauli_z();
        let embedded = embed_qubit_op(&sz, 1, 2).unwrap();
        let expected = ComplexMatrix::identity(2).kron(&sz);
        assert!(embedded.max_abs_diff(&expected) == 0.0);
    }
}
