//! Finite-dimensional complex linear-algebra substrate: states, density
//! operators, spectral observables, projectors and expectation values.
//!
//! Everything here is an immutable value after construction (`hbar = 1`
//! throughout). Observables are always built from spectral data — an
//! eigenvalue list plus an orthonormal eigenvector set — so no general
//! eigensolver is ever involved.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Default absolute tolerance for algebraic identities (idempotence,
/// orthogonality, completeness).
pub const DEFAULT_TOL: f64 = 1e-10;

/// Elementwise tolerance for Hermiticity and normalization checks.
pub const STRICT_TOL: f64 = 1e-12;

/// Weight below which a projective branch counts as zero probability.
pub const BRANCH_TOL: f64 = 1e-14;

/// Largest entrywise modulus of a complex matrix.
pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// LDL^H positivity check of a Hermitian matrix shifted by `tol`: succeeds
/// exactly when every eigenvalue is >= -tol up to round-off.
fn is_psd_within(m: &DMatrix<C64>, tol: f64) -> bool {
    let n = m.nrows();
    let mut l = DMatrix::<C64>::zeros(n, n);
    let mut d = vec![0.0_f64; n];
    for j in 0..n {
        let mut dj = m[(j, j)].re + tol;
        for k in 0..j {
            dj -= l[(j, k)].norm_sqr() * d[k];
        }
        if dj <= 0.0 || !dj.is_finite() {
            return false;
        }
        d[j] = dj;
        for i in (j + 1)..n {
            let mut v = m[(i, j)];
            for k in 0..j {
                v -= l[(i, k)] * l[(j, k)].conj() * C64::new(d[k], 0.0);
            }
            l[(i, j)] = v / C64::new(dj, 0.0);
        }
    }
    true
}

/// A normalized pure state |psi> with a label naming the basis its
/// amplitudes refer to.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: DVector<C64>,
    basis_label: String,
}

impl StateVector {
    /// Build a state from its amplitudes; the Euclidean norm must be 1
    /// within 1e-12.
    pub fn new(amplitudes: Vec<C64>, basis_label: impl Into<String>) -> Result<Self> {
        let v = DVector::from_vec(amplitudes);
        if v.is_empty() {
            return Err(Error::Validation("state vector must be non-empty".into()));
        }
        let norm = v.norm();
        if (norm - 1.0).abs() > STRICT_TOL {
            return Err(Error::Validation(format!(
                "state vector is not normalized (norm = {norm:.15})"
            )));
        }
        Ok(Self {
            amplitudes: v,
            basis_label: basis_label.into(),
        })
    }

    /// Build a state from real amplitudes, normalizing them.
    pub fn from_real_normalized(amplitudes: &[f64], basis_label: impl Into<String>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm <= 0.0 {
            return Err(Error::Validation("cannot normalize the zero vector".into()));
        }
        Self::new(
            amplitudes.iter().map(|a| C64::new(a / norm, 0.0)).collect(),
            basis_label,
        )
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, i: usize) -> C64 {
        self.amplitudes[i]
    }

    pub fn basis_label(&self) -> &str {
        &self.basis_label
    }
}

/// A density operator: Hermitian, unit trace, positive semidefinite
/// (within round-off).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: DMatrix<C64>,
}

impl DensityOperator {
    /// Validate and wrap a density matrix. Positivity is checked by a
    /// Cholesky factorization of `rho + 1e-10*I`, which succeeds exactly
    /// when every eigenvalue is >= -1e-10 up to round-off.
    pub fn new(matrix: DMatrix<C64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Validation(format!(
                "density matrix must be square, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let n = matrix.nrows();
        for i in 0..n {
            for j in 0..n {
                let d = matrix[(i, j)] - matrix[(j, i)].conj();
                if d.norm() > STRICT_TOL {
                    return Err(Error::Validation(format!(
                        "density matrix not Hermitian at ({i},{j}): residual {:.3e}",
                        d.norm()
                    )));
                }
            }
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > STRICT_TOL || trace.im.abs() > STRICT_TOL {
            return Err(Error::Validation(format!(
                "density matrix trace is {trace}, expected 1"
            )));
        }
        if !is_psd_within(&matrix, 1e-10) {
            return Err(Error::Validation(
                "density matrix is not positive semidefinite within 1e-10".into(),
            ));
        }
        Ok(Self { matrix })
    }

    /// The maximally mixed state I/N.
    pub fn maximally_mixed(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Validation("dimension must be positive".into()));
        }
        Self::new(DMatrix::from_diagonal_element(
            n,
            n,
            C64::new(1.0 / n as f64, 0.0),
        ))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }
}

/// Forms |psi><psi|.
pub fn pure_density(psi: &StateVector) -> DensityOperator {
    let v = psi.amplitudes();
    let m = v * v.adjoint();
    // psi is normalized, so the outer product passes validation.
    DensityOperator::new(m).expect("outer product of a normalized state is a density matrix")
}

/// An observable given by its spectral data: eigenvalues a_n and an
/// orthonormal set of eigenvectors |a_n> (columns of `eigenvectors`).
/// Spectra are required to be non-degenerate.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralObservable {
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<C64>,
}

impl SpectralObservable {
    pub fn new(eigenvalues: Vec<f64>, eigenvectors: DMatrix<C64>) -> Result<Self> {
        let n = eigenvalues.len();
        if n == 0 {
            return Err(Error::Validation("observable must have a non-empty spectrum".into()));
        }
        if eigenvectors.nrows() != n || eigenvectors.ncols() != n {
            return Err(Error::Validation(format!(
                "need {n} eigenvectors of dimension {n}, got {}x{}",
                eigenvectors.nrows(),
                eigenvectors.ncols()
            )));
        }
        // Non-degeneracy: minimum gap relative to the spectral scale.
        let mut sorted = eigenvalues.clone();
        sorted.sort_by(f64::total_cmp);
        let scale = sorted
            .iter()
            .fold(1.0_f64, |acc, v| acc.max(v.abs()));
        for w in sorted.windows(2) {
            if (w[1] - w[0]) / scale <= STRICT_TOL {
                return Err(Error::Validation(format!(
                    "degenerate spectrum: eigenvalues {} and {} too close",
                    w[0], w[1]
                )));
            }
        }
        // Orthonormality: U^dagger U = I elementwise within 1e-12.
        let gram = eigenvectors.adjoint() * &eigenvectors;
        for i in 0..n {
            for j in 0..n {
                let expected = if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
                if (gram[(i, j)] - expected).norm() > STRICT_TOL {
                    return Err(Error::Validation(format!(
                        "eigenvectors not orthonormal: Gram residual {:.3e} at ({i},{j})",
                        (gram[(i, j)] - expected).norm()
                    )));
                }
            }
        }
        Ok(Self {
            eigenvalues,
            eigenvectors,
        })
    }

    /// Observable diagonal in the standard basis.
    pub fn standard_basis(eigenvalues: Vec<f64>) -> Result<Self> {
        let n = eigenvalues.len();
        Self::new(eigenvalues, DMatrix::identity(n, n))
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvalue(&self, i: usize) -> f64 {
        self.eigenvalues[i]
    }

    /// The i-th eigenvector as a column vector.
    pub fn eigenvector(&self, i: usize) -> DVector<C64> {
        self.eigenvectors.column(i).into_owned()
    }

    /// Matrix of eigenvector columns.
    pub fn eigenvector_matrix(&self) -> &DMatrix<C64> {
        &self.eigenvectors
    }

    /// The rank-1 eigenprojector |a_i><a_i|.
    pub fn eigenprojector(&self, i: usize) -> Projector {
        let v = self.eigenvector(i);
        Projector {
            matrix: &v * v.adjoint(),
            rank: 1,
        }
    }

    /// The full operator sum_n a_n |a_n><a_n|.
    pub fn matrix(&self) -> DMatrix<C64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            let v = self.eigenvectors.column(i);
            m += (&v * v.adjoint()) * C64::new(self.eigenvalues[i], 0.0);
        }
        m
    }
}

/// An orthogonal projector together with its rank.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    matrix: DMatrix<C64>,
    rank: usize,
}

impl Projector {
    /// Validate idempotence (1e-10), Hermiticity (1e-12) and trace = rank
    /// (1e-10).
    pub fn new(matrix: DMatrix<C64>, rank: usize) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Validation("projector must be square".into()));
        }
        let n = matrix.nrows();
        for i in 0..n {
            for j in 0..n {
                let d = matrix[(i, j)] - matrix[(j, i)].conj();
                if d.norm() > STRICT_TOL {
                    return Err(Error::Validation(format!(
                        "projector not Hermitian: residual {:.3e}",
                        d.norm()
                    )));
                }
            }
        }
        let sq = &matrix * &matrix;
        let idem = max_abs(&(&sq - &matrix));
        if idem > DEFAULT_TOL {
            return Err(Error::Validation(format!(
                "projector not idempotent: residual {idem:.3e}"
            )));
        }
        let trace = matrix.trace();
        if (trace.re - rank as f64).abs() > DEFAULT_TOL || trace.im.abs() > DEFAULT_TOL {
            return Err(Error::Validation(format!(
                "projector trace {trace} does not match rank {rank}"
            )));
        }
        Ok(Self { matrix, rank })
    }

    /// Sum of eigenprojectors of `obs` over the given eigenvalue indices.
    pub fn from_eigenvectors(obs: &SpectralObservable, indices: &[usize]) -> Result<Self> {
        let n = obs.dim();
        let mut m = DMatrix::zeros(n, n);
        for &i in indices {
            if i >= n {
                return Err(Error::Validation(format!(
                    "eigenvalue index {i} out of range for dimension {n}"
                )));
            }
            let v = obs.eigenvector(i);
            m += &v * v.adjoint();
        }
        Ok(Self {
            matrix: m,
            rank: indices.len(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: DMatrix::identity(n, n),
            rank: n,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::Validation(format!("dimension mismatch: {a} vs {b}")));
    }
    Ok(())
}

/// Tr(rho * op).
pub fn expectation(op: &DMatrix<C64>, rho: &DensityOperator) -> Result<C64> {
    check_dims(op.nrows(), rho.dim())?;
    if !op.is_square() {
        return Err(Error::Validation("operator must be square".into()));
    }
    Ok((rho.matrix() * op).trace())
}

/// Tr(rho * (AB - BA)); purely imaginary when A and B are Hermitian.
pub fn commutator_expectation(
    a: &DMatrix<C64>,
    b: &DMatrix<C64>,
    rho: &DensityOperator,
) -> Result<C64> {
    check_dims(a.nrows(), b.nrows())?;
    check_dims(a.nrows(), rho.dim())?;
    let comm = a * b - b * a;
    Ok((rho.matrix() * comm).trace())
}

/// Variance of a Hermitian operator: <op^2> - <op>^2 (real parts).
pub fn variance(op: &DMatrix<C64>, rho: &DensityOperator) -> Result<f64> {
    let m1 = expectation(op, rho)?.re;
    let m2 = expectation(&(op * op), rho)?.re;
    Ok((m2 - m1 * m1).max(0.0))
}

/// The projection-postulate sandwich: returns (P rho P, Tr(rho P)).
/// Dividing the operator by the weight yields a valid density operator.
pub fn sandwich(rho: &DensityOperator, p: &Projector) -> Result<(DMatrix<C64>, f64)> {
    check_dims(rho.dim(), p.dim())?;
    let weight = (rho.matrix() * p.matrix()).trace().re;
    if weight <= BRANCH_TOL {
        return Err(Error::ZeroProbabilityBranch(weight));
    }
    let m = p.matrix() * rho.matrix() * p.matrix();
    Ok((m, weight))
}

/// P rho P / Tr(rho P): the normalized post-measurement state.
pub fn collapse(rho: &DensityOperator, p: &Projector) -> Result<DensityOperator> {
    let (m, w) = sandwich(rho, p)?;
    DensityOperator::new(m / C64::new(w, 0.0))
}
