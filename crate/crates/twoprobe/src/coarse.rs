//! Coarse-grained observables.
//!
//! A resolution `delta_a` groups the (sorted) spectrum of an observable into
//! disjoint intervals of `delta_a + 1` consecutive eigenvalues, centered at
//! the middle eigenvalue a^(n) of each interval. The low-resolution
//! observable is then
//!
//! ```text
//!   A^{da} = sum_n a^(n) P_n,     P_n = sum_{i in interval n} |a_i><a_i|,
//! ```
//!
//! whose rank-(delta_a+1) eigenprojectors filter coherently the components
//! inside each interval.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::hilbert::{Projector, SpectralObservable};

/// A partition of an N-point spectrum into `n_max` disjoint intervals of
/// `delta_a + 1` consecutive eigenvalues each (`delta_a` even). `centers`
/// holds the eigenvalue at the middle index of each interval, and
/// `member_indices` the original eigenvalue indices belonging to it.
#[derive(Debug, Clone, PartialEq)]
pub struct CoarseGraining {
    delta_a: usize,
    n_max: usize,
    centers: Vec<f64>,
    member_indices: Vec<Vec<usize>>,
    member_eigenvalues: Vec<Vec<f64>>,
}

impl CoarseGraining {
    /// Number of indistinguishable neighbor states around each center.
    pub fn delta_a(&self) -> usize {
        self.delta_a
    }

    /// Number of intervals.
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Interval centers a^(n).
    pub fn centers(&self) -> &[f64] {
        &self.centers
    }

    pub fn center(&self, n: usize) -> f64 {
        self.centers[n]
    }

    /// Eigenvalue indices (into the source observable) of interval `n`.
    pub fn member_indices(&self, n: usize) -> &[usize] {
        &self.member_indices[n]
    }

    /// Eigenvalues contained in interval `n`, ascending.
    pub fn member_eigenvalues(&self, n: usize) -> &[f64] {
        &self.member_eigenvalues[n]
    }

    /// Total dimension covered by the partition.
    pub fn dim(&self) -> usize {
        self.n_max * (self.delta_a + 1)
    }

    pub fn check_interval(&self, n: usize) -> Result<()> {
        if n >= self.n_max {
            return Err(Error::Validation(format!(
                "interval index {n} out of range (n_max = {})",
                self.n_max
            )));
        }
        Ok(())
    }
}

/// Group the eigenvalues of `observable`, sorted ascending, into disjoint
/// intervals of `delta_a + 1` members. `delta_a` must be even and the
/// dimension divisible by `delta_a + 1`; `delta_a = 0` is full resolution.
pub fn build_partition(observable: &SpectralObservable, delta_a: usize) -> Result<CoarseGraining> {
    if delta_a % 2 != 0 {
        return Err(Error::OddResolution(delta_a));
    }
    let n = observable.dim();
    let block = delta_a + 1;
    if n % block != 0 {
        return Err(Error::IncompatibleDimension { dim: n, block });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| observable.eigenvalue(i).total_cmp(&observable.eigenvalue(j)));

    let n_max = n / block;
    let mut centers = Vec::with_capacity(n_max);
    let mut member_indices = Vec::with_capacity(n_max);
    let mut member_eigenvalues = Vec::with_capacity(n_max);
    for k in 0..n_max {
        let slice = &order[k * block..(k + 1) * block];
        centers.push(observable.eigenvalue(slice[delta_a / 2]));
        member_indices.push(slice.to_vec());
        member_eigenvalues.push(slice.iter().map(|&i| observable.eigenvalue(i)).collect());
    }
    Ok(CoarseGraining {
        delta_a,
        n_max,
        centers,
        member_indices,
        member_eigenvalues,
    })
}

/// The coarse projector P^{da}_{a^(n)}: rank-(delta_a+1) sum of the
/// eigenprojectors over interval `n`.
pub fn coarse_projector(
    cg: &CoarseGraining,
    n: usize,
    observable: &SpectralObservable,
) -> Result<Projector> {
    cg.check_interval(n)?;
    if cg.dim() != observable.dim() {
        return Err(Error::Validation(format!(
            "partition covers dimension {}, observable has {}",
            cg.dim(),
            observable.dim()
        )));
    }
    Projector::from_eigenvectors(observable, cg.member_indices(n))
}

/// The low-resolution observable sum_n a^(n) P^{da}_{a^(n)}.
pub fn coarse_observable(cg: &CoarseGraining, observable: &SpectralObservable) -> Result<DMatrix<C64>> {
    let n_dim = observable.dim();
    let mut m = DMatrix::zeros(n_dim, n_dim);
    for k in 0..cg.n_max() {
        let p = coarse_projector(cg, k, observable)?;
        m += p.matrix() * C64::new(cg.center(k), 0.0);
    }
    Ok(m)
}

/// Converts the dimensionless resolution to the spectral extension
/// `Da = delta_a / level_density` (`level_density` = states per unit of the
/// observable).
pub fn physical_width(cg: &CoarseGraining, level_density: f64) -> Result<f64> {
    if !(level_density > 0.0) {
        return Err(Error::Validation(format!(
            "level density must be positive, got {level_density}"
        )));
    }
    Ok(cg.delta_a() as f64 / level_density)
}
