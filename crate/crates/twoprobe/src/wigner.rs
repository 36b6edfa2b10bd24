//! Wigner's formula for successive measurements, in its generalized
//! (coarse-grained) and conditional forms, together with the width
//! functionals whose dependence on the first measurement's resolution is
//! the uncertainty relation of interest.
//!
//! The joint probability of finding first the coarse A-outcome a^(n0) and
//! then b_m is `Tr(rho P_n0 P_{b_m} P_n0)`; dividing by the Born weight
//! `Tr(rho P_n0)` conditions on the first outcome. No collapse postulate is
//! involved — the same distribution emerges from the probe statistics in
//! the strong-coupling limit (see the `probe` module).

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::coarse::{coarse_projector, CoarseGraining};
use crate::error::{Error, Result};
use crate::hilbert::{
    collapse, expectation, variance, DensityOperator, SpectralObservable, StateVector, BRANCH_TOL,
};

/// Default fraction of the maximum weight above which a support point
/// counts as "appreciably different from zero" in [`width_count`].
pub const DEFAULT_COUNT_THRESHOLD: f64 = 0.2;

/// A normalized distribution over the eigenvalues b_m of the second
/// observable.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalDistribution {
    support: Vec<f64>,
    weights: Vec<f64>,
}

impl ConditionalDistribution {
    /// Wrap a weight vector, clamping tiny negative round-off to zero and
    /// checking normalization within 1e-10.
    pub fn new(support: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if support.len() != weights.len() || support.is_empty() {
            return Err(Error::Validation(
                "support and weights must be non-empty and equal length".into(),
            ));
        }
        let mut w = weights;
        for x in w.iter_mut() {
            if *x < 0.0 {
                if *x < -1e-10 {
                    return Err(Error::Validation(format!("negative weight {x:.3e}")));
                }
                *x = 0.0;
            }
        }
        let total: f64 = w.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::Validation(format!(
                "weights sum to {total}, expected 1"
            )));
        }
        Ok(Self { support, weights: w })
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn support(&self) -> &[f64] {
        &self.support
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, m: usize) -> f64 {
        self.weights[m]
    }

    /// First moment sum_m w_m b_m.
    pub fn mean(&self) -> f64 {
        self.support
            .iter()
            .zip(&self.weights)
            .map(|(b, w)| b * w)
            .sum()
    }

    /// Second moment sum_m w_m b_m^2.
    pub fn second_moment(&self) -> f64 {
        self.support
            .iter()
            .zip(&self.weights)
            .map(|(b, w)| b * b * w)
            .sum()
    }

    /// Variance, clamped at zero against round-off.
    pub fn variance(&self) -> f64 {
        let m = self.mean();
        (self.second_moment() - m * m).max(0.0)
    }
}

/// How a width value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WidthMethod {
    /// Count of support points above a threshold fraction of the max weight,
    /// minus one (the discrete delta-b convention).
    CountThreshold,
    /// Standard deviation of the distribution.
    StdDev,
    /// Full width between the symmetric first zeros of a density profile.
    FirstZero,
    /// Full width where a density profile decays to 1/e of its peak.
    OneOverE,
}

/// A width measurement together with the method that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct WidthEstimate {
    pub method: WidthMethod,
    /// A state count for `CountThreshold`, observable units otherwise.
    pub value: f64,
    /// Method parameter (the threshold fraction for `CountThreshold`).
    pub parameter: Option<f64>,
}

/// Joint Wigner probability `Tr(rho P_n0 P_{b_m} P_n0)` of finding the
/// coarse A-outcome a^(n0) first and then b_m.
pub fn joint_wigner(
    rho: &DensityOperator,
    a: &SpectralObservable,
    cg: &CoarseGraining,
    n0: usize,
    b: &SpectralObservable,
    m: usize,
) -> Result<f64> {
    cg.check_interval(n0)?;
    if m >= b.dim() {
        return Err(Error::Validation(format!(
            "eigenvalue index {m} out of range for dimension {}",
            b.dim()
        )));
    }
    let p = coarse_projector(cg, n0, a)?;
    let bm = b.eigenvector(m);
    // Tr(rho P |b><b| P) = <b| P rho P |b>.
    let pb = p.matrix() * &bm;
    let val = (pb.adjoint() * rho.matrix() * &pb)[(0, 0)].re;
    Ok(val.clamp(0.0, 1.0))
}

/// Born weight of the coarse interval: `Tr(rho P_n0)`.
pub fn interval_weight(
    rho: &DensityOperator,
    a: &SpectralObservable,
    cg: &CoarseGraining,
    n0: usize,
) -> Result<f64> {
    let p = coarse_projector(cg, n0, a)?;
    Ok(expectation(p.matrix(), rho)?.re)
}

/// The conditional Wigner distribution W(b_m | a^(n0), delta_a).
pub fn conditional_wigner(
    rho: &DensityOperator,
    a: &SpectralObservable,
    cg: &CoarseGraining,
    n0: usize,
    b: &SpectralObservable,
) -> Result<ConditionalDistribution> {
    let denom = interval_weight(rho, a, cg, n0)?;
    if denom <= BRANCH_TOL {
        return Err(Error::ZeroProbabilityBranch(denom));
    }
    let weights: Vec<f64> = (0..b.dim())
        .map(|m| joint_wigner(rho, a, cg, n0, b, m).map(|j| j / denom))
        .collect::<Result<_>>()?;
    ConditionalDistribution::new(b.eigenvalues().to_vec(), weights)
}

/// The perturbed (selectively collapsed) state P rho P / Tr(rho P).
pub fn perturbed_state(
    rho: &DensityOperator,
    a: &SpectralObservable,
    cg: &CoarseGraining,
    n0: usize,
) -> Result<DensityOperator> {
    let p = coarse_projector(cg, n0, a)?;
    collapse(rho, &p)
}

/// Conditional distribution for a pure initial state, via the amplitude
/// form N(b_m)/D with
///
/// ```text
///   N(b_m) = | sum_{n in interval} <b_m|a_n><a_n|psi> |^2,
///   D      =   sum_{n in interval} |<a_n|psi>|^2.
/// ```
pub fn pure_state_conditional(
    psi: &StateVector,
    a: &SpectralObservable,
    cg: &CoarseGraining,
    n0: usize,
    b: &SpectralObservable,
) -> Result<ConditionalDistribution> {
    cg.check_interval(n0)?;
    if psi.dim() != a.dim() || a.dim() != b.dim() {
        return Err(Error::Validation("dimension mismatch".into()));
    }
    // Coefficients <a_n|psi> for the interval members.
    let coeffs: Vec<C64> = cg
        .member_indices(n0)
        .iter()
        .map(|&i| (a.eigenvector(i).adjoint() * psi.amplitudes())[(0, 0)])
        .collect();
    let d: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
    if d <= BRANCH_TOL {
        return Err(Error::ZeroProbabilityBranch(d));
    }
    let mut weights = Vec::with_capacity(b.dim());
    for m in 0..b.dim() {
        let bm = b.eigenvector(m);
        let mut amp = C64::new(0.0, 0.0);
        for (&i, c) in cg.member_indices(n0).iter().zip(&coeffs) {
            let overlap = (bm.adjoint() * a.eigenvector(i))[(0, 0)];
            amp += overlap * c;
        }
        weights.push(amp.norm_sqr() / d);
    }
    ConditionalDistribution::new(b.eigenvalues().to_vec(), weights)
}

/// Moments of f(a_n) over one coarse interval (the commuting case B = f(A),
/// where the conditional distribution is uniform on the interval).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalMoments {
    pub mean: f64,
    pub second_moment: f64,
    pub variance: f64,
}

pub fn commuting_case_moments(
    cg: &CoarseGraining,
    n0: usize,
    f: impl Fn(f64) -> f64,
) -> Result<IntervalMoments> {
    cg.check_interval(n0)?;
    let vals = cg.member_eigenvalues(n0);
    let count = vals.len() as f64;
    let mean = vals.iter().map(|&a| f(a)).sum::<f64>() / count;
    let second_moment = vals.iter().map(|&a| f(a) * f(a)).sum::<f64>() / count;
    Ok(IntervalMoments {
        mean,
        second_moment,
        variance: (second_moment - mean * mean).max(0.0),
    })
}

/// delta-b: number of support points carrying a weight at least
/// `threshold_fraction` of the maximum, minus one. Mirrors the convention
/// that delta_a counts the states around a center, so a single atom has
/// width 0 and a uniform distribution over delta_a + 1 points has width
/// delta_a.
pub fn width_count(dist: &ConditionalDistribution, threshold_fraction: f64) -> Result<WidthEstimate> {
    if !(threshold_fraction > 0.0 && threshold_fraction < 1.0) {
        return Err(Error::Validation(format!(
            "threshold fraction must lie in (0, 1), got {threshold_fraction}"
        )));
    }
    let max = dist.weights().iter().cloned().fold(0.0_f64, f64::max);
    let cut = threshold_fraction * max;
    let count = dist.weights().iter().filter(|&&w| w >= cut).count();
    Ok(WidthEstimate {
        method: WidthMethod::CountThreshold,
        value: (count - 1) as f64,
        parameter: Some(threshold_fraction),
    })
}

/// Delta-B: the standard deviation of the distribution.
pub fn width_stddev(dist: &ConditionalDistribution) -> WidthEstimate {
    WidthEstimate {
        method: WidthMethod::StdDev,
        value: dist.variance().sqrt(),
        parameter: None,
    }
}

/// How to pick the conditioning interval n0 for a resolution sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Centering {
    /// The interval with the largest Born weight; an (up to 1e-12) tie is
    /// surfaced as an error rather than broken arbitrarily.
    LargestBornWeight,
    /// A fixed interval index.
    Interval(usize),
}

fn pick_interval(
    rho: &DensityOperator,
    a: &SpectralObservable,
    cg: &CoarseGraining,
    centering: Centering,
) -> Result<usize> {
    match centering {
        Centering::Interval(n) => {
            cg.check_interval(n)?;
            Ok(n)
        }
        Centering::LargestBornWeight => {
            let weights: Vec<f64> = (0..cg.n_max())
                .map(|n| interval_weight(rho, a, cg, n))
                .collect::<Result<_>>()?;
            let (best, &best_w) = weights
                .iter()
                .enumerate()
                .max_by(|(_, x), (_, y)| x.total_cmp(y))
                .expect("partition has at least one interval");
            let ties = weights
                .iter()
                .enumerate()
                .filter(|&(n, &w)| n != best && (best_w - w).abs() <= 1e-12)
                .count();
            if ties > 0 {
                return Err(Error::Validation(format!(
                    "ambiguous centering: {} intervals tie at Born weight {best_w:.6}",
                    ties + 1
                )));
            }
            Ok(best)
        }
    }
}

/// The uncertainty-relation function F(delta_a) = var(B) in the perturbed
/// state, for each resolution in `delta_a_values`.
pub fn ur_function(
    rho: &DensityOperator,
    a: &SpectralObservable,
    b: &SpectralObservable,
    delta_a_values: &[usize],
    centering: Centering,
) -> Result<Vec<(usize, f64)>> {
    let b_matrix = b.matrix();
    delta_a_values
        .iter()
        .map(|&da| {
            let cg = crate::coarse::build_partition(a, da)?;
            let n0 = pick_interval(rho, a, &cg, centering)?;
            let pert = perturbed_state(rho, a, &cg, n0)?;
            Ok((da, variance(&b_matrix, &pert)?))
        })
        .collect()
}

/// Result of a Robertson-inequality evaluation: L = var(B) in the perturbed
/// state, R = |<[A,B]>|^2 / (4 var(A)), and whether L >= R within 1e-10.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RobertsonCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Evaluate the Robertson inequality in a (perturbed) state. `a_matrix`
/// must be the fine-grained observable: using the coarse A^{da} would give
/// var(A^{da}) = 0 in its own eigenstate and the vacuous bound 0 >= 0,
/// which is rejected here as degenerate.
pub fn robertson_check(
    rho_pert: &DensityOperator,
    a_matrix: &DMatrix<C64>,
    b_matrix: &DMatrix<C64>,
) -> Result<RobertsonCheck> {
    let var_a = variance(a_matrix, rho_pert)?;
    if var_a <= BRANCH_TOL {
        return Err(Error::DegenerateBound(var_a));
    }
    let lhs = variance(b_matrix, rho_pert)?;
    let comm = crate::hilbert::commutator_expectation(a_matrix, b_matrix, rho_pert)?;
    let rhs = comm.norm_sqr() / (4.0 * var_a);
    Ok(RobertsonCheck {
        lhs,
        rhs,
        holds: lhs >= rhs - 1e-10,
    })
}
