//! Exact two-probe position statistics.
//!
//! Both probes start in pure Gaussian states
//! `chi_i(Q) = exp(-Q^2/(4 sigma_i^2)) / (2 pi sigma_i^2)^{1/4}` and couple
//! impulsively to the system, the first to the coarse observable `A^{da}`
//! with strength `epsilon_1`, the second to `B` with strength `epsilon_2`.
//! After both interactions the joint pointer density is the closed form
//!
//! ```text
//!   p(Q1,Q2) = sum_{n,n',m} Tr(rho P_{n'} P_{b_m} P_n)
//!              chi_1(Q1 - e1 a^(n)) chi_1(Q1 - e1 a^(n'))
//!              |chi_2(Q2 - e2 b_m)|^2 ,
//! ```
//!
//! evaluated analytically — no time stepping; the switching profiles only
//! enter through their unit time integrals. Conditioning on `Q1` gives the
//! distribution whose strong-coupling limit is the convolution of the probe
//! resolution with the conditional Wigner distribution, and whose
//! weak-coupling limit is the undisturbed Born mixture.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::coarse::CoarseGraining;
use crate::error::{Error, Result};
use crate::hilbert::{DensityOperator, SpectralObservable, BRANCH_TOL};
use crate::wigner::ConditionalDistribution;

/// One Gaussian probe: coupling strength and initial pointer width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeCoupling {
    epsilon: f64,
    sigma_q: f64,
}

impl ProbeCoupling {
    pub fn new(epsilon: f64, sigma_q: f64) -> Result<Self> {
        if !epsilon.is_finite() {
            return Err(Error::Validation(format!(
                "coupling strength must be finite, got {epsilon}"
            )));
        }
        if !(sigma_q > 0.0) || !sigma_q.is_finite() {
            return Err(Error::Validation(format!(
                "probe width must be positive and finite, got {sigma_q}"
            )));
        }
        Ok(Self { epsilon, sigma_q })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn sigma_q(&self) -> f64 {
        self.sigma_q
    }

    /// Coupling-to-width ratio; >> 1 is the strong regime, << 1 the weak.
    pub fn strength_ratio(&self) -> f64 {
        self.epsilon / self.sigma_q
    }
}

/// Normalized Gaussian probability density.
pub fn gaussian_density(x: f64, mean: f64, sigma: f64) -> f64 {
    let z = (x - mean) / sigma;
    (-0.5 * z * z).exp() / (sigma * (2.0 * std::f64::consts::PI).sqrt())
}

/// Gaussian pointer amplitude chi(q) (real, positive).
fn gaussian_amplitude(q: f64, sigma: f64) -> f64 {
    (-q * q / (4.0 * sigma * sigma)).exp()
        / (2.0 * std::f64::consts::PI * sigma * sigma).powf(0.25)
}

/// The Gaussian overlap factor suppressing interference between coarse
/// intervals: `exp(-eps1^2 (a^(n) - a^(n'))^2 / (2 sigma1^2))`. Equals 1
/// exactly when the centers coincide.
pub fn g_factor(probe1: &ProbeCoupling, a_center: f64, a_center_prime: f64) -> f64 {
    let gap = a_center - a_center_prime;
    let r = probe1.epsilon / probe1.sigma_q;
    (-0.5 * r * r * gap * gap).exp()
}

/// Sampling grid for pointer densities: symmetric padding of the displaced
/// spectrum by `pad_sigmas` probe widths, `points` uniform samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub pad_sigmas: f64,
    pub points: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            pad_sigmas: 8.0,
            points: 4096,
        }
    }
}

/// A probability density sampled on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridDensity {
    xs: Vec<f64>,
    ys: Vec<f64>,
    step: f64,
}

impl GridDensity {
    /// Wrap sampled values; the axis must be uniform, the density
    /// nonnegative (tiny negative round-off is clamped) and normalized
    /// within 1e-6 under the trapezoid rule.
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() || xs.len() < 2 {
            return Err(Error::Validation(
                "grid needs at least two points and equal-length arrays".into(),
            ));
        }
        let step = xs[1] - xs[0];
        if !(step > 0.0) {
            return Err(Error::Validation("grid axis must be increasing".into()));
        }
        for (i, w) in xs.windows(2).enumerate() {
            if ((w[1] - w[0]) - step).abs() > 1e-9 * step.abs().max(1.0) {
                return Err(Error::Validation(format!(
                    "grid axis not uniform at index {i}"
                )));
            }
        }
        let mut ys = ys;
        for y in ys.iter_mut() {
            if *y < 0.0 {
                if *y < -1e-12 {
                    return Err(Error::Validation(format!("negative density {y:.3e}")));
                }
                *y = 0.0;
            }
        }
        let d = Self { xs, ys, step };
        let total = d.integral();
        if (total - 1.0).abs() > 1e-6 {
            return Err(Error::Validation(format!(
                "density integrates to {total}, expected 1 within 1e-6"
            )));
        }
        Ok(d)
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn axis(&self) -> &[f64] {
        &self.xs
    }

    pub fn values(&self) -> &[f64] {
        &self.ys
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// Trapezoid-rule integral over the grid.
    pub fn integral(&self) -> f64 {
        trapezoid(&self.ys, self.step)
    }

    pub fn mean(&self) -> f64 {
        let weighted: Vec<f64> = self.xs.iter().zip(&self.ys).map(|(x, y)| x * y).collect();
        trapezoid(&weighted, self.step)
    }

    pub fn second_moment(&self) -> f64 {
        let weighted: Vec<f64> = self
            .xs
            .iter()
            .zip(&self.ys)
            .map(|(x, y)| x * x * y)
            .collect();
        trapezoid(&weighted, self.step)
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        (self.second_moment() - m * m).max(0.0)
    }

    /// Largest pointwise distance to another density on the same axis.
    pub fn sup_distance(&self, other: &GridDensity) -> Result<f64> {
        if self.len() != other.len()
            || (self.xs[0] - other.xs[0]).abs() > 1e-12
            || (self.step - other.step).abs() > 1e-12
        {
            return Err(Error::Validation("grids do not share an axis".into()));
        }
        Ok(self
            .ys
            .iter()
            .zip(&other.ys)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    /// Characteristic function `integral exp(i k q) p(q) dq` by the
    /// trapezoid rule (spectrally accurate for smooth densities vanishing
    /// at the grid edges).
    pub fn characteristic_function(&self, k: f64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (i, (&x, &y)) in self.xs.iter().zip(&self.ys).enumerate() {
            let w = if i == 0 || i + 1 == self.len() { 0.5 } else { 1.0 };
            acc += C64::new(0.0, k * x).exp() * (y * w);
        }
        acc * self.step
    }
}

fn trapezoid(ys: &[f64], step: f64) -> f64 {
    if ys.len() < 2 {
        return 0.0;
    }
    let inner: f64 = ys[1..ys.len() - 1].iter().sum();
    (inner + 0.5 * (ys[0] + ys[ys.len() - 1])) * step
}

/// A fully specified two-probe experiment. Construction precomputes the
/// system traces `Tr(rho P_{n'} P_{b_m} P_n)` entering the pointer
/// densities, so evaluation over grids is cheap.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    rho: DensityOperator,
    observable_a: SpectralObservable,
    graining: CoarseGraining,
    observable_b: SpectralObservable,
    probe1: ProbeCoupling,
    probe2: ProbeCoupling,
    grid: GridSpec,
    /// Born weights Tr(rho P_n) of the coarse intervals.
    interval_weights: Vec<f64>,
    /// cross[(n * n_max + n') * dim_b + m] = <b_m| P_n rho P_{n'} |b_m>.
    cross: Vec<C64>,
    /// Born weights <b_m|rho|b_m> in the unperturbed state.
    born_b: Vec<f64>,
}

impl ExperimentSpec {
    pub fn new(
        rho: DensityOperator,
        observable_a: SpectralObservable,
        graining: CoarseGraining,
        observable_b: SpectralObservable,
        probe1: ProbeCoupling,
        probe2: ProbeCoupling,
    ) -> Result<Self> {
        let n = rho.dim();
        if observable_a.dim() != n || observable_b.dim() != n {
            return Err(Error::Validation(format!(
                "state and observables must share one dimension (rho {n}, A {}, B {})",
                observable_a.dim(),
                observable_b.dim()
            )));
        }
        if graining.dim() != n {
            return Err(Error::Validation(format!(
                "coarse graining covers {} states, state space has {n}",
                graining.dim()
            )));
        }
        let n_max = graining.n_max();
        // filtered[n] holds P_n |b_m> for every m as columns.
        let mut filtered: Vec<DMatrix<C64>> = Vec::with_capacity(n_max);
        for k in 0..n_max {
            let mut cols = DMatrix::zeros(n, n);
            for m in 0..n {
                let bm = observable_b.eigenvector(m);
                let mut acc = DVector::zeros(n);
                for &i in graining.member_indices(k) {
                    let ai = observable_a.eigenvector(i);
                    let overlap = (ai.adjoint() * &bm)[(0, 0)];
                    acc += ai * overlap;
                }
                cols.set_column(m, &acc);
            }
            filtered.push(cols);
        }
        let rho_filtered: Vec<DMatrix<C64>> =
            filtered.iter().map(|f| rho.matrix() * f).collect();
        let mut cross = vec![C64::new(0.0, 0.0); n_max * n_max * n];
        for n_idx in 0..n_max {
            for np_idx in 0..n_max {
                for m in 0..n {
                    // <b_m| P_n rho P_{n'} |b_m> = Tr(rho P_{n'} P_{b_m} P_n).
                    let v =
                        filtered[n_idx].column(m).adjoint() * rho_filtered[np_idx].column(m);
                    cross[(n_idx * n_max + np_idx) * n + m] = v[(0, 0)];
                }
            }
        }
        let interval_weights: Vec<f64> = (0..n_max)
            .map(|k| {
                (0..n)
                    .map(|m| cross[(k * n_max + k) * n + m].re)
                    .sum::<f64>()
            })
            .collect();
        let born_b: Vec<f64> = (0..n)
            .map(|m| {
                let bm = observable_b.eigenvector(m);
                (bm.adjoint() * rho.matrix() * &bm)[(0, 0)].re
            })
            .collect();
        Ok(Self {
            rho,
            observable_a,
            graining,
            observable_b,
            probe1,
            probe2,
            grid: GridSpec::default(),
            interval_weights,
            cross,
            born_b,
        })
    }

    pub fn with_grid(mut self, grid: GridSpec) -> Self {
        self.grid = grid;
        self
    }

    pub fn rho(&self) -> &DensityOperator {
        &self.rho
    }

    pub fn observable_a(&self) -> &SpectralObservable {
        &self.observable_a
    }

    pub fn observable_b(&self) -> &SpectralObservable {
        &self.observable_b
    }

    pub fn graining(&self) -> &CoarseGraining {
        &self.graining
    }

    pub fn probe1(&self) -> &ProbeCoupling {
        &self.probe1
    }

    pub fn probe2(&self) -> &ProbeCoupling {
        &self.probe2
    }

    /// Born weight Tr(rho P_n) of coarse interval `n`.
    pub fn interval_weight(&self, n: usize) -> f64 {
        self.interval_weights[n]
    }

    /// The default Q2 axis: displaced B spectrum padded by `pad_sigmas`
    /// pointer widths.
    pub fn q2_grid(&self) -> Vec<f64> {
        let e2 = self.probe2.epsilon;
        let scaled: Vec<f64> = self
            .observable_b
            .eigenvalues()
            .iter()
            .map(|b| e2 * b)
            .collect();
        let lo = scaled.iter().cloned().fold(f64::INFINITY, f64::min)
            - self.grid.pad_sigmas * self.probe2.sigma_q;
        let hi = scaled.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            + self.grid.pad_sigmas * self.probe2.sigma_q;
        let n = self.grid.points;
        (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect()
    }

    fn cross_weight(&self, n: usize, np: usize, m: usize) -> C64 {
        self.cross[(n * self.graining.n_max() + np) * self.observable_b.dim() + m]
    }

    /// The final joint pointer density p(Q1, Q2), clamped at zero against
    /// round-off.
    pub fn joint_density(&self, q1: f64, q2: f64) -> f64 {
        let n_max = self.graining.n_max();
        let e1 = self.probe1.epsilon;
        let s1 = self.probe1.sigma_q;
        let amp1: Vec<f64> = (0..n_max)
            .map(|n| gaussian_amplitude(q1 - e1 * self.graining.center(n), s1))
            .collect();
        let mut total = 0.0;
        for m in 0..self.observable_b.dim() {
            let mut sys = 0.0;
            for n in 0..n_max {
                for np in 0..n_max {
                    sys += self.cross_weight(n, np, m).re * amp1[n] * amp1[np];
                }
            }
            total += sys
                * gaussian_density(
                    q2,
                    self.probe2.epsilon * self.observable_b.eigenvalue(m),
                    self.probe2.sigma_q,
                );
        }
        total.max(0.0)
    }

    /// Marginal density of the first pointer:
    /// `sum_n Tr(rho P_n) N(q1; e1 a^(n), sigma1)`.
    pub fn marginal_q1(&self, q1: f64) -> f64 {
        (0..self.graining.n_max())
            .map(|n| {
                self.interval_weights[n]
                    * gaussian_density(
                        q1,
                        self.probe1.epsilon * self.graining.center(n),
                        self.probe1.sigma_q,
                    )
            })
            .sum()
    }

    /// Full conditional density p(Q2 | Q1 = q1) = joint / marginal, sampled
    /// on the default Q2 grid. Fails when the marginal underflows.
    pub fn conditional_q2_given_q1(&self, q1: f64) -> Result<GridDensity> {
        let marginal = self.marginal_q1(q1);
        if marginal <= 1e-300 {
            return Err(Error::ImpossibleOutcome(marginal));
        }
        let xs = self.q2_grid();
        let ys: Vec<f64> = xs.iter().map(|&q2| self.joint_density(q1, q2) / marginal).collect();
        GridDensity::new(xs, ys)
    }

    /// The conditional Wigner weights W(b_m | a^(n0), da) from the
    /// precomputed diagonal traces.
    pub fn wigner_weights(&self, n0: usize) -> Result<ConditionalDistribution> {
        self.graining.check_interval(n0)?;
        let w = self.interval_weights[n0];
        if w <= BRANCH_TOL {
            return Err(Error::ZeroProbabilityBranch(w));
        }
        let dim = self.observable_b.dim();
        let weights: Vec<f64> = (0..dim)
            .map(|m| (self.cross_weight(n0, n0, m).re / w).max(0.0))
            .collect();
        ConditionalDistribution::new(self.observable_b.eigenvalues().to_vec(), weights)
    }

    /// Strong-coupling limit of the conditional at Q1 = e1 a^(n0): the
    /// convolution of the pointer resolution with the conditional Wigner
    /// distribution,
    /// `sum_m W(b_m | a^(n0), da) N(q2; e2 b_m, sigma2)`.
    pub fn conditional_strong_limit(&self, n0: usize) -> Result<GridDensity> {
        let wigner = self.wigner_weights(n0)?;
        let xs = self.q2_grid();
        let e2 = self.probe2.epsilon;
        let s2 = self.probe2.sigma_q;
        let ys: Vec<f64> = xs
            .iter()
            .map(|&q2| {
                wigner
                    .support()
                    .iter()
                    .zip(wigner.weights())
                    .map(|(&b, &w)| w * gaussian_density(q2, e2 * b, s2))
                    .sum()
            })
            .collect();
        GridDensity::new(xs, ys)
    }

    /// Weak-coupling limit: the Born mixture of the undisturbed state,
    /// `sum_m W_{b_m} |chi_2(q2 - e2 b_m)|^2`, independent of q1.
    pub fn conditional_weak_limit(&self) -> Result<GridDensity> {
        let xs = self.q2_grid();
        let e2 = self.probe2.epsilon;
        let s2 = self.probe2.sigma_q;
        let ys: Vec<f64> = xs
            .iter()
            .map(|&q2| {
                self.born_b
                    .iter()
                    .enumerate()
                    .map(|(m, &w)| w * gaussian_density(q2, e2 * self.observable_b.eigenvalue(m), s2))
                    .sum()
            })
            .collect();
        GridDensity::new(xs, ys)
    }

    /// First and second moments and variance of Q2 conditioned on
    /// Q1 = e1 a^(n0) in the strong-coupling limit, scaled by the coupling:
    /// mean = E(Q2)/e2, second = E(Q2^2)/e2^2, variance = var(Q2)/e2^2.
    /// The pointer contributes an additive (sigma2/e2)^2 to the last two.
    pub fn conditional_moments(&self, n0: usize) -> Result<ConditionalMoments> {
        let wigner = self.wigner_weights(n0)?;
        let ratio = self.probe2.sigma_q / self.probe2.epsilon;
        let mean = wigner.mean();
        let second_moment = wigner.second_moment() + ratio * ratio;
        Ok(ConditionalMoments {
            mean,
            second_moment,
            variance: wigner.variance() + ratio * ratio,
        })
    }

    /// Recover the conditional Wigner weights from a measured pointer
    /// density by characteristic-function deconvolution: divide out the
    /// Gaussian factor `exp(-k^2 sigma2^2 / 2)` and invert the known
    /// spectrum by least squares over a k grid.
    pub fn deconvolve_wigner(&self, dist: &GridDensity) -> Result<Vec<f64>> {
        let e2 = self.probe2.epsilon;
        let s2 = self.probe2.sigma_q;
        let b: Vec<f64> = self
            .observable_b
            .eigenvalues()
            .iter()
            .map(|v| e2 * v)
            .collect();
        let m_dim = b.len();
        let mut sorted = b.clone();
        sorted.sort_by(f64::total_cmp);
        let gap_min = sorted
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min);
        if !(gap_min > 0.0) || !gap_min.is_finite() {
            return Err(Error::Validation("spectrum must be non-degenerate".into()));
        }
        // One full phase turn for the closest pair resolves the spectrum.
        let k_total = 2.0 * std::f64::consts::PI / gap_min;
        let attenuation = (-0.5 * k_total * k_total * s2 * s2).exp();
        if attenuation <= 1e-8 {
            return Err(Error::Validation(format!(
                "probe width too large for deconvolution: Gaussian factor {attenuation:.3e} at k = {k_total:.3}"
            )));
        }
        let samples = (8 * m_dim).max(64);
        let mut design = DMatrix::zeros(2 * (samples + 1), m_dim);
        let mut rhs = DVector::zeros(2 * (samples + 1));
        for j in 0..=samples {
            let k = k_total * j as f64 / samples as f64;
            let corrected = dist.characteristic_function(k) * (0.5 * k * k * s2 * s2).exp();
            rhs[2 * j] = corrected.re;
            rhs[2 * j + 1] = corrected.im;
            for (col, &bm) in b.iter().enumerate() {
                design[(2 * j, col)] = (k * bm).cos();
                design[(2 * j + 1, col)] = (k * bm).sin();
            }
        }
        let svd = nalgebra::linalg::SVD::new(design, true, true);
        let s_max = svd.singular_values.max();
        let s_min = svd.singular_values.min();
        let cond = if s_min > 0.0 { s_max / s_min } else { f64::INFINITY };
        if cond > 1e8 {
            return Err(Error::IllConditioned(cond));
        }
        let sol = svd
            .solve(&rhs, 0.0)
            .map_err(|e| Error::Validation(format!("least-squares solve failed: {e}")))?;
        Ok(sol.iter().cloned().collect())
    }
}

/// Conditional Q2 moments scaled by the second coupling; see
/// [`ExperimentSpec::conditional_moments`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalMoments {
    pub mean: f64,
    pub second_moment: f64,
    pub variance: f64,
}
