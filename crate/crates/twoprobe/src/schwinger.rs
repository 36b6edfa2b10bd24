//! The N-dimensional periodic model built on the unitary shift and clock
//! operators X and Z (X|q> = |q+1 mod N>, Z|q> = w^q |q>, w = exp(2 pi i/N),
//! ZX = w XZ). Position-like and momentum-like operators are defined through
//! X = w^{-p}, Z = w^{q}, with the two bases related by the discrete Fourier
//! kernel <q|p> = w^{pq}/sqrt(N).
//!
//! Measuring the momentum with resolution `delta_p` and then the position
//! gives a conditional distribution with the closed Fejer form
//!
//! ```text
//!   W(q) = (1/(N(dp+1))) * (sin(pi q (dp+1)/N) / sin(pi q/N))^2 ,
//! ```
//!
//! whose first zero sits at q0 = N/(dp+1), giving the exact width relation
//! `delta_q * (delta_p + 1) = N - 1`. The Robertson inequality is checked on
//! the single-valued sine observables A = sin(2 pi p/N), B = sin(2 pi q/N).

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::hilbert::{SpectralObservable, StateVector, BRANCH_TOL};
use crate::wigner::{ConditionalDistribution, RobertsonCheck};

const TAU: f64 = 2.0 * std::f64::consts::PI;

/// An N-dimensional periodic Hilbert space with its primitive root of
/// unity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchwingerSpace {
    n_dim: usize,
    omega: C64,
}

impl SchwingerSpace {
    pub fn new(n_dim: usize) -> Result<Self> {
        if n_dim < 2 {
            return Err(Error::Validation(format!(
                "periodic model needs dimension >= 2, got {n_dim}"
            )));
        }
        Ok(Self {
            n_dim,
            omega: C64::from_polar(1.0, TAU / n_dim as f64),
        })
    }

    pub fn dim(&self) -> usize {
        self.n_dim
    }

    /// w = exp(2 pi i / N).
    pub fn omega(&self) -> C64 {
        self.omega
    }

    fn omega_pow(&self, k: i64) -> C64 {
        C64::from_polar(1.0, TAU * k as f64 / self.n_dim as f64)
    }

    /// The unitary pair (X, Z) in the position basis: X the cyclic shift,
    /// Z the clock diag(w^q).
    pub fn xz_operators(&self) -> (DMatrix<C64>, DMatrix<C64>) {
        let n = self.n_dim;
        let mut x = DMatrix::zeros(n, n);
        for q in 0..n {
            x[((q + 1) % n, q)] = C64::new(1.0, 0.0);
        }
        let z = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                self.omega_pow(i as i64)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        (x, z)
    }

    /// The position observable: eigenvalues q = 0..N-1 in the standard
    /// (position) basis.
    pub fn position_basis(&self) -> SpectralObservable {
        SpectralObservable::standard_basis((0..self.n_dim).map(|q| q as f64).collect())
            .expect("integer spectrum is non-degenerate")
    }

    /// The momentum observable: eigenvalues p = 0..N-1 with eigenvectors
    /// |p> = sum_q w^{pq} |q> / sqrt(N).
    pub fn momentum_basis(&self) -> SpectralObservable {
        let n = self.n_dim;
        let norm = 1.0 / (n as f64).sqrt();
        let vecs = DMatrix::from_fn(n, n, |q, p| self.omega_pow((p * q) as i64) * norm);
        SpectralObservable::new((0..n).map(|p| p as f64).collect(), vecs)
            .expect("discrete Fourier basis is orthonormal")
    }

    /// The Dirichlet ratio sin(pi q m / N) / sin(pi q / N) for odd m, with
    /// its periodic limit m at q = 0 mod N.
    fn dirichlet_ratio(&self, q: i64, m: usize) -> f64 {
        let n = self.n_dim as i64;
        let qm = q.rem_euclid(n);
        if qm == 0 {
            return m as f64;
        }
        let num = (std::f64::consts::PI * qm as f64 * m as f64 / n as f64).sin();
        let den = (std::f64::consts::PI * qm as f64 / n as f64).sin();
        num / den
    }

    fn check_resolution(&self, delta_p: usize) -> Result<()> {
        if delta_p % 2 != 0 {
            return Err(Error::OddResolution(delta_p));
        }
        if self.n_dim % (delta_p + 1) != 0 {
            return Err(Error::IncompatibleDimension {
                dim: self.n_dim,
                block: delta_p + 1,
            });
        }
        Ok(())
    }

    /// Direct evaluation of the interval kernel sum
    /// `S(q) = sum_{p = p_center - dp/2}^{p_center + dp/2} e^{2 pi i p q / N} / sqrt(N)`.
    /// The interval must lie inside 0..N-1.
    pub fn kernel_sum(&self, p_center: i64, delta_p: usize, q: i64) -> Result<C64> {
        if delta_p % 2 != 0 {
            return Err(Error::OddResolution(delta_p));
        }
        let half = (delta_p / 2) as i64;
        if p_center - half < 0 || p_center + half >= self.n_dim as i64 {
            return Err(Error::Validation(format!(
                "interval [{}, {}] out of range 0..{}",
                p_center - half,
                p_center + half,
                self.n_dim - 1
            )));
        }
        let mut acc = C64::new(0.0, 0.0);
        for p in (p_center - half)..=(p_center + half) {
            acc += self.omega_pow(p * q);
        }
        Ok(acc / (self.n_dim as f64).sqrt())
    }

    /// Closed form of the kernel sum,
    /// `w^{q p_center} sin(pi q (dp+1)/N) / (sqrt(N) sin(pi q/N))`, with the
    /// analytic limit `(dp+1)/sqrt(N)` at q = 0 mod N.
    pub fn kernel_sum_closed(&self, p_center: i64, delta_p: usize, q: i64) -> Result<C64> {
        if delta_p % 2 != 0 {
            return Err(Error::OddResolution(delta_p));
        }
        let ratio = self.dirichlet_ratio(q, delta_p + 1);
        Ok(self.omega_pow(q * p_center) * (ratio / (self.n_dim as f64).sqrt()))
    }

    /// The conditional position distribution after a momentum measurement
    /// with resolution `delta_p` on a state flat over the interval:
    /// the Fejer weights `W(q) = (1/(N(dp+1))) (sin(pi q(dp+1)/N)/sin(pi q/N))^2`,
    /// independent of the interval index `n0`.
    pub fn conditional_w_q(&self, delta_p: usize, n0: usize) -> Result<ConditionalDistribution> {
        self.check_resolution(delta_p)?;
        let n_max = self.n_dim / (delta_p + 1);
        if n0 >= n_max {
            return Err(Error::Validation(format!(
                "interval index {n0} out of range (n_max = {n_max})"
            )));
        }
        let m = delta_p + 1;
        let norm = 1.0 / (self.n_dim as f64 * m as f64);
        let weights: Vec<f64> = (0..self.n_dim as i64)
            .map(|q| {
                let r = self.dirichlet_ratio(q, m);
                norm * r * r
            })
            .collect();
        ConditionalDistribution::new((0..self.n_dim).map(|q| q as f64).collect(), weights)
    }

    /// First zero q0 = N/(dp+1) of the conditional distribution and the
    /// width delta_q = (N-1)/(dp+1), kept as exact rationals so the
    /// product identity `delta_q (dp+1) = N-1` can be verified without
    /// round-off.
    pub fn first_zero_width(&self, delta_p: usize) -> Result<FirstZeroWidth> {
        self.check_resolution(delta_p)?;
        let n = self.n_dim as u64;
        let block = (delta_p + 1) as u64;
        Ok(FirstZeroWidth {
            q0: Rational::new(n, block),
            delta_q: Rational::new(n - 1, block),
            block,
        })
    }

    /// The single-valued observables A = sin(2 pi p/N) (diagonal in the
    /// momentum basis) and B = sin(2 pi q/N) (diagonal in the position
    /// basis), both expressed in the position basis.
    pub fn sine_observables(&self) -> (DMatrix<C64>, DMatrix<C64>) {
        let n = self.n_dim;
        let momentum = self.momentum_basis();
        let mut a = DMatrix::zeros(n, n);
        for p in 0..n {
            let v = momentum.eigenvector(p);
            a += (&v * v.adjoint()) * C64::new((TAU * p as f64 / n as f64).sin(), 0.0);
        }
        let b = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                C64::new((TAU * i as f64 / n as f64).sin(), 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        (a, b)
    }

    /// The pure state with flat momentum coefficients over the interval of
    /// `delta_p + 1` levels centered (mod N) at `p_center`, written in the
    /// position basis: psi_q = w^{q p_center} K(q) / sqrt(N (dp+1)).
    pub fn flat_interval_state(&self, delta_p: usize, p_center: i64) -> Result<StateVector> {
        if delta_p % 2 != 0 {
            return Err(Error::OddResolution(delta_p));
        }
        if delta_p + 1 > self.n_dim {
            return Err(Error::IncompatibleDimension {
                dim: self.n_dim,
                block: delta_p + 1,
            });
        }
        let m = delta_p + 1;
        let norm = 1.0 / (self.n_dim as f64 * m as f64).sqrt();
        let amps: Vec<C64> = (0..self.n_dim as i64)
            .map(|q| self.omega_pow(q * p_center) * (self.dirichlet_ratio(q, m) * norm))
            .collect();
        StateVector::new(amps, "q")
    }

    /// L and R of the Robertson inequality for the sine observables in the
    /// flat interval state centered at p = 0, evaluated from the closed-form
    /// spectral sums:
    ///
    /// ```text
    ///   <A^2>   = (1/2) [1 - (1/(dp+1)) sin(2 pi (dp+1)/N)/sin(2 pi/N)]
    ///   <B^2>   = (1/(N(dp+1))) sum_q sin^2(2 pi q/N) K(q)^2
    ///   <[A,B]> = (-i/(N(dp+1))) sum_q sin(2 pi q/N) K(q) [K(q-1) - K(q+1)]
    /// ```
    ///
    /// with K the Dirichlet ratio; <A> and <B> vanish by symmetry.
    pub fn robertson_table(&self, delta_p: usize) -> Result<RobertsonCheck> {
        self.check_resolution(delta_p)?;
        let n = self.n_dim as f64;
        let m = delta_p + 1;
        let norm = 1.0 / (n * m as f64);

        let a1: f64 = (-(delta_p as i64) / 2..=(delta_p as i64) / 2)
            .map(|j| (TAU * j as f64 / n).sin())
            .sum::<f64>()
            / m as f64;
        let a2 = 0.5 * (1.0 - self.dirichlet_ratio(2, m) / m as f64);

        let mut b1 = 0.0;
        let mut b2 = 0.0;
        let mut comm_sum = 0.0;
        for q in 0..self.n_dim as i64 {
            let k = self.dirichlet_ratio(q, m);
            let s = (TAU * q as f64 / n).sin();
            b1 += norm * s * k * k;
            b2 += norm * s * s * k * k;
            comm_sum += s * k * (self.dirichlet_ratio(q - 1, m) - self.dirichlet_ratio(q + 1, m));
        }
        let comm_norm_sqr = (norm * comm_sum).powi(2);

        let var_a = a2 - a1 * a1;
        if var_a <= BRANCH_TOL {
            return Err(Error::DegenerateBound(var_a));
        }
        let lhs = b2 - b1 * b1;
        let rhs = comm_norm_sqr / (4.0 * var_a);
        Ok(RobertsonCheck {
            lhs,
            rhs,
            holds: lhs >= rhs - 1e-10,
        })
    }
}

/// An exact nonnegative rational, kept reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rational {
    pub numer: u64,
    pub denom: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Rational {
    fn new(numer: u64, denom: u64) -> Self {
        let g = gcd(numer, denom).max(1);
        Self {
            numer: numer / g,
            denom: denom / g,
        }
    }

    pub fn as_f64(&self) -> f64 {
        self.numer as f64 / self.denom as f64
    }

    /// Multiply by an integer; `Some` exactly when the result is integral.
    pub fn times_integer_exact(&self, k: u64) -> Option<u64> {
        let prod = self.numer.checked_mul(k)?;
        (prod % self.denom == 0).then(|| prod / self.denom)
    }
}

/// First-zero width data for the periodic conditional distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FirstZeroWidth {
    /// Location q0 = N/(dp+1) of the first zero.
    pub q0: Rational,
    /// Width delta_q = (N-1)/(dp+1).
    pub delta_q: Rational,
    block: u64,
}

impl FirstZeroWidth {
    /// The exact product delta_q * (delta_p + 1); always N - 1.
    pub fn product_exact(&self) -> u64 {
        self.delta_q
            .times_integer_exact(self.block)
            .expect("(N-1)/(dp+1) times (dp+1) is integral by construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coarse::build_partition;
    use crate::hilbert::{expectation, max_abs, pure_density};
    use crate::wigner::conditional_wigner;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn n2_is_the_pauli_pair() {
        let s = SchwingerSpace::new(2).unwrap();
        let (x, z) = s.xz_operators();
        assert_abs_diff_eq!(z[(0, 0)].re, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(z[(1, 1)].re, -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(x[(0, 1)].re, 1.0);
        assert_abs_diff_eq!(x[(1, 0)].re, 1.0);
        // Momentum basis = Hadamard pair.
        let p = s.momentum_basis();
        let v0 = p.eigenvector(0);
        let v1 = p.eigenvector(1);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(v0[0].re, r, epsilon = 1e-14);
        assert_abs_diff_eq!(v0[1].re, r, epsilon = 1e-14);
        assert_abs_diff_eq!(v1[0].re, r, epsilon = 1e-14);
        assert_abs_diff_eq!(v1[1].re, -r, epsilon = 1e-12);
    }

    #[test]
    fn weyl_commutation_relation() {
        let s = SchwingerSpace::new(3).unwrap();
        let (x, z) = s.xz_operators();
        let lhs = &z * &x;
        let rhs = (&x * &z) * s.omega();
        assert!(max_abs(&(lhs - rhs)) < 1e-14);
    }

    #[test]
    fn periodicity_of_shift_and_clock() {
        let s = SchwingerSpace::new(5).unwrap();
        let (x, z) = s.xz_operators();
        let mut xp = DMatrix::identity(5, 5);
        let mut zp = DMatrix::identity(5, 5);
        for _ in 0..5 {
            xp = &xp * &x;
            zp = &zp * &z;
        }
        assert!(max_abs(&(xp - DMatrix::identity(5, 5))) < 1e-12);
        assert!(max_abs(&(zp - DMatrix::identity(5, 5))) < 1e-12);
    }

    #[test]
    fn momentum_basis_unitary_and_eigenrelation() {
        let s = SchwingerSpace::new(6).unwrap();
        let p = s.momentum_basis();
        let u = p.eigenvector_matrix();
        assert!(max_abs(&(u.adjoint() * u - DMatrix::identity(6, 6))) < 1e-12);

        // X |p> = w^{-p} |p> for N = 4.
        let s4 = SchwingerSpace::new(4).unwrap();
        let (x, _) = s4.xz_operators();
        let p4 = s4.momentum_basis();
        for k in 0..4 {
            let v = p4.eigenvector(k);
            let lhs = &x * &v;
            let rhs = v * s4.omega_pow(-(k as i64));
            let resid = (lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(resid < 1e-12);
        }
    }

    #[test]
    fn kernel_sum_values() {
        let s = SchwingerSpace::new(6).unwrap();
        // dp = 0: a single phase.
        for p0 in 0..6 {
            for q in 0..6 {
                let k = s.kernel_sum(p0, 0, q).unwrap();
                let expected = s.omega_pow(p0 * q) / 6.0_f64.sqrt();
                assert!((k - expected).norm() < 1e-14);
            }
        }
        // N = 6, dp = 2, p0 = 1, q = 0: three unit terms.
        let k = s.kernel_sum(1, 2, 0).unwrap();
        assert_relative_eq!(k.re, 3.0 / 6.0_f64.sqrt(), max_relative = 1e-14);
        assert_abs_diff_eq!(k.im, 0.0, epsilon = 1e-14);
        // q = 2 is a closed-form zero.
        assert!(s.kernel_sum(1, 2, 2).unwrap().norm() < 1e-14);
        // Out-of-range interval rejected.
        assert!(s.kernel_sum(0, 2, 0).is_err());
    }

    #[test]
    fn kernel_closed_form_matches_direct_sum() {
        for (n, dp) in [(6usize, 2usize), (9, 2), (12, 2), (15, 4), (20, 4), (22, 10)] {
            let s = SchwingerSpace::new(n).unwrap();
            let n_max = n / (dp + 1);
            for interval in 0..n_max {
                let p0 = (dp / 2 + interval * (dp + 1)) as i64;
                for q in 0..n as i64 {
                    let direct = s.kernel_sum(p0, dp, q).unwrap();
                    let closed = s.kernel_sum_closed(p0, dp, q).unwrap();
                    assert!(
                        (direct - closed).norm() < 1e-12,
                        "kernel mismatch at N={n} dp={dp} p0={p0} q={q}"
                    );
                }
            }
        }
    }

    #[test]
    fn conditional_distribution_values() {
        // dp = 0: uniform 1/N.
        let s = SchwingerSpace::new(5).unwrap();
        let d = s.conditional_w_q(0, 2).unwrap();
        for q in 0..5 {
            assert_abs_diff_eq!(d.weight(q), 0.2, epsilon = 1e-14);
        }
        // N = 6, dp = 2: W(0) = 1/2, zeros at q = 2 and 4.
        let s6 = SchwingerSpace::new(6).unwrap();
        let d6 = s6.conditional_w_q(2, 0).unwrap();
        assert_abs_diff_eq!(d6.weight(0), 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(d6.weight(2), 0.0, epsilon = 1e-28);
        assert_abs_diff_eq!(d6.weight(4), 0.0, epsilon = 1e-28);
        // |kernel|^2/(dp+1) route for W(0).
        let k = s6.kernel_sum(1, 2, 0).unwrap();
        assert_abs_diff_eq!(d6.weight(0), k.norm_sqr() / 3.0, epsilon = 1e-14);
    }

    #[test]
    fn fejer_normalization_is_exact() {
        for (n, dp) in [(6usize, 2usize), (9, 2), (12, 2), (15, 4), (20, 4), (22, 10)] {
            let s = SchwingerSpace::new(n).unwrap();
            let d = s.conditional_w_q(dp, 0).unwrap();
            let total: f64 = d.weights().iter().sum();
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn divisibility_violations_rejected() {
        let s = SchwingerSpace::new(7).unwrap();
        match s.conditional_w_q(2, 0) {
            Err(Error::IncompatibleDimension { dim: 7, block: 3 }) => {}
            other => panic!("expected incompatible dimension, got {other:?}"),
        }
        assert!(SchwingerSpace::new(6).unwrap().conditional_w_q(1, 0).is_err());
    }

    #[test]
    fn conditional_matches_generic_wigner_route() {
        // The Fejer weights must agree with the generic machinery applied to
        // a flat pure state on a momentum interval.
        for (n, dp) in [(6usize, 2usize), (9, 2), (12, 2), (15, 4), (20, 4), (22, 10)] {
            let s = SchwingerSpace::new(n).unwrap();
            let momentum = s.momentum_basis();
            let position = s.position_basis();
            let cg = build_partition(&momentum, dp).unwrap();
            let n0 = 0;
            let p0 = cg.center(n0) as i64;
            let psi = s.flat_interval_state(dp, p0).unwrap();
            let rho = pure_density(&psi);
            let generic = conditional_wigner(&rho, &momentum, &cg, n0, &position).unwrap();
            let fejer = s.conditional_w_q(dp, n0).unwrap();
            for q in 0..n {
                assert_abs_diff_eq!(generic.weight(q), fejer.weight(q), epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn first_zero_width_identities() {
        let s = SchwingerSpace::new(5).unwrap();
        let w = s.first_zero_width(0).unwrap();
        assert_eq!(w.delta_q.numer, 4);
        assert_eq!(w.delta_q.denom, 1);
        assert_eq!(w.product_exact(), 4);

        let s6 = SchwingerSpace::new(6).unwrap();
        let w6 = s6.first_zero_width(2).unwrap();
        assert_relative_eq!(w6.delta_q.as_f64(), 5.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(w6.q0.as_f64(), 2.0, max_relative = 1e-15);
        assert_eq!(w6.product_exact(), 5);

        let s22 = SchwingerSpace::new(22).unwrap();
        let w22 = s22.first_zero_width(10).unwrap();
        assert_relative_eq!(w22.delta_q.as_f64(), 21.0 / 11.0, max_relative = 1e-15);
        assert_eq!(w22.product_exact(), 21);
    }

    #[test]
    fn sine_observables_structure() {
        let s = SchwingerSpace::new(4).unwrap();
        let (a, b) = s.sine_observables();
        // B = diag(sin(2 pi q / 4)) = diag(0, 1, 0, -1).
        for (q, expected) in [0.0, 1.0, 0.0, -1.0].into_iter().enumerate() {
            assert_abs_diff_eq!(b[(q, q)].re, expected, epsilon = 1e-14);
        }
        // A = -(X - X^dagger)/(2i).
        let (x, _) = s.xz_operators();
        let xa = x.adjoint();
        let expected_a = (&x - &xa) * C64::new(0.0, 0.5);
        assert!(max_abs(&(a.clone() - expected_a)) < 1e-12);

        // Hermitian, traceless.
        let s6 = SchwingerSpace::new(6).unwrap();
        let (a6, b6) = s6.sine_observables();
        assert!(max_abs(&(a6.adjoint() - &a6)) < 1e-12);
        assert!(a6.trace().norm() < 1e-10);
        assert!(b6.trace().norm() < 1e-10);
        let _ = a;
    }

    #[test]
    fn robertson_table_matches_generic_expectations() {
        // The closed-form sums and the matrix route must agree.
        for (n, dp) in [(6usize, 2usize), (9, 2), (15, 4), (22, 10)] {
            let s = SchwingerSpace::new(n).unwrap();
            let table = s.robertson_table(dp).unwrap();
            let (a, b) = s.sine_observables();
            let rho = pure_density(&s.flat_interval_state(dp, 0).unwrap());
            let ea = expectation(&a, &rho).unwrap().re;
            let eb = expectation(&b, &rho).unwrap().re;
            assert_abs_diff_eq!(ea, 0.0, epsilon = 1e-10);
            assert_abs_diff_eq!(eb, 0.0, epsilon = 1e-10);
            let chk = crate::wigner::robertson_check(&rho, &a, &b).unwrap();
            assert_abs_diff_eq!(table.lhs, chk.lhs, epsilon = 1e-10);
            assert_abs_diff_eq!(table.rhs, chk.rhs, epsilon = 1e-10);
        }
    }

    #[test]
    fn robertson_table_values() {
        // Exact values of the closed-form sums, frozen from a 40-digit
        // independent evaluation; the published 4-decimal table rounds two
        // of the R entries about 5e-5 away from these (0.0770, 0.0784).
        let rows = [
            (6usize, 2usize, 1.0 / 3.0, 1.0 / 6.0),
            (9, 2, 1.0 / 3.0, 1.0 / 6.0),
            (12, 2, 1.0 / 3.0, 1.0 / 6.0),
            (15, 4, 0.2, 0.0769492902578),
            (20, 4, 0.2, 0.0783457635341),
            (22, 10, 1.0 / 11.0, 0.0161941568067),
        ];
        let printed = [
            (0.3333, 0.1667),
            (0.3333, 0.1667),
            (0.3333, 0.1667),
            (0.2, 0.0770),
            (0.2, 0.0784),
            (0.0909, 0.0162),
        ];
        for ((n, dp, l, r), (lp, rp)) in rows.into_iter().zip(printed) {
            let chk = SchwingerSpace::new(n).unwrap().robertson_table(dp).unwrap();
            assert_abs_diff_eq!(chk.lhs, l, epsilon = 1e-9);
            assert_abs_diff_eq!(chk.rhs, r, epsilon = 1e-9);
            assert_abs_diff_eq!(chk.lhs, lp, epsilon = 1e-4);
            assert_abs_diff_eq!(chk.rhs, rp, epsilon = 1e-4);
            assert!(chk.holds && chk.lhs > chk.rhs);
        }
    }

    #[test]
    fn robertson_degenerate_at_full_resolution() {
        // dp = 0: the flat state is a momentum eigenstate, var(A) = 0.
        let s = SchwingerSpace::new(6).unwrap();
        match s.robertson_table(0) {
            Err(Error::DegenerateBound(_)) => {}
            other => panic!("expected degenerate bound, got {other:?}"),
        }
    }
}
