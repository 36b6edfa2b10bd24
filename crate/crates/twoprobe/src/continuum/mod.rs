//! The continuous momentum-position case.
//!
//! A Gaussian wavepacket `psi(p) = exp(-(p-p0)^2/(4 sigma_p^2)) /
//! (2 pi sigma_p^2)^{1/4}` undergoes a momentum measurement with window
//! resolution `delta_p` followed by a position measurement. The conditional
//! position density is `W(x) = N(x)/D` with
//!
//! ```text
//!   N(x) = (1/2pi) | int_window psi(p) e^{ipx} dp |^2 ,
//!   D    =          int_window |psi(p)|^2 dp ,
//! ```
//!
//! i.e. the squared Fourier transform of the wavefunction chopped to the
//! window and renormalized. For `delta_p << sigma_p` this is the sinc^2
//! profile whose first zero at `2 pi / delta_p` gives the width product
//! `delta_x * delta_p ~ 4 pi`; for `delta_p >> sigma_p` it collapses to the
//! undisturbed `|psi(x)|^2`.
//!
//! The [`theta`] submodule holds the rotated-quadrature model interpolating
//! between commuting and conjugate observable pairs.

pub mod quad;
pub mod theta;

pub use quad::{integrate, integrate_complex, integrate_oscillatory, QuadratureConfig};
pub use theta::{
    model_width_relation, rotated_kernel, s_integral, s_model, theta_density, theta_width,
    ModelWidthRelation, RotatedQuadrature, ThetaWidth,
};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// A normalized Gaussian momentum-space wavepacket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianWavepacket {
    p_center: f64,
    sigma_p: f64,
}

impl GaussianWavepacket {
    pub fn new(p_center: f64, sigma_p: f64) -> Result<Self> {
        if !p_center.is_finite() {
            return Err(Error::Validation(format!(
                "momentum center must be finite, got {p_center}"
            )));
        }
        if !(sigma_p > 0.0) || !sigma_p.is_finite() {
            return Err(Error::Validation(format!(
                "momentum spread must be positive and finite, got {sigma_p}"
            )));
        }
        Ok(Self { p_center, sigma_p })
    }

    pub fn p_center(&self) -> f64 {
        self.p_center
    }

    pub fn sigma_p(&self) -> f64 {
        self.sigma_p
    }

    /// The (real) momentum-space amplitude.
    pub fn amplitude(&self, p: f64) -> f64 {
        let s2 = self.sigma_p * self.sigma_p;
        (-(p - self.p_center).powi(2) / (4.0 * s2)).exp()
            / (2.0 * std::f64::consts::PI * s2).powf(0.25)
    }

    /// |psi(p)|^2.
    pub fn density(&self, p: f64) -> f64 {
        let a = self.amplitude(p);
        a * a
    }
}

fn check_delta_p(delta_p: f64) -> Result<()> {
    if !(delta_p > 0.0) || !delta_p.is_finite() {
        return Err(Error::Validation(format!(
            "window resolution must be positive and finite, got {delta_p}"
        )));
    }
    Ok(())
}

/// The window mass `D = int_{p0 - dp/2}^{p0 + dp/2} |psi(p)|^2 dp`,
/// evaluated through the Gaussian cumulative as `erf(dp / (2 sqrt(2)
/// sigma_p))`. Tends to `dp/sqrt(2 pi sigma_p^2)` for small windows and to
/// 1 for `dp >> sigma_p`.
pub fn denominator_d(pkt: &GaussianWavepacket, delta_p: f64) -> Result<f64> {
    check_delta_p(delta_p)?;
    Ok(libm::erf(delta_p / (2.0 * std::f64::consts::SQRT_2 * pkt.sigma_p())))
}

/// The windowed Fourier intensity
/// `N(x) = (1/2pi) | int_window psi(p) e^{ipx} dp |^2` by adaptive
/// quadrature (panel widths tied to the phase rate |x|).
pub fn numerator_n(
    pkt: &GaussianWavepacket,
    delta_p: f64,
    x: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    check_delta_p(delta_p)?;
    let lo = pkt.p_center() - 0.5 * delta_p;
    let hi = pkt.p_center() + 0.5 * delta_p;
    let amp = integrate_oscillatory(
        |p| C64::new(0.0, p * x).exp() * pkt.amplitude(p),
        lo,
        hi,
        cfg,
        x.abs(),
    )?;
    Ok(amp.norm_sqr() / (2.0 * std::f64::consts::PI))
}

/// The conditional position density W(x) = N(x)/D.
pub fn conditional_w_x(
    pkt: &GaussianWavepacket,
    delta_p: f64,
    x: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let d = denominator_d(pkt, delta_p)?;
    if d <= 1e-300 {
        return Err(Error::ImpossibleOutcome(d));
    }
    Ok(numerator_n(pkt, delta_p, x, cfg)? / d)
}

/// Centered window amplitude `int_{-dp/2}^{dp/2} g(u) cos(ux) du`; its sign
/// changes locate the zeros of W(x).
fn window_amplitude(
    pkt: &GaussianWavepacket,
    delta_p: f64,
    x: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let centered = GaussianWavepacket::new(0.0, pkt.sigma_p())?;
    integrate_oscillatory(
        |u| C64::new(centered.amplitude(u) * (u * x).cos(), 0.0),
        -0.5 * delta_p,
        0.5 * delta_p,
        cfg,
        x.abs(),
    )
    .map(|v| v.re)
}

/// Locate the first zero of W(x) for x > 0 by sign bracketing on the window
/// amplitude, to a relative precision of 1e-9. Only the sharp-window regime
/// `delta_p << sigma_p` has zeros; otherwise this fails.
pub fn first_zero(pkt: &GaussianWavepacket, delta_p: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_delta_p(delta_p)?;
    let mut lo = std::f64::consts::PI / delta_p;
    let mut hi = 3.0 * std::f64::consts::PI / delta_p;
    let f_lo = window_amplitude(pkt, delta_p, lo, cfg)?;
    let f_hi = window_amplitude(pkt, delta_p, hi, cfg)?;
    if !(f_lo > 0.0 && f_hi < 0.0) {
        return Err(Error::WidthSearch(format!(
            "no sign change in [{lo:.4}, {hi:.4}]: amplitude {f_lo:.3e} .. {f_hi:.3e}"
        )));
    }
    let mut f_lo = f_lo;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (hi - lo) <= 1e-9 * mid {
            return Ok(mid);
        }
        let f_mid = window_amplitude(pkt, delta_p, mid, cfg)?;
        if f_mid > 0.0 {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let _ = f_lo;
    Err(Error::WidthSearch("bisection did not converge".into()))
}

/// The sinc width relation for a sharp momentum window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SincWidth {
    pub delta_p: f64,
    /// Full width between the symmetric first zeros, 4 pi / delta_p.
    pub delta_x: f64,
    /// delta_x * delta_p = 4 pi by construction.
    pub product: f64,
    /// Numerically located first zero of W(x).
    pub first_zero_numeric: f64,
    /// The sinc-limit prediction 2 pi / delta_p.
    pub first_zero_formula: f64,
    /// |numeric - formula| / formula.
    pub rel_deviation: f64,
}

/// Full width `delta_x = 4 pi / delta_p` between the symmetric first zeros
/// of the conditional density, checked against the numerically located
/// zero. The true zero of the Gaussian-windowed profile sits
/// `O(delta_p^2/(8 pi^2))` relative away from the sinc prediction, so the
/// agreement guard scales with the window.
pub fn sinc_width_product(
    pkt: &GaussianWavepacket,
    delta_p: f64,
    cfg: &QuadratureConfig,
) -> Result<SincWidth> {
    check_delta_p(delta_p)?;
    let formula = 2.0 * std::f64::consts::PI / delta_p;
    let numeric = first_zero(pkt, delta_p, cfg)?;
    let rel = (numeric - formula).abs() / formula;
    let scaled = delta_p / pkt.sigma_p();
    let guard = (scaled * scaled / (4.0 * std::f64::consts::PI * std::f64::consts::PI)).max(1e-6);
    if rel > guard {
        return Err(Error::WidthSearch(format!(
            "first zero {numeric:.8} deviates from 2 pi/dp = {formula:.8} by {rel:.3e} (guard {guard:.3e})"
        )));
    }
    Ok(SincWidth {
        delta_p,
        delta_x: 2.0 * formula,
        product: 4.0 * std::f64::consts::PI,
        first_zero_numeric: numeric,
        first_zero_formula: formula,
        rel_deviation: rel,
    })
}

/// Series and quadrature routes for the small-window expansions of the
/// normalization integral D' and the windowed Fourier amplitude N'
/// (sigma_p = 1 conventions):
///
/// ```text
///   D'        = int_{-dp/2}^{dp/2} e^{-p^2/2} dp  ~  dp - (1/3)(dp/2)^3
///   N'(z, dp) = int_{-dp/2}^{dp/2} e^{-p^2/4} e^{ipx} dp,   z = x dp / 2
///             ~ dp { (sin z / z)(1 - dp^2/16)
///                    + (dp^2 / (8 z^2)) (sin z / z - cos z) }
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AppendixCheck {
    pub d_series: f64,
    pub d_quadrature: f64,
    pub n_series: f64,
    pub n_quadrature: f64,
}

/// Evaluate both routes at window `delta_p` (valid for 0 < delta_p <= 0.5)
/// and reduced position z.
pub fn appendix_c_check(delta_p: f64, z: f64, cfg: &QuadratureConfig) -> Result<AppendixCheck> {
    check_delta_p(delta_p)?;
    if delta_p > 0.5 {
        return Err(Error::Validation(format!(
            "series expansion only valid for delta_p <= 0.5, got {delta_p}"
        )));
    }
    let half = 0.5 * delta_p;
    let d_series = delta_p - half.powi(3) / 3.0;
    let d_quadrature = integrate(|p| (-0.5 * p * p).exp(), -half, half, cfg)?;

    // sin z / z and (sin z / z - cos z)/z^2 with their z -> 0 limits.
    let (sinc_z, bracket) = if z.abs() < 1e-4 {
        let z2 = z * z;
        (1.0 - z2 / 6.0 + z2 * z2 / 120.0, 1.0 / 3.0 - z2 / 30.0)
    } else {
        let s = z.sin() / z;
        (s, (s - z.cos()) / (z * z))
    };
    let dp2 = delta_p * delta_p;
    let n_series = delta_p * (sinc_z * (1.0 - dp2 / 16.0) + bracket * dp2 / 8.0);

    let x = 2.0 * z / delta_p;
    let n_quadrature = integrate_oscillatory(
        |p| C64::new(0.0, p * x).exp() * (-0.25 * p * p).exp(),
        -half,
        half,
        cfg,
        x.abs(),
    )?;
    if n_quadrature.im.abs() > 1e-9 {
        return Err(Error::QuadratureAccuracy {
            tol: 1e-9,
            err: n_quadrature.im.abs(),
        });
    }
    Ok(AppendixCheck {
        d_series,
        d_quadrature,
        n_series,
        n_quadrature: n_quadrature.re,
    })
}
