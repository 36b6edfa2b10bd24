//! Adaptive quadrature for (possibly oscillatory) complex integrands.
//!
//! The integration range is first seeded with panels no wider than a
//! quarter period of the fastest phase factor (the caller supplies the
//! maximal |d phase/dx|), then each panel is refined by adaptive Simpson
//! subdivision until the requested absolute tolerance is met.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Accuracy controls for the adaptive engine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Absolute tolerance on the integral value.
    pub abs_tol: f64,
    /// Total subdivision budget across all panels.
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            max_subdivisions: 1 << 20,
        }
    }
}

impl QuadratureConfig {
    pub fn with_tol(abs_tol: f64) -> Self {
        Self {
            abs_tol,
            ..Self::default()
        }
    }
}

const MAX_DEPTH: usize = 60;

/// Integrate a complex-valued function over [a, b]. `max_phase_rate` is an
/// upper bound on |d(arg integrand)/dx|, used to seed the panel layout so
/// no panel spans more than a quarter oscillation.
pub fn integrate_complex<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<C64>
where
    F: Fn(f64) -> C64,
{
    integrate_oscillatory(f, a, b, cfg, 0.0)
}

/// [`integrate_complex`] with oscillation-aware panel seeding.
pub fn integrate_oscillatory<F>(
    f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
    max_phase_rate: f64,
) -> Result<C64>
where
    F: Fn(f64) -> C64,
{
    if !(b > a) {
        if b == a {
            return Ok(C64::new(0.0, 0.0));
        }
        return Err(Error::Validation(format!(
            "integration bounds out of order: [{a}, {b}]"
        )));
    }
    // Quarter-period rule: panel width <= (2 pi / rate) / 4.
    let len = b - a;
    let mut seeds = if max_phase_rate > 0.0 {
        (len * max_phase_rate / (std::f64::consts::PI / 2.0)).ceil() as usize
    } else {
        1
    };
    seeds = seeds.clamp(1, cfg.max_subdivisions);
    let mut budget = cfg.max_subdivisions as isize - seeds as isize;
    let mut total = C64::new(0.0, 0.0);
    let panel_tol = cfg.abs_tol / seeds as f64;
    for i in 0..seeds {
        let lo = a + len * i as f64 / seeds as f64;
        let hi = a + len * (i + 1) as f64 / seeds as f64;
        let flo = f(lo);
        let fhi = f(hi);
        let (mid, fmid, whole) = simpson(&f, lo, flo, hi, fhi);
        total += adapt(
            &f, lo, flo, mid, fmid, hi, fhi, whole, panel_tol, 0, &mut budget,
        )?;
    }
    Ok(total)
}

/// Real-valued convenience wrapper.
pub fn integrate<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    integrate_complex(|x| C64::new(f(x), 0.0), a, b, cfg).map(|v| v.re)
}

fn simpson<F>(f: &F, a: f64, fa: C64, b: f64, fb: C64) -> (f64, C64, C64)
where
    F: Fn(f64) -> C64,
{
    let m = 0.5 * (a + b);
    let fm = f(m);
    let s = (fa + fm * 4.0 + fb) * ((b - a) / 6.0);
    (m, fm, s)
}

#[allow(clippy::too_many_arguments)]
fn adapt<F>(
    f: &F,
    a: f64,
    fa: C64,
    m: f64,
    fm: C64,
    b: f64,
    fb: C64,
    whole: C64,
    tol: f64,
    depth: usize,
    budget: &mut isize,
) -> Result<C64>
where
    F: Fn(f64) -> C64,
{
    let (lm, flm, left) = simpson(f, a, fa, m, fm);
    let (rm, frm, right) = simpson(f, m, fm, b, fb);
    let err = left + right - whole;
    if err.norm() <= 15.0 * tol || (b - a) < f64::EPSILON * (a.abs() + b.abs()) {
        return Ok(left + right + err / 15.0);
    }
    if depth >= MAX_DEPTH || *budget < 2 {
        return Err(Error::QuadratureAccuracy {
            tol,
            err: err.norm() / 15.0,
        });
    }
    *budget -= 2;
    let half = 0.5 * tol;
    let l = adapt(f, a, fa, lm, flm, m, fm, left, half, depth + 1, budget)?;
    let r = adapt(f, m, fm, rm, frm, b, fb, right, half, depth + 1, budget)?;
    Ok(l + r)
}
