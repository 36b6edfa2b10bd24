//! Numerics for the two-probe model of successive quantum measurements.
//!
//! A system is coupled to two Gaussian probe pointers at successive times:
//! the first interaction measures a coarse-grained observable `A^{da}` with
//! resolution `delta_a`, the second a full-resolution observable `B`. Only
//! the probe positions are detected; conditioning the second pointer on the
//! first reproduces the (generalized) Wigner formula for the system, and the
//! width of that conditional distribution as a function of `delta_a` is an
//! uncertainty relation for successive measurements.
//!
//! Module map:
//!
//! - [`hilbert`]: finite-dimensional states, density operators, spectral
//!   observables, projectors, expectations.
//! - [`coarse`]: the low-resolution observable `A^{da}` and its coarse
//!   projectors.
//! - [`probe`]: exact two-probe position statistics — joint, marginal and
//!   conditional densities, weak/strong coupling limits, characteristic
//!   functions and the deconvolution back to the system distribution.
//! - [`wigner`]: generalized and conditional Wigner formulas, perturbed
//!   states, width functionals, F(delta_a) and the Robertson inequality.
//! - [`schwinger`]: the N-dimensional periodic model (shift/clock operators,
//!   discrete Fourier bases, closed-form conditional distribution, sine
//!   observables and their Robertson table).
//! - [`continuum`]: the continuous momentum-position case and the
//!   rotated-quadrature model, with the adaptive oscillatory quadrature
//!   engine behind them.
//! - [`cli`]: declarative scenario configs and deterministic CSV/JSON
//!   emission for the `twoprobe` binary.

pub mod cli;
pub mod coarse;
pub mod continuum;
pub mod error;
pub mod hilbert;
pub mod probe;
pub mod schwinger;
pub mod wigner;

pub use error::{Error, Result};
