//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by state construction, measurement operations and the
/// numerical back ends.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A precondition on the inputs was violated.
    #[error("validation error: {0}")]
    Validation(String),

    /// Coarse-graining resolutions must be even.
    #[error("resolution must be even (got {0})")]
    OddResolution(usize),

    /// The Hilbert-space dimension is not an integral number of intervals.
    #[error("dimension incompatible with resolution: {dim} is not divisible by {block}")]
    IncompatibleDimension { dim: usize, block: usize },

    /// A projective branch carries (numerically) zero probability.
    #[error("zero-probability branch (weight {0:.3e})")]
    ZeroProbabilityBranch(f64),

    /// Conditioning on a probe reading whose marginal density vanishes.
    #[error("conditioning on impossible outcome (marginal density {0:.3e})")]
    ImpossibleOutcome(f64),

    /// The characteristic-function inversion is numerically hopeless.
    #[error("spectrum too dense for deconvolution (condition number {0:.3e})")]
    IllConditioned(f64),

    /// var(A) vanishes in the perturbed state, so the Robertson bound is 0/0.
    #[error("Robertson bound degenerate: var(A) = {0:.3e} in the perturbed state")]
    DegenerateBound(f64),

    /// The rotated-quadrature kernel 1/sqrt(2*pi*|sin(theta)|) blows up.
    #[error("kernel singular at commuting limit (sin(theta) = {0:.3e})")]
    SingularKernel(f64),

    /// Adaptive quadrature ran out of subdivisions before reaching tolerance.
    #[error("quadrature did not reach tolerance {tol:.3e} (error estimate {err:.3e})")]
    QuadratureAccuracy { tol: f64, err: f64 },

    /// A width search (root bracketing or level crossing) failed to converge.
    #[error("width search did not converge: {0}")]
    WidthSearch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// `true` for errors that indicate bad inputs rather than a numerical
    /// failure; the CLI maps these to exit code 2 and the rest to 3.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::QuadratureAccuracy { .. } | Error::WidthSearch(_) | Error::IllConditioned(_)
        )
    }
}
