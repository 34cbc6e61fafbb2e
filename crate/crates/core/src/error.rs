//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Evaluation point outside the model's open domain.
    #[error("x = {x} is outside the {model} domain {domain}")]
    DomainViolation {
        model: &'static str,
        x: f64,
        domain: String,
    },

    /// Coupling constants violate the model's bound-state inequalities.
    #[error("invalid parameters for {model}: {}", violations.join("; "))]
    InvalidParams {
        model: &'static str,
        violations: Vec<String>,
    },

    /// Requested level does not exist for these couplings.
    #[error("level N = {n} does not exist: {reason}")]
    LevelOutOfRange { n: usize, reason: String },

    /// Two roots collapsed onto each other.
    #[error("root configuration is singular (min separation {separation:.3e})")]
    SingularRoots { separation: f64 },

    /// Newton iteration did not reach the residual tolerance.  Carries the
    /// best iterate seen so diagnostics can inspect it.
    #[error("solver failed to converge after {iterations} iterations (residual {residual:.3e})")]
    ConvergenceFailure {
        iterations: usize,
        residual: f64,
        best: Vec<f64>,
    },

    /// Evaluation at (or too close to) a node of the polynomial factor,
    /// where the prepotential's log term diverges.
    #[error("evaluation at x = {x} hits a root preimage (z = {z})")]
    PoleEval { x: f64, z: f64 },

    /// Wavefunction tails are not negligible at the grid ends.
    #[error("boundary leak {leak:.3e} exceeds {tol:.3e}; widen the grid")]
    BoundaryLeak { leak: f64, tol: f64 },

    /// Malformed grid (ordering, point count, non-finite bounds).
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// The numeric spectrum does not contain enough bound levels to pair
    /// with the closed forms.
    #[error("only {found} bound levels found numerically, needed {needed}")]
    InsufficientBoundLevels { found: usize, needed: usize },

    /// Generic numerical failure with diagnostics.
    #[error("numerical failure: {0}")]
    Numerical(String),
}
