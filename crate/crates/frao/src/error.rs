//! Crate-wide error type.

use crate::geometry::Geodesic;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter point lies outside the open parameter domain of a family.
    #[error("parameter out of domain: {0}")]
    Domain(String),

    /// A truncation (or support) interval with `a >= b`.
    #[error("invalid truncation interval [{a}, {b}]: bounds must satisfy a < b")]
    InvalidTruncation { a: f64, b: f64 },

    /// The truncation interval carries essentially no probability mass.
    #[error("degenerate truncation: {0}")]
    DegenerateTruncation(String),

    /// Quadrature failure, singular matrix, non-finite intermediate value.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A closed form was requested for a family that has none.
    #[error("not available: {0}")]
    NotAvailable(String),

    /// A 1-parameter sphere radius pushes past the family's finite diameter.
    #[error("radius {delta} too large: sphere point would leave the domain (max {delta_max})")]
    RadiusTooLarge { delta: f64, delta_max: f64 },

    /// A finite-difference stencil would step across the domain boundary.
    #[error("point too close to the domain boundary: {0}")]
    Boundary(String),

    /// A geodesic left the domain or diverged; carries the partial trajectory.
    #[error("geodesic blew up at t = {t_star}")]
    BlowUp { t_star: f64, partial: Box<Geodesic> },

    /// Geodesic shooting did not reach the target within its iteration budget.
    #[error("shooting did not converge: best residual {residual}")]
    NoConvergence { residual: f64 },

    /// Every geodesic of a sphere discretization blew up.
    #[error("sphere degenerate: {0}")]
    SphereDegenerate(String),

    /// All importance-sampling weights vanished.
    #[error("degenerate importance weights: {0}")]
    DegenerateWeights(String),

    /// The baseline quantity of interest is zero, so the PLI is undefined.
    #[error("baseline quantity of interest is zero; PLI undefined")]
    ZeroQoi,

    /// The forward model produced a non-finite output.
    #[error("model evaluation failed on draw {draw:?}: {detail}")]
    Evaluation { draw: Vec<f64>, detail: String },

    /// Invalid study or CLI configuration.
    #[error("invalid configuration: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
