//! Fisher-Rao geometry of parametric distribution families — including
//! interval-truncated variants — and distribution-perturbation robustness
//! analysis of forward models.
//!
//! The crate is organized around four layers:
//!
//! * [`families`] — parametric families (normal, Gumbel, log-normal, Gamma,
//!   exponential, triangular, generic location-scale, and truncated versions
//!   where supported) with densities, inverse-CDF samplers, scores, Fisher
//!   information matrices and, where available, closed-form Christoffel
//!   symbols and Fisher-Rao distances.
//! * [`geometry`] — family-agnostic Riemannian machinery: finite-difference
//!   Christoffel symbols, geodesic integration (Euler / RK4), the exponential
//!   map, Fisher-Rao sphere discretization and a geodesic-shooting distance
//!   solver.
//! * [`ra`] — the robustness-analysis pipeline: seeded baseline sampling,
//!   self-normalized importance-sampling CDF/quantile estimation, perturbed-law
//!   indices, discrete optimization over Fisher-Rao spheres and bootstrap
//!   confidence intervals.
//! * [`flood`] — the analytic flood model benchmark with its baseline input
//!   configuration and an end-to-end study runner.
//!
//! ```
//! use frao::families::{FamilySpec, ParamPoint};
//! use frao::geometry::{fr_sphere, Integrator};
//!
//! // Fisher information of the standard normal in (mu, sigma) coordinates.
//! let spec = FamilySpec::normal();
//! let theta = ParamPoint::two(0.0, 1.0);
//! let fim = spec.fim(&theta).unwrap();
//! assert_eq!(fim.entries.get(0, 0), 1.0);
//! assert_eq!(fim.entries.get(1, 1), 2.0);
//!
//! // A 16-point Fisher-Rao sphere of radius 1/2 around it.
//! let sphere = fr_sphere(&spec, &theta, 0.5, 16, 1000, Integrator::Rk4).unwrap();
//! assert_eq!(sphere.points.len(), 16);
//! assert!(sphere.statuses.iter().all(|s| s.is_complete()));
//! ```

pub mod error;
pub mod families;
pub mod flood;
pub mod geometry;
pub mod io;
pub mod mat;
pub mod quad;
pub mod ra;
pub mod seeds;
pub mod special;

pub use error::{Error, Result};
