//! Generic Riemannian machinery over any family: Christoffel symbols from
//! the Fisher metric, geodesic integration, the exponential map, Fisher-Rao
//! sphere discretization and a two-point distance solver.

mod geodesic;
mod shooting;
mod sphere;

pub use geodesic::{exp_map, geodesic_integrate, speed_profile};
pub use shooting::{fr_distance_numeric, ShootingConfig};
pub use sphere::{concentric_spheres, fr_sphere, fr_sphere_integrated};

use crate::error::{Error, Result};
use crate::families::{FamilySpec, ParamPoint};
use serde::{Deserialize, Serialize};

/// Default finite-difference step for metric derivatives.
pub const DEFAULT_FD_STEP: f64 = 1e-7;

/// A geodesic whose velocity Fisher-Rao norm exceeds this is declared blown
/// up; exact geodesics preserve the norm, so any large excursion is numerical
/// escape toward the domain boundary.
pub const BLOWUP_SPEED: f64 = 1e8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChristoffelSource {
    ClosedForm,
    FiniteDifference,
}

/// Christoffel symbols of the second kind, symmetric in the lower indices.
#[derive(Clone, Copy, Debug)]
pub struct ChristoffelSymbols {
    dim: u8,
    sym: [f64; 8],
    pub at_point: ParamPoint,
    pub source: ChristoffelSource,
}

impl ChristoffelSymbols {
    pub fn zeros(dim: usize, at_point: ParamPoint, source: ChristoffelSource) -> Self {
        debug_assert!(dim == 1 || dim == 2);
        ChristoffelSymbols {
            dim: dim as u8,
            sym: [0.0; 8],
            at_point,
            source,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    fn idx(&self, k: usize, i: usize, j: usize) -> usize {
        (k * self.dim() + i) * self.dim() + j
    }

    /// Sets Gamma^k_{ij} and its lower-index mirror Gamma^k_{ji}.
    pub fn set(&mut self, k: usize, i: usize, j: usize, value: f64) {
        let a = self.idx(k, i, j);
        let b = self.idx(k, j, i);
        self.sym[a] = value;
        self.sym[b] = value;
    }

    pub fn get(&self, k: usize, i: usize, j: usize) -> f64 {
        self.sym[self.idx(k, i, j)]
    }

    pub fn is_finite(&self) -> bool {
        let n = self.dim() * self.dim() * self.dim();
        self.sym[..n].iter().all(|v| v.is_finite())
    }

    pub fn max_abs_diff(&self, other: &ChristoffelSymbols) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        let n = self.dim() * self.dim() * self.dim();
        (0..n)
            .map(|i| (self.sym[i] - other.sym[i]).abs())
            .fold(0.0, f64::max)
    }

    /// Geodesic acceleration: a^k = -Gamma^k_{ij} v^i v^j.
    pub fn acceleration(&self, v: &[f64; 2]) -> [f64; 2] {
        let d = self.dim();
        let mut acc = [0.0; 2];
        for (k, slot) in acc.iter_mut().enumerate().take(d) {
            let mut s = 0.0;
            for i in 0..d {
                for j in 0..d {
                    s += self.get(k, i, j) * v[i] * v[j];
                }
            }
            *slot = -s;
        }
        acc
    }
}

/// Christoffel symbols from central finite differences of the Fisher metric:
/// Gamma^k_ij = (1/2) g^{kl} (d_j g_il + d_i g_jl - d_l g_ij).
///
/// The step is clamped per axis to sqrt(machine epsilon) times the coordinate
/// magnitude so large parameters (e.g. the flood Gumbel location ~1000) keep
/// meaningful difference quotients.
pub fn christoffel_numeric(
    spec: &FamilySpec,
    theta: &ParamPoint,
    h: f64,
) -> Result<ChristoffelSymbols> {
    spec.validate_point(theta)?;
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::Validation(format!(
            "finite-difference step must be positive, got {h}"
        )));
    }
    let d = spec.param_dim();
    let g = spec.fim(theta)?.entries;
    let ginv = g.inverse()?;

    // dg[l] = d g / d theta^l by a central difference
    let mut dg = Vec::with_capacity(d);
    for l in 0..d {
        let hl = h.max(f64::EPSILON.sqrt() * theta.coord(l).abs());
        let mut cu = theta.coords().to_vec();
        let mut cd = theta.coords().to_vec();
        cu[l] += hl;
        cd[l] -= hl;
        let up = ParamPoint::from_slice(&cu)?;
        let dn = ParamPoint::from_slice(&cd)?;
        if spec.validate_point(&up).is_err() || spec.validate_point(&dn).is_err() {
            return Err(Error::Boundary(format!(
                "theta {:?} is within {hl} of the domain boundary along axis {l}",
                theta.coords()
            )));
        }
        let gu = spec.fim(&up)?.entries;
        let gd = spec.fim(&dn)?.entries;
        dg.push(gu.sub(&gd).scale(1.0 / (2.0 * hl)));
    }

    let mut sym = ChristoffelSymbols::zeros(d, *theta, ChristoffelSource::FiniteDifference);
    for k in 0..d {
        for i in 0..d {
            for j in i..d {
                let mut s = 0.0;
                for l in 0..d {
                    s += ginv.get(k, l) * (dg[j].get(i, l) + dg[i].get(j, l) - dg[l].get(i, j));
                }
                sym.set(k, i, j, 0.5 * s);
            }
        }
    }
    if !sym.is_finite() {
        return Err(Error::Numerical(format!(
            "non-finite Christoffel symbols at {:?}",
            theta.coords()
        )));
    }
    Ok(sym)
}

/// Closed-form symbols when the family has them, finite differences with the
/// default step otherwise.
pub fn christoffel_at(spec: &FamilySpec, theta: &ParamPoint) -> Result<ChristoffelSymbols> {
    if spec.has_closed_christoffel() {
        spec.christoffel_closed(theta)
    } else {
        christoffel_numeric(spec, theta, DEFAULT_FD_STEP)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeodesicStatus {
    Complete,
    BlewUp { t_star: f64 },
}

impl GeodesicStatus {
    pub fn is_complete(&self) -> bool {
        matches!(self, GeodesicStatus::Complete)
    }
}

/// Time-discretized geodesic on [0, 1].
#[derive(Clone, Debug)]
pub struct Geodesic {
    pub times: Vec<f64>,
    pub points: Vec<ParamPoint>,
    pub velocities: Vec<[f64; 2]>,
    pub initial_speed: f64,
    pub status: GeodesicStatus,
}

impl Geodesic {
    pub fn endpoint(&self) -> &ParamPoint {
        self.points
            .last()
            .expect("geodesic has at least the initial point")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Integrator {
    Euler,
    Rk4,
}

impl std::str::FromStr for Integrator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Integrator> {
        match s.to_ascii_lowercase().as_str() {
            "euler" => Ok(Integrator::Euler),
            "rk4" => Ok(Integrator::Rk4),
            other => Err(Error::Validation(format!("unknown integrator '{other}'"))),
        }
    }
}

/// Discretized Fisher-Rao sphere: K boundary points with per-point geodesic
/// statuses, ordered by direction index.
#[derive(Clone, Debug)]
pub struct FrSphere {
    pub center: ParamPoint,
    pub radius: f64,
    pub points: Vec<ParamPoint>,
    pub angles: Vec<f64>,
    pub statuses: Vec<GeodesicStatus>,
}

impl FrSphere {
    pub fn blowup_count(&self) -> usize {
        self.statuses.iter().filter(|s| !s.is_complete()).count()
    }

    pub fn complete_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.statuses
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.is_complete().then_some(i))
    }
}
