//! Location-scale families p_theta(x) = (1/s) p((x - m)/s).
//!
//! Every location-scale family has Fisher information [[A, C], [C, B]]/s^2
//! with constants A, B, C given by integrals in the base density p and its
//! log-derivative; a linear change of basis turns the metric into the
//! Poincare half-plane metric.

use super::{LocScaleBase, ParamPoint};
use crate::error::{Error, Result};
use crate::mat::SymMat;
use crate::quad::integrate_panels;
use crate::special::{std_normal_cdf, std_normal_pdf, std_normal_quantile};
use std::sync::OnceLock;

/// Base density handle for [`loc_scale_constants`]: the density, its
/// log-derivative p'/p, and a window outside which the constant integrands
/// are negligible.
pub trait BaseDensity {
    fn density(&self, y: f64) -> f64;
    /// p'(y) / p(y)
    fn log_density_slope(&self, y: f64) -> f64;
    fn window(&self) -> (f64, f64);
}

impl BaseDensity for LocScaleBase {
    fn density(&self, y: f64) -> f64 {
        match self {
            LocScaleBase::StdNormal => std_normal_pdf(y),
            LocScaleBase::StdGumbel => (-y - (-y).exp()).exp(),
        }
    }

    fn log_density_slope(&self, y: f64) -> f64 {
        match self {
            LocScaleBase::StdNormal => -y,
            LocScaleBase::StdGumbel => (-y).exp() - 1.0,
        }
    }

    fn window(&self) -> (f64, f64) {
        match self {
            LocScaleBase::StdNormal => (-12.0, 12.0),
            LocScaleBase::StdGumbel => (-8.0, 50.0),
        }
    }
}

/// Quadrature settings for the constant integrals.
#[derive(Clone, Copy, Debug)]
pub struct QuadConfig {
    pub nodes: usize,
    pub panels: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            nodes: 50,
            panels: 16,
        }
    }
}

/// The location-scale metric constants and the change of basis onto the
/// Poincare half-plane.
#[derive(Clone, Copy, Debug)]
pub struct LocScaleConstants {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    /// P with P (Id/s^2) P^T = I_theta; equivalently P P^T = [[a, g], [g, b]].
    pub change_of_basis: [[f64; 2]; 2],
}

impl LocScaleConstants {
    pub fn matrix(&self) -> SymMat {
        SymMat::dim2(self.alpha, self.gamma, self.beta)
    }
}

/// Computes alpha, beta, gamma by quadrature:
/// alpha = int (p'/p)^2 p,  beta = int (y p'/p + 1)^2 p,
/// gamma = int (p'/p)(y p'/p + 1) p.
pub fn loc_scale_constants(base: &dyn BaseDensity, cfg: &QuadConfig) -> Result<LocScaleConstants> {
    let (lo, hi) = base.window();
    let alpha = integrate_panels(cfg.nodes, lo, hi, cfg.panels, |y| {
        let p = base.density(y);
        if p == 0.0 {
            return 0.0;
        }
        let sl = base.log_density_slope(y);
        sl * sl * p
    });
    let beta = integrate_panels(cfg.nodes, lo, hi, cfg.panels, |y| {
        let p = base.density(y);
        if p == 0.0 {
            return 0.0;
        }
        let t = y * base.log_density_slope(y) + 1.0;
        t * t * p
    });
    let gamma = integrate_panels(cfg.nodes, lo, hi, cfg.panels, |y| {
        let p = base.density(y);
        if p == 0.0 {
            return 0.0;
        }
        let sl = base.log_density_slope(y);
        sl * (y * sl + 1.0) * p
    });
    if !(alpha.is_finite() && beta.is_finite() && gamma.is_finite()) {
        return Err(Error::Numerical(
            "location-scale constant integrals diverged".into(),
        ));
    }
    let m = SymMat::dim2(alpha, gamma, beta);
    if !m.is_positive_definite() {
        return Err(Error::Numerical(format!(
            "location-scale constants [[{alpha}, {gamma}], [{gamma}, {beta}]] not positive-definite"
        )));
    }
    // Spectral square root: P = Q diag(sqrt(lambda)), so P P^T = M.
    let [(l1, v1), (l2, v2)] = m.eigen2();
    let (r1, r2) = (l1.sqrt(), l2.sqrt());
    let change_of_basis = [[v1[0] * r1, v2[0] * r2], [v1[1] * r1, v2[1] * r2]];
    Ok(LocScaleConstants {
        alpha,
        beta,
        gamma,
        change_of_basis,
    })
}

fn cached_constants(base: LocScaleBase) -> Result<LocScaleConstants> {
    static NORMAL: OnceLock<std::result::Result<LocScaleConstants, String>> = OnceLock::new();
    static GUMBEL: OnceLock<std::result::Result<LocScaleConstants, String>> = OnceLock::new();
    let cell = match base {
        LocScaleBase::StdNormal => &NORMAL,
        LocScaleBase::StdGumbel => &GUMBEL,
    };
    cell.get_or_init(|| {
        loc_scale_constants(&base, &QuadConfig::default()).map_err(|e| e.to_string())
    })
    .clone()
    .map_err(Error::Numerical)
}

pub fn pdf(base: LocScaleBase, theta: &ParamPoint, x: f64) -> f64 {
    let (m, s) = (theta.coord(0), theta.coord(1));
    base.density((x - m) / s) / s
}

pub fn cdf(base: LocScaleBase, theta: &ParamPoint, x: f64) -> f64 {
    let z = (x - theta.coord(0)) / theta.coord(1);
    match base {
        LocScaleBase::StdNormal => std_normal_cdf(z),
        LocScaleBase::StdGumbel => (-(-z).exp()).exp(),
    }
}

pub fn quantile(base: LocScaleBase, theta: &ParamPoint, u: f64) -> f64 {
    let (m, s) = (theta.coord(0), theta.coord(1));
    let z = match base {
        LocScaleBase::StdNormal => std_normal_quantile(u),
        LocScaleBase::StdGumbel => -(-u.ln()).ln(),
    };
    m + s * z
}

pub fn score(base: LocScaleBase, theta: &ParamPoint, x: f64) -> [f64; 2] {
    let (m, s) = (theta.coord(0), theta.coord(1));
    let z = (x - m) / s;
    let sl = base.log_density_slope(z);
    [-sl / s, -(1.0 + z * sl) / s]
}

pub fn fim(base: LocScaleBase, theta: &ParamPoint) -> Result<SymMat> {
    let c = cached_constants(base)?;
    let s = theta.coord(1);
    Ok(c.matrix().scale(1.0 / (s * s)))
}
