//! Triangular family on a fixed support [a, b], parameterized by the mode.
//!
//! A 1-parameter family with fully closed geometry: Fisher information
//! 1/((m-a)(b-m)), an arcsine Fisher-Rao distance, finite diameter pi, and a
//! two-point sphere in closed form.

use super::{Interval, ParamPoint, TRIANGULAR_MARGIN};
use crate::error::{Error, Result};
use crate::mat::SymMat;

pub fn pdf(theta: &ParamPoint, iv: Interval, x: f64) -> f64 {
    let m = theta.coord(0);
    let (a, b) = (iv.lo, iv.hi);
    if x < a || x > b {
        0.0
    } else if x <= m {
        2.0 * (x - a) / ((b - a) * (m - a))
    } else {
        2.0 * (b - x) / ((b - a) * (b - m))
    }
}

pub fn cdf(theta: &ParamPoint, iv: Interval, x: f64) -> f64 {
    let m = theta.coord(0);
    let (a, b) = (iv.lo, iv.hi);
    if x <= a {
        0.0
    } else if x >= b {
        1.0
    } else if x <= m {
        (x - a) * (x - a) / ((b - a) * (m - a))
    } else {
        1.0 - (b - x) * (b - x) / ((b - a) * (b - m))
    }
}

pub fn quantile(theta: &ParamPoint, iv: Interval, u: f64) -> f64 {
    let m = theta.coord(0);
    let (a, b) = (iv.lo, iv.hi);
    let split = (m - a) / (b - a);
    let x = if u <= split {
        a + (u * (b - a) * (m - a)).sqrt()
    } else {
        b - ((1.0 - u) * (b - a) * (b - m)).sqrt()
    };
    x.clamp(a, b)
}

pub fn score(theta: &ParamPoint, iv: Interval, x: f64) -> [f64; 2] {
    let m = theta.coord(0);
    if x <= m {
        [-1.0 / (m - iv.lo), 0.0]
    } else {
        [1.0 / (iv.hi - m), 0.0]
    }
}

pub fn fim(theta: &ParamPoint, iv: Interval) -> SymMat {
    let m = theta.coord(0);
    SymMat::dim1(1.0 / ((m - iv.lo) * (iv.hi - m)))
}

/// Angle coordinate: arcsin of the mode mapped onto (-1, 1).
fn angle(iv: Interval, m: f64) -> f64 {
    let center = 0.5 * (iv.lo + iv.hi);
    let half = 0.5 * iv.width();
    ((m - center) / half).asin()
}

pub fn fr_distance(iv: Interval, m0: f64, m1: f64) -> f64 {
    (angle(iv, m1) - angle(iv, m0)).abs()
}

/// Two-point sphere {m_minus, m_plus}; the radius is capped by the angular
/// distance to the support ends.
pub fn closed_sphere(iv: Interval, m0: f64, delta: f64) -> Result<[ParamPoint; 2]> {
    let center = 0.5 * (iv.lo + iv.hi);
    let half = 0.5 * iv.width();
    let phi0 = angle(iv, m0);
    let delta_max = (std::f64::consts::FRAC_PI_2 - phi0).min(phi0 + std::f64::consts::FRAC_PI_2);
    let up = phi0 + delta;
    let dn = phi0 - delta;
    let margin = TRIANGULAR_MARGIN * iv.width();
    let m_plus = center + half * up.sin();
    let m_minus = center + half * dn.sin();
    if up.abs() >= std::f64::consts::FRAC_PI_2
        || dn.abs() >= std::f64::consts::FRAC_PI_2
        || m_plus >= iv.hi - margin
        || m_minus <= iv.lo + margin
    {
        return Err(Error::RadiusTooLarge { delta, delta_max });
    }
    Ok([ParamPoint::one(m_minus), ParamPoint::one(m_plus)])
}
