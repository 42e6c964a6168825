//! Two-point Fisher-Rao distance by geodesic shooting.
//!
//! The initial direction angle is refined by golden-section search on the
//! landing residual; for each candidate angle the initial speed is solved by
//! bisection on the landing point's signed progress toward the target. Since
//! geodesics travel at constant speed, the distance is the initial Fisher-Rao
//! speed of the hitting geodesic (unit travel time).

use super::{exp_map, Integrator};
use crate::error::{Error, Result};
use crate::families::{FamilySpec, ParamPoint};

#[derive(Clone, Copy, Debug)]
pub struct ShootingConfig {
    pub steps: usize,
    pub method: Integrator,
    /// Number of coarse angles scanned before refinement.
    pub coarse_angles: usize,
    /// Bisection iterations of the inner speed solve.
    pub speed_iters: usize,
    /// Golden-section iterations of the outer angle search.
    pub angle_iters: usize,
    /// Relative chart-space residual accepted as a hit.
    pub position_tol: f64,
}

impl Default for ShootingConfig {
    fn default() -> Self {
        ShootingConfig {
            steps: 1000,
            method: Integrator::Rk4,
            coarse_angles: 48,
            speed_iters: 80,
            angle_iters: 64,
            position_tol: 1e-7,
        }
    }
}

fn chart_dist(a: &ParamPoint, b: &ParamPoint) -> f64 {
    a.coords()
        .iter()
        .zip(b.coords())
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Shoots along a fixed FR-unit direction, solving for the speed that lands
/// closest to the target; returns (speed, residual).
fn solve_speed(
    spec: &FamilySpec,
    theta0: &ParamPoint,
    theta1: &ParamPoint,
    unit: &[f64; 2],
    cfg: &ShootingConfig,
    c_hint: f64,
) -> Option<(f64, f64)> {
    // Signed progress of the landing point along the chord to the target;
    // negative = undershoot, positive = overshoot. Blow-ups count as
    // overshoots (the geodesic escaped past the target region).
    let gap = [
        theta1.coord(0) - theta0.coord(0),
        if theta0.dim() == 2 {
            theta1.coord(1) - theta0.coord(1)
        } else {
            0.0
        },
    ];
    let gap_norm = (gap[0] * gap[0] + gap[1] * gap[1]).sqrt();
    let w = [gap[0] / gap_norm, gap[1] / gap_norm];
    let dim = theta0.dim();
    let progress = |c: f64| -> Option<f64> {
        let v: Vec<f64> = (0..dim).map(|i| c * unit[i]).collect();
        match exp_map(spec, theta0, &v, cfg.steps, cfg.method) {
            Ok(p) => {
                let s = (0..dim)
                    .map(|i| (p.coord(i) - theta1.coord(i)) * w[i])
                    .sum();
                Some(s)
            }
            Err(_) => None,
        }
    };

    // Bracket: grow the speed until the landing overshoots.
    let mut lo = 0.0;
    let mut hi = (c_hint / 8.0).max(1e-8);
    let mut hi_val = progress(hi);
    let mut tries = 0;
    while let Some(g) = hi_val {
        if g >= 0.0 {
            break;
        }
        lo = hi;
        hi *= 2.0;
        hi_val = progress(hi);
        tries += 1;
        if tries > 60 {
            return None;
        }
    }

    for _ in 0..cfg.speed_iters {
        let mid = 0.5 * (lo + hi);
        match progress(mid) {
            Some(g) if g < 0.0 => lo = mid,
            _ => hi = mid,
        }
        if hi - lo < 1e-14 * (1.0 + hi) {
            break;
        }
    }
    let c = 0.5 * (lo + hi);
    let v: Vec<f64> = (0..dim).map(|i| c * unit[i]).collect();
    let landing = exp_map(spec, theta0, &v, cfg.steps, cfg.method).ok()?;
    Some((c, chart_dist(&landing, theta1)))
}

/// Fisher-Rao distance between two points of the same family by geodesic
/// shooting; the estimate is the hitting geodesic's initial FR speed.
pub fn fr_distance_numeric(
    spec: &FamilySpec,
    theta0: &ParamPoint,
    theta1: &ParamPoint,
    cfg: &ShootingConfig,
) -> Result<f64> {
    spec.validate_point(theta0)?;
    spec.validate_point(theta1)?;
    if theta0 == theta1 {
        return Ok(0.0);
    }
    let dim = spec.param_dim();
    let fim0 = spec.fim(theta0)?;
    let gap: Vec<f64> = (0..dim)
        .map(|i| theta1.coord(i) - theta0.coord(i))
        .collect();
    let c_hint = fim0.norm(&gap).max(1e-8);
    let scale = chart_dist(theta0, theta1);

    let fr_unit = |u: [f64; 2]| -> Result<[f64; 2]> {
        let n = fim0.norm(&u);
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::Numerical(
                "cannot normalize shooting direction".into(),
            ));
        }
        Ok([u[0] / n, u[1] / n])
    };

    if dim == 1 {
        let sign = (theta1.coord(0) - theta0.coord(0)).signum();
        let unit = fr_unit([sign, 0.0])?;
        return match solve_speed(spec, theta0, theta1, &unit, cfg, c_hint) {
            Some((c, resid)) if resid <= cfg.position_tol * (1.0 + scale) => Ok(c),
            Some((_, resid)) => Err(Error::NoConvergence { residual: resid }),
            None => Err(Error::NoConvergence {
                residual: f64::INFINITY,
            }),
        };
    }

    let eval_angle = |phi: f64| -> Option<(f64, f64)> {
        let unit = fr_unit([phi.cos(), phi.sin()]).ok()?;
        solve_speed(spec, theta0, theta1, &unit, cfg, c_hint)
    };

    // Coarse scan of the full circle.
    let mut best: Option<(f64, f64, f64)> = None; // (phi, speed, residual)
    for l in 0..cfg.coarse_angles {
        let phi = 2.0 * std::f64::consts::PI * l as f64 / cfg.coarse_angles as f64;
        if let Some((c, r)) = eval_angle(phi) {
            if best.is_none_or(|(_, _, br)| r < br) {
                best = Some((phi, c, r));
            }
        }
    }
    let (phi0, mut best_c, mut best_r) = best.ok_or(Error::NoConvergence {
        residual: f64::INFINITY,
    })?;

    // Golden-section refinement around the best coarse angle.
    let golden = (5.0_f64.sqrt() - 1.0) / 2.0;
    let width = 2.0 * std::f64::consts::PI / cfg.coarse_angles as f64;
    let mut a = phi0 - width;
    let mut b = phi0 + width;
    let mut x1 = b - golden * (b - a);
    let mut x2 = a + golden * (b - a);
    let mut f1 = eval_angle(x1).map(|(_, r)| r).unwrap_or(f64::INFINITY);
    let mut f2 = eval_angle(x2).map(|(_, r)| r).unwrap_or(f64::INFINITY);
    for _ in 0..cfg.angle_iters {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - golden * (b - a);
            f1 = eval_angle(x1).map(|(_, r)| r).unwrap_or(f64::INFINITY);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + golden * (b - a);
            f2 = eval_angle(x2).map(|(_, r)| r).unwrap_or(f64::INFINITY);
        }
        if (b - a).abs() < 1e-12 {
            break;
        }
    }
    let phi_star = 0.5 * (a + b);
    if let Some((c, r)) = eval_angle(phi_star) {
        if r < best_r {
            best_c = c;
            best_r = r;
        }
    }
    if best_r <= cfg.position_tol * (1.0 + scale) {
        Ok(best_c)
    } else {
        Err(Error::NoConvergence { residual: best_r })
    }
}
