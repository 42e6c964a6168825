//! Fisher-Rao sphere discretization.
//!
//! A sphere of radius delta around theta0 is the set of endpoints of unit-time
//! geodesics whose initial velocity has Fisher-Rao norm delta. Directions are
//! taken at uniform angles in the coordinate chart and rescaled to FR norm
//! delta with the Fisher metric at the center.

use super::geodesic::{step, State};
use super::{FrSphere, GeodesicStatus, Integrator};
use crate::error::{Error, Result};
use crate::families::{FamilySpec, ParamPoint};
use rayon::prelude::*;

fn directions(
    spec: &FamilySpec,
    center: &ParamPoint,
    delta: f64,
    k: usize,
) -> Result<Vec<(f64, [f64; 2])>> {
    let fim = spec.fim(center)?;
    let dim = spec.param_dim();
    let mut out = Vec::with_capacity(k);
    if dim == 1 {
        // The chart is a line; the only directions are +/-.
        let unit = 1.0 / fim.norm(&[1.0, 0.0]);
        out.push((0.0, [delta * unit, 0.0]));
        out.push((std::f64::consts::PI, [-delta * unit, 0.0]));
        return Ok(out);
    }
    for l in 0..k {
        let angle = 2.0 * std::f64::consts::PI * l as f64 / k as f64;
        let u = [angle.cos(), angle.sin()];
        let norm = fim.norm(&u);
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::Numerical(format!(
                "cannot normalize sphere direction at angle {angle}"
            )));
        }
        out.push((angle, [delta * u[0] / norm, delta * u[1] / norm]));
    }
    Ok(out)
}

enum Snap {
    Ok(ParamPoint),
    Blew { t_star: f64, last: ParamPoint },
}

/// Integrates one geodesic over [0, 1] and records the state at the given
/// step indices (sorted ascending). Once a step fails, all later snapshots
/// are blow-ups at the failing time.
fn integrate_snapshots(
    spec: &FamilySpec,
    theta0: &ParamPoint,
    v0: [f64; 2],
    steps: usize,
    method: Integrator,
    snap_steps: &[usize],
) -> Vec<Snap> {
    let dim = spec.param_dim();
    let dt = 1.0 / steps as f64;
    let mut state = State {
        x: [
            theta0.coord(0),
            if dim == 2 { theta0.coord(1) } else { 0.0 },
        ],
        v: v0,
    };
    let mut last_point = *theta0;
    let mut snaps = Vec::with_capacity(snap_steps.len());
    let mut cursor = 0;
    if cursor < snap_steps.len() && snap_steps[cursor] == 0 {
        snaps.push(Snap::Ok(last_point));
        cursor += 1;
    }
    for k in 0..steps {
        if cursor >= snap_steps.len() {
            break;
        }
        match step(spec, dim, &state, dt, method) {
            Ok(next) => {
                state = next;
                last_point = if dim == 1 {
                    ParamPoint::one(state.x[0])
                } else {
                    ParamPoint::two(state.x[0], state.x[1])
                };
                while cursor < snap_steps.len() && snap_steps[cursor] == k + 1 {
                    snaps.push(Snap::Ok(last_point));
                    cursor += 1;
                }
            }
            Err(_) => {
                let t_star = (k + 1) as f64 * dt;
                while cursor < snap_steps.len() {
                    snaps.push(Snap::Blew {
                        t_star,
                        last: last_point,
                    });
                    cursor += 1;
                }
            }
        }
    }
    snaps
}

/// Discretized FR sphere. For the 1-parameter families with an exact sphere
/// (triangular, exponential) this delegates to the closed form; otherwise K
/// geodesics are integrated, one per direction.
pub fn fr_sphere(
    spec: &FamilySpec,
    center: &ParamPoint,
    delta: f64,
    k: usize,
    steps: usize,
    method: Integrator,
) -> Result<FrSphere> {
    if spec.has_closed_sphere() {
        let [minus, plus] = spec.closed_sphere_1d(center, delta)?;
        return Ok(FrSphere {
            center: *center,
            radius: delta,
            points: vec![plus, minus],
            angles: vec![0.0, std::f64::consts::PI],
            statuses: vec![GeodesicStatus::Complete; 2],
        });
    }
    fr_sphere_integrated(spec, center, delta, k, steps, method)
}

/// Sphere discretization that always integrates the geodesic equation, even
/// for families with a closed-form sphere (their cross-check route).
pub fn fr_sphere_integrated(
    spec: &FamilySpec,
    center: &ParamPoint,
    delta: f64,
    k: usize,
    steps: usize,
    method: Integrator,
) -> Result<FrSphere> {
    let spheres = concentric_integrated(spec, center, &[delta], k, steps, method)?;
    Ok(spheres
        .into_iter()
        .next()
        .expect("one radius in, one sphere out"))
}

/// Concentric spheres sharing geodesics: each direction is integrated once at
/// FR speed delta_max and snapshotted at t = delta/delta_max, which keeps a
/// constant arc-length step across all radii.
pub fn concentric_spheres(
    spec: &FamilySpec,
    center: &ParamPoint,
    deltas: &[f64],
    k: usize,
    steps: usize,
    method: Integrator,
) -> Result<Vec<FrSphere>> {
    if spec.has_closed_sphere() {
        let mut out = Vec::with_capacity(deltas.len());
        for &delta in deltas {
            let [minus, plus] = spec.closed_sphere_1d(center, delta)?;
            out.push(FrSphere {
                center: *center,
                radius: delta,
                points: vec![plus, minus],
                angles: vec![0.0, std::f64::consts::PI],
                statuses: vec![GeodesicStatus::Complete; 2],
            });
        }
        return Ok(out);
    }
    concentric_integrated(spec, center, deltas, k, steps, method)
}

fn concentric_integrated(
    spec: &FamilySpec,
    center: &ParamPoint,
    deltas: &[f64],
    k: usize,
    steps: usize,
    method: Integrator,
) -> Result<Vec<FrSphere>> {
    spec.validate_point(center)?;
    if deltas.is_empty()
        || deltas.iter().any(|d| !d.is_finite() || *d <= 0.0)
        || deltas.windows(2).any(|w| w[0] >= w[1])
    {
        return Err(Error::Validation(format!(
            "radii must be strictly increasing and positive, got {deltas:?}"
        )));
    }
    if k == 0 {
        return Err(Error::Validation(
            "sphere needs at least one direction".into(),
        ));
    }
    if steps == 0 {
        return Err(Error::Validation(
            "sphere integration needs at least 1 step".into(),
        ));
    }
    let delta_max = *deltas.last().unwrap();
    let snap_steps: Vec<usize> = deltas
        .iter()
        .map(|d| ((d / delta_max) * steps as f64).round() as usize)
        .collect();

    let dirs = directions(spec, center, delta_max, k)?;
    // Directions are independent; results are collected in direction order so
    // parallel and serial runs agree.
    let per_direction: Vec<Vec<Snap>> = dirs
        .par_iter()
        .map(|(_, v)| integrate_snapshots(spec, center, *v, steps, method, &snap_steps))
        .collect();

    let mut spheres = Vec::with_capacity(deltas.len());
    for (di, &delta) in deltas.iter().enumerate() {
        let mut points = Vec::with_capacity(dirs.len());
        let mut angles = Vec::with_capacity(dirs.len());
        let mut statuses = Vec::with_capacity(dirs.len());
        for (dir_idx, (angle, _)) in dirs.iter().enumerate() {
            angles.push(*angle);
            match &per_direction[dir_idx][di] {
                Snap::Ok(p) => {
                    points.push(*p);
                    statuses.push(GeodesicStatus::Complete);
                }
                Snap::Blew { t_star, last } => {
                    points.push(*last);
                    // Rescale the failure time onto this sphere's unit clock.
                    statuses.push(GeodesicStatus::BlewUp {
                        t_star: (t_star * delta_max / delta).min(1.0),
                    });
                }
            }
        }
        if statuses.iter().all(|s| !s.is_complete()) {
            return Err(Error::SphereDegenerate(format!(
                "all {} geodesics of the radius-{delta} sphere blew up",
                dirs.len()
            )));
        }
        spheres.push(FrSphere {
            center: *center,
            radius: delta,
            points,
            angles,
            statuses,
        });
    }
    Ok(spheres)
}
