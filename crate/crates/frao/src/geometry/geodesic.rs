//! Fixed-step integration of the geodesic equation
//! `d2 gamma^k + Gamma^k_ij dgamma^i dgamma^j = 0` as a first-order system
//! in (position, velocity) on [0, 1].

use super::{christoffel_at, Geodesic, GeodesicStatus, Integrator, BLOWUP_SPEED};
use crate::error::{Error, Result};
use crate::families::{FamilySpec, ParamPoint};

#[derive(Clone, Copy)]
pub(super) struct State {
    pub x: [f64; 2],
    pub v: [f64; 2],
}

impl State {
    fn point(&self, dim: usize) -> ParamPoint {
        if dim == 1 {
            ParamPoint::one(self.x[0])
        } else {
            ParamPoint::two(self.x[0], self.x[1])
        }
    }
}

/// Right-hand side (velocity, acceleration); fails when the point leaves the
/// domain or the symbols cannot be evaluated, which the stepper treats as a
/// blow-up.
fn rhs(spec: &FamilySpec, dim: usize, s: &State) -> Result<State> {
    let p = s.point(dim);
    spec.validate_point(&p)?;
    let gamma = christoffel_at(spec, &p)?;
    Ok(State {
        x: s.v,
        v: gamma.acceleration(&s.v),
    })
}

fn add(a: &State, b: &State, c: f64) -> State {
    State {
        x: [a.x[0] + c * b.x[0], a.x[1] + c * b.x[1]],
        v: [a.v[0] + c * b.v[0], a.v[1] + c * b.v[1]],
    }
}

pub(super) fn step(
    spec: &FamilySpec,
    dim: usize,
    s: &State,
    dt: f64,
    method: Integrator,
) -> Result<State> {
    let next = match method {
        Integrator::Euler => {
            let k1 = rhs(spec, dim, s)?;
            add(s, &k1, dt)
        }
        Integrator::Rk4 => {
            let k1 = rhs(spec, dim, s)?;
            let k2 = rhs(spec, dim, &add(s, &k1, 0.5 * dt))?;
            let k3 = rhs(spec, dim, &add(s, &k2, 0.5 * dt))?;
            let k4 = rhs(spec, dim, &add(s, &k3, dt))?;
            let mut out = *s;
            for i in 0..2 {
                out.x[i] += dt / 6.0 * (k1.x[i] + 2.0 * k2.x[i] + 2.0 * k3.x[i] + k4.x[i]);
                out.v[i] += dt / 6.0 * (k1.v[i] + 2.0 * k2.v[i] + 2.0 * k3.v[i] + k4.v[i]);
            }
            out
        }
    };
    validate_state(spec, dim, &next)?;
    Ok(next)
}

fn validate_state(spec: &FamilySpec, dim: usize, s: &State) -> Result<()> {
    if !(s.x[..dim].iter().all(|c| c.is_finite()) && s.v[..dim].iter().all(|c| c.is_finite())) {
        return Err(Error::Numerical("non-finite geodesic state".into()));
    }
    let p = s.point(dim);
    spec.validate_point(&p)?;
    let speed = spec.fim(&p)?.norm(&[s.v[0], s.v[1]]);
    if !(speed.is_finite() && speed <= BLOWUP_SPEED) {
        return Err(Error::Numerical(format!(
            "geodesic velocity norm {speed} diverged"
        )));
    }
    Ok(())
}

/// Integrates the geodesic with initial point `theta0` and initial velocity
/// `v0` over t in [0, 1]. An invalid initial point is an error; leaving the
/// domain mid-trajectory yields status `BlewUp` with the partial trajectory.
pub fn geodesic_integrate(
    spec: &FamilySpec,
    theta0: &ParamPoint,
    v0: &[f64],
    steps: usize,
    method: Integrator,
) -> Result<Geodesic> {
    spec.validate_point(theta0)?;
    let dim = spec.param_dim();
    if v0.len() != dim {
        return Err(Error::Validation(format!(
            "initial velocity has {} components, family has {} parameters",
            v0.len(),
            dim
        )));
    }
    if steps == 0 {
        return Err(Error::Validation(
            "geodesic integration needs at least 1 step".into(),
        ));
    }
    let mut v = [0.0; 2];
    v[..dim].copy_from_slice(v0);
    let initial_speed = spec.fim(theta0)?.norm(&v);

    let dt = 1.0 / steps as f64;
    let mut state = State {
        x: [
            theta0.coord(0),
            if dim == 2 { theta0.coord(1) } else { 0.0 },
        ],
        v,
    };
    let mut times = Vec::with_capacity(steps + 1);
    let mut points = Vec::with_capacity(steps + 1);
    let mut velocities = Vec::with_capacity(steps + 1);
    times.push(0.0);
    points.push(*theta0);
    velocities.push(state.v);

    let mut status = GeodesicStatus::Complete;
    for k in 0..steps {
        match step(spec, dim, &state, dt, method) {
            Ok(next) => {
                state = next;
                let t = (k + 1) as f64 * dt;
                times.push(t);
                points.push(state.point(dim));
                velocities.push(state.v);
            }
            Err(_) => {
                status = GeodesicStatus::BlewUp {
                    t_star: (k + 1) as f64 * dt,
                };
                break;
            }
        }
    }
    Ok(Geodesic {
        times,
        points,
        velocities,
        initial_speed,
        status,
    })
}

/// Riemannian exponential map: the geodesic endpoint at t = 1. A blow-up is
/// an error carrying the partial trajectory.
pub fn exp_map(
    spec: &FamilySpec,
    theta0: &ParamPoint,
    v: &[f64],
    steps: usize,
    method: Integrator,
) -> Result<ParamPoint> {
    let geo = geodesic_integrate(spec, theta0, v, steps, method)?;
    match geo.status {
        GeodesicStatus::Complete => Ok(*geo.endpoint()),
        GeodesicStatus::BlewUp { t_star } => Err(Error::BlowUp {
            t_star,
            partial: Box::new(geo),
        }),
    }
}

/// Fisher-Rao speed |dgamma_t|_{gamma_t} at every grid time of a complete
/// geodesic. Exact geodesics travel at constant speed, so the profile doubles
/// as an integration-quality diagnostic.
pub fn speed_profile(spec: &FamilySpec, geo: &Geodesic) -> Result<Vec<f64>> {
    if !geo.status.is_complete() {
        return Err(Error::Validation(
            "speed profile requires a complete geodesic".into(),
        ));
    }
    geo.points
        .iter()
        .zip(&geo.velocities)
        .map(|(p, v)| Ok(spec.fim(p)?.norm(v)))
        .collect()
}
