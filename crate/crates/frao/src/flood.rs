//! Analytic flood model benchmark: the river water-level formula, its
//! baseline input configuration, and an end-to-end study runner.

use crate::error::{Error, Result};
use crate::families::{FamilySpec, ParamPoint};
use crate::geometry::Integrator;
use crate::ra::{run_study, ModelKind, Qoi, RaStudyResult, StudyConfig, StudyInput};
use serde::Serialize;

/// Flood-model inputs: flow rate Q, Strickler roughness K, and upstream /
/// downstream river heights Zm, Zv. The dyke height Zd enters the flooding
/// criterion H + Zv >= Zd but not the water level itself, so it is carried
/// for documentation only.
#[derive(Clone, Copy, Debug)]
pub struct FloodInputs {
    pub flow: f64,
    pub strickler: f64,
    pub upstream: f64,
    pub downstream: f64,
}

impl FloodInputs {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=3000.0).contains(&self.flow) {
            return Err(Error::Domain(format!(
                "flow {} outside [0, 3000]",
                self.flow
            )));
        }
        if !(15.0..=90.0).contains(&self.strickler) {
            return Err(Error::Domain(format!(
                "Strickler {} outside [15, 90]",
                self.strickler
            )));
        }
        if !(54.0..=56.0).contains(&self.upstream) {
            return Err(Error::Domain(format!(
                "upstream height {} outside [54, 56]",
                self.upstream
            )));
        }
        if !(49.0..=51.0).contains(&self.downstream) {
            return Err(Error::Domain(format!(
                "downstream height {} outside [49, 51]",
                self.downstream
            )));
        }
        if self.upstream <= self.downstream {
            return Err(Error::Domain(format!(
                "upstream height {} must exceed downstream height {}",
                self.upstream, self.downstream
            )));
        }
        Ok(())
    }
}

/// Maximal annual water level H = Q^0.6 (300 K sqrt((Zm - Zv)/5000))^{-0.6}.
pub fn flood_height(x: &FloodInputs) -> Result<f64> {
    x.validate()?;
    Ok(flood_model(&[
        x.flow,
        x.strickler,
        x.upstream,
        x.downstream,
    ]))
}

/// Unchecked water level on a raw coordinate slice (Q, K, Zm, Zv); draws from
/// the baseline families always satisfy the domain constraints.
pub fn flood_model(x: &[f64]) -> f64 {
    let (q, k, zm, zv) = (x[0], x[1], x[2], x[3]);
    q.powf(0.6) * (300.0 * k * ((zm - zv) / 5000.0).sqrt()).powf(-0.6)
}

/// Baseline study configuration: Q ~ truncated Gumbel on [0, 3000] with
/// (m, s) = (1013, 558); K ~ truncated normal on [15, 90] with (30, 7.5);
/// Zm ~ triangular on [54, 56] with mode 55; Zv ~ triangular on [49, 51]
/// with mode 50. QoI is the 90% output quantile from 10^4 draws; radii
/// 0.1, ..., 1.0 with 100-point spheres.
pub fn flood_baseline() -> StudyConfig {
    StudyConfig {
        inputs: vec![
            StudyInput {
                name: "Q".into(),
                spec: FamilySpec::truncated_gumbel(0.0, 3000.0).expect("static bounds"),
                baseline: ParamPoint::two(1013.0, 558.0),
            },
            StudyInput {
                name: "K".into(),
                spec: FamilySpec::truncated_normal(15.0, 90.0).expect("static bounds"),
                baseline: ParamPoint::two(30.0, 7.5),
            },
            StudyInput {
                name: "Zm".into(),
                spec: FamilySpec::triangular(54.0, 56.0).expect("static bounds"),
                baseline: ParamPoint::one(55.0),
            },
            StudyInput {
                name: "Zv".into(),
                spec: FamilySpec::triangular(49.0, 51.0).expect("static bounds"),
                baseline: ParamPoint::one(50.0),
            },
        ],
        model: ModelKind::Flood,
        qoi: Qoi::Quantile { alpha: 0.9 },
        sample_size: 10_000,
        delta_grid: (1..=10).map(|i| i as f64 / 10.0).collect(),
        sphere_points: 100,
        geodesic_steps: 10_000,
        integrator: Integrator::Euler,
        seed: 0,
        bootstrap_replicates: 500,
        ci_level: 0.80,
    }
}

/// Optional deviations from the baseline configuration.
#[derive(Clone, Debug, Default)]
pub struct FloodOverrides {
    pub sample_size: Option<usize>,
    pub sphere_points: Option<usize>,
    pub delta_grid: Option<Vec<f64>>,
    pub geodesic_steps: Option<usize>,
    pub integrator: Option<Integrator>,
    pub bootstrap_replicates: Option<usize>,
}

impl FloodOverrides {
    pub fn apply(&self, config: &mut StudyConfig) {
        if let Some(n) = self.sample_size {
            config.sample_size = n;
        }
        if let Some(k) = self.sphere_points {
            config.sphere_points = k;
        }
        if let Some(grid) = &self.delta_grid {
            config.delta_grid = grid.clone();
        }
        if let Some(steps) = self.geodesic_steps {
            config.geodesic_steps = steps;
        }
        if let Some(m) = self.integrator {
            config.integrator = m;
        }
        if let Some(r) = self.bootstrap_replicates {
            config.bootstrap_replicates = r;
        }
    }
}

/// One row of the flow-rate argmin trajectory.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct QArgminRow {
    pub delta: f64,
    pub m: f64,
    pub s: f64,
}

/// Study result plus the per-delta minimizing Gumbel parameter for Q.
#[derive(Clone, Debug)]
pub struct FloodStudy {
    pub result: RaStudyResult,
    pub q_argmin: Vec<QArgminRow>,
}

/// Runs the flood study with the baseline configuration (plus overrides)
/// under the given seed, and extracts the argmin trajectory of Q.
pub fn run_flood_study(overrides: &FloodOverrides, seed: u64) -> Result<FloodStudy> {
    let mut config = flood_baseline();
    overrides.apply(&mut config);
    config.seed = seed;
    let result = run_study(&config)?;
    let q_argmin = result
        .cells
        .iter()
        .filter(|c| c.input == "Q")
        .map(|c| QArgminRow {
            delta: c.delta,
            m: c.argmin.coord(0),
            s: c.argmin.coord(1),
        })
        .collect();
    Ok(FloodStudy { result, q_argmin })
}
