//! Robustness-analysis pipeline: seeded baseline sampling, self-normalized
//! importance-sampling CDF/quantile estimation, perturbed-law indices (PLI),
//! discrete min/max over Fisher-Rao spheres and bootstrap confidence
//! intervals.
//!
//! All randomness flows through explicit per-task seeds derived from the
//! study seed, so parallel and serial executions produce identical results.

use crate::error::{Error, Result};
use crate::families::{FamilySpec, ParamPoint};
use crate::geometry::{concentric_spheres, FrSphere, Integrator};
use crate::seeds;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// One uncertain input: a family, a name, and the baseline parameter.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StudyInput {
    pub name: String,
    pub spec: FamilySpec,
    pub baseline: ParamPoint,
}

/// Forward models expressible in a study configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    /// Single input, G(x) = x.
    Identity,
    /// G(x) = sum of the inputs.
    Sum,
    /// The analytic flood model (inputs Q, K, Zm, Zv).
    Flood,
}

impl ModelKind {
    pub fn arity(&self) -> Option<usize> {
        match self {
            ModelKind::Identity => Some(1),
            ModelKind::Sum => None,
            ModelKind::Flood => Some(4),
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            ModelKind::Identity => x[0],
            ModelKind::Sum => x.iter().sum(),
            ModelKind::Flood => crate::flood::flood_model(x),
        }
    }
}

/// Quantity of interest on the model output.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Qoi {
    Quantile { alpha: f64 },
}

impl Qoi {
    pub fn alpha(&self) -> f64 {
        match self {
            Qoi::Quantile { alpha } => *alpha,
        }
    }
}

fn default_geodesic_steps() -> usize {
    10_000
}

fn default_integrator() -> Integrator {
    Integrator::Euler
}

fn default_replicates() -> usize {
    500
}

fn default_ci_level() -> f64 {
    0.80
}

/// Full description of a robustness study.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StudyConfig {
    pub inputs: Vec<StudyInput>,
    pub model: ModelKind,
    pub qoi: Qoi,
    pub sample_size: usize,
    pub delta_grid: Vec<f64>,
    pub sphere_points: usize,
    #[serde(default = "default_geodesic_steps")]
    pub geodesic_steps: usize,
    #[serde(default = "default_integrator")]
    pub integrator: Integrator,
    pub seed: u64,
    #[serde(default = "default_replicates")]
    pub bootstrap_replicates: usize,
    #[serde(default = "default_ci_level")]
    pub ci_level: f64,
}

impl StudyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.inputs.is_empty() {
            return Err(Error::Validation("study needs at least one input".into()));
        }
        if let Some(arity) = self.model.arity() {
            if self.inputs.len() != arity {
                return Err(Error::Validation(format!(
                    "model expects {arity} input(s), config has {}",
                    self.inputs.len()
                )));
            }
        }
        for input in &self.inputs {
            input.spec.validate_point(&input.baseline)?;
        }
        let alpha = self.qoi.alpha();
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::Validation(format!(
                "quantile level {alpha} outside (0, 1)"
            )));
        }
        if self.sample_size < 100 {
            return Err(Error::Validation(format!(
                "sample size {} below the minimum of 100",
                self.sample_size
            )));
        }
        if self.delta_grid.is_empty() {
            return Err(Error::Validation("delta grid is empty".into()));
        }
        if self.delta_grid.iter().any(|d| !d.is_finite() || *d <= 0.0)
            || self.delta_grid.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(Error::Validation(format!(
                "delta grid must be strictly increasing and positive: {:?}",
                self.delta_grid
            )));
        }
        if self.sphere_points == 0 {
            return Err(Error::Validation("sphere needs at least one point".into()));
        }
        if self.geodesic_steps == 0 {
            return Err(Error::Validation(
                "geodesic integration needs at least one step".into(),
            ));
        }
        if self.bootstrap_replicates == 0 {
            return Err(Error::Validation(
                "bootstrap needs at least one replicate".into(),
            ));
        }
        if !(self.ci_level > 0.0 && self.ci_level < 1.0) {
            return Err(Error::Validation(format!(
                "confidence level {} outside (0, 1)",
                self.ci_level
            )));
        }
        Ok(())
    }
}

/// Baseline draws and the corresponding model outputs.
#[derive(Clone, Debug)]
pub struct SampleSet {
    pub inputs: Vec<StudyInput>,
    /// `draws[i][j]` is the j-th draw of input i.
    pub draws: Vec<Vec<f64>>,
    pub outputs: Vec<f64>,
    pub seed: u64,
}

impl SampleSet {
    pub fn len(&self) -> usize {
        self.outputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outputs.is_empty()
    }
}

/// Draws the baseline sample (one seeded stream per input, stream seed =
/// study seed XOR input index) and evaluates the model once per draw.
pub fn draw_baseline(config: &StudyConfig) -> Result<SampleSet> {
    draw_baseline_with(config, &|x| config.model.eval(x))
}

/// Same as [`draw_baseline`] with a caller-supplied forward model.
pub fn draw_baseline_with(
    config: &StudyConfig,
    model: &(dyn Fn(&[f64]) -> f64 + Sync),
) -> Result<SampleSet> {
    config.validate()?;
    let n = config.sample_size;
    let mut draws = Vec::with_capacity(config.inputs.len());
    for (i, input) in config.inputs.iter().enumerate() {
        draws.push(
            input
                .spec
                .sample(&input.baseline, n, seeds::input_stream(config.seed, i))?,
        );
    }
    let outputs: Vec<Result<f64>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let x: Vec<f64> = draws.iter().map(|col| col[j]).collect();
            let y = model(&x);
            if y.is_finite() {
                Ok(y)
            } else {
                Err(Error::Evaluation {
                    draw: x,
                    detail: format!("model returned {y}"),
                })
            }
        })
        .collect();
    let outputs = outputs.into_iter().collect::<Result<Vec<f64>>>()?;
    Ok(SampleSet {
        inputs: config.inputs.clone(),
        draws,
        outputs,
        seed: config.seed,
    })
}

/// Likelihood ratios of input `i`'s draws under a perturbed parameter.
fn weights(sample: &SampleSet, i: usize, perturbed: &ParamPoint) -> Result<Vec<f64>> {
    let input = sample
        .inputs
        .get(i)
        .ok_or_else(|| Error::Validation(format!("input index {i} out of range")))?;
    let spec = &input.spec;
    let mut w = Vec::with_capacity(sample.len());
    let mut total = 0.0;
    for &x in &sample.draws[i] {
        let num = spec.pdf(perturbed, x)?;
        let den = spec.pdf(&input.baseline, x)?;
        if den <= 0.0 || !num.is_finite() {
            return Err(Error::Numerical(format!(
                "likelihood ratio {num}/{den} at draw {x}"
            )));
        }
        let l = num / den;
        total += l;
        w.push(l);
    }
    if total <= 0.0 {
        return Err(Error::DegenerateWeights(format!(
            "perturbed parameter {:?} gives zero weight to every draw of input {}",
            perturbed.coords(),
            input.name
        )));
    }
    Ok(w)
}

/// Indices of `values` sorted ascending.
fn argsort(values: &[f64]) -> Vec<u32> {
    let mut order: Vec<u32> = (0..values.len() as u32).collect();
    order.sort_by(|&a, &b| {
        values[a as usize]
            .partial_cmp(&values[b as usize])
            .expect("finite model outputs")
    });
    order
}

/// Weighted plug-in quantile inf{t : F(t) >= alpha} over the step CDF;
/// bitwise ties in the values are merged before thresholding, and the result
/// is always one of the values.
fn weighted_quantile_sorted(
    values: &[f64],
    order: &[u32],
    weight_of: &dyn Fn(usize) -> f64,
    alpha: f64,
) -> f64 {
    let total: f64 = order.iter().map(|&j| weight_of(j as usize)).sum();
    let threshold = alpha * total;
    let mut cum = 0.0;
    let mut k = 0;
    while k < order.len() {
        let y = values[order[k] as usize];
        // Merge the whole tie class before comparing.
        while k < order.len() && values[order[k] as usize] == y {
            cum += weight_of(order[k] as usize);
            k += 1;
        }
        if cum >= threshold {
            return y;
        }
    }
    values[order[order.len() - 1] as usize]
}

/// Self-normalized importance-sampling estimate of the perturbed output CDF
/// at `t`: sum of likelihood ratios of outputs <= t over the total.
pub fn is_cdf(sample: &SampleSet, i: usize, perturbed: &ParamPoint, t: f64) -> Result<f64> {
    let w = weights(sample, i, perturbed)?;
    let total: f64 = w.iter().sum();
    let hit: f64 = sample
        .outputs
        .iter()
        .zip(&w)
        .filter(|(y, _)| **y <= t)
        .map(|(_, l)| *l)
        .sum();
    Ok(hit / total)
}

/// Importance-sampling quantile of the perturbed output distribution; the
/// plug-in inverse of [`is_cdf`], always one of the sampled outputs.
pub fn is_quantile(
    sample: &SampleSet,
    i: usize,
    perturbed: &ParamPoint,
    alpha: f64,
) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Validation(format!(
            "quantile level {alpha} outside (0, 1)"
        )));
    }
    let w = weights(sample, i, perturbed)?;
    let order = argsort(&sample.outputs);
    Ok(weighted_quantile_sorted(
        &sample.outputs,
        &order,
        &|j| w[j],
        alpha,
    ))
}

/// Perturbed-law index of one perturbation of one input.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PliValue {
    pub input_index: usize,
    pub perturbed_param: ParamPoint,
    /// FR radius of the sphere this perturbation came from, when known.
    pub delta: Option<f64>,
    pub s_hat: f64,
    pub q_hat_perturbed: f64,
    pub q_hat_baseline: f64,
    /// Effective sample size (sum L)^2 / sum L^2 of the IS weights.
    pub ess: f64,
}

/// PLI estimate S = q_perturbed / q_baseline - 1 at one perturbed parameter.
pub fn pli(sample: &SampleSet, i: usize, perturbed: &ParamPoint, alpha: f64) -> Result<PliValue> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Validation(format!(
            "quantile level {alpha} outside (0, 1)"
        )));
    }
    let w = weights(sample, i, perturbed)?;
    let order = argsort(&sample.outputs);
    let q_pert = weighted_quantile_sorted(&sample.outputs, &order, &|j| w[j], alpha);
    let q_base = weighted_quantile_sorted(&sample.outputs, &order, &|_| 1.0, alpha);
    if q_base == 0.0 {
        return Err(Error::ZeroQoi);
    }
    let total: f64 = w.iter().sum();
    let total_sq: f64 = w.iter().map(|l| l * l).sum();
    Ok(PliValue {
        input_index: i,
        perturbed_param: *perturbed,
        delta: None,
        s_hat: q_pert / q_base - 1.0,
        q_hat_perturbed: q_pert,
        q_hat_baseline: q_base,
        ess: total * total / total_sq,
    })
}

/// Exhaustive PLI evaluation over the complete points of a sphere; returns
/// (minimizing, maximizing) values, ties broken by lowest point index.
/// Blown-up points are skipped (the caller reads the count off the sphere).
pub fn optimize_on_sphere(
    sample: &SampleSet,
    i: usize,
    sphere: &FrSphere,
    alpha: f64,
) -> Result<(PliValue, PliValue)> {
    let idx: Vec<usize> = sphere.complete_indices().collect();
    if idx.is_empty() {
        return Err(Error::SphereDegenerate(format!(
            "no complete points on the radius-{} sphere of input {i}",
            sphere.radius
        )));
    }
    let evals: Vec<Result<PliValue>> = idx
        .par_iter()
        .map(|&k| {
            let mut v = pli(sample, i, &sphere.points[k], alpha)?;
            v.delta = Some(sphere.radius);
            Ok(v)
        })
        .collect();
    let mut best_min: Option<PliValue> = None;
    let mut best_max: Option<PliValue> = None;
    for e in evals {
        let v = e?;
        if best_min.is_none_or(|b| v.s_hat < b.s_hat) {
            best_min = Some(v);
        }
        if best_max.is_none_or(|b| v.s_hat > b.s_hat) {
            best_max = Some(v);
        }
    }
    Ok((best_min.unwrap(), best_max.unwrap()))
}

/// Two-sided empirical confidence interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CiInterval {
    pub lo: f64,
    pub hi: f64,
}

/// Empirical percentile (plug-in order statistic) of a sorted slice.
fn percentile(sorted: &[f64], p: f64) -> f64 {
    let r = sorted.len();
    let k = ((p * r as f64).ceil() as usize).clamp(1, r);
    sorted[k - 1]
}

/// Percentile bootstrap CI for the PLI at a fixed (already optimized)
/// perturbed parameter: resample (draw, output) pairs with replacement and
/// recompute the index per replicate. Replicates with degenerate weights are
/// redrawn (at most 10 retries each).
pub fn bootstrap_ci(
    sample: &SampleSet,
    i: usize,
    argopt: &ParamPoint,
    alpha: f64,
    replicates: usize,
    ci_level: f64,
    seed: u64,
) -> Result<CiInterval> {
    if replicates == 0 {
        return Err(Error::Validation(
            "bootstrap needs at least one replicate".into(),
        ));
    }
    if !(ci_level > 0.0 && ci_level < 1.0) {
        return Err(Error::Validation(format!(
            "confidence level {ci_level} outside (0, 1)"
        )));
    }
    let w = weights(sample, i, argopt)?;
    let order = argsort(&sample.outputs);
    let n = sample.len();

    let replicate_values: Vec<Result<f64>> = (0..replicates)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha12Rng::seed_from_u64(seeds::derive(seed, r as u64));
            let mut counts = vec![0u32; n];
            for attempt in 0..=10 {
                counts.fill(0);
                for _ in 0..n {
                    counts[rng.random_range(0..n)] += 1;
                }
                let q_pert = weighted_quantile_sorted(
                    &sample.outputs,
                    &order,
                    &|j| counts[j] as f64 * w[j],
                    alpha,
                );
                let q_base =
                    weighted_quantile_sorted(&sample.outputs, &order, &|j| counts[j] as f64, alpha);
                let total: f64 = counts.iter().zip(&w).map(|(c, l)| *c as f64 * l).sum();
                if total > 0.0 && q_base != 0.0 {
                    return Ok(q_pert / q_base - 1.0);
                }
                if attempt == 10 {
                    break;
                }
            }
            Err(Error::DegenerateWeights(format!(
                "bootstrap replicate {r} of input {i} stayed degenerate after 10 retries"
            )))
        })
        .collect();
    let mut values = replicate_values.into_iter().collect::<Result<Vec<f64>>>()?;
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite replicate values"));
    let tail = (1.0 - ci_level) / 2.0;
    Ok(CiInterval {
        lo: percentile(&values, tail),
        hi: percentile(&values, 1.0 - tail),
    })
}

/// One (input, delta) cell of a study result.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StudyCell {
    pub input: String,
    pub input_index: usize,
    pub delta: f64,
    pub s_min: f64,
    pub s_max: f64,
    pub argmin: ParamPoint,
    pub argmax: ParamPoint,
    pub ci_min: CiInterval,
    pub ci_max: CiInterval,
    pub blowups: usize,
    pub ess_min: f64,
    pub ess_max: f64,
}

/// A failure that stopped one input's analysis without stopping the study.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InputError {
    pub input: String,
    pub input_index: usize,
    pub message: String,
}

/// Full study result: one cell per (input, delta), plus per-input failures.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RaStudyResult {
    pub seed: u64,
    pub alpha: f64,
    pub sample_size: usize,
    pub cells: Vec<StudyCell>,
    pub input_errors: Vec<InputError>,
}

/// Runs the full study: baseline sample, concentric FR spheres per input,
/// exhaustive PLI optimization per sphere, and bootstrap CIs at both
/// extremes. Per-input failures are recorded and the study continues.
pub fn run_study(config: &StudyConfig) -> Result<RaStudyResult> {
    run_study_with(config, &|x| config.model.eval(x))
}

/// [`run_study`] with a caller-supplied forward model.
pub fn run_study_with(
    config: &StudyConfig,
    model: &(dyn Fn(&[f64]) -> f64 + Sync),
) -> Result<RaStudyResult> {
    config.validate()?;
    let sample = draw_baseline_with(config, model)?;
    let alpha = config.qoi.alpha();
    let mut cells = Vec::new();
    let mut input_errors = Vec::new();

    for (i, input) in config.inputs.iter().enumerate() {
        let run_input = || -> Result<Vec<StudyCell>> {
            let spheres = concentric_spheres(
                &input.spec,
                &input.baseline,
                &config.delta_grid,
                config.sphere_points,
                config.geodesic_steps,
                config.integrator,
            )?;
            let mut out = Vec::with_capacity(spheres.len());
            for (di, sphere) in spheres.iter().enumerate() {
                let (vmin, vmax) = optimize_on_sphere(&sample, i, sphere, alpha)?;
                let ci_min = bootstrap_ci(
                    &sample,
                    i,
                    &vmin.perturbed_param,
                    alpha,
                    config.bootstrap_replicates,
                    config.ci_level,
                    seeds::derive(config.seed, seeds::bootstrap_salt(i, di, false)),
                )?;
                let ci_max = bootstrap_ci(
                    &sample,
                    i,
                    &vmax.perturbed_param,
                    alpha,
                    config.bootstrap_replicates,
                    config.ci_level,
                    seeds::derive(config.seed, seeds::bootstrap_salt(i, di, true)),
                )?;
                out.push(StudyCell {
                    input: input.name.clone(),
                    input_index: i,
                    delta: sphere.radius,
                    s_min: vmin.s_hat,
                    s_max: vmax.s_hat,
                    argmin: vmin.perturbed_param,
                    argmax: vmax.perturbed_param,
                    ci_min,
                    ci_max,
                    blowups: sphere.blowup_count(),
                    ess_min: vmin.ess,
                    ess_max: vmax.ess,
                });
            }
            Ok(out)
        };
        match run_input() {
            Ok(mut c) => cells.append(&mut c),
            Err(e) => input_errors.push(InputError {
                input: input.name.clone(),
                input_index: i,
                message: e.to_string(),
            }),
        }
    }
    Ok(RaStudyResult {
        seed: config.seed,
        alpha,
        sample_size: config.sample_size,
        cells,
        input_errors,
    })
}
