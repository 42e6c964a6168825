//! Parametric distribution families and their information geometry.
//!
//! A [`FamilySpec`] names a family (plain or interval-truncated) and carries
//! its truncation/support interval. All operations take an explicit
//! [`ParamPoint`] and are pure: samplers are inverse-CDF driven by a seeded
//! generator, so identical (spec, theta, seed) inputs reproduce identical
//! draws.

mod gamma;
mod gumbel;
mod loc_scale;
mod normal;
mod triangular;

pub use loc_scale::{loc_scale_constants, BaseDensity, LocScaleConstants, QuadConfig};
pub use normal::{truncated_moments, TruncatedMoments};

pub use gumbel::truncated_gumbel_mean;

use crate::error::{Error, Result};
use crate::geometry::ChristoffelSymbols;
use crate::mat::SymMat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

/// Lower guard for scale-like parameters (sigma, s, lambda, Gamma shape/rate):
/// below this the Fisher metric entries overflow.
pub const SCALE_FLOOR: f64 = 1e-8;

/// Relative margin keeping the triangular mode away from the support ends,
/// where the Fisher information is undefined.
pub const TRIANGULAR_MARGIN: f64 = 1e-12;

/// Truncation intervals whose probability mass falls below this are rejected.
pub const MASS_FLOOR: f64 = 1e-300;

const U_LO: f64 = 1e-16;
const U_HI: f64 = 1.0 - 1.1e-16;

/// Base density of a named location-scale family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocScaleBase {
    StdNormal,
    StdGumbel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Normal,
    TruncatedNormal,
    Gumbel,
    TruncatedGumbel,
    LogNormal,
    TruncatedLogNormal,
    Gamma,
    Exponential,
    Triangular,
    LocationScale(LocScaleBase),
}

impl FamilyKind {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::Normal => "normal",
            FamilyKind::TruncatedNormal => "truncated_normal",
            FamilyKind::Gumbel => "gumbel",
            FamilyKind::TruncatedGumbel => "truncated_gumbel",
            FamilyKind::LogNormal => "log_normal",
            FamilyKind::TruncatedLogNormal => "truncated_log_normal",
            FamilyKind::Gamma => "gamma",
            FamilyKind::Exponential => "exponential",
            FamilyKind::Triangular => "triangular",
            FamilyKind::LocationScale(_) => "location_scale",
        }
    }
}

/// Closed truncation or support interval [lo, hi].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    fn new(lo: f64, hi: f64) -> Result<Interval> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidTruncation { a: lo, b: hi });
        }
        Ok(Interval { lo, hi })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }
}

/// A point in a family's open parameter domain (1 or 2 coordinates).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamPoint {
    coords: [f64; 2],
    dim: u8,
}

impl ParamPoint {
    pub fn one(x: f64) -> ParamPoint {
        ParamPoint {
            coords: [x, 0.0],
            dim: 1,
        }
    }

    pub fn two(x: f64, y: f64) -> ParamPoint {
        ParamPoint {
            coords: [x, y],
            dim: 2,
        }
    }

    pub fn from_slice(coords: &[f64]) -> Result<ParamPoint> {
        match coords {
            [x] => Ok(ParamPoint::one(*x)),
            [x, y] => Ok(ParamPoint::two(*x, *y)),
            _ => Err(Error::Validation(format!(
                "parameter point must have 1 or 2 coordinates, got {}",
                coords.len()
            ))),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords[..self.dim()]
    }

    pub fn coord(&self, i: usize) -> f64 {
        debug_assert!(i < self.dim());
        self.coords[i]
    }
}

impl Serialize for ParamPoint {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coords().iter())
    }
}

impl<'de> Deserialize<'de> for ParamPoint {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let coords = Vec::<f64>::deserialize(deserializer)?;
        ParamPoint::from_slice(&coords).map_err(serde::de::Error::custom)
    }
}

/// How a Fisher information matrix was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricSource {
    ClosedForm,
    Quadrature,
    MonteCarlo,
}

/// Fisher information matrix at a parameter point.
#[derive(Clone, Copy, Debug)]
pub struct FisherMetric {
    pub entries: SymMat,
    pub at_point: ParamPoint,
    pub source: MetricSource,
}

impl FisherMetric {
    /// FR norm of a tangent vector at this point.
    pub fn norm(&self, v: &[f64]) -> f64 {
        self.entries.quadratic_form(v).sqrt()
    }
}

/// Supported pushforward maps for [`pushforward_spec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PushforwardMap {
    /// x -> e^x
    Exp,
}

/// A parametric family together with its truncation (or support) interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FamilySpec {
    kind: FamilyKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    bounds: Option<Interval>,
}

#[derive(Deserialize)]
struct RawFamilySpec {
    kind: FamilyKind,
    #[serde(default)]
    bounds: Option<Interval>,
}

impl TryFrom<RawFamilySpec> for FamilySpec {
    type Error = Error;

    fn try_from(raw: RawFamilySpec) -> Result<FamilySpec> {
        match (raw.kind, raw.bounds) {
            (FamilyKind::Normal, None) => Ok(FamilySpec::normal()),
            (FamilyKind::Gumbel, None) => Ok(FamilySpec::gumbel()),
            (FamilyKind::LogNormal, None) => Ok(FamilySpec::log_normal()),
            (FamilyKind::Gamma, None) => Ok(FamilySpec::gamma()),
            (FamilyKind::Exponential, None) => Ok(FamilySpec::exponential()),
            (FamilyKind::LocationScale(base), None) => Ok(FamilySpec::location_scale(base)),
            (FamilyKind::TruncatedNormal, Some(b)) => FamilySpec::truncated_normal(b.lo, b.hi),
            (FamilyKind::TruncatedGumbel, Some(b)) => FamilySpec::truncated_gumbel(b.lo, b.hi),
            (FamilyKind::TruncatedLogNormal, Some(b)) => {
                FamilySpec::truncated_log_normal(b.lo, b.hi)
            }
            (FamilyKind::Triangular, Some(b)) => FamilySpec::triangular(b.lo, b.hi),
            (kind, Some(_)) => Err(Error::Validation(format!(
                "family kind {} does not take bounds",
                kind.name()
            ))),
            (kind, None) => Err(Error::Validation(format!(
                "family kind {} requires bounds",
                kind.name()
            ))),
        }
    }
}

impl<'de> Deserialize<'de> for FamilySpec {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let raw = RawFamilySpec::deserialize(deserializer)?;
        FamilySpec::try_from(raw).map_err(serde::de::Error::custom)
    }
}

impl FamilySpec {
    pub fn normal() -> FamilySpec {
        FamilySpec {
            kind: FamilyKind::Normal,
            bounds: None,
        }
    }

    pub fn truncated_normal(a: f64, b: f64) -> Result<FamilySpec> {
        Ok(FamilySpec {
            kind: FamilyKind::TruncatedNormal,
            bounds: Some(Interval::new(a, b)?),
        })
    }

    pub fn gumbel() -> FamilySpec {
        FamilySpec {
            kind: FamilyKind::Gumbel,
            bounds: None,
        }
    }

    pub fn truncated_gumbel(a: f64, b: f64) -> Result<FamilySpec> {
        Ok(FamilySpec {
            kind: FamilyKind::TruncatedGumbel,
            bounds: Some(Interval::new(a, b)?),
        })
    }

    pub fn log_normal() -> FamilySpec {
        FamilySpec {
            kind: FamilyKind::LogNormal,
            bounds: None,
        }
    }

    /// Truncated log-normal on [a, b]; requires 0 < a < b since the support
    /// of the exp-pushforward is the positive half line.
    pub fn truncated_log_normal(a: f64, b: f64) -> Result<FamilySpec> {
        let iv = Interval::new(a, b)?;
        if iv.lo <= 0.0 {
            return Err(Error::InvalidTruncation { a, b });
        }
        Ok(FamilySpec {
            kind: FamilyKind::TruncatedLogNormal,
            bounds: Some(iv),
        })
    }

    pub fn gamma() -> FamilySpec {
        FamilySpec {
            kind: FamilyKind::Gamma,
            bounds: None,
        }
    }

    pub fn exponential() -> FamilySpec {
        FamilySpec {
            kind: FamilyKind::Exponential,
            bounds: None,
        }
    }

    pub fn triangular(a: f64, b: f64) -> Result<FamilySpec> {
        Ok(FamilySpec {
            kind: FamilyKind::Triangular,
            bounds: Some(Interval::new(a, b)?),
        })
    }

    pub fn location_scale(base: LocScaleBase) -> FamilySpec {
        FamilySpec {
            kind: FamilyKind::LocationScale(base),
            bounds: None,
        }
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn bounds(&self) -> Option<Interval> {
        self.bounds
    }

    pub fn param_dim(&self) -> usize {
        match self.kind {
            FamilyKind::Exponential | FamilyKind::Triangular => 1,
            _ => 2,
        }
    }

    /// Coordinate names in the family's conventional parameterization.
    pub fn param_names(&self) -> &'static [&'static str] {
        match self.kind {
            FamilyKind::Normal
            | FamilyKind::TruncatedNormal
            | FamilyKind::LogNormal
            | FamilyKind::TruncatedLogNormal => &["mu", "sigma"],
            FamilyKind::Gumbel | FamilyKind::TruncatedGumbel | FamilyKind::LocationScale(_) => {
                &["m", "s"]
            }
            FamilyKind::Gamma => &["alpha", "beta"],
            FamilyKind::Exponential => &["lambda"],
            FamilyKind::Triangular => &["m"],
        }
    }

    fn iv(&self) -> Interval {
        self.bounds
            .expect("bounded kind carries bounds by construction")
    }

    /// Validated parameter-point constructor.
    pub fn param(&self, coords: &[f64]) -> Result<ParamPoint> {
        let p = ParamPoint::from_slice(coords)?;
        self.validate_point(&p)?;
        Ok(p)
    }

    /// Checks that `theta` lies strictly inside the open parameter domain.
    pub fn validate_point(&self, theta: &ParamPoint) -> Result<()> {
        if theta.dim() != self.param_dim() {
            return Err(Error::Domain(format!(
                "{} expects {} parameter(s), got {}",
                self.kind.name(),
                self.param_dim(),
                theta.dim()
            )));
        }
        if !theta.coords().iter().all(|c| c.is_finite()) {
            return Err(Error::Domain(format!(
                "non-finite parameter {:?} for {}",
                theta.coords(),
                self.kind.name()
            )));
        }
        match self.kind {
            FamilyKind::Normal
            | FamilyKind::TruncatedNormal
            | FamilyKind::LogNormal
            | FamilyKind::TruncatedLogNormal
            | FamilyKind::Gumbel
            | FamilyKind::TruncatedGumbel
            | FamilyKind::LocationScale(_) => {
                if theta.coord(1) < SCALE_FLOOR {
                    return Err(Error::Domain(format!(
                        "scale parameter {} below floor {SCALE_FLOOR}",
                        theta.coord(1)
                    )));
                }
            }
            FamilyKind::Gamma => {
                if theta.coord(0) < SCALE_FLOOR || theta.coord(1) < SCALE_FLOOR {
                    return Err(Error::Domain(format!(
                        "gamma parameters {:?} below floor {SCALE_FLOOR}",
                        theta.coords()
                    )));
                }
            }
            FamilyKind::Exponential => {
                if theta.coord(0) < SCALE_FLOOR {
                    return Err(Error::Domain(format!(
                        "rate {} below floor {SCALE_FLOOR}",
                        theta.coord(0)
                    )));
                }
            }
            FamilyKind::Triangular => {
                let iv = self.iv();
                let margin = TRIANGULAR_MARGIN * iv.width();
                let m = theta.coord(0);
                if m - iv.lo < margin || iv.hi - m < margin {
                    return Err(Error::Domain(format!(
                        "triangular mode {m} outside open support ({}, {})",
                        iv.lo, iv.hi
                    )));
                }
            }
        }
        Ok(())
    }

    /// Density at `x`.
    pub fn pdf(&self, theta: &ParamPoint, x: f64) -> Result<f64> {
        self.validate_point(theta)?;
        match self.kind {
            FamilyKind::Normal => Ok(normal::pdf(theta, x)),
            FamilyKind::TruncatedNormal => normal::truncated_pdf(theta, self.iv(), x),
            FamilyKind::Gumbel => Ok(gumbel::pdf(theta, x)),
            FamilyKind::TruncatedGumbel => gumbel::truncated_pdf(theta, self.iv(), x),
            FamilyKind::LogNormal => Ok(normal::log_normal_pdf(theta, x)),
            FamilyKind::TruncatedLogNormal => normal::truncated_log_normal_pdf(theta, self.iv(), x),
            FamilyKind::Gamma => Ok(gamma::pdf(theta, x)),
            FamilyKind::Exponential => Ok(gamma::exponential_pdf(theta, x)),
            FamilyKind::Triangular => Ok(triangular::pdf(theta, self.iv(), x)),
            FamilyKind::LocationScale(base) => Ok(loc_scale::pdf(base, theta, x)),
        }
    }

    /// Cumulative distribution function at `x`.
    pub fn cdf(&self, theta: &ParamPoint, x: f64) -> Result<f64> {
        self.validate_point(theta)?;
        match self.kind {
            FamilyKind::Normal => Ok(normal::cdf(theta, x)),
            FamilyKind::TruncatedNormal => normal::truncated_cdf(theta, self.iv(), x),
            FamilyKind::Gumbel => Ok(gumbel::cdf(theta, x)),
            FamilyKind::TruncatedGumbel => gumbel::truncated_cdf(theta, self.iv(), x),
            FamilyKind::LogNormal => Ok(normal::log_normal_cdf(theta, x)),
            FamilyKind::TruncatedLogNormal => normal::truncated_log_normal_cdf(theta, self.iv(), x),
            FamilyKind::Gamma => gamma::cdf(theta, x),
            FamilyKind::Exponential => Ok(gamma::exponential_cdf(theta, x)),
            FamilyKind::Triangular => Ok(triangular::cdf(theta, self.iv(), x)),
            FamilyKind::LocationScale(base) => Ok(loc_scale::cdf(base, theta, x)),
        }
    }

    /// Quantile function (inverse CDF) at probability `u` in [0, 1].
    pub fn quantile(&self, theta: &ParamPoint, u: f64) -> Result<f64> {
        self.validate_point(theta)?;
        if !(0.0..=1.0).contains(&u) {
            return Err(Error::Validation(format!(
                "quantile level {u} outside [0, 1]"
            )));
        }
        let u = u.clamp(U_LO, U_HI);
        match self.kind {
            FamilyKind::Normal => Ok(normal::quantile(theta, u)),
            FamilyKind::TruncatedNormal => normal::truncated_quantile(theta, self.iv(), u),
            FamilyKind::Gumbel => Ok(gumbel::quantile(theta, u)),
            FamilyKind::TruncatedGumbel => gumbel::truncated_quantile(theta, self.iv(), u),
            FamilyKind::LogNormal => Ok(normal::quantile(theta, u).exp()),
            FamilyKind::TruncatedLogNormal => {
                normal::truncated_log_normal_quantile(theta, self.iv(), u)
            }
            FamilyKind::Gamma => gamma::quantile(theta, u),
            FamilyKind::Exponential => Ok(gamma::exponential_quantile(theta, u)),
            FamilyKind::Triangular => Ok(triangular::quantile(theta, self.iv(), u)),
            FamilyKind::LocationScale(base) => Ok(loc_scale::quantile(base, theta, u)),
        }
    }

    /// `n` i.i.d. inverse-CDF draws, deterministic in `seed`. Draws from
    /// truncated kinds always land inside the truncation interval.
    pub fn sample(&self, theta: &ParamPoint, n: usize, seed: u64) -> Result<Vec<f64>> {
        self.validate_point(theta)?;
        if n == 0 {
            return Err(Error::Validation("sample size must be at least 1".into()));
        }
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let u: f64 = rng.random::<f64>().clamp(U_LO, U_HI);
            out.push(self.quantile(theta, u)?);
        }
        Ok(out)
    }

    /// Score function: gradient of the log-density in theta, evaluated at a
    /// support point `x`.
    pub fn score(&self, theta: &ParamPoint, x: f64) -> Result<[f64; 2]> {
        self.validate_point(theta)?;
        match self.kind {
            FamilyKind::Normal => Ok(normal::score(theta, x)),
            FamilyKind::TruncatedNormal => normal::truncated_score(theta, self.iv(), x),
            FamilyKind::Gumbel => Ok(gumbel::score(theta, x)),
            FamilyKind::TruncatedGumbel => gumbel::truncated_score(theta, self.iv(), x),
            FamilyKind::LogNormal => Ok(normal::score(theta, x.ln())),
            FamilyKind::TruncatedLogNormal => {
                let iv = self.iv();
                normal::truncated_score(theta, Interval::new(iv.lo.ln(), iv.hi.ln())?, x.ln())
            }
            FamilyKind::Gamma => Ok(gamma::score(theta, x)),
            FamilyKind::Exponential => Ok(gamma::exponential_score(theta, x)),
            FamilyKind::Triangular => Ok(triangular::score(theta, self.iv(), x)),
            FamilyKind::LocationScale(base) => Ok(loc_scale::score(base, theta, x)),
        }
    }

    /// Fisher information matrix. Closed form everywhere except the Gumbel
    /// kinds and generic location-scale families, which use quadrature.
    pub fn fim(&self, theta: &ParamPoint) -> Result<FisherMetric> {
        self.validate_point(theta)?;
        let (entries, source) = match self.kind {
            FamilyKind::Normal | FamilyKind::LogNormal => {
                (normal::fim(theta), MetricSource::ClosedForm)
            }
            FamilyKind::TruncatedNormal => (
                normal::truncated_fim(theta, self.iv())?,
                MetricSource::ClosedForm,
            ),
            // The exp pushforward preserves the Fisher information, so the
            // truncated log-normal on [a, b] shares the truncated-normal
            // code path on [ln a, ln b].
            FamilyKind::TruncatedLogNormal => {
                let iv = self.iv();
                (
                    normal::truncated_fim(theta, Interval::new(iv.lo.ln(), iv.hi.ln())?)?,
                    MetricSource::ClosedForm,
                )
            }
            FamilyKind::Gumbel => (gumbel::fim(theta), MetricSource::Quadrature),
            FamilyKind::TruncatedGumbel => (
                gumbel::truncated_fim(theta, self.iv())?,
                MetricSource::Quadrature,
            ),
            FamilyKind::Gamma => (gamma::fim(theta), MetricSource::ClosedForm),
            FamilyKind::Exponential => (gamma::exponential_fim(theta), MetricSource::ClosedForm),
            FamilyKind::Triangular => (triangular::fim(theta, self.iv()), MetricSource::ClosedForm),
            FamilyKind::LocationScale(base) => {
                (loc_scale::fim(base, theta)?, MetricSource::Quadrature)
            }
        };
        if !entries.is_finite() {
            return Err(Error::Numerical(format!(
                "non-finite Fisher information for {} at {:?}",
                self.kind.name(),
                theta.coords()
            )));
        }
        Ok(FisherMetric {
            entries,
            at_point: *theta,
            source,
        })
    }

    /// Monte-Carlo estimate of the Fisher information (sample average of
    /// score outer products); the sampling-based oracle for [`Self::fim`].
    pub fn fim_monte_carlo(&self, theta: &ParamPoint, n: usize, seed: u64) -> Result<FisherMetric> {
        Ok(self.fim_monte_carlo_with_stderr(theta, n, seed)?.0)
    }

    /// Monte-Carlo FIM together with the entrywise standard error of the
    /// estimate.
    pub fn fim_monte_carlo_with_stderr(
        &self,
        theta: &ParamPoint,
        n: usize,
        seed: u64,
    ) -> Result<(FisherMetric, SymMat)> {
        if n < 1000 {
            return Err(Error::Validation(format!(
                "Monte-Carlo FIM needs at least 1000 samples, got {n}"
            )));
        }
        let draws = self.sample(theta, n, seed)?;
        let dim = self.param_dim();
        let mut sum = [0.0f64; 3];
        let mut sumsq = [0.0f64; 3];
        for &x in &draws {
            let s = self.score(theta, x)?;
            let prods = [s[0] * s[0], s[0] * s[1], s[1] * s[1]];
            for k in 0..3 {
                sum[k] += prods[k];
                sumsq[k] += prods[k] * prods[k];
            }
        }
        let nf = n as f64;
        let mean = [sum[0] / nf, sum[1] / nf, sum[2] / nf];
        let mut se = [0.0f64; 3];
        for k in 0..3 {
            let var = (sumsq[k] / nf - mean[k] * mean[k]).max(0.0);
            se[k] = (var / nf).sqrt();
        }
        let (entries, stderr) = if dim == 1 {
            (SymMat::dim1(mean[0]), SymMat::dim1(se[0]))
        } else {
            (
                SymMat::dim2(mean[0], mean[1], mean[2]),
                SymMat::dim2(se[0], se[1], se[2]),
            )
        };
        Ok((
            FisherMetric {
                entries,
                at_point: *theta,
                source: MetricSource::MonteCarlo,
            },
            stderr,
        ))
    }

    /// Closed-form Christoffel symbols (second kind). Available for the
    /// normal, log-normal and truncated normal/log-normal kinds; other
    /// families fall back to `geometry::christoffel_numeric`.
    pub fn christoffel_closed(&self, theta: &ParamPoint) -> Result<ChristoffelSymbols> {
        self.validate_point(theta)?;
        match self.kind {
            FamilyKind::Normal | FamilyKind::LogNormal => Ok(normal::christoffel(theta)),
            FamilyKind::TruncatedNormal => normal::truncated_christoffel(theta, self.iv()),
            FamilyKind::TruncatedLogNormal => {
                let iv = self.iv();
                normal::truncated_christoffel(theta, Interval::new(iv.lo.ln(), iv.hi.ln())?)
            }
            _ => Err(Error::NotAvailable(format!(
                "closed-form Christoffel symbols for {}",
                self.kind.name()
            ))),
        }
    }

    /// Whether [`Self::christoffel_closed`] succeeds for this kind.
    pub fn has_closed_christoffel(&self) -> bool {
        matches!(
            self.kind,
            FamilyKind::Normal
                | FamilyKind::LogNormal
                | FamilyKind::TruncatedNormal
                | FamilyKind::TruncatedLogNormal
        )
    }

    /// Exact Fisher-Rao distance for the 1-parameter families.
    pub fn fr_distance_closed(&self, theta0: &ParamPoint, theta1: &ParamPoint) -> Result<f64> {
        self.validate_point(theta0)?;
        self.validate_point(theta1)?;
        match self.kind {
            // log(l1/l0) computed as a log difference so the distance is
            // bitwise symmetric in its arguments.
            FamilyKind::Exponential => Ok((theta1.coord(0).ln() - theta0.coord(0).ln()).abs()),
            FamilyKind::Triangular => Ok(triangular::fr_distance(
                self.iv(),
                theta0.coord(0),
                theta1.coord(0),
            )),
            _ => Err(Error::NotAvailable(format!(
                "closed-form Fisher-Rao distance for {}",
                self.kind.name()
            ))),
        }
    }

    /// Closed-form two-point Fisher-Rao sphere of a 1-parameter family,
    /// returned as `[theta_minus, theta_plus]`.
    pub fn closed_sphere_1d(&self, center: &ParamPoint, delta: f64) -> Result<[ParamPoint; 2]> {
        self.validate_point(center)?;
        if delta <= 0.0 || !delta.is_finite() {
            return Err(Error::Validation(format!(
                "sphere radius must be positive, got {delta}"
            )));
        }
        match self.kind {
            FamilyKind::Exponential => {
                let l0 = center.coord(0);
                Ok([
                    ParamPoint::one(l0 * (-delta).exp()),
                    ParamPoint::one(l0 * delta.exp()),
                ])
            }
            FamilyKind::Triangular => triangular::closed_sphere(self.iv(), center.coord(0), delta),
            _ => Err(Error::NotAvailable(format!(
                "closed-form sphere for {}",
                self.kind.name()
            ))),
        }
    }

    /// Whether [`Self::closed_sphere_1d`] is available for this kind.
    pub fn has_closed_sphere(&self) -> bool {
        matches!(self.kind, FamilyKind::Exponential | FamilyKind::Triangular)
    }

    /// Mean of the distribution, where implemented in closed or quadrature
    /// form (used by the flood study diagnostics).
    pub fn mean(&self, theta: &ParamPoint) -> Result<f64> {
        self.validate_point(theta)?;
        match self.kind {
            FamilyKind::Normal => Ok(theta.coord(0)),
            FamilyKind::Gumbel => {
                Ok(theta.coord(0) + theta.coord(1) * crate::special::EULER_MASCHERONI)
            }
            FamilyKind::TruncatedGumbel => truncated_gumbel_mean(theta, self.iv().lo, self.iv().hi),
            FamilyKind::TruncatedNormal => {
                let m = truncated_moments(theta, self.iv().lo, self.iv().hi)?;
                Ok(m.mu_b)
            }
            FamilyKind::Exponential => Ok(1.0 / theta.coord(0)),
            FamilyKind::Triangular => {
                let iv = self.iv();
                Ok((iv.lo + iv.hi + theta.coord(0)) / 3.0)
            }
            _ => Err(Error::NotAvailable(format!(
                "mean for {}",
                self.kind.name()
            ))),
        }
    }
}

/// Image of a family under a bijective pushforward map. The exp map sends the
/// (truncated) normal family to the (truncated) log-normal family; truncation
/// bounds [a, b] on the normal side map to [e^a, e^b] on the log-normal side.
pub fn pushforward_spec(base: &FamilySpec, map: PushforwardMap) -> Result<FamilySpec> {
    match (map, base.kind) {
        (PushforwardMap::Exp, FamilyKind::Normal) => Ok(FamilySpec::log_normal()),
        (PushforwardMap::Exp, FamilyKind::TruncatedNormal) => {
            let iv = base.iv();
            FamilySpec::truncated_log_normal(iv.lo.exp(), iv.hi.exp())
        }
        _ => Err(Error::NotAvailable(format!(
            "exp pushforward of {}",
            base.kind.name()
        ))),
    }
}
