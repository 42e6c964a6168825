//! Gamma and exponential internals. Both have fully closed-form information
//! geometry; the Gamma quantile (for inverse-CDF sampling) comes from statrs.

use super::ParamPoint;
use crate::error::{Error, Result};
use crate::mat::SymMat;
use crate::special::trigamma;
use statrs::distribution::ContinuousCDF;
use statrs::function::gamma::{digamma, ln_gamma};

fn dist(theta: &ParamPoint) -> Result<statrs::distribution::Gamma> {
    statrs::distribution::Gamma::new(theta.coord(0), theta.coord(1))
        .map_err(|e| Error::Numerical(format!("gamma distribution: {e}")))
}

pub fn pdf(theta: &ParamPoint, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let (alpha, beta) = (theta.coord(0), theta.coord(1));
    (alpha * beta.ln() + (alpha - 1.0) * x.ln() - beta * x - ln_gamma(alpha)).exp()
}

pub fn cdf(theta: &ParamPoint, x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Ok(0.0);
    }
    Ok(dist(theta)?.cdf(x))
}

pub fn quantile(theta: &ParamPoint, u: f64) -> Result<f64> {
    Ok(dist(theta)?.inverse_cdf(u).max(0.0))
}

pub fn score(theta: &ParamPoint, x: f64) -> [f64; 2] {
    let (alpha, beta) = (theta.coord(0), theta.coord(1));
    [beta.ln() + x.ln() - digamma(alpha), alpha / beta - x]
}

pub fn fim(theta: &ParamPoint) -> SymMat {
    let (alpha, beta) = (theta.coord(0), theta.coord(1));
    SymMat::dim2(trigamma(alpha), -1.0 / beta, alpha / (beta * beta))
}

pub fn exponential_pdf(theta: &ParamPoint, x: f64) -> f64 {
    if x < 0.0 {
        return 0.0;
    }
    let lambda = theta.coord(0);
    lambda * (-lambda * x).exp()
}

pub fn exponential_cdf(theta: &ParamPoint, x: f64) -> f64 {
    if x < 0.0 {
        return 0.0;
    }
    -(-theta.coord(0) * x).exp_m1()
}

pub fn exponential_quantile(theta: &ParamPoint, u: f64) -> f64 {
    -(-u).ln_1p() / theta.coord(0)
}

pub fn exponential_score(theta: &ParamPoint, x: f64) -> [f64; 2] {
    [1.0 / theta.coord(0) - x, 0.0]
}

pub fn exponential_fim(theta: &ParamPoint) -> SymMat {
    let lambda = theta.coord(0);
    SymMat::dim1(1.0 / (lambda * lambda))
}
