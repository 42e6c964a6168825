//! Normal, truncated normal and (truncated) log-normal internals.
//!
//! The truncated-normal Fisher information and Christoffel symbols are
//! closed forms in the conditional mean/variance of the truncated density and
//! their partial derivatives; everything reduces to boundary evaluations of
//! the truncated density and its theta-derivatives.

use super::{Interval, ParamPoint, MASS_FLOOR};
use crate::error::{Error, Result};
use crate::geometry::{ChristoffelSource, ChristoffelSymbols};
use crate::mat::SymMat;
use crate::special::{
    std_normal_cdf, std_normal_interval_mass, std_normal_pdf, std_normal_quantile,
};

pub fn pdf(theta: &ParamPoint, x: f64) -> f64 {
    let (mu, sigma) = (theta.coord(0), theta.coord(1));
    std_normal_pdf((x - mu) / sigma) / sigma
}

pub fn cdf(theta: &ParamPoint, x: f64) -> f64 {
    let (mu, sigma) = (theta.coord(0), theta.coord(1));
    std_normal_cdf((x - mu) / sigma)
}

pub fn quantile(theta: &ParamPoint, u: f64) -> f64 {
    let (mu, sigma) = (theta.coord(0), theta.coord(1));
    mu + sigma * std_normal_quantile(u)
}

pub fn score(theta: &ParamPoint, x: f64) -> [f64; 2] {
    let (mu, sigma) = (theta.coord(0), theta.coord(1));
    let z = (x - mu) / sigma;
    [z / sigma, (z * z - 1.0) / sigma]
}

pub fn fim(theta: &ParamPoint) -> SymMat {
    let sigma = theta.coord(1);
    let inv2 = 1.0 / (sigma * sigma);
    SymMat::dim2(inv2, 0.0, 2.0 * inv2)
}

/// Non-truncated normal symbols: the only nonzero entries are
/// G^1_{12} = G^1_{21} = G^2_{22} = -1/sigma and G^2_{11} = 1/(2 sigma).
pub fn christoffel(theta: &ParamPoint) -> ChristoffelSymbols {
    let sigma = theta.coord(1);
    let mut sym = ChristoffelSymbols::zeros(2, *theta, ChristoffelSource::ClosedForm);
    sym.set(0, 0, 1, -1.0 / sigma);
    sym.set(0, 1, 0, -1.0 / sigma);
    sym.set(1, 1, 1, -1.0 / sigma);
    sym.set(1, 0, 0, 0.5 / sigma);
    sym
}

fn mass(theta: &ParamPoint, iv: Interval) -> Result<f64> {
    let (mu, sigma) = (theta.coord(0), theta.coord(1));
    let z = std_normal_interval_mass((iv.lo - mu) / sigma, (iv.hi - mu) / sigma);
    if z < MASS_FLOOR {
        return Err(Error::DegenerateTruncation(format!(
            "normal({mu}, {sigma}) carries mass {z} on [{}, {}]",
            iv.lo, iv.hi
        )));
    }
    Ok(z)
}

pub fn truncated_pdf(theta: &ParamPoint, iv: Interval, x: f64) -> Result<f64> {
    if !iv.contains(x) {
        // Still surface a degenerate interval even for out-of-support x.
        mass(theta, iv)?;
        return Ok(0.0);
    }
    Ok(pdf(theta, x) / mass(theta, iv)?)
}

pub fn truncated_cdf(theta: &ParamPoint, iv: Interval, x: f64) -> Result<f64> {
    if x < iv.lo {
        return Ok(0.0);
    }
    if x >= iv.hi {
        return Ok(1.0);
    }
    let z = mass(theta, iv)?;
    Ok((cdf(theta, x) - cdf(theta, iv.lo)).max(0.0) / z)
}

pub fn truncated_quantile(theta: &ParamPoint, iv: Interval, u: f64) -> Result<f64> {
    let z = mass(theta, iv)?;
    let p = cdf(theta, iv.lo) + u * z;
    Ok(quantile(theta, p).clamp(iv.lo, iv.hi))
}

/// Truncated-normal score: the base score plus the derivative of the log
/// normalizing constant, which is a boundary bracket of the truncated density.
pub fn truncated_score(theta: &ParamPoint, iv: Interval, x: f64) -> Result<[f64; 2]> {
    let b = Boundary::new(theta, iv)?;
    let base = score(theta, x);
    Ok([base[0] + b.br_q, base[1] + b.br_xq / theta.coord(1)])
}

pub fn log_normal_pdf(theta: &ParamPoint, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    pdf(theta, x.ln()) / x
}

pub fn log_normal_cdf(theta: &ParamPoint, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    cdf(theta, x.ln())
}

pub fn truncated_log_normal_pdf(theta: &ParamPoint, iv: Interval, x: f64) -> Result<f64> {
    let log_iv = Interval {
        lo: iv.lo.ln(),
        hi: iv.hi.ln(),
    };
    if !iv.contains(x) {
        mass(theta, log_iv)?;
        return Ok(0.0);
    }
    Ok(log_normal_pdf(theta, x) / mass(theta, log_iv)?)
}

pub fn truncated_log_normal_cdf(theta: &ParamPoint, iv: Interval, x: f64) -> Result<f64> {
    if x < iv.lo {
        return Ok(0.0);
    }
    if x >= iv.hi {
        return Ok(1.0);
    }
    let log_iv = Interval {
        lo: iv.lo.ln(),
        hi: iv.hi.ln(),
    };
    let z = mass(theta, log_iv)?;
    Ok((cdf(theta, x.ln()) - cdf(theta, log_iv.lo)).max(0.0) / z)
}

pub fn truncated_log_normal_quantile(theta: &ParamPoint, iv: Interval, u: f64) -> Result<f64> {
    let log_iv = Interval {
        lo: iv.lo.ln(),
        hi: iv.hi.ln(),
    };
    Ok(truncated_quantile(theta, log_iv, u)?
        .exp()
        .clamp(iv.lo, iv.hi))
}

/// Boundary evaluations of the truncated density q and its first and second
/// theta-derivatives at the truncation bounds, plus their brackets
/// `[f] := f(b) - f(a)`. These feed the conditional-moment derivative stack.
struct Boundary {
    sigma: f64,
    // deviations x - mu at the bounds
    xa: f64,
    xb: f64,
    // truncated density at the bounds
    qa: f64,
    qb: f64,
    br_q: f64,
    br_xq: f64,
    dmu_qa: f64,
    dmu_qb: f64,
    dsig_qa: f64,
    dsig_qb: f64,
    br_dmu_q: f64,
    br_dsig_q: f64,
    br_x_dmu_q: f64,
    br_x_dsig_q: f64,
}

impl Boundary {
    fn new(theta: &ParamPoint, iv: Interval) -> Result<Boundary> {
        let (mu, sigma) = (theta.coord(0), theta.coord(1));
        let z = mass(theta, iv)?;
        let xa = iv.lo - mu;
        let xb = iv.hi - mu;
        let qa = std_normal_pdf(xa / sigma) / (sigma * z);
        let qb = std_normal_pdf(xb / sigma) / (sigma * z);
        let br_q = qb - qa;
        let br_xq = xb * qb - xa * qa;
        let s2 = sigma * sigma;
        let s3 = s2 * sigma;
        // dq/dmu = q (x'/s^2 + [q]), dq/dsigma = q ([xq]/s - 1/s + x'^2/s^3)
        let dmu_q = |x: f64, q: f64| q * (x / s2 + br_q);
        let dsig_q = |x: f64, q: f64| q * (br_xq / sigma - 1.0 / sigma + x * x / s3);
        let dmu_qa = dmu_q(xa, qa);
        let dmu_qb = dmu_q(xb, qb);
        let dsig_qa = dsig_q(xa, qa);
        let dsig_qb = dsig_q(xb, qb);
        Ok(Boundary {
            sigma,
            xa,
            xb,
            qa,
            qb,
            br_q,
            br_xq,
            dmu_qa,
            dmu_qb,
            dsig_qa,
            dsig_qb,
            br_dmu_q: dmu_qb - dmu_qa,
            br_dsig_q: dsig_qb - dsig_qa,
            br_x_dmu_q: xb * dmu_qb - xa * dmu_qa,
            br_x_dsig_q: xb * dsig_qb - xa * dsig_qa,
        })
    }

    fn d2mumu_q(&self, x: f64, q: f64, dmu_q: f64) -> f64 {
        let s2 = self.sigma * self.sigma;
        dmu_q * (x / s2 + self.br_q) + q * (-1.0 / s2 + self.br_dmu_q)
    }

    fn d2sigmu_q(&self, x: f64, q: f64, dsig_q: f64) -> f64 {
        let s2 = self.sigma * self.sigma;
        let s3 = s2 * self.sigma;
        dsig_q * (x / s2 + self.br_q) + q * (-2.0 * x / s3 + self.br_dsig_q)
    }

    fn d2sigsig_q(&self, x: f64, q: f64, dsig_q: f64) -> f64 {
        let s = self.sigma;
        let s2 = s * s;
        let s3 = s2 * s;
        let s4 = s2 * s2;
        dsig_q * (self.br_xq / s - 1.0 / s + x * x / s3)
            + q * (-self.br_xq / s2 + self.br_x_dsig_q / s + 1.0 / s2 - 3.0 * x * x / s4)
    }
}

/// Conditional mean/variance of the truncated normal on [a, b] and their
/// first and second partial derivatives in (mu, sigma).
#[derive(Clone, Copy, Debug)]
pub struct TruncatedMoments {
    pub mu_b: f64,
    pub sigma2_b: f64,
    pub dmu_mu_b: f64,
    pub dsig_mu_b: f64,
    pub dmu_sigma2_b: f64,
    pub dsig_sigma2_b: f64,
    pub d2mumu_mu_b: f64,
    pub d2musig_mu_b: f64,
    pub d2sigsig_mu_b: f64,
    pub d2mumu_sigma2_b: f64,
    pub d2musig_sigma2_b: f64,
    pub d2sigsig_sigma2_b: f64,
}

/// Full conditional-moment derivative stack of the truncated normal.
pub fn truncated_moments(theta: &ParamPoint, a: f64, b: f64) -> Result<TruncatedMoments> {
    let iv = Interval::new(a, b)?;
    if theta.dim() != 2 {
        return Err(Error::Domain(
            "truncated moments need a (mu, sigma) point".into(),
        ));
    }
    if theta.coord(1) < super::SCALE_FLOOR {
        return Err(Error::Domain(format!(
            "sigma {} below floor",
            theta.coord(1)
        )));
    }
    let bd = Boundary::new(theta, iv)?;
    let (mu, s) = (theta.coord(0), theta.coord(1));
    let s2 = s * s;

    let mu_b = mu - s2 * bd.br_q;
    let mb_gap = mu - mu_b; // equals sigma^2 [q]
    let sigma2_b = -s2 * (bd.br_xq - 1.0) - mb_gap * mb_gap;

    let dmu_mu_b = 1.0 - s2 * bd.br_dmu_q;
    let dsig_mu_b = -2.0 * s * bd.br_q - s2 * bd.br_dsig_q;
    let dmu_sigma2_b = -s2 * (-bd.br_q + bd.br_x_dmu_q) - 2.0 * mb_gap * (1.0 - dmu_mu_b);
    let dsig_sigma2_b = 2.0 * s * (1.0 - bd.br_xq) - s2 * bd.br_x_dsig_q + 2.0 * mb_gap * dsig_mu_b;

    let d2mumu_qa = bd.d2mumu_q(bd.xa, bd.qa, bd.dmu_qa);
    let d2mumu_qb = bd.d2mumu_q(bd.xb, bd.qb, bd.dmu_qb);
    let d2sigmu_qa = bd.d2sigmu_q(bd.xa, bd.qa, bd.dsig_qa);
    let d2sigmu_qb = bd.d2sigmu_q(bd.xb, bd.qb, bd.dsig_qb);
    let d2sigsig_qa = bd.d2sigsig_q(bd.xa, bd.qa, bd.dsig_qa);
    let d2sigsig_qb = bd.d2sigsig_q(bd.xb, bd.qb, bd.dsig_qb);

    let br_d2mumu_q = d2mumu_qb - d2mumu_qa;
    let br_d2sigmu_q = d2sigmu_qb - d2sigmu_qa;
    let br_d2sigsig_q = d2sigsig_qb - d2sigsig_qa;
    let br_x_d2mumu_q = bd.xb * d2mumu_qb - bd.xa * d2mumu_qa;
    let br_x_d2sigmu_q = bd.xb * d2sigmu_qb - bd.xa * d2sigmu_qa;
    let br_x_d2sigsig_q = bd.xb * d2sigsig_qb - bd.xa * d2sigsig_qa;

    let d2mumu_mu_b = -s2 * br_d2mumu_q;
    let d2musig_mu_b = -2.0 * s * bd.br_dmu_q - s2 * br_d2sigmu_q;
    let d2sigsig_mu_b = -2.0 * bd.br_q - 4.0 * s * bd.br_dsig_q - s2 * br_d2sigsig_q;

    let d2mumu_sigma2_b = -s2 * (-2.0 * bd.br_dmu_q + br_x_d2mumu_q)
        - 2.0 * (1.0 - dmu_mu_b) * (1.0 - dmu_mu_b)
        + 2.0 * mb_gap * d2mumu_mu_b;
    let d2musig_sigma2_b = -2.0 * s * (-bd.br_q + bd.br_x_dmu_q)
        - s2 * (-bd.br_dsig_q + br_x_d2sigmu_q)
        + 2.0 * dsig_mu_b * (1.0 - dmu_mu_b)
        + 2.0 * d2musig_mu_b * mb_gap;
    let d2sigsig_sigma2_b = 2.0 * (1.0 - bd.br_xq)
        - 4.0 * s * bd.br_x_dsig_q
        - s2 * br_x_d2sigsig_q
        - 2.0 * dsig_mu_b * dsig_mu_b
        + 2.0 * mb_gap * d2sigsig_mu_b;

    Ok(TruncatedMoments {
        mu_b,
        sigma2_b,
        dmu_mu_b,
        dsig_mu_b,
        dmu_sigma2_b,
        dsig_sigma2_b,
        d2mumu_mu_b,
        d2musig_mu_b,
        d2sigsig_mu_b,
        d2mumu_sigma2_b,
        d2musig_sigma2_b,
        d2sigsig_sigma2_b,
    })
}

/// Truncated-normal Fisher information in terms of the conditional moments:
/// I = (1/s^2) [[d_mu mu_B, d_s mu_B], [d_s mu_B, (d_s sig2_B + 2(mu_B - mu) d_s mu_B)/s]].
pub fn truncated_fim(theta: &ParamPoint, iv: Interval) -> Result<SymMat> {
    let m = truncated_moments(theta, iv.lo, iv.hi)?;
    let (mu, s) = (theta.coord(0), theta.coord(1));
    let s2 = s * s;
    let i11 = m.dmu_mu_b / s2;
    let i12 = m.dsig_mu_b / s2;
    let i22 = (m.dsig_sigma2_b + 2.0 * (m.mu_b - mu) * m.dsig_mu_b) / (s2 * s);
    Ok(SymMat::dim2(i11, i12, i22))
}

/// Truncated-normal Christoffel symbols: the two conjugate first-kind symbol
/// sets are averaged into the Levi-Civita symbols, then raised with the
/// inverse Fisher matrix.
pub fn truncated_christoffel(theta: &ParamPoint, iv: Interval) -> Result<ChristoffelSymbols> {
    let m = truncated_moments(theta, iv.lo, iv.hi)?;
    let (mu, s) = (theta.coord(0), theta.coord(1));
    let s2 = s * s;
    let s3 = s2 * s;
    let s4 = s2 * s2;
    let gap = m.mu_b - mu;

    // Conjugate symbols (first kind), lower-index pairs (11), (12), (22).
    let star_11 = [0.0, 0.0];
    let star_12 = [-2.0 * m.dmu_mu_b / s3, -2.0 * m.dsig_mu_b / s3];
    let star_22 = [
        -3.0 / s4 * (m.dmu_sigma2_b + 2.0 * m.dmu_mu_b * gap),
        -3.0 / s4 * (m.dsig_sigma2_b + 2.0 * m.dsig_mu_b * gap),
    ];
    let plain_11 = [
        m.d2mumu_mu_b / s2,
        (m.d2mumu_sigma2_b + 2.0 * gap * m.d2mumu_mu_b + 2.0 * m.dmu_mu_b * m.dmu_mu_b) / s3,
    ];
    let plain_12 = [
        m.d2musig_mu_b / s2,
        (m.d2musig_sigma2_b + 2.0 * gap * m.d2musig_mu_b + 2.0 * m.dsig_mu_b * m.dmu_mu_b) / s3,
    ];
    let plain_22 = [
        m.d2sigsig_mu_b / s2,
        (m.d2sigsig_sigma2_b + 2.0 * gap * m.d2sigsig_mu_b + 2.0 * m.dsig_mu_b * m.dsig_mu_b) / s3,
    ];

    // Levi-Civita first-kind symbols: bar_{ij,k} = (plain + star) / 2.
    let bar_11 = [
        (plain_11[0] + star_11[0]) / 2.0,
        (plain_11[1] + star_11[1]) / 2.0,
    ];
    let bar_12 = [
        (plain_12[0] + star_12[0]) / 2.0,
        (plain_12[1] + star_12[1]) / 2.0,
    ];
    let bar_22 = [
        (plain_22[0] + star_22[0]) / 2.0,
        (plain_22[1] + star_22[1]) / 2.0,
    ];

    let g = truncated_fim(theta, iv)?;
    let ginv = g.inverse()?;

    let mut sym = ChristoffelSymbols::zeros(2, *theta, ChristoffelSource::ClosedForm);
    for k in 0..2 {
        let raise = |bar: [f64; 2]| bar[0] * ginv.get(0, k) + bar[1] * ginv.get(1, k);
        sym.set(k, 0, 0, raise(bar_11));
        sym.set(k, 0, 1, raise(bar_12));
        sym.set(k, 1, 1, raise(bar_22));
    }
    Ok(sym)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::integrate_panels;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn p(mu: f64, sigma: f64) -> ParamPoint {
        ParamPoint::two(mu, sigma)
    }

    /// Quadrature oracle for the conditional mean and variance.
    fn moments_by_quadrature(mu: f64, sigma: f64, a: f64, b: f64) -> (f64, f64) {
        let th = p(mu, sigma);
        let z = integrate_panels(60, a, b, 16, |x| pdf(&th, x));
        let m1 = integrate_panels(60, a, b, 16, |x| x * pdf(&th, x)) / z;
        let m2 = integrate_panels(60, a, b, 16, |x| (x - m1) * (x - m1) * pdf(&th, x)) / z;
        (m1, m2)
    }

    #[test]
    fn moments_match_quadrature() {
        for &(mu, sigma, a, b) in &[
            (0.0, 1.0, -2.0, 2.0),
            (0.5, 1.3, -1.0, 3.0),
            (30.0, 7.5, 15.0, 90.0),
            (-1.0, 0.7, -2.0, 0.5),
        ] {
            let m = truncated_moments(&p(mu, sigma), a, b).unwrap();
            let (m1, m2) = moments_by_quadrature(mu, sigma, a, b);
            assert_relative_eq!(m.mu_b, m1, max_relative = 1e-10, epsilon = 1e-10);
            assert_relative_eq!(m.sigma2_b, m2, max_relative = 1e-10);
            assert!(m.sigma2_b > 0.0);
            assert!(m.mu_b >= a && m.mu_b <= b);
        }
    }

    #[test]
    fn symmetric_interval_zeroes_odd_quantities() {
        let m = truncated_moments(&p(0.0, 1.0), -2.0, 2.0).unwrap();
        assert_abs_diff_eq!(m.mu_b, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.dsig_mu_b, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn wide_interval_recovers_plain_normal() {
        let m = truncated_moments(&p(0.0, 1.0), -20.0, 20.0).unwrap();
        assert_abs_diff_eq!(m.mu_b, 0.0, epsilon = 1e-8);
        assert_abs_diff_eq!(m.sigma2_b, 1.0, epsilon = 1e-8);
        assert_abs_diff_eq!(m.dmu_mu_b, 1.0, epsilon = 1e-8);
        assert_abs_diff_eq!(m.dsig_sigma2_b, 2.0, epsilon = 1e-8);
    }

    /// Every first partial is checked against a central finite difference of
    /// the quadrature-computed moments, and every second partial against a
    /// central finite difference of the closed-form first partials.
    #[test]
    fn derivative_stack_matches_finite_differences() {
        let h = 1e-6;
        for &(mu, sigma, a, b) in &[(0.3, 1.1, -2.0, 2.0), (30.0, 7.5, 15.0, 90.0)] {
            let m = truncated_moments(&p(mu, sigma), a, b).unwrap();

            let fd = |f: &dyn Fn(f64, f64) -> f64, dmu: f64, dsig: f64| {
                (f(mu + h * dmu, sigma + h * dsig) - f(mu - h * dmu, sigma - h * dsig)) / (2.0 * h)
            };

            let q_mu = |m_: f64, s_: f64| moments_by_quadrature(m_, s_, a, b).0;
            let q_s2 = |m_: f64, s_: f64| moments_by_quadrature(m_, s_, a, b).1;
            let rel = 1e-4;
            assert_relative_eq!(
                m.dmu_mu_b,
                fd(&q_mu, 1.0, 0.0),
                max_relative = rel,
                epsilon = 1e-8
            );
            assert_relative_eq!(
                m.dsig_mu_b,
                fd(&q_mu, 0.0, 1.0),
                max_relative = rel,
                epsilon = 1e-8
            );
            assert_relative_eq!(
                m.dmu_sigma2_b,
                fd(&q_s2, 1.0, 0.0),
                max_relative = rel,
                epsilon = 1e-8
            );
            assert_relative_eq!(
                m.dsig_sigma2_b,
                fd(&q_s2, 0.0, 1.0),
                max_relative = rel,
                epsilon = 1e-8
            );

            let st = |m_: f64, s_: f64| truncated_moments(&p(m_, s_), a, b).unwrap();
            let c_dmu_mu = |m_: f64, s_: f64| st(m_, s_).dmu_mu_b;
            let c_dsig_mu = |m_: f64, s_: f64| st(m_, s_).dsig_mu_b;
            let c_dmu_s2 = |m_: f64, s_: f64| st(m_, s_).dmu_sigma2_b;
            let c_dsig_s2 = |m_: f64, s_: f64| st(m_, s_).dsig_sigma2_b;
            assert_relative_eq!(
                m.d2mumu_mu_b,
                fd(&c_dmu_mu, 1.0, 0.0),
                max_relative = rel,
                epsilon = 1e-7
            );
            assert_relative_eq!(
                m.d2musig_mu_b,
                fd(&c_dmu_mu, 0.0, 1.0),
                max_relative = rel,
                epsilon = 1e-7
            );
            assert_relative_eq!(
                m.d2musig_mu_b,
                fd(&c_dsig_mu, 1.0, 0.0),
                max_relative = rel,
                epsilon = 1e-7
            );
            assert_relative_eq!(
                m.d2sigsig_mu_b,
                fd(&c_dsig_mu, 0.0, 1.0),
                max_relative = rel,
                epsilon = 1e-7
            );
            assert_relative_eq!(
                m.d2mumu_sigma2_b,
                fd(&c_dmu_s2, 1.0, 0.0),
                max_relative = rel,
                epsilon = 1e-7
            );
            assert_relative_eq!(
                m.d2musig_sigma2_b,
                fd(&c_dmu_s2, 0.0, 1.0),
                max_relative = rel,
                epsilon = 1e-7
            );
            assert_relative_eq!(
                m.d2musig_sigma2_b,
                fd(&c_dsig_s2, 1.0, 0.0),
                max_relative = rel,
                epsilon = 1e-7
            );
            assert_relative_eq!(
                m.d2sigsig_sigma2_b,
                fd(&c_dsig_s2, 0.0, 1.0),
                max_relative = rel,
                epsilon = 1e-7
            );
        }
    }

    #[test]
    fn degenerate_truncation_is_rejected() {
        // all mass ~40 sigma away from the interval
        let err = truncated_moments(&p(0.0, 0.01), 100.0, 101.0).unwrap_err();
        assert!(matches!(err, Error::DegenerateTruncation(_)));
    }

    #[test]
    fn truncated_fim_converges_to_normal_fim() {
        let th = p(0.0, 1.0);
        let plain = fim(&th);
        let mut last = f64::INFINITY;
        for r in [5.0, 10.0, 20.0] {
            let t = truncated_fim(&th, Interval { lo: -r, hi: r }).unwrap();
            let dev = t.max_abs_diff(&plain);
            assert!(
                dev <= last,
                "deviation should shrink as the interval widens"
            );
            last = dev;
        }
        assert!(last < 1e-8);
    }

    #[test]
    fn truncated_christoffel_converges_to_normal_christoffel() {
        let th = p(0.0, 1.0);
        let plain = christoffel(&th);
        let trunc = truncated_christoffel(
            &th,
            Interval {
                lo: -20.0,
                hi: 20.0,
            },
        )
        .unwrap();
        assert!(plain.max_abs_diff(&trunc) < 1e-6);
    }

    #[test]
    fn normal_christoffel_is_mu_independent() {
        let sym = christoffel(&p(3.0, 2.0));
        assert_relative_eq!(sym.get(1, 1, 1), -0.5, max_relative = 1e-15);
        assert_relative_eq!(sym.get(0, 0, 1), -0.5, max_relative = 1e-15);
        assert_relative_eq!(sym.get(1, 0, 0), 0.25, max_relative = 1e-15);
    }
}
