//! Gumbel and truncated-Gumbel internals.
//!
//! The non-truncated Fisher information is (1/s^2) [[1, g-1], [g-1, B+1]]
//! with g the Euler-Mascheroni constant and B a base-density integral that is
//! evaluated by quadrature once per process. The truncated Fisher information
//! is the expected negative log-density Hessian: closed normalizing-constant
//! terms plus four base-weight moments integrated by fixed-order
//! Gauss-Legendre on the truncation interval.

use super::{Interval, ParamPoint, MASS_FLOOR};
use crate::error::{Error, Result};
use crate::mat::SymMat;
use crate::quad::{integrate_panels, GaussLegendre, DEFAULT_NODES};
use crate::special::EULER_MASCHERONI;
use std::sync::OnceLock;

/// Standard Gumbel density p(z) = exp(-z - e^{-z}).
fn std_pdf(z: f64) -> f64 {
    (-z - (-z).exp()).exp()
}

/// p'(z) = (e^{-z} - 1) p(z), with the underflow guard that keeps
/// inf * 0 out of the product.
fn std_pdf_deriv(z: f64) -> f64 {
    let p = std_pdf(z);
    if p == 0.0 {
        return 0.0;
    }
    ((-z).exp() - 1.0) * p
}

fn std_cdf(z: f64) -> f64 {
    (-(-z).exp()).exp()
}

fn std_quantile(p: f64) -> f64 {
    -(-p.ln()).ln()
}

/// P(lo <= Z <= hi) for a standard Gumbel Z, stable in both tails.
fn std_interval_mass(lo: f64, hi: f64) -> f64 {
    debug_assert!(lo <= hi);
    let va = (-lo).exp();
    if va.is_infinite() {
        return std_cdf(hi);
    }
    // F(hi) - F(lo) = e^{-vb} (1 - e^{-(va - vb)}) with v = e^{-z}.
    let diff = va * (-(-(hi - lo)).exp_m1());
    let vb = (-hi).exp();
    (-vb).exp() * (-(-diff).exp_m1())
}

pub fn pdf(theta: &ParamPoint, x: f64) -> f64 {
    let (m, s) = (theta.coord(0), theta.coord(1));
    std_pdf((x - m) / s) / s
}

pub fn cdf(theta: &ParamPoint, x: f64) -> f64 {
    let (m, s) = (theta.coord(0), theta.coord(1));
    std_cdf((x - m) / s)
}

pub fn quantile(theta: &ParamPoint, u: f64) -> f64 {
    let (m, s) = (theta.coord(0), theta.coord(1));
    m + s * std_quantile(u)
}

pub fn score(theta: &ParamPoint, x: f64) -> [f64; 2] {
    let (m, s) = (theta.coord(0), theta.coord(1));
    let z = (x - m) / s;
    let w = (-z).exp();
    [(1.0 - w) / s, (-1.0 + z * (1.0 - w)) / s]
}

/// Base integral B = int_0^inf (log x)^2 x e^{-x} dx, computed once and
/// cached (substituting x = e^t gives a doubly-decaying integrand).
pub fn beta_integral() -> f64 {
    static BETA: OnceLock<f64> = OnceLock::new();
    *BETA
        .get_or_init(|| integrate_panels(50, -40.0, 8.0, 24, |t| t * t * (2.0 * t - t.exp()).exp()))
}

pub fn fim(theta: &ParamPoint) -> SymMat {
    let s = theta.coord(1);
    let inv2 = 1.0 / (s * s);
    let off = EULER_MASCHERONI - 1.0;
    SymMat::dim2(inv2, off * inv2, (beta_integral() + 1.0) * inv2)
}

fn mass(theta: &ParamPoint, iv: Interval) -> Result<f64> {
    let (m, s) = (theta.coord(0), theta.coord(1));
    let n = std_interval_mass((iv.lo - m) / s, (iv.hi - m) / s);
    if n < MASS_FLOOR {
        return Err(Error::DegenerateTruncation(format!(
            "gumbel({m}, {s}) carries mass {n} on [{}, {}]",
            iv.lo, iv.hi
        )));
    }
    Ok(n)
}

pub fn truncated_pdf(theta: &ParamPoint, iv: Interval, x: f64) -> Result<f64> {
    if !iv.contains(x) {
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
    let n = mass(theta, iv)?;
    let (m, s) = (theta.coord(0), theta.coord(1));
    Ok(std_interval_mass((iv.lo - m) / s, (x - m) / s) / n)
}

pub fn truncated_quantile(theta: &ParamPoint, iv: Interval, u: f64) -> Result<f64> {
    let n = mass(theta, iv)?;
    let p = cdf(theta, iv.lo) + u * n;
    Ok(quantile(theta, p.clamp(f64::MIN_POSITIVE, 1.0 - 1e-16)).clamp(iv.lo, iv.hi))
}

pub fn truncated_score(theta: &ParamPoint, iv: Interval, x: f64) -> Result<[f64; 2]> {
    let n = mass(theta, iv)?;
    let (m, s) = (theta.coord(0), theta.coord(1));
    let (za, zb) = ((iv.lo - m) / s, (iv.hi - m) / s);
    let (pa, pb) = (std_pdf(za), std_pdf(zb));
    let dlogn_dm = -(pb - pa) / (s * n);
    let dlogn_ds = -(zb * pb - za * pa) / (s * n);
    let base = score(theta, x);
    Ok([base[0] - dlogn_dm, base[1] - dlogn_ds])
}

/// Base-weight moments E[e^{-z}], E[z], E[z e^{-z}], E[z^2 e^{-z}] under the
/// truncated standard Gumbel on [za, zb], by one fixed-order Gauss-Legendre
/// pass. The interval is clipped to where the weight is representable.
fn truncated_std_moments(za: f64, zb: f64) -> (f64, f64, f64, f64) {
    let lo = za.max(-8.0);
    let hi = zb.min(lo.max(0.0) + 50.0);
    let rule = GaussLegendre::rule(DEFAULT_NODES);
    let (mut a0, mut aw, mut az, mut azw, mut az2w) = (0.0, 0.0, 0.0, 0.0, 0.0);
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    for (node, weight) in rule.nodes_weights() {
        let z = mid + half * node;
        let p = std_pdf(z);
        if p == 0.0 {
            continue;
        }
        let w = (-z).exp();
        let wp = weight * p;
        a0 += wp;
        aw += wp * w;
        az += wp * z;
        azw += wp * z * w;
        az2w += wp * z * z * w;
    }
    (aw / a0, az / a0, azw / a0, az2w / a0)
}

/// Truncated-Gumbel Fisher information via the expected log-density Hessian:
/// the normalizing-constant Hessian is closed form, the remaining terms are
/// the quadrature moments.
pub fn truncated_fim(theta: &ParamPoint, iv: Interval) -> Result<SymMat> {
    let n = mass(theta, iv)?;
    let (m, s) = (theta.coord(0), theta.coord(1));
    let s2 = s * s;
    let (za, zb) = ((iv.lo - m) / s, (iv.hi - m) / s);
    let (e_w, e_z, e_zw, e_z2w) = truncated_std_moments(za, zb);

    let (pa, pb) = (std_pdf(za), std_pdf(zb));
    let (ppa, ppb) = (std_pdf_deriv(za), std_pdf_deriv(zb));
    let dn_dm = -(pb - pa) / s;
    let dn_ds = -(zb * pb - za * pa) / s;
    let d2n_mm = (ppb - ppa) / s2;
    let d2n_ms = ((pb - pa) + zb * ppb - za * ppa) / s2;
    let d2n_ss = (2.0 * zb * pb - 2.0 * za * pa + zb * zb * ppb - za * za * ppa) / s2;
    let h_mm = d2n_mm / n - dn_dm * dn_dm / (n * n);
    let h_ms = d2n_ms / n - dn_dm * dn_ds / (n * n);
    let h_ss = d2n_ss / n - dn_ds * dn_ds / (n * n);

    let i_mm = e_w / s2 + h_mm;
    let i_ms = (1.0 + e_zw - e_w) / s2 + h_ms;
    let i_ss = (-1.0 + 2.0 * e_z + e_z2w - 2.0 * e_zw) / s2 + h_ss;
    Ok(SymMat::dim2(i_mm, i_ms, i_ss))
}

/// Mean of the truncated Gumbel: m + s E(z).
pub fn truncated_gumbel_mean(theta: &ParamPoint, a: f64, b: f64) -> Result<f64> {
    let iv = Interval::new(a, b)?;
    mass(theta, iv)?;
    let (m, s) = (theta.coord(0), theta.coord(1));
    let (_, e_z, _, _) = truncated_std_moments((a - m) / s, (b - m) / s);
    Ok(m + s * e_z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn beta_integral_matches_derived_value() {
        // Gamma''(2) = psi(2)^2 + psi'(2) = (1 - g)^2 + pi^2/6 - 1.
        let g = EULER_MASCHERONI;
        let expected = (1.0 - g) * (1.0 - g) + std::f64::consts::PI.powi(2) / 6.0 - 1.0;
        assert_relative_eq!(beta_integral(), expected, max_relative = 1e-13);
        assert_relative_eq!(beta_integral(), 0.8236806608528794, max_relative = 1e-13);
    }

    #[test]
    fn interval_mass_is_stable() {
        // Right tail where both CDF values round to 1.
        let m = std_interval_mass(39.0, 45.0);
        let expected = (-39.0f64).exp() - (-45.0f64).exp();
        assert_relative_eq!(m, expected, max_relative = 1e-12);
        assert_relative_eq!(std_interval_mass(-6.0, 1e9), 1.0, max_relative = 1e-10);
    }

    #[test]
    fn truncated_fim_recovers_plain_fim_on_wide_intervals() {
        let th = ParamPoint::two(0.4, 1.3);
        let plain = fim(&th);
        let wide = truncated_fim(
            &th,
            Interval {
                lo: -40.0,
                hi: 80.0,
            },
        )
        .unwrap();
        assert!(
            plain.max_abs_diff(&wide) < 1e-9,
            "diff {}",
            plain.max_abs_diff(&wide)
        );
    }

    #[test]
    fn truncated_fim_node_doubling_is_self_consistent() {
        // Flood-model Q baseline.
        let th = ParamPoint::two(1013.0, 558.0);
        let iv = Interval {
            lo: 0.0,
            hi: 3000.0,
        };
        let a = truncated_fim(&th, iv).unwrap();
        let m = th;
        let (za, zb) = (
            (iv.lo - m.coord(0)) / m.coord(1),
            (iv.hi - m.coord(0)) / m.coord(1),
        );
        let coarse = truncated_std_moments(za, zb);
        // Compare the moment pass against a composite rule of twice the nodes.
        let fine = {
            let lo = za.max(-8.0);
            let hi = zb.min(lo.max(0.0) + 50.0);
            let f0 = integrate_panels(100, lo, hi, 4, std_pdf);
            let fw = integrate_panels(100, lo, hi, 4, |z| std_pdf(z) * (-z).exp());
            let fz = integrate_panels(100, lo, hi, 4, |z| std_pdf(z) * z);
            let fzw = integrate_panels(100, lo, hi, 4, |z| std_pdf(z) * z * (-z).exp());
            let fz2w = integrate_panels(100, lo, hi, 4, |z| std_pdf(z) * z * z * (-z).exp());
            (fw / f0, fz / f0, fzw / f0, fz2w / f0)
        };
        assert!((coarse.0 - fine.0).abs() < 1e-10);
        assert!((coarse.1 - fine.1).abs() < 1e-10);
        assert!((coarse.2 - fine.2).abs() < 1e-10);
        assert!((coarse.3 - fine.3).abs() < 1e-10);
        assert!(a.is_positive_definite());
    }

    #[test]
    fn truncated_mean_shifts_with_location() {
        let lo = truncated_gumbel_mean(&ParamPoint::two(500.0, 558.0), 0.0, 3000.0).unwrap();
        let hi = truncated_gumbel_mean(&ParamPoint::two(1013.0, 558.0), 0.0, 3000.0).unwrap();
        assert!(lo < hi);
        assert!(lo > 0.0 && hi < 3000.0);
    }
}
