//! Deterministic text output: CSV files with 17-significant-digit numerics
//! (round-trip exact for f64, so regression tests can diff bytes) and JSON
//! documents whose layout follows struct field order.

use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::flood::QArgminRow;
use crate::geometry::{FrSphere, Geodesic, GeodesicStatus};
use crate::ra::RaStudyResult;

/// 17 significant digits: enough to reproduce any finite f64 exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn status_label(status: &GeodesicStatus) -> String {
    match status {
        GeodesicStatus::Complete => "complete".into(),
        GeodesicStatus::BlewUp { t_star } => format!("blew_up@{}", fmt_f64(*t_star)),
    }
}

/// Flat study-result table, one row per (input, delta) cell.
pub fn result_csv(result: &RaStudyResult) -> String {
    let mut out =
        String::from("input,delta,s_min,s_max,ci_min_lo,ci_min_hi,ci_max_lo,ci_max_hi,blowups\n");
    for c in &result.cells {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            c.input,
            fmt_f64(c.delta),
            fmt_f64(c.s_min),
            fmt_f64(c.s_max),
            fmt_f64(c.ci_min.lo),
            fmt_f64(c.ci_min.hi),
            fmt_f64(c.ci_max.lo),
            fmt_f64(c.ci_max.hi),
            c.blowups
        ));
    }
    out
}

/// Flow-rate argmin trajectory (delta, m, s rows).
pub fn q_argmin_csv(rows: &[QArgminRow]) -> String {
    let mut out = String::from("delta,m,s\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{}\n",
            fmt_f64(r.delta),
            fmt_f64(r.m),
            fmt_f64(r.s)
        ));
    }
    out
}

/// Sphere table: one row per discretization point.
pub fn sphere_csv(spec: &FamilySpec, sphere: &FrSphere) -> String {
    let mut out = String::from("index,angle");
    for name in spec.param_names() {
        out.push(',');
        out.push_str(name);
    }
    out.push_str(",status\n");
    for (i, point) in sphere.points.iter().enumerate() {
        out.push_str(&format!("{},{}", i, fmt_f64(sphere.angles[i])));
        for c in point.coords() {
            out.push(',');
            out.push_str(&fmt_f64(*c));
        }
        out.push(',');
        out.push_str(&status_label(&sphere.statuses[i]));
        out.push('\n');
    }
    out
}

/// Geodesic table: one row per time step; the status column repeats the
/// trajectory's overall status.
pub fn geodesic_csv(spec: &FamilySpec, geo: &Geodesic) -> String {
    let dim = spec.param_dim();
    let mut out = String::from("step,t");
    for name in spec.param_names() {
        out.push(',');
        out.push_str(name);
    }
    for name in spec.param_names() {
        out.push_str(",v_");
        out.push_str(name);
    }
    out.push_str(",status\n");
    let status = status_label(&geo.status);
    for (k, t) in geo.times.iter().enumerate() {
        out.push_str(&format!("{},{}", k, fmt_f64(*t)));
        for c in geo.points[k].coords() {
            out.push(',');
            out.push_str(&fmt_f64(*c));
        }
        for v in &geo.velocities[k][..dim] {
            out.push(',');
            out.push_str(&fmt_f64(*v));
        }
        out.push(',');
        out.push_str(&status);
        out.push('\n');
    }
    out
}

/// Density table behind the perturbed-density plots: an `x` column plus one
/// density column per sphere point.
pub fn perturb_csv(xs: &[f64], densities: &[Vec<f64>]) -> String {
    let mut out = String::from("x");
    for k in 0..densities.len() {
        out.push_str(&format!(",d{k:03}"));
    }
    out.push('\n');
    for (row, x) in xs.iter().enumerate() {
        out.push_str(&fmt_f64(*x));
        for col in densities {
            out.push(',');
            out.push_str(&fmt_f64(col[row]));
        }
        out.push('\n');
    }
    out
}

pub fn to_json_pretty<T: serde::Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map_err(|e| Error::Validation(format!("serialization failed: {e}")))
}
