//! Desk-scale flood robustness study printed as a table.
//!
//! Run with: cargo run --release --example flood_study -- [seed]

use frao::flood::{run_flood_study, FloodOverrides};

fn main() {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1);
    let overrides = FloodOverrides {
        sample_size: Some(4000),
        sphere_points: Some(48),
        bootstrap_replicates: Some(200),
        ..Default::default()
    };
    let t0 = std::time::Instant::now();
    let study = run_flood_study(&overrides, seed).expect("flood study runs");
    println!("seed {seed}, {:.1?}\n", t0.elapsed());
    println!(
        "{:>5} {:>5} {:>9} {:>9} {:>8}",
        "input", "delta", "s_min", "s_max", "blowups"
    );
    for c in &study.result.cells {
        println!(
            "{:>5} {:>5.1} {:>9.4} {:>9.4} {:>8}",
            c.input, c.delta, c.s_min, c.s_max, c.blowups
        );
    }
    println!("\nminimizing Gumbel parameter for Q per radius:");
    for r in &study.q_argmin {
        println!(
            "  delta {:>3.1}: m = {:>7.1}, s = {:>6.1}",
            r.delta, r.m, r.s
        );
    }
}
