//! Command-line front end: geometry computations and robustness studies with
//! CSV/JSON artifacts.
//!
//! Exit codes: 0 success, 2 validation error, 3 numerical error, 4 model
//! evaluation error.

use clap::{Args, Parser, Subcommand};
use frao::error::Error;
use frao::families::{FamilySpec, LocScaleBase, ParamPoint};
use frao::geometry::{christoffel_numeric, fr_sphere, geodesic_integrate, Integrator};
use frao::io;
use frao::ra::{run_study, StudyConfig};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "frao",
    version,
    about = "Fisher-Rao geometry and robustness analysis"
)]
struct Cli {
    /// Worker threads for sphere and bootstrap evaluation (0 = one per core).
    /// Results are identical for every thread count.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FamilyArgs {
    /// Family kind: normal, truncated-normal, gumbel, truncated-gumbel,
    /// log-normal, truncated-log-normal, gamma, exponential, triangular,
    /// location-scale-normal, location-scale-gumbel.
    #[arg(long)]
    family: String,

    /// Truncation interval (or triangular support) as `a,b`.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    bounds: Option<(f64, f64)>,

    /// Parameter coordinates, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    theta: Vec<f64>,
}

impl FamilyArgs {
    fn spec(&self) -> Result<FamilySpec, Error> {
        let bounds = |op: &str| {
            self.bounds
                .ok_or_else(|| Error::Validation(format!("family '{op}' requires --bounds a,b")))
        };
        match self.family.as_str() {
            "normal" => Ok(FamilySpec::normal()),
            "truncated-normal" => {
                bounds("truncated-normal").and_then(|(a, b)| FamilySpec::truncated_normal(a, b))
            }
            "gumbel" => Ok(FamilySpec::gumbel()),
            "truncated-gumbel" => {
                bounds("truncated-gumbel").and_then(|(a, b)| FamilySpec::truncated_gumbel(a, b))
            }
            "log-normal" => Ok(FamilySpec::log_normal()),
            "truncated-log-normal" => bounds("truncated-log-normal")
                .and_then(|(a, b)| FamilySpec::truncated_log_normal(a, b)),
            "gamma" => Ok(FamilySpec::gamma()),
            "exponential" => Ok(FamilySpec::exponential()),
            "triangular" => bounds("triangular").and_then(|(a, b)| FamilySpec::triangular(a, b)),
            "location-scale-normal" => Ok(FamilySpec::location_scale(LocScaleBase::StdNormal)),
            "location-scale-gumbel" => Ok(FamilySpec::location_scale(LocScaleBase::StdGumbel)),
            other => Err(Error::Validation(format!("unknown family '{other}'"))),
        }
    }

    fn point(&self, spec: &FamilySpec) -> Result<ParamPoint, Error> {
        spec.param(&self.theta)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the Fisher information matrix at a parameter point.
    Fim {
        #[command(flatten)]
        family: FamilyArgs,
        /// Emit JSON instead of the text rendering.
        #[arg(long)]
        json: bool,
    },
    /// Print the Christoffel symbols (second kind) at a parameter point.
    Christoffel {
        #[command(flatten)]
        family: FamilyArgs,
        /// Force the finite-difference route even when a closed form exists.
        #[arg(long)]
        numeric: bool,
        /// Finite-difference step.
        #[arg(long, default_value_t = 1e-7)]
        fd_step: f64,
        #[arg(long)]
        json: bool,
    },
    /// Integrate a geodesic from theta with a given initial velocity.
    Geodesic {
        #[command(flatten)]
        family: FamilyArgs,
        /// Initial velocity, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        velocity: Vec<f64>,
        #[arg(long, default_value_t = 10_000)]
        steps: usize,
        #[arg(long, default_value = "euler")]
        method: String,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Emit the trajectory as JSON instead of CSV.
        #[arg(long)]
        json: bool,
    },
    /// Discretize the Fisher-Rao sphere of a given radius.
    Sphere {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        delta: f64,
        /// Number of discretization points.
        #[arg(long, default_value_t = 100)]
        k: usize,
        #[arg(long, default_value_t = 10_000)]
        steps: usize,
        #[arg(long, default_value = "euler")]
        method: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Emit the sphere as JSON instead of CSV.
        #[arg(long)]
        json: bool,
    },
    /// Tabulate the perturbed densities of a sphere on an x grid.
    Perturb {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 100)]
        k: usize,
        #[arg(long, default_value_t = 10_000)]
        steps: usize,
        #[arg(long, default_value = "euler")]
        method: String,
        /// Evaluation grid as `lo,hi,count`.
        #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
        grid: (f64, f64, usize),
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a robustness study described by a JSON configuration.
    Ra {
        /// Study configuration file.
        #[arg(long)]
        config: PathBuf,
        /// Override the configured seed.
        #[arg(long, env = "FRAO_SEED")]
        seed: Option<u64>,
        /// Override the configured sample size.
        #[arg(long)]
        n: Option<usize>,
        /// Output directory for result.csv / result.json.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Run the flood-model robustness study with the baseline configuration.
    Flood {
        #[arg(long, env = "FRAO_SEED", default_value_t = 0)]
        seed: u64,
        /// Sample size override.
        #[arg(long)]
        n: Option<usize>,
        /// Sphere discretization override.
        #[arg(long)]
        k: Option<usize>,
        /// Bootstrap replicate override.
        #[arg(long)]
        replicates: Option<usize>,
        /// Output directory for flood_pli.csv, flood_q_argmin.csv,
        /// flood_result.json.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected `a,b`, got '{s}'"));
    }
    let a = parts[0].trim().parse::<f64>().map_err(|e| e.to_string())?;
    let b = parts[1].trim().parse::<f64>().map_err(|e| e.to_string())?;
    Ok((a, b))
}

fn parse_grid(s: &str) -> Result<(f64, f64, usize), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected `lo,hi,count`, got '{s}'"));
    }
    let lo = parts[0].trim().parse::<f64>().map_err(|e| e.to_string())?;
    let hi = parts[1].trim().parse::<f64>().map_err(|e| e.to_string())?;
    let n = parts[2]
        .trim()
        .parse::<usize>()
        .map_err(|e| e.to_string())?;
    if lo >= hi || n < 2 {
        return Err("grid needs lo < hi and at least 2 points".into());
    }
    Ok((lo, hi, n))
}

fn parse_method(s: &str) -> Result<Integrator, Error> {
    s.parse()
}

fn write_or_print(path: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| Error::Validation(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn write_file(dir: &Path, name: &str, content: &str) -> Result<(), Error> {
    std::fs::create_dir_all(dir)
        .map_err(|e| Error::Validation(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, content)
        .map_err(|e| Error::Validation(format!("cannot write {}: {e}", path.display())))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

/// The importance-sampling estimator degrades silently once the effective
/// sample size collapses; flag any optimizer whose ESS fell below N/100.
fn warn_low_ess(result: &frao::ra::RaStudyResult) {
    let floor = result.sample_size as f64 / 100.0;
    for c in &result.cells {
        for (label, ess) in [("min", c.ess_min), ("max", c.ess_max)] {
            if ess < floor {
                eprintln!(
                    "warning: input {} delta {} ({label}): effective sample size {ess:.0} below {floor:.0}",
                    c.input, c.delta
                );
            }
        }
    }
    for e in &result.input_errors {
        eprintln!("warning: input {} failed: {}", e.input, e.message);
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Fim { family, json } => {
            let spec = family.spec()?;
            let theta = family.point(&spec)?;
            let fim = spec.fim(&theta)?;
            if json {
                let doc = serde_json::json!({
                    "family": spec,
                    "theta": theta,
                    "entries": fim.entries.to_rows(),
                    "source": fim.source,
                });
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                let label = match fim.source {
                    frao::families::MetricSource::ClosedForm => "closed-form",
                    frao::families::MetricSource::Quadrature => "quadrature",
                    frao::families::MetricSource::MonteCarlo => "monte-carlo",
                };
                println!("Fisher information ({label}) at {:?}:", theta.coords());
                for row in fim.entries.to_rows() {
                    println!(
                        "  {}",
                        row.iter()
                            .map(|v| format!("{v:+.12e}"))
                            .collect::<Vec<_>>()
                            .join("  ")
                    );
                }
            }
            Ok(())
        }
        Command::Christoffel {
            family,
            numeric,
            fd_step,
            json,
        } => {
            let spec = family.spec()?;
            let theta = family.point(&spec)?;
            let sym = if numeric || !spec.has_closed_christoffel() {
                christoffel_numeric(&spec, &theta, fd_step)?
            } else {
                spec.christoffel_closed(&theta)?
            };
            let d = spec.param_dim();
            if json {
                let mut entries = Vec::new();
                for k in 0..d {
                    for i in 0..d {
                        for j in 0..d {
                            entries.push(serde_json::json!({
                                "k": k, "i": i, "j": j, "value": sym.get(k, i, j)
                            }));
                        }
                    }
                }
                let doc = serde_json::json!({
                    "family": spec,
                    "theta": theta,
                    "source": sym.source,
                    "symbols": entries,
                });
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                println!(
                    "Christoffel symbols ({:?}) at {:?}:",
                    sym.source,
                    theta.coords()
                );
                for k in 0..d {
                    for i in 0..d {
                        for j in i..d {
                            println!(
                                "  Gamma^{}_{{{}{}}} = {:+.12e}",
                                k + 1,
                                i + 1,
                                j + 1,
                                sym.get(k, i, j)
                            );
                        }
                    }
                }
            }
            Ok(())
        }
        Command::Geodesic {
            family,
            velocity,
            steps,
            method,
            out,
            json,
        } => {
            let spec = family.spec()?;
            let theta = family.point(&spec)?;
            let method = parse_method(&method)?;
            let geo = geodesic_integrate(&spec, &theta, &velocity, steps, method)?;
            if json {
                let dim = spec.param_dim();
                let doc = serde_json::json!({
                    "family": spec,
                    "times": geo.times,
                    "points": geo.points,
                    "velocities": geo.velocities.iter().map(|v| &v[..dim]).collect::<Vec<_>>(),
                    "initial_speed": geo.initial_speed,
                    "status": geo.status,
                });
                let text = serde_json::to_string_pretty(&doc).unwrap();
                write_or_print(&out, &format!("{text}\n"))
            } else {
                write_or_print(&out, &io::geodesic_csv(&spec, &geo))
            }
        }
        Command::Sphere {
            family,
            delta,
            k,
            steps,
            method,
            out,
            json,
        } => {
            let spec = family.spec()?;
            let theta = family.point(&spec)?;
            let method = parse_method(&method)?;
            let sphere = fr_sphere(&spec, &theta, delta, k, steps, method)?;
            if json {
                let points: Vec<serde_json::Value> = sphere
                    .points
                    .iter()
                    .zip(&sphere.angles)
                    .zip(&sphere.statuses)
                    .map(|((p, angle), status)| {
                        serde_json::json!({
                            "angle": angle,
                            "point": p,
                            "status": status,
                        })
                    })
                    .collect();
                let doc = serde_json::json!({
                    "family": spec,
                    "center": sphere.center,
                    "radius": sphere.radius,
                    "points": points,
                });
                let text = serde_json::to_string_pretty(&doc).unwrap();
                write_or_print(&out, &format!("{text}\n"))
            } else {
                write_or_print(&out, &io::sphere_csv(&spec, &sphere))
            }
        }
        Command::Perturb {
            family,
            delta,
            k,
            steps,
            method,
            grid,
            out,
        } => {
            let spec = family.spec()?;
            let theta = family.point(&spec)?;
            let method = parse_method(&method)?;
            let sphere = fr_sphere(&spec, &theta, delta, k, steps, method)?;
            let (lo, hi, n) = grid;
            let xs: Vec<f64> = (0..n)
                .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
                .collect();
            let mut columns = Vec::new();
            for (point, status) in sphere.points.iter().zip(&sphere.statuses) {
                if !status.is_complete() {
                    continue;
                }
                let col: Result<Vec<f64>, Error> = xs.iter().map(|x| spec.pdf(point, *x)).collect();
                columns.push(col?);
            }
            write_or_print(&out, &io::perturb_csv(&xs, &columns))
        }
        Command::Ra {
            config,
            seed,
            n,
            out_dir,
        } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| Error::Validation(format!("cannot read {}: {e}", config.display())))?;
            let mut study: StudyConfig = serde_json::from_str(&text)
                .map_err(|e| Error::Validation(format!("invalid study config: {e}")))?;
            if let Some(seed) = seed {
                study.seed = seed;
            }
            if let Some(n) = n {
                study.sample_size = n;
            }
            let result = run_study(&study)?;
            warn_low_ess(&result);
            write_file(&out_dir, "result.csv", &io::result_csv(&result))?;
            write_file(
                &out_dir,
                "result.json",
                &format!("{}\n", io::to_json_pretty(&result)?),
            )?;
            Ok(())
        }
        Command::Flood {
            seed,
            n,
            k,
            replicates,
            out_dir,
        } => {
            let overrides = frao::flood::FloodOverrides {
                sample_size: n,
                sphere_points: k,
                bootstrap_replicates: replicates,
                ..Default::default()
            };
            let study = frao::flood::run_flood_study(&overrides, seed)?;
            warn_low_ess(&study.result);
            write_file(&out_dir, "flood_pli.csv", &io::result_csv(&study.result))?;
            write_file(
                &out_dir,
                "flood_q_argmin.csv",
                &io::q_argmin_csv(&study.q_argmin),
            )?;
            write_file(
                &out_dir,
                "flood_result.json",
                &format!("{}\n", io::to_json_pretty(&study.result)?),
            )?;
            Ok(())
        }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Domain(_)
        | Error::InvalidTruncation { .. }
        | Error::NotAvailable(_)
        | Error::RadiusTooLarge { .. }
        | Error::Validation(_) => 2,
        Error::DegenerateTruncation(_)
        | Error::Numerical(_)
        | Error::Boundary(_)
        | Error::BlowUp { .. }
        | Error::NoConvergence { .. }
        | Error::SphereDegenerate(_)
        | Error::DegenerateWeights(_)
        | Error::ZeroQoi => 3,
        Error::Evaluation { .. } => 4,
    }
}

fn main() {
    let cli = Cli::parse();
    if cli.threads > 0 {
        // Ignore failure: the global pool may already exist in tests.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(exit_code(&err));
    }
}
