//! Command-line driver: parses a [`RunConfig`], runs the requested checks and
//! writes a deterministic JSON report.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde::Serialize;
use serde_json::{json, Value};
use tdual_core::beilinson::{sheaf_quiver, verify_quivers};
use tdual_core::branes::{
    boundary_probe_points, check_exactness, check_graph, separation_probe, FiberGrid, GraphCheck, LiftedCell,
    PotentialConvention, ProbeConfig,
};
use tdual_core::geometry::{check_critical_points, check_mirror_coordinates};
use tdual_core::homs::{collection_levels, hom_basis, hom_dimension, CellObject};
use tdual_core::oracle::{complex::epsilon_bound, oracle_report, MAX_ORACLE_DIM};
use tdual_core::quiver::{is_strong_exceptional, quotient_quiver, Quiver};
use tdual_core::report::CheckReport;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Seed used for sampled checks when `TDUAL_SEED` is unset.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] tdual_core::Error),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Moment map, mirror coordinates and critical points of the superpotential.
    Geometry,
    /// Exactness, graph property and separation probes of the branes L(k).
    Branes,
    /// Build and export both quivers.
    Quiver,
    /// Compare the two quivers through nu and check strong exceptionality.
    Verify,
    /// Recompute hom dimensions as relative cohomology (n <= 2).
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "tdual", about = "Checks for the T-dual brane picture of projective space")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    #[command(flatten)]
    options: Options,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Moment map, mirror coordinates and critical points of the superpotential.
    Geometry,
    /// Exactness, graph property and separation probes of the branes L(k).
    Branes,
    /// Build and export both quivers.
    Quiver,
    /// Compare the two quivers through nu and check strong exceptionality.
    Verify,
    /// Recompute hom dimensions as relative cohomology (n <= 2).
    Oracle,
}

#[derive(Debug, Clone, clap::Args)]
struct Options {
    /// Dimension of the projective space.
    #[arg(long, global = true, default_value_t = 2)]
    n: usize,
    /// Central-difference step for the graph check.
    #[arg(long = "fd-step", global = true, default_value_t = 1e-5)]
    fd_step: f64,
    /// Tolerance for the symplectic pairing on brane tangent frames.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Tolerance for the graph check.
    #[arg(long = "graph-tol", global = true, default_value_t = 1e-7)]
    graph_tol: f64,
    /// Points per axis of the exactness grid.
    #[arg(long, global = true, default_value_t = 20)]
    grid: usize,
    /// Points per axis of the graph-check grid (default: about 100 points in total).
    #[arg(long = "graph-grid", global = true)]
    graph_grid: Option<usize>,
    /// Boundary margin for the graph check (default: twice the fd step).
    #[arg(long, global = true)]
    margin: Option<f64>,
    /// Use the unscaled lifted potentials in the graph check.
    #[arg(long = "literal-potential", global = true)]
    literal_potential: bool,
    /// Shrink parameter for the oracle, as a rational `p/q`; a second run uses half of it.
    #[arg(long, global = true, default_value = "1/5")]
    epsilon: Rational64,
    /// Upper bound of the flow times in the separation probe.
    #[arg(long = "delta-probe", global = true, default_value_t = 0.05)]
    delta_probe: f64,
    /// Samples per boundary point in the separation probe.
    #[arg(long, global = true, default_value_t = 10_000)]
    samples: usize,
    /// Flow times per sample in the separation probe.
    #[arg(long = "t-steps", global = true, default_value_t = 10)]
    t_steps: usize,
    /// Random fibers for the mirror-coordinate check.
    #[arg(long = "fibers", global = true, default_value_t = 1000)]
    fibers: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Path of the JSON report.
    #[arg(long, global = true, default_value = "tdual-report.json")]
    out: PathBuf,
}

/// Validated configuration of one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub n: usize,
    pub fd_step: f64,
    pub symplectic_tol: f64,
    pub graph_tol: f64,
    pub grid: usize,
    pub graph_grid: usize,
    pub margin: f64,
    pub convention: PotentialConvention,
    #[serde(serialize_with = "serialize_rationals")]
    pub epsilons: Vec<Rational64>,
    pub delta_probe: f64,
    pub samples: usize,
    pub t_steps: usize,
    pub fibers: usize,
    pub seed: u64,
    pub format: Format,
    pub out: PathBuf,
}

fn serialize_rationals<S: serde::Serializer>(values: &[Rational64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(|v| v.to_string()))
}

fn default_graph_grid(n: usize) -> usize {
    ((100f64).powf(1.0 / n as f64).round() as usize).max(2)
}

impl RunConfig {
    fn from_cli(cli: Cli, seed: u64) -> Result<Self, CliError> {
        let o = cli.options;
        let command = match cli.command {
            Sub::Geometry => Command::Geometry,
            Sub::Branes => Command::Branes,
            Sub::Quiver => Command::Quiver,
            Sub::Verify => Command::Verify,
            Sub::Oracle => Command::Oracle,
        };
        let config = RunConfig {
            command,
            n: o.n,
            fd_step: o.fd_step,
            symplectic_tol: o.tol,
            graph_tol: o.graph_tol,
            grid: o.grid,
            graph_grid: o.graph_grid.unwrap_or_else(|| default_graph_grid(o.n.max(1))),
            margin: o.margin.unwrap_or(2.0 * o.fd_step),
            convention: if o.literal_potential {
                PotentialConvention::Literal
            } else {
                PotentialConvention::Scaled
            },
            epsilons: vec![o.epsilon, o.epsilon / 2],
            delta_probe: o.delta_probe,
            samples: o.samples,
            t_steps: o.t_steps,
            fibers: o.fibers,
            seed,
            format: o.format,
            out: o.out,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let usage = |m: &str| Err(CliError::Usage(m.to_string()));
        if self.n == 0 {
            return usage("--n must be at least 1");
        }
        let positive = [self.fd_step, self.symplectic_tol, self.graph_tol, self.delta_probe];
        if positive.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
            return usage("--fd-step, --tol, --graph-tol and --delta-probe must be positive");
        }
        if self.grid == 0 || self.graph_grid == 0 || self.samples == 0 || self.t_steps == 0 || self.fibers == 0 {
            return usage("grid densities and sample counts must be positive");
        }
        if !(self.margin >= 2.0 * self.fd_step) {
            return usage("--margin must be at least twice --fd-step");
        }
        let zero = Rational64::from_integer(0);
        if self.epsilons.iter().any(|e| *e <= zero || *e >= epsilon_bound()) {
            return Err(CliError::Usage(format!("--epsilon must lie in (0, {})", epsilon_bound())));
        }
        if self.command == Command::Oracle && self.n > MAX_ORACLE_DIM {
            return Err(CliError::Usage(format!("the oracle supports n <= {MAX_ORACLE_DIM}")));
        }
        if self.format == Format::Dot && self.command != Command::Quiver {
            return usage("--format dot is only available for `quiver`");
        }
        Ok(())
    }
}

/// The report written to `--out`.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: Command,
    pub config: RunConfig,
    pub checks: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub artifacts: Option<Value>,
    pub pass: bool,
}

impl RunReport {
    fn new(config: &RunConfig, mut checks: Vec<CheckReport>, artifacts: Option<Value>) -> Self {
        checks.sort_by(|a, b| {
            a.check
                .cmp(&b.check)
                .then_with(|| a.parameters.to_string().cmp(&b.parameters.to_string()))
        });
        let pass = checks.iter().all(|c| c.pass);
        Self {
            command: config.command,
            config: config.clone(),
            checks,
            artifacts,
            pass,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&c.summary());
            out.push('\n');
        }
        let status = if self.pass { "PASS" } else { "FAIL" };
        out.push_str(&format!("{status}: {} of {} checks passed\n", self.checks.iter().filter(|c| c.pass).count(), self.checks.len()));
        out
    }
}

fn geometry_checks(c: &RunConfig) -> Result<Vec<CheckReport>, CliError> {
    Ok(vec![
        check_mirror_coordinates(c.n, c.fibers, c.seed, 1e-12)?,
        check_critical_points(c.n, 1e-10)?,
    ])
}

fn brane_checks(c: &RunConfig) -> Result<Vec<CheckReport>, CliError> {
    let n = c.n;
    let mut checks = Vec::new();
    let exact_grid = FiberGrid::new(n, c.grid, 0.1, 10.0)?;
    let graph_grid = FiberGrid::new(n, c.graph_grid, 0.5, 2.0)?;
    let params = GraphCheck {
        fd_step: c.fd_step,
        margin: c.margin,
        tol: c.graph_tol,
        convention: c.convention,
    };
    for k in collection_levels(n) {
        checks.push(check_exactness(n, k, &exact_grid, c.symplectic_tol)?);
        for lift in CellObject::orbit(n, k)? {
            let cell = LiftedCell::new(n, k, lift.a)?;
            checks.push(check_graph(&cell, &graph_grid, &params)?);
        }
    }
    let probe = ProbeConfig {
        delta: c.delta_probe,
        t_steps: c.t_steps,
        samples: c.samples,
        seed: c.seed,
    };
    for s in boundary_probe_points(n) {
        checks.push(separation_probe(&s, &probe)?);
    }
    Ok(checks)
}

fn hom_dimension_check(n: usize) -> CheckReport {
    let mut failures = Vec::new();
    let levels = collection_levels(n);
    for &i in &levels {
        for &j in &levels {
            let got = hom_basis(n, i, j).len() as u128;
            let want = hom_dimension(n, i, j);
            if got != want {
                failures.push(json!({ "i": i, "j": j, "basis": got as u64, "binomial": want as u64 }));
            }
        }
    }
    let report = CheckReport::new(
        "hom_dimensions",
        "hom(U(i), U(j)) has dimension C(j-i+n, n) for j >= i and vanishes otherwise",
        json!({ "n": n }),
    )
    .with_pass(failures.is_empty());
    if failures.is_empty() {
        report
    } else {
        report.with_witness(json!(failures))
    }
}

fn exceptional_check(q: &Quiver, name: &str) -> CheckReport {
    CheckReport::new(
        "strong_exceptional",
        "the collection is strong exceptional: scalar endomorphisms, no backward homs, homs in degree 0",
        json!({ "n": q.n, "side": name }),
    )
    .with_pass(is_strong_exceptional(q))
}

fn quiver_checks(c: &RunConfig) -> Result<(Vec<CheckReport>, Quiver, Quiver), CliError> {
    let cells = quotient_quiver(c.n)?;
    let sheaves = sheaf_quiver(c.n)?;
    let checks = vec![
        hom_dimension_check(c.n),
        exceptional_check(&cells, "cells"),
        exceptional_check(&sheaves, "line_bundles"),
    ];
    Ok((checks, cells, sheaves))
}

fn oracle_checks(c: &RunConfig) -> Result<Vec<CheckReport>, CliError> {
    let n = c.n;
    Ok(vec![oracle_report(n, &c.epsilons, |i, j| hom_basis(n, i, j).len())?])
}

fn dot_paths(out: &Path) -> (PathBuf, PathBuf) {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("tdual-report");
    let dir = out.parent().unwrap_or_else(|| Path::new(""));
    (dir.join(format!("{stem}.cells.dot")), dir.join(format!("{stem}.line_bundles.dot")))
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Runs a validated configuration, writes the report and returns it with the
/// text that should go to stdout.
pub fn execute(config: &RunConfig) -> Result<(RunReport, String), CliError> {
    let mut dot = None;
    let (checks, artifacts) = match config.command {
        Command::Geometry => (geometry_checks(config)?, None),
        Command::Branes => (brane_checks(config)?, None),
        Command::Oracle => (oracle_checks(config)?, None),
        Command::Verify => {
            let (mut checks, cells, sheaves) = quiver_checks(config)?;
            checks.push(verify_quivers(&cells, &sheaves));
            (checks, None)
        }
        Command::Quiver => {
            let (checks, cells, sheaves) = quiver_checks(config)?;
            let (cells_path, sheaves_path) = dot_paths(&config.out);
            let (cells_dot, sheaves_dot) = (cells.to_dot(), sheaves.to_dot());
            write(&cells_path, &cells_dot)?;
            write(&sheaves_path, &sheaves_dot)?;
            dot = Some(format!("{cells_dot}{sheaves_dot}"));
            let artifacts = json!({
                "cells": cells,
                "line_bundles": sheaves,
                "dot_files": [cells_path, sheaves_path],
            });
            (checks, Some(artifacts))
        }
    };
    let report = RunReport::new(config, checks, artifacts);
    let json = report.to_json();
    write(&config.out, &json)?;
    let stdout = match config.format {
        Format::Json => json,
        Format::Text => report.to_text(),
        Format::Dot => dot.unwrap_or_default(),
    };
    Ok((report, stdout))
}

fn seed_from_env() -> Result<u64, CliError> {
    match std::env::var("TDUAL_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("TDUAL_SEED must be an unsigned integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

/// Parses `argv` (including the program name), runs it and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let config = match seed_from_env().and_then(|seed| RunConfig::from_cli(cli, seed)) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("tdual: {e}");
            return EXIT_USAGE;
        }
    };
    match execute(&config) {
        Ok((report, stdout)) => {
            print!("{stdout}");
            if report.pass {
                EXIT_OK
            } else {
                eprintln!("tdual: some checks failed; see {}", config.out.display());
                EXIT_CHECK_FAILED
            }
        }
        Err(CliError::Usage(m)) => {
            eprintln!("tdual: {m}");
            EXIT_USAGE
        }
        Err(e) => {
            eprintln!("tdual: {e}");
            EXIT_CHECK_FAILED
        }
    }
}
