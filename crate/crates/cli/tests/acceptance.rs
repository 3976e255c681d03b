//! Acceptance suite. Runs without the libtest harness so that every criterion
//! prints exactly one `PASS`/`FAIL` line; exits non-zero if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use num_rational::Rational64;
use serde_json::Value;
use tdual_core::branes::{
    boundary_probe_points, check_exactness, check_graph, separation_probe, FiberGrid, GraphCheck, LiftedCell,
    PotentialConvention, ProbeConfig,
};
use tdual_core::geometry::{check_critical_points, check_mirror_coordinates};
use tdual_core::homs::{hom_basis, hom_dimension, CellObject};
use tdual_core::oracle::oracle_report;
use tdual_core::quiver::{is_strong_exceptional, quotient_quiver};

type Outcome = Result<String, String>;

fn seed() -> u64 {
    std::env::var("TDUAL_SEED")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(tdual_cli::DEFAULT_SEED)
}

/// `C(d + n, n)` by Pascal recursion, independent of the library.
fn pascal(d: i64, n: usize) -> usize {
    if d < 0 {
        return 0;
    }
    let mut row = vec![1usize; n + 1];
    for _ in 0..d {
        for k in 1..=n {
            row[k] += row[k - 1];
        }
    }
    row[n]
}

fn levels(n: usize) -> std::ops::RangeInclusive<i64> {
    -(n as i64) - 1..=-1
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn quiver_equivalence() -> Outcome {
    const LIMIT: Duration = Duration::from_secs(10);
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut slowest = Duration::ZERO;
    for n in 1..=4usize {
        let start = Instant::now();
        let out = Command::new(env!("CARGO_BIN_EXE_tdual"))
            .args(["verify", "--n", &n.to_string(), "--out", "verify.json"])
            .current_dir(dir.path())
            .output()
            .map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        ensure(out.status.code() == Some(0), || format!("n={n}: exit {:?}", out.status.code()))?;
        ensure(elapsed < LIMIT, || format!("n={n}: {elapsed:?} exceeds {LIMIT:?}"))?;
        let text = std::fs::read_to_string(dir.path().join("verify.json")).map_err(|e| e.to_string())?;
        let report: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        let eq = report["checks"]
            .as_array()
            .and_then(|c| c.iter().find(|c| c["check"] == "quiver_equivalence"))
            .ok_or(format!("n={n}: no quiver_equivalence check"))?;
        ensure(eq["pass"] == true, || format!("n={n}: witness {}", eq["witness"]))?;
    }
    Ok(format!("tdual verify exits 0 for n=1..4, slowest {:.3}s (limit 10s)", slowest.as_secs_f64()))
}

fn hom_dimensions() -> Outcome {
    let mut compared = 0usize;
    for n in 1..=6usize {
        for i in levels(n) {
            for j in levels(n) {
                let got = hom_dimension(n, i, j) as usize;
                let basis = hom_basis(n, i, j).len();
                let want = pascal(j - i, n);
                ensure(got == want && basis == want, || {
                    format!("n={n} i={i} j={j}: dim {got}, basis {basis}, expected {want}")
                })?;
                compared += 1;
            }
        }
        ensure(pascal(0, n) == 1 && hom_dimension(n, -1, -1) == 1, || format!("N_{n}(0) != 1"))?;
        ensure(hom_dimension(n, -1, -2) == 0, || format!("N_{n}(-1) != 0"))?;
    }
    let example = hom_dimension(2, -2, -1);
    ensure(example == 3, || format!("Hom(U(-2), U(-1)) on n=2 has dim {example}, expected 3"))?;
    Ok(format!("{compared} level pairs for n<=6 equal C(j-i+n, n); n=2 (-2,-1) gives 3"))
}

fn strong_exceptional() -> Outcome {
    for n in 1..=5usize {
        let q = quotient_quiver(n).map_err(|e| e.to_string())?;
        ensure(is_strong_exceptional(&q), || format!("n={n}: not strong exceptional"))?;
    }
    Ok("cell collection is strong exceptional for n=1..5".into())
}

fn oracle() -> Outcome {
    const LIMIT: Duration = Duration::from_secs(60);
    let epsilons = [Rational64::new(1, 5), Rational64::new(1, 10)];
    let start = Instant::now();
    for n in 1..=2usize {
        let report = oracle_report(n, &epsilons, |i, j| pascal(j - i, n)).map_err(|e| e.to_string())?;
        ensure(report.pass, || format!("n={n}: witness {:?}", report.witness))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < LIMIT, || format!("{elapsed:?} exceeds {LIMIT:?}"))?;
    Ok(format!(
        "relative cohomology matches hom dims for n=1,2 at eps=1/5 and 1/10 in {:.2}s (limit 60s)",
        elapsed.as_secs_f64()
    ))
}

fn exactness() -> Outcome {
    const TOL: f64 = 1e-9;
    let mut worst = 0.0_f64;
    for n in 1..=3usize {
        let grid = FiberGrid::new(n, 20, 0.1, 10.0).map_err(|e| e.to_string())?;
        for k in levels(n) {
            let report = check_exactness(n, k, &grid, TOL).map_err(|e| e.to_string())?;
            worst = worst.max(report.max_deviation.unwrap_or(f64::INFINITY));
            ensure(report.pass, || report.summary())?;
        }
    }
    ensure(worst <= TOL, || format!("max |omega| {worst:.3e}"))?;
    Ok(format!("omega on brane frames, 20^n grid, n<=3, all k: max {worst:.3e} (tol 1e-9)"))
}

fn graph_property() -> Outcome {
    const TOL: f64 = 1e-7;
    let scaled = GraphCheck::default();
    ensure(scaled.fd_step == 1e-5 && scaled.tol == TOL, || "unexpected defaults".into())?;
    let literal = GraphCheck {
        convention: PotentialConvention::Literal,
        ..scaled
    };
    let mut worst = 0.0_f64;
    let mut cells = 0usize;
    for n in 1..=3usize {
        let per_axis = [100, 10, 5][n - 1];
        let grid = FiberGrid::new(n, per_axis, 0.5, 2.0).map_err(|e| e.to_string())?;
        for k in levels(n) {
            for object in CellObject::orbit(n, k).map_err(|e| e.to_string())? {
                let cell = LiftedCell::new(n, k, object.a.clone()).map_err(|e| e.to_string())?;
                let report = check_graph(&cell, &grid, &scaled).map_err(|e| e.to_string())?;
                worst = worst.max(report.max_deviation.unwrap_or(f64::INFINITY));
                ensure(report.pass, || report.summary())?;
                cells += 1;
                let lit = check_graph(&cell, &grid, &literal).map_err(|e| e.to_string())?;
                if k <= -2 {
                    let ratio = lit.details.as_ref().and_then(|d| d["median_log_r_over_gradient"].as_f64());
                    ensure(!lit.pass, || format!("literal potential passes at n={n} k={k}"))?;
                    ensure(ratio.is_some_and(|r| (r + k as f64).abs() < 1e-4), || {
                        format!("literal ratio {ratio:?} at n={n} k={k}, expected {}", -k)
                    })?;
                } else {
                    ensure(lit.pass, || format!("literal potential fails at k=-1, n={n}"))?;
                }
            }
        }
    }
    Ok(format!(
        "{cells} lifted cells, n<=3, h=1e-5: max {worst:.3e} (tol 1e-7); literal potentials off by -k for k<=-2"
    ))
}

fn mirror_coordinates() -> Outcome {
    const TOL: f64 = 1e-12;
    let mut worst = 0.0_f64;
    for n in 1..=3usize {
        let report = check_mirror_coordinates(n, 1000, seed(), TOL).map_err(|e| e.to_string())?;
        worst = worst.max(report.max_deviation.unwrap_or(f64::INFINITY));
        ensure(report.pass, || report.summary())?;
    }
    Ok(format!("|z_j| vs moment map at 1000 fibers, n<=3: max {worst:.3e} (tol 1e-12)"))
}

fn critical_points() -> Outcome {
    const TOL: f64 = 1e-10;
    for n in 1..=4usize {
        let report = check_critical_points(n, TOL).map_err(|e| e.to_string())?;
        ensure(report.pass, || report.summary())?;
    }
    Ok("W has n+1 nondegenerate critical points with residual < 1e-10 for n<=4".into())
}

fn separation() -> Outcome {
    let config = ProbeConfig {
        delta: 0.05,
        t_steps: 10,
        samples: 10_000,
        seed: seed(),
    };
    let mut smallest = f64::INFINITY;
    let mut points = 0usize;
    for n in 1..=2usize {
        for s in boundary_probe_points(n) {
            let report = separation_probe(&s, &config).map_err(|e| e.to_string())?;
            let min = report.details.as_ref().and_then(|d| d["min_defect"].as_f64()).unwrap_or(0.0);
            ensure(report.pass && min > 0.0, || format!("s={s:?}: {}", report.summary()))?;
            smallest = smallest.min(min);
            points += 1;
        }
    }
    Ok(format!(
        "{points} boundary points, n=1,2, delta=0.05, 10^4 samples: min defect {smallest:.3e} > 0"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("quiver equivalence via nu", quiver_equivalence),
        ("hom dimensions", hom_dimensions),
        ("strong exceptional collection", strong_exceptional),
        ("cohomology oracle", oracle),
        ("lagrangian exactness", exactness),
        ("graph of the potential", graph_property),
        ("mirror coordinates", mirror_coordinates),
        ("critical points of W", critical_points),
        ("separation probe", separation),
    ];
    let mut failures = 0;
    for (index, (name, criterion)) in criteria.iter().enumerate() {
        match criterion() {
            Ok(note) => println!("criterion {} [PASS] {name}: {note}", index + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {} [FAIL] {name}: {why}", index + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
