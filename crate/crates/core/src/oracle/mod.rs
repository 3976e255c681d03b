//! Independent recomputation of the cell hom spaces as relative cohomology
//! `H^*(closure(U^0(i)) ∩ U^b(j), ∂U^0(i) ∩ U^b(j))`, summed over the lifts `b`,
//! for `n ∈ {1, 2}`.
//!
//! Nothing here uses the combinatorial hom bases; the only inputs are the
//! cell inequalities and exact simplicial cochain complexes.

pub mod complex;
pub mod linalg;
pub mod region;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use serde_json::json;

pub use complex::{relative_cohomology, shrink_and_triangulate, BettiProfile, SimplicialPair};
pub use region::{region_pair, CellLabel, PolyhedralRegion, RegionPair, UnitFace};

use crate::error::{Error, Result};
use crate::report::CheckReport;

pub const MAX_ORACLE_DIM: usize = 2;

pub fn default_epsilon() -> Rational64 {
    Rational64::new(1, 5)
}

/// Audit record of one `(i, j, b)` summand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub i: i64,
    pub j: i64,
    pub b: Vec<i64>,
    pub betti: Vec<usize>,
    /// Relative cochain counts `|X \ A|` by dimension.
    pub cells: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleHom {
    pub i: i64,
    pub j: i64,
    pub epsilon: String,
    pub total: BettiProfile,
    pub pairs: Vec<PairRecord>,
}

fn check_dim(n: usize) -> Result<()> {
    if (1..=MAX_ORACLE_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::OracleDimension(n))
    }
}

fn offsets(n: usize) -> Vec<Vec<i64>> {
    let top = n as i64;
    match n {
        1 => (-top..=0).map(|x| vec![x]).collect(),
        _ => (-top..=0).flat_map(|x| (-top..=0).map(move |y| vec![x, y])).collect(),
    }
}

/// One summand: the cohomology of the pair for outer `U^0(i)` and inner `U^b(j)`.
pub fn oracle_pair(n: usize, i: i64, j: i64, b: &[i64], epsilon: Rational64) -> Result<PairRecord> {
    check_dim(n)?;
    let outer = CellLabel::new(n, i, vec![0; n])?;
    let inner = CellLabel::new(n, j, b.to_vec())?;
    let pair = region_pair(n, &outer, &inner)?;
    let complex = shrink_and_triangulate(&pair, epsilon)?;
    let profile = relative_cohomology(&complex)?;
    Ok(PairRecord {
        i,
        j,
        b: b.to_vec(),
        betti: profile.betti,
        cells: (0..=n).map(|d| complex.relative_cells(d).len()).collect(),
    })
}

/// Graded dimension of `hom(U(i), U(j))`, summed over all lifts `b` of `U(j)`.
pub fn oracle_hom_dim(i: i64, j: i64, n: usize, epsilon: Rational64) -> Result<OracleHom> {
    check_dim(n)?;
    let mut total = BettiProfile::zero(n);
    let mut pairs = Vec::new();
    for b in offsets(n) {
        let record = oracle_pair(n, i, j, &b, epsilon)?;
        total.add(&BettiProfile { betti: record.betti.clone() });
        pairs.push(record);
    }
    Ok(OracleHom {
        i,
        j,
        epsilon: epsilon.to_string(),
        total,
        pairs,
    })
}

/// Compares the oracle with `expected(i, j)` in degree 0 and zero elsewhere,
/// for every pair of levels and every shrink in `epsilons`. Per-summand
/// profiles must also agree across the shrinks.
pub fn oracle_report<F>(n: usize, epsilons: &[Rational64], expected: F) -> Result<CheckReport>
where
    F: Fn(i64, i64) -> usize,
{
    check_dim(n)?;
    if epsilons.is_empty() {
        return Err(Error::InvalidParameter("at least one epsilon is required".into()));
    }
    let levels: Vec<i64> = (-(n as i64) - 1..=-1).collect();
    let mut results = Vec::new();
    let mut failures = Vec::new();
    let mut max_deviation = 0usize;
    for &i in &levels {
        for &j in &levels {
            let want = BettiProfile::concentrated(n, expected(i, j));
            let mut reference: Option<OracleHom> = None;
            for &eps in epsilons {
                let got = oracle_hom_dim(i, j, n, eps)?;
                let deviation: usize = got.total.betti.iter().zip(&want.betti).map(|(a, b)| a.abs_diff(*b)).sum();
                max_deviation = max_deviation.max(deviation);
                if deviation != 0 {
                    failures.push(json!({ "i": i, "j": j, "epsilon": got.epsilon, "oracle": got.total.betti, "expected": want.betti }));
                }
                if let Some(first) = &reference {
                    for (p, q) in first.pairs.iter().zip(&got.pairs) {
                        if p.betti != q.betti {
                            failures.push(json!({
                                "reason": "epsilon instability",
                                "i": i, "j": j, "b": p.b,
                                "epsilons": [first.epsilon, got.epsilon],
                                "betti": [p.betti, q.betti],
                            }));
                        }
                    }
                } else {
                    reference = Some(got);
                }
            }
            if let Some(r) = reference {
                results.push(r);
            }
        }
    }
    let pass = failures.is_empty();
    let mut report = CheckReport::new(
        "oracle_equivalence",
        "relative cohomology of cell pairs reproduces the hom dimensions in degree 0 and vanishes above",
        json!({
            "n": n,
            "epsilons": epsilons.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        }),
    )
    .with_deviation(max_deviation as f64)
    .with_pass(pass)
    .with_details(json!({ "homs": results }));
    if !pass {
        report = report.with_witness(json!(failures));
    }
    Ok(report)
}
