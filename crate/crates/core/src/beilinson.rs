//! Line bundles `O(-n-1), ..., O(-1)` on projective space: hom spaces as
//! monomials, the comparison map `nu` from cell homs, and the quiver-level
//! comparison of the two collections.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::homs::{collection_levels, lattice_box, HomElement};
use crate::quiver::{assemble, quotient_quiver, Quiver, QuiverSide};
use crate::report::CheckReport;

/// `x_0^{e_0} ... x_n^{e_n}` as a map `O(source) -> O(target)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub source: i64,
    pub target: i64,
    pub exponents: Vec<i64>,
}

impl Monomial {
    pub fn new(source: i64, target: i64, exponents: Vec<i64>) -> Result<Self> {
        let valid = exponents.len() >= 2
            && exponents.iter().all(|e| *e >= 0)
            && exponents.iter().sum::<i64>() == target - source;
        if valid {
            Ok(Self { source, target, exponents })
        } else {
            Err(Error::InvalidMonomial { from: source, to: target, exponents })
        }
    }

    pub fn one(n: usize, level: i64) -> Self {
        Self {
            source: level,
            target: level,
            exponents: vec![0; n + 1],
        }
    }

    pub fn degree(&self) -> i64 {
        self.exponents.iter().sum()
    }
}

/// Degree-`(j - i)` monomials in `x_0, ..., x_n`, highest power of `x_0` first.
pub fn monomial_hom_basis(i: i64, j: i64, n: usize) -> Vec<Monomial> {
    if j < i {
        return Vec::new();
    }
    let d = j - i;
    let mut out: Vec<Monomial> = lattice_box(n, 0, d)
        .filter(|tail| tail.iter().sum::<i64>() <= d)
        .map(|tail| {
            let mut exponents = Vec::with_capacity(n + 1);
            exponents.push(d - tail.iter().sum::<i64>());
            exponents.extend(tail);
            Monomial { source: i, target: j, exponents }
        })
        .collect();
    out.sort_by(|a, b| b.exponents.cmp(&a.exponents));
    out
}

/// `g ∘ f` for `f: O(i) -> O(j)` and `g: O(j) -> O(k)`.
pub fn monomial_compose(g: &Monomial, f: &Monomial) -> Result<Monomial> {
    if g.source != f.target || g.exponents.len() != f.exponents.len() {
        return Err(Error::NotComposable {
            first_target: f.target,
            second_source: g.source,
        });
    }
    let exponents = f.exponents.iter().zip(&g.exponents).map(|(a, b)| a + b).collect();
    Monomial::new(f.source, g.target, exponents)
}

fn nu_exponents(i: i64, j: i64, b: &[i64]) -> Vec<i64> {
    let mut exponents = Vec::with_capacity(b.len() + 1);
    exponents.push(j - i + b.iter().sum::<i64>());
    exponents.extend(b.iter().map(|x| -x));
    exponents
}

/// `nu(e^b_{i,j}) = x_0^{j - i + sum b} x_1^{-b_1} ... x_n^{-b_n}`.
pub fn nu(e: &HomElement) -> Monomial {
    Monomial {
        source: e.source,
        target: e.target,
        exponents: nu_exponents(e.source, e.target, &e.b),
    }
}

/// `chi(O(i), O(j)) = (d+1)(d+2)...(d+n) / n!` with `d = j - i`.
pub fn euler_pairing(i: i64, j: i64, n: usize) -> i128 {
    let d = (j - i) as i128;
    let mut value: i128 = 1;
    for m in 1..=n as i128 {
        value = value * (d + m) / m;
    }
    value
}

/// The quiver of `O(-n-1), ..., O(-1)` with monomial bases.
pub fn sheaf_quiver(n: usize) -> Result<Quiver> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    assemble(
        n,
        QuiverSide::LineBundles,
        &collection_levels(n),
        |i, j| monomial_hom_basis(i, j, n).into_iter().map(|m| m.exponents).collect(),
        |i, j, k, fe, ge| {
            let f = Monomial::new(i, j, fe.to_vec())?;
            let g = Monomial::new(j, k, ge.to_vec())?;
            Ok(monomial_compose(&g, &f)?.exponents)
        },
    )
}

fn expected_composition_count(q: &Quiver) -> usize {
    let mut total = 0;
    for &i in &q.objects {
        for &j in &q.objects {
            for &k in &q.objects {
                if q.hom_dim(i, k) > 0 {
                    total += q.hom_dim(i, j) * q.hom_dim(j, k);
                }
            }
        }
    }
    total
}

/// Checks that `nu` identifies the cell quiver with the line-bundle quiver:
/// a bijection on every hom space and compatible with every composition.
pub fn verify_quivers(cells: &Quiver, sheaves: &Quiver) -> CheckReport {
    let parameters = json!({ "n": cells.n });
    let report = CheckReport::new(
        "quiver_equivalence",
        "nu is an isomorphism between the quivers of U(-n-1..-1) and O(-n-1..-1)",
        parameters,
    );
    let fail = |witness: serde_json::Value| report.clone().with_pass(false).with_witness(witness);

    if cells.n != sheaves.n || cells.objects != sheaves.objects {
        return fail(json!({ "reason": "object lists differ", "cells": cells.objects, "sheaves": sheaves.objects }));
    }

    let mut basis_elements = 0usize;
    let mut position: BTreeMap<(i64, i64), BTreeMap<Vec<i64>, usize>> = BTreeMap::new();
    for &i in &cells.objects {
        for &j in &cells.objects {
            let source = cells.hom(i, j).map_or(&[][..], |h| h.basis.as_slice());
            let target = sheaves.hom(i, j).map_or(&[][..], |h| h.basis.as_slice());
            let target_index: BTreeMap<Vec<i64>, usize> =
                target.iter().enumerate().map(|(r, e)| (e.clone(), r)).collect();
            if target_index.len() != target.len() {
                return fail(json!({ "reason": "repeated monomial", "i": i, "j": j }));
            }
            let mut images = BTreeSet::new();
            for b in source {
                let image = nu_exponents(i, j, b);
                if Monomial::new(i, j, image.clone()).is_err() || !target_index.contains_key(&image) {
                    return fail(json!({ "reason": "image outside monomial basis", "i": i, "j": j, "b": b, "nu": image }));
                }
                if !images.insert(image.clone()) {
                    return fail(json!({ "reason": "nu not injective", "i": i, "j": j, "b": b, "nu": image }));
                }
            }
            if images.len() != target.len() {
                return fail(json!({
                    "reason": "nu not surjective",
                    "i": i,
                    "j": j,
                    "cell_dim": source.len(),
                    "monomial_dim": target.len(),
                }));
            }
            basis_elements += source.len();
            position.insert((i, j), target_index);
        }
    }

    for (q, name) in [(cells, "cells"), (sheaves, "sheaves")] {
        let expected = expected_composition_count(q);
        if q.composition_table().len() != expected || q.compositions.len() != expected {
            return fail(json!({
                "reason": "composition table incomplete",
                "side": name,
                "entries": q.compositions.len(),
                "expected": expected,
            }));
        }
    }

    let sheaf_table = sheaves.composition_table();
    for entry in &cells.compositions {
        let (i, j, k) = (entry.i, entry.j, entry.k);
        let label = |a: i64, b: i64, idx: usize| cells.hom(a, b).and_then(|h| h.basis.get(idx)).cloned();
        let (Some(fb), Some(gb), Some(rb)) = (label(i, j, entry.f), label(j, k, entry.g), label(i, k, entry.result)) else {
            return fail(json!({ "reason": "composition index out of range", "entry": entry }));
        };
        let (nf, ng, nr) = (nu_exponents(i, j, &fb), nu_exponents(j, k, &gb), nu_exponents(i, k, &rb));
        let product: Vec<i64> = nf.iter().zip(&ng).map(|(x, y)| x + y).collect();
        let sheaf_result = sheaf_table.get(&(i, j, k, position[&(i, j)][&nf], position[&(j, k)][&ng]));
        let expected = sheaf_result.and_then(|r| sheaves.hom(i, k).map(|h| h.basis[*r].clone()));
        if nr != product || expected.as_ref() != Some(&nr) {
            return fail(json!({
                "reason": "nu does not respect composition",
                "f": { "i": i, "j": j, "b": fb },
                "g": { "j": j, "k": k, "b": gb },
                "g_after_f": rb,
                "nu_g_after_f": nr,
                "nu_g_times_nu_f": product,
                "sheaf_table_result": expected,
            }));
        }
    }

    report.with_details(json!({
        "hom_spaces": position.values().filter(|m| !m.is_empty()).count(),
        "basis_elements": basis_elements,
        "composable_pairs": cells.compositions.len(),
    }))
}

/// Builds both quivers for `n` and runs [`verify_quivers`].
pub fn verify_equivalence(n: usize) -> Result<CheckReport> {
    Ok(verify_quivers(&quotient_quiver(n)?, &sheaf_quiver(n)?))
}
