//! Finite quivers with relations presented by explicit hom bases and a full
//! composition table, shared by the cell side and the line-bundle side.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homs::{collection_levels, compose, hom_basis};

/// Which side of the comparison a quiver describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuiverSide {
    /// Cells `U(k)`; basis labels are offsets `b`.
    Cells,
    /// Line bundles `O(k)`; basis labels are monomial exponents.
    LineBundles,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomSpace {
    pub i: i64,
    pub j: i64,
    pub degree: i64,
    pub basis: Vec<Vec<i64>>,
}

/// `basis(i,k)[result] = basis(j,k)[g] ∘ basis(i,j)[f]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionEntry {
    pub i: i64,
    pub j: i64,
    pub k: i64,
    pub f: usize,
    pub g: usize,
    pub result: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub n: usize,
    pub side: QuiverSide,
    pub objects: Vec<i64>,
    /// Nonzero hom spaces only.
    pub homs: Vec<HomSpace>,
    pub compositions: Vec<CompositionEntry>,
}

impl Quiver {
    pub fn hom(&self, i: i64, j: i64) -> Option<&HomSpace> {
        self.homs.iter().find(|h| h.i == i && h.j == j)
    }

    pub fn hom_dim(&self, i: i64, j: i64) -> usize {
        self.hom(i, j).map_or(0, |h| h.basis.len())
    }

    pub fn composition_table(&self) -> BTreeMap<(i64, i64, i64, usize, usize), usize> {
        self.compositions
            .iter()
            .map(|c| ((c.i, c.j, c.k, c.f, c.g), c.result))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("quiver serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidParameter(format!("quiver json: {e}")))
    }

    /// Objects as nodes, generators between consecutive objects as labelled edges.
    pub fn to_dot(&self) -> String {
        let (prefix, graph) = match self.side {
            QuiverSide::Cells => ("U", "cells"),
            QuiverSide::LineBundles => ("O", "line_bundles"),
        };
        let mut out = String::new();
        let _ = writeln!(out, "digraph {graph}_n{} {{", self.n);
        let _ = writeln!(out, "  rankdir=LR;");
        for k in &self.objects {
            let _ = writeln!(out, "  \"{prefix}({k})\";");
        }
        for pair in self.objects.windows(2) {
            if let Some(h) = self.hom(pair[0], pair[1]) {
                for label in &h.basis {
                    let _ = writeln!(
                        out,
                        "  \"{prefix}({})\" -> \"{prefix}({})\" [label=\"{}\"];",
                        pair[0],
                        pair[1],
                        self.edge_label(label)
                    );
                }
            }
        }
        out.push_str("}\n");
        out
    }

    fn edge_label(&self, label: &[i64]) -> String {
        match self.side {
            QuiverSide::Cells => {
                let parts: Vec<String> = label.iter().map(i64::to_string).collect();
                format!("e^({})", parts.join(","))
            }
            QuiverSide::LineBundles => {
                let factors: Vec<String> = label
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| **e > 0)
                    .map(|(v, e)| if *e == 1 { format!("x{v}") } else { format!("x{v}^{e}") })
                    .collect();
                if factors.is_empty() {
                    "1".to_string()
                } else {
                    factors.join("*")
                }
            }
        }
    }
}

/// Builds a quiver over `levels` from a basis function and a label-level product.
pub(crate) fn assemble<B, C>(n: usize, side: QuiverSide, levels: &[i64], basis: B, product: C) -> Result<Quiver>
where
    B: Fn(i64, i64) -> Vec<Vec<i64>>,
    C: Fn(i64, i64, i64, &[i64], &[i64]) -> Result<Vec<i64>>,
{
    let mut homs = Vec::new();
    for &i in levels {
        for &j in levels {
            let labels = basis(i, j);
            if !labels.is_empty() {
                homs.push(HomSpace { i, j, degree: 0, basis: labels });
            }
        }
    }
    let lookup: BTreeMap<(i64, i64), &HomSpace> = homs.iter().map(|h| ((h.i, h.j), h)).collect();
    let mut compositions = Vec::new();
    for &i in levels {
        for &j in levels {
            for &k in levels {
                let (Some(first), Some(second), Some(total)) =
                    (lookup.get(&(i, j)), lookup.get(&(j, k)), lookup.get(&(i, k)))
                else {
                    continue;
                };
                let index: BTreeMap<&[i64], usize> =
                    total.basis.iter().enumerate().map(|(r, b)| (b.as_slice(), r)).collect();
                for (f, fb) in first.basis.iter().enumerate() {
                    for (g, gb) in second.basis.iter().enumerate() {
                        let label = product(i, j, k, fb, gb)?;
                        let result = *index.get(label.as_slice()).ok_or_else(|| {
                            Error::MalformedComplex(format!("composite {label:?} missing from hom({i},{k})"))
                        })?;
                        compositions.push(CompositionEntry { i, j, k, f, g, result });
                    }
                }
            }
        }
    }
    Ok(Quiver {
        n,
        side,
        objects: levels.to_vec(),
        homs,
        compositions,
    })
}

/// The quotient quiver on `U(-n-1), ..., U(-1)`.
pub fn quotient_quiver(n: usize) -> Result<Quiver> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    assemble(
        n,
        QuiverSide::Cells,
        &collection_levels(n),
        |i, j| hom_basis(n, i, j).into_iter().map(|e| e.b).collect(),
        |i, j, k, fb, gb| {
            let f = crate::homs::HomElement::new(n, i, j, fb.to_vec())?;
            let g = crate::homs::HomElement::new(n, j, k, gb.to_vec())?;
            Ok(compose(&g, &f)?.b)
        },
    )
}

/// Endomorphisms are spanned by an identity, there are no backward maps,
/// and every hom space sits in degree 0.
pub fn is_strong_exceptional(q: &Quiver) -> bool {
    let position: BTreeMap<i64, usize> = q.objects.iter().enumerate().map(|(p, k)| (*k, p)).collect();
    if position.len() != q.objects.len() {
        return false;
    }
    for h in &q.homs {
        let (Some(pi), Some(pj)) = (position.get(&h.i), position.get(&h.j)) else {
            return false;
        };
        if h.degree != 0 || (pi > pj && !h.basis.is_empty()) {
            return false;
        }
    }
    let table = q.composition_table();
    for &k in &q.objects {
        if q.hom_dim(k, k) != 1 {
            return false;
        }
        for h in q.homs.iter().filter(|h| h.i == k || h.j == k) {
            for x in 0..h.basis.len() {
                let acts = if h.i == k {
                    table.get(&(k, k, h.j, 0, x)) == Some(&x)
                } else {
                    table.get(&(h.i, k, k, x, 0)) == Some(&x)
                };
                if !acts {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_quivers() {
        let q = quotient_quiver(1).unwrap();
        assert_eq!(q.objects, vec![-2, -1]);
        assert_eq!(q.hom_dim(-2, -1), 2);
        assert_eq!(q.hom_dim(-1, -2), 0);

        let q = quotient_quiver(2).unwrap();
        assert_eq!(q.hom_dim(-3, -2), 3);
        assert_eq!(q.hom_dim(-2, -1), 3);
        assert_eq!(q.hom_dim(-3, -1), 6);
    }

    #[test]
    fn strong_exceptional_collections() {
        for n in 1..=5 {
            assert!(is_strong_exceptional(&quotient_quiver(n).unwrap()), "n={n}");
        }
    }

    #[test]
    fn backward_arrow_breaks_exceptionality() {
        let mut q = quotient_quiver(2).unwrap();
        q.homs.push(HomSpace { i: -1, j: -2, degree: 0, basis: vec![vec![0, 0]] });
        assert!(!is_strong_exceptional(&q));
    }

    #[test]
    fn missing_identity_breaks_exceptionality() {
        let mut q = quotient_quiver(2).unwrap();
        q.homs.retain(|h| !(h.i == -2 && h.j == -2));
        assert!(!is_strong_exceptional(&q));
    }

    #[test]
    fn non_identity_endomorphism_breaks_exceptionality() {
        let mut q = quotient_quiver(1).unwrap();
        let entry = q
            .compositions
            .iter_mut()
            .find(|c| c.i == -2 && c.j == -2 && c.k == -1 && c.g == 0)
            .unwrap();
        entry.result = 1;
        assert!(!is_strong_exceptional(&q));
    }

    #[test]
    fn shifted_degree_breaks_exceptionality() {
        let mut q = quotient_quiver(1).unwrap();
        q.homs[1].degree = 1;
        assert!(!is_strong_exceptional(&q));
    }

    #[test]
    fn dot_for_projective_line() {
        let dot = quotient_quiver(1).unwrap().to_dot();
        assert_eq!(dot.matches("->").count(), 2);
        assert_eq!(dot.lines().filter(|l| l.trim_end().ends_with("\";")).count(), 2);
    }

    #[test]
    fn json_round_trip() {
        let q = quotient_quiver(2).unwrap();
        assert_eq!(Quiver::from_json(&q.to_json()).unwrap(), q);
    }
}
