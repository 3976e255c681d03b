//! Compact simplicial models of region pairs and their relative cohomology.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::linalg::{sparse_rank, SparseMatrix};
use super::region::{RegionPair, UnitFace};
use crate::error::{Error, Result};

/// Sorted vertex indices; the order fixes the orientation.
pub type Simplex = Vec<usize>;

/// A finite simplicial complex `X` with a subcomplex `A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialPair {
    pub n: usize,
    /// Vertex coordinates, sorted lexicographically.
    pub vertices: Vec<Vec<Rational64>>,
    /// Simplices of `X` by dimension.
    pub x: Vec<BTreeSet<Simplex>>,
    pub a: BTreeSet<Simplex>,
}

impl SimplicialPair {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            vertices: Vec::new(),
            x: vec![BTreeSet::new(); n + 1],
            a: BTreeSet::new(),
        }
    }

    /// Checks that `X` is closed under faces and that `A ⊆ X` is a subcomplex.
    pub fn validate(&self) -> Result<()> {
        for (d, layer) in self.x.iter().enumerate() {
            for s in layer {
                if s.len() != d + 1 || s.windows(2).any(|w| w[0] >= w[1]) || s.iter().any(|v| *v >= self.vertices.len()) {
                    return Err(Error::MalformedComplex(format!("bad simplex {s:?} in dimension {d}")));
                }
                for face in boundary_faces(s) {
                    if d > 0 && !self.x[d - 1].contains(&face) {
                        return Err(Error::MalformedComplex(format!("face {face:?} of {s:?} missing")));
                    }
                    if self.a.contains(s) && d > 0 && !self.a.contains(&face) {
                        return Err(Error::MalformedComplex(format!("A not closed: {face:?} of {s:?}")));
                    }
                }
            }
        }
        for s in &self.a {
            if s.is_empty() || s.len() > self.x.len() || !self.x[s.len() - 1].contains(s) {
                return Err(Error::MalformedComplex(format!("{s:?} in A but not in X")));
            }
        }
        Ok(())
    }

    /// Simplices of `X \ A` in dimension `d`, in a fixed order.
    pub fn relative_cells(&self, d: usize) -> Vec<&Simplex> {
        self.x
            .get(d)
            .map(|layer| layer.iter().filter(|s| !self.a.contains(*s)).collect())
            .unwrap_or_default()
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..self.x.len())
            .map(|d| {
                let c = self.relative_cells(d).len() as i64;
                if d % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .sum()
    }
}

/// Codimension-one faces, the `m`-th omitting vertex `m`.
fn boundary_faces(s: &[usize]) -> Vec<Simplex> {
    if s.len() <= 1 {
        return Vec::new();
    }
    (0..s.len())
        .map(|m| s.iter().enumerate().filter(|(p, _)| *p != m).map(|(_, v)| *v).collect())
        .collect()
}

/// Largest admissible shrink: a quarter of the unit vertex spacing.
pub fn epsilon_bound() -> Rational64 {
    Rational64::new(1, 4)
}

/// Replaces the open inner cell by its closed `epsilon`-shrink
/// `K = {x_l <= b_l - eps, sum x >= j + sum b + eps}` and triangulates `K`
/// by the unit triangulation scaled by `1 / denom(eps)`. Each fine simplex
/// lies in one open unit face, which decides membership in `X` and `A`.
pub fn shrink_and_triangulate(pair: &RegionPair, epsilon: Rational64) -> Result<SimplicialPair> {
    let n = pair.n;
    if !(1..=2).contains(&n) {
        return Err(Error::OracleDimension(n));
    }
    if epsilon <= Rational64::from_integer(0) || epsilon >= epsilon_bound() {
        return Err(Error::EpsilonOutOfRange {
            epsilon: epsilon.to_string(),
            bound: epsilon_bound().to_string(),
        });
    }
    if pair.x.is_empty() {
        return Ok(SimplicialPair::empty(n));
    }
    let q = *epsilon.denom();
    let p = *epsilon.numer();
    let b = &pair.inner.offset;
    let walls: Vec<i64> = b.iter().map(|bl| q * bl - p).collect();
    let floor = q * (pair.inner.level + b.iter().sum::<i64>()) + p;
    let inside = |v: &[i64]| v.iter().zip(&walls).all(|(x, w)| x <= w) && v.iter().sum::<i64>() >= floor;

    // Top-dimensional fine simplices inside K, by lower-left corner.
    let mut tops: Vec<Vec<Vec<i64>>> = Vec::new();
    match n {
        1 => {
            for v in floor..walls[0] {
                let s = vec![vec![v], vec![v + 1]];
                if s.iter().all(|x| inside(x)) {
                    tops.push(s);
                }
            }
        }
        _ => {
            for u in floor - walls[1] - 1..=walls[0] {
                for w in floor - walls[0] - 1..=walls[1] {
                    let lower = vec![vec![u, w], vec![u + 1, w], vec![u, w + 1]];
                    let upper = vec![vec![u + 1, w], vec![u, w + 1], vec![u + 1, w + 1]];
                    for s in [lower, upper] {
                        if s.iter().all(|x| inside(x)) {
                            tops.push(s);
                        }
                    }
                }
            }
        }
    }

    // All faces of the top simplices, as sorted coordinate lists.
    let mut by_coords: Vec<BTreeSet<Vec<Vec<i64>>>> = vec![BTreeSet::new(); n + 1];
    for mut top in tops {
        top.sort();
        let k = top.len();
        for mask in 1u32..(1 << k) {
            let face: Vec<Vec<i64>> = (0..k).filter(|m| mask & (1 << m) != 0).map(|m| top[m].clone()).collect();
            by_coords[face.len() - 1].insert(face);
        }
    }

    let index: BTreeMap<Vec<i64>, usize> = by_coords[0]
        .iter()
        .enumerate()
        .map(|(idx, s)| (s[0].clone(), idx))
        .collect();
    let vertices = index
        .keys()
        .map(|v| v.iter().map(|x| Rational64::new(*x, q)).collect())
        .collect();

    let mut out = SimplicialPair {
        n,
        vertices,
        x: vec![BTreeSet::new(); n + 1],
        a: BTreeSet::new(),
    };
    for (d, layer) in by_coords.iter().enumerate() {
        for s in layer {
            let scale = q * (d as i64 + 1);
            let bary: Vec<i64> = (0..n).map(|l| s.iter().map(|v| v[l]).sum()).collect();
            let face = UnitFace::containing(&bary, scale);
            if !pair.x.contains(&face) {
                continue;
            }
            let simplex: Simplex = s.iter().map(|v| index[v]).collect();
            if pair.a.contains(&face) {
                out.a.insert(simplex.clone());
            }
            out.x[d].insert(simplex);
        }
    }
    out.validate()?;
    Ok(out)
}

/// Matrix of the relative coboundary `C^d(X, A) -> C^{d+1}(X, A)`.
pub fn coboundary_matrix(pair: &SimplicialPair, d: usize) -> SparseMatrix {
    let cols: BTreeMap<&Simplex, usize> = pair.relative_cells(d).into_iter().enumerate().map(|(c, s)| (s, c)).collect();
    let rows = pair.relative_cells(d + 1);
    let mut matrix = SparseMatrix::zeros(rows.len(), cols.len());
    for (r, s) in rows.into_iter().enumerate() {
        for (m, face) in boundary_faces(s).iter().enumerate() {
            if let Some(c) = cols.get(face) {
                let sign = if m % 2 == 0 { 1 } else { -1 };
                matrix.push(r, *c, sign);
            }
        }
    }
    matrix
}

/// Graded dimensions of a cohomology theory in degrees `0..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BettiProfile {
    pub betti: Vec<usize>,
}

impl BettiProfile {
    pub fn zero(n: usize) -> Self {
        Self { betti: vec![0; n + 1] }
    }

    pub fn concentrated(n: usize, dim: usize) -> Self {
        let mut betti = vec![0; n + 1];
        betti[0] = dim;
        Self { betti }
    }

    pub fn add(&mut self, other: &BettiProfile) {
        for (x, y) in self.betti.iter_mut().zip(&other.betti) {
            *x += y;
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(d, b)| if d % 2 == 0 { *b as i64 } else { -(*b as i64) })
            .sum()
    }
}

/// `H^*(X, A; Q)` from exact ranks of the relative coboundaries.
pub fn relative_cohomology(pair: &SimplicialPair) -> Result<BettiProfile> {
    let top = pair.x.len();
    let mut ranks = Vec::with_capacity(top);
    for d in 0..top {
        ranks.push(sparse_rank(&coboundary_matrix(pair, d))?);
    }
    let betti: Vec<usize> = (0..top)
        .map(|d| {
            let cells = pair.relative_cells(d).len();
            let below = if d == 0 { 0 } else { ranks[d - 1] };
            cells - ranks[d] - below
        })
        .collect();
    let profile = BettiProfile { betti };
    if profile.euler_characteristic() != pair.euler_characteristic() {
        return Err(Error::MalformedComplex("Euler characteristic mismatch".into()));
    }
    Ok(profile)
}

#[cfg(test)]
mod tests {
    use super::super::linalg::dense_rank;
    use super::super::region::{region_pair, CellLabel};
    use super::*;

    fn label(n: usize, level: i64, offset: &[i64]) -> CellLabel {
        CellLabel::new(n, level, offset.to_vec()).unwrap()
    }

    fn eps(p: i64, q: i64) -> Rational64 {
        Rational64::new(p, q)
    }

    #[test]
    fn epsilon_bound_is_enforced() {
        let pair = region_pair(1, &label(1, -2, &[0]), &label(1, -1, &[0])).unwrap();
        assert!(shrink_and_triangulate(&pair, eps(1, 4)).is_err());
        assert!(shrink_and_triangulate(&pair, eps(0, 1)).is_err());
        assert!(shrink_and_triangulate(&pair, eps(-1, 5)).is_err());
        assert!(shrink_and_triangulate(&pair, eps(1, 5)).is_ok());
    }

    #[test]
    fn arc_becomes_path() {
        // Inner (-1, 0) shrinks to [-4/5, -1/5]: 4 vertices, 3 edges.
        let pair = region_pair(1, &label(1, -2, &[0]), &label(1, -1, &[0])).unwrap();
        let complex = shrink_and_triangulate(&pair, eps(1, 5)).unwrap();
        assert_eq!(complex.x[0].len(), 4);
        assert_eq!(complex.x[1].len(), 3);
        assert!(complex.a.is_empty());
        assert_eq!(relative_cohomology(&complex).unwrap().betti, vec![1, 0]);
    }

    #[test]
    fn half_open_arc_with_endpoint() {
        let pair = region_pair(1, &label(1, -1, &[0]), &label(1, -2, &[-1])).unwrap();
        let complex = shrink_and_triangulate(&pair, eps(1, 5)).unwrap();
        assert_eq!(complex.a.len(), 1);
        assert_eq!(relative_cohomology(&complex).unwrap().betti, vec![0, 0]);
    }

    #[test]
    fn triangle_cell_is_tiled() {
        let pair = region_pair(2, &label(2, -3, &[0, 0]), &label(2, -2, &[0, 0])).unwrap();
        let complex = shrink_and_triangulate(&pair, eps(1, 10)).unwrap();
        // Side 2 - 3/10 = 17/10, i.e. 17 fine units: 17^2 triangles.
        assert_eq!(complex.x[2].len(), 289);
        assert_eq!(complex.euler_characteristic(), 1);
        assert_eq!(relative_cohomology(&complex).unwrap().betti, vec![1, 0, 0]);
    }

    #[test]
    fn empty_region_gives_empty_complex() {
        let pair = region_pair(2, &label(2, -1, &[0, 0]), &label(2, -1, &[-1, -1])).unwrap();
        let complex = shrink_and_triangulate(&pair, eps(1, 5)).unwrap();
        assert!(complex.x.iter().all(|l| l.is_empty()));
        assert_eq!(relative_cohomology(&complex).unwrap().betti, vec![0, 0, 0]);
    }

    #[test]
    fn x_equal_to_a_has_no_cohomology() {
        let pair = region_pair(2, &label(2, -2, &[0, 0]), &label(2, -1, &[0, 0])).unwrap();
        let mut complex = shrink_and_triangulate(&pair, eps(1, 5)).unwrap();
        complex.a = complex.x.iter().flatten().cloned().collect();
        complex.validate().unwrap();
        assert_eq!(relative_cohomology(&complex).unwrap().betti, vec![0, 0, 0]);
    }

    #[test]
    fn coboundary_squares_to_zero() {
        let pair = region_pair(2, &label(2, -3, &[0, 0]), &label(2, -2, &[-1, 0])).unwrap();
        let complex = shrink_and_triangulate(&pair, eps(1, 5)).unwrap();
        let d0 = coboundary_matrix(&complex, 0).to_dense();
        let d1 = coboundary_matrix(&complex, 1).to_dense();
        for row in &d1 {
            for c in 0..d0.first().map_or(0, Vec::len) {
                let v: i128 = row.iter().zip(&d0).map(|(x, r)| x * r[c]).sum();
                assert_eq!(v, 0);
            }
        }
    }

    #[test]
    fn sparse_and_dense_ranks_agree_on_complexes() {
        let pair = region_pair(2, &label(2, -2, &[0, 0]), &label(2, -3, &[-1, -2])).unwrap();
        let complex = shrink_and_triangulate(&pair, eps(1, 5)).unwrap();
        for d in 0..2 {
            let m = coboundary_matrix(&complex, d);
            assert_eq!(sparse_rank(&m).unwrap(), dense_rank(&m.to_dense()).unwrap());
        }
    }

    #[test]
    fn malformed_pairs_are_rejected() {
        let mut complex = SimplicialPair::empty(1);
        complex.vertices = vec![vec![Rational64::from_integer(0)], vec![Rational64::from_integer(1)]];
        complex.x[1].insert(vec![0, 1]);
        assert!(complex.validate().is_err());
        complex.x[0].insert(vec![0]);
        complex.x[0].insert(vec![1]);
        complex.validate().unwrap();
        complex.a.insert(vec![0, 1]);
        assert!(complex.validate().is_err());
    }
}
