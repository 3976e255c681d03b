//! Pairs of regions `(closure(U_0) ∩ U_1, ∂U_0 ∩ U_1)` on the torus
//! `(R / (n+1)Z)^n`, as unions of open faces of the unit triangulation.
//!
//! For `n = 2` the unit triangulation splits each unit square along its
//! anti-diagonal, so every hyperplane `x_l = c` and `x_1 + x_2 = c` with
//! integer `c` is a union of faces. Cell boundaries are of this form, so each
//! open face lies entirely inside, outside or on the boundary of a cell.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Label `(level, offset)` of the cell `{x_l < a_l, sum x > level + sum a}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellLabel {
    pub level: i64,
    pub offset: Vec<i64>,
}

impl CellLabel {
    pub fn new(n: usize, level: i64, offset: Vec<i64>) -> Result<Self> {
        let top = n as i64;
        let valid = offset.len() == n
            && (-top - 1..=-1).contains(&level)
            && offset.iter().all(|a| (-top..=0).contains(a));
        if valid {
            Ok(Self { level, offset })
        } else {
            Err(Error::InvalidCell { n, level, offset })
        }
    }

    /// Position of `point / scale` relative to the lift translated by `shift`.
    fn locate(&self, point: &[i64], scale: i64, shift: &[i64]) -> Position {
        let mut strict = true;
        let mut corner_sum = self.level;
        for ((x, a), t) in point.iter().zip(&self.offset).zip(shift) {
            let wall = scale * (a + t);
            corner_sum += a + t;
            if *x > wall {
                return Position::Outside;
            }
            strict &= *x < wall;
        }
        let total: i64 = point.iter().sum();
        let floor = scale * corner_sum;
        if total < floor {
            return Position::Outside;
        }
        strict &= total > floor;
        if strict {
            Position::Interior
        } else {
            Position::Boundary
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Position {
    Interior,
    Boundary,
    Outside,
}

/// Shape of an open unit face relative to its anchor vertex `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceShape {
    Vertex,
    /// `n = 1`: the open edge `(p, p+1)`.
    Edge,
    /// From `p` to `p + e1`.
    HEdge,
    /// From `p` to `p + e2`.
    VEdge,
    /// From `p + e1` to `p + e2`.
    DEdge,
    /// Open triangle `p, p + e1, p + e2`.
    Lower,
    /// Open triangle `p + e1, p + e2, p + e1 + e2`.
    Upper,
}

impl FaceShape {
    pub fn shapes(n: usize) -> &'static [FaceShape] {
        match n {
            1 => &[FaceShape::Vertex, FaceShape::Edge],
            _ => &[
                FaceShape::Vertex,
                FaceShape::HEdge,
                FaceShape::VEdge,
                FaceShape::DEdge,
                FaceShape::Lower,
                FaceShape::Upper,
            ],
        }
    }

    pub fn dim(self) -> usize {
        match self {
            FaceShape::Vertex => 0,
            FaceShape::Edge | FaceShape::HEdge | FaceShape::VEdge | FaceShape::DEdge => 1,
            FaceShape::Lower | FaceShape::Upper => 2,
        }
    }

    /// Barycenter offset from the anchor, scaled by 6.
    fn barycenter6(self) -> &'static [i64] {
        match self {
            FaceShape::Vertex => &[0, 0],
            FaceShape::Edge => &[3],
            FaceShape::HEdge => &[3, 0],
            FaceShape::VEdge => &[0, 3],
            FaceShape::DEdge => &[3, 3],
            FaceShape::Lower => &[2, 2],
            FaceShape::Upper => &[4, 4],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Eq,
    Lt,
}

/// `coeffs · x (= | <) rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearConstraint {
    pub coeffs: Vec<i64>,
    pub relation: Relation,
    pub rhs: i64,
}

impl LinearConstraint {
    fn new(coeffs: Vec<i64>, relation: Relation, rhs: i64) -> Self {
        Self { coeffs, relation, rhs }
    }

    /// Evaluates at `point / scale`.
    pub fn holds(&self, point: &[i64], scale: i64) -> bool {
        let lhs: i64 = self.coeffs.iter().zip(point).map(|(c, x)| c * x).sum();
        match self.relation {
            Relation::Eq => lhs == scale * self.rhs,
            Relation::Lt => lhs < scale * self.rhs,
        }
    }
}

/// An open face of the unit triangulation; the anchor is reduced into `{0, ..., n}^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UnitFace {
    pub anchor: Vec<i64>,
    pub shape: FaceShape,
}

impl UnitFace {
    pub fn new(anchor: Vec<i64>, shape: FaceShape) -> Self {
        let m = anchor.len() as i64 + 1;
        Self {
            anchor: anchor.into_iter().map(|x| x.rem_euclid(m)).collect(),
            shape,
        }
    }

    pub fn dim(&self) -> usize {
        self.shape.dim()
    }

    /// All faces of the unit triangulation of the torus.
    pub fn all(n: usize) -> Vec<UnitFace> {
        let m = n as i64 + 1;
        let mut faces = Vec::new();
        let anchors: Vec<Vec<i64>> = match n {
            1 => (0..m).map(|p| vec![p]).collect(),
            _ => (0..m).flat_map(|p| (0..m).map(move |q| vec![p, q])).collect(),
        };
        for anchor in anchors {
            for shape in FaceShape::shapes(n) {
                faces.push(UnitFace { anchor: anchor.clone(), shape: *shape });
            }
        }
        faces
    }

    /// Barycenter of the anchored lift, scaled by 6.
    pub fn barycenter6(&self) -> Vec<i64> {
        self.anchor
            .iter()
            .zip(self.shape.barycenter6())
            .map(|(p, o)| 6 * p + o)
            .collect()
    }

    /// The face containing `point / scale`, found from its integer part and
    /// the pattern of its fractional part.
    pub fn containing(point: &[i64], scale: i64) -> UnitFace {
        let anchor: Vec<i64> = point.iter().map(|x| x.div_euclid(scale)).collect();
        let frac: Vec<i64> = point.iter().map(|x| x.rem_euclid(scale)).collect();
        let shape = match frac.as_slice() {
            [0] => FaceShape::Vertex,
            [_] => FaceShape::Edge,
            [0, 0] => FaceShape::Vertex,
            [_, 0] => FaceShape::HEdge,
            [0, _] => FaceShape::VEdge,
            [f, g] if f + g == scale => FaceShape::DEdge,
            [f, g] if f + g < scale => FaceShape::Lower,
            _ => FaceShape::Upper,
        };
        UnitFace::new(anchor, shape)
    }

    /// Equalities and strict inequalities cutting out the anchored lift.
    pub fn constraints(&self) -> Vec<LinearConstraint> {
        use LinearConstraint as C;
        use Relation::{Eq, Lt};
        let a = &self.anchor;
        match (self.shape, a.len()) {
            (FaceShape::Vertex, 1) => vec![C::new(vec![1], Eq, a[0])],
            (FaceShape::Edge, _) => vec![C::new(vec![-1], Lt, -a[0]), C::new(vec![1], Lt, a[0] + 1)],
            (FaceShape::Vertex, _) => vec![C::new(vec![1, 0], Eq, a[0]), C::new(vec![0, 1], Eq, a[1])],
            (FaceShape::HEdge, _) => vec![
                C::new(vec![0, 1], Eq, a[1]),
                C::new(vec![-1, 0], Lt, -a[0]),
                C::new(vec![1, 0], Lt, a[0] + 1),
            ],
            (FaceShape::VEdge, _) => vec![
                C::new(vec![1, 0], Eq, a[0]),
                C::new(vec![0, -1], Lt, -a[1]),
                C::new(vec![0, 1], Lt, a[1] + 1),
            ],
            (FaceShape::DEdge, _) => vec![
                C::new(vec![1, 1], Eq, a[0] + a[1] + 1),
                C::new(vec![-1, 0], Lt, -a[0]),
                C::new(vec![1, 0], Lt, a[0] + 1),
            ],
            (FaceShape::Lower, _) => vec![
                C::new(vec![-1, 0], Lt, -a[0]),
                C::new(vec![0, -1], Lt, -a[1]),
                C::new(vec![1, 1], Lt, a[0] + a[1] + 1),
            ],
            (FaceShape::Upper, _) => vec![
                C::new(vec![1, 0], Lt, a[0] + 1),
                C::new(vec![0, 1], Lt, a[1] + 1),
                C::new(vec![-1, -1], Lt, -(a[0] + a[1] + 1)),
            ],
        }
    }
}

/// A finite union of open unit faces.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyhedralRegion {
    pub faces: BTreeSet<UnitFace>,
}

impl PolyhedralRegion {
    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, face: &UnitFace) -> bool {
        self.faces.contains(face)
    }

    /// Compactly supported Euler characteristic `sum (-1)^dim`.
    pub fn open_euler(&self) -> i64 {
        self.faces.iter().map(|f| if f.dim() % 2 == 0 { 1 } else { -1 }).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionPair {
    pub n: usize,
    pub outer: CellLabel,
    pub inner: CellLabel,
    /// `closure(outer) ∩ inner`.
    pub x: PolyhedralRegion,
    /// `∂outer ∩ inner`.
    pub a: PolyhedralRegion,
}

fn shifts(n: usize) -> Vec<Vec<i64>> {
    let m = n as i64 + 1;
    let range = -1..=3;
    match n {
        1 => range.map(|s| vec![s * m]).collect(),
        _ => range
            .clone()
            .flat_map(|s| (-1..=3).map(move |t| vec![s * m, t * m]))
            .collect(),
    }
}

fn position_on_torus(label: &CellLabel, point: &[i64], scale: i64, shifts: &[Vec<i64>]) -> Position {
    let mut best = Position::Outside;
    for shift in shifts {
        match label.locate(point, scale, shift) {
            Position::Interior => return Position::Interior,
            Position::Boundary => best = Position::Boundary,
            Position::Outside => {}
        }
    }
    best
}

/// `(closure(U^a(i)) ∩ U^b(j), ∂U^a(i) ∩ U^b(j))` for `n ∈ {1, 2}`.
pub fn region_pair(n: usize, outer: &CellLabel, inner: &CellLabel) -> Result<RegionPair> {
    if !(1..=2).contains(&n) {
        return Err(Error::OracleDimension(n));
    }
    CellLabel::new(n, outer.level, outer.offset.clone())?;
    CellLabel::new(n, inner.level, inner.offset.clone())?;
    let shifts = shifts(n);
    let mut x = PolyhedralRegion::default();
    let mut a = PolyhedralRegion::default();
    for face in UnitFace::all(n) {
        let p = face.barycenter6();
        if position_on_torus(inner, &p, 6, &shifts) != Position::Interior {
            continue;
        }
        match position_on_torus(outer, &p, 6, &shifts) {
            Position::Interior => {
                x.faces.insert(face);
            }
            Position::Boundary => {
                x.faces.insert(face.clone());
                a.faces.insert(face);
            }
            Position::Outside => {}
        }
    }
    Ok(RegionPair {
        n,
        outer: outer.clone(),
        inner: inner.clone(),
        x,
        a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(n: usize, level: i64, offset: &[i64]) -> CellLabel {
        CellLabel::new(n, level, offset.to_vec()).unwrap()
    }

    #[test]
    fn face_counts() {
        assert_eq!(UnitFace::all(1).len(), 4);
        let faces = UnitFace::all(2);
        assert_eq!(faces.len(), 54);
        let euler: i64 = faces.iter().map(|f| if f.dim() % 2 == 0 { 1 } else { -1 }).sum();
        assert_eq!(euler, 0);
    }

    #[test]
    fn constraints_hold_at_barycenters() {
        for n in 1..=2 {
            for face in UnitFace::all(n) {
                let p = face.barycenter6();
                assert!(face.constraints().iter().all(|c| c.holds(&p, 6)), "{face:?}");
                assert_eq!(UnitFace::containing(&p, 6), face);
            }
        }
    }

    #[test]
    fn faces_are_disjoint() {
        // Every barycenter satisfies the constraints of exactly one face.
        let faces = UnitFace::all(2);
        for f in &faces {
            let p = f.barycenter6();
            let hits = faces
                .iter()
                .filter(|g| g.constraints().iter().all(|c| c.holds(&p, 6)))
                .count();
            assert_eq!(hits, 1);
        }
    }

    #[test]
    fn contained_pair_has_empty_boundary_part() {
        let pair = region_pair(2, &label(2, -2, &[0, 0]), &label(2, -1, &[0, 0])).unwrap();
        assert!(pair.a.is_empty());
        // U^0(-1) for n = 2 is one open lower-left triangle: a single 2-face.
        assert_eq!(pair.x.faces.len(), 1);
        assert_eq!(pair.x.faces.iter().next().unwrap().shape, FaceShape::Upper);
    }

    #[test]
    fn overlapping_arcs_on_circle() {
        // Outer (-1, 0); inner (-3, -1) ≡ (-1, 1) meets [-1, 0] in (-1, 0].
        let pair = region_pair(1, &label(1, -1, &[0]), &label(1, -2, &[-1])).unwrap();
        assert_eq!(pair.x.faces.len(), 2);
        assert_eq!(pair.a.faces.len(), 1);
        let endpoint = pair.a.faces.iter().next().unwrap();
        assert_eq!(endpoint, &UnitFace::new(vec![0], FaceShape::Vertex));
    }

    #[test]
    fn disjoint_closures_give_empty_pair() {
        // n = 2: the closures of U^0(-1) and U^(-1,-1)(-1) do not meet.
        let pair = region_pair(2, &label(2, -1, &[0, 0]), &label(2, -1, &[-1, -1])).unwrap();
        assert!(pair.x.is_empty());
        assert!(pair.a.is_empty());
    }

    #[test]
    fn rejects_large_dimension() {
        let l = CellLabel { level: -1, offset: vec![0, 0, 0] };
        assert_eq!(region_pair(3, &l, &l), Err(Error::OracleDimension(3)));
    }
}
