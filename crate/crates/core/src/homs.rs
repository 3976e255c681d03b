//! Open cells on the covering torus `(R / (n+1)Z)^n`, their containments, and
//! the hom spaces of the quotient category spanned by `U(-n-1), ..., U(-1)`.
//!
//! A cell `U^a(k) = {x_l < a_l, sum x > k + sum a}` is labelled by its level
//! `k` and its offset `a` modulo `n+1`. The basis element `e^b_{i,j}` of
//! `hom(U(i), U(j))` records the inclusion `U^b(j) ⊂ U^0(i)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Canonical representative of `value mod (n+1)` in `{-n, ..., 0}`.
pub fn reduce_offset(value: i64, n: usize) -> i64 {
    let m = n as i64 + 1;
    let r = value.rem_euclid(m);
    if r == 0 {
        0
    } else {
        r - m
    }
}

/// Iterates over `{lo, ..., hi}^n` in lexicographic order.
pub(crate) fn lattice_box(n: usize, lo: i64, hi: i64) -> impl Iterator<Item = Vec<i64>> {
    let width = (hi - lo + 1).max(0) as u64;
    let total = if width == 0 { 0 } else { width.pow(n as u32) };
    (0..total).map(move |mut code| {
        let mut v = vec![lo; n];
        for slot in v.iter_mut().rev() {
            *slot = lo + (code % width) as i64;
            code /= width;
        }
        v
    })
}

/// The levels `-n-1, ..., -1` of the collection.
pub fn collection_levels(n: usize) -> Vec<i64> {
    (-(n as i64) - 1..=-1).collect()
}

/// A cell `U^a(k)` of the covering torus; the offset is stored reduced into `{-n, ..., 0}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellObject {
    pub n: usize,
    pub k: i64,
    pub a: Vec<i64>,
}

impl CellObject {
    pub fn new(n: usize, k: i64, a: Vec<i64>) -> Result<Self> {
        let top = n as i64;
        if n == 0 || a.len() != n || !(-top - 1..=-1).contains(&k) {
            return Err(Error::InvalidCell { n, level: k, offset: a });
        }
        let a = a.into_iter().map(|x| reduce_offset(x, n)).collect();
        Ok(Self { n, k, a })
    }

    /// `U^0(k)`, the distinguished lift of the quotient object `U(k)`.
    pub fn base(n: usize, k: i64) -> Result<Self> {
        Self::new(n, k, vec![0; n])
    }

    /// All `(n+1)^n` lifts of `U(k)`.
    pub fn orbit(n: usize, k: i64) -> Result<Vec<Self>> {
        lattice_box(n, -(n as i64), 0)
            .map(|a| Self::new(n, k, a))
            .collect()
    }
}

impl fmt::Display for CellObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U^{:?}({})", self.a, self.k)
    }
}

/// The unique lift `c ≡ inner.a - outer.a` with `U^{outer.a + c}(j) ⊂ U^{outer.a}(i)`, if any.
///
/// Lifts are searched in the window `[-(n+1), n+1]^n`.
pub fn containment_lift(outer: &CellObject, inner: &CellObject) -> Option<Vec<i64>> {
    if outer.n != inner.n {
        return None;
    }
    let n = outer.n;
    let m = n as i64 + 1;
    let residue: Vec<i64> = inner.a.iter().zip(&outer.a).map(|(b, a)| (b - a).rem_euclid(m)).collect();
    let threshold = outer.k - inner.k;
    let mut found = None;
    for c in lattice_box(n, -m, m) {
        let congruent = c.iter().zip(&residue).all(|(x, r)| x.rem_euclid(m) == *r);
        if congruent && c.iter().all(|x| *x <= 0) && c.iter().sum::<i64>() >= threshold {
            debug_assert!(found.is_none(), "two lifts fit inside one cell");
            found = Some(c);
        }
    }
    found
}

/// Whether `inner ⊂ outer` on the torus.
pub fn cell_contains(outer: &CellObject, inner: &CellObject) -> bool {
    containment_lift(outer, inner).is_some()
}

/// Basis element `e^b_{i,j}` of `hom(U(i), U(j))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HomElement {
    pub n: usize,
    pub source: i64,
    pub target: i64,
    pub b: Vec<i64>,
}

impl HomElement {
    pub fn new(n: usize, source: i64, target: i64, b: Vec<i64>) -> Result<Self> {
        let valid = b.len() == n && b.iter().all(|x| *x <= 0) && b.iter().sum::<i64>() >= source - target;
        if valid {
            Ok(Self { n, source, target, b })
        } else {
            Err(Error::InvalidHomElement { from: source, to: target, b })
        }
    }

    pub fn identity(n: usize, level: i64) -> Self {
        Self {
            n,
            source: level,
            target: level,
            b: vec![0; n],
        }
    }

    pub fn degree(&self) -> i64 {
        0
    }
}

impl fmt::Display for HomElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e^{:?}_({},{})", self.b, self.source, self.target)
    }
}

/// `N_n(j - i)` via the closed form `C(j - i + n, n)`, zero when `j < i`.
pub fn hom_dimension(n: usize, i: i64, j: i64) -> u128 {
    if j < i {
        0
    } else {
        crate::binomial((j - i) as u64 + n as u64, n as u64)
    }
}

/// All `b` with `b_l <= 0` and `sum b >= i - j`, identity first, then by
/// decreasing `sum b` and lexicographically within a fixed sum.
pub fn hom_basis(n: usize, i: i64, j: i64) -> Vec<HomElement> {
    if j < i {
        return Vec::new();
    }
    let depth = j - i;
    let mut basis: Vec<HomElement> = lattice_box(n, -depth, 0)
        .filter(|b| b.iter().sum::<i64>() >= -depth)
        .map(|b| HomElement { n, source: i, target: j, b })
        .collect();
    basis.sort_by(|x, y| {
        let (sx, sy) = (x.b.iter().sum::<i64>(), y.b.iter().sum::<i64>());
        sy.cmp(&sx).then_with(|| x.b.cmp(&y.b))
    });
    basis
}

/// Graded piece of `hom(U(i), U(j))`: the basis in degree 0, empty otherwise.
pub fn graded_hom_basis(n: usize, i: i64, j: i64, degree: i64) -> Vec<HomElement> {
    if degree == 0 {
        hom_basis(n, i, j)
    } else {
        Vec::new()
    }
}

/// `g ∘ f` with `f = e^b_{i,j}` and `g = e^c_{j,k}`: the result is `e^{b+c}_{i,k}`.
pub fn compose(g: &HomElement, f: &HomElement) -> Result<HomElement> {
    if g.source != f.target || g.n != f.n {
        return Err(Error::NotComposable {
            first_target: f.target,
            second_source: g.source,
        });
    }
    let b = f.b.iter().zip(&g.b).map(|(x, y)| x + y).collect();
    HomElement::new(f.n, f.source, g.target, b)
}

/// An element `alpha` of the deck group `(Z / (n+1))^n`, stored in `{0, ..., n}^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeckElement {
    pub n: usize,
    pub alpha: Vec<i64>,
}

impl DeckElement {
    pub fn new(n: usize, alpha: Vec<i64>) -> Result<Self> {
        if alpha.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: alpha.len() });
        }
        let m = n as i64 + 1;
        Ok(Self {
            n,
            alpha: alpha.into_iter().map(|x| x.rem_euclid(m)).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Self { n, alpha: vec![0; n] }
    }

    pub fn all(n: usize) -> Vec<Self> {
        lattice_box(n, 0, n as i64).map(|alpha| Self { n, alpha }).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let m = self.n as i64 + 1;
        Self {
            n: self.n,
            alpha: self.alpha.iter().zip(&other.alpha).map(|(x, y)| (x + y).rem_euclid(m)).collect(),
        }
    }
}

/// A nonzero morphism `U^a(i) -> U^b(j)` of the cover, i.e. an inclusion `U^b(j) ⊂ U^a(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverMorphism {
    pub source: CellObject,
    pub target: CellObject,
}

impl CoverMorphism {
    pub fn new(source: CellObject, target: CellObject) -> Result<Self> {
        if cell_contains(&source, &target) {
            Ok(Self { source, target })
        } else {
            Err(Error::InvalidHomElement {
                from: source.k,
                to: target.k,
                b: target.a,
            })
        }
    }

    /// The orbit class `e^c_{i,j}` where `c` is the containment lift.
    pub fn to_quotient(&self) -> HomElement {
        let c = containment_lift(&self.source, &self.target).expect("morphism is an inclusion");
        HomElement {
            n: self.source.n,
            source: self.source.k,
            target: self.target.k,
            b: c,
        }
    }

    pub fn compose(&self, first: &CoverMorphism) -> Result<CoverMorphism> {
        if first.target != self.source {
            return Err(Error::NotComposable {
                first_target: first.target.k,
                second_source: self.source.k,
            });
        }
        CoverMorphism::new(first.source.clone(), self.target.clone())
    }
}

/// Action of the deck group on the cover.
pub trait GammaAction: Sized {
    fn gamma_act(&self, alpha: &DeckElement) -> Self;
}

impl GammaAction for CellObject {
    fn gamma_act(&self, alpha: &DeckElement) -> Self {
        let a = self.a.iter().zip(&alpha.alpha).map(|(x, y)| reduce_offset(x + y, self.n)).collect();
        Self { n: self.n, k: self.k, a }
    }
}

impl GammaAction for CoverMorphism {
    fn gamma_act(&self, alpha: &DeckElement) -> Self {
        Self {
            source: self.source.gamma_act(alpha),
            target: self.target.gamma_act(alpha),
        }
    }
}

/// `alpha · x`, translating every offset by `alpha` modulo `n+1`.
pub fn gamma_act<T: GammaAction>(alpha: &DeckElement, x: &T) -> T {
    x.gamma_act(alpha)
}
