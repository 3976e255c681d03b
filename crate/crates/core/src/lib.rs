//! Both sides of the T-duality picture for projective space `P^n`.
//!
//! The B-side is the line-bundle collection `O(-n-1), ..., O(-1)` with monomial
//! hom spaces. The A-side is built in two layers: the Lagrangian branes `L(k)`
//! in the Landau-Ginzburg mirror (numerical checks in [`geometry`] and
//! [`branes`]) and the combinatorial category of open cells on the covering
//! torus ([`homs`]). [`beilinson`] compares the two quivers exactly, and
//! [`oracle`] recomputes the hom dimensions as relative cohomology of
//! polyhedral pairs with exact arithmetic.

pub mod beilinson;
pub mod branes;
pub mod error;
pub mod geometry;
pub mod homs;
pub mod oracle;
pub mod quiver;
pub mod report;

pub use error::{Error, Result};

/// Binomial coefficient `C(top, bottom)`, zero when `bottom > top`.
pub fn binomial(top: u64, bottom: u64) -> u128 {
    if bottom > top {
        return 0;
    }
    let bottom = bottom.min(top - bottom);
    let mut acc: u128 = 1;
    for step in 0..bottom {
        // acc * (top - step) is divisible by (step + 1) at every step.
        acc = acc * u128::from(top - step) / u128::from(step + 1);
    }
    acc
}
