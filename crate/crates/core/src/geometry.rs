//! Moment-map geometry of `P^n` and the mirror moduli space `M`.
//!
//! A point of `M` is a torus fiber `L(r)` together with a flat `U(1)`
//! connection `sum gamma_i dtheta_i`. It carries three coordinate systems:
//! `(r, gamma)`, `(y, gamma)` with `y = log r`, and the complex coordinates
//! `z_j = exp(-2 pi r_j^2 / (1 + |r|^2) + 2 pi i gamma_j)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::report::CheckReport;

/// Slack used when validating floating-point simplex membership.
pub const SIMPLEX_SLACK: f64 = 1e-12;

/// Relative tolerance used to compare normalized projective points.
pub const PROJECTIVE_REL_TOL: f64 = 1e-12;

/// A point `(z_0 : ... : z_n)` of `P^n`, normalized so that the first
/// nonzero coordinate equals 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectivePoint {
    homogeneous: Vec<Complex64>,
}

impl ProjectivePoint {
    pub fn new(homogeneous: Vec<Complex64>) -> Result<Self> {
        if homogeneous.len() < 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: homogeneous.len(),
            });
        }
        let lead = homogeneous
            .iter()
            .copied()
            .find(|c| *c != Complex64::new(0.0, 0.0))
            .ok_or(Error::ZeroProjectivePoint)?;
        Ok(Self {
            homogeneous: homogeneous.into_iter().map(|c| c / lead).collect(),
        })
    }

    /// Point `(1 : r_1 : ... : r_n)` with real coordinates.
    pub fn affine(coords: &[f64]) -> Result<Self> {
        let mut homogeneous = Vec::with_capacity(coords.len() + 1);
        homogeneous.push(Complex64::new(1.0, 0.0));
        homogeneous.extend(coords.iter().map(|&c| Complex64::new(c, 0.0)));
        Self::new(homogeneous)
    }

    /// Dimension `n` of the ambient projective space.
    pub fn dim(&self) -> usize {
        self.homogeneous.len() - 1
    }

    pub fn homogeneous(&self) -> &[Complex64] {
        &self.homogeneous
    }

    /// Compares normalized coordinates with a relative tolerance.
    pub fn approx_eq(&self, other: &Self, rel_tol: f64) -> bool {
        self.homogeneous.len() == other.homogeneous.len()
            && self
                .homogeneous
                .iter()
                .zip(&other.homogeneous)
                .all(|(a, b)| (a - b).norm() <= rel_tol * a.norm().max(b.norm()).max(1.0))
    }
}

/// A point of the moment simplex `{x_i >= 0, sum x_i <= 1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentImage {
    x: Vec<f64>,
}

impl MomentImage {
    pub fn new(x: Vec<f64>) -> Result<Self> {
        let sum: f64 = x.iter().sum();
        let valid = !x.is_empty()
            && x.iter().all(|v| v.is_finite() && *v >= -SIMPLEX_SLACK)
            && sum <= 1.0 + SIMPLEX_SLACK;
        if valid {
            Ok(Self { x })
        } else {
            Err(Error::InvalidMomentImage { point: x })
        }
    }

    pub fn coords(&self) -> &[f64] {
        &self.x
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    /// True when every coordinate is positive and the sum is below 1.
    pub fn is_interior(&self) -> bool {
        self.x.iter().all(|v| *v > 0.0) && self.x.iter().sum::<f64>() < 1.0
    }
}

/// The radii `r` of a torus fiber `L(r) = S^1(r_1) x ... x S^1(r_n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorusFiber {
    r: Vec<f64>,
}

impl TorusFiber {
    pub fn new(r: Vec<f64>) -> Result<Self> {
        if r.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        if r.iter().all(|v| v.is_finite() && *v > 0.0) {
            Ok(Self { r })
        } else {
            Err(Error::NonPositiveRadius { radii: r })
        }
    }

    pub fn radii(&self) -> &[f64] {
        &self.r
    }

    pub fn dim(&self) -> usize {
        self.r.len()
    }

    /// `1 + sum r_i^2`.
    pub fn norm_factor(&self) -> f64 {
        1.0 + self.r.iter().map(|v| v * v).sum::<f64>()
    }

    /// The point `(1 : r_1 : ... : r_n)` lying on this fiber.
    pub fn base_point(&self) -> ProjectivePoint {
        ProjectivePoint::affine(&self.r).expect("leading coordinate is 1")
    }

    /// Moment image of the fiber.
    pub fn moment(&self) -> MomentImage {
        moment_map(&self.base_point())
    }

    /// Fiber coordinates `y_i = log r_i`.
    pub fn log_radii(&self) -> Vec<f64> {
        self.r.iter().map(|v| v.ln()).collect()
    }
}

/// A point of the mirror `M`: a fiber with a flat connection `gamma` (mod 1).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MirrorPoint {
    fiber: TorusFiber,
    gamma: Vec<f64>,
}

impl MirrorPoint {
    pub fn new(fiber: TorusFiber, gamma: Vec<f64>) -> Result<Self> {
        if gamma.len() != fiber.dim() {
            return Err(Error::DimensionMismatch {
                expected: fiber.dim(),
                got: gamma.len(),
            });
        }
        Ok(Self {
            fiber,
            gamma: gamma.into_iter().map(reduce_unit).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.fiber.dim()
    }

    pub fn fiber(&self) -> &TorusFiber {
        &self.fiber
    }

    pub fn r(&self) -> &[f64] {
        self.fiber.radii()
    }

    /// Connection coordinates, reduced to `[0, 1)`.
    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }

    pub fn y(&self) -> Vec<f64> {
        self.fiber.log_radii()
    }

    pub fn z(&self) -> Vec<Complex64> {
        mirror_coordinates(self)
    }
}

/// Reduces a real number to `[0, 1)`.
pub fn reduce_unit(value: f64) -> f64 {
    let reduced = value.rem_euclid(1.0);
    // rem_euclid can round up to exactly 1.0 for tiny negative inputs.
    if reduced >= 1.0 {
        0.0
    } else {
        reduced
    }
}

/// The moment map `(z_0 : ... : z_n) -> (|z_1|^2, ..., |z_n|^2) / sum |z_i|^2`.
pub fn moment_map(p: &ProjectivePoint) -> MomentImage {
    let total: f64 = p.homogeneous.iter().map(|c| c.norm_sqr()).sum();
    let x = p.homogeneous[1..]
        .iter()
        .map(|c| c.norm_sqr() / total)
        .collect();
    MomentImage::new(x).expect("moment map lands in the simplex")
}

/// Inverse of the moment map on the open simplex: `r_j = sqrt(x_j / (1 - sum x))`.
pub fn fiber_radii_from_moment(x: &MomentImage) -> Result<TorusFiber> {
    if !x.is_interior() {
        return Err(Error::NotInOpenSimplex {
            point: x.coords().to_vec(),
        });
    }
    let rest = 1.0 - x.coords().iter().sum::<f64>();
    TorusFiber::new(x.coords().iter().map(|v| (v / rest).sqrt()).collect())
}

/// Complex coordinates `z_j = exp(-2 pi r_j^2 / (1 + |r|^2) + 2 pi i gamma_j)`.
pub fn mirror_coordinates(m: &MirrorPoint) -> Vec<Complex64> {
    let s = m.fiber.norm_factor();
    m.r()
        .iter()
        .zip(&m.gamma)
        .map(|(r, g)| Complex64::from_polar((-2.0 * PI * r * r / s).exp(), 2.0 * PI * g))
        .collect()
}

/// The constant `e^{-2 pi}` weighting the boundary term of the superpotential.
pub fn boundary_weight() -> f64 {
    (-2.0 * PI).exp()
}

fn check_nonzero(z: &[Complex64]) -> Result<()> {
    if z.is_empty() {
        return Err(Error::DimensionMismatch { expected: 1, got: 0 });
    }
    match z.iter().position(|c| c.norm() == 0.0) {
        Some(index) => Err(Error::ZeroCoordinate { index }),
        None => Ok(()),
    }
}

/// `W(z) = z_1 + ... + z_n + e^{-2 pi} / (z_1 ... z_n)`.
pub fn superpotential(z: &[Complex64]) -> Result<Complex64> {
    check_nonzero(z)?;
    let product: Complex64 = z.iter().product();
    Ok(z.iter().sum::<Complex64>() + boundary_weight() / product)
}

/// Holomorphic gradient `dW/dz_j = 1 - e^{-2 pi} / (z_j * z_1 ... z_n)`.
pub fn superpotential_gradient(z: &[Complex64]) -> Result<Vec<Complex64>> {
    check_nonzero(z)?;
    let product: Complex64 = z.iter().product();
    let q = boundary_weight();
    Ok(z.iter()
        .map(|zj| Complex64::new(1.0, 0.0) - q / (zj * product))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub z: Vec<Complex64>,
    pub value: Complex64,
    /// Euclidean norm of the holomorphic gradient at `z`.
    pub residual: f64,
}

/// The `n + 1` critical points of `W`.
///
/// The first-order equations force `z_j * z_1 ... z_n = e^{-2 pi}` for every
/// `j`, hence all coordinates are equal to a root of `z^{n+1} = e^{-2 pi}`.
pub fn superpotential_critical_points(n: usize) -> Result<Vec<CriticalPoint>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let order = (n + 1) as f64;
    let modulus = (-2.0 * PI / order).exp();
    (0..=n)
        .map(|m| {
            let root = Complex64::from_polar(modulus, 2.0 * PI * m as f64 / order);
            let z = vec![root; n];
            let value = superpotential(&z)?;
            let residual = superpotential_gradient(&z)?
                .iter()
                .map(|g| g.norm_sqr())
                .sum::<f64>()
                .sqrt();
            Ok(CriticalPoint { z, value, residual })
        })
        .collect()
}

/// A tangent vector of `M` in `(y, gamma)` components.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangentVector {
    pub dy: Vec<f64>,
    pub dgamma: Vec<f64>,
}

impl TangentVector {
    pub fn new(dy: Vec<f64>, dgamma: Vec<f64>) -> Result<Self> {
        if dy.len() != dgamma.len() {
            return Err(Error::DimensionMismatch {
                expected: dy.len(),
                got: dgamma.len(),
            });
        }
        Ok(Self { dy, dgamma })
    }

    /// Unit vector `d/dy_i` in dimension `n`.
    pub fn along_y(n: usize, i: usize) -> Self {
        let mut dy = vec![0.0; n];
        dy[i] = 1.0;
        Self { dy, dgamma: vec![0.0; n] }
    }

    /// Unit vector `d/dgamma_i` in dimension `n`.
    pub fn along_gamma(n: usize, i: usize) -> Self {
        let mut dgamma = vec![0.0; n];
        dgamma[i] = 1.0;
        Self { dy: vec![0.0; n], dgamma }
    }

    pub fn dim(&self) -> usize {
        self.dy.len()
    }
}

/// `omega(u, v) = (2 pi)^n sum_i (u_{y,i} v_{gamma,i} - u_{gamma,i} v_{y,i})`.
///
/// The form has constant coefficients, so `base` only fixes the dimension.
pub fn symplectic_form_eval(base: &MirrorPoint, u: &TangentVector, v: &TangentVector) -> Result<f64> {
    let n = base.dim();
    for w in [u, v] {
        if w.dy.len() != n || w.dgamma.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: w.dy.len().max(w.dgamma.len()),
            });
        }
    }
    let pairing: f64 = (0..n)
        .map(|i| u.dy[i] * v.dgamma[i] - u.dgamma[i] * v.dy[i])
        .sum();
    Ok((2.0 * PI).powi(n as i32) * pairing)
}

/// Compares `-log|z_j| / (2 pi)` with the moment coordinates at random
/// fibers, `log r_j` uniform in `[-3, 3]` and `gamma` uniform in `[0, 1)^n`.
pub fn check_mirror_coordinates(n: usize, samples: usize, seed: u64, tol: f64) -> Result<CheckReport> {
    if n == 0 || samples == 0 {
        return Err(Error::InvalidParameter("need n >= 1 and at least one sample".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_deviation = 0.0_f64;
    let mut witness = None;
    for _ in 0..samples {
        let r: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0_f64).exp()).collect();
        let gamma: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
        let fiber = TorusFiber::new(r)?;
        let x = fiber.moment();
        let point = MirrorPoint::new(fiber, gamma)?;
        for (zj, xj) in mirror_coordinates(&point).iter().zip(x.coords()) {
            let deviation = (-zj.norm().ln() / (2.0 * PI) - xj).abs();
            if deviation > max_deviation {
                max_deviation = deviation;
                witness = Some(json!({ "r": point.r(), "gamma": point.gamma(), "moment": x.coords() }));
            }
        }
    }
    let pass = max_deviation <= tol;
    let mut report = CheckReport::new(
        "mirror_coordinates",
        "the modulus of each mirror coordinate recovers the moment map",
        json!({ "n": n, "samples": samples, "seed": seed, "tol": tol }),
    )
    .with_deviation(max_deviation)
    .with_pass(pass);
    if !pass {
        if let Some(w) = witness {
            report = report.with_witness(w);
        }
    }
    Ok(report)
}

/// Checks the critical locus of `W`: `n + 1` distinct points with vanishing
/// gradient and critical values `(n+1) zeta e^{-2 pi / (n+1)}`, `zeta^{n+1} = 1`.
pub fn check_critical_points(n: usize, tol: f64) -> Result<CheckReport> {
    let points = superpotential_critical_points(n)?;
    let order = n as f64 + 1.0;
    let expected_modulus = order * (-2.0 * PI / order).exp();
    let mut max_residual = 0.0_f64;
    let mut max_value_error = 0.0_f64;
    for (m, p) in points.iter().enumerate() {
        max_residual = max_residual.max(p.residual);
        let zeta = Complex64::from_polar(1.0, 2.0 * PI * m as f64 / order);
        max_value_error = max_value_error.max((p.value - zeta * expected_modulus).norm());
    }
    let mut distinct = 0;
    for (a, p) in points.iter().enumerate() {
        if points[..a].iter().all(|q| (q.z[0] - p.z[0]).norm() > 1e-9) {
            distinct += 1;
        }
    }
    let pass = distinct == n + 1 && max_residual < tol && max_value_error < tol;
    Ok(CheckReport::new(
        "critical_points",
        "the superpotential has n+1 nondegenerate critical points with values (n+1) zeta e^{-2 pi/(n+1)}",
        json!({ "n": n, "tol": tol }),
    )
    .with_deviation(max_residual.max(max_value_error))
    .with_pass(pass)
    .with_details(json!({
        "critical_points": distinct,
        "max_residual": max_residual,
        "max_value_error": max_value_error,
        "values": points.iter().map(|p| [p.value.re, p.value.im]).collect::<Vec<_>>(),
    })))
}
