//! T-dual Lagrangian branes `L(k)` in the mirror `M = T^*(S^1)^n`.
//!
//! The canonical metric `h_k = (1 + |r|^2)^{-k}` on `O(k)` restricts to a flat
//! connection on every torus fiber; recording it fiberwise gives the graph
//! `gamma = k * gamma^(1)(r)` with `gamma^(1)_j = r_j^2 / (1 + |r|^2)`. For
//! `k < 0` the lifts of `L(k)` to the covering torus `(R / (n+1)Z)^n` are graphs
//! of exact differentials over the open cells `U^a(k)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::geometry::{reduce_unit, symplectic_form_eval, MirrorPoint, TangentVector, TorusFiber};
use crate::report::CheckReport;

/// Default central-difference step.
pub const DEFAULT_FD_STEP: f64 = 1e-5;
/// Default tolerance for the graph check.
pub const DEFAULT_GRAPH_TOL: f64 = 1e-7;
/// Default tolerance for the exactness check.
pub const DEFAULT_SYMPLECTIC_TOL: f64 = 1e-9;

/// The hermitian metric `h_k(r) = (1 + |r|^2)^{-k}` on `O(k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HermitianWeight {
    pub k: i64,
}

impl HermitianWeight {
    pub fn new(k: i64) -> Self {
        Self { k }
    }

    pub fn eval(&self, r: &TorusFiber) -> f64 {
        r.norm_factor().powf(-(self.k as f64))
    }

    /// `d log h_k / d r_j`.
    pub fn log_derivative(&self, r: &TorusFiber) -> Vec<f64> {
        let s = r.norm_factor();
        r.radii()
            .iter()
            .map(|rj| -(self.k as f64) * 2.0 * rj / s)
            .collect()
    }

    /// `dtheta_j` coefficients of the Chern connection `i d' log h_k`.
    ///
    /// With `z_j = r_j e^{i theta_j}` the `(1,0)` part of `d log h` contributes
    /// `-(r_j / 2) d log h / d r_j` to the angular direction.
    pub fn angular_connection(&self, r: &TorusFiber) -> Vec<f64> {
        self.log_derivative(r)
            .iter()
            .zip(r.radii())
            .map(|(d, rj)| -0.5 * rj * d)
            .collect()
    }
}

/// `gamma^(1)(r)`, the section of `L(O(1))`, before reduction mod 1.
pub fn unit_section(r: &TorusFiber) -> Vec<f64> {
    let s = r.norm_factor();
    r.radii().iter().map(|rj| rj * rj / s).collect()
}

/// `k * gamma^(1)(r)` without reduction mod 1.
pub fn section_lift(k: i64, r: &TorusFiber) -> Vec<f64> {
    unit_section(r).into_iter().map(|g| k as f64 * g).collect()
}

/// The section `gamma^(k)(r) = k * gamma^(1)(r)` as a point of the torus `[0, 1)^n`.
pub fn section_gamma(k: i64, r: &TorusFiber) -> Vec<f64> {
    section_lift(k, r).into_iter().map(reduce_unit).collect()
}

/// Angular part of the connection form of `(O(k), h_k)` restricted to `L(r)`.
pub fn connection_angular_part(k: i64, r: &TorusFiber) -> Vec<f64> {
    HermitianWeight::new(k).angular_connection(r)
}

/// The brane `L(k)` as the graph of `r -> (log r, k gamma^(1)(r))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LagrangianGraph {
    pub n: usize,
    pub k: i64,
}

impl LagrangianGraph {
    pub fn new(n: usize, k: i64) -> Self {
        Self { n, k }
    }

    pub fn point(&self, r: &TorusFiber) -> Result<MirrorPoint> {
        self.check_dim(r)?;
        MirrorPoint::new(r.clone(), section_gamma(self.k, r))
    }

    /// Tangent frame `{d/dr_i}` of the parametrization in `(y, gamma)` components.
    pub fn tangent_frame(&self, r: &TorusFiber) -> Result<Vec<TangentVector>> {
        self.check_dim(r)?;
        let s = r.norm_factor();
        let radii = r.radii();
        let k = self.k as f64;
        Ok((0..self.n)
            .map(|i| {
                let mut dy = vec![0.0; self.n];
                dy[i] = 1.0 / radii[i];
                let dgamma = (0..self.n)
                    .map(|j| {
                        let diagonal = if i == j { 2.0 * radii[j] / s } else { 0.0 };
                        k * (diagonal - 2.0 * radii[j] * radii[j] * radii[i] / (s * s))
                    })
                    .collect();
                TangentVector { dy, dgamma }
            })
            .collect())
    }

    fn check_dim(&self, r: &TorusFiber) -> Result<()> {
        if r.dim() == self.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n,
                got: r.dim(),
            })
        }
    }
}

/// The open cell `U^a(k) = {x_i < a_i, sum x > k + sum a}` in the covering torus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedCell {
    pub n: usize,
    pub k: i64,
    pub offset: Vec<i64>,
}

impl LiftedCell {
    /// Requires `k` in `{-n-1, ..., -1}` and offsets in `{-n, ..., 0}`.
    pub fn new(n: usize, k: i64, offset: Vec<i64>) -> Result<Self> {
        let top = n as i64;
        let valid = n >= 1
            && offset.len() == n
            && (-top - 1..=-1).contains(&k)
            && offset.iter().all(|a| (-top..=0).contains(a));
        if valid {
            Ok(Self { n, k, offset })
        } else {
            Err(Error::InvalidCell { n, level: k, offset })
        }
    }

    /// The base cell `T = U^0(-1)`.
    pub fn base(n: usize) -> Self {
        Self::new(n, -1, vec![0; n]).expect("base cell is valid")
    }

    /// Smallest constraint slack: positive inside, zero on the boundary.
    pub fn slack(&self, point: &[f64]) -> f64 {
        let floor = (self.k + self.offset.iter().sum::<i64>()) as f64;
        let sum_slack = point.iter().sum::<f64>() - floor;
        point
            .iter()
            .zip(&self.offset)
            .map(|(x, a)| *a as f64 - x)
            .fold(sum_slack, f64::min)
    }

    pub fn contains(&self, point: &[f64]) -> bool {
        point.len() == self.n && self.slack(point) > 0.0
    }

    /// `(x - a) / (-k)`, the point of the base cell `T` corresponding to `x`.
    pub fn to_base(&self, point: &[f64]) -> Vec<f64> {
        let scale = -(self.k as f64);
        point
            .iter()
            .zip(&self.offset)
            .map(|(x, a)| (x - *a as f64) / scale)
            .collect()
    }

    /// The lift of the brane point over the fiber `r`: `k gamma^(1)(r) + a`.
    pub fn lifted_section(&self, r: &TorusFiber) -> Vec<f64> {
        section_lift(self.k, r)
            .into_iter()
            .zip(&self.offset)
            .map(|(g, a)| g + *a as f64)
            .collect()
    }

    pub fn barycenter(&self) -> Vec<f64> {
        let shift = self.k as f64 / (self.n as f64 + 1.0);
        self.offset.iter().map(|a| *a as f64 + shift).collect()
    }
}

/// How the lifted potentials `f^a_k` are scaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PotentialConvention {
    /// `(-k) f((x - a) / (-k))`: its differential reproduces `y = log r`.
    Scaled,
    /// `f((x - a) / (-k))`: differential off by a factor `1 / (-k)`.
    Literal,
}

/// `f(u) = 1/2 sum u_i log(-u_i) - 1/2 (1 + sum u) log(1 + sum u)` on `T`.
fn base_potential(u: &[f64]) -> f64 {
    let rest = 1.0 + u.iter().sum::<f64>();
    0.5 * u.iter().map(|ui| ui * (-ui).ln()).sum::<f64>() - 0.5 * rest * rest.ln()
}

/// `df/du_i = 1/2 log(-u_i / (1 + sum u))`.
fn base_gradient(u: &[f64]) -> Vec<f64> {
    let rest = 1.0 + u.iter().sum::<f64>();
    u.iter().map(|ui| 0.5 * (-ui / rest).ln()).collect()
}

/// Generating potential of the lift `L^a(k)` over `U^a(k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedPotential {
    pub cell: LiftedCell,
    pub convention: PotentialConvention,
}

impl LiftedPotential {
    pub fn new(cell: LiftedCell, convention: PotentialConvention) -> Self {
        Self { cell, convention }
    }

    fn check_inside(&self, point: &[f64]) -> Result<()> {
        if self.cell.contains(point) {
            Ok(())
        } else {
            Err(Error::OutsideCell {
                level: self.cell.k,
                offset: self.cell.offset.clone(),
                point: point.to_vec(),
            })
        }
    }

    pub fn value(&self, point: &[f64]) -> Result<f64> {
        self.check_inside(point)?;
        let f = base_potential(&self.cell.to_base(point));
        Ok(match self.convention {
            PotentialConvention::Scaled => -(self.cell.k as f64) * f,
            PotentialConvention::Literal => f,
        })
    }

    /// Closed-form gradient, i.e. the fiber coordinate `y` of the graph.
    pub fn gradient(&self, point: &[f64]) -> Result<Vec<f64>> {
        self.check_inside(point)?;
        let grad = base_gradient(&self.cell.to_base(point));
        Ok(match self.convention {
            PotentialConvention::Scaled => grad,
            PotentialConvention::Literal => {
                let scale = -(self.cell.k as f64);
                grad.into_iter().map(|g| g / scale).collect()
            }
        })
    }
}

/// Value of the generating potential of `L^a(k)` at an interior point.
pub fn potential_value(cell: &LiftedCell, point: &[f64]) -> Result<f64> {
    LiftedPotential::new(cell.clone(), PotentialConvention::Scaled).value(point)
}

/// Central differences of `f` at `point`.
pub fn central_difference<F>(f: F, point: &[f64], step: f64) -> Result<Vec<f64>>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let mut probe = point.to_vec();
    let mut grad = Vec::with_capacity(point.len());
    for i in 0..point.len() {
        probe[i] = point[i] + step;
        let plus = f(&probe)?;
        probe[i] = point[i] - step;
        let minus = f(&probe)?;
        probe[i] = point[i];
        grad.push((plus - minus) / (2.0 * step));
    }
    Ok(grad)
}

/// Log-spaced product grid of fibers `r in [r_min, r_max]^n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiberGrid {
    pub n: usize,
    pub per_axis: usize,
    pub r_min: f64,
    pub r_max: f64,
}

impl FiberGrid {
    pub fn new(n: usize, per_axis: usize, r_min: f64, r_max: f64) -> Result<Self> {
        if n == 0 || per_axis == 0 || !(r_min > 0.0 && r_max >= r_min) {
            return Err(Error::InvalidParameter(format!(
                "fiber grid needs n >= 1, per_axis >= 1 and 0 < r_min <= r_max (got {n}, {per_axis}, {r_min}, {r_max})"
            )));
        }
        Ok(Self { n, per_axis, r_min, r_max })
    }

    fn axis(&self) -> Vec<f64> {
        if self.per_axis == 1 {
            return vec![(self.r_min * self.r_max).sqrt()];
        }
        let (lo, hi) = (self.r_min.ln(), self.r_max.ln());
        (0..self.per_axis)
            .map(|i| (lo + (hi - lo) * i as f64 / (self.per_axis - 1) as f64).exp())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.per_axis.pow(self.n as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn fibers(&self) -> impl Iterator<Item = TorusFiber> + '_ {
        let axis = self.axis();
        (0..self.len()).map(move |mut index| {
            let mut r = Vec::with_capacity(self.n);
            for _ in 0..self.n {
                r.push(axis[index % self.per_axis]);
                index /= self.per_axis;
            }
            TorusFiber::new(r).expect("grid radii are positive")
        })
    }
}

/// Parameters of [`check_graph`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphCheck {
    pub fd_step: f64,
    /// Samples whose constraint slack is below this are skipped.
    pub margin: f64,
    pub tol: f64,
    pub convention: PotentialConvention,
}

impl Default for GraphCheck {
    fn default() -> Self {
        Self {
            fd_step: DEFAULT_FD_STEP,
            margin: 2.0 * DEFAULT_FD_STEP,
            tol: DEFAULT_GRAPH_TOL,
            convention: PotentialConvention::Scaled,
        }
    }
}

/// Checks that `df^a_k` reproduces the parametric brane.
///
/// For each fiber `r` of the grid the lifted brane point `k gamma^(1)(r) + a`
/// is computed from the parametrization, the gradient of the potential there
/// is estimated by central differences, and compared with `y = log r`.
pub fn check_graph(cell: &LiftedCell, grid: &FiberGrid, params: &GraphCheck) -> Result<CheckReport> {
    if !(params.fd_step > 0.0 && params.tol > 0.0) {
        return Err(Error::InvalidParameter("fd step and tolerance must be positive".into()));
    }
    if params.margin < 2.0 * params.fd_step {
        return Err(Error::InvalidParameter(format!(
            "boundary margin {} is smaller than twice the fd step {}",
            params.margin, params.fd_step
        )));
    }
    if grid.n != cell.n {
        return Err(Error::DimensionMismatch {
            expected: cell.n,
            got: grid.n,
        });
    }
    let potential = LiftedPotential::new(cell.clone(), params.convention);
    let mut max_deviation = 0.0_f64;
    let mut witness = None;
    let mut used = 0usize;
    let mut skipped = 0usize;
    let mut ratios = Vec::new();
    for r in grid.fibers() {
        let point = cell.lifted_section(&r);
        if cell.slack(&point) < params.margin {
            skipped += 1;
            continue;
        }
        used += 1;
        let fd = central_difference(|x| potential.value(x), &point, params.fd_step)?;
        let expected = r.log_radii();
        for (g, y) in fd.iter().zip(&expected) {
            let deviation = (g - y).abs();
            if y.abs() > 1e-3 {
                ratios.push(y / g);
            }
            if deviation > max_deviation {
                max_deviation = deviation;
                witness = Some(json!({
                    "r": r.radii(),
                    "gamma_lift": point,
                    "fd_gradient": fd,
                    "log_r": expected,
                }));
            }
        }
    }
    ratios.sort_by(f64::total_cmp);
    let median_ratio = ratios.get(ratios.len() / 2).copied();
    let pass = used > 0 && max_deviation <= params.tol;
    let mut report = CheckReport::new(
        "brane_graph",
        "the lift L^a(k) is the graph of the differential of its potential",
        json!({
            "n": cell.n,
            "k": cell.k,
            "a": cell.offset,
            "convention": params.convention,
            "fd_step": params.fd_step,
            "margin": params.margin,
            "tol": params.tol,
            "grid": grid,
        }),
    )
    .with_deviation(max_deviation)
    .with_pass(pass)
    .with_details(json!({
        "samples_used": used,
        "samples_skipped": skipped,
        "median_log_r_over_gradient": median_ratio,
    }));
    if !pass {
        if let Some(w) = witness {
            report = report.with_witness(w);
        }
    }
    Ok(report)
}

/// Checks that `omega` vanishes on the tangent frame of `L(k)` at every sample.
pub fn check_exactness(n: usize, k: i64, grid: &FiberGrid, tol: f64) -> Result<CheckReport> {
    if grid.n != n {
        return Err(Error::DimensionMismatch { expected: n, got: grid.n });
    }
    let brane = LagrangianGraph::new(n, k);
    let mut max_deviation = 0.0_f64;
    let mut witness = None;
    let mut pairs = 0usize;
    for r in grid.fibers() {
        let base = brane.point(&r)?;
        let frame = brane.tangent_frame(&r)?;
        for i in 0..n {
            for j in i + 1..n {
                pairs += 1;
                let value = symplectic_form_eval(&base, &frame[i], &frame[j])?.abs();
                if value > max_deviation {
                    max_deviation = value;
                    witness = Some(json!({ "r": r.radii(), "i": i, "j": j, "omega": value }));
                }
            }
        }
    }
    let pass = max_deviation <= tol;
    let mut report = CheckReport::new(
        "brane_exactness",
        "L(k) is Lagrangian: omega vanishes on its tangent frames",
        json!({ "n": n, "k": k, "tol": tol, "grid": grid }),
    )
    .with_deviation(max_deviation)
    .with_pass(pass)
    .with_details(json!({ "samples": grid.len(), "pairs": pairs }));
    if !pass {
        if let Some(w) = witness {
            report = report.with_witness(w);
        }
    }
    Ok(report)
}

/// A point `(y, gamma)` of the cotangent bundle, `gamma` in a local lift.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CotangentPoint {
    pub y: Vec<f64>,
    pub gamma: Vec<f64>,
}

/// Normalized geodesic flow for the flat metric `g = sum dgamma_i^2`:
/// `(y, gamma) -> (y, gamma + t y / |y|)`.
pub fn geodesic_flow(point: &CotangentPoint, t: f64) -> Result<CotangentPoint> {
    if point.y.len() != point.gamma.len() {
        return Err(Error::DimensionMismatch {
            expected: point.y.len(),
            got: point.gamma.len(),
        });
    }
    let norm = euclidean(&point.y);
    if norm == 0.0 {
        return Err(Error::ZeroCovector);
    }
    Ok(CotangentPoint {
        y: point.y.clone(),
        gamma: point
            .gamma
            .iter()
            .zip(&point.y)
            .map(|(g, y)| g + t * y / norm)
            .collect(),
    })
}

fn euclidean(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Distance in `g` between the flowed fiber point `phi_{t1}(y, s)` and the
/// flowed brane point `phi_{t2}(y, gamma)`, minimized over the integer
/// translates that identify the torus. Returns the defect and the translate.
pub fn flow_defect(s: &[f64], gamma: &[f64], y: &[f64], t1: f64, t2: f64) -> (f64, Vec<i64>) {
    let n = s.len();
    let norm = euclidean(y);
    let step = t2 - t1;
    let mut best = (f64::INFINITY, vec![0; n]);
    for code in 0..3usize.pow(n as u32) {
        let mut c = code;
        let shift: Vec<i64> = (0..n)
            .map(|_| {
                let m = (c % 3) as i64 - 1;
                c /= 3;
                m
            })
            .collect();
        let defect = (0..n)
            .map(|i| {
                let v = s[i] + shift[i] as f64 - gamma[i] - step * y[i] / norm;
                v * v
            })
            .sum::<f64>()
            .sqrt();
        if defect < best.0 {
            best = (defect, shift);
        }
    }
    best
}

/// Sampling parameters for [`separation_probe`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeConfig {
    /// Upper bound (exclusive) for the flow times.
    pub delta: f64,
    /// Number of equally spaced flow times in `[0, delta)`.
    pub t_steps: usize,
    pub samples: usize,
    pub seed: u64,
}

impl ProbeConfig {
    pub fn time_pairs(&self) -> Vec<(f64, f64)> {
        let times: Vec<f64> = (0..self.t_steps)
            .map(|m| self.delta * m as f64 / self.t_steps as f64)
            .collect();
        let mut pairs = Vec::new();
        for (a, t1) in times.iter().enumerate() {
            for t2 in &times[a..] {
                pairs.push((*t1, *t2));
            }
        }
        pairs
    }
}

fn on_base_boundary(s: &[f64]) -> bool {
    const TIGHT: f64 = 1e-12;
    let sum: f64 = s.iter().sum();
    let inside = s.iter().all(|x| *x <= TIGHT) && sum >= -1.0 - TIGHT;
    let touching = s.iter().any(|x| x.abs() <= TIGHT) || (sum + 1.0).abs() <= TIGHT;
    inside && touching
}

/// Draws a point of the base cell `T`: uniform half of the time, otherwise
/// concentrated within `4 delta` of `s`.
fn sample_base_cell(rng: &mut ChaCha8Rng, s: &[f64], delta: f64, near: bool) -> Vec<f64> {
    let n = s.len();
    let cell = LiftedCell::base(n);
    loop {
        let candidate: Vec<f64> = if near {
            let radius = 4.0 * delta * rng.gen::<f64>();
            let direction: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();
            let norm = euclidean(&direction);
            if norm == 0.0 {
                continue;
            }
            s.iter()
                .zip(&direction)
                .map(|(si, d)| si + radius * d / norm)
                .collect()
        } else {
            // Dirichlet(1, ..., 1) weights over the vertices 0, -e_1, ..., -e_n.
            let weights: Vec<f64> = (0..=n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
            let total: f64 = weights.iter().sum();
            weights[1..].iter().map(|w| -w / total).collect()
        };
        if cell.contains(&candidate) {
            return candidate;
        }
    }
}

/// Vertices and facet barycenters of the closed base simplex `T`.
pub fn boundary_probe_points(n: usize) -> Vec<Vec<f64>> {
    let mut vertices = vec![vec![0.0; n]];
    for l in 0..n {
        let mut v = vec![0.0; n];
        v[l] = -1.0;
        vertices.push(v);
    }
    let mut points = vertices.clone();
    for skip in 0..=n {
        let facet: Vec<&Vec<f64>> = vertices.iter().enumerate().filter(|(m, _)| *m != skip).map(|(_, v)| v).collect();
        let center: Vec<f64> = (0..n)
            .map(|l| facet.iter().map(|v| v[l]).sum::<f64>() / facet.len() as f64)
            .collect();
        if !points.contains(&center) {
            points.push(center);
        }
    }
    points
}

/// Sampled falsification probe for the separation of the flowed fiber at a
/// boundary point `s` of `T` from the flowed brane `L(-1)`.
///
/// Returns the smallest defect over all samples and time pairs. A strictly
/// positive minimum is consistent with the separation property; it is not a
/// proof of it.
pub fn separation_probe(s: &[f64], config: &ProbeConfig) -> Result<CheckReport> {
    let n = s.len();
    if n == 0 {
        return Err(Error::DimensionMismatch { expected: 1, got: 0 });
    }
    if !on_base_boundary(s) {
        return Err(Error::InvalidParameter(format!("{s:?} is not on the boundary of T")));
    }
    if !(config.delta > 0.0) || config.t_steps == 0 || config.samples == 0 {
        return Err(Error::InvalidParameter(
            "probe needs delta > 0, t_steps >= 1 and samples >= 1".into(),
        ));
    }
    let potential = LiftedPotential::new(LiftedCell::base(n), PotentialConvention::Scaled);
    let pairs = config.time_pairs();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut min_defect = f64::INFINITY;
    let mut witness = json!(null);
    let mut zero_section = 0usize;
    for index in 0..config.samples {
        let gamma = sample_base_cell(&mut rng, s, config.delta, index % 2 == 1);
        let y = potential.gradient(&gamma)?;
        if euclidean(&y) == 0.0 {
            zero_section += 1;
            continue;
        }
        for &(t1, t2) in &pairs {
            let (defect, shift) = flow_defect(s, &gamma, &y, t1, t2);
            if defect < min_defect {
                min_defect = defect;
                witness = json!({ "gamma": gamma, "y": y, "t1": t1, "t2": t2, "shift": shift });
            }
        }
    }
    let pass = min_defect.is_finite() && min_defect > 0.0;
    Ok(CheckReport::new(
        "separation_probe",
        "flowed boundary fibers stay disjoint from the flowed brane L(-1) for small times (sampled)",
        json!({
            "n": n,
            "s": s,
            "delta_probe": config.delta,
            "t_steps": config.t_steps,
            "samples": config.samples,
            "seed": config.seed,
        }),
    )
    .with_pass(pass)
    .with_witness(witness)
    .with_details(json!({
        "min_defect": min_defect,
        "time_pairs": pairs.len(),
        "zero_section_samples": zero_section,
    })))
}
