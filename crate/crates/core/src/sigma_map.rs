//! The angular rearrangement `σ: [0, π/2] → [0, π]` defined implicitly by
//!
//! ```text
//! ∫_0^θ sin^k t cos^l t dt = c1 ∫_0^{σ(θ)} sin^{k+l} s ds,
//! c1 = ∫_0^{π/2} sin^k cos^l / ∫_0^π sin^{k+l},
//! ```
//!
//! together with a numerical certificate that `σ' >= 1` on the open interval.
//!
//! Both sides of the relation are tabulated as cumulative integrals on a
//! uniform grid. A value `σ(θ)` is obtained by a table lookup followed by a
//! safeguarded Newton solve inside one cell. Points in the upper half of the
//! range are solved from the `π/2` (resp. `π`) end using the mirrored
//! density, so the distance of `σ` to either endpoint keeps full relative
//! precision; `σ'` near the ends depends on it.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, invalid, Error, Result};
use crate::quadrature::{invert_increasing, Integrator};

pub const DEFAULT_NODES: usize = 257;
pub const DEFAULT_TOL: f64 = 1e-10;
/// Distance from `0` and `π/2` inside which derivatives are not sampled.
pub const DERIVATIVE_MARGIN: f64 = 1e-6;

const CELL_REL_TOL: f64 = 1e-14;
const MIN_TABLE_CELLS: usize = 256;

/// Cumulative table of `∫_0^x sin^p t cos^q t dt` on `[0, π/2]`.
#[derive(Debug, Clone)]
struct SinCosTable {
    p: f64,
    q: f64,
    h: f64,
    cells: usize,
    prefix: Vec<f64>,
}

impl SinCosTable {
    fn new(p: f64, q: f64, cells: usize) -> Result<Self> {
        let h = FRAC_PI_2 / cells as f64;
        let mut table = Self { p, q, h, cells, prefix: Vec::with_capacity(cells + 1) };
        let mut acc = 0.0;
        table.prefix.push(0.0);
        for j in 0..cells {
            acc += table.partial(table.node(j), table.node(j + 1))?;
            table.prefix.push(acc);
        }
        Ok(table)
    }

    fn cells(&self) -> usize {
        self.cells
    }

    fn node(&self, j: usize) -> f64 {
        if j == self.cells() {
            FRAC_PI_2
        } else {
            j as f64 * self.h
        }
    }

    fn density(&self, t: f64) -> f64 {
        let mut v = 1.0;
        if self.p != 0.0 {
            v *= t.sin().powf(self.p);
        }
        if self.q != 0.0 {
            v *= (FRAC_PI_2 - t).sin().powf(self.q);
        }
        v
    }

    fn partial(&self, a: f64, b: f64) -> Result<f64> {
        if b <= a {
            return Ok(0.0);
        }
        if self.p == 0.0 && self.q == 0.0 {
            return Ok(b - a);
        }
        Ok(Integrator::relative(CELL_REL_TOL).integrate(|t| self.density(t), a, b)?.value)
    }

    fn total(&self) -> f64 {
        self.prefix[self.cells()]
    }

    fn cell_of(&self, x: f64) -> usize {
        ((x / self.h) as usize).min(self.cells() - 1)
    }

    fn integral_to(&self, x: f64) -> Result<f64> {
        let j = self.cell_of(x);
        Ok(self.prefix[j] + self.partial(self.node(j), x)?)
    }

    /// The `x` with `∫_0^x = target`.
    fn solve(&self, target: f64) -> Result<f64> {
        if target <= 0.0 {
            return Ok(0.0);
        }
        if target >= self.total() {
            return Ok(FRAC_PI_2);
        }
        let j = (self.prefix.partition_point(|&v| v <= target) - 1).min(self.cells() - 1);
        let (lo, hi) = (self.node(j), self.node(j + 1));
        let base = self.prefix[j];
        let guess = if j == 0 {
            // The density behaves like t^p at the origin.
            hi * (target / self.prefix[1]).powf(1.0 / (self.p + 1.0))
        } else {
            lo + (hi - lo) * (target - base) / (self.prefix[j + 1] - base)
        };
        invert_increasing(
            |x| Ok((base + self.partial(lo, x)?, self.density(x))),
            target,
            lo,
            hi,
            guess,
            4e-15,
        )
    }
}

/// A value of the map together with quantities that lose precision when
/// recomputed from `σ` alone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaPoint {
    pub sigma: f64,
    /// `sin σ`, computed from the distance of `σ` to the nearer endpoint.
    pub sin_sigma: f64,
}

/// Result of sampling `σ'` on an interior grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lemma1Certificate {
    pub k: f64,
    pub l: f64,
    pub min_sigma_prime: f64,
    pub argmin: f64,
    pub grid_size: usize,
    /// Samples lie in `[margin, π/2 - margin]`.
    pub margin: f64,
    pub threshold: f64,
    pub success: bool,
}

/// The monotone map `σ` for exponents `(k, l)`, with its certified node
/// table.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "SigmaMapJson", into = "SigmaMapJson")]
pub struct SigmaMap {
    k: f64,
    l: f64,
    c1: f64,
    tol: f64,
    theta: Vec<f64>,
    sigma: Vec<f64>,
    forward: SinCosTable,
    mirrored: SinCosTable,
    target: SinCosTable,
    theta_mid: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SigmaMapJson {
    k: f64,
    l: f64,
    c1: f64,
    theta: Vec<f64>,
    sigma: Vec<f64>,
    #[serde(default = "default_tol")]
    tol: f64,
}

fn default_tol() -> f64 {
    DEFAULT_TOL
}

fn check_exponents(k: f64, l: f64) -> Result<()> {
    if !(k >= 0.0) || !k.is_finite() {
        return Err(domain(format!("k must be >= 0, got {k}")));
    }
    if !(l >= 0.0) || !l.is_finite() {
        return Err(domain(format!("l must be >= 0, got {l}")));
    }
    Ok(())
}

/// `c1 = ∫_0^{π/2} sin^k cos^l / ∫_0^π sin^{k+l}`.
pub fn c1(k: f64, l: f64, tol: f64) -> Result<f64> {
    check_exponents(k, l)?;
    let num = crate::quadrature::sin_cos_integral(k, l, tol)?;
    let m = k + l;
    let den = if m == 0.0 {
        PI
    } else {
        Integrator::relative(tol).integrate(|s| s.sin().powf(m), 0.0, PI)?.value
    };
    Ok(num / den)
}

/// Builds `σ` on `n_nodes` uniform nodes of `[0, π/2]`.
pub fn build_sigma(k: f64, l: f64, n_nodes: usize, tol: f64) -> Result<SigmaMap> {
    SigmaMap::new(k, l, n_nodes, tol)
}

impl SigmaMap {
    pub fn new(k: f64, l: f64, n_nodes: usize, tol: f64) -> Result<Self> {
        check_exponents(k, l)?;
        if n_nodes < 16 {
            return Err(domain(format!("n_nodes must be >= 16, got {n_nodes}")));
        }
        if !(tol > 0.0) {
            return Err(domain("tolerance must be positive"));
        }
        let mut map = Self::tables_only(k, l, tol, n_nodes)?;
        let n = n_nodes - 1;
        map.theta = (0..=n)
            .map(|i| if i == n { FRAC_PI_2 } else { FRAC_PI_2 * i as f64 / n as f64 })
            .collect();
        map.sigma = map
            .theta
            .iter()
            .map(|&t| map.solve_point(t).map(|p| p.sigma))
            .collect::<Result<_>>()?;
        let residual = map.max_node_residual()?;
        if residual > tol {
            return Err(Error::NonConvergence {
                what: "sigma node table",
                value: residual,
                error_estimate: residual,
                iterations: n_nodes,
            });
        }
        Ok(map)
    }

    fn tables_only(k: f64, l: f64, tol: f64, n_nodes: usize) -> Result<Self> {
        let cells = (n_nodes - 1).max(MIN_TABLE_CELLS);
        let forward = SinCosTable::new(k, l, cells)?;
        let mirrored = SinCosTable::new(l, k, cells)?;
        let target = SinCosTable::new(k + l, 0.0, cells)?;
        let c1 = forward.total() / (2.0 * target.total());
        let theta_mid = forward.solve(0.5 * forward.total())?;
        Ok(Self {
            k,
            l,
            c1,
            tol,
            theta: Vec::new(),
            sigma: Vec::new(),
            forward,
            mirrored,
            target,
            theta_mid,
        })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.theta.iter().copied().zip(self.sigma.iter().copied())
    }

    pub fn theta_nodes(&self) -> &[f64] {
        &self.theta
    }

    pub fn sigma_nodes(&self) -> &[f64] {
        &self.sigma
    }

    fn solve_point(&self, theta: f64) -> Result<SigmaPoint> {
        if theta <= 0.0 {
            return Ok(SigmaPoint { sigma: 0.0, sin_sigma: 0.0 });
        }
        if theta >= FRAC_PI_2 {
            return Ok(SigmaPoint { sigma: PI, sin_sigma: 0.0 });
        }
        if theta <= self.theta_mid {
            let f = self.forward.integral_to(theta)?;
            let d = self.target.solve(f / self.c1)?;
            Ok(SigmaPoint { sigma: d, sin_sigma: d.sin() })
        } else {
            let f = self.mirrored.integral_to(FRAC_PI_2 - theta)?;
            let d = self.target.solve(f / self.c1)?;
            Ok(SigmaPoint { sigma: PI - d, sin_sigma: d.sin() })
        }
    }

    fn check_theta(theta: f64) -> Result<()> {
        if !(0.0..=FRAC_PI_2).contains(&theta) {
            return Err(domain(format!("θ must lie in [0, π/2], got {theta}")));
        }
        Ok(())
    }

    /// `σ(θ)` with the accurately computed `sin σ`. Exact node values are
    /// returned unchanged.
    pub fn eval_point(&self, theta: f64) -> Result<SigmaPoint> {
        Self::check_theta(theta)?;
        if let Ok(i) = self.theta.binary_search_by(|t| t.total_cmp(&theta)) {
            let sigma = self.sigma[i];
            let d = sigma.min(PI - sigma);
            return Ok(SigmaPoint { sigma, sin_sigma: d.sin() });
        }
        self.solve_point(theta)
    }

    pub fn eval(&self, theta: f64) -> Result<f64> {
        Ok(self.eval_point(theta)?.sigma)
    }

    /// `sin^k θ cos^l θ / c1`, which equals `σ'(θ) sin^{k+l} σ(θ)`. Finite
    /// up to the endpoints, unlike `σ'` itself.
    pub fn weighted_derivative(&self, theta: f64) -> f64 {
        let mut v = 1.0 / self.c1;
        if self.k != 0.0 {
            v *= theta.sin().powf(self.k);
        }
        if self.l != 0.0 {
            v *= (FRAC_PI_2 - theta).sin().powf(self.l);
        }
        v
    }

    /// `σ'(θ)` from the differentiated defining relation.
    pub fn derivative(&self, theta: f64) -> Result<f64> {
        if !(theta > 0.0 && theta < FRAC_PI_2) {
            return Err(domain(format!("σ' is evaluated on the open interval (0, π/2), got {theta}")));
        }
        let p = self.eval_point(theta)?;
        let m = self.k + self.l;
        let mut ln = -self.c1.ln();
        if self.k != 0.0 {
            ln += self.k * theta.sin().ln();
        }
        if self.l != 0.0 {
            ln += self.l * (FRAC_PI_2 - theta).sin().ln();
        }
        if m != 0.0 {
            ln -= m * p.sin_sigma.ln();
        }
        Ok(ln.exp())
    }

    /// `σ^{-1}(s)` for `s ∈ [0, π]`.
    pub fn inverse(&self, s: f64) -> Result<f64> {
        if !(0.0..=PI).contains(&s) {
            return Err(domain(format!("σ^-1 needs s in [0, π], got {s}")));
        }
        if s <= FRAC_PI_2 {
            let g = self.target.integral_to(s)?;
            self.forward.solve(self.c1 * g)
        } else {
            let g = self.target.integral_to(PI - s)?;
            Ok(FRAC_PI_2 - self.mirrored.solve(self.c1 * g)?)
        }
    }

    /// `∫_0^θ sin^k cos^l`.
    pub fn lhs_integral(&self, theta: f64) -> Result<f64> {
        Self::check_theta(theta)?;
        if theta <= FRAC_PI_2 / 2.0 {
            self.forward.integral_to(theta)
        } else {
            Ok(self.forward.total() - self.mirrored.integral_to(FRAC_PI_2 - theta)?)
        }
    }

    /// `∫_0^s sin^{k+l}` for `s ∈ [0, π]`.
    pub fn rhs_integral(&self, s: f64) -> Result<f64> {
        if !(0.0..=PI).contains(&s) {
            return Err(domain(format!("s must lie in [0, π], got {s}")));
        }
        if s <= FRAC_PI_2 {
            self.target.integral_to(s)
        } else {
            Ok(2.0 * self.target.total() - self.target.integral_to(PI - s)?)
        }
    }

    /// Largest `|∫_0^θ sin^k cos^l − c1 ∫_0^σ sin^{k+l}|` over the nodes.
    pub fn max_node_residual(&self) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for (t, s) in self.nodes() {
            let r = (self.lhs_integral(t)? - self.c1 * self.rhs_integral(s)?).abs();
            worst = worst.max(r);
        }
        Ok(worst)
    }

    /// Minimum of `σ'` over `grid_size` uniform points of
    /// `[DERIVATIVE_MARGIN, π/2 - DERIVATIVE_MARGIN]`; succeeds iff the
    /// minimum is at least `1 - 10 tol`.
    pub fn certify_lemma1(&self, grid_size: usize) -> Result<Lemma1Certificate> {
        if grid_size < 1000 {
            return Err(domain(format!("grid_size must be >= 1000, got {grid_size}")));
        }
        let a = DERIVATIVE_MARGIN;
        let b = FRAC_PI_2 - DERIVATIVE_MARGIN;
        let step = (b - a) / (grid_size - 1) as f64;
        let values: Vec<(f64, f64)> = (0..grid_size)
            .into_par_iter()
            .map(|i| {
                let t = a + step * i as f64;
                self.derivative(t).map(|d| (t, d))
            })
            .collect::<Result<_>>()?;
        let (argmin, min) = values
            .into_iter()
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .expect("grid is non-empty");
        let threshold = 1.0 - 10.0 * self.tol;
        Ok(Lemma1Certificate {
            k: self.k,
            l: self.l,
            min_sigma_prime: min,
            argmin,
            grid_size,
            margin: a,
            threshold,
            success: min >= threshold,
        })
    }
}

impl From<SigmaMap> for SigmaMapJson {
    fn from(m: SigmaMap) -> Self {
        Self { k: m.k, l: m.l, c1: m.c1, theta: m.theta, sigma: m.sigma, tol: m.tol }
    }
}

impl TryFrom<SigmaMapJson> for SigmaMap {
    type Error = Error;

    fn try_from(j: SigmaMapJson) -> Result<Self> {
        check_exponents(j.k, j.l)?;
        if !(j.tol > 0.0) {
            return Err(invalid("tol must be positive"));
        }
        if j.theta.len() != j.sigma.len() || j.theta.len() < 16 {
            return Err(invalid("theta and sigma must have equal length >= 16"));
        }
        if j.theta.iter().chain(&j.sigma).any(|v| !v.is_finite()) {
            return Err(invalid("node values must be finite"));
        }
        if j.theta[0] != 0.0 || (j.theta[j.theta.len() - 1] - FRAC_PI_2).abs() > 1e-12 {
            return Err(invalid("theta nodes must span [0, π/2]"));
        }
        if j.sigma[0] != 0.0 || (j.sigma[j.sigma.len() - 1] - PI).abs() > j.tol {
            return Err(invalid("sigma nodes must run from 0 to π"));
        }
        if j.theta.windows(2).any(|w| !(w[0] < w[1])) || j.sigma.windows(2).any(|w| !(w[0] < w[1]))
        {
            return Err(invalid("nodes must be strictly increasing"));
        }
        let mut map = Self::tables_only(j.k, j.l, j.tol, j.theta.len())?;
        if (map.c1 - j.c1).abs() > j.tol {
            return Err(invalid(format!("c1 = {} disagrees with recomputed {}", j.c1, map.c1)));
        }
        let mut theta = j.theta;
        let last = theta.len() - 1;
        theta[last] = FRAC_PI_2;
        map.theta = theta;
        map.sigma = j.sigma;
        map.sigma[last] = PI;
        let residual = map.max_node_residual()?;
        if residual > 10.0 * j.tol {
            return Err(invalid(format!("node residual {residual} exceeds tolerance")));
        }
        Ok(map)
    }
}
