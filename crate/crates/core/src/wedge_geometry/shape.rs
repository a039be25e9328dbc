//! Star-shaped sets `{(r, θ): 0 < r < ρ(θ)}` in the quarter plane.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use super::curve::PolarCurve;
use crate::error::{invalid, Error, Result};
use crate::interp::Pchip;

/// Smallest accepted sample count of a [`RadialShape`].
pub const MIN_SAMPLES: usize = 33;
/// Sample count used when a shape is built from a function.
pub const DEFAULT_SAMPLES: usize = 257;

const ENDPOINT_SLACK: f64 = 1e-12;

/// A positive radial function on `[0, π/2]`.
pub trait RadialFunction: Sync {
    /// `(ρ(θ), ρ'(θ))`.
    fn rho_with_derivative(&self, theta: f64) -> (f64, f64);

    fn rho(&self, theta: f64) -> f64 {
        self.rho_with_derivative(theta).0
    }

    /// Points of `[0, π/2]`, both ends included, between which `ρ` is
    /// smooth. Quadratures split there.
    fn breakpoints(&self) -> Vec<f64> {
        vec![0.0, FRAC_PI_2]
    }
}

/// Radial function sampled on a grid of `[0, π/2]` and interpolated by a
/// shape-preserving cubic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RadialShapeJson", into = "RadialShapeJson")]
pub struct RadialShape {
    interp: Pchip,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type")]
enum RadialShapeJson {
    #[serde(rename = "radial")]
    Radial { theta: Vec<f64>, rho: Vec<f64> },
}

impl From<RadialShape> for RadialShapeJson {
    fn from(s: RadialShape) -> Self {
        Self::Radial { theta: s.theta().to_vec(), rho: s.samples().to_vec() }
    }
}

impl TryFrom<RadialShapeJson> for RadialShape {
    type Error = Error;

    fn try_from(j: RadialShapeJson) -> Result<Self> {
        let RadialShapeJson::Radial { theta, rho } = j;
        Self::new(theta, rho)
    }
}

/// Checks a θ grid on `[0, π/2]` and snaps its ends onto the interval.
pub(crate) fn angular_grid(mut theta: Vec<f64>, min_len: usize) -> Result<Vec<f64>> {
    if theta.len() < min_len {
        return Err(invalid(format!(
            "a radial shape needs at least {min_len} samples, got {}",
            theta.len()
        )));
    }
    if theta.iter().any(|t| !t.is_finite()) {
        return Err(invalid("θ samples must be finite"));
    }
    let last = theta.len() - 1;
    if theta[0].abs() > ENDPOINT_SLACK || (theta[last] - FRAC_PI_2).abs() > ENDPOINT_SLACK {
        return Err(invalid(format!(
            "θ grid must run from 0 to π/2, got [{}, {}]",
            theta[0], theta[last]
        )));
    }
    theta[0] = 0.0;
    theta[last] = FRAC_PI_2;
    if theta.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(invalid("θ grid must be strictly increasing"));
    }
    Ok(theta)
}

impl RadialShape {
    pub fn new(theta: Vec<f64>, rho: Vec<f64>) -> Result<Self> {
        let theta = angular_grid(theta, MIN_SAMPLES)?;
        if rho.len() != theta.len() {
            return Err(invalid(format!(
                "θ and ρ lengths differ ({} vs {})",
                theta.len(),
                rho.len()
            )));
        }
        if let Some(bad) = rho.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
            return Err(invalid(format!("ρ must be finite and > 0, got {bad}")));
        }
        Ok(Self { interp: Pchip::new(&theta, &rho)? })
    }

    /// Samples `f` on `n` uniform nodes.
    pub fn from_fn(f: impl Fn(f64) -> f64, n: usize) -> Result<Self> {
        let theta = uniform_grid(n.max(2));
        let rho = theta.iter().map(|&t| f(t)).collect();
        Self::new(theta, rho)
    }

    /// `B_R ∩ W` sampled on `n` nodes.
    pub fn quarter_disc(radius: f64, n: usize) -> Result<Self> {
        Self::from_fn(|_| radius, n)
    }

    pub fn theta(&self) -> &[f64] {
        self.interp.knots()
    }

    pub fn samples(&self) -> &[f64] {
        self.interp.values()
    }

    /// The dilation `λ ρ`.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        Self::new(self.theta().to_vec(), self.samples().iter().map(|r| r * lambda).collect())
    }

    /// The boundary arc `r = ρ(θ)` parametrized by `t = θ`.
    pub fn boundary_curve(&self) -> PolarCurve {
        let theta = self.theta().to_vec();
        PolarCurve::new(theta.clone(), self.samples().to_vec(), theta)
            .expect("a valid shape has a valid boundary")
    }
}

impl RadialFunction for RadialShape {
    fn rho_with_derivative(&self, theta: f64) -> (f64, f64) {
        self.interp.eval_with_derivative(theta)
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.theta().to_vec()
    }
}

/// `ρ(θ) = exp(Σ_j a_j cos 2jθ)`, `j = 0..=J`.
///
/// Every member is positive and has `ρ' = 0` at both axes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierShape {
    pub coeffs: Vec<f64>,
}

impl FourierShape {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.iter().any(|a| !a.is_finite()) {
            return Err(invalid("Fourier shape needs at least one finite coefficient"));
        }
        Ok(Self { coeffs })
    }

    pub fn quarter_disc(radius: f64) -> Self {
        Self { coeffs: vec![radius.ln()] }
    }

    /// The dilation `λ ρ`, which only moves `a_0`.
    pub fn scaled(&self, lambda: f64) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += lambda.ln();
        Self { coeffs }
    }

    pub fn to_radial_shape(&self, n: usize) -> Result<RadialShape> {
        RadialShape::from_fn(|t| self.rho(t), n)
    }

    /// `max_θ |ρ(θ)/R - 1|` over `n` uniform nodes.
    pub fn sup_distance_to_arc(&self, radius: f64, n: usize) -> f64 {
        uniform_grid(n.max(2))
            .into_iter()
            .map(|t| (self.rho(t) / radius - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

impl RadialFunction for FourierShape {
    fn rho_with_derivative(&self, theta: f64) -> (f64, f64) {
        let mut log = 0.0;
        let mut dlog = 0.0;
        for (j, a) in self.coeffs.iter().enumerate() {
            let w = 2.0 * j as f64;
            log += a * (w * theta).cos();
            dlog -= a * w * (w * theta).sin();
        }
        let rho = log.exp();
        (rho, rho * dlog)
    }
}

pub(crate) fn uniform_grid(n: usize) -> Vec<f64> {
    let last = n - 1;
    (0..n)
        .map(|i| if i == last { FRAC_PI_2 } else { FRAC_PI_2 * i as f64 / last as f64 })
        .collect()
}
