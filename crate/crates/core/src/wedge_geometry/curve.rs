//! Parametrized curves `t ↦ (r(t), θ(t))` and weighted lengths along them.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use super::{angular_density, HalfPlaneWeight, WedgeWeight};
use crate::error::{domain, invalid, Error, Result};
use crate::interp::Pchip;
use crate::quadrature::{small_h, Integrator};
use crate::sigma_map::SigmaMap;

/// Polar curve through the nodes `(t_i, r_i, θ_i)`, with `r` and `θ`
/// interpolated in `t` by shape-preserving cubics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolarCurveJson", into = "PolarCurveJson")]
pub struct PolarCurve {
    r: Pchip,
    theta: Pchip,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type")]
enum PolarCurveJson {
    #[serde(rename = "polar_curve")]
    PolarCurve { t: Vec<f64>, r: Vec<f64>, theta: Vec<f64> },
}

impl From<PolarCurve> for PolarCurveJson {
    fn from(c: PolarCurve) -> Self {
        Self::PolarCurve { t: c.t().to_vec(), r: c.r_nodes().to_vec(), theta: c.theta_nodes().to_vec() }
    }
}

impl TryFrom<PolarCurveJson> for PolarCurve {
    type Error = Error;

    fn try_from(j: PolarCurveJson) -> Result<Self> {
        let PolarCurveJson::PolarCurve { t, r, theta } = j;
        Self::new(t, r, theta)
    }
}

impl PolarCurve {
    /// `r_i >= 0` and `θ_i ∈ [0, π]`; curves in the wedge additionally keep
    /// `θ <= π/2`, which [`curve_perimeter`] checks.
    pub fn new(t: Vec<f64>, r: Vec<f64>, theta: Vec<f64>) -> Result<Self> {
        if t.len() < 2 || r.len() != t.len() || theta.len() != t.len() {
            return Err(invalid(format!(
                "a polar curve needs >= 2 nodes and equal lengths (t {}, r {}, θ {})",
                t.len(),
                r.len(),
                theta.len()
            )));
        }
        if let Some(bad) = r.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(invalid(format!("r must be finite and >= 0, got {bad}")));
        }
        if let Some(bad) = theta.iter().find(|v| !(**v >= 0.0 && **v <= PI)) {
            return Err(invalid(format!("θ must lie in [0, π], got {bad}")));
        }
        Ok(Self { r: Pchip::new(&t, &r)?, theta: Pchip::new(&t, &theta)? })
    }

    /// Straight ray piece at fixed angle, parametrized by `r`.
    pub fn ray(theta: f64, r0: f64, r1: f64, n: usize) -> Result<Self> {
        let n = n.max(2);
        let r: Vec<f64> = (0..n).map(|i| r0 + (r1 - r0) * i as f64 / (n - 1) as f64).collect();
        Self::new(r.clone(), r, vec![theta; n])
    }

    /// Arc `r = radius`, `θ ∈ [θ0, θ1]`, parametrized by `θ`.
    pub fn arc(radius: f64, theta0: f64, theta1: f64, n: usize) -> Result<Self> {
        let n = n.max(2);
        let theta: Vec<f64> =
            (0..n).map(|i| theta0 + (theta1 - theta0) * i as f64 / (n - 1) as f64).collect();
        Self::new(theta.clone(), vec![radius; n], theta)
    }

    pub fn t(&self) -> &[f64] {
        self.r.knots()
    }

    pub fn r_nodes(&self) -> &[f64] {
        self.r.values()
    }

    pub fn theta_nodes(&self) -> &[f64] {
        self.theta.values()
    }

    /// `(r, r', θ, θ')` at parameter `t`.
    pub fn eval(&self, t: f64) -> (f64, f64, f64, f64) {
        let (r, dr) = self.r.eval_with_derivative(t);
        let (th, dth) = self.theta.eval_with_derivative(t);
        (r.max(0.0), dr, th.clamp(0.0, PI), dth)
    }

    fn integrate(&self, f: impl Fn(f64) -> f64, tol: f64) -> Result<f64> {
        Ok(Integrator::relative(tol).integrate_with_breaks(f, self.t())?.value)
    }
}

/// Weighted length `∫ e^{cr²} x^l y^k ds` of a curve in the quarter plane
/// under a planar weight.
pub fn curve_perimeter(curve: &PolarCurve, w: &WedgeWeight, tol: f64) -> Result<f64> {
    let (k, l) = w.planar_exponents()?;
    if let Some(bad) = curve.theta_nodes().iter().find(|t| **t > FRAC_PI_2) {
        return Err(domain(format!("wedge curve leaves [0, π/2]: θ = {bad}")));
    }
    let c = w.c();
    curve.integrate(
        |t| {
            let (r, dr, th, dth) = curve.eval(t);
            let th = th.min(FRAC_PI_2);
            small_h(r, c, k + l) * angular_density(th, k, l) * (r * r * dth * dth + dr * dr).sqrt()
        },
        tol,
    )
}

/// Weighted length under `e^{c(u²+v²)} v^m` of a curve in the upper
/// half plane.
pub fn halfplane_perimeter(curve: &PolarCurve, hw: &HalfPlaneWeight, tol: f64) -> Result<f64> {
    let (c, m) = (hw.c, hw.m);
    curve.integrate(
        |t| {
            let (r, dr, th, dth) = curve.eval(t);
            let s = th.min(PI - th).sin();
            let ang = if m == 0.0 { 1.0 } else { s.powf(m) };
            small_h(r, c, m) * ang * (r * r * dth * dth + dr * dr).sqrt()
        },
        tol,
    )
}

/// Image of a wedge curve under `(r, θ) ↦ (r, σ(θ))`, node by node.
pub fn transport(curve: &PolarCurve, map: &SigmaMap) -> Result<PolarCurve> {
    let theta = curve
        .theta_nodes()
        .iter()
        .map(|&t| map.eval(t))
        .collect::<Result<Vec<_>>>()?;
    PolarCurve::new(curve.t().to_vec(), curve.r_nodes().to_vec(), theta)
}
