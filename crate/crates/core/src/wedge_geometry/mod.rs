//! Weighted area and relative perimeter of star-shaped sets in the planar
//! wedge, and the transport `T(r, θ) = (r, σ(θ))` onto the upper half plane.
//!
//! For the planar weight `e^{c|x|²} x^l y^k` a star-shaped set
//! `{0 < r < ρ(θ)}` has
//!
//! ```text
//! μ(M)    = ∫ sin^k θ cos^l θ H_{k+l+1}(ρ(θ)) dθ
//! P_μ(M)  = ∫ e^{cρ²} ρ^{k+l} sin^k θ cos^l θ √(ρ² + ρ'²) dθ
//! ```
//!
//! with `H_m(r) = ∫_0^r e^{ct²} t^m dt`. Only the arc `r = ρ(θ)` counts
//! towards the perimeter; the pieces of the axes are on the wedge boundary.

mod curve;
mod shape;

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

pub use curve::{curve_perimeter, halfplane_perimeter, transport, PolarCurve};
pub use shape::{FourierShape, RadialFunction, RadialShape, DEFAULT_SAMPLES, MIN_SAMPLES};
pub(crate) use shape::{angular_grid, uniform_grid};

use crate::error::{domain, Error, Result};
use crate::quadrature::{big_h, small_h, Integrator};
use crate::sigma_map::SigmaMap;

/// The density `e^{c|x|²} x_1^{k_1} ⋯ x_N^{k_N}` on the open orthant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WeightJson", into = "WeightJson")]
pub struct WedgeWeight {
    c: f64,
    k: Vec<f64>,
    k_sum: f64,
}

#[derive(Serialize, Deserialize)]
struct WeightJson {
    #[serde(rename = "N", default)]
    n: Option<usize>,
    c: f64,
    k: Vec<f64>,
}

impl From<WedgeWeight> for WeightJson {
    fn from(w: WedgeWeight) -> Self {
        Self { n: Some(w.dim()), c: w.c, k: w.k }
    }
}

impl TryFrom<WeightJson> for WedgeWeight {
    type Error = Error;

    fn try_from(j: WeightJson) -> Result<Self> {
        match j.n {
            Some(n) => Self::with_dim(n, j.c, j.k),
            None => Self::new(j.c, j.k),
        }
    }
}

impl WedgeWeight {
    /// The dimension is the length of `k`.
    pub fn new(c: f64, k: Vec<f64>) -> Result<Self> {
        if k.len() < 2 {
            return Err(domain(format!("N must be >= 2, got {}", k.len())));
        }
        if !(c >= 0.0) || !c.is_finite() {
            return Err(domain(format!("c must be finite and >= 0, got {c}")));
        }
        if let Some(bad) = k.iter().find(|v| !(**v >= 0.0) || !v.is_finite()) {
            return Err(domain(format!("k must be >= 0, got {bad}")));
        }
        let k_sum = k.iter().sum();
        Ok(Self { c, k, k_sum })
    }

    pub fn with_dim(n: usize, c: f64, k: Vec<f64>) -> Result<Self> {
        if k.len() != n {
            return Err(domain(format!("N = {n} but {} exponents given", k.len())));
        }
        Self::new(c, k)
    }

    /// Planar weight `e^{c|x|²} x^{k1} y^{k2}`.
    pub fn planar(c: f64, k1: f64, k2: f64) -> Result<Self> {
        Self::new(c, vec![k1, k2])
    }

    pub fn dim(&self) -> usize {
        self.k.len()
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn k(&self) -> &[f64] {
        &self.k
    }

    /// `|k|`.
    pub fn k_sum(&self) -> f64 {
        self.k_sum
    }

    /// `N - 1 + |k|`, the exponent of the radial density.
    pub fn radial_exponent(&self) -> f64 {
        (self.dim() - 1) as f64 + self.k_sum
    }

    /// For `N = 2`, the exponents `(k, l)` of `sin^k θ cos^l θ`:
    /// `k` belongs to `y`, `l` to `x`.
    pub fn planar_exponents(&self) -> Result<(f64, f64)> {
        if self.dim() != 2 {
            return Err(domain(format!("a planar weight is needed, got N = {}", self.dim())));
        }
        Ok((self.k[1], self.k[0]))
    }

    /// The half-plane weight paired with this planar weight by the transport.
    pub fn half_plane(&self) -> Result<HalfPlaneWeight> {
        let (k, l) = self.planar_exponents()?;
        Ok(HalfPlaneWeight { c: self.c, m: k + l })
    }
}

/// `e^{c(u² + v²)} v^m` on the upper half plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfPlaneWeight {
    pub c: f64,
    pub m: f64,
}

/// `sin^k θ cos^l θ`, with `cos θ` taken as `sin(π/2 - θ)` so the factor
/// stays accurate next to `π/2`.
pub(crate) fn angular_density(theta: f64, k: f64, l: f64) -> f64 {
    let mut v = 1.0;
    if k != 0.0 {
        v *= theta.sin().powf(k);
    }
    if l != 0.0 {
        v *= (FRAC_PI_2 - theta).sin().powf(l);
    }
    v
}

fn integrate_angle(shape: &impl RadialFunction, f: impl Fn(f64) -> f64, tol: f64) -> Result<f64> {
    Ok(Integrator::relative(tol).integrate_with_breaks(f, &shape.breakpoints())?.value)
}

/// `μ(M)` for a planar weight.
pub fn measure2d(shape: &impl RadialFunction, w: &WedgeWeight, tol: f64) -> Result<f64> {
    let (k, l) = w.planar_exponents()?;
    let (c, m) = (w.c(), k + l + 1.0);
    integrate_angle(
        shape,
        |t| angular_density(t, k, l) * big_h(shape.rho(t), c, m, tol).unwrap_or(f64::NAN),
        tol,
    )
}

/// Relative perimeter `P_μ(M, W)` for a planar weight.
pub fn perimeter2d(shape: &impl RadialFunction, w: &WedgeWeight, tol: f64) -> Result<f64> {
    let (k, l) = w.planar_exponents()?;
    let c = w.c();
    integrate_angle(
        shape,
        |t| {
            let (r, dr) = shape.rho_with_derivative(t);
            small_h(r, c, k + l) * angular_density(t, k, l) * (r * r + dr * dr).sqrt()
        },
        tol,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContractionReport {
    /// `c1 P_μ̃(T(M))`.
    pub lhs: f64,
    /// `P_μ(M)`.
    pub rhs: f64,
    pub ok: bool,
    pub equality: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub mu: f64,
    pub c1_mu_tilde: f64,
    pub rel_gap: f64,
    pub ok: bool,
}

fn check_map(w: &WedgeWeight, map: &SigmaMap) -> Result<(f64, f64)> {
    let (k, l) = w.planar_exponents()?;
    if map.k() != k || map.l() != l {
        return Err(domain(format!(
            "σ was built for (k, l) = ({}, {}) but the weight needs ({k}, {l})",
            map.k(),
            map.l()
        )));
    }
    Ok((k, l))
}

/// Compares `c1 P_μ̃(T(M))` with `P_μ(M)`.
///
/// The transported boundary is integrated in the original parameter `θ`,
/// with `σ(θ)` solved exactly at every quadrature point. Quadratures run at
/// `tol`; the comparison uses `tol_cmp · (1 + P_μ(M))`.
pub fn check_contraction(
    shape: &impl RadialFunction,
    w: &WedgeWeight,
    map: &SigmaMap,
    tol: f64,
    tol_cmp: f64,
) -> Result<ContractionReport> {
    let (k, l) = check_map(w, map)?;
    let (c, m, c1) = (w.c(), k + l, map.c1());
    let rhs = perimeter2d(shape, w, tol)?;
    // c1 · e^{cρ²} ρ^m √((ρ σ')² + ρ'²) sin^m σ, where σ' sin^m σ = sin^k cos^l / c1.
    let lhs = integrate_angle(
        shape,
        |t| {
            let (r, dr) = shape.rho_with_derivative(t);
            let Ok(p) = map.eval_point(t) else { return f64::NAN };
            let q = map.weighted_derivative(t);
            let s = if m == 0.0 { 1.0 } else { p.sin_sigma.powf(m) };
            c1 * small_h(r, c, m) * ((r * q).powi(2) + (dr * s).powi(2)).sqrt()
        },
        tol,
    )?;
    let slack = tol_cmp * (1.0 + rhs);
    Ok(ContractionReport {
        lhs,
        rhs,
        ok: lhs <= rhs + slack,
        equality: (lhs - rhs).abs() <= slack,
    })
}

/// Compares `μ(M)` with `c1 μ̃(T(M))`.
///
/// `μ̃(T(M)) = ∫_0^π sin^m s H_{m+1}(ρ(σ^{-1}(s))) ds` is integrated over the
/// image angle `s`, which does not share any quadrature with `μ(M)`.
pub fn check_measure_preservation(
    shape: &impl RadialFunction,
    w: &WedgeWeight,
    map: &SigmaMap,
    tol: f64,
    tol_rel: f64,
) -> Result<MeasureReport> {
    let (k, l) = check_map(w, map)?;
    let (c, m) = (w.c(), k + l);
    let mu = measure2d(shape, w, tol)?;
    let mut breaks = shape
        .breakpoints()
        .into_iter()
        .map(|t| map.eval(t))
        .collect::<Result<Vec<_>>>()?;
    breaks.push(FRAC_PI_2);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let mu_tilde = Integrator::relative(tol)
        .integrate_with_breaks(
            |s| {
                let Ok(theta) = map.inverse(s) else { return f64::NAN };
                let ang = if m == 0.0 { 1.0 } else { s.min(PI - s).sin().powf(m) };
                ang * big_h(shape.rho(theta), c, m + 1.0, tol).unwrap_or(f64::NAN)
            },
            &breaks,
        )?
        .value;
    let c1_mu_tilde = map.c1() * mu_tilde;
    let rel_gap = (mu - c1_mu_tilde).abs() / mu.abs().max(f64::MIN_POSITIVE);
    Ok(MeasureReport { mu, c1_mu_tilde, rel_gap, ok: rel_gap <= tol_rel })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::kappa;

    const TOL: f64 = 1e-12;

    #[test]
    fn weight_validation() {
        assert!(WedgeWeight::new(0.0, vec![1.0]).is_err());
        assert!(WedgeWeight::new(-1.0, vec![0.0, 0.0]).is_err());
        assert!(WedgeWeight::new(0.0, vec![0.0, -0.5]).is_err());
        assert!(WedgeWeight::with_dim(3, 0.0, vec![0.0, 0.0]).is_err());
        let w = WedgeWeight::new(0.5, vec![1.0, 2.0, 0.5]).unwrap();
        assert_eq!(w.k_sum(), 3.5);
        assert_eq!(w.radial_exponent(), 5.5);
        assert!(w.planar_exponents().is_err());
        let text = serde_json::to_string(&w).unwrap();
        assert_eq!(serde_json::from_str::<WedgeWeight>(&text).unwrap(), w);
    }

    #[test]
    fn quarter_disc_measures() {
        let disc = RadialShape::quarter_disc(1.0, 65).unwrap();
        let flat = WedgeWeight::planar(0.0, 0.0, 0.0).unwrap();
        assert!((measure2d(&disc, &flat, TOL).unwrap() - PI / 4.0).abs() < 1e-12);
        let w11 = WedgeWeight::planar(0.0, 1.0, 1.0).unwrap();
        assert!((measure2d(&disc, &w11, TOL).unwrap() - 0.125).abs() < 1e-12);
        for (k1, k2, r) in [(0.5, 2.0, 1.7), (3.0, 0.0, 0.4)] {
            let w = WedgeWeight::planar(0.0, k1, k2).unwrap();
            let d = FourierShape::quarter_disc(r);
            let p = 2.0 + k1 + k2;
            let kap = kappa(&[k1, k2], TOL).unwrap();
            let expect = kap * r.powf(p) / p;
            assert!((measure2d(&d, &w, TOL).unwrap() / expect - 1.0).abs() < 1e-11);
            let expect = kap * r.powf(p - 1.0);
            assert!((perimeter2d(&d, &w, TOL).unwrap() / expect - 1.0).abs() < 1e-11);
        }
    }

    #[test]
    fn quarter_arc_perimeters() {
        let disc = RadialShape::quarter_disc(1.0, 33).unwrap();
        let flat = WedgeWeight::planar(0.0, 0.0, 0.0).unwrap();
        assert!((perimeter2d(&disc, &flat, TOL).unwrap() - FRAC_PI_2).abs() < 1e-12);
        let w11 = WedgeWeight::planar(0.0, 1.0, 1.0).unwrap();
        assert!((perimeter2d(&disc, &w11, TOL).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn graph_curve_matches_perimeter() {
        let s = RadialShape::from_fn(|t| 1.0 + 0.3 * (2.0 * t).cos() - 0.1 * (6.0 * t).sin(), 65)
            .unwrap();
        let w = WedgeWeight::planar(0.7, 1.0, 2.0).unwrap();
        let a = perimeter2d(&s, &w, TOL).unwrap();
        let b = curve_perimeter(&s.boundary_curve(), &w, TOL).unwrap();
        assert!((a / b - 1.0).abs() < 1e-11);
    }

    #[test]
    fn transport_identities() {
        let s = FourierShape::new(vec![0.0, 0.3]).unwrap();
        let w = WedgeWeight::planar(0.0, 1.0, 1.0).unwrap();
        let map = SigmaMap::new(1.0, 1.0, 65, 1e-10).unwrap();
        let rep = check_contraction(&s, &w, &map, TOL, 1e-9).unwrap();
        assert!(rep.ok && !rep.equality, "{rep:?}");
        let rep = check_measure_preservation(&s, &w, &map, TOL, 1e-9).unwrap();
        assert!(rep.ok, "{rep:?}");

        let disc = FourierShape::quarter_disc(1.3);
        let rep = check_contraction(&disc, &w, &map, TOL, 1e-9).unwrap();
        assert!(rep.equality, "{rep:?}");

        let flat = WedgeWeight::planar(0.0, 0.0, 0.0).unwrap();
        let id = SigmaMap::new(0.0, 0.0, 65, 1e-10).unwrap();
        let rep = check_contraction(&s, &flat, &id, TOL, 1e-10).unwrap();
        // σ = 2θ: the image has length ∫ √(4ρ² + ρ'²) dθ.
        let direct = Integrator::relative(TOL)
            .integrate(
                |t| {
                    let (r, dr) = s.rho_with_derivative(t);
                    0.5 * (4.0 * r * r + dr * dr).sqrt()
                },
                0.0,
                FRAC_PI_2,
            )
            .unwrap()
            .value;
        assert!((rep.lhs - direct).abs() < 1e-11 && rep.ok && !rep.equality, "{rep:?}");

        let unit = RadialShape::quarter_disc(1.0, 33).unwrap();
        let w10 = WedgeWeight::planar(0.0, 0.0, 1.0).unwrap();
        let k1 = SigmaMap::new(1.0, 0.0, 65, 1e-10).unwrap();
        let rep = check_measure_preservation(&unit, &w10, &k1, TOL, 1e-10).unwrap();
        assert!((rep.mu - 1.0 / 3.0).abs() < 1e-12);
        assert!((rep.c1_mu_tilde - 1.0 / 3.0).abs() < 1e-10);
        assert!(check_contraction(&unit, &w11_weight(), &k1, TOL, 1e-9).is_err());
    }

    fn w11_weight() -> WedgeWeight {
        WedgeWeight::planar(0.0, 1.0, 1.0).unwrap()
    }
}
