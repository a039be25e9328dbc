//! Slice symmetrization in the octant of `R³`.
//!
//! A set is described by its cross sections `M(x₁)` in the `(x₂, x₃)`
//! quarter plane, each star-shaped with radial function `ρ(x₁, ·)`, given on
//! a grid of `x₁` values. Between grid nodes `ρ²` is interpolated by a
//! four-point Lagrange stencil, so sets whose `ρ²` is a cubic in `x₁` (balls,
//! cylinders, cones) are represented exactly.
//!
//! Symmetrization replaces every section by the quarter disc `Q(x₁)` of the
//! same `ν₂`-measure, `dν₂ = e^{c(x₂² + x₃²)} x₂^{k₂} x₃^{k₃}`. In polar
//! coordinates `Q` collapses to the planar set `K = {0 < r < R(x₁)}` with the
//! weight `dα = a r^{k₂+k₃+1} e^{c(x₁² + r²)} x₁^{k₁}`,
//! `a = ∫_0^{π/2} cos^{k₂} sin^{k₃}`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, invalid, Error, Result};
use crate::interp::{lagrange4, Pchip};
use crate::profile::IsoperimetricProfile;
use crate::quadrature::{big_h, big_h_inverse, kappa, small_h, Integrator};
use crate::wedge_geometry::{angular_density, angular_grid, measure2d, RadialFunction, WedgeWeight};

/// Fewest `x₁` nodes a set may have.
pub const MIN_X_NODES: usize = 4;
/// Suggested `x₁` resolution.
pub const DEFAULT_X_NODES: usize = 65;
/// Fewest `θ` samples per section.
pub const MIN_SLICE_SAMPLES: usize = 9;

const S_FLOOR: f64 = 1e-18;

fn inner_tol(tol: f64) -> f64 {
    (tol * 1e-2).max(1e-14)
}

/// One cross section: `ρ(θ) >= 0` sampled on `[0, π/2]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SliceJson", into = "SliceJson")]
pub struct Slice {
    interp: Pchip,
}

#[derive(Serialize, Deserialize)]
struct SliceJson {
    theta: Vec<f64>,
    rho: Vec<f64>,
}

impl From<Slice> for SliceJson {
    fn from(s: Slice) -> Self {
        Self { theta: s.theta().to_vec(), rho: s.samples().to_vec() }
    }
}

impl TryFrom<SliceJson> for Slice {
    type Error = Error;

    fn try_from(j: SliceJson) -> Result<Self> {
        Self::new(j.theta, j.rho)
    }
}

impl Slice {
    pub fn new(theta: Vec<f64>, rho: Vec<f64>) -> Result<Self> {
        let theta = angular_grid(theta, MIN_SLICE_SAMPLES)?;
        if rho.len() != theta.len() {
            return Err(invalid(format!(
                "slice θ and ρ lengths differ ({} vs {})",
                theta.len(),
                rho.len()
            )));
        }
        if let Some(bad) = rho.iter().find(|r| !(r.is_finite() && **r >= 0.0)) {
            return Err(invalid(format!("slice ρ must be finite and >= 0, got {bad}")));
        }
        Ok(Self { interp: Pchip::new(&theta, &rho)? })
    }

    pub fn from_fn(f: impl Fn(f64) -> f64, n: usize) -> Result<Self> {
        let theta = crate::wedge_geometry::uniform_grid(n.max(2));
        let rho = theta.iter().map(|&t| f(t)).collect();
        Self::new(theta, rho)
    }

    pub fn quarter_disc(radius: f64, n: usize) -> Result<Self> {
        Self::from_fn(|_| radius, n)
    }

    pub fn theta(&self) -> &[f64] {
        self.interp.knots()
    }

    pub fn samples(&self) -> &[f64] {
        self.interp.values()
    }
}

impl RadialFunction for Slice {
    fn rho_with_derivative(&self, theta: f64) -> (f64, f64) {
        let (r, d) = self.interp.eval_with_derivative(theta);
        (r.max(0.0), d)
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.theta().to_vec()
    }
}

/// `{(x₁, ρ cos θ, ρ sin θ): x₁ ∈ (x_first, x_last), 0 < ρ < ρ(x₁, θ)}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SliceSetJson", into = "SliceSetJson")]
pub struct SliceSet3D {
    x1: Vec<f64>,
    slices: Vec<Slice>,
    theta_breaks: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct SliceSetJson {
    x1: Vec<f64>,
    slices: Vec<Slice>,
}

impl From<SliceSet3D> for SliceSetJson {
    fn from(s: SliceSet3D) -> Self {
        Self { x1: s.x1, slices: s.slices }
    }
}

impl TryFrom<SliceSetJson> for SliceSet3D {
    type Error = Error;

    fn try_from(j: SliceSetJson) -> Result<Self> {
        Self::new(j.x1, j.slices)
    }
}

impl SliceSet3D {
    pub fn new(x1: Vec<f64>, slices: Vec<Slice>) -> Result<Self> {
        if x1.len() < MIN_X_NODES {
            return Err(invalid(format!("need at least {MIN_X_NODES} x1 nodes, got {}", x1.len())));
        }
        if slices.len() != x1.len() {
            return Err(invalid(format!(
                "{} x1 nodes but {} slices",
                x1.len(),
                slices.len()
            )));
        }
        if let Some(bad) = x1.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
            return Err(invalid(format!("x1 nodes must be finite and >= 0, got {bad}")));
        }
        if x1.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(invalid("x1 nodes must be strictly increasing"));
        }
        let mut theta_breaks: Vec<f64> =
            slices.iter().flat_map(|s| s.theta().iter().copied()).collect();
        theta_breaks.sort_by(f64::total_cmp);
        theta_breaks.dedup();
        Ok(Self { x1, slices, theta_breaks })
    }

    /// Samples `ρ(x₁, θ)` on the given `x₁` nodes and `n_theta` angles.
    pub fn from_fn(x1: Vec<f64>, n_theta: usize, rho: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let slices = x1
            .iter()
            .map(|&x| Slice::from_fn(|t| rho(x, t), n_theta))
            .collect::<Result<_>>()?;
        Self::new(x1, slices)
    }

    pub fn x1(&self) -> &[f64] {
        &self.x1
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    /// `(s, ∂s/∂x₁, ∂s/∂θ)` for `s = ρ²`.
    fn field(&self, x: f64, theta: f64) -> (f64, f64, f64) {
        let (start, w, dw) = lagrange4(&self.x1, x);
        let (mut s, mut sx, mut st) = (0.0, 0.0, 0.0);
        for j in 0..4 {
            let (r, dr) = self.slices[start + j].rho_with_derivative(theta);
            let sj = r * r;
            s += w[j] * sj;
            sx += dw[j] * sj;
            st += w[j] * 2.0 * r * dr;
        }
        (s.max(0.0), sx, st)
    }

    fn x_integral(&self, f: impl Fn(f64) -> f64, tol: f64) -> Result<f64> {
        Ok(Integrator::relative(tol).integrate_with_breaks(f, &self.x1)?.value)
    }

    fn theta_integral(&self, f: impl Fn(f64) -> f64, tol: f64) -> f64 {
        Integrator::relative(tol)
            .integrate_with_breaks(f, &self.theta_breaks)
            .map(|r| r.value)
            .unwrap_or(f64::NAN)
    }

    /// `ν₂(M(x₁))` between grid nodes.
    fn section_measure(&self, w: &Weight3, x: f64, tol: f64) -> f64 {
        self.theta_integral(
            |t| {
                let (s, _, _) = self.field(x, t);
                angular_density(t, w.k3, w.k2) * big_h(s.sqrt(), w.c, w.m, tol).unwrap_or(f64::NAN)
            },
            tol,
        )
    }
}

/// The exponents of a weight on `R³` split as `x₁` versus the section plane.
#[derive(Debug, Clone, Copy)]
struct Weight3 {
    c: f64,
    k1: f64,
    k2: f64,
    k3: f64,
    /// `k₂ + k₃ + 1`.
    m: f64,
}

impl Weight3 {
    fn new(w: &WedgeWeight) -> Result<Self> {
        if w.dim() != 3 {
            return Err(domain(format!("slice symmetrization needs N = 3, got N = {}", w.dim())));
        }
        let k = w.k();
        Ok(Self { c: w.c(), k1: k[0], k2: k[1], k3: k[2], m: k[1] + k[2] + 1.0 })
    }

    fn axial(&self, x: f64) -> f64 {
        let p = if self.k1 == 0.0 { 1.0 } else { x.powf(self.k1) };
        (self.c * x * x).exp() * p
    }

    fn section_weight(&self) -> WedgeWeight {
        WedgeWeight::planar(self.c, self.k2, self.k3).expect("validated exponents")
    }
}

/// `ν₂` of one section: the planar measure with exponents `(k₂, k₃)`.
pub fn slice_measure(s: &impl RadialFunction, nu2: &WedgeWeight, tol: f64) -> Result<f64> {
    measure2d(s, nu2, tol)
}

/// `μ(M) = ∫ e^{cx₁²} x₁^{k₁} ν₂(M(x₁)) dx₁`.
pub fn measure3d(m: &SliceSet3D, w: &WedgeWeight, tol: f64) -> Result<f64> {
    let w3 = Weight3::new(w)?;
    let inner = inner_tol(tol);
    m.x_integral(|x| w3.axial(x) * m.section_measure(&w3, x, inner), tol)
}

/// Relative perimeter of a sliced set: the lateral surface
/// `ρ = ρ(x₁, θ)` plus the end caps that lie inside the octant.
///
/// The cap at the last node always counts; the first one only when it sits
/// at `x₁ > 0`, since `x₁ = 0` is a wall of the octant.
pub fn perimeter3d_sliceable(m: &SliceSet3D, w: &WedgeWeight, tol: f64) -> Result<f64> {
    let w3 = Weight3::new(w)?;
    let inner = inner_tol(tol);
    let mk = w3.k2 + w3.k3;
    let lateral = m.x_integral(
        |x| {
            w3.axial(x)
                * m.theta_integral(
                    |t| {
                        let (s, sx, st) = m.field(x, t);
                        let s = s.max(S_FLOOR);
                        let area = (s + 0.25 * sx * sx + 0.25 * st * st / s).sqrt();
                        small_h(s.sqrt(), w3.c, mk) * angular_density(t, w3.k3, w3.k2) * area
                    },
                    inner,
                )
        },
        tol,
    )?;
    let nu2 = w3.section_weight();
    let n = m.x1.len();
    let mut caps = w3.axial(m.x1[n - 1]) * slice_measure(&m.slices[n - 1], &nu2, inner)?;
    if m.x1[0] > 0.0 {
        caps += w3.axial(m.x1[0]) * slice_measure(&m.slices[0], &nu2, inner)?;
    }
    Ok(lateral + caps)
}

/// Parameters of `dα = a r^{exponent} e^{c(x₁² + r²)} x₁^{k1} dx₁ dr`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaWeight {
    pub a: f64,
    pub c: f64,
    pub exponent: f64,
    pub k1: f64,
}

/// `K = {(x₁, r): 0 < r < R(x₁)}` in the planar wedge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReducedSetK {
    pub x1: Vec<f64>,
    pub radius: Vec<f64>,
    pub alpha_weight: AlphaWeight,
}

impl ReducedSetK {
    /// `(R², dR²/dx₁)` between nodes, interpolated like the sections of the
    /// 3D set.
    fn radius_sq(&self, x: f64) -> (f64, f64) {
        let (start, w, dw) = lagrange4(&self.x1, x);
        let (mut s, mut sx) = (0.0, 0.0);
        for j in 0..4 {
            let r2 = self.radius[start + j].powi(2);
            s += w[j] * r2;
            sx += dw[j] * r2;
        }
        (s.max(0.0), sx)
    }

    fn density(&self, x: f64, r: f64) -> f64 {
        let aw = &self.alpha_weight;
        let px = if aw.k1 == 0.0 { 1.0 } else { x.powf(aw.k1) };
        aw.a * (aw.c * (x * x + r * r)).exp() * px * r.powf(aw.exponent)
    }

    fn x_integral(&self, f: impl Fn(f64) -> f64, tol: f64) -> Result<f64> {
        Ok(Integrator::relative(tol).integrate_with_breaks(f, &self.x1)?.value)
    }

    fn column(&self, x: f64, radius: f64, tol: f64) -> f64 {
        if radius == 0.0 {
            return 0.0;
        }
        Integrator::relative(tol)
            .integrate(|r| self.density(x, r), 0.0, radius)
            .map(|q| q.value)
            .unwrap_or(f64::NAN)
    }

    /// `α(K)`, integrating the density over `0 < r < R(x₁)` directly.
    pub fn alpha_measure(&self, tol: f64) -> Result<f64> {
        let inner = inner_tol(tol);
        self.x_integral(|x| self.column(x, self.radius_sq(x).0.sqrt(), inner), tol)
    }

    /// `P_α(K, W₂)`: the graph `r = R(x₁)` plus the inner end segments.
    pub fn alpha_perimeter(&self, tol: f64) -> Result<f64> {
        let inner = inner_tol(tol);
        // α-density · √(1 + R'²) = density · √(R² + (s'/2)²) / R, with s = R².
        let graph = self.x_integral(
            |x| {
                let (s, sx) = self.radius_sq(x);
                let s = s.max(S_FLOOR);
                let r = s.sqrt();
                let aw = &self.alpha_weight;
                let px = if aw.k1 == 0.0 { 1.0 } else { x.powf(aw.k1) };
                aw.a * (aw.c * (x * x + s)).exp()
                    * px
                    * r.powf(aw.exponent - 1.0)
                    * (s + 0.25 * sx * sx).sqrt()
            },
            tol,
        )?;
        let n = self.x1.len();
        let mut caps = self.column(self.x1[n - 1], self.radius[n - 1], inner);
        if self.x1[0] > 0.0 {
            caps += self.column(self.x1[0], self.radius[0], inner);
        }
        Ok(graph + caps)
    }

    /// The planar weight of `α` without the factor `a`.
    pub fn planar_weight(&self) -> Result<WedgeWeight> {
        let aw = &self.alpha_weight;
        WedgeWeight::planar(aw.c, aw.k1, aw.exponent)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Symmetrized {
    /// The set with every section replaced by a quarter disc.
    pub q: SliceSet3D,
    pub k: ReducedSetK,
    /// `ν₂(M(x₁))` at the nodes.
    pub section_measures: Vec<f64>,
}

/// Replaces every section by the quarter disc of equal `ν₂`-measure.
pub fn symmetrize(m: &SliceSet3D, w: &WedgeWeight, tol: f64) -> Result<Symmetrized> {
    let w3 = Weight3::new(w)?;
    let nu2 = w3.section_weight();
    let inner = inner_tol(tol);
    let a = kappa(&[w3.k2, w3.k3], inner)?;
    let section_measures = m
        .slices
        .par_iter()
        .map(|s| slice_measure(s, &nu2, inner))
        .collect::<Result<Vec<_>>>()?;
    let radius = section_measures
        .iter()
        .map(|&v| if v > 0.0 { big_h_inverse(v / a, w3.c, w3.m, inner) } else { Ok(0.0) })
        .collect::<Result<Vec<_>>>()?;
    let slices = m
        .slices
        .iter()
        .zip(&radius)
        .map(|(s, &r)| Slice::new(s.theta().to_vec(), vec![r; s.theta().len()]))
        .collect::<Result<_>>()?;
    let q = SliceSet3D::new(m.x1.clone(), slices)?;
    let k = ReducedSetK {
        x1: m.x1.clone(),
        radius,
        alpha_weight: AlphaWeight { a, c: w3.c, exponent: w3.m, k1: w3.k1 },
    };
    Ok(Symmetrized { q, k, section_measures })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureMatch {
    pub mu_m: f64,
    pub mu_q: f64,
    pub rel_gap: f64,
    pub ok: bool,
}

/// `μ(M)` against `μ(Q)`.
pub fn measures_match(
    m: &SliceSet3D,
    q: &SliceSet3D,
    w: &WedgeWeight,
    tol: f64,
    tol_rel: f64,
) -> Result<MeasureMatch> {
    let mu_m = measure3d(m, w, tol)?;
    let mu_q = measure3d(q, w, tol)?;
    let rel_gap = rel(mu_m, mu_q);
    Ok(MeasureMatch { mu_m, mu_q, rel_gap, ok: rel_gap <= tol_rel })
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Step2Report {
    pub mu_m: f64,
    pub mu_q: f64,
    pub alpha_k: f64,
    pub perimeter_m: f64,
    pub perimeter_q: f64,
    pub alpha_perimeter_k: f64,
    /// `a · I₂(α(K)/a)` for the planar weight `(k₁, k₂ + k₃ + 1)`.
    pub alpha_bound: f64,
    /// `I(μ(M))` for the weight on `R³`.
    pub profile_bound: f64,
    /// Radius of the quarter ball `M★` with `μ(M★) = μ(M)`.
    pub mstar_radius: f64,
    /// Relative gap between `a κ₂` and `κ₃`, which makes the planar and
    /// spatial bounds the same function.
    pub kappa_gap: f64,
    pub slack: f64,
    pub mu_ok: bool,
    pub alpha_ok: bool,
    pub perim_ok: bool,
    pub alpha_perim_ok: bool,
    pub final_ok: bool,
    /// Set when the symmetrized radii flip direction at grid scale; the
    /// interpolated set is then a poor stand-in for the sampled one.
    pub radius_oscillation: bool,
}

impl Step2Report {
    pub fn all_ok(&self) -> bool {
        self.mu_ok && self.alpha_ok && self.perim_ok && self.alpha_perim_ok && self.final_ok
    }
}

/// Whether consecutive radius increments change sign on more than an
/// eighth of the grid.
pub fn radius_oscillates(radius: &[f64]) -> bool {
    let scale = radius.iter().copied().fold(0.0, f64::max);
    let d: Vec<f64> = radius.windows(2).map(|w| w[1] - w[0]).collect();
    let flips = d
        .windows(2)
        .filter(|p| p[0] * p[1] < 0.0 && p[0].abs().min(p[1].abs()) > 1e-9 * scale)
        .count();
    flips > 2.max(radius.len() / 8)
}

/// Runs the whole chain `M → Q → K` and compares measures, perimeters and
/// the isoperimetric bound.
pub fn check_step2(m: &SliceSet3D, w: &WedgeWeight, tol: f64, tol_rel: f64) -> Result<(Symmetrized, Step2Report)> {
    let sym = symmetrize(m, w, tol)?;
    let mm = measures_match(m, &sym.q, w, tol, tol_rel)?;
    let alpha_k = sym.k.alpha_measure(tol)?;
    let perimeter_m = perimeter3d_sliceable(m, w, tol)?;
    let perimeter_q = perimeter3d_sliceable(&sym.q, w, tol)?;
    let alpha_perimeter_k = sym.k.alpha_perimeter(tol)?;

    let inner = inner_tol(tol);
    let spatial = IsoperimetricProfile::new(w.clone(), inner)?;
    let planar = IsoperimetricProfile::new(sym.k.planar_weight()?, inner)?;
    let a = sym.k.alpha_weight.a;
    let alpha_bound = a * planar.profile_value(alpha_k / a)?;
    let profile_bound = spatial.profile_value(mm.mu_m)?;
    let mstar_radius = spatial.quarter_ball_radius(mm.mu_m)?;
    let kappa_gap = rel(a * planar.kappa(), spatial.kappa());

    let report = Step2Report {
        mu_m: mm.mu_m,
        mu_q: mm.mu_q,
        alpha_k,
        perimeter_m,
        perimeter_q,
        alpha_perimeter_k,
        alpha_bound,
        profile_bound,
        mstar_radius,
        kappa_gap,
        slack: perimeter_m - profile_bound,
        mu_ok: mm.ok,
        alpha_ok: rel(mm.mu_q, alpha_k) <= tol_rel,
        perim_ok: perimeter_q <= perimeter_m * (1.0 + tol_rel),
        alpha_perim_ok: alpha_perimeter_k >= alpha_bound * (1.0 - tol_rel),
        final_ok: perimeter_m >= profile_bound * (1.0 - tol_rel),
        radius_oscillation: radius_oscillates(&sym.k.radius),
    };
    Ok((sym, report))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    use super::*;

    const TOL: f64 = 1e-10;

    fn grid(a: f64, b: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
    }

    fn flat3() -> WedgeWeight {
        WedgeWeight::new(0.0, vec![0.0; 3]).unwrap()
    }

    #[test]
    fn slice_measure_examples() {
        let disc = Slice::quarter_disc(1.0, 33).unwrap();
        let flat = WedgeWeight::planar(0.0, 0.0, 0.0).unwrap();
        assert!((slice_measure(&disc, &flat, 1e-12).unwrap() - PI / 4.0).abs() < 1e-12);
        let w11 = WedgeWeight::planar(0.0, 1.0, 1.0).unwrap();
        assert!((slice_measure(&disc, &w11, 1e-12).unwrap() - 0.125).abs() < 1e-12);
        let empty = Slice::quarter_disc(0.0, 33).unwrap();
        assert_eq!(slice_measure(&empty, &w11, 1e-12).unwrap(), 0.0);
    }

    #[test]
    fn cylinder_perimeter() {
        let (r, l) = (0.7, 1.5);
        let m = SliceSet3D::from_fn(grid(0.0, l, 9), 33, |_, _| r).unwrap();
        let p = perimeter3d_sliceable(&m, &flat3(), TOL).unwrap();
        let want = FRAC_PI_2 * r * l + PI * r * r / 4.0;
        assert!((p / want - 1.0).abs() < 1e-9, "{p} vs {want}");
        let v = measure3d(&m, &flat3(), TOL).unwrap();
        assert!((v / (PI * r * r * l / 4.0) - 1.0).abs() < 1e-10);
        // Starting off the wall adds the first cap.
        let m = SliceSet3D::from_fn(grid(0.5, 0.5 + l, 9), 33, |_, _| r).unwrap();
        let p = perimeter3d_sliceable(&m, &flat3(), TOL).unwrap();
        assert!((p / (want + PI * r * r / 4.0) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn octant_ball() {
        let r = 1.2;
        let m = SliceSet3D::from_fn(grid(0.0, r, 17), 33, |x, _| (r * r - x * x).max(0.0).sqrt())
            .unwrap();
        let p = perimeter3d_sliceable(&m, &flat3(), TOL).unwrap();
        assert!((p / (FRAC_PI_2 * r * r) - 1.0).abs() < 1e-9, "{p}");
        let v = measure3d(&m, &flat3(), TOL).unwrap();
        assert!((v / (PI * r.powi(3) / 6.0) - 1.0).abs() < 1e-9, "{v}");
    }

    #[test]
    fn square_sections_become_discs() {
        let side = 0.8;
        // The corner of the square is a kink, where any C¹ interpolant is
        // only first-order accurate; a fine θ grid keeps that below 1e-6.
        let m = SliceSet3D::from_fn(grid(0.0, 1.0, 8), 1025, |_, t| {
            side / t.cos().max(t.sin())
        })
        .unwrap();
        assert!((m.slices()[0].rho(FRAC_PI_4) - side * 2f64.sqrt()).abs() < 1e-12);
        let sym = symmetrize(&m, &flat3(), TOL).unwrap();
        for &r in &sym.k.radius {
            assert!((r - 2.0 * side / PI.sqrt()).abs() < 1e-6, "{r}");
        }
    }

    #[test]
    fn closed_form_radius() {
        let w = WedgeWeight::new(0.0, vec![0.5, 1.0, 2.0]).unwrap();
        let m = SliceSet3D::from_fn(grid(0.1, 1.0, 6), 33, |x, t| 1.0 + x * (2.0 * t).cos() * 0.2)
            .unwrap();
        let sym = symmetrize(&m, &w, TOL).unwrap();
        let kap = kappa(&[1.0, 2.0], 1e-13).unwrap();
        for (&v, &r) in sym.section_measures.iter().zip(&sym.k.radius) {
            let want = (5.0 * v / kap).powf(0.2);
            assert!((r / want - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn fixed_point() {
        let w = WedgeWeight::new(0.5, vec![1.0, 1.0, 1.0]).unwrap();
        let m = SliceSet3D::from_fn(grid(0.2, 1.2, 12), 33, |x, t| {
            0.8 + 0.3 * x * x + 0.1 * (4.0 * t).cos()
        })
        .unwrap();
        let once = symmetrize(&m, &w, TOL).unwrap();
        let twice = symmetrize(&once.q, &w, TOL).unwrap();
        for (a, b) in once.k.radius.iter().zip(&twice.k.radius) {
            assert!((a - b).abs() <= 1e-12 * a, "{a} {b}");
        }
    }

    #[test]
    fn box_has_strict_slack() {
        let m = SliceSet3D::from_fn(grid(0.0, 1.0, 9), 1025, |_, t| 1.0 / t.cos().max(t.sin()))
            .unwrap();
        let (_, rep) = check_step2(&m, &flat3(), TOL, 1e-6).unwrap();
        assert!((rep.mu_m - 1.0).abs() < 1e-6, "{rep:?}");
        assert!((rep.perimeter_m - 3.0).abs() < 2e-4, "{rep:?}");
        let bound = FRAC_PI_2.powf(1.0 / 3.0) * 3f64.powf(2.0 / 3.0);
        assert!((rep.profile_bound - bound).abs() < 1e-4);
        assert!(rep.all_ok() && rep.slack > 0.5, "{rep:?}");
    }

    #[test]
    fn oscillation_flag() {
        let smooth: Vec<f64> = (0..40).map(|i| 1.0 + 0.01 * i as f64).collect();
        assert!(!radius_oscillates(&smooth));
        let zigzag: Vec<f64> = (0..40).map(|i| 1.0 + 0.05 * (i % 2) as f64).collect();
        assert!(radius_oscillates(&zigzag));
    }

    #[test]
    fn json_shape() {
        let m = SliceSet3D::from_fn(grid(0.0, 1.0, 4), 9, |x, _| 1.0 - 0.5 * x).unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.starts_with(r#"{"x1":[0.0,"#));
        assert_eq!(serde_json::from_str::<SliceSet3D>(&text).unwrap(), m);
        assert!(serde_json::from_str::<SliceSet3D>(r#"{"x1":[0,1],"slices":[]}"#).is_err());
    }
}
