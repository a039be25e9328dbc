//! The isoperimetric profile `I(m) = κ h(H^{-1}(m/κ))` of the orthant with
//! weight `e^{c|x|²} ∏ x_i^{k_i}`, in any dimension.
//!
//! `h(r) = e^{cr²} r^{N-1+|k|}`, `H` is its primitive from 0 and `κ` the
//! weighted area of the unit sphere inside the orthant. Quarter balls
//! `B_R ∩ W` have measure `κ H(R)` and perimeter `κ h(R)`, so `I` is the
//! perimeter of the quarter ball of measure `m`.

use serde::Serialize;

use crate::error::{domain, Result};
use crate::quadrature::{self, big_h, big_h_inverse, kappa, ln_big_h, ln_small_h};
use crate::wedge_geometry::WedgeWeight;

#[derive(Debug, Clone, Serialize)]
pub struct IsoperimetricProfile {
    weight: WedgeWeight,
    kappa: f64,
    tol: f64,
}

impl IsoperimetricProfile {
    pub fn new(weight: WedgeWeight, tol: f64) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(domain("tolerance must be positive"));
        }
        let kappa = kappa(weight.k(), tol.min(quadrature::DEFAULT_TOL))?;
        Ok(Self { weight, kappa, tol })
    }

    pub fn weight(&self) -> &WedgeWeight {
        &self.weight
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    fn exponent(&self) -> f64 {
        self.weight.radial_exponent()
    }

    /// `h(r) = e^{cr²} r^{N-1+|k|}`.
    pub fn small_h(&self, r: f64) -> Result<f64> {
        if !(r >= 0.0) {
            return Err(domain(format!("h(r) needs r >= 0, got {r}")));
        }
        Ok(quadrature::small_h(r, self.weight.c(), self.exponent()))
    }

    pub fn big_h(&self, r: f64) -> Result<f64> {
        big_h(r, self.weight.c(), self.exponent(), self.tol)
    }

    /// `μ(B_R ∩ W) = κ H(R)`.
    pub fn ball_measure(&self, radius: f64) -> Result<f64> {
        Ok(self.kappa * self.big_h(radius)?)
    }

    /// `P_μ(B_R ∩ W, W) = κ h(R)`.
    pub fn ball_perimeter(&self, radius: f64) -> Result<f64> {
        Ok(self.kappa * self.small_h(radius)?)
    }

    fn check_mass(m: f64) -> Result<()> {
        if !(m > 0.0) || !m.is_finite() {
            return Err(domain(format!("m must be finite and > 0, got {m}")));
        }
        Ok(())
    }

    /// `R = H^{-1}(m/κ)`, the radius of the quarter ball of measure `m`.
    pub fn quarter_ball_radius(&self, m: f64) -> Result<f64> {
        Self::check_mass(m)?;
        big_h_inverse(m / self.kappa, self.weight.c(), self.exponent(), self.tol)
    }

    /// `ln I(m)`; finite even where `I(m)` itself overflows.
    pub fn ln_profile_value(&self, m: f64) -> Result<f64> {
        let r = self.quarter_ball_radius(m)?;
        Ok(self.kappa.ln() + ln_small_h(r, self.weight.c(), self.exponent()))
    }

    /// `I(m) = κ h(H^{-1}(m/κ))`.
    pub fn profile_value(&self, m: f64) -> Result<f64> {
        Ok(self.ln_profile_value(m)?.exp())
    }

    /// The `c = 0` closed form
    /// `κ^{1/(N+|k|)} ((N+|k|) m)^{(N-1+|k|)/(N+|k|)}`.
    pub fn profile_power_case(&self, m: f64) -> Result<f64> {
        if self.weight.c() != 0.0 {
            return Err(domain(format!(
                "the power law needs c = 0, got c = {}",
                self.weight.c()
            )));
        }
        Self::check_mass(m)?;
        let d = self.exponent() + 1.0;
        Ok((self.kappa.ln() / d + (self.exponent() / d) * (d * m).ln()).exp())
    }

    /// `ln H(R) + ln κ`, for callers working with huge measures.
    pub fn ln_ball_measure(&self, radius: f64) -> Result<f64> {
        Ok(self.kappa.ln() + ln_big_h(radius, self.weight.c(), self.exponent(), self.tol)?)
    }
}
