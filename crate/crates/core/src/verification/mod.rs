//! Empirical checks of the isoperimetric inequality in the planar wedge:
//! randomized sweeps over smooth star-shaped sets, and constrained
//! perimeter minimization that should land on the quarter disc.

pub mod nelder_mead;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::profile::IsoperimetricProfile;
use crate::quadrature::{invert_increasing, small_h, Integrator};
use crate::wedge_geometry::{
    angular_density, measure2d, perimeter2d, FourierShape, RadialFunction, WedgeWeight,
};
use nelder_mead::{minimize, SimplexOptions};

/// Name of the generator behind every seeded draw.
pub const RNG_NAME: &str = "ChaCha8Rng";
pub const DEFAULT_BASIS: usize = 6;
pub const DEFAULT_TOL_ABS: f64 = 1e-7;

/// `ρ(θ) = exp(Σ_{j=0}^{J} a_j cos 2jθ)` with `|a_j| <= amplitude`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeFamily {
    pub basis: usize,
    pub amplitude: f64,
}

impl ShapeFamily {
    pub fn new(basis: usize, amplitude: f64) -> Result<Self> {
        if !(amplitude >= 0.0) || !amplitude.is_finite() {
            return Err(domain(format!("amplitude must be finite and >= 0, got {amplitude}")));
        }
        Ok(Self { basis, amplitude })
    }

    /// Coefficients `a_0..a_J`, uniform in `[-amplitude, amplitude]`.
    pub fn draw(&self, rng: &mut impl Rng) -> Vec<f64> {
        (0..=self.basis)
            .map(|_| if self.amplitude == 0.0 { 0.0 } else { rng.random_range(-self.amplitude..=self.amplitude) })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepOptions {
    pub basis: usize,
    /// Quadrature tolerance.
    pub tol: f64,
    /// A sample violates the inequality when
    /// `slack < -tol_abs · (1 + bound)`.
    pub tol_abs: f64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self { basis: DEFAULT_BASIS, tol: 1e-10, tol_abs: DEFAULT_TOL_ABS }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub idx: usize,
    pub coeffs: Vec<f64>,
    pub measure: f64,
    pub perimeter: f64,
    pub profile_bound: f64,
    pub slack: f64,
    /// False when some quantity overflowed or failed to converge; such
    /// samples are counted apart from violations.
    pub finite: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub rng: String,
    pub seed: u64,
    pub weight: WedgeWeight,
    pub family: ShapeFamily,
    pub options: SweepOptions,
    pub violations: usize,
    pub violating: Vec<usize>,
    pub non_finite: usize,
    pub min_slack: f64,
    /// Smallest `slack / bound`.
    pub min_rel_slack: f64,
    pub records: Vec<SampleRecord>,
}

impl VerificationReport {
    /// Columns `idx,m,P,I,slack`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("idx,m,P,I,slack\n");
        for r in &self.records {
            out.push_str(&format!(
                "{},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                r.idx, r.measure, r.perimeter, r.profile_bound, r.slack
            ));
        }
        out
    }
}

fn evaluate_sample(
    idx: usize,
    coeffs: Vec<f64>,
    w: &WedgeWeight,
    profile: &IsoperimetricProfile,
    tol: f64,
) -> SampleRecord {
    let shape = FourierShape { coeffs };
    let run = || -> Result<(f64, f64, f64)> {
        let m = measure2d(&shape, w, tol)?;
        let p = perimeter2d(&shape, w, tol)?;
        let bound = profile.profile_value(m)?;
        Ok((m, p, bound))
    };
    let (measure, perimeter, profile_bound) = run().unwrap_or((f64::NAN, f64::NAN, f64::NAN));
    let slack = perimeter - profile_bound;
    let finite = measure.is_finite() && perimeter.is_finite() && profile_bound.is_finite() && measure > 0.0;
    SampleRecord { idx, coeffs: shape.coeffs, measure, perimeter, profile_bound, slack, finite }
}

/// Draws `n` shapes of the family and records `P_μ(M) - I(μ(M))` for each.
///
/// Coefficients are drawn sequentially from one seeded stream before any
/// evaluation, so the report does not depend on the thread count.
pub fn random_sweep(
    w: &WedgeWeight,
    n: usize,
    seed: u64,
    amplitude: f64,
    opts: &SweepOptions,
) -> Result<VerificationReport> {
    if n == 0 {
        return Err(domain("n must be >= 1"));
    }
    w.planar_exponents()?;
    let family = ShapeFamily::new(opts.basis, amplitude)?;
    let profile = IsoperimetricProfile::new(w.clone(), opts.tol)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<Vec<f64>> = (0..n).map(|_| family.draw(&mut rng)).collect();
    let records: Vec<SampleRecord> = draws
        .into_par_iter()
        .enumerate()
        .map(|(idx, coeffs)| evaluate_sample(idx, coeffs, w, &profile, opts.tol))
        .collect();

    let violating: Vec<usize> = records
        .iter()
        .filter(|r| r.finite && r.slack < -opts.tol_abs * (1.0 + r.profile_bound))
        .map(|r| r.idx)
        .collect();
    let finite = records.iter().filter(|r| r.finite);
    let min_slack = finite.clone().map(|r| r.slack).fold(f64::INFINITY, f64::min);
    let min_rel_slack = finite.map(|r| r.slack / r.profile_bound).fold(f64::INFINITY, f64::min);
    Ok(VerificationReport {
        rng: RNG_NAME.to_string(),
        seed,
        weight: w.clone(),
        family,
        options: *opts,
        violations: violating.len(),
        violating,
        non_finite: records.iter().filter(|r| !r.finite).count(),
        min_slack,
        min_rel_slack,
        records,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizeOptions {
    pub basis: usize,
    pub seed: u64,
    /// Half-width of the uniform draw for the starting coefficients
    /// `a_1..a_J`; ignored when `start` is given.
    pub start_amplitude: f64,
    pub start: Option<Vec<f64>>,
    pub max_iter: usize,
    /// Fresh simplices started from the incumbent once a run stalls.
    pub restarts: usize,
    pub tol: f64,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        Self {
            basis: DEFAULT_BASIS,
            seed: 0,
            start_amplitude: 0.2,
            start: None,
            max_iter: 4000,
            restarts: 3,
            tol: 1e-11,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizeResult {
    pub shape: FourierShape,
    pub measure: f64,
    pub perimeter: f64,
    pub bound: f64,
    /// `(P - I(m)) / I(m)`.
    pub gap: f64,
    /// Radius of the quarter disc of measure `m`.
    pub radius: f64,
    /// `max_θ |ρ(θ)/R - 1|`.
    pub sup_distance: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub restarts_used: usize,
    pub converged: bool,
    /// Best perimeter after every accepted simplex iteration.
    pub history: Vec<f64>,
}

/// Rescales `exp(Σ_{j>=1} a_j cos 2jθ)` so the set has measure `m`, by
/// choosing `a_0`.
pub fn project_to_measure(
    tail: &[f64],
    w: &WedgeWeight,
    m: f64,
    tol: f64,
) -> Result<FourierShape> {
    let (k, l) = w.planar_exponents()?;
    let mut coeffs = Vec::with_capacity(tail.len() + 1);
    coeffs.push(0.0);
    coeffs.extend_from_slice(tail);
    let base = FourierShape::new(coeffs)?;
    let flat = WedgeWeight::planar(0.0, w.k()[0], w.k()[1])?;
    let p = 2.0 + k + l;
    // At c = 0 the measure is homogeneous of degree p in the scale.
    let lambda0 = (m / measure2d(&base, &flat, tol)?).powf(1.0 / p);
    if w.c() == 0.0 {
        return Ok(base.scaled(lambda0));
    }
    // e^{cr²} >= 1, so lambda0 overshoots; d μ(λρ)/dλ = ∫ w ρ h(λρ).
    let c = w.c();
    let ln_m = m.ln();
    let phi = |lambda: f64| -> Result<(f64, f64)> {
        let shape = base.scaled(lambda);
        let mu = measure2d(&shape, w, tol)?;
        let dmu = Integrator::relative(tol)
            .integrate(
                |t| {
                    let r = base.rho(t);
                    angular_density(t, k, l) * r * small_h(lambda * r, c, k + l + 1.0)
                },
                0.0,
                std::f64::consts::FRAC_PI_2,
            )?
            .value;
        Ok((mu.ln(), dmu / mu))
    };
    let mut lo = lambda0;
    loop {
        lo *= 0.5;
        if lo < 1e-300 {
            return Err(Error::NonConvergence {
                what: "measure projection",
                value: lambda0,
                error_estimate: f64::INFINITY,
                iterations: 1000,
            });
        }
        if phi(lo)?.0 < ln_m {
            break;
        }
    }
    let lambda = invert_increasing(phi, ln_m, lo, lambda0, lambda0, 1e-15)?;
    Ok(base.scaled(lambda))
}

/// Minimizes `P_μ` over the Fourier family at fixed measure `m`.
pub fn optimize_shape(w: &WedgeWeight, m: f64, opts: &OptimizeOptions) -> Result<OptimizeResult> {
    if !(m > 0.0) || !m.is_finite() {
        return Err(domain(format!("m must be finite and > 0, got {m}")));
    }
    let profile = IsoperimetricProfile::new(w.clone(), opts.tol)?;
    let start = match &opts.start {
        Some(s) => {
            if s.len() != opts.basis {
                return Err(domain(format!(
                    "start needs {} coefficients a_1..a_J, got {}",
                    opts.basis,
                    s.len()
                )));
            }
            s.clone()
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let fam = ShapeFamily::new(opts.basis.saturating_sub(1), opts.start_amplitude)?;
            if opts.basis == 0 { Vec::new() } else { fam.draw(&mut rng) }
        }
    };
    let objective = |tail: &[f64]| -> Result<f64> {
        match project_to_measure(tail, w, m, opts.tol) {
            Ok(shape) => Ok(perimeter2d(&shape, w, opts.tol).unwrap_or(f64::INFINITY)),
            Err(Error::NonConvergence { .. }) | Err(Error::NonFinite { .. }) => Ok(f64::INFINITY),
            Err(e) => Err(e),
        }
    };

    let mut x = start;
    let mut history = Vec::new();
    let (mut iterations, mut evaluations, mut restarts_used) = (0, 0, 0);
    let mut step = 0.1;
    let mut last;
    let mut converged;
    loop {
        let so = SimplexOptions { step, max_iter: opts.max_iter, f_tol: 1e-12, x_tol: 1e-6 };
        let run = minimize(objective, &x, &so)?;
        iterations += run.iterations;
        evaluations += run.evaluations;
        let improved = history.last().map_or(true, |&h: &f64| run.f < h * (1.0 - 1e-13));
        history.extend(run.history.iter().copied());
        x = run.x;
        last = run.f;
        converged = run.converged;
        if restarts_used >= opts.restarts || (!improved && converged) {
            break;
        }
        restarts_used += 1;
        step = 0.05;
    }
    // Keep the recorded best values monotone across restarts.
    for i in 1..history.len() {
        history[i] = history[i].min(history[i - 1]);
    }
    if !converged && !last.is_finite() {
        return Err(Error::NonConvergence {
            what: "shape optimization",
            value: last,
            error_estimate: f64::INFINITY,
            iterations,
        });
    }

    let shape = project_to_measure(&x, w, m, opts.tol)?;
    let measure = measure2d(&shape, w, opts.tol)?;
    let perimeter = perimeter2d(&shape, w, opts.tol)?;
    let bound = profile.profile_value(m)?;
    let radius = profile.quarter_ball_radius(m)?;
    Ok(OptimizeResult {
        sup_distance: shape.sup_distance_to_arc(radius, 1025),
        shape,
        measure,
        perimeter,
        bound,
        gap: (perimeter - bound) / bound,
        radius,
        iterations,
        evaluations,
        restarts_used,
        converged,
        history,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub m: f64,
    pub radius: f64,
    pub profile: f64,
}

/// `(m, R(m), I(m))` for each `m` of an increasing positive grid.
pub fn profile_scan(w: &WedgeWeight, m_grid: &[f64], tol: f64) -> Result<Vec<ProfileRow>> {
    if m_grid.is_empty() {
        return Err(domain("the m grid is empty"));
    }
    if let Some(bad) = m_grid.iter().find(|m| !(**m > 0.0) || !m.is_finite()) {
        return Err(domain(format!("m must be finite and > 0, got {bad}")));
    }
    if m_grid.windows(2).any(|p| !(p[0] < p[1])) {
        return Err(domain("the m grid must be strictly increasing"));
    }
    let profile = IsoperimetricProfile::new(w.clone(), tol)?;
    m_grid
        .iter()
        .map(|&m| {
            Ok(ProfileRow {
                m,
                radius: profile.quarter_ball_radius(m)?,
                profile: profile.profile_value(m)?,
            })
        })
        .collect()
}

/// Columns `m,R,I`.
pub fn profile_csv(rows: &[ProfileRow]) -> String {
    let mut out = String::from("m,R,I\n");
    for r in rows {
        out.push_str(&format!("{:.16e},{:.16e},{:.16e}\n", r.m, r.radius, r.profile));
    }
    out
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, PI};

    use super::*;

    #[test]
    fn zero_amplitude_gives_quarter_discs() {
        let w = WedgeWeight::planar(0.5, 1.0, 2.0).unwrap();
        let rep = random_sweep(&w, 5, 3, 0.0, &SweepOptions::default()).unwrap();
        assert_eq!(rep.violations, 0);
        for r in &rep.records {
            assert!(r.slack.abs() < 1e-8 * (1.0 + r.profile_bound), "{r:?}");
        }
    }

    #[test]
    fn sweep_is_deterministic() {
        let w = WedgeWeight::planar(0.0, 1.0, 1.0).unwrap();
        let opts = SweepOptions { basis: 3, ..Default::default() };
        let a = random_sweep(&w, 20, 11, 0.3, &opts).unwrap();
        let b = random_sweep(&w, 20, 11, 0.3, &opts).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.violations, 0);
        assert!(a.min_slack > 0.0);
        let c = random_sweep(&w, 20, 12, 0.3, &opts).unwrap();
        assert_ne!(a.records[0].coeffs, c.records[0].coeffs);
        assert!(a.to_csv().starts_with("idx,m,P,I,slack\n0,"));
    }

    #[test]
    fn projection_hits_measure() {
        for c in [0.0, 1.0] {
            let w = WedgeWeight::planar(c, 0.5, 2.0).unwrap();
            let s = project_to_measure(&[0.2, -0.1], &w, 0.3, 1e-12).unwrap();
            assert!((measure2d(&s, &w, 1e-12).unwrap() / 0.3 - 1.0).abs() < 1e-11);
        }
    }

    #[test]
    fn optimizer_from_quarter_disc_stays() {
        let w = WedgeWeight::planar(0.0, 1.0, 1.0).unwrap();
        let opts = OptimizeOptions { basis: 3, start: Some(vec![0.0; 3]), ..Default::default() };
        let r = optimize_shape(&w, 0.125, &opts).unwrap();
        assert!(r.gap.abs() <= 1e-8, "{r:?}");
        assert!((r.radius - 1.0).abs() < 1e-12);
    }

    #[test]
    fn optimizer_recovers_quarter_disc() {
        let w = WedgeWeight::planar(0.0, 1.0, 1.0).unwrap();
        let opts = OptimizeOptions { basis: 4, seed: 5, ..Default::default() };
        let r = optimize_shape(&w, 0.125, &opts).unwrap();
        assert!(r.gap <= 5e-3 && r.gap >= -1e-6, "{r:?}");
        assert!(r.sup_distance <= 1e-2, "{r:?}");
        assert!(r.history.windows(2).all(|p| p[1] <= p[0]));
    }

    #[test]
    fn scan_examples() {
        let w = WedgeWeight::planar(0.0, 1.0, 1.0).unwrap();
        let rows = profile_scan(&w, &[0.125, 2.0], 1e-12).unwrap();
        assert!((rows[0].profile - 0.5).abs() < 1e-12);
        assert!((rows[1].profile / rows[0].profile - 8.0).abs() < 1e-10);
        let flat = WedgeWeight::planar(0.0, 0.0, 0.0).unwrap();
        let rows = profile_scan(&flat, &[PI / 4.0], 1e-12).unwrap();
        assert!((rows[0].profile - FRAC_PI_2).abs() < 1e-12);
        assert!(profile_scan(&w, &[1.0, 0.5], 1e-12).is_err());
        assert!(profile_scan(&w, &[0.0], 1e-12).is_err());
    }
}
