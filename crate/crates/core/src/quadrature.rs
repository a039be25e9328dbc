//! Adaptive Gauss–Kronrod integration, monotone inversion, and the radial and
//! angular constants of the weighted measure.
//!
//! The integrator is a globally adaptive bisection scheme driven by the
//! 10-point Gauss / 21-point Kronrod pair. The worst segment (by error
//! estimate) is split until the summed estimate drops below
//! `max(abs_tol, rel_tol * |value|)`. Integrands are never evaluated at the
//! ends of a segment, so algebraic endpoint behaviour `t^p` with `p > -1` is
//! handled by repeated bisection towards the endpoint.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for XGK[1], XGK[3], .., XGK[9].
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Default absolute and relative tolerance of the integrator.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Maximum number of segments before giving up.
pub const MAX_SUBDIVISIONS: usize = 1_000_000;

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub subdivisions: usize,
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    resabs: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Segment> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_k = WGK[10] * fc;
    let mut res_g = 0.0;
    let mut res_abs = WGK[10] * fc.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    if !res_k.is_finite() {
        let at = (0..10)
            .flat_map(|j| [(center - half * XGK[j], fv1[j]), (center + half * XGK[j], fv2[j])])
            .chain(std::iter::once((center, fc)))
            .find(|(_, v)| !v.is_finite())
            .map_or(center, |(x, _)| x);
        return Err(Error::NonFinite { at });
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let width = half.abs();
    let value = res_k * half;
    let resabs = res_abs * width;
    let resasc = res_asc * width;
    let mut error = ((res_k - res_g) * half).abs();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    Ok(Segment { a, b, value, error, resabs })
}

/// Globally adaptive integrator. The stopping rule is
/// `error <= max(abs_tol, rel_tol * |value|)`, floored at the rounding
/// level of the Kronrod rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integrator {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for Integrator {
    fn default() -> Self {
        Self::new(DEFAULT_TOL)
    }
}

impl Integrator {
    /// Same value for the absolute and the relative tolerance.
    pub fn new(tol: f64) -> Self {
        Self { abs_tol: tol, rel_tol: tol, max_subdivisions: MAX_SUBDIVISIONS }
    }

    /// Purely relative tolerance, for integrals that may be tiny.
    pub fn relative(rel_tol: f64) -> Self {
        Self { abs_tol: 0.0, rel_tol, max_subdivisions: MAX_SUBDIVISIONS }
    }

    pub fn with_max_subdivisions(mut self, cap: usize) -> Self {
        self.max_subdivisions = cap;
        self
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> Result<QuadratureResult> {
        self.integrate_with_breaks(f, &[a, b])
    }

    /// Integrates over `[points[0], points[last]]`, seeding the segment list
    /// with the given break points (kinks of the integrand, typically).
    pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
        &self,
        f: F,
        points: &[f64],
    ) -> Result<QuadratureResult> {
        if points.len() < 2 {
            return Err(domain("integration needs at least two points"));
        }
        if points.windows(2).any(|w| !(w[0] < w[1])) {
            if points.len() == 2 && points[0] == points[1] {
                return Ok(QuadratureResult { value: 0.0, error_estimate: 0.0, subdivisions: 0 });
            }
            return Err(domain(format!(
                "integration bounds must be strictly increasing, got {:?}",
                points
            )));
        }
        if !(self.abs_tol >= 0.0 && self.rel_tol >= 0.0) || (self.abs_tol == 0.0 && self.rel_tol == 0.0)
        {
            return Err(domain("tolerance must be positive"));
        }

        let mut heap = BinaryHeap::with_capacity(64);
        let (mut value, mut error, mut resabs) = (0.0, 0.0, 0.0);
        for w in points.windows(2) {
            let s = gauss_kronrod(&f, w[0], w[1])?;
            value += s.value;
            error += s.error;
            resabs += s.resabs;
            heap.push(s);
        }
        let mut frozen: Vec<Segment> = Vec::new();
        let mut frozen_error = 0.0;
        let mut count = heap.len();

        loop {
            let target = self.abs_tol.max(self.rel_tol * value.abs());
            let floor = 100.0 * f64::EPSILON * resabs;
            if error <= target || error <= floor {
                break;
            }
            // Segments at machine width cannot improve; stop once the rest
            // is done, provided what they hold is roundoff-sized.
            if error - frozen_error <= target.max(floor) {
                if frozen_error <= 100.0 * floor {
                    break;
                }
                return Err(Error::NonConvergence {
                    what: "adaptive quadrature",
                    value,
                    error_estimate: error,
                    iterations: count,
                });
            }
            let Some(worst) = heap.pop() else {
                // Every remaining segment is too narrow to split.
                return Err(Error::NonConvergence {
                    what: "adaptive quadrature",
                    value,
                    error_estimate: error,
                    iterations: count,
                });
            };
            let mid = 0.5 * (worst.a + worst.b);
            if !(worst.a < mid && mid < worst.b)
                || (worst.b - worst.a) <= 8.0 * f64::EPSILON * worst.a.abs().max(worst.b.abs())
            {
                frozen_error += worst.error;
                frozen.push(worst);
                continue;
            }
            if count >= self.max_subdivisions {
                return Err(Error::NonConvergence {
                    what: "adaptive quadrature",
                    value,
                    error_estimate: error,
                    iterations: count,
                });
            }
            let left = gauss_kronrod(&f, worst.a, mid)?;
            let right = gauss_kronrod(&f, mid, worst.b)?;
            value += left.value + right.value - worst.value;
            error += left.error + right.error - worst.error;
            resabs += left.resabs + right.resabs - worst.resabs;
            heap.push(left);
            heap.push(right);
            count += 1;
        }

        // Re-sum to shed the drift of the running totals.
        let all = heap.iter().chain(frozen.iter());
        let (value, error) = all.fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error));
        Ok(QuadratureResult { value, error_estimate: error, subdivisions: count })
    }
}

/// Integrates `f` over `[a, b]` to `max(tol, tol * |value|)`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult> {
    if !(a < b) {
        return Err(domain(format!("integrate requires a < b, got [{a}, {b}]")));
    }
    if !(tol > 0.0) {
        return Err(domain("tolerance must be positive"));
    }
    Integrator::new(tol).integrate(f, a, b)
}

/// Inverts an increasing function on a bracket by safeguarded Newton steps.
///
/// `f` returns the value and derivative at `x`. The bracket must satisfy
/// `f(lo) <= target <= f(hi)`; steps leaving the current bracket fall back to
/// bisection. Stops once the step is below `x_tol * |x|`.
pub fn invert_increasing<F>(
    mut f: F,
    target: f64,
    mut lo: f64,
    mut hi: f64,
    guess: f64,
    x_tol: f64,
) -> Result<f64>
where
    F: FnMut(f64) -> Result<(f64, f64)>,
{
    const MAX_ITER: usize = 300;
    let mut x = if guess > lo && guess < hi { guess } else { 0.5 * (lo + hi) };
    let mut last_residual = f64::NAN;
    for _ in 0..MAX_ITER {
        let (v, d) = f(x)?;
        if !v.is_finite() {
            return Err(Error::NonFinite { at: x });
        }
        let r = v - target;
        last_residual = r;
        if r == 0.0 {
            return Ok(x);
        }
        if r < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - r / d;
        let next = if d > 0.0 && newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let step = (next - x).abs();
        x = next;
        let scale = x.abs().max(f64::MIN_POSITIVE);
        if step <= x_tol * scale || hi - lo <= x_tol * scale {
            return Ok(x);
        }
    }
    Err(Error::NonConvergence {
        what: "monotone inversion",
        value: x,
        error_estimate: last_residual.abs(),
        iterations: MAX_ITER,
    })
}

// Above this value of c r^2 the power series is abandoned for log-scaled
// quadrature.
const SERIES_LIMIT: f64 = 40.0;

fn check_radial_args(r: f64, c: f64, m: f64) -> Result<()> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(domain(format!("radius must be finite and non-negative, got {r}")));
    }
    if !(c >= 0.0) || !c.is_finite() {
        return Err(domain(format!("gaussian factor c must be finite and >= 0, got {c}")));
    }
    if !(m > -1.0) || !m.is_finite() {
        return Err(domain(format!("radial exponent must be > -1, got {m}")));
    }
    Ok(())
}

/// `ln(e^{c r^2} r^m)`.
pub fn ln_small_h(r: f64, c: f64, m: f64) -> f64 {
    if m == 0.0 {
        c * r * r
    } else {
        c * r * r + m * r.ln()
    }
}

/// Radial density `e^{c r^2} r^m`, the derivative of [`big_h`].
pub fn small_h(r: f64, c: f64, m: f64) -> f64 {
    ln_small_h(r, c, m).exp()
}

/// `ln H(r)` with `H(r) = ∫_0^r e^{c t^2} t^m dt`; `-inf` at `r = 0`.
pub fn ln_big_h(r: f64, c: f64, m: f64, tol: f64) -> Result<f64> {
    check_radial_args(r, c, m)?;
    if r == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    let p = m + 1.0;
    if c == 0.0 {
        return Ok(p * r.ln() - p.ln());
    }
    let x = c * r * r;
    if x <= SERIES_LIMIT {
        // H(r) = r^{m+1} Σ x^n / (n! (2n + m + 1)), all terms positive.
        let mut term = 1.0;
        let mut sum = 1.0 / p;
        let mut n = 0.0;
        loop {
            n += 1.0;
            term *= x / n;
            let t = term / (2.0 * n + p);
            sum += t;
            if n > x && t <= 1e-17 * sum {
                break;
            }
        }
        return Ok(p * r.ln() + sum.ln());
    }
    // ln H = c r^2 + m ln r + ln ∫_0^r e^{c(t^2 - r^2)} (t/r)^m dt. With
    // t = r - u the integrand is e^{-c u (2r - u)} (1 - u/r)^m, a spike of
    // width ~1/(c r) at u = 0 that underflows past u_hi. The u form avoids
    // the cancellation in t^2 - r^2 when r is huge.
    let width = 1.0 / (c * r);
    let u_hi = r.min(800.0 * width);
    let mut points = vec![0.0];
    let mut d = width;
    while d < u_hi {
        points.push(d);
        d *= 4.0;
    }
    points.push(u_hi);
    let scaled = Integrator::relative(tol.min(1e-12)).integrate_with_breaks(
        |u| {
            let base = (-c * u * (2.0 * r - u)).exp();
            if m == 0.0 {
                base
            } else {
                base * (m * (-u / r).ln_1p()).exp()
            }
        },
        &points,
    )?;
    Ok(x + m * r.ln() + scaled.value.ln())
}

/// `H(r) = ∫_0^r e^{c t^2} t^m dt` for `c >= 0`, `m > -1`.
pub fn big_h(r: f64, c: f64, m: f64, tol: f64) -> Result<f64> {
    if r < 0.0 {
        return Err(domain(format!("H(r) needs r >= 0, got {r}")));
    }
    Ok(ln_big_h(r, c, m, tol)?.exp())
}

/// `H(r)` by direct quadrature of its defining integral, without the series
/// or the log scaling. Used as an independent check of [`big_h`].
pub fn big_h_quadrature(r: f64, c: f64, m: f64, tol: f64) -> Result<f64> {
    check_radial_args(r, c, m)?;
    if r == 0.0 {
        return Ok(0.0);
    }
    Ok(Integrator::relative(tol).integrate(|t| small_h(t, c, m), 0.0, r)?.value)
}

/// Inverse of [`big_h`]: the radius `r` with `H(r) = s`.
///
/// The `c = 0` closed form bounds the root from above; the lower end of the
/// bracket is found by halving, and safeguarded Newton steps on `ln H`
/// (derivative `h / H`) finish the solve.
pub fn big_h_inverse(s: f64, c: f64, m: f64, tol: f64) -> Result<f64> {
    if !(s >= 0.0) || !s.is_finite() {
        return Err(domain(format!("H^-1(s) needs finite s >= 0, got {s}")));
    }
    check_radial_args(0.0, c, m)?;
    if s == 0.0 {
        return Ok(0.0);
    }
    let p = m + 1.0;
    let ln_s = s.ln();
    let upper = ((p.ln() + ln_s) / p).exp();
    let phi = |r: f64| -> Result<(f64, f64)> {
        let ln_h_big = ln_big_h(r, c, m, tol)?;
        Ok((ln_h_big, (ln_small_h(r, c, m) - ln_h_big).exp()))
    };
    // For large c s the gaussian factor dominates and H(r) ~ e^{cr²}/(2cr);
    // starting there keeps the bracket search short.
    let mut guess = upper;
    if c > 0.0 {
        let g = ((2.0 * c * s).ln().max(1.0) / c).sqrt();
        guess = guess.min(g);
    }
    let (mut lower, mut hi) = (guess, guess);
    if phi(guess)?.0 < ln_s {
        while hi < upper {
            lower = hi;
            hi = (2.0 * hi).min(upper);
            if phi(hi)?.0 >= ln_s {
                break;
            }
        }
    } else {
        loop {
            hi = lower;
            lower *= 0.5;
            if lower == 0.0 {
                return Err(Error::NonConvergence {
                    what: "H^-1 bracketing",
                    value: upper,
                    error_estimate: f64::INFINITY,
                    iterations: 1100,
                });
            }
            if phi(lower)?.0 < ln_s {
                break;
            }
        }
    }
    if lower >= hi {
        return Ok(hi);
    }
    let upper = hi;
    invert_increasing(phi, ln_s, lower, upper, 0.5 * (lower + upper), 1e-15)
}

/// `∫_0^{π/2} sin^p t cos^q t dt` for `p, q >= 0`.
pub fn sin_cos_integral(p: f64, q: f64, tol: f64) -> Result<f64> {
    if !(p >= 0.0 && q >= 0.0) {
        return Err(domain(format!("exponents must be >= 0, got ({p}, {q})")));
    }
    if p == 0.0 && q == 0.0 {
        return Ok(std::f64::consts::FRAC_PI_2);
    }
    let r = Integrator::relative(tol).integrate(
        |t| t.sin().powf(p) * t.cos().powf(q),
        0.0,
        std::f64::consts::FRAC_PI_2,
    )?;
    Ok(r.value)
}

/// Integral of `x_1^{k_1} ⋯ x_N^{k_N}` over the part of the unit sphere in
/// the positive orthant.
///
/// Uses spherical coordinates with `x_j = sin φ_j ⋯` peeled off one axis at a
/// time, which turns the surface integral into a product of
/// `∫ sin^a cos^b` factors.
pub fn kappa(k: &[f64], tol: f64) -> Result<f64> {
    if k.len() < 2 {
        return Err(domain(format!("kappa needs N >= 2, got N = {}", k.len())));
    }
    if let Some(bad) = k.iter().find(|&&ki| !(ki >= 0.0) || !ki.is_finite()) {
        return Err(domain(format!("exponents must be finite and >= 0, got {bad}")));
    }
    let mut product = 1.0;
    let mut accumulated = k[0];
    for (j, &kj) in k.iter().enumerate().skip(1) {
        // Dimension of the sphere reached so far is j; the sin exponent
        // carries the Jacobian (j - 1) plus the exponents already absorbed.
        product *= sin_cos_integral((j - 1) as f64 + accumulated, kj, tol)?;
        accumulated += kj;
    }
    Ok(product)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, FRAC_PI_2, PI};

    #[test]
    fn kronrod_weights_integrate_constants() {
        let sum: f64 = 2.0 * WGK[..10].iter().sum::<f64>() + WGK[10];
        assert!((sum - 2.0).abs() < 1e-15);
        let gsum: f64 = 2.0 * WG.iter().sum::<f64>();
        assert!((gsum - 2.0).abs() < 1e-15);
    }

    #[test]
    fn basic_integrals() {
        let r = integrate(|_| 1.0, 0.0, FRAC_PI_2, 1e-10).unwrap();
        assert!((r.value - FRAC_PI_2).abs() <= 1e-10);
        let r = integrate(f64::sin, 0.0, PI, 1e-10).unwrap();
        assert!((r.value - 2.0).abs() <= 1e-10);
        let r = integrate(|t| t.sin() * t.cos(), 0.0, FRAC_PI_2, 1e-10).unwrap();
        assert!((r.value - 0.5).abs() <= 1e-10);
    }

    #[test]
    fn exact_on_polynomials_up_to_degree_31() {
        for deg in 0..=31 {
            let s = gauss_kronrod(&|t: f64| t.powi(deg), 0.0, 1.0).unwrap();
            let exact = 1.0 / (deg as f64 + 1.0);
            assert!((s.value - exact).abs() < 1e-15, "degree {deg}: {}", s.value);
        }
        // Below the Gauss degree the error estimate sits at the rounding floor.
        for deg in 0..=19 {
            let r = Integrator::new(1e-13)
                .with_max_subdivisions(1)
                .integrate(|t| t.powi(deg), 0.0, 1.0)
                .unwrap();
            assert_eq!(r.subdivisions, 1);
        }
    }

    #[test]
    fn endpoint_power_singularity() {
        let r = Integrator::relative(1e-12).integrate(|t| t.sqrt(), 0.0, 1.0).unwrap();
        assert!((r.value - 2.0 / 3.0).abs() < 1e-12);
        let r = Integrator::relative(1e-10).integrate(|t| t.powf(-0.5), 0.0, 1.0).unwrap();
        assert!((r.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn subdivision_cap_reports_non_convergence() {
        let err = Integrator::relative(1e-14)
            .with_max_subdivisions(3)
            .integrate(|t| (50.0 * t).sin().abs(), 0.0, 10.0)
            .unwrap_err();
        assert!(matches!(err, Error::NonConvergence { .. }));
    }

    #[test]
    fn non_finite_integrand_is_an_error() {
        let err = integrate(|t| 1.0 / (t - 0.5), 0.0, 1.0, 1e-10);
        // 0.5 is the centre node of the first rule.
        assert!(matches!(err, Err(Error::NonFinite { .. })));
    }

    #[test]
    fn rejects_bad_bounds() {
        assert!(integrate(|t| t, 1.0, 0.0, 1e-10).is_err());
        assert!(integrate(|t| t, 0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn big_h_examples() {
        for r in [0.3, 1.0, 2.5] {
            assert!((big_h(r, 0.0, 1.0, 1e-12).unwrap() - r * r / 2.0).abs() < 1e-14);
        }
        let v = big_h(1.0, 1.0, 1.0, 1e-12).unwrap();
        assert!((v - (E - 1.0) / 2.0).abs() < 1e-13);
        assert_eq!(big_h(0.0, 0.7, 2.0, 1e-12).unwrap(), 0.0);
        assert!(big_h(-1.0, 0.0, 1.0, 1e-12).is_err());
    }

    #[test]
    fn big_h_series_matches_quadrature() {
        for &c in &[0.1, 0.5, 1.0, 3.0] {
            for &m in &[0.0, 0.5, 1.0, 2.5, 4.0] {
                for &r in &[0.2, 1.0, 2.0, 3.5] {
                    let a = big_h(r, c, m, 1e-13).unwrap();
                    let b = big_h_quadrature(r, c, m, 1e-13).unwrap();
                    assert!(((a - b) / b).abs() < 1e-11, "c={c} m={m} r={r}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn big_h_log_scaled_branch_matches_closed_form() {
        // m = 1: H = (e^{c r^2} - 1) / (2c)
        for &(r, c) in &[(7.0, 1.0), (20.0, 0.5), (30.0, 1.0)] {
            let ln_h = ln_big_h(r, c, 1.0, 1e-12).unwrap();
            let x: f64 = c * r * r;
            let exact = x + (-(-x).exp()).ln_1p() - (2.0 * c).ln();
            assert!((ln_h - exact).abs() < 1e-11, "r={r}: {ln_h} vs {exact}");
        }
    }

    #[test]
    fn big_h_inverse_examples() {
        for r in [0.5, 1.0, 3.0] {
            let got = big_h_inverse(r * r / 2.0, 0.0, 1.0, 1e-12).unwrap();
            assert!((got - r).abs() < 1e-14 * r);
        }
        assert_eq!(big_h_inverse(0.0, 1.0, 2.0, 1e-12).unwrap(), 0.0);
        let r = big_h_inverse((E - 1.0) / 2.0, 1.0, 1.0, 1e-12).unwrap();
        assert!((r - 1.0).abs() < 1e-12);
        assert!(big_h_inverse(-1.0, 0.0, 1.0, 1e-12).is_err());
    }

    #[test]
    fn big_h_inverse_round_trip_on_log_grid() {
        let tol = 1e-10;
        for &(c, m) in &[(0.0, 1.0), (0.5, 2.0), (1.0, 0.5), (2.0, 4.0)] {
            for i in 0..=24 {
                let s = 10f64.powf(-6.0 + 0.5 * i as f64);
                let r = big_h_inverse(s, c, m, tol).unwrap();
                let back = big_h(r, c, m, tol).unwrap();
                assert!((back - s).abs() <= tol * (1.0 + s), "c={c} m={m} s={s}: {back}");
            }
        }
    }

    #[test]
    fn big_h_strictly_increasing() {
        let mut prev = 0.0;
        for i in 1..200 {
            let r = 0.05 * i as f64;
            let v = big_h(r, 0.7, 1.5, 1e-12).unwrap();
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn kappa_examples() {
        assert!((kappa(&[0.0, 0.0], 1e-12).unwrap() - FRAC_PI_2).abs() < 1e-14);
        assert!((kappa(&[1.0, 1.0], 1e-12).unwrap() - 0.5).abs() < 1e-13);
        assert!((kappa(&[0.0, 0.0, 0.0], 1e-12).unwrap() - FRAC_PI_2).abs() < 1e-13);
        assert!(kappa(&[1.0], 1e-12).is_err());
        assert!(kappa(&[1.0, -0.5], 1e-12).is_err());
    }

    #[test]
    fn invert_increasing_cubic() {
        let x = invert_increasing(|x| Ok((x * x * x, 3.0 * x * x)), 8.0, 0.0, 10.0, 9.0, 1e-15)
            .unwrap();
        assert!((x - 2.0).abs() < 1e-14);
    }
}
