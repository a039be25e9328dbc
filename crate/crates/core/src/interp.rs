//! Piecewise interpolation helpers shared by the shape types.

use crate::error::{invalid, Result};

/// Shape-preserving piecewise cubic Hermite interpolant (PCHIP).
///
/// Slopes follow the Fritsch–Butland weighted harmonic mean, so the
/// interpolant is monotone wherever the data are and never overshoots a
/// local extremum. It is C¹.
#[derive(Debug, Clone, PartialEq)]
pub struct Pchip {
    x: Vec<f64>,
    y: Vec<f64>,
    d: Vec<f64>,
}

fn end_slope(h0: f64, h1: f64, m0: f64, m1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
    if d.signum() != m0.signum() || m0 == 0.0 {
        0.0
    } else if m0.signum() != m1.signum() && d.abs() > 3.0 * m0.abs() {
        3.0 * m0
    } else {
        d
    }
}

impl Pchip {
    pub fn new(x: &[f64], y: &[f64]) -> Result<Self> {
        let n = x.len();
        if n < 2 || y.len() != n {
            return Err(invalid(format!(
                "interpolation needs >= 2 points and equal lengths (got {} and {})",
                n,
                y.len()
            )));
        }
        if x.iter().chain(y.iter()).any(|v| !v.is_finite()) {
            return Err(invalid("interpolation data must be finite"));
        }
        if x.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(invalid("interpolation abscissae must be strictly increasing"));
        }
        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let m: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();
        let mut d = vec![0.0; n];
        if n == 2 {
            d[0] = m[0];
            d[1] = m[0];
        } else {
            for i in 1..n - 1 {
                if m[i - 1] * m[i] > 0.0 {
                    let w1 = 2.0 * h[i] + h[i - 1];
                    let w2 = h[i] + 2.0 * h[i - 1];
                    d[i] = (w1 + w2) / (w1 / m[i - 1] + w2 / m[i]);
                }
            }
            d[0] = end_slope(h[0], h[1], m[0], m[1]);
            d[n - 1] = end_slope(h[n - 2], h[n - 3], m[n - 2], m[n - 3]);
        }
        Ok(Self { x: x.to_vec(), y: y.to_vec(), d })
    }

    pub fn knots(&self) -> &[f64] {
        &self.x
    }

    pub fn values(&self) -> &[f64] {
        &self.y
    }

    fn cell(&self, t: f64) -> usize {
        let n = self.x.len();
        self.x.partition_point(|&xi| xi <= t).clamp(1, n - 1) - 1
    }

    /// Value and first derivative; extrapolates the end cubics outside the
    /// knot range.
    pub fn eval_with_derivative(&self, t: f64) -> (f64, f64) {
        let i = self.cell(t);
        let h = self.x[i + 1] - self.x[i];
        let s = (t - self.x[i]) / h;
        let (y0, y1, d0, d1) = (self.y[i], self.y[i + 1], self.d[i] * h, self.d[i + 1] * h);
        let s2 = s * s;
        let s3 = s2 * s;
        let value = (2.0 * s3 - 3.0 * s2 + 1.0) * y0
            + (s3 - 2.0 * s2 + s) * d0
            + (-2.0 * s3 + 3.0 * s2) * y1
            + (s3 - s2) * d1;
        let deriv = ((6.0 * s2 - 6.0 * s) * y0
            + (3.0 * s2 - 4.0 * s + 1.0) * d0
            + (-6.0 * s2 + 6.0 * s) * y1
            + (3.0 * s2 - 2.0 * s) * d1)
            / h;
        (value, deriv)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.eval_with_derivative(t).0
    }
}

/// Four-point Lagrange stencil on a sorted grid: the first index of the
/// stencil, the cardinal weights at `x`, and their derivatives.
///
/// The stencil is centred on the cell holding `x` and shifted inwards at
/// the ends, so the interpolant is exact on cubics and continuous (but only
/// piecewise smooth) across grid nodes.
pub(crate) fn lagrange4(grid: &[f64], x: f64) -> (usize, [f64; 4], [f64; 4]) {
    let n = grid.len();
    debug_assert!(n >= 4);
    let cell = grid.partition_point(|&g| g <= x).clamp(1, n - 1) - 1;
    let start = cell.saturating_sub(1).min(n - 4);
    let nodes = [grid[start], grid[start + 1], grid[start + 2], grid[start + 3]];
    let mut w = [0.0; 4];
    let mut dw = [0.0; 4];
    for i in 0..4 {
        let mut denom = 1.0;
        let mut prod = 1.0;
        for (j, &xj) in nodes.iter().enumerate() {
            if j != i {
                denom *= nodes[i] - xj;
                prod *= x - xj;
            }
        }
        w[i] = prod / denom;
        // d/dx Π_{j≠i}(x - x_j) = Σ_{j≠i} Π_{l≠i,j}(x - x_l)
        let mut sum = 0.0;
        for j in 0..4 {
            if j == i {
                continue;
            }
            let mut p = 1.0;
            for (l, &xl) in nodes.iter().enumerate() {
                if l != i && l != j {
                    p *= x - xl;
                }
            }
            sum += p;
        }
        dw[i] = sum / denom;
    }
    (start, w, dw)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pchip_reproduces_linear_data() {
        let x: Vec<f64> = (0..10).map(|i| i as f64 * 0.3).collect();
        let y: Vec<f64> = x.iter().map(|v| 2.0 * v - 1.0).collect();
        let p = Pchip::new(&x, &y).unwrap();
        for i in 0..100 {
            let t = 2.7 * i as f64 / 99.0;
            let (v, d) = p.eval_with_derivative(t);
            assert!((v - (2.0 * t - 1.0)).abs() < 1e-14);
            assert!((d - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn pchip_hits_knots_and_stays_monotone() {
        let x = [0.0, 1.0, 1.5, 3.0, 4.0, 6.0];
        let y = [0.0, 0.1, 2.0, 2.1, 5.0, 5.0];
        let p = Pchip::new(&x, &y).unwrap();
        for (xi, yi) in x.iter().zip(y) {
            assert_eq!(p.eval(*xi), yi);
        }
        let mut prev = f64::NEG_INFINITY;
        for i in 0..=600 {
            let v = p.eval(6.0 * i as f64 / 600.0);
            assert!(v >= prev - 1e-15);
            prev = v;
        }
    }

    #[test]
    fn pchip_rejects_bad_input() {
        assert!(Pchip::new(&[0.0], &[1.0]).is_err());
        assert!(Pchip::new(&[0.0, 0.0], &[1.0, 2.0]).is_err());
        assert!(Pchip::new(&[0.0, 1.0], &[1.0, f64::NAN]).is_err());
    }

    #[test]
    fn lagrange_exact_on_cubics() {
        let grid: Vec<f64> = (0..9).map(|i| 0.5 + 0.25 * i as f64).collect();
        let f = |x: f64| 1.0 - 2.0 * x + 0.5 * x * x * x;
        let df = |x: f64| -2.0 + 1.5 * x * x;
        for i in 0..=80 {
            let x = 0.5 + 2.0 * i as f64 / 80.0;
            let (s, w, dw) = lagrange4(&grid, x);
            let v: f64 = (0..4).map(|j| w[j] * f(grid[s + j])).sum();
            let d: f64 = (0..4).map(|j| dw[j] * f(grid[s + j])).sum();
            assert!((v - f(x)).abs() < 1e-13);
            assert!((d - df(x)).abs() < 1e-12);
        }
    }
}
