//! Derivative-free simplex minimization.

use crate::error::Result;

#[derive(Debug, Clone, Copy)]
pub struct SimplexOptions {
    /// Edge length of the starting simplex.
    pub step: f64,
    pub max_iter: usize,
    /// Stop once the spread of objective values is below
    /// `f_tol * (1 + |f_best|)` and the simplex diameter below `x_tol`.
    pub f_tol: f64,
    pub x_tol: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self { step: 0.1, max_iter: 4000, f_tol: 1e-13, x_tol: 1e-7 }
    }
}

#[derive(Debug, Clone)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub f: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
    /// Best objective after every iteration.
    pub history: Vec<f64>,
    /// Final simplex diameter.
    pub diameter: f64,
}

/// Standard Nelder–Mead (reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2). Non-finite objective values are treated as `+inf`.
pub fn minimize<F>(mut f: F, x0: &[f64], opts: &SimplexOptions) -> Result<SimplexResult>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    let n = x0.len();
    let mut evaluations = 0;
    let mut eval = |x: &[f64], evaluations: &mut usize| -> Result<f64> {
        *evaluations += 1;
        let v = f(x)?;
        Ok(if v.is_finite() { v } else { f64::INFINITY })
    };

    let mut pts: Vec<Vec<f64>> = vec![x0.to_vec()];
    for i in 0..n {
        let mut p = x0.to_vec();
        p[i] += opts.step;
        pts.push(p);
    }
    let mut vals = Vec::with_capacity(n + 1);
    for p in &pts {
        vals.push(eval(p, &mut evaluations)?);
    }

    let mut history = Vec::new();
    let mut iterations = 0;
    let mut converged = false;
    let mut diameter = f64::INFINITY;
    while iterations < opts.max_iter {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        pts = order.iter().map(|&i| pts[i].clone()).collect();
        vals = order.iter().map(|&i| vals[i]).collect();
        history.push(vals[0]);

        diameter = pts[1..]
            .iter()
            .map(|p| p.iter().zip(&pts[0]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if n == 0 || (vals[n] - vals[0] <= opts.f_tol * (1.0 + vals[0].abs()) && diameter <= opts.x_tol)
        {
            converged = true;
            break;
        }
        iterations += 1;

        let centroid: Vec<f64> =
            (0..n).map(|j| pts[..n].iter().map(|p| p[j]).sum::<f64>() / n as f64).collect();
        let along = |t: f64| -> Vec<f64> {
            centroid.iter().zip(&pts[n]).map(|(c, w)| c + t * (c - w)).collect()
        };

        let xr = along(1.0);
        let fr = eval(&xr, &mut evaluations)?;
        if fr < vals[0] {
            let xe = along(2.0);
            let fe = eval(&xe, &mut evaluations)?;
            if fe < fr {
                pts[n] = xe;
                vals[n] = fe;
            } else {
                pts[n] = xr;
                vals[n] = fr;
            }
            continue;
        }
        if fr < vals[n - 1] {
            pts[n] = xr;
            vals[n] = fr;
            continue;
        }
        let (xc, fc) = if fr < vals[n] {
            let xc = along(0.5);
            let fc = eval(&xc, &mut evaluations)?;
            (xc, fc)
        } else {
            let xc = along(-0.5);
            let fc = eval(&xc, &mut evaluations)?;
            (xc, fc)
        };
        if fc < vals[n].min(fr) {
            pts[n] = xc;
            vals[n] = fc;
            continue;
        }
        for i in 1..=n {
            let p: Vec<f64> = pts[i].iter().zip(&pts[0]).map(|(a, b)| b + 0.5 * (a - b)).collect();
            vals[i] = eval(&p, &mut evaluations)?;
            pts[i] = p;
        }
    }
    let best = (0..=n).min_by(|&a, &b| vals[a].total_cmp(&vals[b])).unwrap_or(0);
    Ok(SimplexResult {
        x: pts[best].clone(),
        f: vals[best],
        iterations,
        evaluations,
        converged,
        history,
        diameter,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rosenbrock() {
        let r = minimize(
            |x| Ok((1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2)),
            &[-1.2, 1.0],
            &SimplexOptions { max_iter: 5000, x_tol: 1e-9, ..Default::default() },
        )
        .unwrap();
        assert!(r.converged);
        assert!((r.x[0] - 1.0).abs() < 1e-6 && (r.x[1] - 1.0).abs() < 1e-6, "{:?}", r.x);
        assert!(r.history.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn quadratic_bowl() {
        let r = minimize(
            |x| Ok(x.iter().enumerate().map(|(i, v)| (i + 1) as f64 * (v - 0.5).powi(2)).sum()),
            &[0.0; 5],
            &SimplexOptions::default(),
        )
        .unwrap();
        assert!(r.x.iter().all(|v| (v - 0.5).abs() < 1e-6));
    }
}
