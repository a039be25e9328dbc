//! Symmetrizes the unit cube and a dented octant ball in three
//! dimensions.

use wedge_iso::symmetrization3d::{check_step2, SliceSet3D};
use wedge_iso::wedge_geometry::WedgeWeight;

fn report(name: &str, m: &SliceSet3D, w: &WedgeWeight) -> wedge_iso::Result<()> {
    let (_, r) = check_step2(m, w, 1e-9, 1e-6)?;
    println!("{name}");
    println!("  mu(M) = {:.10}  mu(Q) = {:.10}  alpha(K) = {:.10}", r.mu_m, r.mu_q, r.alpha_k);
    println!("  P(M) = {:.10}  P(Q) = {:.10}  bound = {:.10}  slack = {:.6}", r.perimeter_m, r.perimeter_q, r.profile_bound, r.slack);
    println!("  all checks pass: {}", r.all_ok());
    Ok(())
}

fn main() -> wedge_iso::Result<()> {
    let x1: Vec<f64> = (0..65).map(|i| i as f64 / 64.0).collect();
    let cube = SliceSet3D::from_fn(x1.clone(), 1025, |_, t| 1.0 / t.cos().max(t.sin()))?;
    report("unit cube, k = 0, c = 0", &cube, &WedgeWeight::new(0.0, vec![0.0; 3])?)?;

    let dented = SliceSet3D::from_fn(x1, 129, |x, t| {
        (1.0 - x * x).max(0.0).sqrt() * (1.0 - 0.15 * (4.0 * t).sin().powi(2))
    })?;
    report("dented octant ball, k = (1, 1, 1), c = 0.5", &dented, &WedgeWeight::new(0.5, vec![1.0; 3])?)?;
    Ok(())
}
