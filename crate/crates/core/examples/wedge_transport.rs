//! Pushes a wobbly planar shape through σ and compares the half-plane
//! quantities with the wedge ones.

use std::f64::consts::FRAC_PI_2;

use wedge_iso::sigma_map::{SigmaMap, DEFAULT_NODES, DEFAULT_TOL};
use wedge_iso::wedge_geometry::{
    check_contraction, check_measure_preservation, transport, RadialShape, WedgeWeight,
};

fn main() -> wedge_iso::Result<()> {
    let shape = RadialShape::from_fn(|t| 1.0 + 0.25 * (4.0 * t).cos() - 0.1 * (2.0 * t).sin(), 257)?;
    for (c, k1, k2) in [(0.0, 0.0, 0.0), (0.0, 1.0, 2.0), (1.0, 2.0, 1.0)] {
        let w = WedgeWeight::planar(c, k1, k2)?;
        let (k, l) = w.planar_exponents()?;
        let map = SigmaMap::new(k, l, DEFAULT_NODES, DEFAULT_TOL)?;
        let per = check_contraction(&shape, &w, &map, 1e-10, 1e-7)?;
        let mes = check_measure_preservation(&shape, &w, &map, 1e-10, 1e-6)?;
        println!("c = {c}, k = ({k1}, {k2})");
        println!("  P(M) = {:.12}   c1 P~(T M) = {:.12}   ok {}", per.rhs, per.lhs, per.ok);
        println!("  mu(M) = {:.12}  c1 mu~(T M) = {:.12}  gap {:.1e}", mes.mu, mes.c1_mu_tilde, mes.rel_gap);
    }

    let w = WedgeWeight::planar(0.0, 1.0, 0.0)?;
    let (k, l) = w.planar_exponents()?;
    let map = SigmaMap::new(k, l, DEFAULT_NODES, DEFAULT_TOL)?;
    let image = transport(&shape.boundary_curve(), &map)?;
    let n = image.t().len();
    println!("\nimage endpoints: θ = {:.6} .. {:.6} (π/2 maps to {:.6})", image.theta_nodes()[0], image.theta_nodes()[n - 1], map.eval(FRAC_PI_2)?);
    Ok(())
}
