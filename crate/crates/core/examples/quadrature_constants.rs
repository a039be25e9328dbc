//! Prints κ for a few exponent vectors next to the Beta-function closed
//! form, and the radial primitive H on a grid.

use statrs::function::gamma::ln_gamma;
use wedge_iso::quadrature::{big_h, big_h_inverse, kappa};

/// `∏Γ((k_i+1)/2) / (2^{N-1} Γ((N+|k|)/2))`.
fn closed_form(k: &[f64]) -> f64 {
    let n = k.len() as f64;
    let s: f64 = k.iter().sum();
    let num: f64 = k.iter().map(|ki| ln_gamma((ki + 1.0) / 2.0)).sum();
    (num - ln_gamma((n + s) / 2.0) - (n - 1.0) * 2f64.ln()).exp()
}

fn main() -> wedge_iso::Result<()> {
    println!("{:<16} {:>22} {:>22}", "k", "kappa", "closed form");
    for k in [vec![0.0, 0.0], vec![1.0, 1.0], vec![0.5, 2.0], vec![0.0, 0.0, 0.0], vec![1.0, 1.0, 1.0], vec![2.0, 0.0, 1.0, 0.5]] {
        println!("{:<16} {:>22.16e} {:>22.16e}", format!("{k:?}"), kappa(&k, 1e-13)?, closed_form(&k));
    }

    let (c, m) = (1.0, 3.0);
    println!("\nH(r) for c = {c}, exponent {m}");
    for r in [0.1, 0.5, 1.0, 2.0, 5.0, 20.0] {
        let h = big_h(r, c, m, 1e-12)?;
        let back = big_h_inverse(h, c, m, 1e-12)?;
        println!("r = {r:<5} H = {h:.10e}  H^-1(H) - r = {:.1e}", back - r);
    }
    Ok(())
}
