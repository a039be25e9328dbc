//! Builds σ for several exponent pairs and reports the certified lower
//! bound on σ'.

use wedge_iso::sigma_map::{SigmaMap, DEFAULT_NODES, DEFAULT_TOL};

fn main() -> wedge_iso::Result<()> {
    println!("{:>4} {:>4} {:>12} {:>20} {:>12}", "k", "l", "c1", "min sigma'", "argmin");
    for (k, l) in [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (2.0, 0.5), (5.0, 5.0)] {
        let map = SigmaMap::new(k, l, DEFAULT_NODES, DEFAULT_TOL)?;
        let cert = map.certify_lemma1(10_000)?;
        println!(
            "{k:>4} {l:>4} {:>12.8} {:>20.14} {:>12.6}",
            map.c1(),
            cert.min_sigma_prime,
            cert.argmin
        );
    }

    // (1, 0) has the closed form cos σ = 2 cos θ - 1.
    let map = SigmaMap::new(1.0, 0.0, DEFAULT_NODES, DEFAULT_TOL)?;
    let worst = (1..1000)
        .map(|i| {
            let t = i as f64 * std::f64::consts::FRAC_PI_2 / 1000.0;
            (map.eval(t).unwrap() - (2.0 * t.cos() - 1.0).acos()).abs()
        })
        .fold(0.0, f64::max);
    println!("\n(k, l) = (1, 0): max |σ - arccos(2cos θ - 1)| = {worst:.2e}");
    Ok(())
}
