//! Random sweep over smooth shapes; prints the tightest samples.

use wedge_iso::verification::{random_sweep, SweepOptions};
use wedge_iso::wedge_geometry::WedgeWeight;

fn main() -> wedge_iso::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    for (c, k1, k2) in [(0.0, 0.0, 0.0), (0.0, 1.0, 1.0), (1.0, 2.0, 0.0)] {
        let w = WedgeWeight::planar(c, k1, k2)?;
        let rep = random_sweep(&w, 500, seed, 0.3, &SweepOptions::default())?;
        let mut recs: Vec<_> = rep.records.iter().filter(|r| r.finite).collect();
        recs.sort_by(|a, b| (a.slack / a.profile_bound).total_cmp(&(b.slack / b.profile_bound)));
        println!(
            "c = {c} k = ({k1}, {k2}): {} samples, {} violations, min rel slack {:.4e}",
            rep.records.len(),
            rep.violations,
            rep.min_rel_slack
        );
        for r in recs.iter().take(3) {
            println!("    #{:<4} m = {:.6e}  P = {:.8e}  I = {:.8e}", r.idx, r.measure, r.perimeter, r.profile_bound);
        }
    }
    Ok(())
}
