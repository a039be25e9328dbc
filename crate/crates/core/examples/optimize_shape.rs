//! Minimizes the perimeter at fixed measure and watches the optimizer
//! settle on the quarter disc.

use wedge_iso::verification::{optimize_shape, OptimizeOptions};
use wedge_iso::wedge_geometry::WedgeWeight;

fn main() -> wedge_iso::Result<()> {
    for (c, k1, k2) in [(0.0, 0.0, 0.0), (0.0, 1.0, 1.0), (1.0, 2.0, 0.5)] {
        let w = WedgeWeight::planar(c, k1, k2)?;
        let opts = OptimizeOptions { seed: 3, start_amplitude: 0.3, ..Default::default() };
        let r = optimize_shape(&w, 1.0, &opts)?;
        println!("c = {c} k = ({k1}, {k2})");
        println!(
            "  P = {:.10}  I(1) = {:.10}  gap {:.2e}  sup|ρ/R - 1| {:.2e}  ({} evaluations)",
            r.perimeter, r.bound, r.gap, r.sup_distance, r.evaluations
        );
        let h = &r.history;
        for i in [0, h.len() / 8, h.len() / 2, h.len() - 1] {
            println!("    iter {i:>5}: P = {:.10}", h[i]);
        }
    }
    Ok(())
}
