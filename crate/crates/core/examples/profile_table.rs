//! Writes a CSV table of the profile for a Gaussian-weighted orthant.

use wedge_iso::verification::{profile_csv, profile_scan};
use wedge_iso::wedge_geometry::WedgeWeight;

fn main() -> wedge_iso::Result<()> {
    let w = WedgeWeight::new(0.5, vec![1.0, 0.0, 2.0])?;
    let grid: Vec<f64> = (-12..=12).map(|e| 10f64.powf(e as f64 / 2.0)).collect();
    let rows = profile_scan(&w, &grid, 1e-12)?;
    print!("{}", profile_csv(&rows));
    Ok(())
}
