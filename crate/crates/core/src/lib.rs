//! Isoperimetric profiles of the positive orthant `W = {x_i > 0}` with the
//! density `e^{c|x|²} ∏ x_i^{k_i}` (`c ≥ 0`, `k_i ≥ 0`).
//!
//! The crate computes the profile `I(m)` attained by quarter balls, the
//! angular map `σ` that pushes a planar wedge onto a half plane, weighted
//! measures and perimeters of star-shaped sets, a slice-wise
//! symmetrization for sets in three dimensions, and randomized and
//! optimization-based checks that no set beats the quarter ball.
//!
//! ```
//! use wedge_iso::{profile::IsoperimetricProfile, wedge_geometry::WedgeWeight};
//!
//! let w = WedgeWeight::new(0.0, vec![1.0, 1.0]).unwrap();
//! let p = IsoperimetricProfile::new(w, 1e-12).unwrap();
//! assert!((p.profile_value(0.125).unwrap() - 0.5).abs() < 1e-10);
//! ```

pub mod cli;
pub mod error;
pub mod interp;
pub mod profile;
pub mod quadrature;
pub mod sigma_map;
pub mod symmetrization3d;
pub mod verification;
pub mod wedge_geometry;

pub use error::{Error, Result};
