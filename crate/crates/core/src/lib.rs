//! Desk-scale laboratory for linear-programming geometry.
//!
//! The crate solves small standard-form LPs with a restarted primal-dual
//! hybrid gradient method under two step-size policies, computes
//! geometry-based condition measures of the instance (LP sharpness,
//! limiting error ratio, level-set radii, singular-value extremes), and
//! numerically certifies the inequalities that relate those quantities to
//! each other and to the solver's iteration counts.
//!
//! Everything is exact-by-enumeration or active-set-exact at the scale it
//! targets (a few dozen variables); there is no attempt at large-scale
//! performance.

pub mod error;
pub mod ext;
pub mod instances;
pub mod model;
pub mod numerics;

pub use error::{Error, Result};
