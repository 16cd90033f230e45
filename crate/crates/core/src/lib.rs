//! Exact verification that universal torsors of cubic surfaces and Del
//! Pezzo surfaces of degree 2 embed into the affine cones over the E6 and E7
//! flag varieties after a suitable rescaling of the Cox generators.
//!
//! The pipeline runs bottom-up through the modules:
//!
//! * [`algebra`]: rationals, sparse polynomials, rational functions, kernels.
//! * [`lattice`]: the Picard lattice, (-1)-curves, roots, rulings.
//! * [`coxring`]: point configurations, Cox generators as plane curves, and
//!   the quadratic relations of each ruling.
//! * [`homspace`]: the quadrics cutting out the cones `H_6` and `H_7` and
//!   their parametrization away from the exceptional coordinates.
//! * [`rescaling`]: conditions on rescaling factors, their staged solution,
//!   and end-to-end embedding certificates.
//! * [`cli`]: the command-line front end.

pub mod algebra;
pub mod cli;
pub mod coxring;
pub mod error;
pub mod homspace;
pub mod lattice;
pub mod rescaling;

pub use error::{Error, Result};
