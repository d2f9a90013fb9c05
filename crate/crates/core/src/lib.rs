//! Exact cohomology of groups with coefficients in integral lattices,
//! Reidemeister torsion of the rationalized cochain complex, and evaluators
//! for the growth of torsion in arithmetic-group cohomology.

pub mod asymptotics;
pub mod complex;
pub mod error;
pub mod linalg;
pub mod reps;
pub mod serde_util;
pub mod torsion;

pub use error::{Error, Result};
