//! Reidemeister torsion by determinants of combinatorial Laplacians, and the
//! cross-check against orders of cohomology groups.

pub mod laplacian;
pub mod random;
pub mod verify;

pub use laplacian::{laplacian, nonzero_part_det, reidemeister_torsion, reidemeister_torsion_with, TorsionValue};
pub use random::{random_acyclic, random_acyclic_with, random_unimodular, simple_expansion, RandomOptions};
pub use verify::{verify_cochain, verify_prop21, Prop21Report};
