//! Group-ring chain complexes, coefficient modules and the integral cochain
//! complexes `Hom_{Z[Γ]}(C_*, M)` they specialize to.

pub mod builders;
pub mod chain;
pub mod cochain;
pub mod files;
pub mod group;
pub mod module;

pub use builders::{bar_complex, lens_complex, periodic_complex, zeta_module};
pub use chain::{specialize, Convention, GroupRingComplex, GroupRingMatrix, SpecializeOptions};
pub use cochain::{CochainComplex, CohomologyResult, DegreeCohomology};
pub use group::{FiniteGroup, GroupPresentation, GroupRingElement, Word};
pub use module::CoeffModule;
