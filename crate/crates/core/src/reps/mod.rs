//! Highest weights, Weyl dimensions, and integral lattices in the
//! representations used as coefficient systems.

pub mod lattices;
pub mod rank;
pub mod weights;

pub use lattices::{
    dual_sym_power_lattice, monomial_basis, schur_module_lattice, schur_polynomial, sym_power_action, sym_power_lattice,
    SchurLattice, DEFAULT_SCHUR_CAP,
};
pub use rank::{
    normalized_rank, printed_sl3_leading_coefficient, rank_degree, rho_m_rank, rho_m_rank_leading,
    sl3_leading_coefficient, tau_m,
};
pub use weights::{weyl_dim, weyl_dim_leading, HighestWeight, RootSystem, RootSystemData};
