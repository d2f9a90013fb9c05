//! Exact integer and rational linear algebra.

pub mod dense;
pub mod det;
pub mod format;
pub mod rank;
pub mod snf;
pub mod sparse;

pub use dense::IntMatrix;
pub use det::{bareiss_det, det_rational};
pub use rank::{rank_profile, rational_rank, RankProfile};
pub use snf::{saturated_column_basis, snf, snf_with, SnfOptions, SnfResult, SnfStrategy};
pub use sparse::SparseIntMatrix;

/// Exact rational number in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;
