//! Closed-form constants and predicted leading terms, plus growth fitting.

pub mod constants;
pub mod fit;
pub mod precision;

pub use constants::{
    c_pq, c_pq_sign, constant_c_lambda, parse_rational, predict_liminf_bound, predict_theorem1, predict_theorem2,
    so_rank, GeometryInput, LiminfKind, PiValue, Theorem2Outcome,
};
pub use fit::{fit_growth, FitReport, GrowthPoint, GrowthSeries};
