use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::reps::weights::{weyl_dim_leading, HighestWeight, RootSystem};

/// `τ(m)`: highest weight `c·m·(e_1 + … + e_{n+1})` of `D_{n+1}`, with
/// `c = 2` for even `n` and `c = 1` for odd `n`.
pub fn tau_m(n: usize, m: i64) -> Result<HighestWeight> {
    if n == 0 {
        return Err(Error::Invalid("n must be at least 1".into()));
    }
    let c = if n.is_multiple_of(2) { 2 } else { 1 };
    HighestWeight::new(RootSystem::D { n }, vec![c * m; n + 1])
}

/// Rank of `M_m`: `d · (2 · dim τ(m))^d`, one copy of `τ(m) ⊕ τ(m)_θ` per
/// real place, tensored over the `d` places and summed over `d` copies.
pub fn rho_m_rank(n: usize, d: u32, m: i64) -> Result<BigInt> {
    if d == 0 || m < 1 {
        return Err(Error::Invalid(format!("need d >= 1 and m >= 1, got d = {d}, m = {m}")));
    }
    let dim = tau_m(n, m)?.dim();
    Ok(BigInt::from(d) * num_traits::pow(dim * 2, d as usize))
}

/// Growth degree `d·n(n+1)/2` of `rho_m_rank` in `m`.
pub fn rank_degree(n: usize, d: u32) -> usize {
    d as usize * n * (n + 1) / 2
}

/// Exact coefficient of `m^{d n(n+1)/2}` in `rho_m_rank(n, d, m)`.
pub fn rho_m_rank_leading(n: usize, d: u32) -> Result<Rational> {
    let w = tau_m(n, 1)?;
    let (deg, lead) = weyl_dim_leading(&w.root_system().data(), &w.to_ambient())?;
    debug_assert_eq!(deg, n * (n + 1) / 2);
    let two = Rational::from_integer(2.into());
    Ok(Rational::from_integer(d.into()) * num_traits::pow(two * lead, d as usize))
}

/// Leading coefficient of `dim V(τ_1 m ω_1 + τ_2 m ω_2)` from Weyl's formula:
/// `τ_1 τ_2 (τ_1 + τ_2) / 2` (the `m^3` term).
pub fn sl3_leading_coefficient(t1: i64, t2: i64) -> Rational {
    Rational::new(BigInt::from(t1) * t2 * (t1 + t2), 2.into())
}

/// The alternative closed form `(τ_1³ + τ_2² τ_1) / 2`. It disagrees with
/// Weyl's formula and is kept only so reports can show the two side by side.
pub fn printed_sl3_leading_coefficient(t1: i64, t2: i64) -> Rational {
    Rational::new(BigInt::from(t1 * t1 * t1 + t2 * t2 * t1), 2.into())
}

/// `rho_m_rank(n,d,m) / m^{d n(n+1)/2}` as an exact rational.
pub fn normalized_rank(n: usize, d: u32, m: i64) -> Result<Rational> {
    let r = rho_m_rank(n, d, m)?;
    let scale = num_traits::pow(BigInt::from(m), rank_degree(n, d));
    if scale.is_zero() {
        return Ok(Rational::zero());
    }
    Ok(Rational::new(r, scale))
}
