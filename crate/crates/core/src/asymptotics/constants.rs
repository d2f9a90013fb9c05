//! Closed-form constants and predicted leading terms. Every prediction is an
//! exact rational multiple of `π`, rendered to decimals only at the edge.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::asymptotics::precision;
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::reps::{rho_m_rank, rho_m_rank_leading, HighestWeight, RootSystem};

/// Parses a positive volume given as an integer, a decimal (optionally with
/// an exponent) or a fraction `a/b`, exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::parse(1, 1, format!("{s:?} is not a decimal or fraction"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Invalid(format!("{s:?} has a zero denominator")));
        }
        return Ok(Rational::new(n, d));
    }
    let (mant, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}0").parse::<BigInt>().map_err(|_| bad())? / 10;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        Rational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

/// Volumes and the real group they belong to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryInput {
    #[serde(with = "crate::serde_util::rational")]
    pub vol_x: Rational,
    #[serde(with = "crate::serde_util::rational")]
    pub vol_xd: Rational,
    /// Signature of `SO(p, q)` for the orthogonal branch.
    pub p: Option<u32>,
    pub q: Option<u32>,
}

impl GeometryInput {
    pub fn new(vol_x: Rational, vol_xd: Rational, p: Option<u32>, q: Option<u32>) -> Result<Self> {
        if !vol_x.is_positive() || !vol_xd.is_positive() {
            return Err(Error::Invalid("volumes must be positive".into()));
        }
        Ok(GeometryInput { vol_x, vol_xd, p, q })
    }

    fn pq(&self) -> Result<(u32, u32)> {
        match (self.p, self.q) {
            (Some(p), Some(q)) => Ok((p, q)),
            _ => Err(Error::Invalid("the SO branch needs p and q".into())),
        }
    }
}

/// `coeff · π`, with a decimal rendering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiValue {
    #[serde(with = "crate::serde_util::rational")]
    pub pi_coefficient: Rational,
    pub decimal: String,
}

impl PiValue {
    pub fn new(pi_coefficient: Rational, digits: usize) -> Self {
        let decimal = precision::pi_multiple(&pi_coefficient, digits);
        PiValue { pi_coefficient, decimal }
    }
}

/// `n = (p + q)/2 - 1` after checking that `p, q` are odd with `p ≥ q`, `p > 1`.
pub fn so_rank(p: u32, q: u32) -> Result<usize> {
    if p.is_multiple_of(2) || q.is_multiple_of(2) {
        return Err(Error::Invalid(format!("p = {p} and q = {q} must both be odd")));
    }
    if p < q || p <= 1 {
        return Err(Error::Invalid(format!("need p >= q and p > 1, got p = {p}, q = {q}")));
    }
    Ok(((p + q) / 2 - 1) as usize)
}

/// `C_{p,q} / π = (-1)^{(pq-1)/2} · 2^{ε(q)} / vol(X_d) · binom(n, (p-1)/2)`,
/// with `ε(1) = 0` and `ε(q) = 1` otherwise.
pub fn c_pq(p: u32, q: u32, vol_xd: &Rational) -> Result<Rational> {
    let n = so_rank(p, q)?;
    if !vol_xd.is_positive() {
        return Err(Error::Invalid("vol(X_d) must be positive".into()));
    }
    let sign: i64 = if ((p as u64 * q as u64 - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
    let two_eps: i64 = if q == 1 { 1 } else { 2 };
    let b = binomial(BigInt::from(n), BigInt::from((p - 1) / 2));
    Ok(Rational::from_integer(b * (sign * two_eps)) / vol_xd)
}

/// `-C_{p,q} · vol(X) · m · rk(M_m)`: leading term of `Σ (-1)^j log|H^j|`.
/// `n` is derived from `(p, q)`; a supplied `n` must agree.
pub fn predict_theorem1(geom: &GeometryInput, n: Option<usize>, d: u32, m: i64, digits: usize) -> Result<PiValue> {
    let (p, q) = geom.pq()?;
    let derived = so_rank(p, q)?;
    if let Some(n) = n {
        if n != derived {
            return Err(Error::Invalid(format!("n = {n} disagrees with (p+q)/2 - 1 = {derived}")));
        }
    }
    let c = c_pq(p, q, &geom.vol_xd)?;
    let rank = rho_m_rank(derived, d, m)?;
    let coeff = -c * &geom.vol_x * Rational::from_integer(BigInt::from(m) * rank);
    Ok(PiValue::new(coeff, digits))
}

/// `C(Λ)` where known: `4/9` for the fundamental weights of `SL_3`.
pub fn constant_c_lambda(weight: &HighestWeight) -> Option<Rational> {
    let fundamental = weight.root_system() == RootSystem::A2 && matches!(weight.coefficients(), [1, 0] | [0, 1]);
    fundamental.then(|| Rational::new(4.into(), 9.into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Theorem2Outcome {
    Predicted {
        #[serde(with = "crate::serde_util::rational")]
        c_lambda: Rational,
        value: PiValue,
    },
    /// No closed form for `C(Λ)` is available for this weight.
    UnsupportedConstant { weight: String },
}

/// `-π · vol(X)/vol(X_d) · C(Λ) · m · dim V(mΛ)` for a non-θ-fixed `SL_3`
/// weight.
pub fn predict_theorem2(geom: &GeometryInput, weight: &HighestWeight, m: i64, digits: usize) -> Result<Theorem2Outcome> {
    if weight.root_system() != RootSystem::A2 {
        return Err(Error::Invalid(format!("SL(3) predictions need an A2 weight, got {weight}")));
    }
    if weight.is_theta_fixed() {
        return Err(Error::Invalid(format!(
            "{weight} is fixed by the Cartan involution, so the acyclicity hypothesis fails"
        )));
    }
    let Some(c) = constant_c_lambda(weight) else {
        return Ok(Theorem2Outcome::UnsupportedConstant {
            weight: weight.to_string(),
        });
    };
    let dim = weight.scale(m)?.dim();
    let coeff = -(&geom.vol_x / &geom.vol_xd) * &c * Rational::from_integer(BigInt::from(m) * dim);
    Ok(Theorem2Outcome::Predicted {
        c_lambda: c,
        value: PiValue::new(coeff, digits),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LiminfKind {
    /// `SL_3` with a fundamental weight.
    Sl3,
    /// `SO(p, q)` over a field of degree `d`.
    So { d: u32 },
}

/// Lower-bound constant for the liminf of the odd/even torsion sums
/// normalized by `m · rk` (`SO`) or `m · dim` (`SL_3`).
///
/// `SL_3`: `2π vol(X) / (9 vol(X_d))`. `SO`: `|C_{p,q}| · vol(X) · lead`, with
/// `lead` the exact `m^{d n(n+1)/2}` coefficient of the rank; this is a
/// derived bound, not a value stated in closed form by the theory.
pub fn predict_liminf_bound(kind: LiminfKind, geom: &GeometryInput, digits: usize) -> Result<PiValue> {
    let coeff = match kind {
        LiminfKind::Sl3 => Rational::new(2.into(), 9.into()) * &geom.vol_x / &geom.vol_xd,
        LiminfKind::So { d } => {
            let (p, q) = geom.pq()?;
            let n = so_rank(p, q)?;
            c_pq(p, q, &geom.vol_xd)?.abs() * &geom.vol_x * rho_m_rank_leading(n, d)?
        }
    };
    Ok(PiValue::new(coeff, digits))
}

/// Sign of `C_{p,q}` as `±1`.
pub fn c_pq_sign(p: u32, q: u32) -> Result<i32> {
    let c = c_pq(p, q, &Rational::one())?;
    Ok(if c.is_positive() { 1 } else { -1 })
}
