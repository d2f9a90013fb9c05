use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Rational;

/// The root systems built in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "UPPERCASE")]
pub enum RootSystem {
    A1,
    A2,
    /// `D_{n+1}`, weights written in the `n + 1` coordinates `e_i`.
    D { n: usize },
}

impl RootSystem {
    /// Length of a coefficient vector for this root system.
    pub fn coefficient_len(&self) -> usize {
        match self {
            RootSystem::A1 => 1,
            RootSystem::A2 => 2,
            RootSystem::D { n } => n + 1,
        }
    }

    pub fn data(&self) -> RootSystemData {
        let q = |n: i64, d: i64| Rational::new(n.into(), d.into());
        match *self {
            RootSystem::A1 => RootSystemData::euclidean(vec![vec![1, -1]], vec![q(1, 2), q(-1, 2)]),
            RootSystem::A2 => RootSystemData::euclidean(
                vec![vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]],
                vec![q(1, 1), q(0, 1), q(-1, 1)],
            ),
            RootSystem::D { n } => {
                let dim = n + 1;
                let mut roots = Vec::new();
                for i in 0..dim {
                    for j in i + 1..dim {
                        for s in [-1, 1] {
                            let mut r = vec![0; dim];
                            r[i] = 1;
                            r[j] = s;
                            roots.push(r);
                        }
                    }
                }
                let rho = (0..dim).map(|i| q((n - i) as i64, 1)).collect();
                RootSystemData::euclidean(roots, rho)
            }
        }
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootSystem::A1 => write!(f, "A1"),
            RootSystem::A2 => write!(f, "A2"),
            RootSystem::D { n } => write!(f, "D{}", n + 1),
        }
    }
}

/// Positive roots, half-sum `ρ` and the inner product, in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystemData {
    pub positive_roots: Vec<Vec<i64>>,
    pub rho: Vec<Rational>,
    pub inner_product: Vec<Vec<Rational>>,
}

impl RootSystemData {
    fn euclidean(positive_roots: Vec<Vec<i64>>, rho: Vec<Rational>) -> Self {
        let n = rho.len();
        let inner_product = (0..n)
            .map(|i| (0..n).map(|j| Rational::from_integer(BigInt::from((i == j) as i64))).collect())
            .collect();
        RootSystemData {
            positive_roots,
            rho,
            inner_product,
        }
    }

    /// Checks shapes and `⟨ρ, α⟩ > 0` for every positive root.
    pub fn validate(&self) -> Result<()> {
        let n = self.rho.len();
        if self.inner_product.len() != n || self.inner_product.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("inner product matrix does not match the ambient dimension".into()));
        }
        for a in &self.positive_roots {
            if a.len() != n {
                return Err(Error::Invalid("root has the wrong number of coordinates".into()));
            }
            if !self.pair(&self.rho, a).is_positive() {
                return Err(Error::Invalid(format!("<rho, {a:?}> is not positive")));
            }
        }
        Ok(())
    }

    pub fn pair(&self, v: &[Rational], root: &[i64]) -> Rational {
        let mut acc = Rational::zero();
        for (i, vi) in v.iter().enumerate() {
            for (j, &aj) in root.iter().enumerate() {
                if aj != 0 && !self.inner_product[i][j].is_zero() {
                    acc += vi * &self.inner_product[i][j] * Rational::from_integer(aj.into());
                }
            }
        }
        acc
    }
}

/// Dimension `Π_{α>0} ⟨λ+ρ, α⟩ / ⟨ρ, α⟩` of the irreducible module with
/// highest weight `λ` (ambient coordinates).
pub fn weyl_dim(rs: &RootSystemData, lambda: &[Rational]) -> Result<BigInt> {
    rs.validate()?;
    if lambda.len() != rs.rho.len() {
        return Err(Error::Invalid("weight has the wrong number of coordinates".into()));
    }
    let mut num = Rational::one();
    let mut den = Rational::one();
    for a in &rs.positive_roots {
        let l = rs.pair(lambda, a);
        if l.is_negative() {
            return Err(Error::NonDominant(format!("<lambda, {a:?}> = {l} < 0")));
        }
        let r = rs.pair(&rs.rho, a);
        num *= l + &r;
        den *= r;
    }
    let d = num / den;
    if !d.is_integer() {
        return Err(Error::NonDominant(format!("Weyl formula gives non-integral {d}; weight is not integral")));
    }
    Ok(d.to_integer())
}

/// Degree and leading coefficient in `m` of `weyl_dim(m · λ)`.
pub fn weyl_dim_leading(rs: &RootSystemData, lambda: &[Rational]) -> Result<(usize, Rational)> {
    weyl_dim(rs, lambda)?;
    let mut degree = 0;
    let mut coeff = Rational::one();
    for a in &rs.positive_roots {
        let l = rs.pair(lambda, a);
        if !l.is_zero() {
            degree += 1;
            coeff *= l / rs.pair(&rs.rho, a);
        }
    }
    Ok((degree, coeff))
}

/// A dominant weight: `A1` as `k·ω`, `A2` as `τ_1 ω_1 + τ_2 ω_2`, `D_{n+1}` as
/// `Σ k_i e_i` with `k_1 ≥ … ≥ k_n ≥ |k_{n+1}|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HighestWeight {
    root_system: RootSystem,
    coefficients: Vec<i64>,
}

impl HighestWeight {
    pub fn new(root_system: RootSystem, coefficients: Vec<i64>) -> Result<Self> {
        if coefficients.len() != root_system.coefficient_len() {
            return Err(Error::Invalid(format!(
                "{root_system} weights take {} coefficients, got {}",
                root_system.coefficient_len(),
                coefficients.len()
            )));
        }
        let w = HighestWeight {
            root_system,
            coefficients,
        };
        let c = &w.coefficients;
        let dominant = match root_system {
            RootSystem::A1 | RootSystem::A2 => c.iter().all(|&k| k >= 0),
            RootSystem::D { n } => c.windows(2).take(n.saturating_sub(1)).all(|p| p[0] >= p[1]) && c[n - 1] >= c[n].abs(),
        };
        if !dominant {
            return Err(Error::NonDominant(w.to_string()));
        }
        Ok(w)
    }

    pub fn a2(t1: i64, t2: i64) -> Result<Self> {
        Self::new(RootSystem::A2, vec![t1, t2])
    }

    /// `ω^±_{f,n} = e_1 + … + e_n ± e_{n+1}` for `D_{n+1}`.
    pub fn d_fundamental(n: usize, plus: bool) -> Result<Self> {
        let mut c = vec![1; n + 1];
        if !plus {
            c[n] = -1;
        }
        Self::new(RootSystem::D { n }, c)
    }

    pub fn root_system(&self) -> RootSystem {
        self.root_system
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    /// Coordinates in the ambient Euclidean space of [`RootSystem::data`].
    pub fn to_ambient(&self) -> Vec<Rational> {
        let q = |n: i64, d: i64| Rational::new(n.into(), d.into());
        let c = &self.coefficients;
        match self.root_system {
            RootSystem::A1 => vec![q(c[0], 2), q(-c[0], 2)],
            // ω_1 = (2/3, -1/3, -1/3), ω_2 = (1/3, 1/3, -2/3)
            RootSystem::A2 => vec![
                q(2 * c[0] + c[1], 3),
                q(-c[0] + c[1], 3),
                q(-c[0] - 2 * c[1], 3),
            ],
            RootSystem::D { .. } => c.iter().map(|&k| q(k, 1)).collect(),
        }
    }

    pub fn scale(&self, m: i64) -> Result<Self> {
        if m < 0 {
            return Err(Error::Invalid(format!("weight multiplier {m} is negative")));
        }
        Self::new(self.root_system, self.coefficients.iter().map(|k| k * m).collect())
    }

    pub fn dim(&self) -> BigInt {
        weyl_dim(&self.root_system.data(), &self.to_ambient()).expect("validated dominant weight")
    }

    /// Twist by the Cartan involution: identity on `A1`, swap on `A2`,
    /// negation of the last coordinate on `D_{n+1}`.
    pub fn theta_twist(&self) -> Self {
        let mut c = self.coefficients.clone();
        match self.root_system {
            RootSystem::A1 => {}
            RootSystem::A2 => c.swap(0, 1),
            RootSystem::D { n } => c[n] = -c[n],
        }
        HighestWeight {
            root_system: self.root_system,
            coefficients: c,
        }
    }

    pub fn is_theta_fixed(&self) -> bool {
        self.theta_twist() == *self
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.root_system {
            RootSystem::D { .. } => "D".to_string(),
            rs => rs.to_string(),
        };
        let c: Vec<String> = self.coefficients.iter().map(i64::to_string).collect();
        write!(f, "{tag}:{}", c.join(","))
    }
}

/// Parses `A1:k`, `A2:t1,t2` or `D:k1,...,k_{n+1}`.
impl FromStr for HighestWeight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (tag, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::parse(1, 1, format!("weight {s:?} should look like A2:3,1 or D:k1,...")))?;
        let mut coeffs = Vec::new();
        let mut col = tag.len() + 2;
        for part in rest.split(',') {
            let k: i64 = part
                .trim()
                .parse()
                .map_err(|_| Error::parse(1, col, format!("invalid weight coefficient {part:?}")))?;
            coeffs.push(k);
            col += part.len() + 1;
        }
        let rs = match tag.trim() {
            "A1" => RootSystem::A1,
            "A2" => RootSystem::A2,
            "D" => {
                if coeffs.len() < 2 {
                    return Err(Error::Invalid("D-type weights need at least 2 coordinates".into()));
                }
                RootSystem::D { n: coeffs.len() - 1 }
            }
            other => return Err(Error::parse(1, 1, format!("unknown root system {other:?}"))),
        };
        HighestWeight::new(rs, coeffs)
    }
}
