use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::asymptotics::precision;
use crate::error::{Error, Result};
use crate::linalg::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthPoint {
    pub m: i64,
    #[serde(with = "crate::serde_util::rational")]
    pub value: Rational,
}

/// Values indexed by strictly increasing `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthSeries {
    points: Vec<GrowthPoint>,
}

impl GrowthSeries {
    pub fn new(points: Vec<(i64, Rational)>) -> Result<Self> {
        if points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::Invalid("m values must be strictly increasing".into()));
        }
        Ok(GrowthSeries {
            points: points.into_iter().map(|(m, value)| GrowthPoint { m, value }).collect(),
        })
    }

    pub fn points(&self) -> &[GrowthPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub degree: u32,
    #[serde(with = "crate::serde_util::rational")]
    pub leading: Rational,
    #[serde(with = "crate::serde_util::rational")]
    pub subleading: Rational,
    pub leading_decimal: String,
    /// `‖residual‖ / ‖values‖`.
    pub relative_residual: f64,
}

/// Exact least-squares fit of `value ≈ a·m^p + b·m^{p-1}`.
pub fn fit_growth(series: &GrowthSeries, degree: u32) -> Result<FitReport> {
    if degree == 0 {
        return Err(Error::Invalid("fit degree must be at least 1".into()));
    }
    let need = (degree as usize + 1).max(3);
    if series.len() < need {
        return Err(Error::Invalid(format!(
            "degree-{degree} fit needs at least {need} points, got {}",
            series.len()
        )));
    }
    let basis = |m: i64| {
        let hi = num_traits::pow(BigInt::from(m), degree as usize);
        let lo = num_traits::pow(BigInt::from(m), degree as usize - 1);
        (Rational::from_integer(hi), Rational::from_integer(lo))
    };
    let (mut s11, mut s12, mut s22, mut r1, mut r2) = (
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
    );
    for pt in series.points() {
        let (u, v) = basis(pt.m);
        s11 += &u * &u;
        s12 += &u * &v;
        s22 += &v * &v;
        r1 += &u * &pt.value;
        r2 += &v * &pt.value;
    }
    let det = &s11 * &s22 - &s12 * &s12;
    if det.is_zero() {
        return Err(Error::IllConditioned(
            "normal equations are singular; the m values do not separate m^p from m^(p-1)".into(),
        ));
    }
    let a = (&s22 * &r1 - &s12 * &r2) / &det;
    let b = (&s11 * &r2 - &s12 * &r1) / &det;
    let mut res2 = Rational::zero();
    let mut val2 = Rational::zero();
    for pt in series.points() {
        let (u, v) = basis(pt.m);
        let r = &pt.value - (&a * u + &b * v);
        res2 += &r * &r;
        val2 += &pt.value * &pt.value;
    }
    let ratio = if val2.is_zero() { res2 } else { res2 / val2 };
    let relative_residual = ratio.to_f64().unwrap_or(f64::INFINITY).sqrt();
    Ok(FitReport {
        degree,
        leading_decimal: precision::rational(&a, precision::DEFAULT_DIGITS),
        leading: a,
        subleading: b,
        relative_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(f: impl Fn(i64) -> i64, ms: impl Iterator<Item = i64>) -> GrowthSeries {
        GrowthSeries::new(ms.map(|m| (m, Rational::from_integer(f(m).into()))).collect()).unwrap()
    }

    #[test]
    fn exact_cubic() {
        let r = fit_growth(&series(|m| 7 * m * m * m, 1..8), 3).unwrap();
        assert_eq!(r.leading, Rational::from_integer(7.into()));
        assert_eq!(r.relative_residual, 0.0);
    }

    #[test]
    fn quadratic_with_linear_term() {
        let r = fit_growth(&series(|m| 2 * m * m + 3 * m, 1..=10), 2).unwrap();
        assert_eq!(r.leading, Rational::from_integer(2.into()));
        assert_eq!(r.subleading, Rational::from_integer(3.into()));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(fit_growth(&series(|m| m, 1..3), 1).is_err());
        assert!(GrowthSeries::new(vec![(2, Rational::zero()), (1, Rational::zero())]).is_err());
        // p = 1 with every point at m = 0 cannot separate the terms
        let s = GrowthSeries::new(vec![(0, Rational::zero()), (1, Rational::zero()), (2, Rational::zero())]).unwrap();
        assert!(fit_growth(&s, 1).is_ok());
        let err = fit_growth(&series(|m| m, [0i64].into_iter().chain(std::iter::empty())), 1);
        assert!(err.is_err());
    }
}
