//! Decimal rendering of exact quantities: `π`-multiples, logarithms of
//! positive rationals, and plain rationals.
//!
//! Precision is in significant decimal digits, 50 by default and overridable
//! through the `ARITH_TORSION_DIGITS` environment variable.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Rational;

pub const DEFAULT_DIGITS: usize = 50;
pub const DIGITS_ENV: &str = "ARITH_TORSION_DIGITS";
const MAX_DIGITS: usize = 10_000;

/// Digits requested by the environment, or the default.
pub fn digits_from_env() -> Result<usize> {
    match std::env::var(DIGITS_ENV) {
        Ok(s) => {
            let d: usize = s
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("{DIGITS_ENV}={s:?} is not a digit count")))?;
            if d == 0 || d > MAX_DIGITS {
                return Err(Error::Invalid(format!("{DIGITS_ENV} must be in 1..={MAX_DIGITS}")));
            }
            Ok(d)
        }
        Err(_) => Ok(DEFAULT_DIGITS),
    }
}

const RM: RoundingMode = RoundingMode::ToEven;

struct Ctx {
    bits: usize,
    cc: Consts,
}

impl Ctx {
    fn new(digits: usize) -> Self {
        // 3.33 bits per digit plus guard bits for the final rounding
        Ctx {
            bits: digits * 10 / 3 + 64,
            cc: Consts::new().expect("astro-float constants"),
        }
    }

    fn rational(&mut self, r: &Rational) -> BigFloat {
        let n = BigFloat::parse(&r.numer().to_string(), Radix::Dec, self.bits, RM, &mut self.cc);
        let d = BigFloat::parse(&r.denom().to_string(), Radix::Dec, self.bits, RM, &mut self.cc);
        n.div(&d, self.bits, RM)
    }

    fn render(&mut self, x: &BigFloat, digits: usize) -> String {
        let s = x.format(Radix::Dec, RM, &mut self.cc).expect("finite value");
        round_decimal(&s, digits)
    }
}

/// `coeff · π` to `digits` significant digits.
pub fn pi_multiple(coeff: &Rational, digits: usize) -> String {
    if coeff.is_zero() {
        return "0".into();
    }
    let mut ctx = Ctx::new(digits);
    let pi = ctx.cc.pi(ctx.bits, RM);
    let x = ctx.rational(coeff).mul(&pi, ctx.bits, RM);
    ctx.render(&x, digits)
}

/// `coeff · log(arg)` for a positive rational `arg`.
pub fn scaled_ln(coeff: &Rational, arg: &Rational, digits: usize) -> String {
    assert!(arg.is_positive(), "logarithm of a non-positive rational");
    if coeff.is_zero() || arg == &Rational::from_integer(1.into()) {
        return "0".into();
    }
    let mut ctx = Ctx::new(digits);
    let (n, d) = (arg.numer().clone(), arg.denom().clone());
    let ln = |ctx: &mut Ctx, v: &num_bigint::BigInt| {
        let x = BigFloat::parse(&v.to_string(), Radix::Dec, ctx.bits, RM, &mut ctx.cc);
        x.ln(ctx.bits, RM, &mut ctx.cc)
    };
    let l = ln(&mut ctx, &n).sub(&ln(&mut ctx, &d), ctx.bits, RM);
    let x = ctx.rational(coeff).mul(&l, ctx.bits, RM);
    ctx.render(&x, digits)
}

/// A rational as a decimal with `digits` significant digits.
pub fn rational(r: &Rational, digits: usize) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let mut ctx = Ctx::new(digits);
    let x = ctx.rational(r);
    ctx.render(&x, digits)
}

/// Rounds astro-float's `d.ddd…e±N` output to `digits` significant digits
/// (half away from zero) and prints it positionally when the exponent is
/// moderate, in `d.ddde±N` form otherwise. Trailing zeros are dropped.
fn round_decimal(s: &str, digits: usize) -> String {
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let (mant, exp) = match body.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().expect("exponent")),
        None => (body, 0),
    };
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    let mut ds: Vec<u8> = int_part.bytes().chain(frac_part.bytes()).map(|b| b - b'0').collect();
    // position of the decimal point after the first digit, corrected below
    let mut exp = exp + int_part.len() as i64 - 1;
    while ds.len() > 1 && ds[0] == 0 {
        ds.remove(0);
        exp -= 1;
    }
    if ds.iter().all(|&d| d == 0) {
        return "0".into();
    }
    if ds.len() > digits {
        let round_up = ds[digits] >= 5;
        ds.truncate(digits);
        if round_up {
            let mut i = digits;
            loop {
                if i == 0 {
                    ds.insert(0, 1);
                    ds.truncate(digits);
                    exp += 1;
                    break;
                }
                i -= 1;
                if ds[i] == 9 {
                    ds[i] = 0;
                } else {
                    ds[i] += 1;
                    break;
                }
            }
        }
    }
    while ds.len() > 1 && ds.last() == Some(&0) {
        ds.pop();
    }
    let text: String = ds.iter().map(|d| char::from(b'0' + d)).collect();
    let out = if (-6..digits as i64).contains(&exp) {
        if exp < 0 {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), text)
        } else {
            let e = exp as usize;
            if text.len() > e + 1 {
                format!("{}.{}", &text[..=e], &text[e + 1..])
            } else {
                format!("{}{}", text, "0".repeat(e + 1 - text.len()))
            }
        }
    } else {
        let rest = if text.len() > 1 { format!(".{}", &text[1..]) } else { String::new() };
        format!("{}{}e{}", &text[..1], rest, exp)
    };
    if neg {
        format!("-{out}")
    } else {
        out
    }
}
