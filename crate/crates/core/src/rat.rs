//! Thin helpers around `BigRational`: construction, parsing of `p/q` strings,
//! decimal rendering with directed rounding, and integer extraction.

use alloc::string::String;
use alloc::{format, vec::Vec};
use core::fmt::Write as _;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_big(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

/// Parse `p`, `-p`, or `p/q` with `q > 0` after normalization.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("invalid rational numerator: {num:?}"))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| format!("invalid rational denominator: {den:?}"))?;
    if d.is_zero() {
        return Err(String::from("zero denominator"));
    }
    Ok(Rat::new(n, d))
}

/// Render as `p/q` (or plain `p` when the denominator is one).
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn floor_big(r: &Rat) -> BigInt {
    r.numer().div_floor(r.denom())
}

pub fn ceil_big(r: &Rat) -> BigInt {
    -((-r).numer().div_floor(r.denom()))
}

/// Decimal expansion truncated toward zero at `digits` fractional digits.
pub fn format_decimal(r: &Rat, digits: u32) -> String {
    let neg = r.is_negative();
    let abs = r.abs();
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = floor_big(&(abs * Rat::from_integer(scale.clone())));
    let (int_part, frac_part) = scaled.div_rem(&scale);
    let mut out = String::new();
    if neg && !(int_part.is_zero() && frac_part.is_zero()) {
        out.push('-');
    }
    let _ = write!(out, "{int_part}");
    if digits > 0 {
        let frac = format!("{frac_part}");
        out.push('.');
        for _ in frac.len()..digits as usize {
            out.push('0');
        }
        out.push_str(&frac);
    }
    out
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `r^k` for signed integer exponents; `r` must be nonzero when `k < 0`.
pub fn pow_i(r: &Rat, k: i64) -> Rat {
    let mut base = if k < 0 { r.recip() } else { r.clone() };
    let mut e = k.unsigned_abs();
    let mut acc = Rat::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= base.clone();
        }
        base = base.clone() * base;
        e >>= 1;
    }
    acc
}

/// Exact integer square root check: `Some(s)` iff `n = s^2` with `s >= 0`.
pub fn perfect_sqrt(n: &BigInt) -> Option<BigInt> {
    match n.sign() {
        Sign::Minus => None,
        Sign::NoSign => Some(BigInt::zero()),
        Sign::Plus => {
            let s = n.sqrt();
            if &s * &s == *n {
                Some(s)
            } else {
                None
            }
        }
    }
}

/// Exact rational square root: `Some(s)` iff `r = s^2` with `s >= 0`.
pub fn rat_perfect_sqrt(r: &Rat) -> Option<Rat> {
    let n = perfect_sqrt(r.numer())?;
    let d = perfect_sqrt(r.denom())?;
    Some(Rat::new(n, d))
}

pub fn max_rat(items: impl IntoIterator<Item = Rat>) -> Option<Rat> {
    let mut best: Option<Rat> = None;
    for it in items {
        best = Some(match best {
            None => it,
            Some(b) => {
                if it > b {
                    it
                } else {
                    b
                }
            }
        });
    }
    best
}

/// Dot products and sums used by the least-squares fit.
pub fn rat_sum<'a>(items: impl IntoIterator<Item = &'a Rat>) -> Rat {
    items.into_iter().fold(Rat::zero(), |s, x| s + x)
}

pub fn rat_vec_from_i64(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat_int(x)).collect()
}
