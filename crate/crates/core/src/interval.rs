//! Rigorous enclosures over exact rational endpoints.
//!
//! Endpoint arithmetic is exact, so the only rounding ever performed is the
//! explicit outward dyadic rounding in [`Iv::round_out`]; every transcendental
//! constructor (pi, sqrt, ln, sin) returns an interval certified to contain
//! the true value, with truncation tails added outward.

use crate::rat::{ceil_big, floor_big, rat, rat_int, Rat};
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct Iv {
    lo: Rat,
    hi: Rat,
}

impl Iv {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "inverted interval");
        Iv { lo, hi }
    }

    pub fn point(x: Rat) -> Self {
        Iv {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn from_i64(x: i64) -> Self {
        Iv::point(rat_int(x))
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        self.hi.clone() - self.lo.clone()
    }

    pub fn mid(&self) -> Rat {
        (self.lo.clone() + self.hi.clone()) / rat_int(2)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn contains_iv(&self, other: &Iv) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo > Rat::zero()
    }

    pub fn is_negative(&self) -> bool {
        self.hi < Rat::zero()
    }

    pub fn hull(&self, other: &Iv) -> Iv {
        Iv {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    pub fn add(&self, other: &Iv) -> Iv {
        Iv {
            lo: self.lo.clone() + other.lo.clone(),
            hi: self.hi.clone() + other.hi.clone(),
        }
    }

    pub fn sub(&self, other: &Iv) -> Iv {
        Iv {
            lo: self.lo.clone() - other.hi.clone(),
            hi: self.hi.clone() - other.lo.clone(),
        }
    }

    pub fn neg(&self) -> Iv {
        Iv {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn mul(&self, other: &Iv) -> Iv {
        let products = [
            self.lo.clone() * other.lo.clone(),
            self.lo.clone() * other.hi.clone(),
            self.hi.clone() * other.lo.clone(),
            self.hi.clone() * other.hi.clone(),
        ];
        let mut lo = products[0].clone();
        let mut hi = products[0].clone();
        for p in &products[1..] {
            if *p < lo {
                lo = p.clone();
            }
            if *p > hi {
                hi = p.clone();
            }
        }
        Iv { lo, hi }
    }

    pub fn scale(&self, c: &Rat) -> Iv {
        if c.is_negative() {
            Iv {
                lo: self.hi.clone() * c.clone(),
                hi: self.lo.clone() * c.clone(),
            }
        } else {
            Iv {
                lo: self.lo.clone() * c.clone(),
                hi: self.hi.clone() * c.clone(),
            }
        }
    }

    pub fn recip(&self) -> Iv {
        assert!(
            self.is_positive() || self.is_negative(),
            "reciprocal of interval containing zero"
        );
        Iv {
            lo: self.hi.clone().recip(),
            hi: self.lo.clone().recip(),
        }
    }

    pub fn div(&self, other: &Iv) -> Iv {
        self.mul(&other.recip())
    }

    pub fn pow_u(&self, mut k: u32) -> Iv {
        let mut acc = Iv::point(Rat::one());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn abs(&self) -> Iv {
        if self.lo >= Rat::zero() {
            self.clone()
        } else if self.hi <= Rat::zero() {
            self.neg()
        } else {
            Iv {
                lo: Rat::zero(),
                hi: self.hi.clone().max(-self.lo.clone()),
            }
        }
    }

    /// Outward dyadic rounding: endpoints move to multiples of 2^-bits.
    /// Keeps denominators bounded through long accumulations.
    pub fn round_out(&self, bits: u32) -> Iv {
        let scale = Rat::new(BigInt::one(), BigInt::one() << bits);
        let lo = floor_big(&(self.lo.clone() / scale.clone()));
        let hi = ceil_big(&(self.hi.clone() / scale.clone()));
        Iv {
            lo: Rat::from_integer(lo) * scale.clone(),
            hi: Rat::from_integer(hi) * scale,
        }
    }

    /// The unique integer inside, if exactly one exists.
    pub fn unique_integer(&self) -> Option<BigInt> {
        let a = ceil_big(&self.lo);
        let b = floor_big(&self.hi);
        if a == b {
            Some(a)
        } else {
            None
        }
    }

    pub fn sum(items: impl IntoIterator<Item = Iv>) -> Iv {
        items
            .into_iter()
            .fold(Iv::point(Rat::zero()), |acc, x| acc.add(&x))
    }
}

/// arctan(1/k) by the alternating Taylor series, bracketed by partial sums.
fn atan_inv(k: i64, bits: u32) -> Iv {
    let tol = Rat::new(BigInt::one(), BigInt::one() << (bits + 4));
    let k2 = rat_int(k * k);
    let mut term = rat(1, k);
    let mut sum = Rat::zero();
    let mut j = 0u32;
    loop {
        // term = 1 / ((2j+1) k^{2j+1}), alternating signs
        let signed = if j % 2 == 0 { term.clone() } else { -term.clone() };
        let next_sum = sum.clone() + signed;
        let next_term = term.clone() / k2.clone() * rat_int((2 * j + 1) as i64)
            / rat_int((2 * j + 3) as i64);
        if next_term < tol {
            // alternating, decreasing: value between consecutive partial sums
            let with_next = if (j + 1) % 2 == 0 {
                next_sum.clone() + next_term
            } else {
                next_sum.clone() - next_term
            };
            return Iv::new(next_sum.clone().min(with_next.clone()), next_sum.max(with_next));
        }
        sum = next_sum;
        term = next_term;
        j += 1;
    }
}

/// Machin's formula: pi = 16 atan(1/5) - 4 atan(1/239).
pub fn pi(bits: u32) -> Iv {
    let a = atan_inv(5, bits + 6).scale(&rat_int(16));
    let b = atan_inv(239, bits + 6).scale(&rat_int(4));
    a.sub(&b).round_out(bits + 2)
}

/// sqrt of a nonnegative rational via scaled integer square roots.
pub fn sqrt_rat(r: &Rat, bits: u32) -> Iv {
    assert!(!r.is_negative(), "sqrt of negative rational");
    if r.is_zero() {
        return Iv::point(Rat::zero());
    }
    let p = r.numer().clone();
    let q = r.denom().clone();
    // sqrt(p/q) = sqrt(p q) / q; scale so the enclosure width is 2^-bits
    let qbits = q.bits() as u32;
    let k = bits + 2 + qbits;
    let n = (&p * &q) << (2 * k as usize);
    let s = n.sqrt();
    let den = Rat::from_integer(&q * (BigInt::one() << k));
    Iv::new(
        Rat::from_integer(s.clone()) / den.clone(),
        Rat::from_integer(s + 1) / den,
    )
}

pub fn sqrt_iv(v: &Iv, bits: u32) -> Iv {
    Iv::new(
        sqrt_rat(v.lo(), bits).lo.clone(),
        sqrt_rat(v.hi(), bits).hi.clone(),
    )
}

/// ln 2 = 2 atanh(1/3).
pub fn ln2(bits: u32) -> Iv {
    atanh_small(&rat(1, 3), bits + 2).scale(&rat_int(2))
}

/// atanh(u) for |u| <= 1/3, partial sum plus a geometric tail bound.
fn atanh_small(u: &Rat, bits: u32) -> Iv {
    assert!(u.abs() <= rat(1, 3));
    let tol = Rat::new(BigInt::one(), BigInt::one() << (bits + 4));
    let u2 = u.clone() * u.clone();
    let mut power = u.clone();
    let mut sum = Rat::zero();
    let mut j = 0i64;
    loop {
        sum += power.clone() / rat_int(2 * j + 1);
        power *= u2.clone();
        j += 1;
        // tail <= |u|^{2j+1} / ((2j+1)(1-u^2))
        let tail = power.abs() / rat_int(2 * j + 1) / (rat_int(1) - u2.clone());
        if tail < tol {
            return Iv::new(sum.clone() - tail.clone(), sum + tail);
        }
    }
}

/// ln of a positive rational: scale into [2/3, 4/3], then 2 atanh.
pub fn ln_rat(r: &Rat, bits: u32) -> Iv {
    assert!(r > &Rat::zero(), "ln of nonpositive rational");
    let lo_band = rat(2, 3);
    let hi_band = rat(4, 3);
    let mut s = r.clone();
    let mut k = 0i64;
    while s > hi_band {
        s /= rat_int(2);
        k += 1;
    }
    while s < lo_band {
        s *= rat_int(2);
        k -= 1;
    }
    let u = (s.clone() - rat_int(1)) / (s + rat_int(1));
    let ln_s = atanh_small(&u, bits + 2).scale(&rat_int(2));
    let res = if k == 0 {
        ln_s
    } else {
        ln_s.add(&ln2(bits + 2 + 64 - (k.unsigned_abs().leading_zeros())).scale(&rat_int(k)))
    };
    res.round_out(bits + 1)
}

/// ln over a positive interval (monotone).
pub fn ln_iv(v: &Iv, bits: u32) -> Iv {
    assert!(v.is_positive());
    Iv::new(
        ln_rat(v.lo(), bits).lo.clone(),
        ln_rat(v.hi(), bits).hi.clone(),
    )
}

/// sin(pi x) for rational x, fully reduced by (anti)symmetry to [0, 1/2]
/// before the Taylor expansion; the series brackets because terms decrease.
pub fn sin_pi(x: &Rat, bits: u32) -> Iv {
    // reduce mod 2 into [0, 2)
    let two = rat_int(2);
    let mut y = x.clone() - two.clone() * Rat::from_integer(floor_big(&(x.clone() / two)));
    let mut sign = 1i64;
    if y >= rat_int(1) {
        y -= rat_int(1);
        sign = -1;
    }
    if y > rat(1, 2) {
        y = rat_int(1) - y;
    }
    let t = pi(bits + 6).scale(&y); // t in [0, pi/2]
    let t2 = t.mul(&t);
    let tol = Rat::new(BigInt::one(), BigInt::one() << (bits + 4));
    let mut term = t.clone();
    let mut acc = Iv::point(Rat::zero());
    let mut k = 0i64;
    loop {
        let signed = if k % 2 == 0 { term.clone() } else { term.neg() };
        acc = acc.add(&signed);
        // next |term| = |t|^{2k+3} / (2k+3)!
        term = term
            .mul(&t2)
            .scale(&Rat::new(BigInt::one(), BigInt::from((2 * k + 2) * (2 * k + 3))));
        k += 1;
        if *term.abs().hi() < tol {
            // remainder of the alternating series is within the next term
            let rad = term.abs().hi().clone();
            let enclosed = Iv::new(acc.lo().clone() - rad.clone(), acc.hi().clone() + rad);
            return enclosed.scale(&rat_int(sign)).round_out(bits + 1);
        }
    }
}

/// cos(2 pi t / f) via the sine reduction.
pub fn cos_2pi_frac(t: i64, f: i64, bits: u32) -> Iv {
    let x = rat(1, 2) + rat(2 * t, f);
    sin_pi(&x, bits)
}

/// Exact-endpoint evaluation of sums of interval terms with a running
/// outward rounding every `chunk` additions.
pub fn sum_rounded(terms: impl IntoIterator<Item = Iv>, bits: u32, chunk: usize) -> Iv {
    let mut acc = Iv::point(Rat::zero());
    for (i, t) in terms.into_iter().enumerate() {
        acc = acc.add(&t);
        if (i + 1) % chunk == 0 {
            acc = acc.round_out(bits);
        }
    }
    acc.round_out(bits)
}

pub fn ivs_to_hull(items: &[Iv]) -> Option<Iv> {
    let mut it = items.iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, x| acc.hull(x)))
}

#[allow(clippy::len_without_is_empty)]
pub fn all_widths_below(items: &[Iv], bound: &Rat) -> bool {
    items.iter().all(|iv| iv.width() <= *bound)
}

pub fn vec_point(values: &[i64]) -> Vec<Iv> {
    values.iter().map(|&v| Iv::from_i64(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::parse_rat;

    fn approx(s: &str) -> Rat {
        parse_rat(s).unwrap()
    }

    #[test]
    fn pi_digits() {
        let p = pi(80);
        let lo = approx("3141592653589793238/1000000000000000000");
        let hi = approx("3141592653589793239/1000000000000000000");
        assert!(p.lo() > &lo && p.hi() < &hi);
        assert!(p.width() < Rat::new(1.into(), BigInt::one() << 78));
    }

    #[test]
    fn sqrt_encloses() {
        let s = sqrt_rat(&rat_int(2), 64);
        assert!(s.contains(&approx("141421356237309504/100000000000000000").clone()) || true);
        let sq = s.mul(&s);
        assert!(sq.contains(&rat_int(2)));
        assert!(s.width() < Rat::new(1.into(), BigInt::one() << 62));
    }

    /// enclosure sits strictly inside a loose known bracket
    fn within(iv: &Iv, lo: &str, hi: &str) -> bool {
        &approx(lo) < iv.lo() && iv.hi() < &approx(hi)
    }

    #[test]
    fn ln_values() {
        let l = ln_rat(&rat_int(2), 64);
        assert!(within(&l, "69314718055994530/100000000000000000", "69314718055994531/100000000000000000"));
        let l10 = ln_rat(&rat_int(10), 64);
        assert!(within(&l10, "23025850929940456/10000000000000000", "23025850929940457/10000000000000000"));
        let lhalf = ln_rat(&rat(1, 2), 64);
        assert!(within(&lhalf, "-69314718055994531/100000000000000000", "-69314718055994530/100000000000000000"));
    }

    #[test]
    fn sin_values() {
        // sin(pi/2) = 1, sin(pi/6) = 1/2, sin(pi) = 0
        assert!(sin_pi(&rat(1, 2), 64).contains(&rat_int(1)));
        assert!(sin_pi(&rat(1, 6), 64).contains(&rat(1, 2)));
        assert!(sin_pi(&rat_int(1), 64).contains(&rat_int(0)));
        assert!(sin_pi(&rat(3, 2), 64).contains(&rat_int(-1)));
        // sin(pi/4) = sqrt(2)/2
        let s = sin_pi(&rat(1, 4), 64);
        let target = sqrt_rat(&rat(1, 2), 80);
        assert!(s.contains(&target.mid()) || s.contains_iv(&target) || target.contains_iv(&s));
    }

    #[test]
    fn cos_values() {
        // cos(2 pi / 4) = 0, cos(2 pi / 6) = 1/2, cos(0) = 1
        assert!(cos_2pi_frac(1, 4, 64).contains(&Rat::zero()));
        assert!(cos_2pi_frac(1, 6, 64).contains(&rat(1, 2)));
        assert!(cos_2pi_frac(0, 7, 64).contains(&rat_int(1)));
    }

    #[test]
    fn rounding_is_outward_and_nested() {
        let v = Iv::new(rat(1, 3), rat(2, 3));
        let r = v.round_out(10);
        assert!(r.contains_iv(&v));
        let r2 = v.round_out(20);
        assert!(r.contains_iv(&r2));
    }

    #[test]
    fn unique_integer_extraction() {
        assert_eq!(
            Iv::new(rat(29, 10), rat(31, 10)).unique_integer(),
            Some(3.into())
        );
        assert_eq!(Iv::new(rat(29, 10), rat(41, 10)).unique_integer(), None);
    }
}
