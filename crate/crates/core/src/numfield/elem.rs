//! Field elements as coordinate vectors over the integral basis of a
//! [`super::BaseField`], with exact rational scalars.

use crate::rat::{rat_big, Rat};
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// num/den coordinates over the integral basis; den > 0 and coprime to the
/// content of num.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FieldElem {
    pub num: Vec<BigInt>,
    pub den: BigInt,
}

impl FieldElem {
    pub fn from_coords(num: Vec<BigInt>, den: BigInt) -> Self {
        let mut e = FieldElem { num, den };
        e.normalize();
        e
    }

    pub fn from_integer_coords(num: Vec<BigInt>) -> Self {
        FieldElem {
            num,
            den: BigInt::one(),
        }
    }

    pub fn zero(deg: usize) -> Self {
        FieldElem {
            num: vec![BigInt::zero(); deg],
            den: BigInt::one(),
        }
    }

    pub fn one(deg: usize) -> Self {
        let mut num = vec![BigInt::zero(); deg];
        num[0] = BigInt::one();
        FieldElem {
            num,
            den: BigInt::one(),
        }
    }

    pub fn from_rational(r: &Rat, deg: usize) -> Self {
        let mut num = vec![BigInt::zero(); deg];
        num[0] = r.numer().clone();
        FieldElem {
            num,
            den: r.denom().clone(),
        }
    }

    pub fn from_i64_coords(coords: &[i64]) -> Self {
        FieldElem {
            num: coords.iter().map(|&c| BigInt::from(c)).collect(),
            den: BigInt::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|x| x.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// Rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.num[1..].iter().all(|x| x.is_zero()) {
            Some(Rat::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for x in self.num.iter_mut() {
                *x = -x.clone();
            }
        }
        let mut g = self.den.clone();
        for x in &self.num {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
        if !g.is_one() && !g.is_zero() {
            self.den = &self.den / &g;
            for x in self.num.iter_mut() {
                *x = &*x / &g;
            }
        }
        if self.is_zero() {
            self.den = BigInt::one();
        }
    }

    pub fn add(&self, other: &FieldElem) -> FieldElem {
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| a * &other.den + b * &self.den)
            .collect();
        FieldElem::from_coords(num, &self.den * &other.den)
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| a * &other.den - b * &self.den)
            .collect();
        FieldElem::from_coords(num, &self.den * &other.den)
    }

    pub fn neg(&self) -> FieldElem {
        FieldElem {
            num: self.num.iter().map(|x| -x.clone()).collect(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &Rat) -> FieldElem {
        let num = self.num.iter().map(|x| x * c.numer()).collect();
        FieldElem::from_coords(num, &self.den * c.denom())
    }

    pub fn coords_rat(&self) -> Vec<Rat> {
        self.num
            .iter()
            .map(|x| Rat::new(x.clone(), self.den.clone()))
            .collect()
    }

    pub fn coord_rat(&self, i: usize) -> Rat {
        Rat::new(self.num[i].clone(), self.den.clone())
    }

    pub fn map_coords(&self, f: impl Fn(&BigInt) -> BigInt) -> FieldElem {
        FieldElem::from_coords(self.num.iter().map(f).collect(), self.den.clone())
    }
}

pub fn rat_coords_to_elem(coords: &[Rat]) -> FieldElem {
    let mut den = BigInt::one();
    for c in coords {
        den = den.lcm(c.denom());
    }
    let num = coords
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    FieldElem::from_coords(num, den)
}

pub fn elem_coords_to_rat(e: &FieldElem) -> Vec<Rat> {
    e.num
        .iter()
        .map(|n| rat_big(n.clone()) / rat_big(e.den.clone()))
        .collect()
}
