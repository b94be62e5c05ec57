//! Galois labels for quadratic extensions of the base fields: the closure of
//! L = K(sqrt beta) over Q is decided by exact Kummer-theoretic criteria and
//! cross-checked by a Chebotarev fingerprint over splitting data.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::groups;
use crate::numfield::elem::FieldElem;
use crate::numfield::ideal::split_prime;
use crate::numfield::sqrtest::{is_square, residue_symbol_at};
use crate::numfield::{BaseField, FieldKind};
use crate::primes::{is_prime_u64, mod_pow};
use crate::rat::{rat_int, rat_perfect_sqrt, Rat};

/// Closure type of K(sqrt beta)/Q for the supported base degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Label {
    D4,
    C4,
    V4,
    C2wrC3,
    A4deg6,
    C6,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::D4 => "D4",
            Label::C4 => "C4",
            Label::V4 => "V4",
            Label::C2wrC3 => "C2wrC3",
            Label::A4deg6 => "A4(6)",
            Label::C6 => "C6",
        }
    }

    /// The wreath target label for the given base-field kind.
    pub fn wreath_target(kind: FieldKind) -> Label {
        match kind {
            FieldKind::Quadratic => Label::D4,
            FieldKind::CyclicCubic => Label::C2wrC3,
        }
    }

    pub fn is_target(self, kind: FieldKind) -> bool {
        self == Label::wreath_target(kind)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaloisError {
    BetaIsSquare,
    Inconclusive(String),
}

impl fmt::Display for GaloisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaloisError::BetaIsSquare => write!(f, "not a quadratic extension"),
            GaloisError::Inconclusive(s) => write!(f, "fingerprint inconclusive: {s}"),
        }
    }
}

/// Quartic classification over a quadratic base: with N = Nm(beta) in Q,
/// the closure is V4 when N is a rational square, C4 when d*N is, else D4.
pub fn classify_quartic(field: &BaseField, beta: &FieldElem) -> Result<Label, GaloisError> {
    assert_eq!(field.kind, FieldKind::Quadratic);
    if crate::numfield::sqrtest::sqrt_in_field(field, beta).is_some() {
        return Err(GaloisError::BetaIsSquare);
    }
    let n = field.norm(beta);
    if rat_perfect_sqrt(&n).is_some() {
        return Ok(Label::V4);
    }
    if rat_perfect_sqrt(&(n * rat_int(field.disc))).is_some() {
        return Ok(Label::C4);
    }
    Ok(Label::D4)
}

/// F2-rank of {beta, sigma beta, sigma^2 beta} modulo squares.
pub fn kummer_rank_sextic(field: &BaseField, beta: &FieldElem) -> Result<u32, GaloisError> {
    assert_eq!(field.kind, FieldKind::CyclicCubic);
    let b0 = beta.clone();
    let b1 = field.apply_sigma(&b0);
    let b2 = field.apply_sigma(&b1);
    if is_square(field, &b0) {
        return Err(GaloisError::BetaIsSquare);
    }
    let mut square_count = 0u32;
    for mask in 1u8..8 {
        let mut prod = field.one();
        if mask & 1 != 0 {
            prod = field.mul(&prod, &b0);
        }
        if mask & 2 != 0 {
            prod = field.mul(&prod, &b1);
        }
        if mask & 4 != 0 {
            prod = field.mul(&prod, &b2);
        }
        if is_square(field, &prod) {
            square_count += 1;
        }
    }
    // the square products form a subgroup of size 2^(3 - s)
    let s = match square_count + 1 {
        1 => 3,
        2 => 2,
        4 => 1,
        8 => 0,
        other => panic!("square products do not form a subgroup: {other}"),
    };
    Ok(s)
}

/// Sextic classification over a cyclic cubic base via the Kummer rank.
pub fn classify_sextic(field: &BaseField, beta: &FieldElem) -> Result<Label, GaloisError> {
    match kummer_rank_sextic(field, beta)? {
        3 => Ok(Label::C2wrC3),
        2 => Ok(Label::A4deg6),
        1 => Ok(Label::C6),
        s => panic!("impossible Kummer rank {s}"),
    }
}

pub fn classify(field: &BaseField, beta: &FieldElem) -> Result<Label, GaloisError> {
    match field.kind {
        FieldKind::Quadratic => classify_quartic(field, beta),
        FieldKind::CyclicCubic => classify_sextic(field, beta),
    }
}

/// Candidate permutation groups and their cycle-type laws per base kind.
fn catalogue(kind: FieldKind) -> Vec<(Label, BTreeMap<Vec<u8>, usize>, usize)> {
    let groups: Vec<(Label, groups::PermGroup)> = match kind {
        FieldKind::Quadratic => vec![
            (Label::D4, groups::d4_deg4()),
            (Label::C4, groups::cyclic(4)),
            (Label::V4, groups::v4_deg4()),
        ],
        FieldKind::CyclicCubic => vec![
            (Label::C2wrC3, groups::c2_wr_c3()),
            (Label::A4deg6, groups::a4_degree6()),
            (Label::C6, groups::cyclic(6)),
        ],
    };
    groups
        .into_iter()
        .map(|(l, g)| (l, g.cycle_type_distribution(), g.order()))
        .collect()
}

/// Chebotarev fingerprint: factorization patterns of split primes against
/// the catalogue's cycle-type distributions, decided at posterior odds 10^6.
pub fn fingerprint_oracle(
    field: &BaseField,
    beta: &FieldElem,
    prime_count: usize,
) -> Result<Label, GaloisError> {
    assert!(prime_count >= 50);
    let cat = catalogue(field.kind);
    let mut observed: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    let mut used = 0usize;
    let mut p = 2u64;
    let budget = prime_count * 10;
    let mut scanned = 0usize;
    let nm_beta = field.norm(beta);
    while used < budget {
        p += 1;
        scanned += 1;
        if scanned > 1_000_000 {
            break;
        }
        if !is_prime_u64(p) || p == 2 {
            continue;
        }
        if field.disc % (p as i64) == 0 {
            continue;
        }
        if (nm_beta.numer().magnitude() % p).is_zero()
            || (nm_beta.denom().magnitude() % p).is_zero()
            || (beta.den.magnitude() % p).is_zero()
        {
            continue;
        }
        let Some(ty) = frobenius_type(field, beta, p) else {
            continue;
        };
        *observed.entry(ty).or_insert(0) += 1;
        used += 1;
        // decision check every 25 samples once past the requested floor
        if used >= prime_count && used % 25 == 0 {
            if let Some(winner) = decide(&cat, &observed) {
                return Ok(winner);
            }
        }
    }
    match decide(&cat, &observed) {
        Some(winner) => Ok(winner),
        None => Err(GaloisError::Inconclusive(alloc::format!(
            "no label at odds 1e6 after {used} primes"
        ))),
    }
}

fn decide(
    cat: &[(Label, BTreeMap<Vec<u8>, usize>, usize)],
    observed: &BTreeMap<Vec<u8>, usize>,
) -> Option<Label> {
    // likelihood of the observations under each group, as exact rationals
    let mut alive: Vec<(Label, Rat)> = Vec::new();
    'cand: for (label, dist, order) in cat {
        let mut ll = Rat::from_integer(BigInt::from(1));
        for (ty, &n) in observed {
            let freq = dist.get(ty).copied().unwrap_or(0);
            if freq == 0 {
                continue 'cand; // impossible type: rejected outright
            }
            let f = Rat::new(BigInt::from(freq), BigInt::from(*order));
            ll *= crate::rat::pow_i(&f, n as i64);
        }
        alive.push((*label, ll));
    }
    if alive.len() == 1 {
        return Some(alive[0].0);
    }
    let threshold = rat_int(1_000_000);
    let mut best: Option<(Label, Rat)> = None;
    let mut second: Option<Rat> = None;
    for (l, ll) in alive {
        match &best {
            None => best = Some((l, ll)),
            Some((_, b)) if ll > *b => {
                second = Some(b.clone());
                best = Some((l, ll));
            }
            Some(_) => match &second {
                None => second = Some(ll),
                Some(s) if ll > *s => second = Some(ll),
                _ => {}
            },
        }
    }
    let (label, best_ll) = best?;
    match second {
        None => Some(label),
        Some(s) => {
            if s.is_zero() || best_ll >= threshold.clone() * s {
                Some(label)
            } else {
                None
            }
        }
    }
}

/// Cycle type of Frobenius at p acting on the 2n points of K(sqrt beta),
/// assembled from the splitting of p in K and residue symbols of beta.
pub fn frobenius_type(field: &BaseField, beta: &FieldElem, p: u64) -> Option<Vec<u8>> {
    let parts = split_prime(field, p);
    let mut ty: Vec<u8> = Vec::new();
    for (pr, e, f) in &parts {
        if *e > 1 {
            return None; // ramified in K: skip
        }
        let sym = if *f == 1 {
            let r = theta_residue(field, pr, p)?;
            residue_symbol_at(field, beta, p, r)?
        } else {
            inert_symbol(field, beta, p)?
        };
        match sym {
            0 => return None, // beta meets the prime
            1 => {
                ty.push(*f as u8);
                ty.push(*f as u8);
            }
            _ => ty.push(2 * *f as u8),
        }
    }
    ty.sort_unstable_by(|a, b| b.cmp(a));
    Some(ty)
}

/// The residue of theta modulo a degree-one prime, as an element of F_p.
fn theta_residue(field: &BaseField, prime: &crate::numfield::ideal::Ideal, p: u64) -> Option<u64> {
    let theta = field.elem_from_power_coords(
        &core::iter::once(Rat::zero())
            .chain(core::iter::once(Rat::from_integer(BigInt::from(1))))
            .chain(core::iter::repeat(Rat::zero()))
            .take(field.degree())
            .collect::<Vec<_>>(),
    );
    if !theta.is_integral() {
        return None;
    }
    (0..p).find(|&x| {
        let shifted = theta.sub(&FieldElem::from_rational(&rat_int(x as i64), field.degree()));
        prime.contains_elem(&shifted)
    })
}

/// Quadratic residue symbol in the residue field of an inert prime, via
/// the (q-1)/2 power in O/pO.
fn inert_symbol(field: &BaseField, beta: &FieldElem, p: u64) -> Option<i32> {
    let deg = field.degree() as u32;
    let q_minus_one_half = (mod_pow_u128(p, deg) - 1) / 2;
    let pb = BigInt::from(p);
    if (beta.den.magnitude() % p).is_zero() {
        return None;
    }
    let den_inv = crate::primes::mod_inverse(beta.den.mod_floor(&pb).to_i64()?, p as i64)? as u64;
    let coords: Vec<u64> = beta
        .num
        .iter()
        .map(|c| {
            let r = c.mod_floor(&pb).to_u64().unwrap();
            crate::primes::mulmod(r, den_inv, p)
        })
        .collect();
    if coords.iter().all(|&c| c == 0) {
        return Some(0);
    }
    // power in the ring O/pO using the field multiplication table mod p
    let mul = |a: &[u64], b: &[u64]| -> Vec<u64> {
        let x = FieldElem::from_integer_coords(a.iter().map(|&v| BigInt::from(v)).collect());
        let y = FieldElem::from_integer_coords(b.iter().map(|&v| BigInt::from(v)).collect());
        field
            .mul(&x, &y)
            .num
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect()
    };
    let one: Vec<u64> = field
        .one()
        .num
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap())
        .collect();
    let mut acc = one.clone();
    let mut base = coords;
    let mut e = q_minus_one_half;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        base = mul(&base, &base);
        e >>= 1;
    }
    if acc == one {
        Some(1)
    } else {
        let minus_one: Vec<u64> = field
            .one()
            .neg()
            .num
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect();
        if acc == minus_one {
            Some(-1)
        } else {
            None
        }
    }
}

fn mod_pow_u128(p: u64, e: u32) -> u128 {
    let mut acc = 1u128;
    for _ in 0..e {
        acc *= p as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::BaseField;
    use crate::rat::rat;

    #[test]
    fn quartic_labels_on_known_instances() {
        // K = Q(sqrt 2), beta = 3: N = 9 square, biquadratic
        let k8 = BaseField::new_quadratic(8);
        let three = FieldElem::from_i64_coords(&[3, 0]);
        assert_eq!(classify_quartic(&k8, &three).unwrap(), Label::V4);

        // K = Q(sqrt 5), beta = 5 + 2 sqrt 5 = 3 + 4 theta: N = 5, dN = 25
        let k5 = BaseField::new_quadratic(5);
        let beta = FieldElem::from_i64_coords(&[3, 4]);
        assert_eq!(k5.norm(&beta), rat(5, 1));
        assert_eq!(classify_quartic(&k5, &beta).unwrap(), Label::C4);

        // K = Q(sqrt 2), beta = 1 + sqrt 2: N = -1
        let beta = FieldElem::from_i64_coords(&[1, 1]);
        assert_eq!(classify_quartic(&k8, &beta).unwrap(), Label::D4);

        // squares are rejected
        let four = FieldElem::from_i64_coords(&[4, 0]);
        assert_eq!(
            classify_quartic(&k8, &four),
            Err(GaloisError::BetaIsSquare)
        );
    }

    #[test]
    fn sextic_labels_on_known_instances() {
        let k = BaseField::new_cyclic_cubic(7, 0);
        // rational nonsquare: all conjugates equal, rank 1
        let two = FieldElem::from_i64_coords(&[2, 0, 0]);
        assert_eq!(classify_sextic(&k, &two).unwrap(), Label::C6);

        // beta = gamma * sigma(gamma): norm-symmetric, rank 2 generically
        let gamma = FieldElem::from_i64_coords(&[1, 1, 0]);
        let beta = k.mul(&gamma, &k.apply_sigma(&gamma));
        assert_eq!(classify_sextic(&k, &beta).unwrap(), Label::A4deg6);

        // generic beta: rank 3
        let generic = FieldElem::from_i64_coords(&[3, 1, 0]);
        assert_eq!(classify_sextic(&k, &generic).unwrap(), Label::C2wrC3);
    }

    #[test]
    fn sextic_label_is_conjugation_invariant_and_square_stable() {
        let k = BaseField::new_cyclic_cubic(7, 0);
        let beta = FieldElem::from_i64_coords(&[3, 1, 0]);
        let l0 = classify_sextic(&k, &beta).unwrap();
        let l1 = classify_sextic(&k, &k.apply_sigma(&beta)).unwrap();
        assert_eq!(l0, l1);
        let gamma = FieldElem::from_i64_coords(&[2, -1, 1]);
        let scaled = k.mul(&beta, &k.mul(&gamma, &gamma));
        assert_eq!(classify_sextic(&k, &scaled).unwrap(), l0);
    }

    #[test]
    fn fingerprint_agrees_on_the_known_instances() {
        let k8 = BaseField::new_quadratic(8);
        let three = FieldElem::from_i64_coords(&[3, 0]);
        assert_eq!(fingerprint_oracle(&k8, &three, 50).unwrap(), Label::V4);
        let d4beta = FieldElem::from_i64_coords(&[1, 1]);
        assert_eq!(fingerprint_oracle(&k8, &d4beta, 50).unwrap(), Label::D4);

        let k5 = BaseField::new_quadratic(5);
        let c4beta = FieldElem::from_i64_coords(&[3, 4]);
        assert_eq!(fingerprint_oracle(&k5, &c4beta, 50).unwrap(), Label::C4);

        let k7 = BaseField::new_cyclic_cubic(7, 0);
        let generic = FieldElem::from_i64_coords(&[3, 1, 0]);
        assert_eq!(fingerprint_oracle(&k7, &generic, 50).unwrap(), Label::C2wrC3);
        let two = FieldElem::from_i64_coords(&[2, 0, 0]);
        assert_eq!(fingerprint_oracle(&k7, &two, 50).unwrap(), Label::C6);
        let gamma = FieldElem::from_i64_coords(&[1, 1, 0]);
        let a4beta = k7.mul(&gamma, &k7.apply_sigma(&gamma));
        assert_eq!(fingerprint_oracle(&k7, &a4beta, 50).unwrap(), Label::A4deg6);
    }
}
