//! Gaussian-period construction of cyclic cubic fields: exact cyclotomic
//! arithmetic in Z[x]/(x^f - 1), reduction mod the cyclotomic polynomial,
//! period minimal polynomials, and the Galois action on periods.

use crate::primes::{factor_u64, mod_inverse};
use crate::rat::{rat_big, Rat};
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Cyclotomic polynomial Phi_f as integer coefficients (ascending degree),
/// computed by iterated exact division of x^f - 1.
pub fn cyclotomic_poly(f: u64) -> Vec<BigInt> {
    let mut result = poly_x_n_minus_1(f);
    for d in 1..f {
        if f % d == 0 {
            let phi_d = cyclotomic_poly_cached(d);
            result = poly_div_exact(&result, &phi_d);
        }
    }
    result
}

// Recursion depth is the divisor count; fine at our conductor sizes.
fn cyclotomic_poly_cached(f: u64) -> Vec<BigInt> {
    cyclotomic_poly(f)
}

fn poly_x_n_minus_1(n: u64) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    p
}

fn poly_trim(p: &mut Vec<BigInt>) {
    while p.len() > 1 && p.last().map(|x| x.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

/// Exact division of integer polynomials (the divisor must be monic here).
pub fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false), "monic divisor");
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    assert!(nd >= dd);
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for i in (dd..=nd).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            rem[i - dd + j] -= &c * dj;
        }
    }
    assert!(rem.iter().all(|x| x.is_zero()), "division not exact");
    poly_trim(&mut quot);
    quot
}

/// Remainder of `p` modulo the monic polynomial `m`.
pub fn poly_rem(p: &[BigInt], m: &[BigInt]) -> Vec<BigInt> {
    let mut rem = p.to_vec();
    let dd = m.len() - 1;
    while rem.len() > dd {
        let c = rem.last().unwrap().clone();
        let top = rem.len() - 1;
        if !c.is_zero() {
            for (j, mj) in m.iter().enumerate() {
                rem[top - dd + j] -= &c * mj;
            }
        }
        rem.pop();
    }
    while rem.len() < dd {
        rem.push(BigInt::zero());
    }
    rem
}

/// Element of Z[zeta_f] stored as a coefficient vector on 1, zeta, ...,
/// zeta^{f-1} (not reduced; reduction happens when extracting values).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycInt {
    pub f: u64,
    pub coeffs: Vec<BigInt>,
}

impl CycInt {
    pub fn zero(f: u64) -> Self {
        CycInt {
            f,
            coeffs: vec![BigInt::zero(); f as usize],
        }
    }

    /// Sum of zeta^t over the listed exponents.
    pub fn from_exponents(f: u64, exps: &[u64]) -> Self {
        let mut c = CycInt::zero(f);
        for &t in exps {
            c.coeffs[(t % f) as usize] += 1;
        }
        c
    }

    pub fn add(&self, other: &CycInt) -> CycInt {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycInt { f: self.f, coeffs }
    }

    pub fn mul(&self, other: &CycInt) -> CycInt {
        let f = self.f as usize;
        let mut coeffs = vec![BigInt::zero(); f];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[(i + j) % f] += a * b;
            }
        }
        CycInt {
            f: self.f,
            coeffs,
        }
    }

    /// Reduce modulo Phi_f; length phi(f) coefficient vector on the power
    /// basis of zeta_f.
    pub fn reduced(&self, phi: &[BigInt]) -> Vec<BigInt> {
        poly_rem(&self.coeffs, phi)
    }

    /// The rational integer this element equals, if it is one.
    pub fn rational_value(&self, phi: &[BigInt]) -> Option<BigInt> {
        let red = self.reduced(phi);
        if red[1..].iter().all(|x| x.is_zero()) {
            Some(red[0].clone())
        } else {
            None
        }
    }
}

/// An index-3 subgroup of (Z/f)^* with a primitive induced cubic character,
/// described by per-prime-power character weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodSubgroup {
    pub f: u64,
    /// (prime power q, generator of (Z/q)^*, weight in {1,2})
    pub components: Vec<(u64, u64, u8)>,
    pub members: Vec<u64>,
}

/// All admissible conductors f <= bound: odd products of distinct primes
/// ≡ 1 (mod 3), optionally times 9.
pub fn cubic_conductors(bound: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for f in 7..=bound {
        if is_cubic_conductor(f) {
            out.push(f);
        }
    }
    out
}

pub fn is_cubic_conductor(f: u64) -> bool {
    if f < 7 && f != 9 {
        return false;
    }
    let factors = factor_u64(f);
    factors.iter().all(|&(p, e)| {
        if p == 3 {
            e == 2
        } else {
            e == 1 && p % 3 == 1
        }
    })
}

/// The index-3 subgroups of (Z/f)^* whose quotient character is primitive of
/// conductor exactly f: one weight in {1, 2} per prime-power factor, first
/// factor pinned to weight 1 (complex conjugation flips all weights).
pub fn period_subgroups(f: u64) -> Vec<PeriodSubgroup> {
    let factors = factor_u64(f);
    let comps: Vec<(u64, u64)> = factors
        .iter()
        .map(|&(p, e)| {
            let q = p.pow(e);
            (q, primitive_root(q))
        })
        .collect();
    let k = comps.len();
    let mut out = Vec::new();
    // weight vectors (w_0 = 1 pinned)
    for mask in 0..(1usize << (k - 1)) {
        let mut weights = vec![1u8; k];
        for (i, w) in weights.iter_mut().enumerate().skip(1) {
            if mask >> (i - 1) & 1 == 1 {
                *w = 2;
            }
        }
        let components: Vec<(u64, u64, u8)> = comps
            .iter()
            .zip(&weights)
            .map(|(&(q, g), &w)| (q, g, w))
            .collect();
        let members = subgroup_members(f, &components);
        debug_assert_eq!(members.len() as u64 * 3, crate::primes::euler_phi(f));
        out.push(PeriodSubgroup {
            f,
            components,
            members,
        });
    }
    out
}

fn primitive_root(q: u64) -> u64 {
    let phi = crate::primes::euler_phi(q);
    let factors = factor_u64(phi);
    'next: for g in 2..q {
        if crate::primes::gcd_u64(g, q) != 1 {
            continue;
        }
        for &(p, _) in &factors {
            if crate::primes::mod_pow(g, phi / p, q) == 1 {
                continue 'next;
            }
        }
        return g;
    }
    unreachable!("no primitive root found for {q}")
}

fn subgroup_members(f: u64, components: &[(u64, u64, u8)]) -> Vec<u64> {
    // discrete-log tables per component
    let tables: Vec<(u64, Vec<u64>)> = components
        .iter()
        .map(|&(q, g, _)| {
            let phi = crate::primes::euler_phi(q);
            let mut table = vec![u64::MAX; q as usize];
            let mut x = 1u64;
            for e in 0..phi {
                table[x as usize] = e;
                x = crate::primes::mulmod(x, g, q);
            }
            (q, table)
        })
        .collect();
    let mut members = Vec::new();
    'outer: for x in 1..f {
        if crate::primes::gcd_u64(x, f) != 1 {
            continue;
        }
        let mut chi_exp = 0u64;
        for ((q, table), &(_, _, w)) in tables.iter().zip(components) {
            let phi = crate::primes::euler_phi(*q);
            debug_assert_eq!(phi % 3, 0);
            let e = table[(x % q) as usize];
            if e == u64::MAX {
                continue 'outer;
            }
            // order-3 quotient of the cyclic component: g^e maps to e mod 3
            chi_exp = (chi_exp + (w as u64) * (e % 3)) % 3;
        }
        if chi_exp == 0 {
            members.push(x);
        }
    }
    members
}

/// Everything the field constructor needs about one cyclic cubic field.
#[derive(Clone, Debug)]
pub struct PeriodField {
    pub f: u64,
    pub subgroup: PeriodSubgroup,
    /// min poly x^3 + a2 x^2 + a1 x + a0 of the Gaussian period (monic).
    pub min_poly: Vec<BigInt>,
    /// sigma(eta) = s0 + s1 eta + s2 eta^2 (rational coefficients).
    pub sigma_on_eta: Vec<Rat>,
}

/// Build the period field data for one subgroup: exact symmetric functions
/// of the three periods and the Galois action written in the power basis.
pub fn build_period_field(sub: &PeriodSubgroup) -> PeriodField {
    let f = sub.f;
    let phi_f = cyclotomic_poly(f);
    // coset representatives: 1, c, c^2 where c is any unit not in the subgroup
    let member_set: alloc::collections::BTreeSet<u64> = sub.members.iter().copied().collect();
    let c = (2..f)
        .find(|x| crate::primes::gcd_u64(*x, f) == 1 && !member_set.contains(x))
        .expect("index-3 subgroup has a nonmember unit");
    let cosets: [Vec<u64>; 3] = [
        sub.members.clone(),
        sub.members
            .iter()
            .map(|&t| crate::primes::mulmod(c, t, f))
            .collect(),
        sub.members
            .iter()
            .map(|&t| crate::primes::mulmod(crate::primes::mulmod(c, c, f), t, f))
            .collect(),
    ];
    let etas: Vec<CycInt> = cosets
        .iter()
        .map(|ts| CycInt::from_exponents(f, ts))
        .collect();
    let e01 = etas[0].mul(&etas[1]);
    let e02 = etas[0].mul(&etas[2]);
    let e12 = etas[1].mul(&etas[2]);
    let s1 = etas[0]
        .add(&etas[1])
        .add(&etas[2])
        .rational_value(&phi_f)
        .expect("trace of period is rational");
    let s2 = e01
        .add(&e02)
        .add(&e12)
        .rational_value(&phi_f)
        .expect("second symmetric function is rational");
    let s3 = e01
        .mul(&etas[2])
        .rational_value(&phi_f)
        .expect("norm of period is rational");
    // (x - e0)(x - e1)(x - e2) = x^3 - s1 x^2 + s2 x - s3
    let min_poly = vec![-s3.clone(), s2.clone(), -s1.clone(), BigInt::one()];
    // express eta_1 = sigma(eta_0) in the power basis of eta_0
    let eta_sq = etas[0].mul(&etas[0]);
    let one = {
        let mut c = CycInt::zero(f);
        c.coeffs[0] = BigInt::one();
        c
    };
    let cols = [
        one.reduced(&phi_f),
        etas[0].reduced(&phi_f),
        eta_sq.reduced(&phi_f),
    ];
    let target = etas[1].reduced(&phi_f);
    let sigma_on_eta = solve_three_unknowns(&cols, &target);
    PeriodField {
        f,
        subgroup: sub.clone(),
        min_poly,
        sigma_on_eta,
    }
}

/// Solve c0 v0 + c1 v1 + c2 v2 = target exactly (overdetermined, consistent).
fn solve_three_unknowns(cols: &[Vec<BigInt>; 3], target: &[BigInt]) -> Vec<Rat> {
    let dim = target.len();
    // pick three row indices with a nonsingular 3x3 minor
    for i in 0..dim {
        for j in (i + 1)..dim {
            for k in (j + 1)..dim {
                let a: Vec<Vec<Rat>> = (0..3)
                    .map(|col| {
                        vec![
                            rat_big(cols[col][i].clone()),
                            rat_big(cols[col][j].clone()),
                            rat_big(cols[col][k].clone()),
                        ]
                    })
                    .collect();
                let b = vec![
                    rat_big(target[i].clone()),
                    rat_big(target[j].clone()),
                    rat_big(target[k].clone()),
                ];
                if let Some(sol) = super::linalg::solve_rat(&a, &b) {
                    // verify on every coordinate
                    let ok = (0..dim).all(|r| {
                        let lhs: Rat = (0..3)
                            .map(|c| sol[c].clone() * rat_big(cols[c][r].clone()))
                            .sum();
                        lhs == rat_big(target[r].clone())
                    });
                    if ok {
                        return sol;
                    }
                }
            }
        }
    }
    panic!("period conjugate not expressible in the power basis");
}

/// mu(f): the trace of the full set of primitive roots of unity.
pub fn moebius_u64(f: u64) -> i64 {
    let factors = factor_u64(f);
    if factors.iter().any(|&(_, e)| e > 1) {
        0
    } else if factors.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Splitting behaviour of an unramified rational prime in the field cut out
/// by the subgroup: completely split iff p mod f lands in the subgroup.
pub fn splits_completely(sub: &PeriodSubgroup, p: u64) -> bool {
    let r = p % sub.f;
    sub.members.binary_search(&r).is_ok()
}

pub fn mod_inverse_i64(a: i64, m: i64) -> Option<i64> {
    mod_inverse(a, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), alloc::vec![-BigInt::one(), BigInt::one()]);
        // Phi_7 = 1 + x + ... + x^6
        assert_eq!(cyclotomic_poly(7), vec![BigInt::one(); 7]);
        // Phi_9 = x^6 + x^3 + 1
        let p9 = cyclotomic_poly(9);
        let want: Vec<i64> = alloc::vec![1, 0, 0, 1, 0, 0, 1];
        assert_eq!(p9, want.into_iter().map(BigInt::from).collect::<Vec<_>>());
        // degree phi(63) = 36
        assert_eq!(cyclotomic_poly(63).len(), 37);
    }

    #[test]
    fn conductors_to_100() {
        assert_eq!(
            cubic_conductors(100),
            alloc::vec![7, 9, 13, 19, 31, 37, 43, 61, 63, 67, 73, 79, 91, 97]
        );
        assert!(!is_cubic_conductor(21)); // 3 || 21
        assert!(!is_cubic_conductor(49));
        assert!(is_cubic_conductor(9 * 7));
    }

    #[test]
    fn period_poly_f7() {
        let subs = period_subgroups(7);
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].members, alloc::vec![1, 6]);
        let pf = build_period_field(&subs[0]);
        // x^3 + x^2 - 2x - 1
        let want: Vec<i64> = alloc::vec![-1, -2, 1, 1];
        assert_eq!(
            pf.min_poly,
            want.into_iter().map(BigInt::from).collect::<Vec<_>>()
        );
    }

    #[test]
    fn period_poly_f9() {
        let subs = period_subgroups(9);
        assert_eq!(subs.len(), 1);
        let pf = build_period_field(&subs[0]);
        // eta = zeta_9 + zeta_9^-1: x^3 - 3x + 1
        let want: Vec<i64> = alloc::vec![1, -3, 0, 1];
        assert_eq!(
            pf.min_poly,
            want.into_iter().map(BigInt::from).collect::<Vec<_>>()
        );
    }

    #[test]
    fn two_fields_for_conductor_91() {
        let subs = period_subgroups(91);
        assert_eq!(subs.len(), 2);
        assert_ne!(subs[0].members, subs[1].members);
        for s in &subs {
            assert_eq!(s.members.len(), 72 / 3);
            let pf = build_period_field(s);
            assert_eq!(pf.min_poly.len(), 4);
        }
    }

    #[test]
    fn sigma_is_an_automorphism() {
        for f in [7u64, 9, 13, 91] {
            for sub in period_subgroups(f) {
                let pf = build_period_field(&sub);
                let s = &pf.sigma_on_eta;
                let mp: Vec<Rat> = pf.min_poly.iter().map(|c| rat_big(c.clone())).collect();
                // multiplication in Q[eta]/(min_poly)
                let mul = |a: &[Rat], b: &[Rat]| -> Vec<Rat> {
                    let mut raw = vec![Rat::zero(); 5];
                    for (i, x) in a.iter().enumerate() {
                        for (j, y) in b.iter().enumerate() {
                            let t = x.clone() * y.clone();
                            raw[i + j] += t;
                        }
                    }
                    for top in (3..=4).rev() {
                        let c = raw[top].clone();
                        if c.is_zero() {
                            continue;
                        }
                        raw[top] = Rat::zero();
                        for k in 0..3 {
                            let t = c.clone() * mp[k].clone();
                            raw[top - 3 + k] -= t;
                        }
                    }
                    raw.truncate(3);
                    raw
                };
                let s2 = mul(s, s);
                // check = s^3 + a2 s^2 + a1 s + a0 must vanish
                let mut check = mul(&s2, s);
                let a2 = rat_big(pf.min_poly[2].clone());
                let a1 = rat_big(pf.min_poly[1].clone());
                for k in 0..3 {
                    check[k] += a2.clone() * s2[k].clone() + a1.clone() * s[k].clone();
                }
                check[0] += rat_big(pf.min_poly[0].clone());
                assert!(
                    check.iter().all(|x| x.is_zero()),
                    "sigma(eta) not a conjugate for f = {f}"
                );
                // sigma must move eta (order 3, not the identity)
                assert!(s != &vec![Rat::zero(), Rat::one(), Rat::zero()]);
            }
        }
    }
}
