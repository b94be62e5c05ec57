//! Integral ideals in Hermite normal form over the integral basis, with
//! multiplication, exact division, conjugation, and prime splitting.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::elem::FieldElem;
use super::linalg::{self, IMat};
use super::{BaseField, FieldKind};
use crate::primes::{kronecker, mod_inverse, mulmod, sqrt_mod_p};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Ideal {
    /// Upper-triangular row basis over the integral basis.
    pub hnf: IMat,
    pub norm: BigInt,
}

impl Ideal {
    pub fn from_rows(field: &BaseField, rows: &IMat) -> Self {
        let h = linalg::hnf_rows(rows, field.degree());
        let norm = linalg::hnf_det(&h);
        Ideal { hnf: h, norm }
    }

    pub fn unit(field: &BaseField) -> Self {
        Ideal {
            hnf: linalg::imat_identity(field.degree()),
            norm: BigInt::one(),
        }
    }

    pub fn from_integer(field: &BaseField, n: &BigInt) -> Self {
        let rows = linalg::imat_scale(&linalg::imat_identity(field.degree()), &n.abs());
        Ideal::from_rows(field, &rows)
    }

    /// Principal ideal of an integral element.
    pub fn from_element(field: &BaseField, x: &FieldElem) -> Self {
        assert!(x.is_integral(), "principal ideal of a non-integral element");
        assert!(!x.is_zero());
        Ideal::from_rows(field, &field.mult_matrix_num(x))
    }

    pub fn from_generators(field: &BaseField, gens: &[FieldElem]) -> Self {
        let mut rows: IMat = Vec::new();
        for g in gens {
            assert!(g.is_integral());
            rows.extend(field.mult_matrix_num(g));
        }
        Ideal::from_rows(field, &rows)
    }

    pub fn is_unit(&self) -> bool {
        self.norm.is_one()
    }

    pub fn norm_u64(&self) -> u64 {
        self.norm.to_u64().expect("ideal norm fits u64")
    }

    pub fn mul(&self, field: &BaseField, other: &Ideal) -> Ideal {
        let deg = field.degree();
        let mut rows: IMat = Vec::with_capacity(deg * deg);
        for r in &self.hnf {
            let re = FieldElem::from_integer_coords(r.clone());
            for s in &other.hnf {
                let se = FieldElem::from_integer_coords(s.clone());
                let prod = field.mul(&re, &se);
                assert!(prod.den.is_one());
                rows.push(prod.num);
            }
        }
        Ideal::from_rows(field, &rows)
    }

    pub fn pow(&self, field: &BaseField, mut k: u64) -> Ideal {
        let mut acc = Ideal::unit(field);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(field, &base);
            }
            base = base.mul(field, &base);
            k >>= 1;
        }
        acc
    }

    /// gcd lattice (sum of ideals).
    pub fn sum(&self, field: &BaseField, other: &Ideal) -> Ideal {
        let mut rows = self.hnf.clone();
        rows.extend(other.hnf.clone());
        Ideal::from_rows(field, &rows)
    }

    pub fn is_coprime(&self, field: &BaseField, other: &Ideal) -> bool {
        self.sum(field, other).is_unit()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        linalg::hnf_contains(&self.hnf, v)
    }

    pub fn contains_elem(&self, x: &FieldElem) -> bool {
        x.is_integral() && self.contains(&x.num)
    }

    /// self | other, i.e. other ⊆ self.
    pub fn divides(&self, other: &Ideal) -> bool {
        other.hnf.iter().all(|r| self.contains(r))
    }

    pub fn apply_sigma(&self, field: &BaseField) -> Ideal {
        let rows: IMat = self
            .hnf
            .iter()
            .map(|r| {
                field
                    .apply_sigma(&FieldElem::from_integer_coords(r.clone()))
                    .num
            })
            .collect();
        Ideal::from_rows(field, &rows)
    }

    /// Product of the nontrivial conjugates.
    pub fn conjugate_product(&self, field: &BaseField) -> Ideal {
        let mut acc = Ideal::unit(field);
        let mut cur = self.clone();
        for _ in 1..field.degree() {
            cur = cur.apply_sigma(field);
            acc = acc.mul(field, &cur);
        }
        acc
    }

    /// Exact quotient self / other (other must divide self).
    pub fn div_exact(&self, field: &BaseField, other: &Ideal) -> Ideal {
        assert!(other.divides(self), "inexact ideal division");
        let conj = other.conjugate_product(field);
        let prod = self.mul(field, &conj);
        let n = &other.norm;
        let rows: IMat = prod
            .hnf
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        let (q, rem) = x.div_rem(n);
                        assert!(rem.is_zero(), "quotient lattice not integral");
                        q
                    })
                    .collect()
            })
            .collect();
        Ideal::from_rows(field, &rows)
    }

    /// Coset representatives of O/ideal: all integer combinations below the
    /// HNF diagonal.
    pub fn residues(&self, field: &BaseField) -> Vec<FieldElem> {
        let deg = field.degree();
        let diag: Vec<u64> = (0..deg)
            .map(|i| self.hnf[i][i].to_u64().expect("residue count fits"))
            .collect();
        let total: u64 = diag.iter().product();
        assert!(total <= 1 << 20, "residue enumeration too large");
        let mut out = Vec::with_capacity(total as usize);
        let mut counter = vec![0u64; deg];
        loop {
            out.push(FieldElem::from_integer_coords(
                counter.iter().map(|&c| BigInt::from(c)).collect(),
            ));
            let mut i = 0;
            loop {
                if i == deg {
                    return out;
                }
                counter[i] += 1;
                if counter[i] < diag[i] {
                    break;
                }
                counter[i] = 0;
                i += 1;
            }
        }
    }

    /// v reduced modulo the ideal lattice.
    pub fn reduce_coords(&self, v: &[BigInt]) -> Vec<BigInt> {
        linalg::hnf_reduce(&self.hnf, v)
    }
}

/// Splitting data of a rational prime: (prime ideal, e, f) triples with
/// sum of e*f equal to the degree.
pub fn split_prime(field: &BaseField, p: u64) -> Vec<(Ideal, u32, u32)> {
    let out = match field.kind {
        FieldKind::Quadratic => split_prime_quadratic(field, p),
        FieldKind::CyclicCubic => split_prime_cubic(field, p),
    };
    debug_assert_eq!(
        out.iter().map(|&(_, e, f)| (e * f) as usize).sum::<usize>(),
        field.degree()
    );
    debug_assert!({
        let mut prod = Ideal::unit(field);
        for (ideal, e, _) in &out {
            prod = prod.mul(field, &ideal.pow(field, *e as u64));
        }
        prod == Ideal::from_integer(field, &BigInt::from(p))
    });
    out
}

fn theta_minus(field: &BaseField, r: u64) -> FieldElem {
    use crate::rat::{rat_int, Rat};
    let mut p = vec![Rat::zero(); field.degree()];
    p[0] = rat_int(-(r as i64));
    p[1] = Rat::one();
    field.elem_from_power_coords(&p)
}

fn prime_from_gen(field: &BaseField, p: u64, gen: &FieldElem) -> Ideal {
    let mut rows = linalg::imat_scale(&linalg::imat_identity(field.degree()), &BigInt::from(p));
    rows.extend(field.mult_matrix_num(gen));
    Ideal::from_rows(field, &rows)
}

fn split_prime_quadratic(field: &BaseField, p: u64) -> Vec<(Ideal, u32, u32)> {
    let d = field.disc;
    let chi = kronecker(d, p);
    if chi == -1 {
        return vec![(Ideal::from_integer(field, &BigInt::from(p)), 1, 2)];
    }
    if chi == 1 {
        let (r1, r2) = if d.rem_euclid(4) == 1 {
            if p == 2 {
                (0u64, 1u64)
            } else {
                let s = sqrt_mod_p((d.rem_euclid(p as i64)) as u64, p).expect("split prime");
                let inv2 = mod_inverse(2, p as i64).unwrap() as u64;
                let r1 = mulmod((1 + s) % p, inv2, p);
                let r2 = mulmod((1 + p - s) % p, inv2, p);
                (r1, r2)
            }
        } else {
            let m = d / 4;
            let s = sqrt_mod_p(m.rem_euclid(p as i64) as u64, p).expect("split prime");
            (s, p - s)
        };
        assert_ne!(r1, r2);
        let p1 = prime_from_gen(field, p, &theta_minus(field, r1));
        let p2 = prime_from_gen(field, p, &theta_minus(field, r2));
        assert_eq!(p1.norm, BigInt::from(p));
        assert_eq!(p2.norm, BigInt::from(p));
        return vec![(p1, 1, 1), (p2, 1, 1)];
    }
    // ramified
    let gen = if p == 2 {
        let m = d / 4; // d ≡ 0 mod 4 whenever 2 ramifies
        if m.rem_euclid(2) == 0 {
            theta_minus(field, 0)
        } else {
            theta_minus(field, 1)
        }
    } else if d.rem_euclid(4) == 1 {
        // double root of x^2 - x + (1-d)/4
        let inv2 = mod_inverse(2, p as i64).unwrap() as u64;
        theta_minus(field, inv2)
    } else {
        theta_minus(field, 0) // double root of x^2 - m at 0 since p | m
    };
    let pr = prime_from_gen(field, p, &gen);
    assert_eq!(pr.norm, BigInt::from(p));
    vec![(pr, 2, 1)]
}

fn split_prime_cubic(field: &BaseField, p: u64) -> Vec<(Ideal, u32, u32)> {
    let f = field.conductor;
    if f % p == 0 {
        // conductor primes are totally ramified: radical of pO
        let radical = radical_ideal(field, p);
        assert_eq!(radical.norm, BigInt::from(p));
        return vec![(radical, 3, 1)];
    }
    let sub = field
        .period_subgroup()
        .expect("cubic field carries period data");
    if !super::cyclotomic::splits_completely(sub, p) {
        return vec![(Ideal::from_integer(field, &BigInt::from(p)), 1, 3)];
    }
    let pb = BigInt::from(p);
    let disc_poly = poly_disc_cubic(&field.min_poly);
    let fb = BigInt::from(f);
    let index_sq = &disc_poly / (&fb * &fb);
    let p_divides_index = (index_sq % &pb).is_zero();
    if !p_divides_index {
        let roots = roots_of_monic_cubic_mod_p(&field.min_poly, p);
        assert_eq!(roots.len(), 3, "split prime must have three roots");
        return roots
            .into_iter()
            .map(|r| {
                let pr = prime_from_gen(field, p, &theta_minus(field, r));
                assert_eq!(pr.norm, BigInt::from(p));
                (pr, 1, 1)
            })
            .collect();
    }
    split_via_idempotents(field, p)
}

fn poly_disc_cubic(m: &[BigInt]) -> BigInt {
    // monic x^3 + a x^2 + b x + c
    let a = &m[2];
    let b = &m[1];
    let c = &m[0];
    let (a2, b2) = (a * a, b * b);
    BigInt::from(18) * a * b * c - BigInt::from(4) * &a2 * a * c + &a2 * &b2
        - BigInt::from(4) * &b2 * b
        - BigInt::from(27) * c * c
}

/// Radical of pO via the kernel of the iterated Frobenius on O/pO.
fn radical_ideal(field: &BaseField, p: u64) -> Ideal {
    let deg = field.degree();
    let pb = BigInt::from(p);
    let frob: Vec<Vec<u64>> = (0..deg)
        .map(|i| {
            let basis = field.basis_elem(i);
            let powered = field.pow(&basis, p);
            powered
                .num
                .iter()
                .map(|x| x.mod_floor(&pb).to_u64().unwrap())
                .collect()
        })
        .collect();
    let mut pm = p;
    let mut fr_pow = frob.clone();
    while pm < deg as u64 {
        fr_pow = super::mat_mul_mod(&fr_pow, &frob, p);
        pm *= p;
    }
    let kernel = super::row_kernel_mod_p(&fr_pow, p);
    let mut rows = linalg::imat_scale(&linalg::imat_identity(deg), &pb);
    for k in kernel {
        rows.push(k.iter().map(|&x| BigInt::from(x)).collect());
    }
    Ideal::from_rows(field, &rows)
}

/// Roots of a monic cubic mod p (all roots, distinct expected at callers).
/// Small p by scan, larger p by deterministic quadratic-residue gcd splits.
pub(super) fn roots_of_monic_cubic_mod_p(m: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let coeffs: Vec<u64> = (0..3)
        .map(|i| m[i].mod_floor(&pb).to_u64().unwrap())
        .collect();
    let eval = |x: u64| -> u64 {
        let x2 = mulmod(x, x, p);
        let x3 = mulmod(x2, x, p);
        (x3 + mulmod(coeffs[2], x2, p) + mulmod(coeffs[1], x, p) + coeffs[0]) % p
    };
    if p < 2048 {
        return (0..p).filter(|&x| eval(x) == 0).collect();
    }
    let mut first_root: Option<u64> = None;
    for t in 0..128u64 {
        let g = poly_gcd_mod_p(
            &poly_powmod_shifted(t, (p - 1) / 2, &coeffs, p),
            &[coeffs[0], coeffs[1], coeffs[2], 1],
            p,
        );
        match g.len() {
            2 => {
                first_root = Some((p - g[0]) % p);
                break;
            }
            3 => {
                if let Some((r1, _)) = solve_quadratic_mod_p(g[1], g[0], p) {
                    first_root = Some(r1);
                    break;
                }
            }
            _ => continue,
        }
    }
    let r0 = first_root.expect("cubic root search exhausted");
    debug_assert_eq!(eval(r0), 0);
    // deflate by (x - r0): x^2 + c1 x + c0
    let c1 = (coeffs[2] + r0) % p;
    let c0 = (coeffs[1] + mulmod(c1, r0, p)) % p;
    let mut all = vec![r0];
    if let Some((r1, r2)) = solve_quadratic_mod_p(c1, c0, p) {
        all.push(r1);
        all.push(r2);
    }
    all.sort_unstable();
    all.dedup();
    all
}

fn solve_quadratic_mod_p(b: u64, c: u64, p: u64) -> Option<(u64, u64)> {
    // x^2 + b x + c: discriminant b^2 - 4c
    let disc = (mulmod(b, b, p) + p - mulmod(4 % p, c, p)) % p;
    let s = sqrt_mod_p(disc, p)?;
    let inv2 = mod_inverse(2, p as i64).unwrap() as u64;
    let r1 = mulmod((p - b + s) % p, inv2, p);
    let r2 = mulmod((2 * p - b + p - s) % p, inv2, p);
    Some((r1, r2))
}

/// (x + t)^e - 1 mod (m(x), p) for monic cubic m; ascending coefficients.
fn poly_powmod_shifted(t: u64, e: u64, m_coeffs: &[u64], p: u64) -> Vec<u64> {
    let mulp = |a: &[u64], b: &[u64]| -> Vec<u64> {
        let mut raw = [0u64; 5];
        for i in 0..3 {
            for j in 0..3 {
                raw[i + j] = (raw[i + j] + mulmod(a[i], b[j], p)) % p;
            }
        }
        for top in (3..5).rev() {
            let c = raw[top];
            if c != 0 {
                raw[top] = 0;
                for k in 0..3 {
                    raw[top - 3 + k] = (raw[top - 3 + k] + p - mulmod(c, m_coeffs[k], p)) % p;
                }
            }
        }
        raw[..3].to_vec()
    };
    let mut acc = vec![1u64, 0, 0];
    let mut base = vec![t % p, 1, 0];
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulp(&acc, &base);
        }
        base = mulp(&base, &base);
        e >>= 1;
    }
    acc[0] = (acc[0] + p - 1) % p;
    acc
}

/// Monic gcd mod p; inputs as ascending coefficient vectors.
fn poly_gcd_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let trim = |v: &mut Vec<u64>| {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
    };
    let mut r0: Vec<u64> = b.to_vec();
    let mut r1: Vec<u64> = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    while !(r1.len() == 1 && r1[0] == 0) {
        let mut rem = r0.clone();
        let d1 = r1.len() - 1;
        let lead_inv = mod_inverse(*r1.last().unwrap() as i64, p as i64).unwrap() as u64;
        while rem.len() > d1 || (rem.len() == r1.len() && !(rem.len() == 1 && rem[0] == 0)) {
            trim(&mut rem);
            if rem.len() < r1.len() || (rem.len() == 1 && rem[0] == 0) {
                break;
            }
            let dr = rem.len() - 1;
            let c = mulmod(*rem.last().unwrap(), lead_inv, p);
            if c != 0 {
                for i in 0..=d1 {
                    let idx = dr - d1 + i;
                    rem[idx] = (rem[idx] + p - mulmod(c, r1[i], p)) % p;
                }
            }
            rem.pop();
        }
        trim(&mut rem);
        r0 = r1;
        r1 = rem;
    }
    let li = mod_inverse(*r0.last().unwrap() as i64, p as i64).unwrap() as u64;
    r0.iter().map(|&c| mulmod(c, li, p)).collect()
}

/// Split pO for tiny p by locating rank-one idempotents of O/pO.
fn split_via_idempotents(field: &BaseField, p: u64) -> Vec<(Ideal, u32, u32)> {
    assert!(p <= 7, "idempotent search only for tiny primes");
    let deg = field.degree();
    let pb = BigInt::from(p);
    let total = p.pow(deg as u32);
    let mut primes: Vec<Ideal> = Vec::new();
    for code in 1..total {
        let mut coords = Vec::with_capacity(deg);
        let mut c = code;
        for _ in 0..deg {
            coords.push(BigInt::from(c % p));
            c /= p;
        }
        let e = FieldElem::from_integer_coords(coords);
        let e2 = field.mul(&e, &e);
        let diff = e2.sub(&e);
        if !diff.num.iter().all(|x| x.mod_floor(&pb).is_zero()) {
            continue;
        }
        let m = field.mult_matrix_num(&e);
        if rank_mod_p(&m, p) != 1 {
            continue;
        }
        let one = field.one();
        let gen = one.sub(&e);
        let pr = prime_from_gen(field, p, &gen);
        if pr.norm == pb && !primes.contains(&pr) {
            primes.push(pr);
        }
    }
    assert_eq!(primes.len(), 3, "split prime with index divisor");
    primes.sort();
    primes.into_iter().map(|pr| (pr, 1, 1)).collect()
}

fn rank_mod_p(m: &IMat, p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| x.mod_floor(&pb).to_u64().unwrap())
                .collect()
        })
        .collect();
    let n = a.len();
    let mut rank = 0;
    for col in 0..n {
        if let Some(pr) = (rank..n).find(|&r| a[r][col] != 0) {
            a.swap(rank, pr);
            let inv = mod_inverse(a[rank][col] as i64, p as i64).unwrap() as u64;
            for x in a[rank].iter_mut() {
                *x = mulmod(*x, inv, p);
            }
            for r in 0..n {
                if r != rank && a[r][col] != 0 {
                    let f = a[r][col];
                    let master = a[rank].clone();
                    for (x, y) in a[r].iter_mut().zip(&master) {
                        *x = (*x + p - mulmod(f, *y, p)) % p;
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

/// All divisors of (2), ordered by (norm, lattice).
pub fn divisors_of_two(field: &BaseField) -> Vec<Ideal> {
    let split = split_prime(field, 2);
    let mut out = vec![Ideal::unit(field)];
    for (pr, e, _) in &split {
        let mut next = Vec::new();
        for d in &out {
            let mut power = Ideal::unit(field);
            for _ in 0..=*e {
                next.push(d.mul(field, &power));
                power = power.mul(field, pr);
            }
        }
        out = next;
    }
    out.sort_by(|a, b| (a.norm.clone(), a.hnf.clone()).cmp(&(b.norm.clone(), b.hnf.clone())));
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::BaseField;

    #[test]
    fn gaussian_splitting() {
        let k = BaseField::new_quadratic(-4);
        let s5 = split_prime(&k, 5);
        assert_eq!(s5.len(), 2);
        assert!(s5
            .iter()
            .all(|(pr, e, f)| pr.norm == BigInt::from(5) && *e == 1 && *f == 1));
        let s3 = split_prime(&k, 3);
        assert_eq!(s3.len(), 1);
        assert_eq!(s3[0].2, 2);
        let s2 = split_prime(&k, 2);
        assert_eq!(s2.len(), 1);
        assert_eq!(s2[0].1, 2);
        assert_eq!(s2[0].0.norm, BigInt::from(2));
    }

    #[test]
    fn cubic_splitting_f7() {
        let k = BaseField::new_cyclic_cubic(7, 0);
        // conductor prime totally ramifies
        let s7 = split_prime(&k, 7);
        assert_eq!(s7.len(), 1);
        assert_eq!((s7[0].1, s7[0].2), (3, 1));
        // 2 lies outside {1, 6} mod 7: inert
        let s2 = split_prime(&k, 2);
        assert_eq!(s2.len(), 1);
        assert_eq!(s2[0].2, 3);
        // 13 ≡ 6 mod 7 lies in the subgroup {1, 6}: split
        let s13 = split_prime(&k, 13);
        assert_eq!(s13.len(), 3);
        for (pr, e, f) in &s13 {
            assert_eq!((e, f), (&1, &1));
            assert_eq!(pr.norm, BigInt::from(13));
        }
    }

    #[test]
    fn cubic_splitting_f31_two_splits() {
        // 2^10 ≡ 1 mod 31, so 2 lies in the index-3 subgroup and splits
        let k = BaseField::new_cyclic_cubic(31, 0);
        let s2 = split_prime(&k, 2);
        assert_eq!(s2.len(), 3);
        let prod = s2
            .iter()
            .fold(Ideal::unit(&k), |acc, (pr, _, _)| acc.mul(&k, pr));
        assert_eq!(prod, Ideal::from_integer(&k, &BigInt::from(2)));
    }

    #[test]
    fn ideal_arithmetic_roundtrip() {
        let k = BaseField::new_quadratic(-23);
        let (p2, _, _) = &split_prime(&k, 2)[0];
        let (p3, _, _) = &split_prime(&k, 3)[0];
        let prod = p2.mul(&k, p3);
        assert_eq!(prod.norm, BigInt::from(6));
        assert!(p2.is_coprime(&k, p3));
        let q = prod.div_exact(&k, p2);
        assert_eq!(q, *p3);
        let q2 = prod.div_exact(&k, p3);
        assert_eq!(q2, *p2);
        // conjugate product recovers the norm ideal
        let np = p2.mul(&k, &p2.conjugate_product(&k));
        assert_eq!(np, Ideal::from_integer(&k, &BigInt::from(2)));
    }

    #[test]
    fn unique_factorization_small_fields() {
        let fields = [
            BaseField::new_quadratic(-4),
            BaseField::new_quadratic(5),
            BaseField::new_quadratic(-23),
            BaseField::new_quadratic(60),
            BaseField::new_cyclic_cubic(7, 0),
            BaseField::new_cyclic_cubic(9, 0),
            BaseField::new_cyclic_cubic(13, 0),
        ];
        for k in &fields {
            for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23] {
                let parts = split_prime(k, p);
                let mut prod = Ideal::unit(k);
                for (pr, e, _) in &parts {
                    prod = prod.mul(k, &pr.pow(k, *e as u64));
                }
                assert_eq!(
                    prod,
                    Ideal::from_integer(k, &BigInt::from(p)),
                    "refactor {p} in {}",
                    k.label()
                );
            }
        }
    }

    #[test]
    fn divisors_of_two_by_kind() {
        let k7 = BaseField::new_cyclic_cubic(7, 0);
        assert_eq!(divisors_of_two(&k7).len(), 2);
        let ki = BaseField::new_quadratic(-4);
        assert_eq!(divisors_of_two(&ki).len(), 3);
        let k17 = BaseField::new_quadratic(17);
        assert_eq!(divisors_of_two(&k17).len(), 4);
        let k31 = BaseField::new_cyclic_cubic(31, 0);
        assert_eq!(divisors_of_two(&k31).len(), 8);
    }

    #[test]
    fn residues_cover_quotient() {
        let k = BaseField::new_quadratic(-4);
        let (p2, _, _) = &split_prime(&k, 2)[0];
        let p2sq = p2.pow(&k, 2);
        let res = p2sq.residues(&k);
        assert_eq!(res.len(), 4);
    }
}
