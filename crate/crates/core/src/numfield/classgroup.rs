//! Certified class groups: reduced-form counts fix the class number for
//! quadratic fields, relation search over a Minkowski-spanning factor base
//! fixes the structure, and the analytic class-number formula certifies the
//! pair (h, R) before anything is returned.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::elem::FieldElem;
use super::ideal::{split_prime, Ideal};
use super::linalg::{self, IMat};
use super::reduction;
use super::units::{unit_data, UnitData};
use super::{BaseField, FieldKind};
use crate::analytic::{self, AnalyticCtx, ZetaInvariants};
use crate::primes::is_prime_u64;

#[derive(Clone, Debug)]
pub struct FbEntry {
    pub p: u64,
    pub ideal: Ideal,
    pub res_deg: u32,
    pub ramified: bool,
    pub dlog: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct ClassGroupData {
    pub h: u64,
    /// Elementary divisors > 1 in a divisibility chain.
    pub divisors: Vec<u64>,
    /// Odd prime (or unit) ideal representative per divisor.
    pub generators: Vec<Ideal>,
    pub fb: Vec<FbEntry>,
    pub fb_bound: u64,
    /// Odd representative ideal per class vector.
    class_reps: BTreeMap<Vec<u64>, Ideal>,
}

impl ClassGroupData {
    pub fn rank2(&self) -> u32 {
        self.divisors.iter().filter(|d| *d % 2 == 0).count() as u32
    }

    pub fn cl2_order(&self) -> u64 {
        1u64 << self.rank2()
    }

    pub fn trivial_vec(&self) -> Vec<u64> {
        vec![0; self.divisors.len()]
    }

    pub fn add_vecs(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.divisors)
            .map(|((x, y), d)| (x + y) % d)
            .collect()
    }

    pub fn neg_vec(&self, a: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(&self.divisors)
            .map(|(x, d)| (d - x % d) % d)
            .collect()
    }

    pub fn scale_vec(&self, a: &[u64], k: u64) -> Vec<u64> {
        a.iter()
            .zip(&self.divisors)
            .map(|(x, d)| (x * (k % d)) % d)
            .collect()
    }

    /// Smallest nonnegative half of a class, when the class is a square.
    pub fn sqrt_class(&self, v: &[u64]) -> Option<Vec<u64>> {
        let mut out = Vec::with_capacity(v.len());
        for (&x, &d) in v.iter().zip(&self.divisors) {
            if d % 2 == 1 {
                // doubling is invertible mod odd d
                let inv2 = crate::primes::mod_inverse(2, d as i64).unwrap() as u64;
                out.push((x * inv2) % d);
            } else if x % 2 == 0 {
                out.push(x / 2);
            } else {
                return None;
            }
        }
        Some(out)
    }

    pub fn in_squares(&self, v: &[u64]) -> bool {
        self.sqrt_class(v).is_some()
    }

    /// Two-torsion class vectors (nontrivial ones).
    pub fn two_torsion_vecs(&self) -> Vec<Vec<u64>> {
        let evens: Vec<usize> = self
            .divisors
            .iter()
            .enumerate()
            .filter(|(_, d)| *d % 2 == 0)
            .map(|(i, _)| i)
            .collect();
        let mut out = Vec::new();
        for mask in 1u32..(1 << evens.len()) {
            let mut v = self.trivial_vec();
            for (bit, &idx) in evens.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    v[idx] = self.divisors[idx] / 2;
                }
            }
            out.push(v);
        }
        out
    }

    pub fn class_rep_norms(&self) -> Vec<u64> {
        self.class_reps
            .values()
            .map(|i| i.norm.to_u64().expect("rep norm fits"))
            .collect()
    }

    /// Vectors generating the 2-torsion subgroup, one per even divisor.
    pub fn two_torsion_generator_vecs(&self) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        for (j, d) in self.divisors.iter().enumerate() {
            if d % 2 == 0 {
                let mut v = self.trivial_vec();
                v[j] = d / 2;
                out.push(v);
            }
        }
        out
    }

    pub fn rep_of_class(&self, v: &[u64]) -> &Ideal {
        self.class_reps
            .get(v)
            .expect("class representative table complete")
    }

    /// dlog of a prime ideal above p.
    pub fn dlog_prime(&self, field: &BaseField, prime: &Ideal, p: u64) -> Vec<u64> {
        if self.divisors.is_empty() {
            return Vec::new();
        }
        if p <= self.fb_bound {
            for e in &self.fb {
                if e.p == p && &e.ideal == prime {
                    return e.dlog.clone();
                }
            }
        }
        // reduce to a factor-base-smooth equivalent
        match field.kind {
            FieldKind::Quadratic if field.disc < 0 => {
                let mu = reduction::shortest_vector_imag(field, prime);
                let cof = Ideal::from_element(field, &mu).div_exact(field, prime);
                let v = self
                    .factor_dlog(field, &cof)
                    .expect("imaginary cofactor is smooth");
                self.neg_vec(&v)
            }
            FieldKind::Quadratic => {
                let reduced = reduction::reduced_ideal_real(field, prime);
                self.factor_dlog(field, &reduced)
                    .expect("reduced ideal is smooth")
            }
            FieldKind::CyclicCubic => {
                for range in [4i64, 8, 16, 32] {
                    let alpha = reduction::small_combo_search(field, prime, range);
                    let cof = Ideal::from_element(field, &alpha).div_exact(field, prime);
                    if let Some(v) = self.factor_dlog(field, &cof) {
                        return self.neg_vec(&v);
                    }
                }
                panic!("cubic dlog reduction found no smooth cofactor")
            }
        }
    }

    /// dlog of any integral ideal by factoring its norm.
    pub fn dlog(&self, field: &BaseField, ideal: &Ideal) -> Vec<u64> {
        if self.divisors.is_empty() {
            return Vec::new();
        }
        let mut acc = self.trivial_vec();
        let n = ideal.norm.to_u64().expect("ideal norm fits u64");
        for (p, _) in crate::primes::factor_u64(n) {
            for (pr, _, _) in split_prime(field, p) {
                let mut power = pr.clone();
                let mut v = 0u64;
                while power.divides(ideal) {
                    v += 1;
                    power = power.mul(field, &pr);
                }
                if v > 0 {
                    let d = self.dlog_prime(field, &pr, p);
                    acc = self.add_vecs(&acc, &self.scale_vec(&d, v));
                }
            }
        }
        acc
    }

    /// Factor an ideal over the stored base and return its dlog; fails when
    /// a prime factor exceeds the base.
    fn factor_dlog(&self, field: &BaseField, ideal: &Ideal) -> Option<Vec<u64>> {
        let mut acc = self.trivial_vec();
        if ideal.is_unit() {
            return Some(acc);
        }
        let n = ideal.norm.to_u64()?;
        for (p, _) in crate::primes::factor_u64(n) {
            if p > self.fb_bound {
                return None;
            }
            for e in self.fb.iter().filter(|e| e.p == p) {
                let mut power = e.ideal.clone();
                let mut v = 0u64;
                while power.divides(ideal) {
                    v += 1;
                    power = power.mul(field, &e.ideal);
                }
                if v > 0 {
                    acc = self.add_vecs(&acc, &self.scale_vec(&e.dlog, v));
                }
            }
        }
        Some(acc)
    }
}

/// Class number of an imaginary quadratic field by counting reduced forms.
pub fn h_by_reduced_forms_imag(d: i64) -> u64 {
    assert!(d < 0);
    let ad = (-d) as u64;
    let mut h = 0u64;
    let mut a = 1u64;
    while 3 * a * a <= ad {
        let foura = 4 * a;
        // b ≡ d (mod 2), -a < b <= a
        let mut b = -(a as i64) + 1;
        if (b - d).rem_euclid(2) != 0 {
            b += 1;
        }
        while b <= a as i64 {
            let num = b as i128 * b as i128 + ad as i128;
            if num % (foura as i128) == 0 {
                let c = (num / foura as i128) as u64;
                if c >= a && !(b < 0 && (b.unsigned_abs() == a || a == c)) {
                    h += 1;
                }
            }
            b += 2;
        }
        a += 1;
    }
    h
}

/// Class number of a real quadratic field: reduced ideal pairs grouped into
/// rho cycles; the number of cycles is h.
pub fn h_by_cycles_real(field: &BaseField) -> u64 {
    let d = field.disc;
    assert!(d > 0);
    let d_big = BigInt::from(d);
    let sqrt_d = d_big.sqrt().to_i64().unwrap();
    let mut forms: alloc::collections::BTreeSet<(i64, i64)> = alloc::collections::BTreeSet::new();
    for b in 1..=sqrt_d {
        if (b - d).rem_euclid(2) != 0 {
            continue;
        }
        let num = (d - b * b) / 1;
        if num <= 0 || num % 4 != 0 {
            continue;
        }
        // 4 a |c| = d - b^2 with window sqrt_d - 2a < b
        let target = num / 4;
        let mut a = 1i64;
        while a <= target {
            if target % a == 0 {
                // reduced windows: |sqrt D - 2a| < b < sqrt D
                let ok_b = b <= sqrt_d && sqrt_d < 2 * a + b && 2 * a - b <= sqrt_d;
                if ok_b {
                    forms.insert((a, b));
                }
            }
            a += 1;
        }
    }
    // partition into rho orbits
    let mut remaining = forms.clone();
    let mut cycles = 0u64;
    while let Some(&(a0, b0)) = remaining.iter().next() {
        cycles += 1;
        let (mut a, mut b) = (BigInt::from(a0), BigInt::from(b0));
        loop {
            let (na, nb) = reduction::rho_step_pair(field, &a, &b);
            a = na;
            b = nb;
            let key = (a.to_i64().unwrap(), b.to_i64().unwrap());
            if !remaining.remove(&key) {
                break;
            }
        }
    }
    cycles
}

/// Assembled, certified field invariants.
pub struct FieldInvariants {
    pub class_group: ClassGroupData,
    pub units: UnitData,
    pub zeta: ZetaInvariants,
}

/// Compute class group + units and certify against the analytic residue.
/// Any mismatch is a hard error.
pub fn certified_invariants(field: &BaseField, ctx: &AnalyticCtx) -> FieldInvariants {
    match field.kind {
        FieldKind::Quadratic => assert!(field.disc.unsigned_abs() <= 100_000_000),
        FieldKind::CyclicCubic => assert!(field.conductor <= 10_000),
    }
    let units = unit_data(field, 40);
    let mut bits = 36u32;
    let (h0, zeta) = loop {
        let zi = analytic::zeta_invariants(field, bits, ctx);
        let h_iv = zi.h_times_r.div(&units.regulator);
        if let Some(n) = h_iv.unique_integer() {
            break (n.to_u64().expect("class number fits"), zi);
        }
        bits += 16;
        assert!(bits <= 160, "analytic class number did not converge");
    };
    assert!(h0 >= 1);
    // cross-check the analytic number against reduced-form counts
    if field.kind == FieldKind::Quadratic {
        let h_forms = if field.disc < 0 {
            h_by_reduced_forms_imag(field.disc)
        } else {
            h_by_cycles_real(field)
        };
        assert_eq!(
            h_forms, h0,
            "form count disagrees with the analytic class number for {}",
            field.label()
        );
    }
    let cg = class_group_with_h(field, h0, ctx);
    analytic::certify_h(cg.h, &units.regulator, &zeta.h_times_r)
        .expect("class-number certification");
    FieldInvariants {
        class_group: cg,
        units,
        zeta,
    }
}

fn minkowski_like_bound(field: &BaseField) -> u64 {
    match field.kind {
        FieldKind::Quadratic => {
            let d = field.disc.unsigned_abs();
            let sqrt = BigInt::from(d).sqrt().to_u64().unwrap();
            // covers both the Minkowski constant and reduced-ideal norms
            sqrt + 2
        }
        FieldKind::CyclicCubic => {
            // Minkowski constant (6/27) f, padded for smooth cofactors
            (field.conductor / 4).max(8) + 2
        }
    }
}

/// Structure + dlog data given the certified class number.
fn class_group_with_h(field: &BaseField, h0: u64, _ctx: &AnalyticCtx) -> ClassGroupData {
    let fb_bound = minkowski_like_bound(field);
    // factor base: all primes over p <= fb_bound
    let mut fb: Vec<FbEntry> = Vec::new();
    let mut start_relations: Vec<Vec<i64>> = Vec::new();
    let mut p = 2u64;
    while p <= fb_bound {
        if is_prime_u64(p) {
            let parts = split_prime(field, p);
            let base_idx = fb.len();
            let mut row = vec![0i64; base_idx];
            for (pr, e, f) in &parts {
                fb.push(FbEntry {
                    p,
                    ideal: pr.clone(),
                    res_deg: *f,
                    ramified: *e > 1,
                    dlog: Vec::new(),
                });
                row.push(*e as i64);
            }
            start_relations.push(row);
        }
        p += 1;
    }
    let s = fb.len();
    for r in &mut start_relations {
        r.resize(s, 0);
    }
    if s == 0 {
        assert_eq!(h0, 1, "empty factor base forces trivial class group");
        let mut class_reps = BTreeMap::new();
        class_reps.insert(Vec::new(), Ideal::unit(field));
        return ClassGroupData {
            h: 1,
            divisors: Vec::new(),
            generators: Vec::new(),
            fb,
            fb_bound,
            class_reps,
        };
    }
    // harvest element relations until the lattice has full rank and the
    // right determinant
    let mut relations: Vec<Vec<i64>> = start_relations;
    let mut range = 3i64;
    let (divisors_full, v_mat) = loop {
        harvest_relations(field, &fb, range, &mut relations);
        let mat: IMat = relations
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let (_, d, v) = linalg::smith_normal_form(&mat);
        let cols = s.min(d.len());
        let mut dets: Vec<BigInt> = Vec::new();
        let mut full_rank = true;
        for j in 0..s {
            let val = if j < cols { d[j][j].clone() } else { BigInt::zero() };
            if val.is_zero() {
                full_rank = false;
                break;
            }
            dets.push(val);
        }
        if full_rank {
            let h_cand: BigInt = dets.iter().product();
            if h_cand == BigInt::from(h0) {
                break (dets, v);
            }
        }
        range *= 2;
        assert!(
            range <= 256,
            "relation search exhausted for {} (h = {h0})",
            field.label()
        );
    };
    // nontrivial divisors and the dlog map e_i -> (e_i V mod divisors)
    let nontrivial: Vec<(usize, u64)> = divisors_full
        .iter()
        .enumerate()
        .filter(|(_, d)| **d > BigInt::one())
        .map(|(j, d)| (j, d.to_u64().expect("divisor fits")))
        .collect();
    let divisors: Vec<u64> = nontrivial.iter().map(|&(_, d)| d).collect();
    for (i, entry) in fb.iter_mut().enumerate() {
        entry.dlog = nontrivial
            .iter()
            .map(|&(j, d)| v_mat[i][j].mod_floor(&BigInt::from(d)).to_u64().unwrap())
            .collect();
    }
    let mut cg = ClassGroupData {
        h: h0,
        divisors,
        generators: Vec::new(),
        fb,
        fb_bound,
        class_reps: BTreeMap::new(),
    };
    build_class_reps(field, &mut cg);
    cg.generators = (0..cg.divisors.len())
        .map(|j| {
            let mut e = cg.trivial_vec();
            e[j] = 1;
            cg.rep_of_class(&e).clone()
        })
        .collect();
    cg
}

fn harvest_relations(
    field: &BaseField,
    fb: &[FbEntry],
    range: i64,
    relations: &mut Vec<Vec<i64>>,
) {
    let fb_bound = fb.iter().map(|e| e.p).max().unwrap_or(2);
    let deg = field.degree();
    let mut consider = |coords: &[i64]| {
        let x = FieldElem::from_i64_coords(coords);
        if x.is_zero() {
            return;
        }
        let n = field.norm(&x);
        let n_int = n.numer().magnitude().to_u64();
        let Some(mut n_u) = n_int else { return };
        if n_u == 0 {
            return;
        }
        // smoothness over the base
        let mut factors: Vec<(u64, u32)> = Vec::new();
        for e in fb.iter().map(|e| e.p).collect::<alloc::collections::BTreeSet<u64>>() {
            let mut k = 0;
            while n_u % e == 0 {
                n_u /= e;
                k += 1;
            }
            if k > 0 {
                factors.push((e, k));
            }
        }
        if n_u != 1 {
            return;
        }
        let ideal = Ideal::from_element(field, &x);
        let mut row = vec![0i64; fb.len()];
        for (p, _) in factors {
            for (i, entry) in fb.iter().enumerate() {
                if entry.p != p {
                    continue;
                }
                let mut power = entry.ideal.clone();
                let mut v = 0i64;
                while power.divides(&ideal) {
                    v += 1;
                    power = power.mul(field, &entry.ideal);
                }
                row[i] = v;
            }
        }
        relations.push(row);
    };
    let _ = fb_bound;
    if deg == 2 {
        for c0 in 0..=range {
            for c1 in -range..=range {
                consider(&[c0, c1]);
            }
        }
    } else {
        for c0 in 0..=range {
            for c1 in -range..=range {
                for c2 in -range..=range {
                    consider(&[c0, c1, c2]);
                }
            }
        }
    }
}

/// Scan odd unramified degree-one primes until every class has an odd
/// representative.
fn build_class_reps(field: &BaseField, cg: &mut ClassGroupData) {
    let mut reps: BTreeMap<Vec<u64>, Ideal> = BTreeMap::new();
    reps.insert(cg.trivial_vec(), Ideal::unit(field));
    let needed = cg.h as usize;
    if needed == 1 {
        cg.class_reps = reps;
        return;
    }
    let disc = field.disc;
    let mut p = 2u64;
    let cap = 200_000u64;
    while reps.len() < needed && p < cap {
        p += 1;
        if !is_prime_u64(p) || p == 2 || disc % (p as i64) == 0 {
            continue;
        }
        for (pr, e, f) in split_prime(field, p) {
            if e > 1 || f > 1 {
                continue;
            }
            let v = cg.dlog_prime(field, &pr, p);
            reps.entry(v).or_insert(pr);
        }
    }
    assert_eq!(
        reps.len(),
        needed,
        "class representative scan incomplete for {}",
        field.label()
    );
    cg.class_reps = reps;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Rat;
    use num_traits::One;

    fn ctx() -> AnalyticCtx {
        AnalyticCtx::new(40_000)
    }

    #[test]
    fn reduced_form_counts() {
        assert_eq!(h_by_reduced_forms_imag(-4), 1);
        assert_eq!(h_by_reduced_forms_imag(-23), 3);
        assert_eq!(h_by_reduced_forms_imag(-56), 4);
        assert_eq!(h_by_reduced_forms_imag(-47), 5);
        assert_eq!(h_by_reduced_forms_imag(-163), 1);
        assert_eq!(h_by_reduced_forms_imag(-5460), 16);
    }

    #[test]
    fn real_cycle_counts() {
        for (d, h) in [(5i64, 1u64), (8, 1), (40, 2), (60, 2), (229, 3)] {
            let k = BaseField::new_quadratic(d);
            assert_eq!(h_by_cycles_real(&k), h, "d = {d}");
        }
    }

    #[test]
    fn certified_gaussian() {
        let k = BaseField::new_quadratic(-4);
        let inv = certified_invariants(&k, &ctx());
        assert_eq!(inv.class_group.h, 1);
        assert!(inv.class_group.divisors.is_empty());
    }

    #[test]
    fn certified_cyclic_class_group() {
        let k = BaseField::new_quadratic(-23);
        let inv = certified_invariants(&k, &ctx());
        assert_eq!(inv.class_group.h, 3);
        assert_eq!(inv.class_group.divisors, vec![3]);
        // dlog linearity: dlog(a*b) = dlog(a) + dlog(b)
        let cg = &inv.class_group;
        let (p2, _, _) = &split_prime(&k, 2)[0];
        let (p3, _, _) = &split_prime(&k, 3)[0];
        let d2 = cg.dlog(&k, p2);
        let d3 = cg.dlog(&k, p3);
        let prod = p2.mul(&k, p3);
        assert_eq!(cg.dlog(&k, &prod), cg.add_vecs(&d2, &d3));
        // dlog of the h-th power is trivial
        let cube = p2.pow(&k, 3);
        assert_eq!(cg.dlog(&k, &cube), cg.trivial_vec());
    }

    #[test]
    fn certified_two_torsion() {
        let k = BaseField::new_quadratic(-56);
        let inv = certified_invariants(&k, &ctx());
        assert_eq!(inv.class_group.h, 4);
        assert_eq!(inv.class_group.divisors, vec![4]);
        assert_eq!(inv.class_group.cl2_order(), 2);
        assert_eq!(inv.class_group.two_torsion_vecs(), vec![vec![2]]);
        // sqrt_class: [1] is not a square when the divisor is 4
        assert!(inv.class_group.sqrt_class(&[1]).is_none());
        assert_eq!(inv.class_group.sqrt_class(&[2]), Some(vec![1]));
    }

    #[test]
    fn certified_real_and_cubic() {
        let k40 = BaseField::new_quadratic(40);
        let inv = certified_invariants(&k40, &ctx());
        assert_eq!(inv.class_group.h, 2);
        assert_eq!(inv.class_group.divisors, vec![2]);

        let k7 = BaseField::new_cyclic_cubic(7, 0);
        let inv7 = certified_invariants(&k7, &ctx());
        assert_eq!(inv7.class_group.h, 1);

        let k5 = BaseField::new_quadratic(5);
        let inv5 = certified_invariants(&k5, &ctx());
        assert_eq!(inv5.class_group.h, 1);
    }

    #[test]
    fn class_reps_are_odd_and_complete() {
        let k = BaseField::new_quadratic(-47); // h = 5
        let inv = certified_invariants(&k, &ctx());
        let cg = &inv.class_group;
        assert_eq!(cg.h, 5);
        for v in [vec![0u64], vec![1], vec![2], vec![3], vec![4]] {
            let rep = cg.rep_of_class(&v);
            assert!(rep.is_unit() || (rep.norm.clone() % BigInt::from(2)) != BigInt::zero());
            assert_eq!(&cg.dlog(&k, rep), &v);
        }
    }

    #[test]
    fn genus_rank_bounds() {
        // 2-rank of the class group against the count of prime discriminant
        // factors: equals mu - 1 for imaginary fields; for real fields it is
        // mu - 1 or mu - 2 depending on the norm of the fundamental unit.
        let c = ctx();
        for d in [-4i64, -8, -20, -56, -84, -120, 8, 12, 40, 60, 105] {
            if !super::super::is_fundamental_discriminant(d) {
                continue;
            }
            let k = BaseField::new_quadratic(d);
            let inv = certified_invariants(&k, &c);
            let mu = crate::primes::factor_u64(d.unsigned_abs()).len() as u32;
            let rank = inv.class_group.rank2();
            if d < 0 {
                assert_eq!(rank, mu - 1, "d = {d}");
            } else {
                let nm_eps = k.norm(&inv.units.fundamental[0]);
                if nm_eps == -Rat::one() {
                    assert_eq!(rank, mu - 1, "d = {d}");
                } else {
                    assert!(rank == mu - 1 || rank == mu - 2, "d = {d}");
                }
            }
        }
    }
}
