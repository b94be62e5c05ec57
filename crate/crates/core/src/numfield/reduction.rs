//! Principal-ideal machinery: Gauss reduction for imaginary quadratic
//! lattices, the rho-cycle walk for real quadratic ideals (continued
//! fractions with exact multiplier tracking), and unit-padded box searches
//! for cubic generators.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::elem::FieldElem;
use super::ideal::Ideal;
use super::BaseField;
use crate::interval::{ln_iv, Iv};
use crate::rat::{ceil_big, floor_big, rat, rat_big, rat_int, Rat};

/// Shortest nonzero vector of an imaginary quadratic ideal lattice under the
/// norm form, by Lagrange-Gauss reduction (exact).
pub fn shortest_vector_imag(field: &BaseField, ideal: &Ideal) -> FieldElem {
    assert!(field.disc < 0);
    let mut v1 = FieldElem::from_integer_coords(ideal.hnf[0].clone());
    let mut v2 = FieldElem::from_integer_coords(ideal.hnf[1].clone());
    let q = |v: &FieldElem| -> Rat { field.norm(v) };
    let bil =
        |u: &FieldElem, v: &FieldElem| -> Rat { (q(&u.add(v)) - q(u) - q(v)) / rat_int(2) };
    if q(&v1) > q(&v2) {
        core::mem::swap(&mut v1, &mut v2);
    }
    loop {
        let mu = bil(&v1, &v2) / q(&v1);
        let m = floor_big(&(mu + rat(1, 2)));
        if !m.is_zero() {
            let shift = v1.map_coords(|c| c * &m);
            v2 = v2.sub(&shift);
        }
        if q(&v2) >= q(&v1) {
            return v1;
        }
        core::mem::swap(&mut v1, &mut v2);
    }
}

/// Generator of an imaginary quadratic principal ideal, if principal.
pub fn principal_gen_imag(field: &BaseField, ideal: &Ideal) -> Option<FieldElem> {
    if ideal.is_unit() {
        return Some(field.one());
    }
    let v = shortest_vector_imag(field, ideal);
    let nv = field.norm(&v);
    if nv == rat_big(ideal.norm.clone()) {
        let check = Ideal::from_element(field, &v);
        assert_eq!(&check, ideal, "norm-matching shortest vector must generate");
        Some(v)
    } else {
        None
    }
}

/// (content g, A, b): ideal = g * [A, (b + sqrt D)/2] with A the norm of the
/// primitive part. Derived from the HNF lattice via the theta-column gcd.
pub fn quad_ideal_coords(field: &BaseField, ideal: &Ideal) -> (BigInt, BigInt, BigInt) {
    let (alpha, beta) = (ideal.hnf[0][0].clone(), ideal.hnf[0][1].clone());
    let gamma = ideal.hnf[1][1].clone();
    debug_assert!(ideal.hnf[1][0].is_zero());
    // gcd of theta-coefficients and a witness element x + g*theta
    let ext = beta.extended_gcd(&gamma);
    let g = ext.gcd.clone();
    let x = &ext.x * &alpha; // element (ext.x)*(alpha + beta theta) + (ext.y)*(gamma theta)
    let a_full = (&alpha * &gamma) / &g;
    // primitive coordinates
    let a = &a_full / &g;
    let xg = &x / &g;
    let d = field.disc;
    let b_raw = if d.rem_euclid(4) == 1 {
        BigInt::from(2) * &xg + 1
    } else {
        BigInt::from(2) * &xg
    };
    // normalize b mod 2A for determinism
    let two_a = BigInt::from(2) * &a;
    let b = b_raw.mod_floor(&two_a);
    (g, a, b)
}

pub fn quad_ideal_from_coords(field: &BaseField, g: &BigInt, a: &BigInt, b: &BigInt) -> Ideal {
    let d = field.disc;
    let bcol = if d.rem_euclid(4) == 1 {
        (b - BigInt::one()).div_floor(&BigInt::from(2))
    } else {
        b.div_floor(&BigInt::from(2))
    };
    let rows = vec![vec![a * g, BigInt::zero()], vec![&bcol * g, g.clone()]];
    Ideal::from_rows(field, &rows)
}

/// (b + sqrt D)/2 as a field element (b ≡ D mod 2).
fn half_b_plus_sqrt_d(field: &BaseField, b: &BigInt) -> FieldElem {
    let d = field.disc;
    if d.rem_euclid(4) == 1 {
        // = (b-1)/2 + theta with theta = (1+sqrt d)/2
        FieldElem::from_coords(
            vec![(b - BigInt::one()).div_floor(&BigInt::from(2)), BigInt::one()],
            BigInt::one(),
        )
    } else {
        // = b/2 + theta with theta = sqrt(d)/2 scaled: theta = sqrt(d/4)
        FieldElem::from_coords(
            vec![b.div_floor(&BigInt::from(2)), BigInt::one()],
            BigInt::one(),
        )
    }
}

/// One rho step on (a, b): returns (a', b', mu) with
/// a * [a', ...] = mu * [a, ...] as exact ideals, mu = (-b + sqrt D)/2.
fn rho_step(field: &BaseField, a: &BigInt, b: &BigInt) -> (BigInt, BigInt, FieldElem) {
    let d_big = BigInt::from(field.disc);
    let c1 = (b * b - &d_big) / (BigInt::from(4) * a);
    let cn = c1.abs();
    let sqrt_d = d_big.sqrt();
    let two_c = BigInt::from(2) * &cn;
    let target = -b.clone();
    let hi = if cn <= sqrt_d { &sqrt_d } else { &cn };
    let k = (hi - &target).div_floor(&two_c);
    let bp = target + k * &two_c;
    let mu = half_b_plus_sqrt_d(field, &(-b.clone()));
    (cn, bp, mu)
}

/// One rho step on a window-normalized reduced pair (public for cycle
/// walks elsewhere).
pub fn rho_step_pair(field: &BaseField, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let (na, nb, _) = rho_step(field, a, b);
    (na, nb)
}

pub fn is_reduced_real(d: i64, a: &BigInt, b: &BigInt) -> bool {
    if !(*a > BigInt::zero() && *b > BigInt::zero()) {
        return false;
    }
    let d_big = BigInt::from(d);
    let sqrt_d = d_big.sqrt();
    let two_a = BigInt::from(2) * a;
    // |sqrt D - 2a| < b < sqrt D, exact for nonsquare D
    b <= &sqrt_d && sqrt_d < &two_a + b && &two_a - b <= sqrt_d
}

/// Walk the rho cycle from the unit ideal once around; the accumulated
/// multiplier is the fundamental unit.
pub fn fundamental_unit_real(field: &BaseField) -> FieldElem {
    assert!(field.kind == super::FieldKind::Quadratic && field.disc > 0);
    let d = field.disc;
    let b0 = BigInt::from(d.rem_euclid(2));
    let (mut a, mut b) = (BigInt::one(), b0);
    let mut guard = 0usize;
    while !is_reduced_real(d, &a, &b) {
        let (na, nb, _) = rho_step(field, &a, &b);
        a = na;
        b = nb;
        guard += 1;
        assert!(guard < 10_000, "reduction did not terminate");
    }
    let (a_start, b_start) = (a.clone(), b.clone());
    let mut unit_num = field.one();
    let mut unit_den = BigInt::one();
    loop {
        let (na, nb, mu) = rho_step(field, &a, &b);
        unit_num = field.mul(&unit_num, &mu);
        unit_den *= &a;
        a = na;
        b = nb;
        guard += 1;
        assert!(guard < 200_000, "unit cycle did not close");
        if a == a_start && b == b_start {
            break;
        }
    }
    let eps = field.div(&unit_num, &field.from_rational(&rat_big(unit_den)));
    let n = field.norm(&eps);
    assert!(n.abs() == Rat::one(), "unit norm must be ±1");
    normalize_unit(field, eps)
}

/// Scale by ±1 and invert as needed so the first embedding exceeds 1.
fn normalize_unit(field: &BaseField, u: FieldElem) -> FieldElem {
    let mut bits = 32;
    loop {
        let emb = field.real_basis_embeddings(bits);
        let val = embed_elem(&emb[0], &u);
        let one = Rat::one();
        let m_one = -Rat::one();
        if val.lo() > &one {
            return u;
        }
        if val.hi() < &m_one {
            return u.neg();
        }
        if val.is_positive() && val.hi() < &one {
            return field.inverse(&u);
        }
        if val.is_negative() && val.lo() > &m_one {
            return field.inverse(&u).neg();
        }
        bits *= 2;
        assert!(bits <= 4096, "unit embedding straddles ±1");
    }
}

pub fn embed_elem(basis_emb: &[Iv], x: &FieldElem) -> Iv {
    let mut acc = Iv::point(Rat::zero());
    for (c, b) in x.num.iter().zip(basis_emb) {
        acc = acc.add(&b.scale(&rat_big(c.clone())));
    }
    acc.scale(&Rat::new(BigInt::one(), x.den.clone()))
}

/// Reduce a real quadratic ideal along the rho cycle. Returns the reduced
/// (a, b) pair in rho-window normalization plus (num, den) with
/// num * ideal = den * [a, (b + sqrt D)/2] as exact ideals.
pub fn reduce_real(field: &BaseField, ideal: &Ideal) -> (BigInt, BigInt, FieldElem, BigInt) {
    let (g, a0, b0) = quad_ideal_coords(field, ideal);
    let mut a = a0;
    let mut b = b0;
    let mut num = field.one();
    let mut den = g.clone();
    let mut guard = 0usize;
    while !is_reduced_real(field.disc, &a, &b) {
        let (na, nb, mu) = rho_step(field, &a, &b);
        num = field.mul(&num, &mu);
        den *= &a;
        a = na;
        b = nb;
        guard += 1;
        assert!(guard < 100_000, "rho reduction did not terminate");
    }
    debug_assert!({
        let j = quad_ideal_from_coords(field, &BigInt::one(), &a, &b);
        let lhs = Ideal::from_element(field, &num).mul(field, ideal);
        let rhs = Ideal::from_integer(field, &den).mul(field, &j);
        lhs == rhs
    });
    (a, b, num, den)
}

/// The reduced ideal equivalent to `ideal` (class representative data).
pub fn reduced_ideal_real(field: &BaseField, ideal: &Ideal) -> Ideal {
    let (a, b, _, _) = reduce_real(field, ideal);
    quad_ideal_from_coords(field, &BigInt::one(), &a, &b)
}

/// Generator of a real quadratic principal ideal, walking the reduced cycle
/// until the unit ideal appears. `None` when the cycle closes first.
pub fn principal_gen_real(field: &BaseField, ideal: &Ideal) -> Option<FieldElem> {
    if ideal.is_unit() {
        return Some(field.one());
    }
    let (mut a, mut b, mut num, mut den) = reduce_real(field, ideal);
    let (a_start, b_start) = (a.clone(), b.clone());
    let mut guard = 0usize;
    loop {
        if a.is_one() {
            // num * ideal = den * O, so ideal = (den / num)
            let g = field.div(&field.from_rational(&rat_big(den.clone())), &num);
            assert!(g.is_integral(), "generator of an integral ideal is integral");
            let check = Ideal::from_element(field, &g);
            assert_eq!(&check, ideal, "generator does not generate");
            return Some(g);
        }
        let (na, nb, mu) = rho_step(field, &a, &b);
        num = field.mul(&num, &mu);
        den *= &a;
        a = na;
        b = nb;
        guard += 1;
        assert!(guard < 200_000, "principal walk did not terminate");
        if a == a_start && b == b_start {
            return None;
        }
    }
}

/// Box-search generator for totally real cubic ideals. `units` must be a
/// full-rank system; the box is padded by the unit-log covering radius so a
/// principal ideal always reveals a generator.
pub fn principal_gen_cubic(
    field: &BaseField,
    ideal: &Ideal,
    units: &[FieldElem],
    bits: u32,
) -> Option<FieldElem> {
    assert_eq!(field.degree(), 3);
    if ideal.is_unit() {
        return Some(field.one());
    }
    let emb = field.real_basis_embeddings(bits);
    let mut pads = vec![Rat::zero(); 3];
    for u in units {
        for (j, pad) in pads.iter_mut().enumerate() {
            let mut v = embed_elem(&emb[j], u).abs();
            if v.lo() <= &Rat::zero() {
                let emb2 = field.real_basis_embeddings(bits * 4);
                v = embed_elem(&emb2[j], u).abs();
            }
            assert!(v.lo() > &Rat::zero(), "unit embedding touches zero");
            let l = ln_iv(&v, bits).abs();
            *pad += l.hi().clone() / rat_int(2);
        }
    }
    let n = ideal.norm.clone();
    let cbrt = nth_root_ceil(&n, 3);
    // exp(pad) <= 2^(ceil(2 pad)), doubled once more for safety
    let bound: Vec<Rat> = pads
        .iter()
        .map(|p| {
            let exp2 = ceil_big(&(p.clone() * rat_int(2)))
                .to_u32()
                .unwrap_or(40)
                + 1;
            assert!(exp2 < 62, "unit pad too large for box search");
            rat_big(cbrt.clone()) * rat_int(1i64 << exp2)
        })
        .collect();
    let e_rows: Vec<Vec<Iv>> = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    embed_elem(&emb[j], &FieldElem::from_integer_coords(ideal.hnf[i].clone()))
                })
                .collect()
        })
        .collect();
    let inv = interval_inverse_3x3(&e_rows, field, ideal, bits);
    let mut ranges = Vec::with_capacity(3);
    for i in 0..3 {
        let mut s = Rat::zero();
        for (j, b) in bound.iter().enumerate() {
            s += inv[j][i].abs().hi().clone() * b.clone();
        }
        let r = ceil_big(&s).to_i64().expect("box range fits i64");
        assert!(r < 2_000_000, "cubic generator box too large: {r}");
        ranges.push(r);
    }
    let rows: Vec<FieldElem> = ideal
        .hnf
        .iter()
        .map(|r| FieldElem::from_integer_coords(r.clone()))
        .collect();
    let nrat = rat_big(n.clone());
    for c0 in 0..=ranges[0] {
        // sign symmetry: generators come in ± pairs, scan half the box
        let x0 = rows[0].map_coords(|v| v * BigInt::from(c0));
        for c1 in -ranges[1]..=ranges[1] {
            let x1 = x0.add(&rows[1].map_coords(|v| v * BigInt::from(c1)));
            for c2 in -ranges[2]..=ranges[2] {
                if c0 == 0 && c1 == 0 && c2 == 0 {
                    continue;
                }
                let x = x1.add(&rows[2].map_coords(|v| v * BigInt::from(c2)));
                let nm = field.norm(&x).abs();
                if nm == nrat {
                    let cand = Ideal::from_element(field, &x);
                    if &cand == ideal {
                        return Some(x);
                    }
                }
            }
        }
    }
    None
}

/// Kind dispatch for principal-ideal generators. `units` is consulted only
/// in the cubic case (box padding).
pub fn principal_generator(
    field: &BaseField,
    ideal: &Ideal,
    units: &[FieldElem],
    bits: u32,
) -> Option<FieldElem> {
    match (field.kind, field.disc < 0) {
        (super::FieldKind::Quadratic, true) => principal_gen_imag(field, ideal),
        (super::FieldKind::Quadratic, false) => principal_gen_real(field, ideal),
        (super::FieldKind::CyclicCubic, _) => principal_gen_cubic(field, ideal, units, bits),
    }
}

fn nth_root_ceil(n: &BigInt, k: u32) -> BigInt {
    let r = n.nth_root(k);
    if &num_traits::pow(r.clone(), k as usize) == n {
        r
    } else {
        r + 1
    }
}

fn interval_inverse_3x3(
    m: &[Vec<Iv>],
    field: &BaseField,
    ideal: &Ideal,
    bits: u32,
) -> Vec<Vec<Iv>> {
    let det = det3_iv(m);
    if det.is_positive() || det.is_negative() {
        return interval_inverse_3x3_inner(m);
    }
    let emb = field.real_basis_embeddings(bits * 4);
    let refined: Vec<Vec<Iv>> = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    embed_elem(&emb[j], &FieldElem::from_integer_coords(ideal.hnf[i].clone()))
                })
                .collect()
        })
        .collect();
    interval_inverse_3x3_inner(&refined)
}

fn interval_inverse_3x3_inner(m: &[Vec<Iv>]) -> Vec<Vec<Iv>> {
    let det = det3_iv(m);
    assert!(
        det.is_positive() || det.is_negative(),
        "singular embedding matrix"
    );
    let cof = |r0: usize, c0: usize| -> Iv {
        let rs: Vec<usize> = (0..3).filter(|&r| r != r0).collect();
        let cs: Vec<usize> = (0..3).filter(|&c| c != c0).collect();
        let a = m[rs[0]][cs[0]].mul(&m[rs[1]][cs[1]]);
        let b = m[rs[0]][cs[1]].mul(&m[rs[1]][cs[0]]);
        let minor = a.sub(&b);
        if (r0 + c0) % 2 == 0 {
            minor
        } else {
            minor.neg()
        }
    };
    (0..3)
        .map(|i| (0..3).map(|j| cof(j, i).div(&det)).collect())
        .collect()
}

fn det3_iv(m: &[Vec<Iv>]) -> Iv {
    let t1 = m[0][0].mul(&m[1][1].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][1])));
    let t2 = m[0][1].mul(&m[1][0].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][0])));
    let t3 = m[0][2].mul(&m[1][0].mul(&m[2][1]).sub(&m[1][1].mul(&m[2][0])));
    t1.sub(&t2).add(&t3)
}

/// Small element of an ideal by bounded coordinate search, for dlog
/// reduction (cofactor stays factorable).
pub fn small_combo_search(field: &BaseField, ideal: &Ideal, range: i64) -> FieldElem {
    let rows: Vec<FieldElem> = ideal
        .hnf
        .iter()
        .map(|r| FieldElem::from_integer_coords(r.clone()))
        .collect();
    let deg = field.degree();
    let mut best: Option<(Rat, FieldElem)> = None;
    let mut consider = |x: FieldElem| {
        if x.is_zero() {
            return;
        }
        let n = field.norm(&x).abs();
        match &best {
            Some((bn, _)) if bn <= &n => {}
            _ => best = Some((n, x)),
        }
    };
    if deg == 2 {
        for c0 in 0..=range {
            for c1 in -range..=range {
                consider(
                    rows[0]
                        .map_coords(|v| v * BigInt::from(c0))
                        .add(&rows[1].map_coords(|v| v * BigInt::from(c1))),
                );
            }
        }
    } else {
        for c0 in 0..=range {
            for c1 in -range..=range {
                for c2 in -range..=range {
                    consider(
                        rows[0]
                            .map_coords(|v| v * BigInt::from(c0))
                            .add(&rows[1].map_coords(|v| v * BigInt::from(c1)))
                            .add(&rows[2].map_coords(|v| v * BigInt::from(c2))),
                    );
                }
            }
        }
    }
    best.expect("nonzero element in box").1
}

/// All norm-matching generators inside a coordinate box; brute oracle for
/// the directed searches above.
pub fn brute_generators(field: &BaseField, ideal: &Ideal, range: i64) -> Vec<FieldElem> {
    let rows: Vec<FieldElem> = ideal
        .hnf
        .iter()
        .map(|r| FieldElem::from_integer_coords(r.clone()))
        .collect();
    let deg = field.degree();
    let target = rat_big(ideal.norm.clone());
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let mut consider = |x: FieldElem| {
        if x.is_zero() {
            return;
        }
        if field.norm(&x).abs() == target && Ideal::from_element(field, &x) == *ideal {
            let key = (x.num.clone(), x.den.clone());
            if seen.insert(key) {
                out.push(x);
            }
        }
    };
    if deg == 2 {
        for c0 in -range..=range {
            for c1 in -range..=range {
                consider(
                    rows[0]
                        .map_coords(|v| v * BigInt::from(c0))
                        .add(&rows[1].map_coords(|v| v * BigInt::from(c1))),
                );
            }
        }
    } else {
        for c0 in -range..=range {
            for c1 in -range..=range {
                for c2 in -range..=range {
                    consider(
                        rows[0]
                            .map_coords(|v| v * BigInt::from(c0))
                            .add(&rows[1].map_coords(|v| v * BigInt::from(c1)))
                            .add(&rows[2].map_coords(|v| v * BigInt::from(c2))),
                    );
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::ideal::split_prime;
    use crate::numfield::BaseField;

    #[test]
    fn fundamental_units_small_fields() {
        // d = 5: (1 + sqrt 5)/2 = theta, norm -1
        let k5 = BaseField::new_quadratic(5);
        let u5 = fundamental_unit_real(&k5);
        assert_eq!(k5.norm(&u5), rat(-1, 1));
        assert_eq!(u5.num, vec![BigInt::zero(), BigInt::one()]);

        // d = 8: 1 + sqrt 2, norm -1
        let k8 = BaseField::new_quadratic(8);
        let u8 = fundamental_unit_real(&k8);
        assert_eq!(k8.norm(&u8), rat(-1, 1));
        assert_eq!(u8.num, vec![BigInt::one(), BigInt::one()]);

        // d = 12: 2 + sqrt 3, norm +1
        let k12 = BaseField::new_quadratic(12);
        let u12 = fundamental_unit_real(&k12);
        assert_eq!(k12.norm(&u12), rat(1, 1));
        assert_eq!(u12.num, vec![BigInt::from(2), BigInt::one()]);

        // d = 13: (3 + sqrt 13)/2 = 1 + theta, norm -1
        let k13 = BaseField::new_quadratic(13);
        let u13 = fundamental_unit_real(&k13);
        assert_eq!(k13.norm(&u13), rat(-1, 1));
        assert_eq!(u13.num, vec![BigInt::one(), BigInt::one()]);

        // d = 61: (39 + 5 sqrt 61)/2 = 17 + 5 theta, norm -1
        let k61 = BaseField::new_quadratic(61);
        let u61 = fundamental_unit_real(&k61);
        assert_eq!(k61.norm(&u61), rat(-1, 1));
        assert_eq!(u61.num, vec![BigInt::from(17), BigInt::from(5)]);
    }

    #[test]
    fn cubic_search_agrees_with_brute_force() {
        let k = BaseField::new_cyclic_cubic(7, 0);
        let eta = k.elem_from_power_coords(&[Rat::zero(), Rat::one(), Rat::zero()]);
        let units = vec![eta.clone(), k.apply_sigma(&eta)];
        for p in [13u64, 29, 41] {
            for (pr, _, _) in split_prime(&k, p) {
                let brute = brute_generators(&k, &pr, 12);
                let ours = principal_gen_cubic(&k, &pr, &units, 40);
                assert_eq!(ours.is_some(), !brute.is_empty(), "p = {p}");
            }
        }
    }

    #[test]
    fn imaginary_generators() {
        let k = BaseField::new_quadratic(-4);
        let s5 = split_prime(&k, 5);
        for (pr, _, _) in &s5 {
            let g = principal_gen_imag(&k, pr).expect("principal in h=1 field");
            assert_eq!(k.norm(&g).abs(), rat(5, 1));
        }
        let k23 = BaseField::new_quadratic(-23);
        let s2 = split_prime(&k23, 2);
        assert!(principal_gen_imag(&k23, &s2[0].0).is_none());
        let cube = s2[0].0.pow(&k23, 3);
        let g = principal_gen_imag(&k23, &cube).expect("cube of class is trivial");
        assert_eq!(k23.norm(&g).abs(), rat(8, 1));
    }

    #[test]
    fn real_generators() {
        let k = BaseField::new_quadratic(5);
        let s11 = split_prime(&k, 11);
        assert_eq!(s11.len(), 2);
        for (pr, _, _) in &s11 {
            let g = principal_gen_real(&k, pr).expect("h = 1");
            assert_eq!(k.norm(&g).abs(), rat(11, 1));
            assert_eq!(&Ideal::from_element(&k, &g), pr);
        }
        let k40 = BaseField::new_quadratic(40);
        let s2 = split_prime(&k40, 2);
        assert!(principal_gen_real(&k40, &s2[0].0).is_none());
        let sq = s2[0].0.pow(&k40, 2);
        let g = principal_gen_real(&k40, &sq).expect("square is principal");
        assert_eq!(k40.norm(&g).abs(), rat(4, 1));
    }

    #[test]
    fn real_generator_matches_brute_force() {
        for d in [5i64, 8, 13, 17, 44, 56, 60] {
            let k = BaseField::new_quadratic(d);
            for p in [3u64, 5, 7, 11, 13] {
                for (pr, _, _) in split_prime(&k, p) {
                    if pr.norm.to_u64() != Some(p) {
                        continue;
                    }
                    let ours = principal_gen_real(&k, &pr);
                    let brute = brute_generators(&k, &pr, 40);
                    assert_eq!(
                        ours.is_some(),
                        !brute.is_empty(),
                        "principality mismatch d={d} p={p}"
                    );
                }
            }
        }
    }

    #[test]
    fn coords_roundtrip() {
        for d in [5i64, 8, 13, 40, 60, -4, -23, -56] {
            let k = BaseField::new_quadratic(d);
            for p in [2u64, 3, 5, 7, 11, 13] {
                for (pr, _, _) in split_prime(&k, p) {
                    let (g, a, b) = quad_ideal_coords(&k, &pr);
                    let back = quad_ideal_from_coords(&k, &g, &a, &b);
                    assert_eq!(back, pr, "roundtrip d={d} p={p}");
                    assert_eq!(&g * &g * &a, pr.norm, "norm split d={d} p={p}");
                    // b^2 ≡ D mod 4a
                    let dd = BigInt::from(d);
                    let rem = (&b * &b - dd).mod_floor(&(BigInt::from(4) * &a));
                    assert!(rem.is_zero());
                }
            }
        }
    }

    #[test]
    fn cubic_generator_search() {
        let k = BaseField::new_cyclic_cubic(7, 0);
        let eta = k.elem_from_power_coords(&[Rat::zero(), Rat::one(), Rat::zero()]);
        let units = vec![eta.clone(), k.apply_sigma(&eta)];
        for (pr, _, _) in split_prime(&k, 13) {
            let g = principal_gen_cubic(&k, &pr, &units, 40).expect("h = 1 cubic");
            assert_eq!(k.norm(&g).abs(), rat(13, 1));
        }
        let (p7, _, _) = &split_prime(&k, 7)[0];
        let g7 = principal_gen_cubic(&k, p7, &units, 40).expect("ramified prime principal");
        assert_eq!(k.norm(&g7).abs(), rat(7, 1));
    }
}
