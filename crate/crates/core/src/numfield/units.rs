//! Unit groups modulo squares: torsion, fundamental units (continued
//! fractions for real quadratic, bounded search for cyclic cubic), 2-
//! saturation, and rigorous regulator enclosures.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::elem::FieldElem;
use super::reduction::{embed_elem, fundamental_unit_real};
use super::sqrtest::{sqrt_in_field, is_square};
use super::{BaseField, FieldKind};
use crate::interval::{ln_iv, Iv};
use crate::rat::Rat;

#[derive(Clone, Debug)]
pub struct UnitData {
    pub roots_of_unity_order: u32,
    pub torsion_gen: FieldElem,
    /// Fundamental units (0 imaginary, 1 real quadratic, 2 cyclic cubic).
    pub fundamental: Vec<FieldElem>,
    /// F2-basis of U/U^2; length r + i.
    pub mod_squares_basis: Vec<FieldElem>,
    pub rank_mod_squares: u32,
    pub regulator: Iv,
}

/// Units of the maximal order, saturated at 2. The caller certifies the
/// regulator against the analytic residue; search failure panics with the
/// attempted bound.
pub fn unit_data(field: &BaseField, bits: u32) -> UnitData {
    match field.kind {
        FieldKind::Quadratic if field.disc < 0 => imaginary_units(field),
        FieldKind::Quadratic => real_quadratic_units(field, bits),
        FieldKind::CyclicCubic => cubic_units(field, bits),
    }
}

fn imaginary_units(field: &BaseField) -> UnitData {
    let (w, torsion) = match field.disc {
        -3 => (6u32, field.basis_elem(1)), // (1 + sqrt -3)/2, order 6
        -4 => (4, field.basis_elem(1)),    // i
        _ => (2, field.one().neg()),
    };
    debug_assert_eq!(field.norm(&torsion), Rat::one());
    let basis = vec![torsion.clone()];
    debug_assert!(!is_square(field, &torsion));
    UnitData {
        roots_of_unity_order: w,
        torsion_gen: torsion,
        fundamental: Vec::new(),
        mod_squares_basis: basis,
        rank_mod_squares: 1,
        regulator: Iv::point(Rat::one()),
    }
}

fn real_quadratic_units(field: &BaseField, bits: u32) -> UnitData {
    let eps = fundamental_unit_real(field);
    let minus_one = field.one().neg();
    for u in [&minus_one, &eps, &field.mul(&minus_one, &eps)] {
        assert!(!is_square(field, u), "unit basis element is a square");
    }
    let emb = field.real_basis_embeddings(bits + 8);
    let val = embed_elem(&emb[0], &eps);
    assert!(val.lo() > &Rat::one(), "fundamental unit normalized above 1");
    let regulator = ln_iv(&val, bits);
    UnitData {
        roots_of_unity_order: 2,
        torsion_gen: minus_one.clone(),
        fundamental: vec![eps.clone()],
        mod_squares_basis: vec![minus_one, eps],
        rank_mod_squares: 2,
        regulator,
    }
}

fn cubic_units(field: &BaseField, bits: u32) -> UnitData {
    let mut bound = 2i64;
    let (u1, u2) = loop {
        if let Some(pair) = search_unit_pair(field, bound, bits) {
            break pair;
        }
        bound *= 2;
        assert!(bound <= 64, "unit search exhausted at height bound {bound}");
    };
    let (u1, u2) = saturate_at_two(field, u1, u2);
    let minus_one = field.one().neg();
    // independence of the full basis mod squares
    for mask in 1u8..8 {
        let mut prod = field.one();
        if mask & 1 != 0 {
            prod = field.mul(&prod, &minus_one);
        }
        if mask & 2 != 0 {
            prod = field.mul(&prod, &u1);
        }
        if mask & 4 != 0 {
            prod = field.mul(&prod, &u2);
        }
        assert!(
            !is_square(field, &prod),
            "saturated unit basis still dependent (mask {mask})"
        );
    }
    let regulator = regulator_iv(field, &[u1.clone(), u2.clone()], bits);
    UnitData {
        roots_of_unity_order: 2,
        torsion_gen: minus_one.clone(),
        fundamental: vec![u1.clone(), u2.clone()],
        mod_squares_basis: vec![minus_one, u1, u2],
        rank_mod_squares: 3,
        regulator,
    }
}

/// Log-embedding rows of the given units, refined until signs resolve.
fn unit_logs(field: &BaseField, units: &[FieldElem], bits: u32) -> Vec<Vec<Iv>> {
    let mut b = bits;
    loop {
        let emb = field.real_basis_embeddings(b);
        let mut ok = true;
        let mut rows = Vec::with_capacity(units.len());
        for u in units {
            let mut row = Vec::with_capacity(field.degree());
            for e in &emb {
                let v = embed_elem(e, u).abs();
                if v.lo() <= &Rat::zero() {
                    ok = false;
                    break;
                }
                row.push(ln_iv(&v, b));
            }
            if !ok {
                break;
            }
            rows.push(row);
        }
        if ok {
            return rows;
        }
        b *= 2;
        assert!(b <= 1 << 13, "unit embedding refinement exhausted");
    }
}

/// |det| of the first-two-embedding log matrix.
fn regulator_iv(field: &BaseField, units: &[FieldElem], bits: u32) -> Iv {
    let logs = unit_logs(field, units, bits + 8);
    let det = logs[0][0]
        .mul(&logs[1][1])
        .sub(&logs[0][1].mul(&logs[1][0]));
    assert!(
        det.is_positive() || det.is_negative(),
        "regulator enclosure touches zero"
    );
    det.abs().round_out(bits)
}

fn search_unit_pair(field: &BaseField, bound: i64, bits: u32) -> Option<(FieldElem, FieldElem)> {
    let mut candidates: Vec<FieldElem> = Vec::new();
    let one = Rat::one();
    for c0 in -bound..=bound {
        for c1 in -bound..=bound {
            for c2 in -bound..=bound {
                let x = FieldElem::from_i64_coords(&[c0, c1, c2]);
                if x.is_zero() {
                    continue;
                }
                if let Some(r) = x.as_rational() {
                    let _ = r;
                    continue; // rational units are torsion
                }
                if field.norm(&x).abs() == one {
                    candidates.push(x);
                }
            }
        }
    }
    if candidates.len() < 2 {
        return None;
    }
    // prefer small coordinates for readable output
    candidates.sort_by_key(|x| {
        x.num
            .iter()
            .map(|c| c.magnitude().bits())
            .max()
            .unwrap_or(0)
    });
    let logs = unit_logs(field, &candidates, bits + 8);
    for i in 0..candidates.len() {
        for j in (i + 1)..candidates.len() {
            let det = logs[i][0]
                .mul(&logs[j][1])
                .sub(&logs[i][1].mul(&logs[j][0]));
            if det.is_positive() || det.is_negative() {
                return Some((candidates[i].clone(), candidates[j].clone()));
            }
        }
    }
    None
}

/// Replace basis units by square roots of any square products until the
/// subgroup is 2-saturated.
fn saturate_at_two(
    field: &BaseField,
    mut u1: FieldElem,
    mut u2: FieldElem,
) -> (FieldElem, FieldElem) {
    let minus_one = field.one().neg();
    for _round in 0..24 {
        let mut changed = false;
        for mask in 1u8..8 {
            if mask & 6 == 0 {
                continue; // -1 alone cannot be a square in a real field
            }
            let mut prod = field.one();
            if mask & 1 != 0 {
                prod = field.mul(&prod, &minus_one);
            }
            if mask & 2 != 0 {
                prod = field.mul(&prod, &u1);
            }
            if mask & 4 != 0 {
                prod = field.mul(&prod, &u2);
            }
            if let Some(root) = sqrt_in_field(field, &prod) {
                // the root is a smaller unit; swap it in for a factor
                debug_assert_eq!(field.norm(&root).abs(), Rat::one());
                if mask & 2 != 0 {
                    u1 = root;
                } else {
                    u2 = root;
                }
                changed = true;
                break;
            }
        }
        if !changed {
            return (u1, u2);
        }
    }
    panic!("unit saturation did not stabilize");
}

pub fn rank_formula(field: &BaseField) -> u32 {
    let (r, i) = field.signature;
    r + i
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_big;
    use num_bigint::BigInt;

    #[test]
    fn imaginary_unit_groups() {
        let ki = BaseField::new_quadratic(-4);
        let u = unit_data(&ki, 32);
        assert_eq!(u.roots_of_unity_order, 4);
        assert_eq!(u.rank_mod_squares, 1);
        assert_eq!(u.torsion_gen.num, vec![BigInt::zero(), BigInt::one()]);

        let k3 = BaseField::new_quadratic(-3);
        let u3 = unit_data(&k3, 32);
        assert_eq!(u3.roots_of_unity_order, 6);

        let k7 = BaseField::new_quadratic(-7);
        let u7 = unit_data(&k7, 32);
        assert_eq!(u7.roots_of_unity_order, 2);
        assert_eq!(u7.mod_squares_basis.len(), 1);
    }

    #[test]
    fn golden_units() {
        let k = BaseField::new_quadratic(5);
        let u = unit_data(&k, 40);
        assert_eq!(u.rank_mod_squares, 2);
        assert_eq!(u.fundamental[0].num, vec![BigInt::zero(), BigInt::one()]);
        // regulator = ln((1+sqrt5)/2) = 0.4812118250596...
        let lo = crate::rat::parse_rat("4812118250/10000000000").unwrap();
        let hi = crate::rat::parse_rat("4812118251/10000000000").unwrap();
        assert!(u.regulator.lo() > &lo && u.regulator.hi() < &hi);
    }

    #[test]
    fn cubic_units_conductor_seven() {
        let k = BaseField::new_cyclic_cubic(7, 0);
        let u = unit_data(&k, 40);
        assert_eq!(u.rank_mod_squares, 3);
        assert_eq!(u.fundamental.len(), 2);
        for f in &u.fundamental {
            assert_eq!(k.norm(f).abs(), Rat::one());
        }
        // R(Q(zeta_7)^+) = 0.5254546821...
        let lo = crate::rat::parse_rat("52545468/100000000").unwrap();
        let hi = crate::rat::parse_rat("52545469/100000000").unwrap();
        assert!(
            u.regulator.lo() > &lo && u.regulator.hi() < &hi,
            "regulator enclosure {:?}",
            (u.regulator.lo(), u.regulator.hi())
        );
        let _ = rat_big(BigInt::one());
    }

    #[test]
    fn cubic_units_conductor_nine_and_thirteen() {
        for (f, reg_lo, reg_hi) in [
            (9u64, "849287/1000000", "849288/1000000"),
            (13, "1365049/1000000", "1365050/1000000"),
        ] {
            let k = BaseField::new_cyclic_cubic(f, 0);
            let u = unit_data(&k, 40);
            let lo = crate::rat::parse_rat(reg_lo).unwrap();
            let hi = crate::rat::parse_rat(reg_hi).unwrap();
            assert!(
                u.regulator.lo() > &lo && u.regulator.hi() < &hi,
                "f = {f}: regulator {:?}",
                (
                    crate::rat::format_decimal(&u.regulator.mid(), 8),
                    u.regulator.width()
                )
            );
        }
    }
}
