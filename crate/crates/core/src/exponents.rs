//! Exact bookkeeping for the error-exponent calculus of the counting theorems.
//!
//! All quantities are exact rationals. The budget carries the base-field
//! degree `m`, the subextension degree `n`, the growth exponent `a` of the
//! base-field count, a 2-torsion exponent `t` (so that `#Cl_K[2]` is bounded
//! by `|d_K|^{t+eps}`), and the exponent `e` of the proper-subgroup term.
//! Outputs are exponents of `X`; the epsilon slack is a reporting policy
//! (see [`EPSILON_POLICY`]), never a number.

use crate::rat::{rat, rat_int, Rat};
use alloc::string::String;
use core::fmt;
use num_traits::Zero;

/// An exact rational exponent of `X` or `Z`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Exponent(pub Rat);

impl Exponent {
    pub fn new(value: Rat) -> Self {
        Exponent(value)
    }

    pub fn value(&self) -> &Rat {
        &self.0
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::rat::format_rat(&self.0))
    }
}

/// Exponents are reported without epsilon. Empirical consumers implement the
/// `X^eps` slack as a `(log X)^c` factor with configurable `c` (default 3).
pub const EPSILON_POLICY: &str = "exponents omit eps; empirical envelopes use (log X)^c, default c = 3";

pub const DEFAULT_LOG_POWER: u32 = 3;

/// Expected error exponent of the older Tauberian route, kept for comparison
/// only (never derived here).
pub fn klueners_expected_error() -> Exponent {
    Exponent(rat(5, 6))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExponentError {
    /// `n < 2`: there is no wreath tower to count.
    NoWreathTower { n: u32 },
    BadBudget(String),
    /// Case (i) budgets have no cutoff to optimize; `Z = X^{1/2}` works.
    CutoffImmaterial { suggested: Exponent },
}

impl fmt::Display for ExponentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExponentError::NoWreathTower { n } => {
                write!(f, "no wreath tower for n = {n} (need n >= 2)")
            }
            ExponentError::BadBudget(msg) => write!(f, "invalid exponent budget: {msg}"),
            ExponentError::CutoffImmaterial { suggested } => {
                write!(f, "cutoff immaterial, use {suggested}")
            }
        }
    }
}

/// Which branch of the main theorem a budget falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    /// `s <= 0`: the Z-split is free and the generic error term applies.
    One,
    /// `s > 0`: the cutoff optimization is live.
    Two,
}

impl Case {
    pub fn as_str(self) -> &'static str {
        match self {
            Case::One => "i",
            Case::Two => "ii",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentBudget {
    pub m: u32,
    pub n: u32,
    pub a: Exponent,
    pub t: Exponent,
    pub e: Exponent,
}

impl ExponentBudget {
    pub fn new(m: u32, n: u32, a: Rat, t: Rat, e: Rat) -> Result<Self, ExponentError> {
        if n < 2 {
            return Err(ExponentError::NoWreathTower { n });
        }
        if m < 1 {
            return Err(ExponentError::BadBudget(String::from("m must be >= 1")));
        }
        if !(a > Rat::zero() && a <= rat(3, 2)) {
            return Err(ExponentError::BadBudget(String::from(
                "a must satisfy 0 < a <= 3/2",
            )));
        }
        if !(t >= Rat::zero() && t <= rat(1, 2)) {
            return Err(ExponentError::BadBudget(String::from(
                "t must satisfy 0 <= t <= 1/2",
            )));
        }
        if !(e > Rat::zero() && e <= rat_int(1)) {
            return Err(ExponentError::BadBudget(String::from(
                "e must satisfy 0 < e <= 1",
            )));
        }
        Ok(ExponentBudget {
            m,
            n,
            a: Exponent(a),
            t: Exponent(t),
            e: Exponent(e),
        })
    }

    pub fn mn(&self) -> i64 {
        self.m as i64 * self.n as i64
    }

    /// Exponent of `Z` in the first error block: `a + t - 2 + 5/(mn+1)`.
    pub fn z_exponent(&self) -> Rat {
        let mn = self.mn();
        self.a.0.clone() + self.t.0.clone() - rat_int(2) + rat(5, mn + 1)
    }

    pub fn case(&self) -> Case {
        if self.z_exponent() <= Rat::zero() {
            Case::One
        } else {
            Case::Two
        }
    }
}

/// Default 2-torsion exponent: `1/2 - 1/(2mn)` in general; for cubic and
/// quartic degrees the sharper `1/2 - delta` with `delta = 174/625` applies.
pub fn default_torsion_exponent(m: u32, n: u32) -> Rat {
    let mn = m as i64 * n as i64;
    if mn > 4 {
        rat(1, 2) - rat(1, 2 * mn)
    } else {
        rat(1, 2) - truncated_delta()
    }
}

/// The published 2-torsion saving `0.2784...`, truncated to an exact rational.
pub fn truncated_delta() -> Rat {
    rat(174, 625)
}

/// Default exponent of the proper-subgroup term.
pub fn default_e_exponent() -> Rat {
    rat(3, 4)
}

/// Case boundary `3/2 - (9mn-1)/(2mn(mn+1))` for the growth exponent `a`.
pub fn case_threshold(m: u32, n: u32) -> Result<Exponent, ExponentError> {
    if n < 2 {
        return Err(ExponentError::NoWreathTower { n });
    }
    if m < 1 {
        return Err(ExponentError::BadBudget(String::from("m must be >= 1")));
    }
    let mn = m as i64 * n as i64;
    Ok(Exponent(
        rat(3, 2) - Rat::new((9 * mn - 1).into(), (2 * mn * (mn + 1)).into()),
    ))
}

/// Error exponent of the wreath count under the given budget.
///
/// Case (i): `max(e, a/2, 1 - 2/(mn+1))`.
/// Case (ii): additionally `1 + (2/5)(a+t-2)` and `1 + (a+t-2)/2` compete.
pub fn error_exponent(b: &ExponentBudget) -> Exponent {
    let mn = b.mn();
    let a = &b.a.0;
    let t = &b.t.0;
    let mut candidates = alloc::vec![
        b.e.0.clone(),
        a / rat_int(2),
        rat_int(1) - rat(2, mn + 1),
    ];
    if b.case() == Case::Two {
        let drop = a.clone() + t.clone() - rat_int(2);
        candidates.push(rat_int(1) + rat(2, 5) * drop.clone());
        candidates.push(rat_int(1) + drop / rat_int(2));
    }
    Exponent(crate::rat::max_rat(candidates).expect("nonempty"))
}

/// The `z` with `Z = X^z` balancing the two live error blocks. Identically
/// `2/5` on case (ii); case (i) signals that the cutoff is immaterial.
pub fn optimal_cutoff_exponent(b: &ExponentBudget) -> Result<Exponent, ExponentError> {
    let s = b.z_exponent();
    if s <= Rat::zero() {
        return Err(ExponentError::CutoffImmaterial {
            suggested: Exponent(rat(1, 2)),
        });
    }
    // Balance 1 - 2/(mn+1) + z*s = 1 + z*(a+t-2); the mn-dependence cancels.
    let mn = b.mn();
    let drop = b.a.0.clone() + b.t.0.clone() - rat_int(2);
    let z = rat(2, mn + 1) / (s - drop);
    debug_assert_eq!(z, rat(2, 5));
    Ok(Exponent(z))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget(m: u32, n: u32, a: Rat, t: Rat, e: Rat) -> ExponentBudget {
        ExponentBudget::new(m, n, a, t, e).unwrap()
    }

    #[test]
    fn threshold_printed_values() {
        assert_eq!(case_threshold(1, 6).unwrap().0, rat(73, 84));
        assert_eq!(case_threshold(1, 3).unwrap().0, rat(5, 12));
        // mn = 2: 3/2 - 17/12 = 1/12 by direct evaluation of the formula.
        assert_eq!(case_threshold(1, 2).unwrap().0, rat(1, 12));
        assert!(matches!(
            case_threshold(1, 1),
            Err(ExponentError::NoWreathTower { n: 1 })
        ));
    }

    #[test]
    fn threshold_symbolic_identity() {
        // 1/(2mn) - 5/(mn+1) = -(9mn-1)/(2mn(mn+1)) for all mn >= 2.
        for mn in 2..200i64 {
            let lhs = rat(1, 2 * mn) - rat(5, mn + 1);
            let rhs = -Rat::new((9 * mn - 1).into(), (2 * mn * (mn + 1)).into());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn dodecic_regular_tower_error() {
        // m = 1, n = 6, a = 1/3, t = 1/2 - 1/12, e = 1/2 lands in case (i)
        // and the generic term 1 - 2/7 dominates.
        let b = budget(1, 6, rat(1, 3), rat(1, 2) - rat(1, 12), rat(1, 2));
        assert_eq!(b.case(), Case::One);
        assert_eq!(error_exponent(&b).0, rat(5, 7));
    }

    #[test]
    fn sextic_torsion_improved_error() {
        // m = 1, n = 3, a = 1/2, t = 174/625, e = 1/2: case (ii), and the
        // cutoff-optimized block gives 2(1 + 174/625)/5 = 1598/3125 = 0.51136.
        let b = budget(1, 3, rat(1, 2), rat(174, 625), rat(1, 2));
        assert_eq!(b.case(), Case::Two);
        let got = error_exponent(&b);
        assert_eq!(got.0, rat(1598, 3125));
        assert_eq!(crate::rat::format_decimal(&got.0, 5), "0.51136");
        assert_eq!(
            got.0,
            rat(2, 5) * (rat_int(1) + truncated_delta())
        );
    }

    #[test]
    fn case_one_generic_shape() {
        // With t = 1/2 - 1/(2mn), e = 3/4 and a below threshold, the answer is
        // max(3/4, 1 - 2/(mn+1)).
        for (m, n, a) in [(1u32, 2u32, rat(1, 20)), (1, 6, rat(1, 3)), (2, 3, rat(1, 4))] {
            let thr = case_threshold(m, n).unwrap().0;
            assert!(a <= thr);
            let mn = m as i64 * n as i64;
            let b = budget(m, n, a, default_torsion_exponent(m, n), rat(3, 4));
            assert_eq!(b.case(), Case::One);
            let want = crate::rat::max_rat([rat(3, 4), rat_int(1) - rat(2, mn + 1)]).unwrap();
            assert_eq!(error_exponent(&b).0, want);
        }
    }

    #[test]
    fn cutoff_is_two_fifths() {
        let b = budget(1, 3, rat(1, 2), rat(1, 2) - rat(1, 6), rat(3, 4));
        assert_eq!(optimal_cutoff_exponent(&b).unwrap().0, rat(2, 5));
        let b = budget(2, 5, rat(3, 2), rat(1, 2) - rat(1, 20), rat(3, 4));
        assert_eq!(optimal_cutoff_exponent(&b).unwrap().0, rat(2, 5));
        let b = budget(1, 6, rat(1, 3), rat(5, 12), rat(1, 2));
        match optimal_cutoff_exponent(&b) {
            Err(ExponentError::CutoffImmaterial { suggested }) => {
                assert_eq!(suggested.0, rat(1, 2))
            }
            other => panic!("expected immaterial cutoff, got {other:?}"),
        }
    }

    #[test]
    fn budget_validation() {
        assert!(ExponentBudget::new(1, 3, rat(2, 1), rat(1, 4), rat(1, 2)).is_err());
        assert!(ExponentBudget::new(1, 3, rat(1, 2), rat(3, 4), rat(1, 2)).is_err());
        assert!(ExponentBudget::new(1, 3, rat(1, 2), rat(1, 4), rat(5, 4)).is_err());
        assert!(ExponentBudget::new(0, 3, rat(1, 2), rat(1, 4), rat(1, 2)).is_err());
    }

    #[test]
    fn klueners_constant_pinned() {
        assert_eq!(klueners_expected_error().0, rat(5, 6));
    }
}
