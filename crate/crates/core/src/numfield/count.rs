//! Exact ideal counting by a multiplicative sieve over the splitting data.

use alloc::vec;
use alloc::vec::Vec;

use super::cyclotomic::splits_completely;
use super::{BaseField, FieldKind};
use crate::primes::{kronecker, Sieve};

/// How a rational prime contributes local ideal counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitType {
    /// g primes of residue degree 1 (g = degree).
    Split,
    Inert,
    Ramified,
}

pub fn split_type(field: &BaseField, p: u64) -> SplitType {
    match field.kind {
        FieldKind::Quadratic => match kronecker(field.disc, p) {
            1 => SplitType::Split,
            -1 => SplitType::Inert,
            _ => SplitType::Ramified,
        },
        FieldKind::CyclicCubic => {
            if field.conductor % p == 0 {
                SplitType::Ramified
            } else if splits_completely(field.period_subgroup().unwrap(), p) {
                SplitType::Split
            } else {
                SplitType::Inert
            }
        }
    }
}

/// Number of ideals of norm p^k above p.
fn local_count(deg: usize, ty: SplitType, k: u32) -> u64 {
    match (deg, ty) {
        (2, SplitType::Split) => k as u64 + 1,
        (2, SplitType::Inert) => u64::from(k % 2 == 0),
        (2, SplitType::Ramified) => 1,
        (3, SplitType::Split) => ((k as u64 + 1) * (k as u64 + 2)) / 2,
        (3, SplitType::Inert) => u64::from(k % 3 == 0),
        (3, SplitType::Ramified) => 1,
        _ => unreachable!(),
    }
}

/// Dirichlet coefficients a_K(n) for 1 <= n < limit.
pub fn ideal_count_coeffs(field: &BaseField, limit: usize, sieve: &Sieve) -> Vec<u32> {
    assert!(sieve.limit + 1 >= limit, "sieve too small for {limit}");
    let deg = field.degree();
    let mut counts = vec![0u32; limit];
    if limit > 1 {
        counts[1] = 1;
    }
    for p in sieve.primes() {
        let p = p as usize;
        if p >= limit {
            break;
        }
        let ty = split_type(field, p as u64);
        // fold the local Euler factor in: process p-free indices m and add
        // contributions at m * p^k (indices divisible by p are exactly the
        // ones being written, never read)
        let mut pk = p;
        let mut k = 1u32;
        while pk < limit {
            let a = local_count(deg, ty, k) as u32;
            if a != 0 {
                let mut m = 1usize;
                while m * pk < limit {
                    if m % p != 0 && counts[m] != 0 {
                        counts[m * pk] += a * counts[m];
                    }
                    m += 1;
                }
            }
            pk *= p;
            k += 1;
        }
    }
    counts
}

/// Exact number of integral ideals with norm strictly below `x`.
pub fn count_ideals(field: &BaseField, x: u64, sieve: &Sieve) -> u64 {
    if x < 2 {
        return 0;
    }
    let coeffs = ideal_count_coeffs(field, x as usize, sieve);
    coeffs.iter().map(|&c| c as u64).sum()
}

/// Cumulative counts at each grid cutoff (norm < cutoff), single sieve pass.
pub fn count_ideals_grid(field: &BaseField, cutoffs: &[u64], sieve: &Sieve) -> Vec<u64> {
    let max = cutoffs.iter().copied().max().unwrap_or(0);
    if max < 2 {
        return vec![0; cutoffs.len()];
    }
    let coeffs = ideal_count_coeffs(field, max as usize, sieve);
    let mut prefix = vec![0u64; coeffs.len() + 1];
    for (i, &c) in coeffs.iter().enumerate() {
        prefix[i + 1] = prefix[i] + c as u64;
    }
    cutoffs
        .iter()
        .map(|&c| prefix[(c as usize).min(coeffs.len())])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::ideal::split_prime;
    use crate::numfield::BaseField;

    #[test]
    fn gaussian_ideal_count() {
        let k = BaseField::new_quadratic(-4);
        let sieve = Sieve::new(64);
        // norms 1,2,4,5,5,8,9,10,10 below 11
        assert_eq!(count_ideals(&k, 11, &sieve), 9);
        assert_eq!(count_ideals(&k, 2, &sieve), 1);
    }

    #[test]
    fn golden_field_count() {
        let k = BaseField::new_quadratic(5);
        let sieve = Sieve::new(64);
        // only the unit ideal and (2) with norm 4 lie below 5
        assert_eq!(count_ideals(&k, 5, &sieve), 2);
    }

    #[test]
    fn coefficients_match_split_data() {
        // brute-force comparison: a(n) from the sieve equals the number of
        // ideals of norm n assembled from prime powers directly
        let sieve = Sieve::new(200);
        for k in [
            BaseField::new_quadratic(-4),
            BaseField::new_quadratic(40),
            BaseField::new_cyclic_cubic(7, 0),
            BaseField::new_cyclic_cubic(9, 0),
        ] {
            let coeffs = ideal_count_coeffs(&k, 120, &sieve);
            for n in 2..120u64 {
                let mut expect = 1u64;
                for (p, e) in sieve.factor(n) {
                    let parts = split_prime(&k, p);
                    // count multisets of prime ideals above p with norm p^e
                    let mut ways = 0u64;
                    let fs: alloc::vec::Vec<u32> =
                        parts.iter().map(|&(_, _, f)| f).collect();
                    count_ways(&fs, e, &mut ways);
                    expect *= ways;
                }
                assert_eq!(coeffs[n as usize] as u64, expect, "{} at {n}", k.label());
            }
        }

        fn count_ways(fs: &[u32], target: u32, ways: &mut u64) {
            fn rec(fs: &[u32], left: u32, ways: &mut u64) {
                if fs.is_empty() {
                    if left == 0 {
                        *ways += 1;
                    }
                    return;
                }
                let f = fs[0];
                let mut used = 0;
                while used <= left {
                    rec(&fs[1..], left - used, ways);
                    used += f;
                }
            }
            rec(fs, target, ways);
        }
    }

    #[test]
    fn grid_prefixes() {
        let k = BaseField::new_quadratic(-4);
        let sieve = Sieve::new(2000);
        let grid = [11u64, 101, 1001];
        let by_grid = count_ideals_grid(&k, &grid, &sieve);
        for (i, &x) in grid.iter().enumerate() {
            assert_eq!(by_grid[i], count_ideals(&k, x, &sieve));
        }
    }
}
