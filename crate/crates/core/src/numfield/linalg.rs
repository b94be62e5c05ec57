//! Exact integer and rational linear algebra at the tiny sizes this crate
//! needs (matrices up to ~10 x 10): Hermite and Smith normal forms, kernels,
//! rational solves, and lattice intersections.

use crate::rat::{rat_big, Rat};
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IMat = Vec<Vec<BigInt>>;

pub fn imat_zero(rows: usize, cols: usize) -> IMat {
    vec![vec![BigInt::zero(); cols]; rows]
}

pub fn imat_identity(n: usize) -> IMat {
    let mut m = imat_zero(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    m
}

pub fn imat_from_i64(rows: &[&[i64]]) -> IMat {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn imat_mul(a: &IMat, b: &IMat) -> IMat {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    let mut out = imat_zero(n, m);
    for i in 0..n {
        assert_eq!(a[i].len(), k);
        for j in 0..m {
            let mut s = BigInt::zero();
            for (l, brow) in b.iter().enumerate() {
                s += &a[i][l] * &brow[j];
            }
            out[i][j] = s;
        }
    }
    out
}

pub fn imat_vec(a: &IMat, v: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn imat_transpose(a: &IMat) -> IMat {
    let (n, m) = (a.len(), a[0].len());
    let mut out = imat_zero(m, n);
    for i in 0..n {
        for j in 0..m {
            out[j][i] = a[i][j].clone();
        }
    }
    out
}

pub fn imat_scale(a: &IMat, c: &BigInt) -> IMat {
    a.iter()
        .map(|r| r.iter().map(|x| x * c).collect())
        .collect()
}

/// Row-style Hermite normal form of the lattice spanned by the rows.
/// Returns a full-rank upper-triangular basis (pivot on the diagonal,
/// entries above each pivot reduced into [0, pivot)). Panics unless the
/// rows span a rank-`cols` lattice.
pub fn hnf_rows(rows: &IMat, cols: usize) -> IMat {
    let mut work: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| !r.iter().all(|x| x.is_zero()))
        .cloned()
        .collect();
    let mut basis: Vec<Vec<BigInt>> = Vec::with_capacity(cols);
    for col in 0..cols {
        // gather rows with support starting at `col`
        loop {
            let mut idx: Option<usize> = None;
            for (i, r) in work.iter().enumerate() {
                if !r[col].is_zero() {
                    match idx {
                        None => idx = Some(i),
                        Some(j) => {
                            if r[col].magnitude() < work[j][col].magnitude() {
                                idx = Some(i)
                            }
                        }
                    }
                }
            }
            let Some(pivot_i) = idx else {
                panic!("rows do not span a full-rank lattice (column {col})");
            };
            let pivot = work.swap_remove(pivot_i);
            let mut done = true;
            let mut next_work = Vec::with_capacity(work.len() + 1);
            for mut r in work.into_iter() {
                if !r[col].is_zero() {
                    let q = r[col].div_floor(&pivot[col]);
                    for (x, p) in r.iter_mut().zip(&pivot) {
                        *x -= &q * p;
                    }
                    if !r[col].is_zero() {
                        done = false;
                    }
                }
                if !r.iter().all(|x| x.is_zero()) {
                    next_work.push(r);
                }
            }
            next_work.push(pivot);
            work = next_work;
            if done {
                break;
            }
        }
        // the unique row with nonzero entry at `col` becomes the basis row
        let pos = work
            .iter()
            .position(|r| !r[col].is_zero())
            .expect("pivot row");
        let mut pivot = work.remove(pos);
        if pivot[col].is_negative() {
            for x in pivot.iter_mut() {
                *x = -x.clone();
            }
        }
        basis.push(pivot);
    }
    assert!(
        work.iter().all(|r| r.iter().all(|x| x.is_zero())),
        "leftover rows after triangularization"
    );
    // reduce entries above each pivot; ascending pivot order keeps already
    // reduced columns untouched (pivot rows have zeros to their left)
    for i in 0..cols {
        for j in (i + 1)..cols {
            let q = basis[i][j].div_floor(&basis[j][j]);
            if !q.is_zero() {
                let prow = basis[j].clone();
                for (x, p) in basis[i].iter_mut().zip(&prow) {
                    *x -= &q * p;
                }
            }
        }
    }
    basis
}

/// Reduce `v` against an HNF basis; returns the residue (zero iff member).
pub fn hnf_reduce(h: &IMat, v: &[BigInt]) -> Vec<BigInt> {
    let mut v = v.to_vec();
    for j in 0..h.len() {
        if v[j].is_zero() {
            continue;
        }
        let q = v[j].div_floor(&h[j][j]);
        if !q.is_zero() {
            for (x, p) in v.iter_mut().zip(&h[j]) {
                *x -= &q * p;
            }
        }
    }
    v
}

pub fn hnf_contains(h: &IMat, v: &[BigInt]) -> bool {
    hnf_reduce(h, v).iter().all(|x| x.is_zero())
}

pub fn hnf_det(h: &IMat) -> BigInt {
    h.iter()
        .enumerate()
        .fold(BigInt::one(), |acc, (i, row)| acc * &row[i])
}

/// Basis of the integer kernel {x : x A = 0} (row vectors), via column HNF
/// on the stacked [A | I] transform trick.
pub fn left_kernel(a: &IMat) -> IMat {
    let n = a.len();
    let m = a[0].len();
    // augmented rows [a_i | e_i]; row-reduce the left block to echelon
    let mut rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut r = a[i].clone();
            for j in 0..n {
                r.push(if i == j { BigInt::one() } else { BigInt::zero() });
            }
            r
        })
        .collect();
    let mut pivot_row = 0usize;
    for col in 0..m {
        loop {
            let mut idx: Option<usize> = None;
            for (i, r) in rows.iter().enumerate().skip(pivot_row) {
                if !r[col].is_zero() {
                    match idx {
                        None => idx = Some(i),
                        Some(j) => {
                            if r[col].magnitude() < rows[j][col].magnitude() {
                                idx = Some(i)
                            }
                        }
                    }
                }
            }
            let Some(pi) = idx else { break };
            rows.swap(pivot_row, pi);
            let mut all_clear = true;
            for i in (pivot_row + 1)..n {
                if !rows[i][col].is_zero() {
                    let q = rows[i][col].div_floor(&rows[pivot_row][col]);
                    let prow = rows[pivot_row].clone();
                    for (x, p) in rows[i].iter_mut().zip(&prow) {
                        *x -= &q * p;
                    }
                    if !rows[i][col].is_zero() {
                        all_clear = false;
                    }
                }
            }
            if all_clear {
                pivot_row += 1;
                break;
            }
        }
        if pivot_row == n {
            break;
        }
    }
    rows[pivot_row..]
        .iter()
        .map(|r| r[m..].to_vec())
        .collect()
}

/// Intersection of two full-rank lattices given by row bases.
pub fn lattice_intersect(a: &IMat, b: &IMat) -> IMat {
    let n = a[0].len();
    // solve x A = y B; kernel of [A; -B] stacked as rows gives (x | y)
    let mut stacked: IMat = Vec::new();
    for r in a {
        stacked.push(r.clone());
    }
    for r in b {
        stacked.push(r.iter().map(|x| -x.clone()).collect());
    }
    let ker = left_kernel(&stacked);
    let combos: IMat = ker
        .iter()
        .map(|k| {
            let mut v = vec![BigInt::zero(); n];
            for (i, arow) in a.iter().enumerate() {
                for j in 0..n {
                    v[j] += &k[i] * &arow[j];
                }
            }
            v
        })
        .collect();
    hnf_rows(&combos, n)
}

/// Solutions y of N y ≡ 0 (mod d), as a row-basis of the solution lattice.
pub fn congruence_solution_lattice(n_mat: &IMat, d: &BigInt) -> IMat {
    let rows = n_mat.len();
    let cols = n_mat[0].len();
    // {(y, k) : y Nt + k (d I) = 0} -- work with row vectors y of length cols
    let nt = imat_transpose(n_mat);
    let mut stacked: IMat = Vec::new();
    for r in &nt {
        stacked.push(r.clone());
    }
    for i in 0..rows {
        let mut r = vec![BigInt::zero(); rows];
        r[i] = d.clone();
        stacked.push(r);
    }
    let ker = left_kernel(&stacked);
    let combos: IMat = ker.iter().map(|k| k[..cols].to_vec()).collect();
    hnf_rows(&combos, cols)
}

/// Determinant by fraction-free elimination (small n).
pub fn imat_det(a: &IMat) -> BigInt {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .map(|r| r.iter().map(|x| rat_big(x.clone())).collect())
        .collect();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return BigInt::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det *= m[col][col].clone();
        let inv = m[col][col].clone().recip();
        for j in col..n {
            let scaled = m[col][j].clone() * inv.clone();
            m[col][j] = scaled;
        }
        for i in (col + 1)..n {
            let factor = m[i][col].clone();
            if factor.is_zero() {
                continue;
            }
            for j in col..n {
                let s = m[col][j].clone() * factor.clone();
                m[i][j] -= s;
            }
        }
    }
    assert!(det.denom().is_one());
    det.numer().clone()
}

/// Solve x A = b exactly over the rationals (A square nonsingular, row form).
pub fn solve_rat(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = (0..n).map(|j| a[j][i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(p, col);
        let inv = m[col][col].clone().recip();
        for j in col..=n {
            let scaled = m[col][j].clone() * inv.clone();
            m[col][j] = scaled;
        }
        for i in 0..n {
            if i != col && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..=n {
                    let s = m[col][j].clone() * f.clone();
                    m[i][j] -= s;
                }
            }
        }
    }
    Some((0..n).map(|i| m[i][n].clone()).collect())
}

/// Smith normal form: returns (U, D, V) with U A V = D diagonal,
/// d_i | d_{i+1}, and U, V unimodular.
pub fn smith_normal_form(a: &IMat) -> (IMat, IMat, IMat) {
    let rows = a.len();
    let cols = a[0].len();
    let mut d = a.clone();
    let mut u = imat_identity(rows);
    let mut v = imat_identity(cols);
    let n = rows.min(cols);
    for t in 0..n {
        loop {
            // find the nonzero entry of smallest magnitude in the block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !d[i][j].is_zero()
                        && best
                            .map(|(bi, bj)| d[i][j].magnitude() < d[bi][bj].magnitude())
                            .unwrap_or(true)
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return (u, d, v);
            };
            d.swap(t, bi);
            u.swap(t, bi);
            if bj != t {
                for row in d.iter_mut() {
                    row.swap(t, bj);
                }
                for row in v.iter_mut() {
                    row.swap(t, bj);
                }
            }
            let mut dirty = false;
            for i in (t + 1)..rows {
                if !d[i][t].is_zero() {
                    let q = d[i][t].div_floor(&d[t][t]);
                    if !q.is_zero() {
                        let trow = d[t].clone();
                        for (x, p) in d[i].iter_mut().zip(&trow) {
                            *x -= &q * p;
                        }
                        let urow = u[t].clone();
                        for (x, p) in u[i].iter_mut().zip(&urow) {
                            *x -= &q * p;
                        }
                    }
                    if !d[i][t].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in (t + 1)..cols {
                if !d[t][j].is_zero() {
                    let q = d[t][j].div_floor(&d[t][t]);
                    if !q.is_zero() {
                        for row in d.iter_mut() {
                            let s = &q * &row[t];
                            row[j] -= s;
                        }
                        for row in v.iter_mut() {
                            let s = &q * &row[t];
                            row[j] -= s;
                        }
                    }
                    if !d[t][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                // entry must also divide the rest of the block
                let mut fixed = true;
                'scan: for i in (t + 1)..rows {
                    for j in (t + 1)..cols {
                        if !(&d[i][j] % &d[t][t]).is_zero() {
                            // fold row i into row t to shrink the pivot
                            let trow_add = d[i].clone();
                            for (x, p) in d[t].iter_mut().zip(&trow_add) {
                                *x += p;
                            }
                            let urow_add = u[i].clone();
                            for (x, p) in u[t].iter_mut().zip(&urow_add) {
                                *x += p;
                            }
                            fixed = false;
                            break 'scan;
                        }
                    }
                }
                if fixed {
                    if d[t][t].is_negative() {
                        for x in d[t].iter_mut() {
                            *x = -x.clone();
                        }
                        for x in u[t].iter_mut() {
                            *x = -x.clone();
                        }
                    }
                    break;
                }
            }
        }
    }
    (u, d, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_membership() {
        let rows = imat_from_i64(&[&[4, 2, 0], &[0, 6, 2], &[2, 0, 8], &[6, 8, 10]]);
        let h = hnf_rows(&rows, 3);
        // every original row is a member; random combos too
        for r in &rows {
            assert!(hnf_contains(&h, r));
        }
        let combo: Vec<BigInt> = (0..3)
            .map(|j| &rows[0][j] * 3 - &rows[1][j] * 5 + &rows[2][j] * 2)
            .collect();
        assert!(hnf_contains(&h, &combo));
        // pivots positive, triangular
        for i in 0..3 {
            assert!(h[i][i] > BigInt::zero());
            for j in 0..i {
                assert!(h[i][j].is_zero());
            }
        }
    }

    #[test]
    fn hnf_is_canonical() {
        // entries above each pivot sit in [0, pivot); row order is irrelevant
        let mut state = 12345u64;
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 33) % 41) as i64 - 20
        };
        for _ in 0..50 {
            let mut rows: IMat = (0..3)
                .map(|_| (0..3).map(|_| BigInt::from(next())).collect())
                .collect();
            // guarantee full rank with scaled identity rows
            for i in 0..3 {
                let mut r = alloc::vec![BigInt::zero(); 3];
                r[i] = BigInt::from(41);
                rows.push(r);
            }
            let h = hnf_rows(&rows, 3);
            for i in 0..3 {
                for j in (i + 1)..3 {
                    assert!(h[i][j] >= BigInt::zero() && h[i][j] < h[j][j]);
                }
            }
            // idempotent and order-insensitive
            assert_eq!(hnf_rows(&h, 3), h);
            let mut shuffled = rows.clone();
            shuffled.reverse();
            assert_eq!(hnf_rows(&shuffled, 3), h);
        }
    }

    #[test]
    fn kernel_and_intersection() {
        let a = imat_from_i64(&[&[2, 0], &[0, 3]]);
        let b = imat_from_i64(&[&[3, 0], &[0, 2]]);
        let i = lattice_intersect(&a, &b);
        assert_eq!(hnf_det(&i), BigInt::from(36));

        let m = imat_from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = left_kernel(&m);
        assert_eq!(k.len(), 1);
        let combo: Vec<BigInt> = (0..3).map(|j| &k[0][0] * &m[0][j] + &k[0][1] * &m[1][j]).collect();
        assert!(combo.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn smith_form_of_relation_matrix() {
        let a = imat_from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let (u, d, v) = smith_normal_form(&a);
        let uav = imat_mul(&imat_mul(&u, &a), &v);
        assert_eq!(uav, d);
        assert_eq!(d[0][0], BigInt::from(2));
        assert_eq!(d[1][1], BigInt::from(6));
        assert_eq!(d[2][2], BigInt::from(12));
        assert_eq!(imat_det(&u).magnitude(), BigInt::from(1u32).magnitude());
        assert_eq!(imat_det(&v).magnitude(), BigInt::from(1u32).magnitude());
        // random matrices: U A V = D, diagonal, divisibility chain
        for seed in 0..20u64 {
            let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
            let mut next = || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 33) % 21) as i64 - 10
            };
            let m: IMat = (0..3)
                .map(|_| (0..4).map(|_| BigInt::from(next())).collect())
                .collect();
            let (u, d, v) = smith_normal_form(&m);
            assert_eq!(imat_mul(&imat_mul(&u, &m), &v), d);
            for i in 0..3 {
                for j in 0..4 {
                    if i != j {
                        assert!(d[i][j].is_zero());
                    }
                }
            }
            for i in 0..2 {
                if !d[i][i].is_zero() && !d[i + 1][i + 1].is_zero() {
                    assert!((&d[i + 1][i + 1] % &d[i][i]).is_zero());
                }
            }
        }
    }

    #[test]
    fn congruence_lattice() {
        // y with [[1,1],[0,2]] y ≡ 0 mod 4
        let n = imat_from_i64(&[&[1, 1], &[0, 2]]);
        let d = BigInt::from(4);
        let sol = congruence_solution_lattice(&n, &d);
        // check: every basis row satisfies the congruence
        for row in &sol {
            let prod = imat_vec(&n, row);
            for x in prod {
                assert!((&x % &d).is_zero());
            }
        }
        // index = 4*4 / det for 2x2: |det| should divide 16
        let det = hnf_det(&sol);
        assert!((BigInt::from(16) % det).is_zero());
    }

    #[test]
    fn det_values() {
        assert_eq!(
            imat_det(&imat_from_i64(&[&[2, 1], &[7, 4]])),
            BigInt::from(1)
        );
        assert_eq!(
            imat_det(&imat_from_i64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])),
            BigInt::from(-3)
        );
    }
}
