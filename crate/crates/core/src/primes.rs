//! Small-integer number theory: sieves, factorization, Kronecker symbols,
//! modular arithmetic, and square roots mod p.

use alloc::vec;
use alloc::vec::Vec;

/// Smallest-prime-factor sieve up to `limit` (inclusive).
#[derive(Clone, Debug)]
pub struct Sieve {
    pub limit: usize,
    spf: Vec<u32>,
}

impl Sieve {
    pub fn new(limit: usize) -> Self {
        let mut spf = vec![0u32; limit + 1];
        for i in 2..=limit {
            if spf[i] == 0 {
                let mut j = i;
                while j <= limit {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        Sieve { limit, spf }
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && n <= self.limit as u64 && self.spf[n as usize] as u64 == n
    }

    pub fn smallest_factor(&self, n: u64) -> u64 {
        self.spf[n as usize] as u64
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        (2..=self.limit as u64).filter(move |&n| self.is_prime(n))
    }

    /// `(p, e)` pairs, ascending. `n` must be within the sieve.
    pub fn factor(&self, mut n: u64) -> Vec<(u64, u32)> {
        assert!(n as usize <= self.limit, "factor out of sieve range");
        let mut out = Vec::new();
        while n > 1 {
            let p = self.spf[n as usize] as u64;
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        out
    }

    pub fn is_squarefree(&self, n: u64) -> bool {
        self.factor(n).iter().all(|&(_, e)| e == 1)
    }

    pub fn moebius(&self, n: u64) -> i32 {
        let f = self.factor(n);
        if f.iter().any(|&(_, e)| e > 1) {
            0
        } else if f.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Trial division for integers beyond a sieve (norms of enumerated elements).
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

pub fn mod_pow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    assert!(modulus < 1 << 32 || modulus < u64::MAX / modulus);
    base %= modulus;
    let mut acc = 1u64 % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, modulus);
        }
        base = mulmod(base, base, modulus);
        exp >>= 1;
    }
    acc
}

pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let (mut r0, mut r1) = (m, a.rem_euclid(m));
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        None
    } else {
        Some(t0.rem_euclid(m))
    }
}

/// Legendre symbol (a/p) for odd prime p.
pub fn legendre(a: i64, p: u64) -> i32 {
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    if mod_pow(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Kronecker symbol (a/n) for n >= 1.
pub fn kronecker(a: i64, n: u64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut a = a;
    let mut n = n;
    let mut result = 1i32;
    // factor out twos of n
    let mut two_part = 0u32;
    while n % 2 == 0 {
        n /= 2;
        two_part += 1;
    }
    if two_part > 0 {
        if a % 2 == 0 {
            return 0;
        }
        // (a/2) = 1 if a = ±1 mod 8 else -1
        let a8 = a.rem_euclid(8);
        let s2 = if a8 == 1 || a8 == 7 { 1 } else { -1 };
        if two_part % 2 == 1 {
            result *= s2;
        }
    }
    // now n odd: Jacobi
    a = a.rem_euclid(n as i64);
    let mut nn = n as i64;
    let mut aa = a;
    while aa != 0 {
        while aa % 2 == 0 {
            aa /= 2;
            let r = nn % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        core::mem::swap(&mut aa, &mut nn);
        if aa % 4 == 3 && nn % 4 == 3 {
            result = -result;
        }
        aa %= nn;
    }
    if nn == 1 {
        result
    } else {
        0
    }
}

/// Square root mod an odd prime by Tonelli-Shanks with a deterministic
/// non-residue scan. Returns r with r^2 = a (mod p), the smaller of the pair.
pub fn sqrt_mod_p(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if p == 2 {
        return Some(a);
    }
    if a == 0 {
        return Some(0);
    }
    if mod_pow(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        let r = mod_pow(a, (p + 1) / 4, p);
        return Some(r.min(p - r));
    }
    // write p-1 = q * 2^s
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while mod_pow(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = mod_pow(z, q, p);
    let mut t = mod_pow(a, q, p);
    let mut r = mod_pow(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mulmod(tt, tt, p);
            i += 1;
        }
        let b = mod_pow(c, 1 << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    Some(r.min(p - r))
}

/// Multiplicative order of `a` modulo `m` (gcd(a, m) = 1).
pub fn mult_order(a: u64, m: u64) -> u64 {
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = mulmod(x, a, m);
        k += 1;
        assert!(k <= m, "element not a unit");
    }
    k
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn euler_phi(n: u64) -> u64 {
    let mut phi = n;
    for (p, _) in factor_u64(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_basics() {
        let s = Sieve::new(100);
        assert!(s.is_prime(97));
        assert!(!s.is_prime(91));
        assert_eq!(s.factor(60), vec![(2, 2), (3, 1), (5, 1)]);
        assert_eq!(s.moebius(30), -1);
        assert_eq!(s.moebius(9), 0);
        assert!(s.is_squarefree(threes()));
        fn threes() -> u64 {
            51
        }
    }

    #[test]
    fn kronecker_matches_legendre() {
        for &p in &[3u64, 5, 7, 11, 13, 97] {
            for a in -20i64..20 {
                assert_eq!(kronecker(a, p), legendre(a, p), "a={a} p={p}");
            }
        }
        // (d/2) rules for d = odd discriminants
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(-7, 2), 1);
        assert_eq!(kronecker(-4, 2), 0);
    }

    #[test]
    fn sqrt_mod_primes() {
        for &p in &[3u64, 5, 13, 17, 29, 101, 257, 1009] {
            for a in 0..p {
                if let Some(r) = sqrt_mod_p(a, p) {
                    assert_eq!(mulmod(r, r, p), a % p);
                } else {
                    assert_eq!(mod_pow(a, (p - 1) / 2, p), p - 1);
                }
            }
        }
    }

    #[test]
    fn orders_and_phi() {
        assert_eq!(mult_order(2, 7), 3);
        assert_eq!(mult_order(3, 7), 6);
        assert_eq!(euler_phi(63), 36);
    }
}
