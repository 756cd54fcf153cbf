//! Word-size modular arithmetic, deterministic primality, and the pools of
//! auxiliary primes `q ≡ 1 (mod p)` used for multi-modular norm computation.

use crate::error::{Error, Result};
use num_bigint::BigUint;

/// `a * b mod m` without overflow, for any `m < 2^64`.
#[inline]
pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `a^e mod m` by square and multiply.
pub fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    acc
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    gcd_u64(a.unsigned_abs(), b.unsigned_abs()) as i64
}

/// Deterministic Miller–Rabin, valid for all `n < 2^64`.
///
/// Uses the fixed witness set {2,3,5,7,11,13,17,19,23,29,31,37}; no
/// probabilistic acceptance.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes in `[lo, hi]`, ascending.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// Montgomery arithmetic modulo an odd `m < 2^63`.
///
/// Residues are kept in the Montgomery domain; `mul` costs one 64x64->128
/// multiply plus the REDC step, with no hardware division.
#[derive(Clone, Copy)]
pub struct Montgomery {
    pub m: u64,
    ninv: u64, // -m^{-1} mod 2^64
    r2: u64,   // 2^128 mod m
    r1: u64,   // 2^64 mod m (the domain image of 1)
}

impl Montgomery {
    pub fn new(m: u64) -> Montgomery {
        debug_assert!(m & 1 == 1 && m < (1 << 63));
        // Newton iteration for m^{-1} mod 2^64.
        let mut inv = m;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(m.wrapping_mul(inv)));
        }
        let r1 = ((1u128 << 64) % m as u128) as u64;
        let r2 = ((r1 as u128 * r1 as u128) % m as u128) as u64;
        Montgomery { m, ninv: inv.wrapping_neg(), r2, r1 }
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m_ = (t as u64).wrapping_mul(self.ninv);
        let t2 = ((t + m_ as u128 * self.m as u128) >> 64) as u64;
        if t2 >= self.m {
            t2 - self.m
        } else {
            t2
        }
    }

    #[inline]
    pub fn to_mont(&self, a: u64) -> u64 {
        self.redc(a as u128 * self.r2 as u128)
    }

    #[inline]
    pub fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    #[inline]
    pub fn one(&self) -> u64 {
        self.r1
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.m {
            s - self.m
        } else {
            s
        }
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }
}

/// Scan `q = 2kp + 1` for primes until their product exceeds `2^min_bits`.
///
/// The returned pool is ascending and deterministic. Errors if the scan
/// would leave the Montgomery-safe word range.
pub fn crt_prime_pool(p: u64, min_bits: f64) -> Result<Vec<u64>> {
    let mut pool = Vec::new();
    let mut bits = 0.0f64;
    let mut k = 1u64;
    while bits <= min_bits {
        let q = match (2 * k).checked_mul(p).and_then(|x| x.checked_add(1)) {
            Some(q) if q < (1 << 62) => q,
            _ => return Err(Error::PrimePoolExhausted { p }),
        };
        if is_prime(q) {
            bits += (q as f64).log2();
            pool.push(q);
        }
        k += 1;
    }
    Ok(pool)
}

/// An element of multiplicative order exactly `p` modulo the prime
/// `q ≡ 1 (mod p)`: the first `g^{(q-1)/p} ≠ 1` over g = 2, 3, ….
pub fn element_of_order(q: u64, p: u64) -> u64 {
    debug_assert!((q - 1) % p == 0);
    let e = (q - 1) / p;
    for g in 2..q {
        let w = powmod(g, e, q);
        if w != 1 {
            return w;
        }
    }
    unreachable!("q has a primitive root");
}

/// Deterministic pairwise summation; the reduction tree depends only on the
/// slice length, so results are reproducible across thread counts.
pub fn sum_pairwise(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let mid = n / 2;
            sum_pairwise(&xs[..mid]) + sum_pairwise(&xs[mid..])
        }
    }
}

/// Natural logarithm of a positive big integer, accurate to a few ulp.
pub fn big_ln(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 53 {
        let words = x.to_u64_digits();
        let v = if words.is_empty() { 0 } else { words[0] };
        return (v as f64).ln();
    }
    let shift = bits - 53;
    let top: BigUint = x >> shift;
    let m = top.to_u64_digits()[0] as f64;
    m.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Representative of `x mod p` in the symmetric range `(-p/2, p/2]`.
pub fn center_mod(x: i64, p: u64) -> i64 {
    let p = p as i64;
    let mut r = x.rem_euclid(p);
    if 2 * r > p {
        r -= p;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        let slow = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..2000 {
            assert_eq!(is_prime(n), slow(n), "n = {n}");
        }
        assert!(is_prime(2_147_483_647)); // 2^31 - 1
        assert!(!is_prime(2_147_483_649));
    }

    #[test]
    fn montgomery_matches_plain_mulmod() {
        for &m in &[3u64, 97, 1_000_003, (1 << 61) - 1] {
            let mont = Montgomery::new(m);
            for a in [0u64, 1, 2, m - 1, 12345 % m, 987_654_321 % m] {
                for b in [1u64, 7 % m, m - 1, 555_555 % m] {
                    let got = mont.from_mont(mont.mul(mont.to_mont(a), mont.to_mont(b)));
                    assert_eq!(got, mulmod(a, b, m));
                }
            }
            assert_eq!(mont.from_mont(mont.pow(mont.to_mont(3 % m), 40)), powmod(3, 40, m));
        }
    }

    #[test]
    fn prime_pool_product_exceeds_bound() {
        let pool = crt_prime_pool(7, 100.0).unwrap();
        assert!(pool.iter().all(|&q| is_prime(q) && q % 7 == 1));
        let total: f64 = pool.iter().map(|&q| (q as f64).log2()).sum();
        assert!(total > 100.0);
        for &q in &pool {
            let w = element_of_order(q, 7);
            assert_eq!(powmod(w, 7, q), 1);
            assert_ne!(w, 1);
        }
    }

    #[test]
    fn big_ln_matches_f64() {
        let x = BigUint::from(12345678u64);
        assert!((big_ln(&x) - (12345678f64).ln()).abs() < 1e-12);
        let y = BigUint::from(3u64).pow(1000);
        let expect = 1000.0 * 3f64.ln();
        assert!((big_ln(&y) - expect).abs() < 1e-9 * expect);
    }

    #[test]
    fn center_mod_symmetric_range() {
        assert_eq!(center_mod(8, 7), 1);
        assert_eq!(center_mod(6, 7), -1);
        assert_eq!(center_mod(-3, 7), -3);
        assert_eq!(center_mod(10, 4), 2); // p/2 itself stays positive
        for x in -50..50 {
            let r = center_mod(x, 9);
            assert!(2 * r <= 9 && 2 * r > -9);
            assert_eq!((x - r).rem_euclid(9), 0);
        }
    }
}
