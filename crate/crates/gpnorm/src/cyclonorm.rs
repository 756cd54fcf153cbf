//! Exact and floating-point computation of the cyclotomic norm
//! `Δ_p(a) = |∏_{t=1}^{p−1} P_a(ζ^t)|`, the signed coset product over a
//! subgroup `G ⊂ F_p^×`, and the zero-sum counting identity
//! `p·N = f^k + (p−1)·Δ`.
//!
//! The signed product `D = ∏_t P_a(ζ^t)` is a rational integer with
//! `|D| ≤ (n+1)^{p−1}`. It is computed modulo word-size primes
//! `q ≡ 1 (mod p)` — evaluating at an element of multiplicative order `p`
//! in `F_q` — and reconstructed exactly by the Chinese Remainder Theorem
//! with a symmetric lift.

use crate::arith::{
    big_ln, center_mod, crt_prime_pool, element_of_order, is_prime, powmod, sum_pairwise,
    Montgomery,
};
use crate::error::{Error, Result};
use crate::lacunary::ExponentVector;
use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use rayon::prelude::*;

/// Exact norm `Δ_p(a)` together with its logarithmic mean.
#[derive(Clone, Debug)]
pub struct NormResult {
    pub delta_abs: BigUint,
    /// `(1/(p−1))·log Δ_p(a)`; `-inf` when the norm vanishes.
    pub log_mean: f64,
    pub p: u64,
    pub a: ExponentVector,
}

/// The signed product of Gaussian-period sums over the cosets `F_p^×/G`.
///
/// Satisfies `|delta_signed|^f = Δ_p(a)` for the exponent vector derived
/// from `G` (see `lattice::period_exponents`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetProduct {
    pub delta_signed: BigInt,
    pub p: u64,
    /// Order of the subgroup `G`.
    pub f: u64,
    /// Number of cosets, `k = (p−1)/f`.
    pub k: u64,
}

fn ensure_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Smallest element of `F_p^×` of multiplicative order exactly `f`.
pub fn smallest_element_of_order(p: u64, f: u64) -> Result<u64> {
    ensure_prime(p)?;
    if f == 0 || (p - 1) % f != 0 {
        return Err(Error::BadSubgroupOrder { f, pm1: p - 1 });
    }
    if f == 1 {
        return Ok(1);
    }
    let prime_divisors: Vec<u64> = {
        let mut ds = Vec::new();
        let mut m = f;
        let mut q = 2;
        while q * q <= m {
            if m % q == 0 {
                ds.push(q);
                while m % q == 0 {
                    m /= q;
                }
            }
            q += 1;
        }
        if m > 1 {
            ds.push(m);
        }
        ds
    };
    for u in 2..p {
        if powmod(u, f, p) == 1 && prime_divisors.iter().all(|&q| powmod(u, f / q, p) != 1) {
            return Ok(u);
        }
    }
    unreachable!("F_p^x is cyclic, so elements of order f | p-1 exist");
}

/// Residues of `a` modulo `p`, in `[0, p)`.
fn reduce_entries(a: &ExponentVector, p: u64) -> Vec<u64> {
    a.entries().iter().map(|&ai| ai.rem_euclid(p as i64) as u64).collect()
}

/// `∏_{t=1}^{p−1} P_a(ω^t) mod q`, where `ω` has order `p` in `F_q`.
fn delta_mod_q(abar: &[u64], p: u64, q: u64) -> u64 {
    let mont = Montgomery::new(q);
    let w = mont.to_mont(element_of_order(q, p));
    let mut table = vec![mont.one(); p as usize];
    for k in 1..p as usize {
        table[k] = mont.mul(table[k - 1], w);
    }
    let one = mont.one();
    let mut idx: Vec<u64> = vec![0; abar.len()];
    let mut acc = one;
    for _t in 1..p {
        let mut s = one;
        for (j, &aj) in abar.iter().enumerate() {
            // idx[j] tracks t·a_j mod p incrementally
            let next = idx[j] + aj;
            idx[j] = if next >= p { next - p } else { next };
            s = mont.add(s, table[idx[j] as usize]);
        }
        acc = mont.mul(acc, s);
    }
    mont.from_mont(acc)
}

/// Incremental CRT with symmetric lift: the unique `X ≡ r_i (mod q_i)` with
/// `|X| ≤ M/2`, `M = ∏ q_i`.
fn crt_signed(residues: &[u64], moduli: &[u64]) -> BigInt {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (&r, &q) in residues.iter().zip(moduli) {
        let cur = {
            let rem = (&x % q) + q;
            (rem % q).to_u64_digits().1.first().copied().unwrap_or(0)
        };
        let diff = (r + q - cur) % q;
        let m_mod_q = {
            let rem = (&m % q).to_u64_digits().1;
            rem.first().copied().unwrap_or(0)
        };
        let t = crate::arith::mulmod(diff, powmod(m_mod_q, q - 2, q), q);
        x += BigInt::from(t) * &m;
        m *= q;
    }
    if &x * 2 > m {
        x -= &m;
    }
    x
}

/// The exact norm `Δ_p(a)` as a non-negative big integer.
pub fn delta_abs_exact(a: &ExponentVector, p: u64) -> Result<BigUint> {
    ensure_prime(p)?;
    let n = a.n();
    let bits = (p - 1) as f64 * ((n + 1) as f64).log2() + 2.0;
    let pool = crt_prime_pool(p, bits)?;
    let abar = reduce_entries(a, p);
    let residues: Vec<u64> = pool.par_iter().map(|&q| delta_mod_q(&abar, p, q)).collect();
    let d = crt_signed(&residues, &pool);
    Ok(d.magnitude().clone())
}

/// True iff the cyclotomic integer attached to `(a, p)` is an algebraic unit.
pub fn is_unit(a: &ExponentVector, p: u64) -> Result<bool> {
    Ok(delta_abs_exact(a, p)?.is_one())
}

/// Entries reduced to the symmetric range `(−p/2, p/2]`; `Δ_p` is unchanged.
pub fn canonical_reduce(a: &ExponentVector, p: u64) -> Result<ExponentVector> {
    ensure_prime(p)?;
    ExponentVector::new(a.entries().iter().map(|&ai| center_mod(ai, p)).collect())
}

/// Floating-point `(1/(p−1)) Σ_t log|P_a(ζ^t)|` by direct summation with
/// fixed-order pairwise accumulation.
///
/// Any factor smaller than `10⁻¹²` in modulus triggers the exact zero test;
/// a true zero is reported as [`Error::DeltaZero`].
pub fn log_mean(a: &ExponentVector, p: u64) -> Result<f64> {
    ensure_prime(p)?;
    let abar = reduce_entries(a, p);
    let table: Vec<(f64, f64)> = (0..p)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * (k as f64) / (p as f64);
            (th.cos(), th.sin())
        })
        .collect();
    let mut idx: Vec<u64> = vec![0; abar.len()];
    let mut logs = Vec::with_capacity((p - 1) as usize);
    let mut exact_zero_checked = false;
    for _t in 1..p {
        let mut re = 1.0f64;
        let mut im = 0.0f64;
        for (j, &aj) in abar.iter().enumerate() {
            let next = idx[j] + aj;
            idx[j] = if next >= p { next - p } else { next };
            let (c, s) = table[idx[j] as usize];
            re += c;
            im += s;
        }
        let m = (re * re + im * im).sqrt();
        if m < 1e-12 && !exact_zero_checked {
            if delta_abs_exact(a, p)?.is_zero() {
                return Err(Error::DeltaZero);
            }
            exact_zero_checked = true;
        }
        logs.push(m.ln());
    }
    Ok(sum_pairwise(&logs) / (p - 1) as f64)
}

/// Exact norm plus the logarithmic mean derived from it.
pub fn norm(a: &ExponentVector, p: u64) -> Result<NormResult> {
    let delta_abs = delta_abs_exact(a, p)?;
    let log_mean = if delta_abs.is_zero() {
        f64::NEG_INFINITY
    } else {
        big_ln(&delta_abs) / (p - 1) as f64
    };
    Ok(NormResult { delta_abs, log_mean, p, a: a.clone() })
}

/// The subgroup `G ⊂ F_p^×` of order `f`, as a sorted element list.
pub fn subgroup_of_order(p: u64, f: u64) -> Result<Vec<u64>> {
    let u = smallest_element_of_order(p, f)?;
    let mut g = Vec::with_capacity(f as usize);
    let mut x = 1u64;
    for _ in 0..f {
        g.push(x);
        x = ((x as u128 * u as u128) % p as u128) as u64;
    }
    g.sort_unstable();
    Ok(g)
}

/// Smallest representative per coset of `F_p^× / G`, ascending.
pub fn coset_representatives(p: u64, f: u64) -> Result<Vec<u64>> {
    let g = subgroup_of_order(p, f)?;
    let mut seen = vec![false; p as usize];
    let mut reps = Vec::with_capacity(((p - 1) / f) as usize);
    for r in 1..p {
        if !seen[r as usize] {
            reps.push(r);
            for &x in &g {
                seen[((r as u128 * x as u128) % p as u128) as usize] = true;
            }
        }
    }
    Ok(reps)
}

/// The signed coset product `Δ = ∏_{t ∈ F_p^×/G} (Σ_{g∈G} ζ^{tg})`, exactly.
///
/// The product is independent of the chosen representatives; the smallest
/// representative per coset is used. `|Δ| ≤ f^k`.
pub fn delta_signed_cosets(p: u64, f: u64) -> Result<CosetProduct> {
    ensure_prime(p)?;
    if f == 0 || (p - 1) % f != 0 {
        return Err(Error::BadSubgroupOrder { f, pm1: p - 1 });
    }
    let k = (p - 1) / f;
    let g = subgroup_of_order(p, f)?;
    let reps = coset_representatives(p, f)?;
    let bits = k as f64 * (f as f64).log2() + 2.0;
    let pool = crt_prime_pool(p, bits)?;
    let residues: Vec<u64> = pool
        .par_iter()
        .map(|&q| {
            let mont = Montgomery::new(q);
            let w = mont.to_mont(element_of_order(q, p));
            let mut table = vec![mont.one(); p as usize];
            for i in 1..p as usize {
                table[i] = mont.mul(table[i - 1], w);
            }
            let mut acc = mont.one();
            for &r in &reps {
                let mut s = 0u64;
                for &x in &g {
                    let e = ((r as u128 * x as u128) % p as u128) as usize;
                    s = mont.add(s, table[e]);
                }
                acc = mont.mul(acc, s);
            }
            mont.from_mont(acc)
        })
        .collect();
    let delta_signed = crt_signed(&residues, &pool);
    Ok(CosetProduct { delta_signed, p, f, k })
}

/// `#{(x_1,…,x_k) ∈ G^k : A_1 x_1 + ⋯ + A_k x_k = 0 in F_p}` for a complete
/// set of coset representatives `A_i`.
///
/// Counted exactly by propagating the distribution of partial sums over
/// `F_p`, which enumerates the same set as the `f^k`-fold loop without
/// materializing it. The caller may verify `p·count = f^k + (p−1)·Δ`.
pub fn zero_sum_count(p: u64, f: u64, reps: &[u64]) -> Result<BigUint> {
    ensure_prime(p)?;
    if f == 0 || (p - 1) % f != 0 {
        return Err(Error::BadSubgroupOrder { f, pm1: p - 1 });
    }
    let k = (p - 1) / f;
    if reps.len() as u64 != k {
        return Err(Error::InvalidReps);
    }
    let g = subgroup_of_order(p, f)?;
    // distinct-coset check via canonical (minimum) orbit element
    let mut ids = std::collections::BTreeSet::new();
    for &r in reps {
        if r == 0 || r >= p {
            return Err(Error::InvalidReps);
        }
        let id = g.iter().map(|&x| ((r as u128 * x as u128) % p as u128) as u64).min().unwrap();
        if !ids.insert(id) {
            return Err(Error::InvalidReps);
        }
    }
    let mut dist = vec![BigUint::zero(); p as usize];
    dist[0] = BigUint::one();
    for &a_i in reps {
        let mut next = vec![BigUint::zero(); p as usize];
        for (v, c) in dist.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &x in &g {
                let w = (v as u128 + a_i as u128 * x as u128) % p as u128;
                next[w as usize] += c;
            }
        }
        dist = next;
    }
    Ok(dist[0].clone())
}

/// Check the exact identity `p·count = f^k + (p−1)·Δ` for the given
/// representatives; returns `(count, Δ, holds)`.
pub fn counting_identity(p: u64, f: u64, reps: &[u64]) -> Result<(BigUint, BigInt, bool)> {
    let count = zero_sum_count(p, f, reps)?;
    let coset = delta_signed_cosets(p, f)?;
    let lhs = BigInt::from_biguint(Sign::Plus, count.clone()) * BigInt::from(p);
    let rhs = BigInt::from(f).pow(coset.k as u32) + BigInt::from(p - 1) * &coset.delta_signed;
    Ok((count, coset.delta_signed, lhs == rhs))
}
