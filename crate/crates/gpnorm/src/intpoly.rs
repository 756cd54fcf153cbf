//! Dense univariate polynomials over the integers: exact division, gcd by a
//! primitive remainder sequence, squarefree decomposition, and cyclotomic
//! polynomials. Coefficients are `BigInt` so gcd chains cannot overflow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Coefficients in ascending order; the invariant is `coeffs.last() != 0`
/// unless the polynomial is zero (empty vector).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    pub coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPoly {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPoly {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> IntPoly {
        IntPoly { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Content: gcd of the coefficients (non-negative).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        IntPoly::new(out)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact division; returns `None` if `other` does not divide `self`
    /// over the integers.
    pub fn exact_div(&self, other: &IntPoly) -> Option<IntPoly> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.degree() < other.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dq = self.degree() - other.degree();
        let mut quot = vec![BigInt::zero(); dq + 1];
        let lead = other.leading();
        for k in (0..=dq).rev() {
            let top = rem[k + other.degree()].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                rem[k + j] -= &q * b;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(quot))
    }

    /// Pseudo-remainder of `self` by `other` (`lead(other)^k · self mod other`).
    fn pseudo_rem(&self, other: &IntPoly) -> IntPoly {
        let d = other.degree();
        let lead = other.leading().clone();
        let mut rem = self.clone();
        while !rem.is_zero() && rem.degree() >= d {
            let shift = rem.degree() - d;
            let top = rem.leading().clone();
            let mut next = rem.scale(&lead).coeffs;
            for (j, b) in other.coeffs.iter().enumerate() {
                next[shift + j] -= &top * b;
            }
            rem = IntPoly::new(next);
        }
        rem
    }

    /// Evaluate at an integer point.
    pub fn eval_i64(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }
}

/// Primitive gcd via a primitive polynomial remainder sequence; the result
/// is primitive with positive leading coefficient.
pub fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    let ca = a.content();
    let cb = b.content();
    let cg = ca.gcd(&cb);
    let mut f = a.primitive();
    let mut g = b.primitive();
    if f.degree() < g.degree() {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_zero() {
        let r = f.pseudo_rem(&g).primitive();
        f = g;
        g = r;
    }
    f.primitive().scale(&cg)
}

/// Squarefree part `F / gcd(F, F′)`, primitive with positive leading
/// coefficient; same root set with all multiplicities 1.
pub fn squarefree_part(f: &IntPoly) -> IntPoly {
    let fp = f.primitive();
    if fp.degree() == 0 {
        return IntPoly::from_i64(&[1]);
    }
    let g = gcd(&fp, &fp.derivative());
    fp.exact_div(&g).expect("gcd divides").primitive()
}

/// Yun decomposition: returns `[(G_1, 1), (G_2, 2), …]` with
/// `F = c · ∏ G_i^i`, each `G_i` squarefree and pairwise coprime
/// (factors with `G_i = 1` are omitted).
pub fn squarefree_decomposition(f: &IntPoly) -> Vec<(IntPoly, u32)> {
    let fp = f.primitive();
    if fp.degree() == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    let df = fp.derivative();
    let a0 = gcd(&fp, &df);
    let mut b = fp.exact_div(&a0).expect("gcd divides");
    let mut c = df.exact_div(&a0).expect("gcd divides");
    let mut i = 1u32;
    loop {
        let d = c.sub(&b.derivative());
        let g = gcd(&b, &d);
        if g.degree() > 0 {
            out.push((g.clone(), i));
        }
        b = b.exact_div(&g).expect("gcd divides");
        c = d.exact_div(&g).expect("gcd divides");
        if b.degree() == 0 {
            break;
        }
        i += 1;
    }
    out
}

/// The N-th cyclotomic polynomial, by recursive division of `X^N − 1`.
pub fn cyclotomic(n: u64) -> IntPoly {
    assert!(n >= 1);
    if n == 1 {
        return IntPoly::from_i64(&[-1, 1]);
    }
    let mut coeffs = vec![BigInt::zero(); n as usize + 1];
    coeffs[0] = BigInt::from(-1);
    coeffs[n as usize] = BigInt::from(1);
    let mut result = IntPoly::new(coeffs);
    for d in 1..n {
        if n % d == 0 {
            let phi = cyclotomic(d);
            result = result.exact_div(&phi).expect("cyclotomic divides");
        }
    }
    result
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut phi = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            phi -= phi / p;
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_div_and_mul_round_trip() {
        let a = IntPoly::from_i64(&[1, 2, 1]); // (1+x)^2
        let b = IntPoly::from_i64(&[1, 1]);
        assert_eq!(a.exact_div(&b).unwrap(), b);
        assert_eq!(b.mul(&b), a);
        assert!(IntPoly::from_i64(&[1, 0, 1]).exact_div(&b).is_none());
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&IntPoly::from_i64(&[1, 2, 1])), IntPoly::from_i64(&[1, 1]));
        assert_eq!(squarefree_part(&IntPoly::from_i64(&[0, 1, 0, 1])), IntPoly::from_i64(&[0, 1, 0, 1]));
        assert_eq!(squarefree_part(&IntPoly::from_i64(&[1, 2])), IntPoly::from_i64(&[1, 2]));
    }

    #[test]
    fn yun_decomposition_recovers_multiplicities() {
        // (1+x)^2 (2+x)^3 (3+x)
        let f = IntPoly::from_i64(&[1, 1])
            .mul(&IntPoly::from_i64(&[1, 1]))
            .mul(&IntPoly::from_i64(&[2, 1]))
            .mul(&IntPoly::from_i64(&[2, 1]))
            .mul(&IntPoly::from_i64(&[2, 1]))
            .mul(&IntPoly::from_i64(&[3, 1]));
        let dec = squarefree_decomposition(&f);
        assert_eq!(dec.len(), 3);
        assert_eq!(dec[0], (IntPoly::from_i64(&[3, 1]), 1));
        assert_eq!(dec[1], (IntPoly::from_i64(&[1, 1]), 2));
        assert_eq!(dec[2], (IntPoly::from_i64(&[2, 1]), 3));
    }

    #[test]
    fn gcd_of_coprime_is_constant() {
        let a = IntPoly::from_i64(&[1, 1]);
        let b = IntPoly::from_i64(&[1, 0, 1]);
        assert_eq!(gcd(&a, &b).degree(), 0);
    }

    #[test]
    fn cyclotomic_small_orders() {
        assert_eq!(cyclotomic(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2), IntPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(3), IntPoly::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
        for n in 1..=30u64 {
            assert_eq!(cyclotomic(n).degree() as u64, euler_phi(n));
        }
    }

    #[test]
    fn phi_values() {
        let expect = [1u64, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4, 12, 6, 8];
        for (i, &e) in expect.iter().enumerate() {
            assert_eq!(euler_phi(i as u64 + 1), e);
        }
    }
}
