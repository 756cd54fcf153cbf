//! Scalar abstraction for the root finder's precision ladder: native f64 at
//! 53 bits, arbitrary-precision floats above that.

use astro_float::{BigFloat, RoundingMode};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

const RM: RoundingMode = RoundingMode::ToEven;

/// The real-arithmetic interface the solver needs. Values carry their own
/// precision; `prec` arguments matter only at construction.
pub trait Real: Clone + PartialEq + std::fmt::Debug {
    fn from_f64(prec: u32, x: f64) -> Self;
    fn from_bigint(prec: u32, x: &BigInt) -> Self;
    fn to_f64(&self) -> f64;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn abs(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn lt(&self, o: &Self) -> bool;
    /// Unit roundoff `u = 2^{1-prec}` used in running error bounds.
    fn unit_roundoff(prec: u32) -> f64;
}

impl Real for f64 {
    fn from_f64(_prec: u32, x: f64) -> f64 {
        x
    }
    fn from_bigint(_prec: u32, x: &BigInt) -> f64 {
        x.to_f64().unwrap_or(f64::INFINITY)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn add(&self, o: &f64) -> f64 {
        self + o
    }
    fn sub(&self, o: &f64) -> f64 {
        self - o
    }
    fn mul(&self, o: &f64) -> f64 {
        self * o
    }
    fn div(&self, o: &f64) -> f64 {
        self / o
    }
    fn neg(&self) -> f64 {
        -self
    }
    fn abs(&self) -> f64 {
        f64::abs(*self)
    }
    fn sqrt(&self) -> f64 {
        f64::sqrt(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn lt(&self, o: &f64) -> bool {
        self < o
    }
    fn unit_roundoff(_prec: u32) -> f64 {
        f64::EPSILON / 2.0
    }
}

/// Arbitrary-precision real backed by `astro_float::BigFloat`.
#[derive(Clone, Debug)]
pub struct BigReal {
    v: BigFloat,
    prec: usize,
}

impl PartialEq for BigReal {
    fn eq(&self, o: &BigReal) -> bool {
        self.v.cmp(&o.v) == Some(0)
    }
}

impl Real for BigReal {
    fn from_f64(prec: u32, x: f64) -> BigReal {
        BigReal { v: BigFloat::from_f64(x, prec as usize), prec: prec as usize }
    }

    fn from_bigint(prec: u32, x: &BigInt) -> BigReal {
        // Horner over 32-bit digits at enough precision to stay exact, then
        // one rounding to the working precision.
        let bits = x.magnitude().bits() as usize + 64;
        let work = bits.max(prec as usize);
        let digits = x.magnitude().to_u32_digits();
        let base = BigFloat::from_f64(4294967296.0, work);
        let mut acc = BigFloat::from_f64(0.0, work);
        for &d in digits.iter().rev() {
            acc = acc.mul(&base, work, RM);
            acc = acc.add(&BigFloat::from_f64(d as f64, work), work, RM);
        }
        if x.is_negative() {
            acc = acc.neg();
        }
        let one = BigFloat::from_f64(1.0, prec as usize);
        BigReal { v: acc.mul(&one, prec as usize, RM), prec: prec as usize }
    }

    fn to_f64(&self) -> f64 {
        if self.v.is_zero() {
            return 0.0;
        }
        let sign = match self.v.sign() {
            Some(astro_float::Sign::Neg) => -1.0,
            _ => 1.0,
        };
        let words = match self.v.mantissa_digits() {
            Some(w) if !w.is_empty() => w,
            _ => return f64::NAN,
        };
        let exp = self.v.exponent().unwrap_or(0) as i32;
        // mantissa is a fraction in [1/2, 1): top word is the most significant
        let top = words[words.len() - 1] as f64 / 18446744073709551616.0;
        let next = if words.len() >= 2 {
            words[words.len() - 2] as f64 / 18446744073709551616.0 / 18446744073709551616.0
        } else {
            0.0
        };
        sign * (top + next) * (exp as f64).exp2()
    }

    fn add(&self, o: &BigReal) -> BigReal {
        let p = self.prec.max(o.prec);
        BigReal { v: self.v.add(&o.v, p, RM), prec: p }
    }
    fn sub(&self, o: &BigReal) -> BigReal {
        let p = self.prec.max(o.prec);
        BigReal { v: self.v.sub(&o.v, p, RM), prec: p }
    }
    fn mul(&self, o: &BigReal) -> BigReal {
        let p = self.prec.max(o.prec);
        BigReal { v: self.v.mul(&o.v, p, RM), prec: p }
    }
    fn div(&self, o: &BigReal) -> BigReal {
        let p = self.prec.max(o.prec);
        BigReal { v: self.v.div(&o.v, p, RM), prec: p }
    }
    fn neg(&self) -> BigReal {
        BigReal { v: self.v.neg(), prec: self.prec }
    }
    fn abs(&self) -> BigReal {
        BigReal { v: self.v.abs(), prec: self.prec }
    }
    fn sqrt(&self) -> BigReal {
        BigReal { v: self.v.sqrt(self.prec, RM), prec: self.prec }
    }
    fn is_zero(&self) -> bool {
        self.v.is_zero()
    }
    fn lt(&self, o: &BigReal) -> bool {
        self.v.cmp(&o.v) == Some(-1)
    }
    fn unit_roundoff(prec: u32) -> f64 {
        (1.0 - prec as f64).exp2()
    }
}

/// Complex number over any [`Real`].
#[derive(Clone, Debug, PartialEq)]
pub struct Cx<R> {
    pub re: R,
    pub im: R,
}

impl<R: Real> Cx<R> {
    pub fn new(re: R, im: R) -> Cx<R> {
        Cx { re, im }
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Cx<R> {
        Cx { re: R::from_f64(prec, re), im: R::from_f64(prec, im) }
    }

    pub fn zero(prec: u32) -> Cx<R> {
        Cx::from_f64(prec, 0.0, 0.0)
    }

    pub fn add(&self, o: &Cx<R>) -> Cx<R> {
        Cx { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &Cx<R>) -> Cx<R> {
        Cx { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn mul(&self, o: &Cx<R>) -> Cx<R> {
        Cx {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn div(&self, o: &Cx<R>) -> Cx<R> {
        let d = o.norm_sqr();
        let num = self.mul(&o.conj());
        Cx { re: num.re.div(&d), im: num.im.div(&d) }
    }

    pub fn conj(&self) -> Cx<R> {
        Cx { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn neg(&self) -> Cx<R> {
        Cx { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn norm_sqr(&self) -> R {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> R {
        self.norm_sqr().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_complex_f64(&self) -> num_complex::Complex<f64> {
        num_complex::Complex::new(self.re.to_f64(), self.im.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn bigreal_round_trips_f64() {
        for x in [0.0, 1.0, -2.25, 1e-30, 3.141592653589793, -1e20] {
            let b = BigReal::from_f64(106, x);
            assert_eq!(b.to_f64(), x, "x = {x}");
        }
    }

    #[test]
    fn bigreal_from_bigint_exact() {
        let x = BigInt::parse_bytes(b"-123456789012345678901234567890", 10).unwrap();
        let b = BigReal::from_bigint(160, &x);
        // value/10^29 should match in f64
        let approx = b.to_f64() / 1e29;
        assert!((approx + 1.2345678901234568).abs() < 1e-12, "{approx}");
    }

    #[test]
    fn bigreal_arithmetic_beats_f64() {
        // (1 + 2^-60)^2 - 1 - 2^-59 = 2^-120, invisible at 53 bits
        let p = 212;
        let eps = BigReal::from_f64(p, (-60f64).exp2());
        let one = BigReal::from_f64(p, 1.0);
        let x = one.add(&eps);
        let y = x.mul(&x).sub(&one).sub(&eps).sub(&eps);
        let expect = (-120f64).exp2();
        assert!((y.to_f64() - expect).abs() < 1e-50, "got {}", y.to_f64());
    }

    #[test]
    fn complex_division() {
        let a: Cx<f64> = Cx::from_f64(53, 3.0, 4.0);
        let b: Cx<f64> = Cx::from_f64(53, 1.0, -2.0);
        let q = a.div(&b);
        let r = q.mul(&b);
        assert!((r.re - 3.0).abs() < 1e-14 && (r.im - 4.0).abs() < 1e-14);
        let big: Cx<BigReal> = Cx::from_f64(106, 3.0, 4.0);
        let bigb: Cx<BigReal> = Cx::from_f64(106, 1.0, -2.0);
        let r2 = big.div(&bigb).mul(&bigb).to_complex_f64();
        assert!((r2.re - 3.0).abs() < 1e-14 && (r2.im - 4.0).abs() < 1e-14);
    }

    #[test]
    fn sqrt_and_abs() {
        let z: Cx<BigReal> = Cx::from_f64(106, -3.0, 4.0);
        assert!((z.abs().to_f64() - 5.0).abs() < 1e-14);
    }
}
