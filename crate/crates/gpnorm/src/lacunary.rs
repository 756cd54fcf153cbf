//! Exponent vectors `a ∈ Z^n`, the sparse polynomials
//! `P_a = 1 + X^{a_1} + ⋯ + X^{a_n}` and their multivariate analogue
//! `P_A = 1 + Σ_j X_1^{a_1j} ⋯ X_m^{a_mj}`, and evaluation on the unit torus.
//!
//! Everything here is immutable after construction and safe to share across
//! threads.

use crate::error::{Error, Result};
use num_complex::Complex;
use std::collections::BTreeMap;
use std::fmt;

/// The exponent vector `a = (a_1, …, a_n)`; `a_0 = 0` is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    entries: Vec<i64>,
}

impl ExponentVector {
    pub fn new(entries: Vec<i64>) -> Result<ExponentVector> {
        if entries.is_empty() {
            return Err(Error::EmptyExponents);
        }
        Ok(ExponentVector { entries })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// Number of terms `n` (not counting the implicit constant 1).
    pub fn n(&self) -> usize {
        self.entries.len()
    }

    /// Sup-norm `|a| = max_i |a_i|`, over the entries only.
    pub fn sup_norm(&self) -> u64 {
        self.entries.iter().map(|&a| a.unsigned_abs()).max().unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&a| a == 0)
    }

    /// Scale by `t`, checking for overflow.
    pub fn scale(&self, t: i64) -> Result<ExponentVector> {
        let entries = self
            .entries
            .iter()
            .map(|&a| a.checked_mul(t).ok_or(Error::Overflow("exponent scale")))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExponentVector { entries })
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// The dense integer polynomial `X^e · P_a` together with its provenance.
///
/// `dense[k]` is the coefficient of `X^k`; the constant term is non-zero,
/// the coefficients sum to `n + 1`, and `deg ≤ 2|a|` for `a ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LacunaryPoly {
    pub source: ExponentVector,
    /// The shift `e = max{0, −a_1, …, −a_n}` clearing negative exponents.
    pub shift: u64,
    pub dense: Vec<i64>,
}

impl LacunaryPoly {
    pub fn degree(&self) -> usize {
        self.dense.len() - 1
    }

    /// Leading coefficient `p_0 ≥ 1`.
    pub fn leading(&self) -> i64 {
        *self.dense.last().unwrap()
    }

    /// Number of non-zero coefficients.
    pub fn terms(&self) -> usize {
        self.dense.iter().filter(|&&c| c != 0).count()
    }
}

/// Clear denominators and collect `X^e · P_a` as a dense coefficient list.
///
/// Repeated exponents merge into larger coefficients, e.g. `a = (1,1)`
/// yields `1 + 2X`.
pub fn normalize(a: &ExponentVector) -> LacunaryPoly {
    let e = a.entries.iter().map(|&ai| (-ai).max(0)).max().unwrap_or(0);
    let top = a.entries.iter().map(|&ai| ai + e).max().unwrap().max(e);
    let mut dense = vec![0i64; top as usize + 1];
    dense[e as usize] += 1; // the implicit a_0 = 0 term
    for &ai in &a.entries {
        dense[(ai + e) as usize] += 1;
    }
    while dense.len() > 1 && *dense.last().unwrap() == 0 {
        dense.pop();
    }
    LacunaryPoly { source: a.clone(), shift: e as u64, dense }
}

/// Exact fractional part of `a · x` for integer `a` and the f64 value `x`.
///
/// Decomposes `x = m · 2^s` exactly and reduces `a · m` modulo `2^{-s}` in
/// 128-bit integers, so the result is accurate to ~1 ulp even when `a · x`
/// is far outside the exactly-representable range.
pub(crate) fn frac_mul(a: i64, x: f64) -> f64 {
    if a == 0 || x == 0.0 {
        return 0.0;
    }
    let bits = x.to_bits();
    let exp_field = ((bits >> 52) & 0x7ff) as i64;
    let frac_field = bits & ((1u64 << 52) - 1);
    let (mant, exp) = if exp_field == 0 {
        (frac_field, -1074i64) // subnormal
    } else {
        (frac_field | (1 << 52), exp_field - 1075)
    };
    let sign = if x < 0.0 { -1i128 } else { 1i128 };
    let prod: i128 = sign * a as i128 * mant as i128; // |prod| < 2^116
    if exp >= 0 {
        return 0.0; // a·x is an exact integer
    }
    let s = -exp as u32;
    let frac = if s <= 126 {
        let modulus = 1i128 << s;
        let r = prod.rem_euclid(modulus);
        (r as f64) * (-(s as f64)).exp2()
    } else {
        ((prod as f64) * (-(s as f64)).exp2()).rem_euclid(1.0)
    };
    if frac >= 1.0 {
        frac - 1.0
    } else {
        frac
    }
}

/// `1 + Σ_j exp(2πi · a_j · x)`, the factor of `Δ_p(a)` at `x = t/p`.
///
/// Arguments are reduced modulo 1 before the complex exponential, so the
/// result is accurate to well within `4n` ulp at any `|a|`.
pub fn evaluate_on_torus(a: &ExponentVector, x: f64) -> Complex<f64> {
    let mut acc = Complex::new(1.0, 0.0);
    for &aj in &a.entries {
        let theta = 2.0 * std::f64::consts::PI * frac_mul(aj, x);
        acc += Complex::new(theta.cos(), theta.sin());
    }
    acc
}

/// An integer matrix `A` with `m` rows (variables) and `n` columns
/// (non-constant terms), defining
/// `P_A = 1 + Σ_{j=1}^n X_1^{a_1j} X_2^{a_2j} ⋯ X_m^{a_mj}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentMatrix {
    pub rows: usize,
    pub cols: usize,
    /// Row-major entries, `entries[i * cols + j] = a_{ij}`.
    pub entries: Vec<i64>,
}

impl ExponentMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<i64>) -> Result<ExponentMatrix> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(ExponentMatrix { rows, cols, entries })
    }

    pub fn identity(n: usize) -> ExponentMatrix {
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        ExponentMatrix { rows: n, cols: n, entries }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.cols + j]
    }

    /// The sparse polynomial `P_A` in `rows` variables.
    pub fn poly(&self) -> MultiPoly {
        let mut p = MultiPoly::zero(self.rows);
        p.add_term(vec![0; self.rows], 1);
        for j in 0..self.cols {
            let exps: Vec<i64> = (0..self.rows).map(|i| self.at(i, j)).collect();
            p.add_term(exps, 1);
        }
        p
    }
}

/// Substitution `X_i ↦ X^{ν_i}`: returns `a'` with `a'_j = Σ_i ν_i a_{ij}`,
/// so that `P_{a'}(X) = P_A(X^{ν_1}, …, X^{ν_m})` as Laurent polynomials.
pub fn compose(a: &ExponentMatrix, nu: &[i64]) -> Result<ExponentVector> {
    if nu.len() != a.rows {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows, substitution vector has {} entries",
            a.rows,
            nu.len()
        )));
    }
    let mut out = Vec::with_capacity(a.cols);
    for j in 0..a.cols {
        let mut s: i64 = 0;
        for i in 0..a.rows {
            let term = nu[i].checked_mul(a.at(i, j)).ok_or(Error::Overflow("compose"))?;
            s = s.checked_add(term).ok_or(Error::Overflow("compose"))?;
        }
        out.push(s);
    }
    ExponentVector::new(out)
}

/// A sparse multivariate Laurent polynomial with integer coefficients.
///
/// Terms are keyed by exponent vector; zero coefficients are pruned. This is
/// only as general as the toolkit needs: no products or gcds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<i64>, i64>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> MultiPoly {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: i64) -> MultiPoly {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn add_term(&mut self, exps: Vec<i64>, coeff: i64) {
        assert_eq!(exps.len(), self.nvars);
        if coeff == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of (merged) non-zero terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Evaluate at the torus point `e(x) = (e^{2πi x_1}, …, e^{2πi x_n})`.
    pub fn eval_torus(&self, x: &[f64]) -> Complex<f64> {
        debug_assert_eq!(x.len(), self.nvars);
        let mut acc = Complex::new(0.0, 0.0);
        for (exps, &c) in &self.terms {
            let mut frac = 0.0f64;
            for (k, &e) in exps.iter().enumerate() {
                frac += frac_mul(e, x[k]);
            }
            let theta = 2.0 * std::f64::consts::PI * frac.fract();
            acc += (c as f64) * Complex::new(theta.cos(), theta.sin());
        }
        acc
    }

    /// Substitute `X_i ↦ X^{a_i}` and return the merged Laurent coefficients
    /// of the resulting one-variable polynomial as `(min_exp, dense)`.
    pub fn substitute_powers(&self, a: &[i64]) -> Result<(i64, Vec<i64>)> {
        if a.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "{} variables vs {} exponents",
                self.nvars,
                a.len()
            )));
        }
        let mut merged: BTreeMap<i64, i64> = BTreeMap::new();
        for (exps, &c) in &self.terms {
            let mut e: i64 = 0;
            for (k, &ek) in exps.iter().enumerate() {
                let t = ek.checked_mul(a[k]).ok_or(Error::Overflow("substitute"))?;
                e = e.checked_add(t).ok_or(Error::Overflow("substitute"))?;
            }
            *merged.entry(e).or_insert(0) += c;
        }
        merged.retain(|_, c| *c != 0);
        if merged.is_empty() {
            return Ok((0, vec![]));
        }
        let lo = *merged.keys().next().unwrap();
        let hi = *merged.keys().last().unwrap();
        let mut dense = vec![0i64; (hi - lo) as usize + 1];
        for (e, c) in merged {
            dense[(e - lo) as usize] = c;
        }
        Ok((lo, dense))
    }

    /// Interpret as `P_A` data: requires constant term 1 and all other
    /// coefficients 1.
    pub fn to_exponent_matrix(&self) -> Option<ExponentMatrix> {
        let zero = vec![0i64; self.nvars];
        if self.terms.get(&zero) != Some(&1) {
            return None;
        }
        let cols: Vec<&Vec<i64>> = self
            .terms
            .iter()
            .filter(|(e, _)| **e != zero)
            .map(|(e, c)| if *c == 1 { Some(e) } else { None })
            .collect::<Option<Vec<_>>>()?;
        if cols.is_empty() {
            return None;
        }
        let mut entries = vec![0i64; self.nvars * cols.len()];
        for (j, e) in cols.iter().enumerate() {
            for i in 0..self.nvars {
                entries[i * cols.len() + j] = e[i];
            }
        }
        Some(ExponentMatrix { rows: self.nvars, cols: cols.len(), entries })
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical text form; `parse_poly` inverts this exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, &c) in &self.terms {
            let neg = c < 0;
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let mag = c.unsigned_abs();
            let factors: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, e)
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if mag != 1 {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Parse the polynomial grammar: monomials separated by `+`/`-`, each an
/// optional integer coefficient with `*`-joined factors `x<k>` or
/// `x<k>^<e>` (`e` may be negative); variables are `x1..xn`; whitespace is
/// ignored.
pub fn parse_poly(text: &str) -> Result<MultiPoly> {
    let src: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
    if src.is_empty() {
        return Err(err(0, "empty polynomial"));
    }
    struct Term {
        sign: i64,
        coeff: Option<i64>,
        exps: BTreeMap<usize, i64>,
    }
    let mut terms: Vec<Term> = Vec::new();
    let mut nvars = 0usize;
    let mut i = 0usize;
    let n = src.len();

    let parse_int = |i: &mut usize, src: &[(usize, char)]| -> Result<i64> {
        let start = *i;
        let mut sign = 1i64;
        if *i < src.len() && (src[*i].1 == '-' || src[*i].1 == '+') {
            if src[*i].1 == '-' {
                sign = -1;
            }
            *i += 1;
        }
        let digits_start = *i;
        let mut val: i64 = 0;
        while *i < src.len() && src[*i].1.is_ascii_digit() {
            val = val
                .checked_mul(10)
                .and_then(|v| v.checked_add(src[*i].1 as i64 - '0' as i64))
                .ok_or(Error::Parse {
                    pos: src[start].0,
                    msg: "integer coefficient out of range (non-integer coefficients are unsupported)".into(),
                })?;
            *i += 1;
        }
        if *i == digits_start {
            return Err(Error::Parse { pos: src[start.min(src.len() - 1)].0, msg: "expected integer".into() });
        }
        Ok(sign * val)
    };

    while i < n {
        let mut sign = 1i64;
        if terms.is_empty() && (src[i].1 == '+' || src[i].1 == '-') {
            if src[i].1 == '-' {
                sign = -1;
            }
            i += 1;
        } else if !terms.is_empty() {
            match src[i].1 {
                '+' => i += 1,
                '-' => {
                    sign = -1;
                    i += 1;
                }
                c => return Err(err(src[i].0, &format!("expected '+' or '-', found '{c}'"))),
            }
        }
        if i >= n {
            return Err(err(text.len(), "dangling sign"));
        }
        let mut term = Term { sign, coeff: None, exps: BTreeMap::new() };
        loop {
            if i < n && src[i].1.is_ascii_digit() {
                if term.coeff.is_some() || !term.exps.is_empty() {
                    return Err(err(src[i].0, "coefficient must come first in a monomial"));
                }
                term.coeff = Some(parse_int(&mut i, &src)?);
            } else if i < n && src[i].1 == 'x' {
                i += 1;
                let k = parse_int(&mut i, &src)?;
                if k < 1 {
                    return Err(err(src[i.min(n - 1)].0, "variable index must be at least 1"));
                }
                let k = k as usize;
                nvars = nvars.max(k);
                let e = if i < n && src[i].1 == '^' {
                    i += 1;
                    parse_int(&mut i, &src)?
                } else {
                    1
                };
                *term.exps.entry(k - 1).or_insert(0) += e;
            } else {
                let pos = if i < n { src[i].0 } else { text.len() };
                return Err(err(pos, "expected coefficient or variable factor"));
            }
            if i < n && src[i].1 == '*' {
                i += 1;
                continue;
            }
            break;
        }
        terms.push(term);
    }

    let nvars = nvars.max(1);
    let mut p = MultiPoly::zero(nvars);
    for t in terms {
        let mut exps = vec![0i64; nvars];
        for (k, e) in t.exps {
            exps[k] = e;
        }
        p.add_term(exps, t.sign * t.coeff.unwrap_or(1));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn normalize_positive_exponents() {
        let p = normalize(&ev(&[1, 3]));
        assert_eq!(p.shift, 0);
        assert_eq!(p.dense, vec![1, 1, 0, 1]); // 1 + X + X^3
    }

    #[test]
    fn normalize_negative_exponent_shifts() {
        // (−1, 2): e = 1, X·P_a = 1 + X + X^3
        let p = normalize(&ev(&[-1, 2]));
        assert_eq!(p.shift, 1);
        assert_eq!(p.dense, vec![1, 1, 0, 1]);
    }

    #[test]
    fn normalize_merges_repeats() {
        let p = normalize(&ev(&[1, 1]));
        assert_eq!(p.dense, vec![1, 2]); // 1 + 2X
        assert_eq!(p.leading(), 2);
    }

    #[test]
    fn normalize_zero_vector() {
        let p = normalize(&ev(&[0, 0]));
        assert_eq!(p.dense, vec![3]);
        assert_eq!(p.shift, 0);
    }

    #[test]
    fn lacunary_invariants_hold() {
        for entries in [vec![1, 3], vec![-1, 2], vec![1, 1], vec![-5, -2, 7], vec![0, 4]] {
            let a = ev(&entries);
            let p = normalize(&a);
            let n = a.n() as i64;
            assert_eq!(p.dense.iter().sum::<i64>(), n + 1);
            assert_ne!(p.dense[0], 0);
            assert!(p.leading() >= 1);
            if !a.is_zero() {
                assert!(p.degree() as u64 <= 2 * a.sup_norm());
            }
            let e = entries.iter().map(|&x| (-x).max(0)).max().unwrap();
            assert_eq!(p.shift as i64, e);
        }
    }

    #[test]
    fn torus_evaluation_examples() {
        // 1 + e^{πi} = 0
        let v = evaluate_on_torus(&ev(&[1]), 0.5);
        assert!(v.norm() < 1e-14);
        // 1 + ω + ω² = 0
        let v = evaluate_on_torus(&ev(&[1, 2]), 1.0 / 3.0);
        assert!(v.norm() < 1e-14);
        // |1 + ζ_7 + ζ_7^3| = √2 by direct complex arithmetic
        let v = evaluate_on_torus(&ev(&[1, 3]), 1.0 / 7.0);
        assert!((v.norm() - 2f64.sqrt()).abs() < 1e-12, "got {}", v.norm());
    }

    #[test]
    fn torus_evaluation_large_exponents() {
        // frac-reduction keeps accuracy at huge |a|
        let a = ev(&[3_000_000_000_000_001]);
        let x = 0.125f64;
        let expect = (2.0 * std::f64::consts::PI * 0.125).cos(); // a·x ≡ a mod 8 → 1/8
        let v = evaluate_on_torus(&a, x);
        assert!((v.re - (1.0 + expect)).abs() < 1e-9);
    }

    #[test]
    fn compose_examples() {
        let id = ExponentMatrix::identity(2);
        assert_eq!(compose(&id, &[3, 5]).unwrap(), ev(&[3, 5]));
        let a = ExponentMatrix::new(2, 2, vec![1, 0, 1, 1]).unwrap(); // rows (1,0),(1,1)
        assert_eq!(compose(&a, &[1, 1]).unwrap(), ev(&[2, 1]));
        let row = ExponentMatrix::new(1, 2, vec![1, 3]).unwrap();
        assert_eq!(compose(&row, &[2]).unwrap(), ev(&[2, 6]));
    }

    #[test]
    fn compose_dimension_mismatch() {
        let id = ExponentMatrix::identity(2);
        assert!(compose(&id, &[1]).is_err());
    }

    #[test]
    fn compose_overflow_is_checked() {
        let row = ExponentMatrix::new(1, 1, vec![i64::MAX]).unwrap();
        assert!(matches!(compose(&row, &[2]), Err(Error::Overflow(_))));
    }

    #[test]
    fn parse_examples() {
        let p = parse_poly("1+x1+x2").unwrap();
        assert_eq!(p.nvars, 2);
        assert_eq!(p.term_count(), 3);
        let m = p.to_exponent_matrix().unwrap();
        assert_eq!((m.rows, m.cols), (2, 2));

        let p = parse_poly("1+x1^2+x2").unwrap();
        let m = p.to_exponent_matrix().unwrap();
        // columns are the monomials x2 and x1^2, in canonical term order
        assert_eq!((m.rows, m.cols), (2, 2));
        let cols: Vec<Vec<i64>> =
            (0..2).map(|j| (0..2).map(|i| m.at(i, j)).collect()).collect();
        assert!(cols.contains(&vec![2, 0]) && cols.contains(&vec![0, 1]));

        let p = parse_poly("1+x1+x1").unwrap();
        assert_eq!(p.to_string(), "1+2*x1");
    }

    #[test]
    fn parse_rejects_bad_syntax() {
        for bad in ["", "1+", "x0", "1++x1", "x1^", "y1", "2.5*x1"] {
            assert!(parse_poly(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn parse_negative_exponents_and_coeffs() {
        let p = parse_poly("-3*x1^-2*x2 + 1").unwrap();
        assert_eq!(p.terms.get(&vec![-2, 1]), Some(&-3));
        // canonical order sorts exponent vectors, so the Laurent term leads
        assert_eq!(p.to_string(), "-3*x1^-2*x2+1");
        assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn modulus_bounded_by_n_plus_1() {
        let a = ev(&[2, -7, 13]);
        for k in 0..100 {
            let x = k as f64 / 100.0;
            assert!(evaluate_on_torus(&a, x).norm() <= a.n() as f64 + 1.0 + 1e-12);
        }
    }

    #[test]
    fn dense_evaluation_reproduces_torus_evaluation() {
        let a = ev(&[-2, 5, 3]);
        let p = normalize(&a);
        for k in 1..40 {
            let x = k as f64 / 40.0;
            let z = Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * x);
            let dense: Complex<f64> =
                p.dense.iter().rev().fold(Complex::new(0.0, 0.0), |acc, &c| acc * z + c as f64);
            let shifted = dense * Complex::from_polar(1.0, -2.0 * std::f64::consts::PI * p.shift as f64 * x);
            let direct = evaluate_on_torus(&a, x);
            assert!((shifted - direct).norm() < 1e-10);
        }
    }

    proptest! {
        #[test]
        fn parse_to_string_round_trip(nterms in 1usize..6, seed in 0u64..10_000) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut p = MultiPoly::zero(3);
            for _ in 0..nterms {
                let exps: Vec<i64> = (0..3).map(|_| rng.gen_range(-4i64..5)).collect();
                let c = rng.gen_range(-9i64..10);
                p.add_term(exps, c);
            }
            if !p.is_zero() {
                let s = p.to_string();
                let q = parse_poly(&s).unwrap();
                // parsing infers nvars from the highest index actually used
                prop_assert_eq!(q.terms.len(), p.terms.len());
                for (e, c) in &q.terms {
                    let mut key = e.clone();
                    key.resize(3, 0);
                    prop_assert_eq!(p.terms.get(&key), Some(c));
                }
            }
        }

        #[test]
        fn torus_modulus_triangle_bound(entries in proptest::collection::vec(-50i64..50, 1..5), x in 0.0f64..1.0) {
            let a = ExponentVector::new(entries).unwrap();
            prop_assert!(evaluate_on_torus(&a, x).norm() <= a.n() as f64 + 1.0 + 1e-12);
        }

        #[test]
        fn compose_identity_is_identity(entries in proptest::collection::vec(-30i64..30, 1..5)) {
            let a = ExponentVector::new(entries.clone()).unwrap();
            let id = ExponentMatrix::identity(entries.len());
            // P_a = P_I(X^{a_1},…,X^{a_n}) ⟺ compose(I, a) = a
            prop_assert_eq!(compose(&id, &entries).unwrap(), a);
        }
    }
}
