//! Logarithmic Mahler measures: exact univariate values through Jensen's
//! formula over certified roots, multivariate values by a nested scheme
//! whose innermost integral is again exact Jensen, sublevel-set volumes,
//! and the error in the substitution limit `m(P(X^{a_1},…,X^{a_n})) → m(P)`.
//!
//! The nested scheme integrates the innermost variable exactly for each
//! outer node (the integrand's log-singularities live on a codimension-1
//! set, which the inner Jensen step removes), leaving a bounded outer
//! integrand sampled by randomized shifted rank-1 lattice rules. A flat
//! Monte Carlo sampler is kept as a cross-check path only.

use crate::arith::{big_ln, sum_pairwise};
use crate::error::{Error, Result};
use crate::intpoly::IntPoly;
use crate::lacunary::{frac_mul, ExponentVector, MultiPoly};
use crate::lattice::Subgroup;
use crate::rootfind::{find_roots_classified, roots_complex_f64, CircleClass, SolverConfig};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// How a Mahler measure value was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Exact up to root certification: `error_bound ≤ 10⁻⁹·(1 + |value|)`.
    ExactJensen,
    NestedQuadrature,
}

/// A Mahler measure value with an error bound.
#[derive(Clone, Debug)]
pub struct MahlerEstimate {
    pub value: f64,
    pub error_bound: f64,
    pub method: Method,
    pub samples_used: u64,
}

/// Exact logarithmic Mahler measure of a one-variable integer polynomial:
/// `log p₀ + Σ_i log max{1, |α_i|}` over the certified root set.
pub fn mahler_univariate(f: &IntPoly) -> Result<MahlerEstimate> {
    mahler_univariate_cfg(f, &SolverConfig::default())
}

pub fn mahler_univariate_cfg(f: &IntPoly, cfg: &SolverConfig) -> Result<MahlerEstimate> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() == 0 {
        let value = big_ln(f.leading().magnitude());
        return Ok(MahlerEstimate {
            value,
            error_bound: f64::EPSILON * value.abs(),
            method: Method::ExactJensen,
            samples_used: 0,
        });
    }
    let (rs, classes) = find_roots_classified(f, cfg)?;
    let mut value = big_ln(rs.leading.magnitude());
    let mut error = 4.0 * f64::EPSILON * (1.0 + value.abs());
    for (entry, class) in rs.roots.iter().zip(&classes) {
        let mult = entry.multiplicity as f64;
        match class {
            CircleClass::Outside => {
                value += mult * entry.modulus_minus_one.ln_1p();
                let denom = (1.0 + entry.modulus_minus_one - entry.radius).max(f64::MIN_POSITIVE);
                error += mult * (entry.radius / denom + f64::EPSILON);
            }
            CircleClass::Inside | CircleClass::RootOfUnity(_) => {}
            CircleClass::OnCircleOther => {
                // treated as measure-0 contribution, with its uncertainty
                error += mult * (entry.modulus_minus_one.abs() + entry.radius);
            }
        }
    }
    if error > 1e-9 * (1.0 + value.abs()) {
        return Err(Error::Indeterminate(format!(
            "Jensen error bound {error:.3e} exceeds the exactness contract"
        )));
    }
    Ok(MahlerEstimate { value, error_bound: error, method: Method::ExactJensen, samples_used: 0 })
}

/// One-variable Laurent polynomials reduce to the dense case: multiplying
/// by `X^e` does not change the measure.
fn mahler_univariate_laurent(p: &MultiPoly) -> Result<MahlerEstimate> {
    let ones = vec![1i64; p.nvars];
    let (_, dense) = p.substitute_powers(&ones)?;
    if dense.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    mahler_univariate(&IntPoly::from_i64(&dense))
}

/// Inner variable choice: prefer one whose leading coefficient (as a
/// polynomial in that variable) is a non-zero constant, so no outer node
/// can degenerate; otherwise the first variable with positive spread.
fn choose_inner_var(p: &MultiPoly) -> usize {
    let n = p.nvars;
    let spread = |v: usize| -> (i64, i64) {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for e in p.terms.keys() {
            lo = lo.min(e[v]);
            hi = hi.max(e[v]);
        }
        (lo, hi)
    };
    let mut fallback = 0;
    let mut fallback_found = false;
    for v in 0..n {
        let (lo, hi) = spread(v);
        if hi == lo {
            continue;
        }
        if !fallback_found {
            fallback = v;
            fallback_found = true;
        }
        let leading: Vec<&Vec<i64>> =
            p.terms.keys().filter(|e| e[v] == hi).collect();
        if leading.len() == 1 && leading[0].iter().enumerate().all(|(k, &e)| k == v || e == 0) {
            return v;
        }
    }
    fallback
}

struct InnerTemplate {
    /// (coefficient, inner-exponent offset, outer exponents) per term.
    terms: Vec<(f64, usize, Vec<i64>)>,
    len: usize,
}

fn inner_template(p: &MultiPoly, inner: usize) -> InnerTemplate {
    let lo = p.terms.keys().map(|e| e[inner]).min().unwrap();
    let hi = p.terms.keys().map(|e| e[inner]).max().unwrap();
    let terms = p
        .terms
        .iter()
        .map(|(e, &c)| {
            let outer: Vec<i64> =
                e.iter().enumerate().filter(|&(k, _)| k != inner).map(|(_, &x)| x).collect();
            (c as f64, (e[inner] - lo) as usize, outer)
        })
        .collect();
    InnerTemplate { terms, len: (hi - lo) as usize + 1 }
}

/// Exact Jensen value of the inner polynomial at one outer node, or `None`
/// when the node is degenerate (vanishing leading coefficient).
fn inner_jensen(tpl: &InnerTemplate, x_outer: &[f64]) -> Option<f64> {
    let mut coeffs = vec![Complex::new(0.0, 0.0); tpl.len];
    for (c, off, outer) in &tpl.terms {
        let mut frac = 0.0f64;
        for (&e, &x) in outer.iter().zip(x_outer) {
            frac += frac_mul(e, x);
        }
        let th = 2.0 * std::f64::consts::PI * frac.fract();
        coeffs[*off] += c * Complex::new(th.cos(), th.sin());
    }
    let lead = *coeffs.last().unwrap();
    if lead.norm() < 1e-30 {
        return None;
    }
    if tpl.len == 1 {
        return Some(lead.norm().ln());
    }
    let mut acc = lead.norm().ln();
    if tpl.len == 2 {
        let root = -(coeffs[0] / coeffs[1]).norm();
        acc += root.abs().max(1.0).ln();
        return Some(acc);
    }
    match roots_complex_f64(&coeffs) {
        Ok(roots) => {
            for r in roots {
                let m = r.norm();
                if m > 1.0 {
                    acc += m.ln();
                }
            }
            Some(acc)
        }
        Err(_) => None,
    }
}

/// Generating vector for a rank-1 lattice rule in the given dimension:
/// `z_1 = 1`, higher components golden-ratio based and coprime to `n`.
fn korobov_vector(dim: usize, n: u64) -> Vec<u64> {
    let mut z = vec![1u64; dim];
    if dim >= 2 {
        let mut g = (n as f64 * 0.618_033_988_749_894_9).round() as u64 % n;
        g |= 1;
        while num_integer::gcd(g, n) != 1 {
            g = (g + 2) % n.max(1);
            g |= 1;
        }
        for k in 1..dim {
            z[k] = ((z[k - 1] as u128 * g as u128) % n as u128) as u64;
        }
    }
    z
}

const SHIFT_COUNT: u64 = 8;
const MIN_NODES: u64 = 64;

/// Multivariate logarithmic Mahler measure by the nested scheme: the inner
/// variable is integrated exactly by Jensen for each outer node; the outer
/// integral uses `budget/8` rank-1 lattice nodes under 8 independent random
/// shifts. The error bound is 3 standard errors over the shift means.
pub fn mahler_multivariate(p: &MultiPoly, budget: u64, seed: u64) -> Result<MahlerEstimate> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.term_count() == 1 {
        // a monomial: |c·X^e| is constant on the torus
        let c = *p.terms.values().next().unwrap();
        let value = (c.unsigned_abs() as f64).ln();
        return Ok(MahlerEstimate {
            value,
            error_bound: 0.0,
            method: Method::ExactJensen,
            samples_used: 0,
        });
    }
    if p.nvars == 1 {
        return mahler_univariate_laurent(p);
    }
    if budget < SHIFT_COUNT * MIN_NODES {
        return Err(Error::BudgetTooSmall { got: budget, min: SHIFT_COUNT * MIN_NODES });
    }
    let inner = choose_inner_var(p);
    let tpl = inner_template(p, inner);
    let outer_dim = p.nvars - 1;
    let nodes = budget / SHIFT_COUNT;
    let z = korobov_vector(outer_dim, nodes);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut means = Vec::with_capacity(SHIFT_COUNT as usize);
    let mut used = 0u64;
    for _ in 0..SHIFT_COUNT {
        let shift: Vec<f64> = (0..outer_dim).map(|_| rng.gen::<f64>()).collect();
        let values: Vec<Option<f64>> = (0..nodes)
            .into_par_iter()
            .map(|j| {
                let x: Vec<f64> = (0..outer_dim)
                    .map(|k| {
                        let frac = ((j as u128 * z[k] as u128) % nodes as u128) as f64 / nodes as f64;
                        (frac + shift[k]).fract()
                    })
                    .collect();
                inner_jensen(&tpl, &x)
            })
            .collect();
        let kept: Vec<f64> = values.into_iter().flatten().collect();
        if kept.is_empty() {
            return Err(Error::Indeterminate("all outer nodes degenerate".into()));
        }
        used += kept.len() as u64;
        means.push(sum_pairwise(&kept) / kept.len() as f64);
    }
    let value = sum_pairwise(&means) / means.len() as f64;
    let var = means.iter().map(|m| (m - value) * (m - value)).sum::<f64>()
        / (means.len() as f64 - 1.0);
    let std_err = (var / means.len() as f64).sqrt();
    Ok(MahlerEstimate {
        value,
        error_bound: 3.0 * std_err,
        method: Method::NestedQuadrature,
        samples_used: used,
    })
}

/// Flat n-dimensional Monte Carlo over `log|P(e(x))|`; cross-check path
/// for the nested scheme (higher variance, kept deliberately simple).
pub fn mahler_multivariate_flat(p: &MultiPoly, budget: u64, seed: u64) -> Result<(f64, f64)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if budget < SHIFT_COUNT * MIN_NODES {
        return Err(Error::BudgetTooSmall { got: budget, min: SHIFT_COUNT * MIN_NODES });
    }
    let per = budget / SHIFT_COUNT;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut means = Vec::new();
    for _ in 0..SHIFT_COUNT {
        let batch_seed: u64 = rng.gen();
        let vals: Vec<f64> = (0..per)
            .into_par_iter()
            .map(|j| {
                let mut r = ChaCha8Rng::seed_from_u64(batch_seed ^ j);
                let x: Vec<f64> = (0..p.nvars).map(|_| r.gen::<f64>()).collect();
                let m = p.eval_torus(&x).norm();
                if m < 1e-300 {
                    None
                } else {
                    Some(m.ln())
                }
            })
            .flatten()
            .collect();
        means.push(sum_pairwise(&vals) / vals.len() as f64);
    }
    let value = sum_pairwise(&means) / means.len() as f64;
    let var =
        means.iter().map(|m| (m - value) * (m - value)).sum::<f64>() / (means.len() as f64 - 1.0);
    Ok((value, 3.0 * (var / means.len() as f64).sqrt()))
}

/// `m(Ω)`: the measure of `P_A` for the canonical basis matrix `A` of the
/// subgroup; basis-independent. Rank 1 reduces to the exact univariate case.
pub fn mahler_subgroup(sub: &Subgroup, budget: u64, seed: u64) -> Result<MahlerEstimate> {
    if sub.rank() == 0 {
        return Err(Error::InvalidInput("zero subgroup has no attached polynomial".into()));
    }
    let m = sub.rank();
    let n = sub.ambient();
    let entries: Vec<i64> = (0..m).flat_map(|i| sub.basis()[i].clone()).collect();
    let mat = crate::lacunary::ExponentMatrix::new(m, n, entries)?;
    let poly = mat.poly();
    if m == 1 {
        return mahler_univariate_laurent(&poly);
    }
    mahler_multivariate(&poly, budget, seed)
}

/// Monte Carlo estimate of `vol{x ∈ [0,1)ⁿ : |P(e(x))| < y}`.
#[derive(Clone, Debug)]
pub struct VolumeEstimate {
    pub value: f64,
    /// Binomial-proportion confidence half-width (3σ plus a 1/N floor).
    pub half_width: f64,
    pub samples: u64,
}

pub fn sublevel_volume(p: &MultiPoly, y: f64, budget: u64, seed: u64) -> Result<VolumeEstimate> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !(y > 0.0) {
        return Err(Error::InvalidInput(format!("threshold y must be positive, got {y}")));
    }
    if budget < 100 {
        return Err(Error::BudgetTooSmall { got: budget, min: 100 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seeds: Vec<u64> = (0..budget).map(|_| rng.gen()).collect();
    let hits: u64 = seeds
        .par_iter()
        .map(|&s| {
            let mut r = ChaCha8Rng::seed_from_u64(s);
            let x: Vec<f64> = (0..p.nvars).map(|_| r.gen::<f64>()).collect();
            u64::from(p.eval_torus(&x).norm() < y)
        })
        .sum();
    let phat = hits as f64 / budget as f64;
    let half = 3.0 * (phat * (1.0 - phat) / budget as f64).sqrt() + 1.0 / budget as f64;
    Ok(VolumeEstimate { value: phat, half_width: half, samples: budget })
}

/// `m(P(X^{a_1},…,X^{a_n})) − m(P)`: the univariate term is exact Jensen,
/// the multivariate term comes from the nested estimator. Returns the
/// difference and the combined error bound.
pub fn lawton_error(p: &MultiPoly, a: &ExponentVector, budget: u64, seed: u64) -> Result<(f64, f64)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (_, dense) = p.substitute_powers(a.entries())?;
    if dense.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let uni = mahler_univariate(&IntPoly::from_i64(&dense))?;
    let multi = if p.nvars == 1 {
        mahler_univariate_laurent(p)?
    } else {
        mahler_multivariate(p, budget, seed)?
    };
    Ok((uni.value - multi.value, uni.error_bound + multi.error_bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intpoly::cyclotomic;
    use crate::lacunary::{normalize, parse_poly};

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn univariate_examples() {
        let m = mahler_univariate(&IntPoly::from_i64(&[1, 1])).unwrap();
        assert_eq!(m.value, 0.0);
        assert_eq!(m.method, Method::ExactJensen);

        let m = mahler_univariate(&IntPoly::from_i64(&[1, 2])).unwrap();
        assert!((m.value - 2f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn univariate_trinomial_against_bisection_oracle() {
        // independent oracle: bisection for the real root of 1 + x + x³ in
        // [−1, 0]; |∏roots| = 1, so the outside pair contributes −ln|r|
        let f = |x: f64| 1.0 + x + x * x * x;
        let (mut lo, mut hi) = (-1.0f64, 0.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let expect = -(-lo).ln();
        let m = mahler_univariate(&IntPoly::from_i64(&[1, 1, 0, 1])).unwrap();
        assert!((m.value - expect).abs() < 1e-10, "{} vs {expect}", m.value);
        assert!((m.value - 0.3822450858400369).abs() < 1e-9);
    }

    #[test]
    fn cyclotomics_have_measure_zero() {
        for n in 1..=12u64 {
            let m = mahler_univariate(&cyclotomic(n)).unwrap();
            assert!(m.value.abs() <= 1e-10, "N = {n}: {}", m.value);
            assert!(m.error_bound <= 1e-9);
        }
    }

    #[test]
    fn lacunary_measure_bounded_by_log_n_plus_1() {
        use rand::{Rng, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let n = rng.gen_range(1..=4usize);
            let entries: Vec<i64> = (0..n).map(|_| rng.gen_range(-25i64..25)).collect();
            let a = ev(&entries);
            let dense = normalize(&a).dense;
            if dense.len() < 2 {
                continue;
            }
            let m = mahler_univariate(&IntPoly::from_i64(&dense)).unwrap();
            assert!(m.value <= ((n + 1) as f64).ln() + 1e-9, "a={entries:?} m={}", m.value);
            assert!(m.value >= -1e-12);
        }
    }

    #[test]
    fn nonnegative_on_integer_polynomials() {
        use rand::{Rng, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..25 {
            let d = rng.gen_range(1..=8usize);
            let mut coeffs: Vec<i64> = (0..=d).map(|_| rng.gen_range(-5i64..6)).collect();
            if coeffs[d] == 0 {
                coeffs[d] = 1;
            }
            if coeffs.iter().all(|&c| c == 0) {
                continue;
            }
            let m = mahler_univariate(&IntPoly::new(
                coeffs.iter().map(|&c| num_bigint::BigInt::from(c)).collect(),
            ))
            .unwrap();
            assert!(m.value >= -1e-10, "coeffs {coeffs:?} m {}", m.value);
        }
    }

    /// Adaptive Simpson quadrature for the 1-D reduction oracle.
    fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let simpson = |a: f64, b: f64| {
            let m = 0.5 * (a + b);
            (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b))
        };
        let whole = simpson(a, b);
        let halves = simpson(a, m) + simpson(m, b);
        if depth == 0 || (whole - halves).abs() < 15.0 * tol {
            halves + (halves - whole) / 15.0
        } else {
            adaptive_simpson(f, a, m, tol / 2.0, depth - 1)
                + adaptive_simpson(f, m, b, tol / 2.0, depth - 1)
        }
    }

    /// `∫₀¹ log⁺|1 + e(x)| dx` by adaptive quadrature: the reference value
    /// for m(1 + X₁ + X₂) via the one-dimensional reduction.
    pub(crate) fn smyth_reference() -> f64 {
        // log⁺|1+e(x)| = ln(2cos(πx)) on [0, 1/3], 0 on [1/3, 2/3], symmetric
        let f = |x: f64| (2.0 * (std::f64::consts::PI * x).cos()).ln();
        2.0 * adaptive_simpson(&f, 0.0, 1.0 / 3.0, 1e-12, 40)
    }

    #[test]
    fn multivariate_smyth_value() {
        let reference = smyth_reference();
        assert!((reference - 0.3230659472194505).abs() < 1e-9);
        let p = parse_poly("1+x1+x2").unwrap();
        let m = mahler_multivariate(&p, 200_000, 0).unwrap();
        assert_eq!(m.method, Method::NestedQuadrature);
        assert!(
            (m.value - reference).abs() < 1e-3f64.max(m.error_bound),
            "value {} vs {reference}, bound {}",
            m.value,
            m.error_bound
        );
    }

    #[test]
    fn multivariate_monomial_and_constant() {
        let p = parse_poly("x1*x2").unwrap();
        let m = mahler_multivariate(&p, 1000, 0).unwrap();
        assert_eq!((m.value, m.error_bound), (0.0, 0.0));
        let p = parse_poly("5").unwrap();
        let m = mahler_multivariate(&p, 1000, 0).unwrap();
        assert!((m.value - 5f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn budget_too_small_is_reported() {
        let p = parse_poly("1+x1+x2").unwrap();
        assert!(matches!(
            mahler_multivariate(&p, 100, 0),
            Err(Error::BudgetTooSmall { .. })
        ));
    }

    #[test]
    fn subgroup_measure_examples() {
        // Ω = Z² → m(1+X₁+X₂)
        let m = mahler_subgroup(&Subgroup::zn(2), 100_000, 1).unwrap();
        assert!((m.value - 0.32306594).abs() < 3e-3);
        // rank-1: Ω = Z·(1,1) → P = 1 + 2X → log 2, exactly
        let sub = Subgroup::from_rows(2, &[vec![1, 1]]).unwrap();
        let m = mahler_subgroup(&sub, 1000, 0).unwrap();
        assert!((m.value - 2f64.ln()).abs() < 1e-10);
        assert_eq!(m.method, Method::ExactJensen);
    }

    #[test]
    fn subgroup_measure_is_basis_independent() {
        // unimodular change of basis of Z²: rows (1,0),(1,1)
        let a = mahler_subgroup(&Subgroup::zn(2), 400_000, 2).unwrap();
        let b_rows = Subgroup::from_rows(2, &[vec![1, 0], vec![1, 1]]).unwrap();
        assert_eq!(b_rows, Subgroup::zn(2)); // canonical form collapses them
        // exercise the non-canonical path through an explicit matrix
        let mat = crate::lacunary::ExponentMatrix::new(2, 2, vec![1, 0, 1, 1]).unwrap();
        let b = mahler_multivariate(&mat.poly(), 400_000, 3).unwrap();
        assert!(
            (a.value - b.value).abs() <= a.error_bound + b.error_bound + 2e-3,
            "a={} ± {}, b={} ± {}",
            a.value,
            a.error_bound,
            b.value,
            b.error_bound
        );
    }

    #[test]
    fn nested_and_flat_paths_agree() {
        let p = parse_poly("1+x1+x2").unwrap();
        let nested = mahler_multivariate(&p, 200_000, 4).unwrap();
        let (flat, flat_err) = mahler_multivariate_flat(&p, 200_000, 4).unwrap();
        assert!(
            (nested.value - flat).abs() < nested.error_bound + flat_err + 5e-3,
            "nested {} flat {flat} ± {flat_err}",
            nested.value
        );
    }

    #[test]
    fn sublevel_examples() {
        // |e(x) − 2| ≥ 1: empty sublevel set
        let p = parse_poly("x1-2").unwrap();
        let v = sublevel_volume(&p, 0.5, 20_000, 0).unwrap();
        assert_eq!(v.value, 0.0);
        // monomial: |e(x)| = 1
        let p = parse_poly("x1").unwrap();
        let v = sublevel_volume(&p, 0.5, 20_000, 0).unwrap();
        assert_eq!(v.value, 0.0);
        // 1 + X: exact arc-length value (2/π)·asin(y/2)
        let p = parse_poly("1+x1").unwrap();
        let v = sublevel_volume(&p, 0.2, 400_000, 7).unwrap();
        let exact = 2.0 / std::f64::consts::PI * (0.1f64).asin();
        assert!((v.value - exact).abs() <= v.half_width + 1e-3, "{} vs {exact}", v.value);
        assert!((exact - 0.0637686).abs() < 1e-6);
    }

    #[test]
    fn sublevel_rejects_bad_inputs() {
        let p = parse_poly("1+x1").unwrap();
        assert!(sublevel_volume(&p, 0.0, 1000, 0).is_err());
        assert!(matches!(
            sublevel_volume(&p, 0.1, 10, 0),
            Err(Error::BudgetTooSmall { .. })
        ));
    }

    #[test]
    fn lawton_identity_substitution_is_exact_zero() {
        let p = parse_poly("1+x1").unwrap();
        let (err, bound) = lawton_error(&p, &ev(&[1]), 10_000, 0).unwrap();
        assert_eq!(err, 0.0);
        assert!(bound < 1e-9);
    }

    #[test]
    fn lawton_error_examples() {
        // a = (1,1): substitution gives 1 + 2X, so the gap is log2 − m(P)
        let p = parse_poly("1+x1+x2").unwrap();
        let (err, bound) = lawton_error(&p, &ev(&[1, 1]), 300_000, 0).unwrap();
        let expect = 2f64.ln() - 0.3230659472194505;
        assert!((err - expect).abs() < bound + 2e-3, "err {err} expect {expect}");

        // a = (1,40): near the limit
        let (err, bound) = lawton_error(&p, &ev(&[1, 40]), 300_000, 0).unwrap();
        assert!(err.abs() < 0.05 + bound, "err {err}");
    }

    #[test]
    fn inner_variable_choice_prefers_constant_leading() {
        let p = parse_poly("1+x1+x2").unwrap();
        // both variables have constant leading coefficient 1; first wins
        assert_eq!(choose_inner_var(&p), 0);
        let p = parse_poly("1+x1*x2+x2").unwrap();
        // neither is constant-leading; falls back to the first with spread
        assert_eq!(choose_inner_var(&p), 0);
        let p = parse_poly("1+x1*x2+x2^2+x1").unwrap();
        // x1's leading terms {x1*x2, x1} are two terms; x2's leading is the
        // single constant-coefficient monomial x2²
        assert_eq!(choose_inner_var(&p), 1);
    }
}
