//! Complex roots of dense integer polynomials with certified error radii,
//! unit-circle classification backed by exact cyclotomic divisibility, the
//! near-1 set `B(p, a, λ)`, and the root-product form of `log Δ_p(a)`.
//!
//! Numerics alone cannot decide "on the circle but not a root of unity", so
//! the classifier works in two layers: floating point (escalating through a
//! 53 → 106 → 212 bit precision ladder) separates clearly-off-circle roots,
//! and candidate roots of unity are certified by exact divisibility of a
//! cyclotomic polynomial. [`CircleClass::OnCircleOther`] is by construction
//! a non-certified report.

mod aberth;
pub mod precision;

pub use aberth::roots_complex_f64;

use crate::error::{Error, Result};
use crate::intpoly::{cyclotomic, euler_phi, squarefree_decomposition, IntPoly};
pub use crate::intpoly::squarefree_part;
use crate::lacunary::{frac_mul, normalize, ExponentVector};
use aberth::aberth_solve;
use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::ToPrimitive;
use precision::{BigReal, Cx, Real};
use std::f64::consts::PI;

/// One computed root with certification data.
#[derive(Clone, Debug)]
pub struct RootEntry {
    /// The root, rounded to f64.
    pub value: Complex<f64>,
    pub multiplicity: u32,
    /// Certified inclusion radius (a true root lies within this distance of
    /// the solver's full-precision point).
    pub radius: f64,
    /// `|α| − 1`, computed at solve precision before rounding, so magnitudes
    /// far below f64 epsilon survive.
    pub modulus_minus_one: f64,
}

impl RootEntry {
    /// Log-polar form `(log|α|, arg α)`; the radial part is accurate even
    /// when `|α|` is within f64 epsilon of 1.
    pub fn log_polar(&self) -> (f64, f64) {
        (self.modulus_minus_one.ln_1p(), self.value.arg())
    }
}

/// All roots of a dense integer polynomial, with multiplicity recovered by
/// exact squarefree decomposition.
///
/// For inputs of the form `X^e·P_a` no root is 0 or 1; general inputs may
/// have a root at 0, which is kept out of `roots` and counted in
/// `zero_multiplicity`.
#[derive(Clone, Debug)]
pub struct RootSet {
    pub roots: Vec<RootEntry>,
    /// Leading coefficient of the input (`p_0 ≥ 1` for lacunary inputs).
    pub leading: BigInt,
    /// Degree of the input polynomial.
    pub degree: usize,
    /// Multiplicity of the root 0 (the stripped `X^k` factor).
    pub zero_multiplicity: u32,
    /// Number of non-zero coefficients of the input.
    pub terms: usize,
    /// Squarefree part of the non-zero-root factor, for exact circle tests.
    pub squarefree: IntPoly,
    /// Precision (bits) at which the set was certified.
    pub bits: u32,
}

/// Position of a root relative to the unit circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CircleClass {
    Inside,
    Outside,
    /// Certified: the cyclotomic polynomial of this order exactly divides
    /// the squarefree part.
    RootOfUnity(u64),
    /// On the circle numerically but no cyclotomic divisor matched. Not
    /// certifiable by floating point; treat as a flag, not a fact.
    OnCircleOther,
}

/// Precision ladder and iteration budget for the solver.
#[derive(Clone, Debug)]
pub struct SolverConfig {
    /// Top rung of the precision ladder, in bits (53/106/212 by default).
    pub max_bits: u32,
    pub max_iters: u32,
}

static DEFAULT_MAX_BITS: std::sync::atomic::AtomicU32 = std::sync::atomic::AtomicU32::new(212);

/// Set the process-wide top rung of the default precision ladder (the CLI's
/// `--precision`); values below 53 are clamped up.
pub fn set_default_precision(bits: u32) {
    DEFAULT_MAX_BITS.store(bits.max(53), std::sync::atomic::Ordering::Relaxed);
}

impl Default for SolverConfig {
    fn default() -> SolverConfig {
        SolverConfig {
            max_bits: DEFAULT_MAX_BITS.load(std::sync::atomic::Ordering::Relaxed),
            max_iters: 400,
        }
    }
}

impl SolverConfig {
    pub fn with_precision(bits: u32) -> SolverConfig {
        SolverConfig { max_bits: bits.max(53), ..SolverConfig::default() }
    }

    fn rungs(&self) -> Vec<u32> {
        let mut out = vec![53u32];
        let mut b = 106u32;
        while b < self.max_bits {
            out.push(b);
            b = b.saturating_mul(2);
        }
        if self.max_bits > 53 {
            out.push(self.max_bits);
        }
        out.dedup();
        out
    }
}

fn solve_factor_at(
    prec: u32,
    factor: &IntPoly,
    max_iters: u32,
    seeds: Option<&[Complex<f64>]>,
) -> Result<Vec<(Complex<f64>, f64, f64)>> {
    let solve_generic = |out: &mut Vec<(Complex<f64>, f64, f64)>| -> Result<()> {
        if prec <= 53 {
            let coeffs: Vec<Cx<f64>> = factor
                .coeffs
                .iter()
                .map(|c| Cx::new(<f64 as Real>::from_bigint(53, c), 0.0))
                .collect();
            let sol = aberth_solve(53, &coeffs, max_iters, seeds)?;
            for (z, r) in sol.roots.iter().zip(&sol.radii) {
                let m1 = z.abs() - 1.0;
                out.push((z.to_complex_f64(), *r, m1));
            }
        } else {
            let coeffs: Vec<Cx<BigReal>> = factor
                .coeffs
                .iter()
                .map(|c| Cx::new(BigReal::from_bigint(prec, c), BigReal::from_f64(prec, 0.0)))
                .collect();
            let sol = aberth_solve(prec, &coeffs, max_iters, seeds)?;
            for (z, r) in sol.roots.iter().zip(&sol.radii) {
                let m1 = z.abs().sub(&BigReal::from_f64(prec, 1.0));
                out.push((z.to_complex_f64(), *r, m1.to_f64()));
            }
        }
        Ok(())
    };
    let mut out = Vec::new();
    solve_generic(&mut out)?;
    Ok(out)
}

fn disks_disjoint(entries: &[RootEntry]) -> bool {
    for i in 0..entries.len() {
        for j in (i + 1)..entries.len() {
            let dist = (entries[i].value - entries[j].value).norm();
            let slack = 1e-15 * (entries[i].value.norm() + entries[j].value.norm());
            if dist <= entries[i].radius + entries[j].radius + slack {
                return false;
            }
        }
    }
    true
}

fn solve_at_rung(f: &IntPoly, prec: u32, max_iters: u32, seeds: &[Vec<Complex<f64>>]) -> Result<RootSet> {
    let degree = f.degree();
    let terms = f.term_count();
    let leading = f.leading().clone();
    let prim = f.primitive();
    let zero_multiplicity =
        prim.coeffs.iter().take_while(|c| num_traits::Zero::is_zero(&**c)).count() as u32;
    let core = IntPoly::new(prim.coeffs[zero_multiplicity as usize..].to_vec());
    if core.degree() == 0 {
        return Ok(RootSet {
            roots: vec![],
            leading,
            degree,
            zero_multiplicity,
            terms,
            squarefree: IntPoly::from_i64(&[1]),
            bits: prec,
        });
    }
    let factors = squarefree_decomposition(&core);
    let mut squarefree = IntPoly::from_i64(&[1]);
    let mut roots = Vec::new();
    for (fi, (factor, mult)) in factors.iter().enumerate() {
        squarefree = squarefree.mul(factor);
        let seed = seeds.get(fi).map(|v| v.as_slice());
        for (value, radius, m1) in solve_factor_at(prec, factor, max_iters, seed)? {
            roots.push(RootEntry { value, multiplicity: *mult, radius, modulus_minus_one: m1 });
        }
    }
    Ok(RootSet {
        roots,
        leading,
        degree,
        zero_multiplicity,
        terms,
        squarefree: squarefree.primitive(),
        bits: prec,
    })
}

/// All complex roots of `F` with multiplicities and certified radii.
///
/// Climbs the precision ladder until the solver converges and all inclusion
/// disks are pairwise disjoint.
pub fn find_roots(f: &IntPoly) -> Result<RootSet> {
    find_roots_cfg(f, &SolverConfig::default())
}

pub fn find_roots_cfg(f: &IntPoly, cfg: &SolverConfig) -> Result<RootSet> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() < 1 {
        return Err(Error::InvalidInput("constant polynomial has no roots".into()));
    }
    let mut last_err = None;
    let mut seeds: Vec<Vec<Complex<f64>>> = vec![];
    for prec in cfg.rungs() {
        match solve_at_rung(f, prec, cfg.max_iters, &seeds) {
            Ok(rs) => {
                if disks_disjoint(&rs.roots) && rs.roots.iter().all(|e| e.radius.is_finite()) {
                    return Ok(rs);
                }
                seeds = group_seeds(&rs);
                last_err = Some(Error::Indeterminate(format!(
                    "root inclusion disks overlap at {prec} bits"
                )));
            }
            Err(e @ Error::NonConvergence { .. }) => {
                last_err = Some(e);
                seeds.clear();
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap())
}

fn group_seeds(rs: &RootSet) -> Vec<Vec<Complex<f64>>> {
    // regroup roots by multiplicity in Yun-factor order
    let mut by_mult: std::collections::BTreeMap<u32, Vec<Complex<f64>>> = Default::default();
    for e in &rs.roots {
        by_mult.entry(e.multiplicity).or_default().push(e.value);
    }
    by_mult.into_values().collect()
}

/// Lower bound on `||α| − 1|` for any off-circle root of the squarefree
/// integer polynomial, from root-separation estimates. Astronomically small;
/// a harmless 0 on f64 underflow.
fn off_circle_floor(f_sf: &IntPoly) -> f64 {
    let d = f_sf.degree() as f64;
    if d < 1.0 {
        return 0.0;
    }
    let norm2: f64 = f_sf
        .coeffs
        .iter()
        .map(|c| {
            let v = c.to_f64().unwrap_or(f64::INFINITY);
            v * v
        })
        .sum();
    let m_up = 0.5 * norm2.ln().max(0.0);
    (-1.0 - (d + 1.0) * (2.0 * d).ln() - 2.0 * (2.0 * d - 1.0) * m_up).exp()
}

/// Convergents `p/q` of `x ∈ [0, 1)` with denominators `q ≤ qmax`.
fn convergents(x: f64, qmax: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let (mut h2, mut h1) = (0i128, 1i128); // h_{-2}, h_{-1}
    let (mut k2, mut k1) = (1i128, 0i128);
    let mut xi = x;
    for _ in 0..64 {
        let a = xi.floor();
        if !a.is_finite() || a >= 1e18 {
            break;
        }
        let ai = a as i128;
        let h = ai * h1 + h2;
        let k = ai * k1 + k2;
        if k as u128 > qmax as u128 {
            break;
        }
        if k > 0 {
            out.push((h.unsigned_abs() as u64, k as u64));
        }
        h2 = h1;
        h1 = h;
        k2 = k1;
        k1 = k;
        let frac = xi - a;
        if frac < 1e-15 {
            break;
        }
        xi = 1.0 / frac;
    }
    out
}

/// Classify one root against the unit circle.
///
/// Inside/Outside require the radial distance to clear the certified radius
/// plus the separation floor. On-circle candidates are resolved by the exact
/// test `Φ_N | F_sf` over candidate orders from the continued-fraction
/// expansion of `arg(α)/2π` (denominators up to `2·deg²`).
pub fn classify_root(entry: &RootEntry, f_sf: &IntPoly) -> Result<CircleClass> {
    let m1 = entry.modulus_minus_one;
    let cand_tol = entry.radius.max(1e-40);
    if m1.abs() <= cand_tol {
        let theta = (entry.value.arg() / (2.0 * PI)).rem_euclid(1.0);
        let d = f_sf.degree() as u64;
        let qmax = 2 * d * d;
        let mut seen = std::collections::BTreeSet::new();
        for (pnum, q) in convergents(theta, qmax.max(2)) {
            let order = if pnum == 0 { 1 } else { q };
            if !seen.insert(order) || euler_phi(order) > d {
                continue;
            }
            if f_sf.exact_div(&cyclotomic(order)).is_some() {
                let target = Complex::from_polar(1.0, 2.0 * PI * pnum as f64 / q as f64);
                if (entry.value - target).norm() <= (4.0 * entry.radius).max(1e-9) {
                    return Ok(CircleClass::RootOfUnity(order));
                }
            }
        }
        return Ok(CircleClass::OnCircleOther);
    }
    if m1.abs() > entry.radius + off_circle_floor(f_sf) {
        return Ok(if m1 < 0.0 { CircleClass::Inside } else { CircleClass::Outside });
    }
    Err(Error::Indeterminate(format!(
        "root {} is neither certified off-circle nor an on-circle candidate",
        entry.value
    )))
}

/// Roots plus classes, escalating the ladder when classification is
/// indeterminate. `OnCircleOther` is accepted only at the top rung.
pub fn find_roots_classified(f: &IntPoly, cfg: &SolverConfig) -> Result<(RootSet, Vec<CircleClass>)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() < 1 {
        return Err(Error::InvalidInput("constant polynomial has no roots".into()));
    }
    let rungs = cfg.rungs();
    let mut last_err: Option<Error> = None;
    let mut seeds: Vec<Vec<Complex<f64>>> = vec![];
    for (ri, &prec) in rungs.iter().enumerate() {
        let top = ri + 1 == rungs.len();
        let rs = match solve_at_rung(f, prec, cfg.max_iters, &seeds) {
            Ok(rs) => rs,
            Err(e @ Error::NonConvergence { .. }) => {
                last_err = Some(e);
                seeds.clear();
                continue;
            }
            Err(e) => return Err(e),
        };
        if !disks_disjoint(&rs.roots) || rs.roots.iter().any(|e| !e.radius.is_finite()) {
            seeds = group_seeds(&rs);
            last_err = Some(Error::Indeterminate(format!("disks overlap at {prec} bits")));
            continue;
        }
        let classes: Result<Vec<CircleClass>> =
            rs.roots.iter().map(|e| classify_root(e, &rs.squarefree)).collect();
        match classes {
            Ok(cs) => {
                if top || !cs.contains(&CircleClass::OnCircleOther) {
                    return Ok((rs, cs));
                }
                seeds = group_seeds(&rs);
                last_err = Some(Error::Indeterminate("unresolved on-circle candidate".into()));
            }
            Err(e) => {
                seeds = group_seeds(&rs);
                last_err = Some(e);
            }
        }
    }
    Err(last_err.unwrap_or_else(|| Error::Indeterminate("precision ladder exhausted".into())))
}

/// `log|α^p − 1|` in log-polar form, stable for `p` up to 10⁶ and radial
/// parts far below f64 epsilon.
///
/// With `u = p·log|α|` and `v = p·arg α mod 2π`,
/// `|α^p − 1|² = 4 e^u (sinh²(u/2) + sin²(v/2))`, which has no cancellation
/// near 1 and no overflow once large `|u|` is handled separately.
pub fn log_pow_distance(log_abs: f64, theta: f64, p: u64) -> Result<f64> {
    let u = p as f64 * log_abs;
    if u > 50.0 {
        return Ok(u);
    }
    if u < -50.0 {
        return Ok(0.0);
    }
    let theta_frac = theta / (2.0 * PI);
    let v = 2.0 * PI * frac_mul_f64(p, theta_frac);
    let sh = (u / 2.0).sinh();
    let sn = (v / 2.0).sin();
    let s2 = sh * sh + sn * sn;
    if s2 == 0.0 {
        return Err(Error::PoleAtOne);
    }
    Ok(u / 2.0 + 0.5 * (4.0 * s2).ln())
}

fn frac_mul_f64(p: u64, x: f64) -> f64 {
    if p <= i64::MAX as u64 {
        frac_mul(p as i64, x)
    } else {
        (p as f64 * x).rem_euclid(1.0)
    }
}

/// Per-root term `log|α^p − 1|`, using the exact rational angle for
/// certified roots of unity.
fn root_pow_term(entry: &RootEntry, class: &CircleClass, p: u64) -> Result<f64> {
    match class {
        CircleClass::RootOfUnity(n) => {
            let n = *n;
            if p % n == 0 {
                return Err(Error::PoleAtOne);
            }
            let theta = (entry.value.arg() / (2.0 * PI)).rem_euclid(1.0);
            let k = ((theta * n as f64).round() as u64) % n;
            let e = ((k as u128 * (p % n) as u128) % n as u128) as u64;
            debug_assert!(e != 0 || n == 1);
            if e == 0 {
                return Err(Error::PoleAtOne);
            }
            Ok((2.0 * (PI * e as f64 / n as f64).sin()).ln())
        }
        _ => {
            let (r, th) = entry.log_polar();
            log_pow_distance(r, th, p)
        }
    }
}

/// `log Δ_p(a) = p·log p₀ − log(n+1) + Σ_i log|α_i^p − 1|`, summed in fixed
/// order over the root set of `X^e P_a`.
pub fn delta_from_roots(a: &ExponentVector, p: u64, r: &RootSet) -> Result<f64> {
    if a.is_zero() {
        return Err(Error::InvalidInput("a = 0 has a degree-0 dense form".into()));
    }
    let n = a.n() as f64;
    let p0 = r.leading.to_f64().ok_or(Error::Overflow("leading coefficient"))?;
    let mut acc = p as f64 * p0.ln() - (n + 1.0).ln();
    for entry in &r.roots {
        let class = classify_root(entry, &r.squarefree)?;
        let term = root_pow_term(entry, &class, p)?;
        acc += entry.multiplicity as f64 * term;
    }
    Ok(acc)
}

/// The set `B(p, a, λ)`: indices of off-circle roots whose `p`-th power
/// (inverse `p`-th power for outside roots) is within `p^{−λ}` of 1.
/// On-circle roots are excluded by definition. Multiplicities count.
pub fn bset(a: &ExponentVector, p: u64, lambda: f64) -> Result<Vec<usize>> {
    if a.is_zero() {
        return Err(Error::InvalidInput("a must be non-zero".into()));
    }
    let dense = IntPoly::from_i64(&normalize(a).dense);
    let (rs, classes) = find_roots_classified(&dense, &SolverConfig::default())?;
    bset_from_roots(&rs, &classes, p, lambda)
}

pub fn bset_from_roots(
    rs: &RootSet,
    classes: &[CircleClass],
    p: u64,
    lambda: f64,
) -> Result<Vec<usize>> {
    let threshold = -lambda * (p as f64).ln();
    let mut out = Vec::new();
    for (i, (entry, class)) in rs.roots.iter().zip(classes).enumerate() {
        let (r, th) = entry.log_polar();
        match class {
            CircleClass::Inside => {
                let lp = log_pow_distance(r, th, p)?;
                if lp < threshold {
                    out.push(i);
                }
            }
            CircleClass::Outside => {
                // log|α^{−p} − 1| = log|α^p − 1| − p·log|α|
                let lp = log_pow_distance(r, th, p)? - p as f64 * r;
                if lp < threshold {
                    out.push(i);
                }
            }
            _ => {}
        }
    }
    Ok(out)
}

/// Total multiplicity of a B-set index list.
pub fn bset_size(rs: &RootSet, indices: &[usize]) -> u64 {
    indices.iter().map(|&i| rs.roots[i].multiplicity as u64).sum()
}

/// A half-open angular interval `[start, start + length)`, in radians.
#[derive(Clone, Copy, Debug)]
pub struct Arc {
    pub start: f64,
    pub length: f64,
}

/// Number of roots (with multiplicity) whose argument lies in the arc,
/// together with the certified sector bound
/// `(length/2π)·degree + #terms`. Errors with `Indeterminate` when a root's
/// angular certification straddles the boundary.
pub fn sector_count(rs: &RootSet, arc: &Arc) -> Result<(u64, f64)> {
    let two_pi = 2.0 * PI;
    let bound = arc.length / two_pi * rs.degree as f64 + rs.terms as f64;
    if arc.length >= two_pi {
        let count = rs.roots.iter().map(|e| e.multiplicity as u64).sum();
        return Ok((count, bound));
    }
    let lo = arc.start.rem_euclid(two_pi);
    let mut count = 0u64;
    for e in &rs.roots {
        let modulus = e.value.norm();
        let ang_err = if e.radius >= modulus {
            return Err(Error::Indeterminate("angular radius covers the whole circle".into()));
        } else {
            (e.radius / modulus).asin() + 5e-15
        };
        let th = (e.value.arg() - lo).rem_euclid(two_pi);
        let inside = th < arc.length;
        // distance to the nearer boundary, circularly
        let d_start = th.min(two_pi - th);
        let d_end = (th - arc.length).abs().min(two_pi - (th - arc.length).abs());
        if d_start < ang_err || d_end < ang_err {
            return Err(Error::Indeterminate("root argument straddles the arc boundary".into()));
        }
        if inside {
            count += e.multiplicity as u64;
        }
    }
    Ok((count, bound))
}

/// One row of the per-root residual table.
#[derive(Clone, Debug)]
pub struct ResidualRow {
    pub root: Complex<f64>,
    pub multiplicity: u32,
    /// `|log|α^p − 1| − p·log max{1,|α|}|`
    pub residual: f64,
    pub in_bset: bool,
}

/// Residual diagnostics for the difference between the normalized norm and
/// the Mahler measure.
#[derive(Clone, Debug)]
pub struct ResidualTable {
    pub rows: Vec<ResidualRow>,
    /// `|(1/(p−1))·log Δ_p(a) − m(P_a)|`
    pub aggregate: f64,
    pub log_delta: f64,
    pub mahler: f64,
}

/// Per-root comparison of `log|α^p−1|` against the local Mahler
/// contribution `p·log max{1,|α|}`, plus the aggregate error.
pub fn residual_decomposition(a: &ExponentVector, p: u64, lambda: f64) -> Result<ResidualTable> {
    let delta = crate::cyclonorm::delta_abs_exact(a, p)?;
    if num_traits::Zero::is_zero(&delta) {
        return Err(Error::DeltaZero);
    }
    let dense = IntPoly::from_i64(&normalize(a).dense);
    let (rs, classes) = find_roots_classified(&dense, &SolverConfig::default())?;
    let in_b = bset_from_roots(&rs, &classes, p, lambda)?;
    let mut rows = Vec::new();
    let mut mahler = crate::arith::big_ln(rs.leading.magnitude());
    for (i, (entry, class)) in rs.roots.iter().zip(&classes).enumerate() {
        let lp = root_pow_term(entry, class, p)?;
        let local = entry.modulus_minus_one.ln_1p().max(0.0);
        mahler += entry.multiplicity as f64 * local;
        rows.push(ResidualRow {
            root: entry.value,
            multiplicity: entry.multiplicity,
            residual: (lp - p as f64 * local).abs(),
            in_bset: in_b.contains(&i),
        });
    }
    let log_delta = crate::arith::big_ln(&delta);
    let aggregate = (log_delta / (p - 1) as f64 - mahler).abs();
    Ok(ResidualTable { rows, aggregate, log_delta, mahler })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lacunary::ExponentVector;

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn roots_of_one_plus_x() {
        let rs = find_roots(&IntPoly::from_i64(&[1, 1])).unwrap();
        assert_eq!(rs.roots.len(), 1);
        assert!((rs.roots[0].value - Complex::new(-1.0, 0.0)).norm() < 1e-14);
        let class = classify_root(&rs.roots[0], &rs.squarefree).unwrap();
        assert_eq!(class, CircleClass::RootOfUnity(2));
    }

    #[test]
    fn roots_of_degree_three_product() {
        // 1 + X + X² + X³ = (1+X)(1+X²) → roots −1, ±i
        let rs = find_roots(&IntPoly::from_i64(&[1, 1, 1, 1])).unwrap();
        assert_eq!(rs.roots.len(), 3);
        let classes: Vec<CircleClass> =
            rs.roots.iter().map(|e| classify_root(e, &rs.squarefree).unwrap()).collect();
        let mut orders: Vec<u64> = classes
            .iter()
            .map(|c| match c {
                CircleClass::RootOfUnity(n) => *n,
                other => panic!("unexpected class {other:?}"),
            })
            .collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![2, 4, 4]);
    }

    #[test]
    fn trinomial_real_root_and_moduli() {
        // 1 + X + X³: one real root ≈ −0.68233, complex pair with |·| ≈ 1.2107.
        // Oracle for the pair modulus: |∏ roots| = 1 ⇒ |pair|² = 1/|real|.
        let rs = find_roots(&IntPoly::from_i64(&[1, 1, 0, 1])).unwrap();
        assert_eq!(rs.roots.len(), 3);
        let real = rs.roots.iter().find(|e| e.value.im.abs() < 1e-12).unwrap();
        assert!((real.value.re + 0.6823278038280193).abs() < 1e-12);
        assert_eq!(classify_root(real, &rs.squarefree).unwrap(), CircleClass::Inside);
        let pair_mod = (1.0 / -real.value.re).sqrt();
        assert!((pair_mod - 1.2106077944060859).abs() < 1e-10);
        for e in rs.roots.iter().filter(|e| e.value.im.abs() > 1e-12) {
            assert!((e.value.norm() - pair_mod).abs() < 1e-10);
            assert_eq!(classify_root(e, &rs.squarefree).unwrap(), CircleClass::Outside);
        }
    }

    #[test]
    fn multiplicities_from_gcd_chain() {
        // (1+X)² (1+X²)
        let f = IntPoly::from_i64(&[1, 2, 1]).mul(&IntPoly::from_i64(&[1, 0, 1]));
        let rs = find_roots(&f).unwrap();
        let total: u32 = rs.roots.iter().map(|e| e.multiplicity).sum();
        assert_eq!(total as usize + rs.zero_multiplicity as usize, rs.degree);
        let double = rs.roots.iter().find(|e| e.multiplicity == 2).unwrap();
        assert!((double.value - Complex::new(-1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn zero_roots_are_stripped() {
        // X³ + X = X(X² + 1)
        let rs = find_roots(&IntPoly::from_i64(&[0, 1, 0, 1])).unwrap();
        assert_eq!(rs.zero_multiplicity, 1);
        assert_eq!(rs.roots.len(), 2);
        assert_eq!(rs.degree, 3);
    }

    #[test]
    fn conjugation_closure() {
        for coeffs in [vec![3i64, -2, 0, 0, 5], vec![1, 1, 0, 1], vec![2, 0, -7, 1, 1]] {
            let rs = find_roots(&IntPoly::from_i64(&coeffs)).unwrap();
            for e in &rs.roots {
                let conj = e.value.conj();
                assert!(
                    rs.roots.iter().any(|o| (o.value - conj).norm() <= e.radius + o.radius + 1e-12),
                    "conjugate of {} missing",
                    e.value
                );
            }
        }
    }

    #[test]
    fn log_pow_distance_examples() {
        // α = −1, p = 2 → pole
        assert!(matches!(log_pow_distance(0.0, PI, 2), Err(Error::PoleAtOne)));
        // α = −1, p = 3 → log 2
        let v = log_pow_distance(0.0, PI, 3).unwrap();
        assert!((v - 2f64.ln()).abs() < 1e-14);
        // α = 2, p = 10 → log 1023
        let v = log_pow_distance(2f64.ln(), 0.0, 10).unwrap();
        assert!((v - 1023f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn log_pow_distance_huge_p_and_tiny_radius() {
        // |α| = 1 + 1e-40: u = p·1e-40 stays tiny; v = 0 → log|α^p−1| ≈ ln(p·1e-40)
        let p = 1_000_000u64;
        let v = log_pow_distance(1e-40, 0.0, p).unwrap();
        assert!((v - (1e-34f64).ln()).abs() < 1e-9);
    }

    #[test]
    fn delta_from_roots_matches_exact_norm() {
        // a = (1,3), p = 7 → log 8
        let a = ev(&[1, 3]);
        let rs = find_roots(&IntPoly::from_i64(&normalize(&a).dense)).unwrap();
        let ld = delta_from_roots(&a, 7, &rs).unwrap();
        assert!((ld - 8f64.ln()).abs() < 1e-9, "got {ld}");

        // a = (1,1), p = 3 → log 3 (p₀ = 2, single root −1/2)
        let a = ev(&[1, 1]);
        let rs = find_roots(&IntPoly::from_i64(&normalize(&a).dense)).unwrap();
        let ld = delta_from_roots(&a, 3, &rs).unwrap();
        assert!((ld - 3f64.ln()).abs() < 1e-12, "got {ld}");
    }

    #[test]
    fn delta_from_roots_rejects_zero_vector() {
        let a = ev(&[0, 0]);
        let rs = find_roots(&IntPoly::from_i64(&[1, 1])).unwrap();
        assert!(delta_from_roots(&a, 7, &rs).is_err());
    }

    #[test]
    fn delta_from_roots_pole_at_dividing_order() {
        // P_a for a = (1,2) has the primitive cube roots of unity as roots;
        // p = 3 makes α^p = 1.
        let a = ev(&[1, 2]);
        let rs = find_roots(&IntPoly::from_i64(&normalize(&a).dense)).unwrap();
        assert!(matches!(delta_from_roots(&a, 3, &rs), Err(Error::PoleAtOne)));
        // p = 7 does not divide 3: finite value, Δ_7((1,2)) = |Φ_3(ζ_7)…| > 0
        assert!(delta_from_roots(&a, 7, &rs).is_ok());
    }

    #[test]
    fn bset_examples_empty() {
        // both roots of 1+X+X² are on the circle: excluded by definition
        assert!(bset(&ev(&[1, 2]), 7, 2.0).unwrap().is_empty());
        // (1,3), p = 11, λ = 2: all three roots have |α^{±p} − 1| ≥ 11^{−2}
        assert!(bset(&ev(&[1, 3]), 11, 2.0).unwrap().is_empty());
        // (1,1), p = 5, λ = 1: root −1/2, |(−1/2)^5 − 1| = 33/32 ≥ 1/5
        assert!(bset(&ev(&[1, 1]), 5, 1.0).unwrap().is_empty());
    }

    #[test]
    fn bset_catches_engineered_near_one_root() {
        // 2X − 1 has root 1/2; |（1/2)^p − 1| is small only in the sense of
        // being close to 1... engineer instead with λ = 0.0 impossible; use
        // a root extremely close to the circle: 100X − 99 → α = 0.99,
        // |α^p − 1| < p^{-λ} for p=2, λ=1 fails (0.0199 > 0.5⁻¹?); test the
        // direct machinery on a synthetic entry instead.
        let entry = RootEntry {
            value: Complex::new(0.9999999, 0.0),
            multiplicity: 1,
            radius: 1e-12,
            modulus_minus_one: -1e-7,
        };
        let rs = RootSet {
            roots: vec![entry],
            leading: BigInt::from(1),
            degree: 1,
            zero_multiplicity: 0,
            terms: 2,
            squarefree: IntPoly::from_i64(&[-9999999, 10000000]),
            bits: 53,
        };
        let classes = vec![CircleClass::Inside];
        // |α^p − 1| ≈ p·1e-7 for small p; threshold p^{-1}: p = 100 →
        // 1e-5 < 1e-2 → in B
        let b = bset_from_roots(&rs, &classes, 100, 1.0).unwrap();
        assert_eq!(b, vec![0]);
        assert_eq!(bset_size(&rs, &b), 1);
    }

    #[test]
    fn sector_count_examples() {
        // X⁸ − 1: arc of length π/4 starting just after a root
        let mut coeffs = vec![0i64; 9];
        coeffs[0] = -1;
        coeffs[8] = 1;
        let rs = find_roots(&IntPoly::from_i64(&coeffs)).unwrap();
        let (count, bound) = sector_count(&rs, &Arc { start: 0.01, length: PI / 4.0 }).unwrap();
        assert!((bound - 3.0).abs() < 1e-12); // (1/8)·8 + 2 terms
        assert!(count <= 3);
        assert_eq!(count, 1);

        // full circle on 1+X+X²
        let rs = find_roots(&IntPoly::from_i64(&[1, 1, 1])).unwrap();
        let (count, bound) = sector_count(&rs, &Arc { start: 0.0, length: 2.0 * PI }).unwrap();
        assert_eq!(count, 2);
        assert!((bound - 5.0).abs() < 1e-12);
        assert!(count as f64 <= bound);
    }

    #[test]
    fn sector_count_indeterminate_on_boundary() {
        let mut coeffs = vec![0i64; 9];
        coeffs[0] = -1;
        coeffs[8] = 1;
        let rs = find_roots(&IntPoly::from_i64(&coeffs)).unwrap();
        // a root sits exactly at angle 0
        assert!(matches!(
            sector_count(&rs, &Arc { start: 0.0, length: 1.0 }),
            Err(Error::Indeterminate(_))
        ));
    }

    #[test]
    fn residual_table_single_root_case() {
        // a = (1,1), p = 3: single root −1/2, residual |log(9/8)|
        let table = residual_decomposition(&ev(&[1, 1]), 3, 1.0).unwrap();
        assert_eq!(table.rows.len(), 1);
        let expect = (9f64 / 8.0).ln();
        assert!((table.rows[0].residual - expect).abs() < 1e-12);
        assert!(!table.rows[0].in_bset);
        // aggregate = |log Δ/(p−1) − m(P_a)| = |log3/2 − log2|
        let expect_agg = (3f64.ln() / 2.0 - 2f64.ln()).abs();
        assert!((table.aggregate - expect_agg).abs() < 1e-12);
    }

    #[test]
    fn residual_table_root_of_unity_rows() {
        // a = (1,2), p = 7: order-3 roots of unity, residual |log|ζ^7−1|| finite
        let table = residual_decomposition(&ev(&[1, 2]), 7, 1.0).unwrap();
        assert_eq!(table.rows.len(), 2);
        // ζ^7 = ζ (order 3): |ζ − 1| = √3 for both primitive cube roots
        for row in &table.rows {
            assert!((row.residual - 3f64.sqrt().ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn residual_aggregate_for_period_vector() {
        // a = (1,3), p = 7: aggregate equals |log8/6 − m(1+X+X³)|
        let table = residual_decomposition(&ev(&[1, 3]), 7, 1.0).unwrap();
        let m = 0.3822450858400369; // −log of the inside root, by the product identity
        let expect = (8f64.ln() / 6.0 - m).abs();
        assert!((table.aggregate - expect).abs() < 1e-9);
    }

    #[test]
    fn precision_ladder_certifies_close_roots() {
        // (10X−9)(10X−9...) use a polynomial with two roots 1e-6 apart:
        // (X − 1)(X − (1+1e-6)) scaled: (X−1)(1000000X − 1000001)
        let f = IntPoly::from_i64(&[-1, 1]).mul(&IntPoly::from_i64(&[-1000001, 1000000]));
        let rs = find_roots(&f).unwrap();
        assert_eq!(rs.roots.len(), 2);
        assert!(disks_disjoint(&rs.roots));
        let vals: Vec<f64> = rs.roots.iter().map(|e| e.value.re).collect();
        assert!(vals.iter().any(|v| (v - 1.0).abs() < 1e-9));
        assert!(vals.iter().any(|v| (v - 1.000001).abs() < 1e-9));
    }

    #[test]
    fn convergents_recover_rational_angles() {
        let cs = convergents(3.0 / 7.0, 100);
        assert!(cs.contains(&(3, 7)));
        let cs = convergents(0.5, 100);
        assert!(cs.contains(&(1, 2)));
        let cs = convergents(0.0, 100);
        assert_eq!(cs, vec![(0, 1)]);
    }
}
