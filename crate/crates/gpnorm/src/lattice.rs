//! Integer-lattice computations: orthogonal complements `Ω = Λ^⊥`, the
//! shortest-annihilator statistics `ρ(a;Ω)` and `ρ_p(a;Ω)` in the sup-norm,
//! the rank-2 pair-difference hypothesis check, Dirichlet reduction
//! `a ↦ ta − pω`, and the subgroups attached to Gaussian periods.
//!
//! Bases are kept in a canonical row-style Hermite form (lower-triangular,
//! positive pivots), so subgroup equality is matrix equality. All reductions
//! are exact integer arithmetic; floating point appears only inside the
//! enumeration bounds, inflated so the enumerated region is a superset.

use crate::arith::center_mod;
use crate::cyclonorm::smallest_element_of_order;
use crate::error::{Error, Result};
use crate::intpoly::{cyclotomic, euler_phi};
use crate::lacunary::ExponentVector;
use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

// ---------------------------------------------------------------------------
// Hermite normal form and kernels (BigInt, exact)

type Mat = Vec<Vec<BigInt>>;

fn mat_from_i64(rows: &[Vec<i64>]) -> Mat {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn rev_cols(m: &Mat) -> Mat {
    m.iter().map(|r| r.iter().rev().cloned().collect()).collect()
}

/// Division rounded to nearest (ties down); keeps HNF intermediates small.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    if &r * 2 > b.abs() {
        q + 1
    } else {
        q
    }
}

/// Row-style upper-echelon HNF with unimodular transform: returns `(H, U)`
/// with `U·M = H`, pivots positive, entries above each pivot in `[0, pivot)`.
fn hnf_upper_with_transform(m: &Mat) -> (Mat, Mat) {
    let nr = m.len();
    let nc = if nr == 0 { 0 } else { m[0].len() };
    let mut h = m.clone();
    let mut u: Mat = (0..nr)
        .map(|i| (0..nr).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut r = 0usize;
    for col in 0..nc {
        if r == nr {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..nr {
                if !h[i][col].is_zero()
                    && best.map(|b| h[i][col].abs() < h[b][col].abs()).unwrap_or(true)
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            h.swap(r, b);
            u.swap(r, b);
            let mut done = true;
            for i in (r + 1)..nr {
                if h[i][col].is_zero() {
                    continue;
                }
                let q = div_round(&h[i][col], &h[r][col]);
                if !q.is_zero() {
                    for k in 0..nc {
                        let t = &h[r][k] * &q;
                        h[i][k] -= t;
                    }
                    for k in 0..nr {
                        let t = &u[r][k] * &q;
                        u[i][k] -= t;
                    }
                }
                if !h[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !h[r][col].is_zero() {
            if h[r][col].is_negative() {
                for k in 0..nc {
                    h[r][k] = -h[r][k].clone();
                }
                for k in 0..nr {
                    u[r][k] = -u[r][k].clone();
                }
            }
            for i in 0..r {
                let q = h[i][col].div_floor(&h[r][col]);
                if !q.is_zero() {
                    for k in 0..nc {
                        let t = &h[r][k] * &q;
                        h[i][k] -= t;
                    }
                    for k in 0..nr {
                        let t = &u[r][k] * &q;
                        u[i][k] -= t;
                    }
                }
            }
            r += 1;
        }
    }
    (h, u)
}

/// Canonical lower-triangular row HNF: the pivot of each row is its last
/// non-zero entry, pivots positive with increasing positions, entries below
/// a pivot reduced into `[0, pivot)`. Zero rows are dropped.
fn hnf_lower(rows: &Mat) -> Mat {
    if rows.is_empty() {
        return vec![];
    }
    let rev = rev_cols(rows);
    let (h, _) = hnf_upper_with_transform(&rev);
    let mut out: Mat =
        rev_cols(&h).into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    out.reverse();
    out
}

/// Basis for `{x : x·M = 0}` (the left kernel), canonicalized.
fn left_kernel(m: &Mat) -> Mat {
    if m.is_empty() {
        return vec![];
    }
    let (h, u) = hnf_upper_with_transform(m);
    let mut ker: Mat = Vec::new();
    for (hr, ur) in h.iter().zip(u.iter()) {
        if hr.iter().all(|x| x.is_zero()) {
            ker.push(ur.clone());
        }
    }
    hnf_lower(&ker)
}

// ---------------------------------------------------------------------------
// Subgroups of Z^n

/// A finite-rank subgroup of `Z^n`, held as a canonical Hermite-form basis;
/// equality of subgroups is equality of the basis matrices. Complements are
/// primitive: `Z^n ∩ QΩ = Ω` whenever `Ω` arises from [`perp`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    ambient: usize,
    basis: Vec<Vec<i64>>,
}

impl Subgroup {
    /// Subgroup generated by the given (possibly dependent) rows.
    pub fn from_rows(ambient: usize, rows: &[Vec<i64>]) -> Result<Subgroup> {
        if ambient == 0 {
            return Err(Error::DimensionMismatch("ambient dimension must be positive".into()));
        }
        for r in rows {
            if r.len() != ambient {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in ambient dimension {ambient}",
                    r.len()
                )));
            }
        }
        let h = hnf_lower(&mat_from_i64(rows));
        let basis = mat_to_i64(&h)?;
        Ok(Subgroup { ambient, basis })
    }

    /// The full lattice `Z^n`.
    pub fn zn(n: usize) -> Subgroup {
        let mut basis = vec![vec![0i64; n]; n];
        for (i, row) in basis.iter_mut().enumerate() {
            row[i] = 1;
        }
        Subgroup { ambient: n, basis }
    }

    pub fn zero(n: usize) -> Subgroup {
        Subgroup { ambient: n, basis: vec![] }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// Exact coordinates of `a` over the basis, if `a` lies in the subgroup.
    pub fn coordinates(&self, a: &[i64]) -> Option<Vec<i64>> {
        if a.len() != self.ambient {
            return None;
        }
        let mut res: Vec<i128> = a.iter().map(|&x| x as i128).collect();
        let mut coeffs = vec![0i64; self.rank()];
        // rows have increasing pivot (last non-zero) positions; eliminate
        // from the largest pivot down
        for (i, row) in self.basis.iter().enumerate().rev() {
            let pivot_col = row.iter().rposition(|&x| x != 0).expect("basis rows are non-zero");
            let pivot = row[pivot_col] as i128;
            let v = res[pivot_col];
            if v % pivot != 0 {
                return None;
            }
            let c = v / pivot;
            coeffs[i] = i64::try_from(c).ok()?;
            for (k, &bk) in row.iter().enumerate() {
                res[k] -= c * bk as i128;
            }
        }
        if res.iter().all(|&x| x == 0) {
            Some(coeffs)
        } else {
            None
        }
    }

    pub fn contains(&self, a: &[i64]) -> bool {
        self.coordinates(a).is_some()
    }

    /// `Σ c_i · basis_i` with overflow checks.
    pub fn combination(&self, coeffs: &[i64]) -> Result<Vec<i64>> {
        assert_eq!(coeffs.len(), self.rank());
        let mut out = vec![0i128; self.ambient];
        for (c, row) in coeffs.iter().zip(&self.basis) {
            for (o, &b) in out.iter_mut().zip(row) {
                *o += *c as i128 * b as i128;
            }
        }
        out.into_iter()
            .map(|x| i64::try_from(x).map_err(|_| Error::Overflow("lattice combination")))
            .collect()
    }
}

fn mat_to_i64(m: &Mat) -> Result<Vec<Vec<i64>>> {
    m.iter()
        .map(|r| {
            r.iter().map(|x| x.to_i64().ok_or(Error::Overflow("basis entry exceeds i64"))).collect()
        })
        .collect()
}

/// Primitive orthogonal complement `{a ∈ Z^n : ⟨a, ω⟩ = 0 for all ω ∈ Ω}`.
pub fn perp(sub: &Subgroup) -> Subgroup {
    if sub.rank() == 0 {
        return Subgroup::zn(sub.ambient);
    }
    // left kernel of the transpose: x·Bᵀ = 0 ⟺ ⟨x, row_j⟩ = 0 for all j
    let bt: Mat = (0..sub.ambient)
        .map(|j| sub.basis.iter().map(|row| BigInt::from(row[j])).collect())
        .collect();
    let ker = left_kernel(&bt);
    Subgroup { ambient: sub.ambient, basis: mat_to_i64(&ker).expect("kernel entries fit i64") }
}

/// Orthogonal complement of the span of a relation list.
pub fn perp_of_rows(ambient: usize, rows: &[Vec<i64>]) -> Result<Subgroup> {
    Ok(perp(&Subgroup::from_rows(ambient, rows)?))
}

// ---------------------------------------------------------------------------
// Shortest sup-norm vectors: LLL preconditioning + exact ball enumeration

fn rational_gs(basis: &Mat) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let m = basis.len();
    let to_rat = |x: &BigInt| BigRational::from_integer(x.clone());
    let rows: Vec<Vec<BigRational>> =
        basis.iter().map(|r| r.iter().map(to_rat).collect()).collect();
    let mut mu = vec![vec![BigRational::zero(); m]; m];
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    let mut norms: Vec<BigRational> = Vec::with_capacity(m);
    for i in 0..m {
        let mut v = rows[i].clone();
        for j in 0..i {
            let dot: BigRational = rows[i].iter().zip(&star[j]).map(|(a, b)| a * b).sum();
            let coef = if norms[j].is_zero() { BigRational::zero() } else { &dot / &norms[j] };
            mu[i][j] = coef.clone();
            for (vk, sk) in v.iter_mut().zip(&star[j]) {
                *vk = vk.clone() - &coef * sk;
            }
        }
        let n2: BigRational = v.iter().map(|x| x * x).sum();
        norms.push(n2);
        star.push(v);
    }
    (mu, norms)
}

/// Textbook LLL (δ = 3/4) with exact rational Gram–Schmidt, recomputed per
/// step; ranks here stay ≤ 8, so simplicity wins over asymptotics.
fn lll_reduce(basis: &Mat) -> Mat {
    let mut b = basis.clone();
    let m = b.len();
    if m <= 1 {
        return b;
    }
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let (mut mu, mut norms) = rational_gs(&b);
    let mut k = 1usize;
    let mut guard = 0u32;
    while k < m && guard < 20_000 {
        guard += 1;
        for j in (0..k).rev() {
            let r = mu[k][j].round().to_integer();
            if !r.is_zero() {
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= &r * y;
                }
                // mu[k][j'] for j' < j depends on the updated row
                let (m2, n2) = rational_gs(&b);
                mu = m2;
                norms = n2;
            }
        }
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if norms[k] >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            let (m2, n2) = rational_gs(&b);
            mu = m2;
            norms = n2;
            k = k.max(2) - 1;
        }
    }
    b
}

fn sup_norm_i64(v: &[i64]) -> u64 {
    v.iter().map(|&x| x.unsigned_abs()).max().unwrap_or(0)
}

fn canonical_sign(v: &mut [i64]) {
    if let Some(&first) = v.iter().find(|&&x| x != 0) {
        if first < 0 {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
    }
}

/// Shortest non-zero vector of the lattice spanned by `rows`, in the
/// sup-norm, with a witness (`None` for the zero lattice).
///
/// Exact by construction: any vector with `|v|_∞ ≤ R` has `‖v‖₂ ≤ √m·R`,
/// so enumerating the ℓ₂-ball of radius `√m·R_best` around 0 covers every
/// candidate; candidates are then compared by exact integer arithmetic.
pub fn svp_sup_norm(ambient: usize, rows: &[Vec<i64>]) -> Result<Option<(u64, Vec<i64>)>> {
    let sub = Subgroup::from_rows(ambient, rows)?;
    if sub.rank() == 0 {
        return Ok(None);
    }
    let reduced = lll_reduce(&mat_from_i64(sub.basis()));
    let basis = mat_to_i64(&reduced)?;
    let m = basis.len();

    let mut best_norm = u64::MAX;
    let mut best_vec: Vec<i64> = vec![];
    {
        let mut consider = |v: &[i64]| {
            let n = sup_norm_i64(v);
            if n == 0 {
                return;
            }
            let mut vv = v.to_vec();
            canonical_sign(&mut vv);
            if n < best_norm || (n == best_norm && vv < best_vec) {
                best_norm = n;
                best_vec = vv;
            }
        };
        for row in &basis {
            consider(row);
        }
    }

    // float Gram–Schmidt of the reduced basis; every bound is inflated so
    // the enumerated coefficient region is a superset of the exact ball
    let bf: Vec<Vec<f64>> = basis.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
    let mut mu = vec![vec![0.0f64; m]; m];
    let mut star = bf.clone();
    let mut bnorm = vec![0.0f64; m];
    for i in 0..m {
        for j in 0..i {
            let dot: f64 = bf[i].iter().zip(&star[j]).map(|(a, b)| a * b).sum();
            mu[i][j] = if bnorm[j] > 0.0 { dot / bnorm[j] } else { 0.0 };
            let sj = star[j].clone();
            for (x, s) in star[i].iter_mut().zip(&sj) {
                *x -= mu[i][j] * s;
            }
        }
        bnorm[i] = star[i].iter().map(|x| x * x).sum();
    }

    let radius2 = (m as f64) * (best_norm as f64) * (best_norm as f64) * (1.0 + 1e-9) + 1e-9;
    let mut coeff = vec![0i64; m];
    let mut centers = vec![0.0f64; m];
    let mut partial = vec![0.0f64; m + 1];
    let mut nodes = 0u64;
    const NODE_CAP: u64 = 100_000_000;

    struct Frame {
        hi: i64,
        cur: i64,
    }
    let level_bounds = |lvl: usize, coeff: &[i64], centers: &mut [f64], partial: &[f64]| -> (i64, i64) {
        let mut c = 0.0;
        for j in (lvl + 1)..m {
            c += mu[j][lvl] * coeff[j] as f64;
        }
        centers[lvl] = c;
        let remaining = radius2 * (1.0 + 1e-12) - partial[lvl + 1];
        if remaining < 0.0 || bnorm[lvl] <= 0.0 {
            return (1, 0);
        }
        let half = (remaining / bnorm[lvl]).sqrt() * (1.0 + 1e-12) + 1e-12;
        ((-c - half).ceil() as i64, (-c + half).floor() as i64)
    };

    let mut stack: Vec<Frame> = Vec::with_capacity(m);
    {
        let (lo, hi) = level_bounds(m - 1, &coeff, &mut centers, &partial);
        stack.push(Frame { hi, cur: lo });
    }
    while !stack.is_empty() {
        let depth = stack.len();
        let lvl = m - depth;
        let (cur, hi) = {
            let f = stack.last().unwrap();
            (f.cur, f.hi)
        };
        if cur > hi {
            stack.pop();
            if let Some(f) = stack.last_mut() {
                f.cur += 1;
            }
            continue;
        }
        coeff[lvl] = cur;
        nodes += 1;
        if nodes > NODE_CAP {
            return Err(Error::EnumerationBound { bound: best_norm });
        }
        let x = cur as f64 + centers[lvl];
        partial[lvl] = partial[lvl + 1] + x * x * bnorm[lvl];
        if partial[lvl] > radius2 * (1.0 + 1e-12) {
            stack.last_mut().unwrap().cur += 1;
            continue;
        }
        if lvl == 0 {
            if coeff.iter().any(|&c| c != 0) {
                let mut v = vec![0i128; ambient];
                for (ci, row) in coeff.iter().zip(&basis) {
                    for (o, &bk) in v.iter_mut().zip(row) {
                        *o += *ci as i128 * bk as i128;
                    }
                }
                let vi: Option<Vec<i64>> = v.into_iter().map(|x| i64::try_from(x).ok()).collect();
                if let Some(vi) = vi {
                    let n = sup_norm_i64(&vi);
                    if n > 0 {
                        let mut vv = vi;
                        canonical_sign(&mut vv);
                        if n < best_norm || (n == best_norm && vv < best_vec) {
                            best_norm = n;
                            best_vec = vv;
                        }
                    }
                }
            }
            stack.last_mut().unwrap().cur += 1;
        } else {
            let (lo, hi) = level_bounds(lvl - 1, &coeff, &mut centers, &partial);
            stack.push(Frame { hi, cur: lo });
        }
    }

    Ok(Some((best_norm, best_vec)))
}

/// Value of `ρ`: the sup-norm of a shortest annihilator, or `Infinite` when
/// no non-zero annihilator exists in the subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rho {
    Finite { norm: u64, witness: Vec<i64> },
    Infinite,
}

impl Rho {
    pub fn norm(&self) -> Option<u64> {
        match self {
            Rho::Finite { norm, .. } => Some(*norm),
            Rho::Infinite => None,
        }
    }
}

fn pairing_vector(sub: &Subgroup, a: &[i64]) -> Result<Vec<i128>> {
    if a.len() != sub.ambient() {
        return Err(Error::DimensionMismatch(format!(
            "vector length {} vs ambient {}",
            a.len(),
            sub.ambient()
        )));
    }
    Ok(sub
        .basis()
        .iter()
        .map(|row| row.iter().zip(a).map(|(&b, &x)| b as i128 * x as i128).sum())
        .collect())
}

/// `ρ(a;Ω) = min{|ω| : ω ∈ Ω∖{0}, ⟨ω,a⟩ = 0}` by exact enumeration of the
/// annihilator sublattice `Ω ∩ a^⊥`.
pub fn rho(a: &ExponentVector, sub: &Subgroup) -> Result<Rho> {
    let w = pairing_vector(sub, a.entries())?;
    let rows: Vec<Vec<i64>> = if w.iter().all(|&x| x == 0) {
        sub.basis().to_vec()
    } else {
        // coefficient vectors c with ⟨c, w⟩ = 0, mapped down to Z^n
        let wmat: Mat = w.iter().map(|&x| vec![BigInt::from(x)]).collect();
        let ker = left_kernel(&wmat);
        let coeffs = mat_to_i64(&ker)?;
        coeffs.iter().map(|c| sub.combination(c)).collect::<Result<Vec<_>>>()?
    };
    if rows.is_empty() {
        return Ok(Rho::Infinite);
    }
    match svp_sup_norm(sub.ambient(), &rows)? {
        Some((norm, witness)) => Ok(Rho::Finite { norm, witness }),
        None => Ok(Rho::Infinite),
    }
}

/// `ρ_p(a;Ω) = min{|ω| : ω ∈ Ω∖{0}, ⟨ω,a⟩ ≡ 0 mod p}`; always finite since
/// `p·ω₁` qualifies.
pub fn rho_p(a: &ExponentVector, sub: &Subgroup, p: u64) -> Result<u64> {
    if !crate::arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if sub.rank() == 0 {
        return Err(Error::InvalidInput("rho_p of the zero subgroup".into()));
    }
    let w = pairing_vector(sub, a.entries())?;
    let m = sub.rank();
    let wp: Vec<u64> = w.iter().map(|&x| x.rem_euclid(p as i128) as u64).collect();
    let rows: Vec<Vec<i64>> = if wp.iter().all(|&x| x == 0) {
        sub.basis().to_vec()
    } else {
        let pivot = wp.iter().position(|&x| x != 0).unwrap();
        let inv = crate::arith::powmod(wp[pivot], p - 2, p);
        let mut coeff_rows: Vec<Vec<i64>> = Vec::with_capacity(m);
        let mut prow = vec![0i64; m];
        prow[pivot] = i64::try_from(p).map_err(|_| Error::Overflow("p exceeds i64"))?;
        coeff_rows.push(prow);
        for j in 0..m {
            if j == pivot {
                continue;
            }
            let mut row = vec![0i64; m];
            row[j] = 1;
            let q = crate::arith::mulmod(wp[j], inv, p);
            row[pivot] = -(q as i64);
            coeff_rows.push(row);
        }
        coeff_rows.iter().map(|c| sub.combination(c)).collect::<Result<Vec<_>>>()?
    };
    match svp_sup_norm(sub.ambient(), &rows)? {
        Some((norm, _)) => Ok(norm),
        None => unreachable!("mod-p annihilator lattice has full rank"),
    }
}

/// A failing configuration for the pair-difference hypothesis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisWitness {
    /// Pairwise distinct indices `(i, j, k, l)` in `{0,…,n}` (`e_0 = 0`).
    pub indices: (usize, usize, usize, usize),
    pub alpha: i64,
    pub beta: i64,
    /// `v = α(e_i − e_j) + β(e_k − e_l)` with `Ω ⊂ (vZ)^⊥`.
    pub v: Vec<i64>,
}

fn e_diff(ambient: usize, i: usize, j: usize) -> Vec<i64> {
    let mut v = vec![0i64; ambient];
    if i > 0 {
        v[i - 1] += 1;
    }
    if j > 0 {
        v[j - 1] -= 1;
    }
    v
}

/// Check the hypothesis: for every choice of pairwise distinct
/// `i,j,k,l ∈ {0,…,n}` and every `(α,β) ≠ 0`, the vector
/// `v = α(e_i−e_j) + β(e_k−e_l)` does not annihilate all of `Ω`.
///
/// For each 4-subset and each of its pairings, the `rank ≤ 1` test on the
/// matrix of pairings `⟨ω_r, e_i−e_j⟩, ⟨ω_r, e_k−e_l⟩` decides exactly
/// whether such an `(α,β)` exists. Returns a concrete witness on failure.
pub fn hypothesis_check(sub: &Subgroup) -> (bool, Option<HypothesisWitness>) {
    let n = sub.ambient();
    if n + 1 < 4 {
        return (true, None); // no 4 pairwise-distinct indices: vacuous
    }
    let dot =
        |row: &[i64], v: &[i64]| -> i128 { row.iter().zip(v).map(|(&a, &b)| a as i128 * b as i128).sum() };
    for i in 0..=(n - 3) {
        for j in (i + 1)..=(n - 2) {
            for k in (j + 1)..=(n - 1) {
                for l in (k + 1)..=n {
                    let q = [i, j, k, l];
                    for (p1, p2) in [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))] {
                        let v1 = e_diff(n, q[p1.0], q[p1.1]);
                        let v2 = e_diff(n, q[p2.0], q[p2.1]);
                        let col1: Vec<i128> = sub.basis().iter().map(|r| dot(r, &v1)).collect();
                        let col2: Vec<i128> = sub.basis().iter().map(|r| dot(r, &v2)).collect();
                        let rank_le_1 = (0..col1.len()).all(|r| {
                            ((r + 1)..col1.len())
                                .all(|s| col1[r] * col2[s] - col1[s] * col2[r] == 0)
                        });
                        if !rank_le_1 {
                            continue;
                        }
                        let (alpha, beta) =
                            match col1.iter().zip(&col2).find(|(&x, &y)| x != 0 || y != 0) {
                                None => (1i64, 0i64),
                                Some((&x, &y)) => {
                                    let g = num_integer::gcd(x.unsigned_abs(), y.unsigned_abs())
                                        as i128;
                                    ((y / g) as i64, (-(x / g)) as i64)
                                }
                            };
                        let mut v = vec![0i64; n];
                        for (vi, (v1i, v2i)) in v.iter_mut().zip(v1.iter().zip(&v2)) {
                            *vi = alpha * v1i + beta * v2i;
                        }
                        debug_assert!(sub.basis().iter().all(|r| dot(r, &v) == 0));
                        return (
                            false,
                            Some(HypothesisWitness {
                                indices: (q[p1.0], q[p1.1], q[p2.0], q[p2.1]),
                                alpha,
                                beta,
                                v,
                            }),
                        );
                    }
                }
            }
        }
    }
    (true, None)
}

/// Result of the Dirichlet reduction `a' = t·a − p·ω`.
#[derive(Clone, Debug)]
pub struct ReductionResult {
    pub t: u64,
    /// The subtracted lattice vector `ω ∈ Ω`.
    pub omega: Vec<i64>,
    pub a_prime: ExponentVector,
    /// `max_i dist(t·ν_i/p, Z)` achieved by the chosen `t`.
    pub quality: f64,
    /// Set when `a ∈ pΩ`: every `t` gives `a' = 0` with nearest rounding,
    /// so the shortest basis row (scaled by `p`) is returned instead. Such
    /// a result lies outside the usual bound regime.
    pub degenerate: bool,
    /// `Σ_i |ω_i|` over the basis rows: the constant in `|a'| ≤ c·p^{1−1/m}`.
    pub c_bound: u64,
}

/// Simultaneous Diophantine reduction: writes `a = Σ ν_i ω_i` exactly,
/// scans `t ∈ [1, p−1]` minimizing `max_i dist(t·ν_i/p, Z)` (smallest `t`
/// on ties), and returns `a' = t·a − p·ω` for the nearest integer vector.
///
/// The exhaustive scan achieves `quality ≤ (p−1)^{−1/m}`, hence
/// `|a'| ≤ (Σ_i |ω_i|)·p^{1−1/m}`.
pub fn dirichlet_reduce(a: &ExponentVector, sub: &Subgroup, p: u64) -> Result<ReductionResult> {
    if !crate::arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let nu = sub.coordinates(a.entries()).ok_or(Error::NotInSubgroup)?;
    let m = sub.rank();
    let c_bound: u64 = sub.basis().iter().map(|r| sup_norm_i64(r)).sum();

    let mut best_t = 1u64;
    let mut best_q = u64::MAX;
    for t in 1..p {
        let mut q = 0u64;
        for &ni in &nu {
            let r = ((t as i128 * ni as i128).rem_euclid(p as i128)) as u64;
            q = q.max(r.min(p - r));
            if q >= best_q {
                break;
            }
        }
        if q < best_q {
            best_q = q;
            best_t = t;
        }
    }

    if best_q == 0 {
        let j = (0..m).min_by_key(|&j| sup_norm_i64(&sub.basis()[j])).expect("non-zero subgroup");
        let mut nu_prime: Vec<i64> = nu.iter().map(|&x| x / p as i64).collect();
        nu_prime[j] -= 1;
        let omega = sub.combination(&nu_prime)?;
        let a_prime_vec = sub.basis()[j]
            .iter()
            .map(|&x| x.checked_mul(p as i64).ok_or(Error::Overflow("reduction")))
            .collect::<Result<Vec<i64>>>()?;
        return Ok(ReductionResult {
            t: 1,
            omega,
            a_prime: ExponentVector::new(a_prime_vec)?,
            quality: 1.0,
            degenerate: true,
            c_bound,
        });
    }

    let t = best_t;
    let mut nu_prime = Vec::with_capacity(m);
    let mut residues = Vec::with_capacity(m);
    for &ni in &nu {
        let rem = (t as i128 * ni as i128).rem_euclid(p as i128);
        let r = center_mod(i64::try_from(rem).map_err(|_| Error::Overflow("reduction residue"))?, p);
        residues.push(r);
        let tni = t as i128 * ni as i128;
        nu_prime.push(
            i64::try_from((tni - r as i128) / p as i128)
                .map_err(|_| Error::Overflow("reduction coefficient"))?,
        );
    }
    let omega = sub.combination(&nu_prime)?;
    let a_prime_vec = sub.combination(&residues)?;
    let quality = best_q as f64 / p as f64;
    debug_assert!(quality <= ((p - 1) as f64).powf(-1.0 / m as f64) + 1e-12);
    debug_assert!(a_prime_vec
        .iter()
        .zip(a.entries().iter().zip(&omega))
        .all(|(&ap, (&ai, &wi))| ap as i128 == t as i128 * ai as i128 - p as i128 * wi as i128));
    Ok(ReductionResult {
        t,
        omega,
        a_prime: ExponentVector::new(a_prime_vec)?,
        quality,
        degenerate: false,
        c_bound,
    })
}

/// The subgroup `Ω = Λ^⊥ ⊂ Z^{f−1}` attached to the order-`f` Gaussian
/// period, where `Λ = {b : Σ b_i (ξ^i − 1) = 0}` for a primitive `f`-th
/// root of unity `ξ`, computed exactly in the power basis of `Z[X]/Φ_f`.
/// The rank of the result is `φ(f)`; for prime `f` it is all of `Z^{f−1}`.
pub fn gaussian_omega(f: u64) -> Result<Subgroup> {
    if f < 3 || f % 2 == 0 {
        return Err(Error::InvalidInput(format!("f must be odd and at least 3, got {f}")));
    }
    let phi = cyclotomic(f);
    let deg = phi.degree();
    // coordinates of ξ^i − 1, i = 1..f−1, via X^i mod Φ_f
    let mut rows: Mat = Vec::with_capacity((f - 1) as usize);
    let mut cur = vec![BigInt::zero(); deg];
    if deg == 1 {
        cur[0] = -phi.coeffs[0].clone();
    } else {
        cur[1] = BigInt::one();
    }
    for _i in 1..f {
        let mut row = cur.clone();
        row[0] -= BigInt::one();
        rows.push(row);
        // multiply by X modulo the monic Φ_f
        let mut next = vec![BigInt::zero(); deg + 1];
        for (k, c) in cur.iter().enumerate() {
            next[k + 1] = c.clone();
        }
        let lead = next[deg].clone();
        if !lead.is_zero() {
            for k in 0..=deg {
                let t = &phi.coeffs[k] * &lead;
                next[k] -= t;
            }
        }
        next.pop();
        cur = next;
    }
    let lambda = left_kernel(&rows);
    let ambient = (f - 1) as usize;
    let lambda_sub = Subgroup { ambient, basis: mat_to_i64(&lambda)? };
    let omega = perp(&lambda_sub);
    debug_assert_eq!(omega.rank() as u64, euler_phi(f));
    Ok(omega)
}

/// Generator and exponent vector of the order-`f` Gaussian period sum: the
/// smallest `u` of exact multiplicative order `f` in `F_p^×`, and
/// `a_i = u^i − 1 mod p` for `i = 1..f−1`, so that
/// `|Σ_{g∈G} ζ^{tg}| = |1 + ζ^{t a_1} + ⋯ + ζ^{t a_{f−1}}|`.
pub fn period_exponents(p: u64, f: u64) -> Result<(u64, ExponentVector)> {
    if f < 2 {
        return Err(Error::BadSubgroupOrder { f, pm1: p.saturating_sub(1) });
    }
    let u = smallest_element_of_order(p, f)?;
    let mut entries = Vec::with_capacity((f - 1) as usize);
    let mut x = 1u64;
    for _ in 1..f {
        x = ((x as u128 * u as u128) % p as u128) as u64;
        let ai = (x + p - 1) % p;
        entries.push(ai as i64);
    }
    Ok((u, ExponentVector::new(entries)?))
}
