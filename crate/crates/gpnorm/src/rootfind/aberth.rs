//! Simultaneous root iteration (Aberth–Ehrlich) with a-posteriori residual
//! radii. Deterministic: initial points are equiangular on a coefficient
//! bound circle with a fixed angular offset, so identical inputs produce
//! identical output bit for bit.

use super::precision::{Cx, Real};
use crate::error::{Error, Result};

pub struct SolveOutcome<R> {
    pub roots: Vec<Cx<R>>,
    /// Certified inclusion radius per root: the disk of this radius around
    /// the returned point contains a true root (`INFINITY` when the residual
    /// bound could not certify one).
    pub radii: Vec<f64>,
    #[allow(dead_code)]
    pub iterations: u32,
}

/// Horner evaluation together with a running bound on the rounding error.
///
/// The bound is `condsum · (2d+2) · u` with `condsum = Σ|c_i| ρ^i` tracked in
/// f64 and inflated; standard running-error analysis makes this faithful.
fn eval_with_error<R: Real>(coeffs: &[Cx<R>], z: &Cx<R>, u: f64) -> (Cx<R>, f64) {
    let mut acc = coeffs.last().unwrap().clone();
    let rho = z.abs().to_f64() * (1.0 + 1e-15);
    let mut cond = acc.abs().to_f64();
    for c in coeffs.iter().rev().skip(1) {
        acc = acc.mul(z).add(c);
        cond = cond * rho + c.abs().to_f64();
    }
    let d = coeffs.len() - 1;
    let err = cond * (2 * d + 2) as f64 * u * 1.02;
    (acc, err)
}

fn derivative<R: Real>(coeffs: &[Cx<R>], prec: u32) -> Vec<Cx<R>> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| {
            let k = Cx::from_f64(prec, i as f64, 0.0);
            c.mul(&k)
        })
        .collect()
}

/// All complex roots of `Σ c_i X^i` (`coeffs[d] ≠ 0`, `d ≥ 1`) at the given
/// precision. `seeds`, when provided, warm-starts the iteration (used when
/// climbing the precision ladder).
pub fn aberth_solve<R: Real>(
    prec: u32,
    coeffs: &[Cx<R>],
    max_iters: u32,
    seeds: Option<&[num_complex::Complex<f64>]>,
) -> Result<SolveOutcome<R>> {
    let d = coeffs.len() - 1;
    assert!(d >= 1 && !coeffs[d].is_zero());
    let u = R::unit_roundoff(prec);
    let deriv = derivative(coeffs, prec);

    if d == 1 {
        let root = coeffs[0].div(&coeffs[1]).neg();
        let (val, err) = eval_with_error(coeffs, &root, u);
        let dv = coeffs[1].abs().to_f64();
        let radius = (val.abs().to_f64() + err) / dv;
        return Ok(SolveOutcome { roots: vec![root], radii: vec![radius], iterations: 0 });
    }

    // initial points: equiangular on the Cauchy-style radius, fixed offset
    let lead = coeffs[d].abs().to_f64();
    let maxc = coeffs[..d].iter().map(|c| c.abs().to_f64()).fold(0.0f64, f64::max);
    let r0 = 1.0 + maxc / lead;
    let mut zs: Vec<Cx<R>> = match seeds {
        Some(s) if s.len() == d => {
            s.iter().map(|z| Cx::from_f64(prec, z.re, z.im)).collect()
        }
        _ => (0..d)
            .map(|k| {
                let th = 2.0 * std::f64::consts::PI * (k as f64 + 0.353) / d as f64;
                Cx::from_f64(prec, r0 * th.cos(), r0 * th.sin())
            })
            .collect(),
    };

    let stop_tol = 2.0f64.powi(-(prec as i32 - 6));
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iters {
        iterations += 1;
        let mut max_step = 0.0f64;
        for i in 0..d {
            let (pv, perr) = eval_with_error(coeffs, &zs[i], u);
            let pv_abs = pv.abs().to_f64();
            if pv_abs <= perr {
                continue; // residual at the noise floor; leave the point alone
            }
            let (dv, _) = eval_with_error(&deriv, &zs[i], u);
            let w = if dv.is_zero() {
                // derivative vanished exactly: nudge off the stationary point
                Cx::from_f64(prec, 1e-3 / (i as f64 + 2.0), 1e-3)
            } else {
                pv.div(&dv)
            };
            let mut s = Cx::zero(prec);
            for j in 0..d {
                if j != i {
                    let diff = zs[i].sub(&zs[j]);
                    if diff.is_zero() {
                        continue;
                    }
                    s = s.add(&Cx::from_f64(prec, 1.0, 0.0).div(&diff));
                }
            }
            let denom = Cx::from_f64(prec, 1.0, 0.0).sub(&w.mul(&s));
            let step = if denom.is_zero() { w.clone() } else { w.div(&denom) };
            let rel = step.abs().to_f64() / (1.0 + zs[i].abs().to_f64());
            max_step = max_step.max(rel);
            zs[i] = zs[i].sub(&step);
        }
        if max_step <= stop_tol {
            converged = true;
            break;
        }
    }
    if !converged {
        // accept anyway if every residual sits at the rounding floor
        let all_floor = zs.iter().all(|z| {
            let (pv, perr) = eval_with_error(coeffs, z, u);
            pv.abs().to_f64() <= perr * 1.5
        });
        if !all_floor {
            return Err(Error::NonConvergence { bits: prec, iters: iterations });
        }
    }

    // a-posteriori inclusion radii: d·|F(z)| / |F'(z)|, made faithful by the
    // evaluation error bounds
    let radii: Vec<f64> = zs
        .iter()
        .map(|z| {
            let (pv, perr) = eval_with_error(coeffs, z, u);
            let (dv, derr) = eval_with_error(&deriv, z, u);
            let denom = dv.abs().to_f64() - derr;
            if denom <= 0.0 {
                f64::INFINITY
            } else {
                d as f64 * (pv.abs().to_f64() + perr) / denom
            }
        })
        .collect();
    Ok(SolveOutcome { roots: zs, radii, iterations })
}

/// Convenience: f64 roots of a complex-coefficient polynomial, without
/// certification (quadrature inner loops want speed, not radii).
pub fn roots_complex_f64(coeffs: &[num_complex::Complex<f64>]) -> Result<Vec<num_complex::Complex<f64>>> {
    let cx: Vec<Cx<f64>> = coeffs.iter().map(|c| Cx::new(c.re, c.im)).collect();
    let out = aberth_solve(53, &cx, 120, None)?;
    Ok(out.roots.iter().map(|z| z.to_complex_f64()).collect())
}
