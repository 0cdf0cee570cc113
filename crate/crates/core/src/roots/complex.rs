//! Complex root clouds.
//!
//! Each square-free factor is handled separately. Its real roots come from
//! Sturm isolation refined to the tolerance, so they are certified and exactly
//! as many as the chain reports. Non-real roots come from Aberth–Ehrlich
//! iteration in double precision, where `p/p'` is evaluated exactly at the
//! (dyadic) iterate and only the final quotient is rounded. Error radii are
//! the Braess–Hadeler inclusion radii `deg·|p(z_i)| / |lc·∏_{j≠i}(z_i - z_j)|`.

use std::f64::consts::{LN_2, PI};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::rational::{from_f64, ldexp, ln_abs, ln_abs_bigint, to_f64};
use crate::exact::zpoly::ZPoly;
use crate::exact::{Poly, Rational};

use super::squarefree::squarefree_decomposition;
use super::sturm::RealRootIsolator;

pub const DEFAULT_TOL: f64 = 1e-10;
pub const MAX_ITERATIONS: usize = 1000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexRootApprox {
    pub re: f64,
    pub im: f64,
    /// A root of the stated multiplicity lies within this distance.
    pub radius: f64,
    pub multiplicity: usize,
}

impl ComplexRootApprox {
    pub fn is_real(&self) -> bool {
        self.im == 0.0
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// All roots of `p` with multiplicity, real ones first (ascending), then
/// conjugate pairs ordered by real part with the upper member first.
pub fn complex_roots(p: &Poly, tol: f64) -> Result<Vec<ComplexRootApprox>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Err(Error::InvalidArgument(
            "complex_roots needs degree >= 1".into(),
        ));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let mut real = Vec::new();
    let mut nonreal = Vec::new();
    for (factor, k) in squarefree_decomposition(p)? {
        let iso = RealRootIsolator::new(&factor)?;
        let width = from_f64(tol);
        for r in iso.isolate() {
            let r = iso.refine(&r, &width);
            real.push(ComplexRootApprox {
                re: r.approx(),
                im: 0.0,
                radius: to_f64(&r.width()) / 2.0,
                multiplicity: k,
            });
        }
        let n_real = iso.distinct_real_count();
        let deg = factor.degree().unwrap_or(0);
        if n_real < deg {
            let approx = aberth(&factor, tol)?;
            for (z, radius) in pair_conjugates(approx, n_real)? {
                nonreal.push(ComplexRootApprox {
                    re: z.re,
                    im: z.im,
                    radius,
                    multiplicity: k,
                });
                nonreal.push(ComplexRootApprox {
                    re: z.re,
                    im: -z.im,
                    radius,
                    multiplicity: k,
                });
            }
        }
    }
    real.sort_by(|x, y| x.re.total_cmp(&y.re));
    nonreal.sort_by(|x, y| x.re.total_cmp(&y.re).then(y.im.total_cmp(&x.im)));
    real.extend(nonreal);
    Ok(real)
}

/// Drops the `n_real` iterates nearest the real axis (those roots are
/// reported from Sturm isolation) and matches the rest into conjugate pairs,
/// returning the upper member of each symmetrized pair with its radius.
fn pair_conjugates(
    mut approx: Vec<(Complex64, f64)>,
    n_real: usize,
) -> Result<Vec<(Complex64, f64)>> {
    approx.sort_by(|x, y| x.0.im.abs().total_cmp(&y.0.im.abs()));
    let rest = approx.split_off(n_real);
    let (mut upper, mut lower): (Vec<_>, Vec<_>) = rest.into_iter().partition(|(z, _)| z.im > 0.0);
    if upper.len() != lower.len() {
        return Err(Error::Inconsistent(format!(
            "unbalanced conjugate pairing: {} upper vs {} lower",
            upper.len(),
            lower.len()
        )));
    }
    upper.sort_by(|x, y| x.0.re.total_cmp(&y.0.re));
    let mut out = Vec::with_capacity(upper.len());
    for (zu, ru) in upper {
        let (idx, _) = lower
            .iter()
            .enumerate()
            .map(|(i, (zl, _))| (i, (zu - zl.conj()).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .expect("balanced");
        let (zl, rl) = lower.swap_remove(idx);
        let mean = (zu + zl.conj()) / 2.0;
        let spread = (zu - zl.conj()).norm() / 2.0;
        out.push((mean, ru.max(rl) + spread));
    }
    Ok(out)
}

/// A complex dyadic number `(x + iy) / 2^e`.
struct Dyadic {
    x: BigInt,
    y: BigInt,
    e: u64,
}

/// Rounds `z` to a dyadic grid 2^-64 relative to its magnitude, so the
/// rounding stays below double precision.
fn to_dyadic(z: Complex64) -> (Dyadic, Complex64) {
    let mag = z.re.abs().max(z.im.abs()).max(1e-30);
    let e = (64 - mag.log2().floor() as i64).max(0) as u64;
    let scale = 2f64.powi(e as i32);
    let round = |v: f64| -> BigInt {
        let scaled = from_f64(v) * Rational::from_integer(BigInt::from(1) << e);
        scaled.round().to_integer()
    };
    let x = round(z.re);
    let y = round(z.im);
    let snapped = Complex64::new(
        x.to_f64().unwrap_or(0.0) / scale,
        y.to_f64().unwrap_or(0.0) / scale,
    );
    (Dyadic { x, y, e }, snapped)
}

/// `(Re, Im)` of `2^(e·deg) p(z)`, exact.
fn eval_scaled(p: &ZPoly, z: &Dyadic) -> (BigInt, BigInt) {
    let deg = p.degree().unwrap_or(0);
    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    for (k, c) in p.0.iter().enumerate().rev() {
        let nre = &re * &z.x - &im * &z.y;
        let nim = &re * &z.y + &im * &z.x;
        re = nre + (c << (z.e as usize * (deg - k)));
        im = nim;
    }
    (re, im)
}

/// `(re, im)` as `m · 2^s` with `m` a Complex64 of moderate size.
fn to_scaled(re: &BigInt, im: &BigInt) -> (Complex64, i64) {
    let bits = re.bits().max(im.bits()) as i64;
    let s = (bits - 60).max(0);
    let f = |v: &BigInt| -> f64 {
        let shifted: BigInt = if s > 0 { v >> s as usize } else { v.clone() };
        shifted.to_f64().unwrap_or(0.0)
    };
    (Complex64::new(f(re), f(im)), s)
}

struct Eval {
    /// `p(z) / p'(z)`, `None` when `p'(z)` vanishes.
    newton: Option<Complex64>,
    ln_abs_p: f64,
}

fn evaluate(p: &ZPoly, dp: &ZPoly, z: &Dyadic) -> Eval {
    let deg = p.degree().unwrap_or(0) as i64;
    let (pr, pi) = eval_scaled(p, z);
    if pr.is_zero() && pi.is_zero() {
        return Eval {
            newton: Some(Complex64::zero()),
            ln_abs_p: f64::NEG_INFINITY,
        };
    }
    let (mp, sp) = to_scaled(&pr, &pi);
    let e = z.e as i64;
    let ln_abs_p = mp.norm().ln() + (sp - e * deg) as f64 * LN_2;
    let (dr, di) = eval_scaled(dp, z);
    if dr.is_zero() && di.is_zero() {
        return Eval {
            newton: None,
            ln_abs_p,
        };
    }
    let (md, sd) = to_scaled(&dr, &di);
    // p / p' = (mp 2^sp / 2^(e deg)) / (md 2^sd / 2^(e (deg-1))).
    let exp = sp - sd - e;
    let ratio = mp / md;
    let newton = Complex64::new(ldexp(ratio.re, exp), ldexp(ratio.im, exp));
    Eval {
        newton: Some(newton),
        ln_abs_p,
    }
}

/// Initial iterates on a circle around the root centroid.
fn initial_guesses(p: &Poly) -> Vec<Complex64> {
    let deg = p.degree().expect("nonzero");
    let lc = p.leading().expect("nonzero").clone();
    let centre = -p.coeff(deg - 1) / (&lc * Rational::from_integer(BigInt::from(deg)));
    let shifted = p.shift(&centre);
    // Fujiwara bound on the shifted polynomial, in logs.
    let ln_lc = ln_abs(&lc);
    let mut ln_r = f64::NEG_INFINITY;
    for k in 1..=deg {
        let c = shifted.coeff(deg - k);
        if c.is_zero() {
            continue;
        }
        let mut v = (ln_abs(&c) - ln_lc) / k as f64;
        if k == deg {
            v = (ln_abs(&c) - ln_lc - LN_2) / k as f64;
        }
        ln_r = ln_r.max(v);
    }
    let radius = if ln_r.is_finite() {
        2.0 * ln_r.exp()
    } else {
        1.0
    };
    let c = Complex64::new(to_f64(&centre), 0.0);
    (0..deg)
        .map(|k| {
            let theta = 2.0 * PI * k as f64 / deg as f64 + 0.4;
            c + Complex64::from_polar(radius, theta)
        })
        .collect()
}

fn inclusion_radii(z: &[Complex64], ln_abs_p: &[f64], ln_lc: f64) -> Vec<f64> {
    let n = z.len();
    (0..n)
        .map(|i| {
            if ln_abs_p[i] == f64::NEG_INFINITY {
                return 0.0;
            }
            let mut ln_prod = 0.0;
            for j in 0..n {
                if j != i {
                    ln_prod += (z[i] - z[j]).norm().ln();
                }
            }
            ((n as f64).ln() + ln_abs_p[i] - ln_lc - ln_prod).exp()
        })
        .collect()
}

/// Simultaneous Aberth–Ehrlich iteration on a square-free `p`.
fn aberth(p: &Poly, tol: f64) -> Result<Vec<(Complex64, f64)>> {
    let zp = p.to_zpoly().normalized();
    let dzp = zp.derivative();
    let ln_lc = ln_abs_bigint(zp.leading());
    let mut z: Vec<Complex64> = initial_guesses(p);
    let n = z.len();
    let mut frozen = vec![false; n];
    let mut best: Option<Vec<f64>> = None;
    let eps = 4.0 * f64::EPSILON;

    for iter in 0..MAX_ITERATIONS {
        let mut all_small = true;
        for i in 0..n {
            if frozen[i] {
                continue;
            }
            let (d, snapped) = to_dyadic(z[i]);
            z[i] = snapped;
            let ev = evaluate(&zp, &dzp, &d);
            let Some(newton) = ev.newton else {
                // Stationary point of p: nudge off it.
                let nudge = Complex64::new(1e-7, 1e-7) * z[i].norm().max(1.0);
                z[i] += nudge;
                all_small = false;
                continue;
            };
            let mut repulse = Complex64::zero();
            for j in 0..n {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm() > 0.0 {
                        repulse += diff.inv();
                    }
                }
            }
            let step = newton / (Complex64::new(1.0, 0.0) - newton * repulse);
            if !step.is_finite() {
                all_small = false;
                continue;
            }
            z[i] -= step;
            if step.norm() <= eps * z[i].norm().max(f64::MIN_POSITIVE)
                || ev.ln_abs_p == f64::NEG_INFINITY
            {
                frozen[i] = true;
            } else {
                all_small = false;
            }
        }
        if all_small || iter % 8 == 7 {
            // Radii must be taken at the points where p is evaluated.
            let mut lp = Vec::with_capacity(n);
            for v in z.iter_mut() {
                let (d, snapped) = to_dyadic(*v);
                *v = snapped;
                lp.push(ln_abs_at(&zp, &d));
            }
            let radii = inclusion_radii(&z, &lp, ln_lc);
            let worst = max_of(&radii);
            if best.as_ref().is_none_or(|b| worst < max_of(b)) {
                best = Some(radii.clone());
            }
            if worst <= tol {
                return Ok(z.into_iter().zip(radii).collect());
            }
            if all_small {
                // Converged to working precision without certifying tol.
                return Err(no_convergence(iter + 1, best));
            }
        }
    }
    Err(no_convergence(MAX_ITERATIONS, best))
}

fn max_of(v: &[f64]) -> f64 {
    v.iter().cloned().fold(0.0, f64::max)
}

fn ln_abs_at(p: &ZPoly, z: &Dyadic) -> f64 {
    let (re, im) = eval_scaled(p, z);
    if re.is_zero() && im.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (m, s) = to_scaled(&re, &im);
    m.norm().ln() + (s - z.e as i64 * p.degree().unwrap_or(0) as i64) as f64 * LN_2
}

fn no_convergence(iterations: usize, best: Option<Vec<f64>>) -> Error {
    let best_radii = best.unwrap_or_default();
    let worst_radius = if best_radii.is_empty() {
        f64::INFINITY
    } else {
        max_of(&best_radii)
    };
    Error::NoConvergence {
        iterations,
        worst_radius,
        best_radii,
    }
}
