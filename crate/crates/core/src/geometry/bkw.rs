//! Limit-of-zeros membership via the Beraha–Kahane–Weiss conditions.
//!
//! With `s = ±√Δ(z)`, `α_± = (s ± h)/(2s)` and `f = |A + s| - |A - s|`, a
//! point is a limit of zeros iff `α_- = 0, f < 0` (C-i), `α_+ = 0, f > 0`
//! (C-ii) or `f = 0` (C-iii). Flipping the sign of `s` swaps `α_+` with
//! `α_-` and negates `f`, so membership does not depend on the branch.

use num_complex::Complex64;
use serde::Serialize;

use crate::closed_forms::{delta_poly, g_poly, h_poly};
use crate::exact::rational::to_f64;
use crate::exact::QuadExt;
use crate::sequence::RecurrenceParams;

/// Default relative zero tolerance for floating comparisons.
pub const DEFAULT_ZERO_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BkwCondition {
    #[serde(rename = "C-i")]
    AlphaMinusZero,
    #[serde(rename = "C-ii")]
    AlphaPlusZero,
    #[serde(rename = "C-iii")]
    EqualModuli,
    #[serde(rename = "none")]
    None,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BkwVerdict {
    pub point: (f64, f64),
    pub f_value: f64,
    /// `None` where `Δ(z) = 0` makes `α_±` undefined.
    pub alpha_minus: Option<(f64, f64)>,
    pub alpha_plus: Option<(f64, f64)>,
    pub member: bool,
    pub via: BkwCondition,
    /// Decided by exact arithmetic rather than tolerances.
    pub exact: bool,
}

fn pair(z: Complex64) -> (f64, f64) {
    (z.re, z.im)
}

fn decide(alpha_minus_zero: bool, alpha_plus_zero: bool, f_sign: i8) -> (bool, BkwCondition) {
    if alpha_minus_zero && f_sign < 0 {
        (true, BkwCondition::AlphaMinusZero)
    } else if alpha_plus_zero && f_sign > 0 {
        (true, BkwCondition::AlphaPlusZero)
    } else if f_sign == 0 {
        (true, BkwCondition::EqualModuli)
    } else {
        (false, BkwCondition::None)
    }
}

fn eval_c(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Floating-point classification on the principal branch.
pub fn bkw_classify(params: &RecurrenceParams, z: Complex64) -> BkwVerdict {
    bkw_classify_with(params, z, DEFAULT_ZERO_TOL, false)
}

/// `flip_branch` uses `-√Δ` instead of the principal root.
pub fn bkw_classify_with(
    params: &RecurrenceParams,
    z: Complex64,
    tol: f64,
    flip_branch: bool,
) -> BkwVerdict {
    let to_f = |p: crate::exact::Poly| -> Vec<f64> { p.coeffs().iter().map(to_f64).collect() };
    let delta = eval_c(&to_f(delta_poly(params)), z);
    let a_val = eval_c(&to_f(params.lin_a()), z);
    let h_val = eval_c(&to_f(h_poly(params)), z);

    // Real z with Δ(z) <= 0: A ± s are complex conjugates, so f = 0 exactly.
    let real_inside = z.im == 0.0 && delta.re <= 0.0;
    let mut s = delta.sqrt();
    if flip_branch {
        s = -s;
    }
    let plus = (a_val + s).norm();
    let minus = (a_val - s).norm();
    let f_value = if real_inside { 0.0 } else { plus - minus };
    let scale = (plus + minus).max(f64::MIN_POSITIVE);
    let f_sign = if real_inside || f_value.abs() <= tol * scale {
        0
    } else if f_value > 0.0 {
        1
    } else {
        -1
    };

    let (alpha_minus, alpha_plus) = if s.norm() == 0.0 {
        (None, None)
    } else {
        (Some((s - h_val) / (2.0 * s)), Some((s + h_val) / (2.0 * s)))
    };
    let is_zero = |a: Option<Complex64>| a.is_some_and(|a| a.norm() <= tol);
    let (member, via) = decide(is_zero(alpha_minus), is_zero(alpha_plus), f_sign);
    BkwVerdict {
        point: pair(z),
        f_value,
        alpha_minus: alpha_minus.map(pair),
        alpha_plus: alpha_plus.map(pair),
        member,
        via,
        exact: real_inside,
    }
}

/// Exact classification at a real point of a quadratic field.
///
/// For `Δ(x) <= 0` the moduli agree. Otherwise `√Δ > 0` on the principal
/// branch, so `sign f = sign A(x)`, and `α_∓ = 0` iff `g(x) = 0` with
/// `h(x)` positive (resp. negative), since `g = (h² - Δ)/4`.
pub fn bkw_classify_exact(params: &RecurrenceParams, x: &QuadExt) -> BkwVerdict {
    let delta = delta_poly(params).eval(x);
    let a_val = params.lin_a().eval(x);
    let h_val = h_poly(params).eval(x);
    let g_zero = g_poly(params).eval(x).is_zero();

    let (f_sign, alpha_minus_zero, alpha_plus_zero) = if delta.signum() <= 0 {
        (0, false, false)
    } else {
        let hs = h_val.signum();
        (a_val.signum(), g_zero && hs > 0, g_zero && hs < 0)
    };
    let (member, via) = decide(alpha_minus_zero, alpha_plus_zero, f_sign);

    // Floating companions for the report.
    let xf = x.to_f64();
    let (df, af, hf) = (delta.to_f64(), a_val.to_f64(), h_val.to_f64());
    let (f_value, alphas) = if df > 0.0 {
        let s = df.sqrt();
        let am = if alpha_minus_zero {
            0.0
        } else {
            (s - hf) / (2.0 * s)
        };
        let ap = if alpha_plus_zero {
            0.0
        } else {
            (s + hf) / (2.0 * s)
        };
        (
            (af + s).abs() - (af - s).abs(),
            Some(((am, 0.0), (ap, 0.0))),
        )
    } else if df < 0.0 {
        let s = Complex64::new(0.0, (-df).sqrt());
        let h = Complex64::new(hf, 0.0);
        (
            0.0,
            Some((pair((s - h) / (2.0 * s)), pair((s + h) / (2.0 * s)))),
        )
    } else {
        (0.0, None)
    };
    BkwVerdict {
        point: (xf, 0.0),
        f_value: if f_sign == 0 { 0.0 } else { f_value },
        alpha_minus: alphas.map(|a| a.0),
        alpha_plus: alphas.map(|a| a.1),
        member,
        via,
        exact: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::{characteristic_data, limit_set};
    use crate::exact::rational::{int, rat};
    use proptest::prelude::*;

    fn p1211() -> RecurrenceParams {
        RecurrenceParams::ints(1, 2, 1, 1)
    }

    #[test]
    fn exact_examples() {
        let p = p1211();
        let v = bkw_classify_exact(&p, &QuadExt::from_rational(int(-2)));
        assert!(v.member);
        assert_eq!(v.via, BkwCondition::EqualModuli);
        assert_eq!(v.f_value, 0.0);

        let v = bkw_classify_exact(&p, &QuadExt::from_rational(rat(-1, 3)));
        assert!(v.member);
        assert_eq!(v.via, BkwCondition::AlphaPlusZero);
        assert!(v.f_value > 0.0);

        let v = bkw_classify_exact(&p, &QuadExt::zero());
        assert!(!v.member);
        assert!(v.f_value != 0.0);
    }

    #[test]
    fn float_examples_agree_with_exact() {
        let p = p1211();
        let v = bkw_classify(&p, Complex64::new(-2.0, 0.0));
        assert!(v.member && v.via == BkwCondition::EqualModuli && v.f_value == 0.0);
        let v = bkw_classify(&p, Complex64::new(-1.0 / 3.0, 0.0));
        assert!(v.member && v.via == BkwCondition::AlphaPlusZero && v.f_value > 0.0);
        let v = bkw_classify(&p, Complex64::new(0.0, 0.0));
        assert!(!v.member);
    }

    #[test]
    fn critical_points_of_strict_case() {
        let p = p1211();
        let cp = characteristic_data(&p);
        for x in [cp.x_delta_minus.unwrap(), cp.x_delta_plus.unwrap()] {
            let v = bkw_classify_exact(&p, &x);
            assert!(v.member && v.via == BkwCondition::EqualModuli);
        }
        let ls = limit_set(&p);
        for x in &ls.isolated_points {
            assert!(bkw_classify_exact(&p, x).member);
        }
    }

    #[test]
    fn non_degeneracy_at_zero() {
        for p in [
            p1211(),
            RecurrenceParams::ints(1, 1, 1, 2),
            RecurrenceParams::ints(7, 1, 3, 5),
        ] {
            assert!(bkw_classify_exact(&p, &QuadExt::zero()).f_value != 0.0);
        }
    }

    proptest! {
        #[test]
        fn membership_ignores_branch(re in -10.0f64..10.0, im in -10.0f64..10.0, a in 1i64..6, b in 1i64..6, c in 1i64..6, d in 1i64..6) {
            let p = RecurrenceParams::ints(a, b, c, d);
            let z = Complex64::new(re, im);
            let v1 = bkw_classify_with(&p, z, DEFAULT_ZERO_TOL, false);
            let v2 = bkw_classify_with(&p, z, DEFAULT_ZERO_TOL, true);
            prop_assert_eq!(v1.member, v2.member);
            prop_assert!((v1.f_value + v2.f_value).abs() <= 1e-9 * (1.0 + v1.f_value.abs()));
            if let (Some(am), Some(ap)) = (v1.alpha_minus, v2.alpha_plus) {
                let scale = 1.0 + am.0.abs() + am.1.abs();
                prop_assert!((am.0 - ap.0).abs() < 1e-9 * scale && (am.1 - ap.1).abs() < 1e-9 * scale);
            }
        }

        #[test]
        fn equal_moduli_inside_delta_interval(t in 0.0f64..=1.0) {
            let p = p1211();
            let cp = characteristic_data(&p);
            let (lo, hi) = (cp.x_delta_minus.unwrap(), cp.x_delta_plus.unwrap());
            let x = lo.to_f64() + t * (hi.to_f64() - lo.to_f64());
            let qx = QuadExt::from_rational(crate::exact::rational::from_f64(x));
            prop_assume!(qx >= lo && qx <= hi);
            let v = bkw_classify_exact(&p, &qx);
            prop_assert!(v.member);
            prop_assert_eq!(v.f_value, 0.0);
            let vf = bkw_classify(&p, Complex64::new(x, 0.0));
            prop_assert!(vf.member);
        }
    }
}
