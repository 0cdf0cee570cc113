//! Closed-form quantities derived from `(a, b, c, d)`.
//!
//! With `A(z) = az + b`, `B(z) = cz + d`:
//!
//! * `Δ(z) = A² + 4B = a²z² + (2ab + 4c)z + (b² + 4d)`, zeros `x_Δ^±`,
//!   discriminant quantity `Δ_Δ = -a²d + abc + c²`;
//! * `g(z) = (1 - a)z² - (b + c)z - d`, zeros `x_g^±`,
//!   discriminant quantity `Δ_g = (b + c)² + 4d(1 - a)`;
//! * `h(z) = (2 - a)z - b`, so that `g = (h² - Δ)/4`;
//! * `n^± = -A(x_Δ^±) / h(x_Δ^±)`.
//!
//! Every comparison here is exact. Quantities that do not exist for a given
//! parameter set (a negative discriminant, `a = 2` for `x_h`, a zero
//! denominator for `n^±`) are `None`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::rational::{int, serde_rational};
use crate::exact::{Poly, QuadExt, Rational};
use crate::sequence::{RecurrenceParams, Regime};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    Minus,
    Plus,
}

impl Branch {
    fn sign(self) -> Rational {
        match self {
            Branch::Minus => -Rational::one(),
            Branch::Plus => Rational::one(),
        }
    }
}

/// A point that may be real (exact, in a quadratic field) or one of a
/// complex-conjugate pair `re ± i·im`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CriticalPoint {
    Real {
        value: QuadExt,
    },
    Complex {
        #[serde(with = "serde_rational")]
        re: Rational,
        im: QuadExt,
    },
}

impl CriticalPoint {
    pub fn approx(&self) -> (f64, f64) {
        match self {
            CriticalPoint::Real { value } => (value.to_f64(), 0.0),
            CriticalPoint::Complex { re, im } => (crate::exact::rational::to_f64(re), im.to_f64()),
        }
    }

    pub fn as_real(&self) -> Option<&QuadExt> {
        match self {
            CriticalPoint::Real { value } => Some(value),
            CriticalPoint::Complex { .. } => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalPoints {
    #[serde(with = "serde_rational")]
    pub x_a: Rational,
    #[serde(with = "serde_rational")]
    pub x_b: Rational,
    #[serde(with = "serde_rational")]
    pub disc_delta: Rational,
    #[serde(with = "serde_rational")]
    pub disc_g: Rational,
    pub x_delta_minus: Option<QuadExt>,
    pub x_delta_plus: Option<QuadExt>,
    /// `x_Δ^+` as a conjugate pair when `Δ_Δ < 0` (upper half-plane member).
    pub x_delta_complex: Option<CriticalPoint>,
    pub x_g_minus: Option<QuadExt>,
    pub x_g_plus: Option<QuadExt>,
    #[serde(serialize_with = "serialize_opt_rational")]
    pub x_h: Option<Rational>,
    pub h_at_x_delta_minus: Option<QuadExt>,
    pub h_at_x_delta_plus: Option<QuadExt>,
    pub n_minus: Option<QuadExt>,
    pub n_plus: Option<QuadExt>,
    pub u: Option<QuadExt>,
    pub v: Option<QuadExt>,
}

fn serialize_opt_rational<S: serde::Serializer>(
    q: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.collect_str(q),
        None => s.serialize_none(),
    }
}

/// `Δ(z) = A(z)² + 4B(z)`.
pub fn delta_poly(p: &RecurrenceParams) -> Poly {
    let a = p.lin_a();
    &(&a * &a) + &p.lin_b().scale(&int(4))
}

/// `g(z) = (1 - a)z² - (b + c)z - d`.
pub fn g_poly(p: &RecurrenceParams) -> Poly {
    Poly::new(vec![
        -p.d().clone(),
        -(p.b() + p.c()),
        Rational::one() - p.a(),
    ])
}

/// `h(z) = (2 - a)z - b = 2z - A(z)`.
pub fn h_poly(p: &RecurrenceParams) -> Poly {
    Poly::linear(int(2) - p.a(), -p.b().clone())
}

pub fn disc_delta(p: &RecurrenceParams) -> Rational {
    let (a, b, c, d) = (p.a(), p.b(), p.c(), p.d());
    -(a * a * d) + a * b * c + c * c
}

pub fn disc_g(p: &RecurrenceParams) -> Rational {
    let (a, b, c, d) = (p.a(), p.b(), p.c(), p.d());
    let bc = b + c;
    &bc * &bc + int(4) * d * (Rational::one() - a)
}

/// `x_Δ^±`, when `Δ_Δ >= 0`.
pub fn x_delta(p: &RecurrenceParams, branch: Branch) -> Option<QuadExt> {
    let dd = disc_delta(p);
    if dd.is_negative() {
        return None;
    }
    let a2 = p.a() * p.a();
    let q0 = -(p.a() * p.b() + int(2) * p.c()) / &a2;
    let q1 = branch.sign() * int(2) / a2;
    QuadExt::new(q0, q1, dd).ok()
}

/// `x_g^±`, when `Δ_g >= 0`. For `a = 1`, `g` is linear and both branches
/// are the single zero `-d/(b + c)`.
pub fn x_g(p: &RecurrenceParams, branch: Branch) -> Option<QuadExt> {
    let one_minus_a = Rational::one() - p.a();
    if one_minus_a.is_zero() {
        return Some(QuadExt::from_rational(-p.d() / (p.b() + p.c())));
    }
    let dg = disc_g(p);
    if dg.is_negative() {
        return None;
    }
    let q0 = (p.b() + p.c()) / (int(2) * &one_minus_a);
    let q1 = branch.sign() / (int(2) * one_minus_a.abs());
    QuadExt::new(q0, q1, dg).ok()
}

/// `A(x) = ax + b` at a quadratic-field point.
pub fn lin_a_at(p: &RecurrenceParams, x: &QuadExt) -> QuadExt {
    x.scale(p.a()).add_rational(p.b())
}

/// `h(x) = (2 - a)x - b` at a quadratic-field point.
pub fn h_at(p: &RecurrenceParams, x: &QuadExt) -> QuadExt {
    x.scale(&(int(2) - p.a())).add_rational(&-p.b().clone())
}

pub fn characteristic_data(p: &RecurrenceParams) -> CriticalPoints {
    let dd = disc_delta(p);
    let dg = disc_g(p);
    let xdm = x_delta(p, Branch::Minus);
    let xdp = x_delta(p, Branch::Plus);
    let x_delta_complex = if dd.is_negative() {
        let a2 = p.a() * p.a();
        let re = -(p.a() * p.b() + int(2) * p.c()) / &a2;
        let im = QuadExt::new(Rational::zero(), int(2) / a2, -dd.clone()).ok();
        im.map(|im| CriticalPoint::Complex { re, im })
    } else {
        None
    };
    let xgm = x_g(p, Branch::Minus);
    let xgp = x_g(p, Branch::Plus);
    let two = int(2);
    let x_h = (p.a() != &two).then(|| p.b() / (two - p.a()));

    let h_m = xdm.as_ref().map(|x| h_at(p, x));
    let h_p = xdp.as_ref().map(|x| h_at(p, x));
    let n_of = |x: &Option<QuadExt>, h: &Option<QuadExt>| -> Option<QuadExt> {
        let (x, h) = (x.as_ref()?, h.as_ref()?);
        if h.is_zero() {
            return None;
        }
        (-lin_a_at(p, x)).try_div(h).ok()
    };
    let n_minus = n_of(&xdm, &h_m);
    let n_plus = n_of(&xdp, &h_p);

    let u = if *p.a() <= int(2) {
        xdm.clone()
    } else {
        xgm.clone()
    };
    let v = if *p.a() <= Rational::one() {
        xgm.clone()
    } else {
        xgp.clone()
    };

    CriticalPoints {
        x_a: -p.b() / p.a(),
        x_b: -p.d() / p.c(),
        disc_delta: dd,
        disc_g: dg,
        x_delta_minus: xdm,
        x_delta_plus: xdp,
        x_delta_complex,
        x_g_minus: xgm,
        x_g_plus: xgp,
        x_h,
        h_at_x_delta_minus: h_m,
        h_at_x_delta_plus: h_p,
        n_minus,
        n_plus,
        u,
        v,
    }
}

/// Which real-zero guarantee applies when `ad > bc`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OnsetHypothesis {
    /// `h(x_Δ^+) > 0`: at least two distinct real zeros once `n >= n^+`.
    PositiveAtPlus,
    /// `h(x_Δ^+) < 0 < h(x_Δ^-)`: a real zero once `n > n^-`, two if
    /// additionally `Δ_g >= 0`.
    SignChange,
    /// `h(x_Δ^+) = 0 < h(x_Δ^-)`: covered by the sign-change argument with
    /// `W_n(x_Δ^+) = (A(x_Δ^+)/2)^n`.
    ZeroAtPlus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FamilyTag {
    RealRootedStrict,
    RealRootedEqual,
    NonRealGuaranteedRealZero,
    NonRealNoGuarantee,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyClass {
    pub tag: FamilyTag,
    pub hypothesis: Option<OnsetHypothesis>,
    /// `⌈max(n^-, n^+, 1)⌉` over the defined `n^±`.
    pub threshold_n: Option<u64>,
}

pub fn onset_hypothesis(cp: &CriticalPoints) -> Option<OnsetHypothesis> {
    let hp = cp.h_at_x_delta_plus.as_ref()?.signum();
    let hm = cp.h_at_x_delta_minus.as_ref()?.signum();
    match (hp, hm) {
        (1, _) => Some(OnsetHypothesis::PositiveAtPlus),
        (-1, 1) => Some(OnsetHypothesis::SignChange),
        (0, 1) => Some(OnsetHypothesis::ZeroAtPlus),
        _ => None,
    }
}

pub fn classify_family(p: &RecurrenceParams) -> FamilyClass {
    match p.regime() {
        Regime::Below => FamilyClass {
            tag: FamilyTag::RealRootedStrict,
            hypothesis: None,
            threshold_n: None,
        },
        Regime::Equal => FamilyClass {
            tag: FamilyTag::RealRootedEqual,
            hypothesis: None,
            threshold_n: None,
        },
        Regime::Above => {
            let cp = characteristic_data(p);
            match onset_hypothesis(&cp) {
                Some(h) => {
                    let mut top = QuadExt::one();
                    for n in [&cp.n_minus, &cp.n_plus].into_iter().flatten() {
                        if *n > top {
                            top = n.clone();
                        }
                    }
                    let threshold = top.ceil().to_u64().unwrap_or(u64::MAX);
                    FamilyClass {
                        tag: FamilyTag::NonRealGuaranteedRealZero,
                        hypothesis: Some(h),
                        threshold_n: Some(threshold),
                    }
                }
                None => FamilyClass {
                    tag: FamilyTag::NonRealNoGuarantee,
                    hypothesis: None,
                    threshold_n: None,
                },
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LimitCase {
    /// `0 < a <= 1`: isolated point `x_g^-`.
    #[serde(rename = "aAtMost1")]
    AAtMost1,
    /// `1 < a <= 2`, or `a > 2` with `Δ_Δ <= Δ_g`: isolated point `x_g^+`.
    #[serde(rename = "aIn1To2_or_DdLeDg")]
    AIn1To2OrDdLeDg,
    /// `a > 2` and `Δ_Δ > Δ_g`: isolated points `x_g^-` and `x_g^+`.
    #[serde(rename = "aGt2AndDdGtDg")]
    AGt2AndDdGtDg,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitSetDescriptor {
    /// `[x_Δ^-, x_Δ^+]`; present only when `ad < bc`.
    pub interval: Option<(QuadExt, QuadExt)>,
    pub isolated_points: Vec<QuadExt>,
    pub case_tag: Option<LimitCase>,
    /// `x_A`, `x_Δ^-`, `x_Δ^+` (the latter two possibly complex).
    pub always_nonisolated: Vec<CriticalPoint>,
}

impl LimitSetDescriptor {
    pub fn is_full(&self) -> bool {
        self.interval.is_some()
    }
}

pub fn limit_case(p: &RecurrenceParams) -> LimitCase {
    if *p.a() <= Rational::one() {
        LimitCase::AAtMost1
    } else if *p.a() <= int(2) || disc_delta(p) <= disc_g(p) {
        LimitCase::AIn1To2OrDdLeDg
    } else {
        LimitCase::AGt2AndDdGtDg
    }
}

pub fn limit_set(p: &RecurrenceParams) -> LimitSetDescriptor {
    let cp = characteristic_data(p);
    let mut always = vec![CriticalPoint::Real {
        value: QuadExt::from_rational(cp.x_a.clone()),
    }];
    match (&cp.x_delta_minus, &cp.x_delta_plus, &cp.x_delta_complex) {
        (Some(m), Some(pl), _) => {
            always.push(CriticalPoint::Real { value: m.clone() });
            always.push(CriticalPoint::Real { value: pl.clone() });
        }
        (_, _, Some(CriticalPoint::Complex { re, im })) => {
            always.push(CriticalPoint::Complex {
                re: re.clone(),
                im: -im,
            });
            always.push(CriticalPoint::Complex {
                re: re.clone(),
                im: im.clone(),
            });
        }
        _ => {}
    }

    if p.regime() != Regime::Below {
        return LimitSetDescriptor {
            interval: None,
            isolated_points: Vec::new(),
            case_tag: None,
            always_nonisolated: always,
        };
    }
    // ad < bc forces both discriminants positive.
    let lo = cp.x_delta_minus.clone().expect("Δ_Δ > 0 when ad < bc");
    let hi = cp.x_delta_plus.clone().expect("Δ_Δ > 0 when ad < bc");
    let gm = cp.x_g_minus.clone().expect("Δ_g > 0 when ad < bc");
    let gp = cp.x_g_plus.clone().expect("Δ_g > 0 when ad < bc");
    let case = limit_case(p);
    let isolated = match case {
        LimitCase::AAtMost1 => vec![gm],
        LimitCase::AIn1To2OrDdLeDg => vec![gp],
        LimitCase::AGt2AndDdGtDg => vec![gm, gp],
    };
    LimitSetDescriptor {
        interval: Some((lo, hi)),
        isolated_points: isolated,
        case_tag: Some(case),
        always_nonisolated: always,
    }
}

/// `(x_g^±)^n`, the closed value of `W_n` at a zero of `g`.
pub fn closed_value_at_xg(p: &RecurrenceParams, branch: Branch, n: u32) -> Result<QuadExt> {
    let x = x_g(p, branch).ok_or(Error::Undefined("x_g (Δ_g < 0)"))?;
    Ok(x.pow(n))
}

/// `(A + n·h)/2 · (A/2)^(n-1)` at `x_Δ^±`, for `n >= 1`.
pub fn closed_value_at_xdelta(p: &RecurrenceParams, branch: Branch, n: u32) -> Result<QuadExt> {
    if n == 0 {
        return Err(Error::Undefined("the x_Δ closed form at n = 0"));
    }
    let x = x_delta(p, branch).ok_or(Error::Undefined("x_Δ (Δ_Δ < 0)"))?;
    let half = Rational::new(1.into(), 2.into());
    let a_val = lin_a_at(p, &x);
    let h_val = h_at(p, &x);
    let head = a_val.try_add(&h_val.scale(&int(n as i64)))?.scale(&half);
    head.try_mul(&a_val.scale(&half).pow(n - 1))
}

fn alternating(exp: u64) -> i8 {
    if exp.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Predicted sign of `W_n(x_A)`.
///
/// `W_n(x_A) = B(x_A)^⌊n/2⌋ · W_{n mod 2}(x_A)`, so in the `x_A = x_B` row
/// the value vanishes only from `n = 2` on; `n = 0, 1` give `1` and `x_A`.
pub fn sign_at_xa(p: &RecurrenceParams, n: u64) -> i8 {
    match p.regime() {
        Regime::Below => alternating(n.div_ceil(2)),
        Regime::Equal if n >= 2 => 0,
        Regime::Equal | Regime::Above => alternating(n),
    }
}

/// Sign of `W_n` at `x_Δ^±` from the three-row table in `n` versus `n^±`:
/// `(-1)^n` if `h <= 0` or `n < n^±`, `0` if `n = n^±`, `(-1)^(n+1)` otherwise.
/// Valid wherever `A(x_Δ^±) < 0`, i.e. for `x_Δ^-` always and for `x_Δ^+`
/// when `x_A > x_B`.
fn sign_table(h: &QuadExt, n_threshold: Option<&QuadExt>, n: u64) -> i8 {
    if h.signum() <= 0 {
        return alternating(n);
    }
    let thr = n_threshold.expect("n^± exists when h != 0");
    let n_q = QuadExt::from_rational(Rational::from_integer(BigInt::from(n)));
    match n_q.cmp(thr) {
        std::cmp::Ordering::Less => alternating(n),
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => alternating(n + 1),
    }
}

pub fn predicted_sign_at_xdelta_minus(cp: &CriticalPoints, n: u64) -> Option<i8> {
    let h = cp.h_at_x_delta_minus.as_ref()?;
    Some(sign_table(h, cp.n_minus.as_ref(), n))
}

/// Only meaningful for `ad > bc`.
pub fn predicted_sign_at_xdelta_plus(cp: &CriticalPoints, n: u64) -> Option<i8> {
    let h = cp.h_at_x_delta_plus.as_ref()?;
    Some(sign_table(h, cp.n_plus.as_ref(), n))
}

/// `(-1)^n W_n(x_g^-) > 0` whenever `Δ_g >= 0`.
pub fn predicted_sign_at_xg_minus(cp: &CriticalPoints, n: u64) -> Option<i8> {
    cp.x_g_minus.as_ref().map(|_| alternating(n))
}

/// `8b√Δ_Δ / (a² h(x_Δ^-) h(x_Δ^+))`, the closed form of `n^+ - n^-`.
pub fn n_gap_closed_form(p: &RecurrenceParams, cp: &CriticalPoints) -> Option<QuadExt> {
    let hm = cp.h_at_x_delta_minus.as_ref()?;
    let hp = cp.h_at_x_delta_plus.as_ref()?;
    let denom = hm.try_mul(hp).ok()?.scale(&(p.a() * p.a()));
    QuadExt::sqrt(cp.disc_delta.clone())
        .ok()?
        .scale(&(int(8) * p.b()))
        .try_div(&denom)
        .ok()
}

/// `h(x_Δ^+) = ((a - 2)(c - √Δ_Δ) - ab) / (a²/2)`.
pub fn h_at_xdelta_plus_closed_form(p: &RecurrenceParams) -> Option<QuadExt> {
    let dd = disc_delta(p);
    let root = QuadExt::sqrt(dd).ok()?;
    let a = p.a();
    let inner = (-&root)
        .add_rational(p.c())
        .scale(&(a - int(2)))
        .add_rational(&-(a * p.b()));
    Some(inner.scale(&(int(2) / (a * a))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use crate::sequence::{gen_w, SequenceCache};

    fn q(a: i64, b: i64, r: i64) -> QuadExt {
        QuadExt::new(int(a), int(b), int(r)).unwrap()
    }

    fn p_onset() -> RecurrenceParams {
        RecurrenceParams::new(int(10), int(1), int(2), rat(239, 1000)).unwrap()
    }

    #[test]
    fn critical_points_of_1211() {
        let cp = characteristic_data(&RecurrenceParams::ints(1, 2, 1, 1));
        assert_eq!(cp.x_a, int(-2));
        assert_eq!(cp.x_b, int(-1));
        assert_eq!(cp.disc_delta, int(2));
        assert_eq!(cp.disc_g, int(9));
        assert_eq!(cp.x_delta_minus, Some(q(-4, -2, 2)));
        assert_eq!(cp.x_delta_plus, Some(q(-4, 2, 2)));
        let third = QuadExt::from_rational(rat(-1, 3));
        assert_eq!(cp.x_g_minus.as_ref(), Some(&third));
        assert_eq!(cp.x_g_plus.as_ref(), Some(&third));
        assert_eq!(cp.u, Some(q(-4, -2, 2)));
        assert_eq!(cp.v, Some(third));
        assert_eq!(cp.x_h, Some(int(2)));
    }

    #[test]
    fn critical_points_of_1111() {
        let cp = characteristic_data(&RecurrenceParams::ints(1, 1, 1, 1));
        assert_eq!(cp.x_a, int(-1));
        assert_eq!(cp.x_b, int(-1));
        assert_eq!(cp.disc_delta, int(1));
        assert_eq!(cp.x_delta_plus, Some(QuadExt::from_rational(int(-1))));
        assert_eq!(cp.x_delta_minus, Some(QuadExt::from_rational(int(-5))));
    }

    #[test]
    fn critical_points_of_onset_example() {
        let p = p_onset();
        let cp = characteristic_data(&p);
        assert_eq!(cp.disc_delta, rat(1, 10));
        assert_eq!(cp.disc_g, rat(99, 250));
        let n_plus = cp.n_plus.clone().unwrap();
        let n_minus = cp.n_minus.clone().unwrap();
        assert!(
            (n_plus.to_f64() - 4.852).abs() < 1e-3,
            "{}",
            n_plus.to_f64()
        );
        assert!(
            (n_minus.to_f64() - 2.715).abs() < 1e-3,
            "{}",
            n_minus.to_f64()
        );
        let gap = n_plus.try_sub(&n_minus).unwrap();
        assert_eq!(Some(gap), n_gap_closed_form(&p, &cp));
    }

    #[test]
    fn h_plus_closed_form_matches() {
        for p in [
            p_onset(),
            RecurrenceParams::ints(1, 2, 1, 1),
            RecurrenceParams::ints(5, 1, 7, 2),
        ] {
            let cp = characteristic_data(&p);
            assert_eq!(cp.h_at_x_delta_plus, h_at_xdelta_plus_closed_form(&p));
        }
    }

    #[test]
    fn family_examples() {
        let f = classify_family(&RecurrenceParams::ints(1, 2, 1, 1));
        assert_eq!(f.tag, FamilyTag::RealRootedStrict);
        let f = classify_family(&RecurrenceParams::ints(1, 1, 1, 1));
        assert_eq!(f.tag, FamilyTag::RealRootedEqual);
        let f = classify_family(&p_onset());
        assert_eq!(f.tag, FamilyTag::NonRealGuaranteedRealZero);
        assert_eq!(f.hypothesis, Some(OnsetHypothesis::PositiveAtPlus));
        assert_eq!(f.threshold_n, Some(5));
        let f = classify_family(&RecurrenceParams::ints(1, 1, 1, 2));
        assert_eq!(f.tag, FamilyTag::NonRealNoGuarantee);
    }

    #[test]
    fn limit_set_examples() {
        let ls = limit_set(&RecurrenceParams::ints(1, 2, 1, 1));
        assert_eq!(ls.case_tag, Some(LimitCase::AAtMost1));
        assert_eq!(ls.interval, Some((q(-4, -2, 2), q(-4, 2, 2))));
        assert_eq!(ls.isolated_points, vec![QuadExt::from_rational(rat(-1, 3))]);

        let p = RecurrenceParams::new(rat(3, 2), int(2), int(1), int(1)).unwrap();
        let ls = limit_set(&p);
        assert_eq!(ls.case_tag, Some(LimitCase::AIn1To2OrDdLeDg));
        assert_eq!(ls.isolated_points, vec![x_g(&p, Branch::Plus).unwrap()]);

        let ls = limit_set(&RecurrenceParams::ints(1, 1, 1, 2));
        assert!(!ls.is_full());
        let reals: Vec<_> = ls
            .always_nonisolated
            .iter()
            .map(|c| c.as_real().cloned().unwrap())
            .collect();
        let m1 = QuadExt::from_rational(int(-1));
        let m3 = QuadExt::from_rational(int(-3));
        assert_eq!(reals, vec![m1, m3.clone(), m3]);
    }

    #[test]
    fn closed_value_examples() {
        let p = RecurrenceParams::ints(1, 2, 1, 1);
        let v = closed_value_at_xg(&p, Branch::Minus, 2).unwrap();
        assert_eq!(v, QuadExt::from_rational(rat(1, 9)));
        assert_eq!(
            closed_value_at_xg(&p, Branch::Plus, 0).unwrap(),
            QuadExt::one()
        );
        let w2 = gen_w(&p, 2).unwrap();
        let x = x_delta(&p, Branch::Plus).unwrap();
        assert_eq!(
            closed_value_at_xdelta(&p, Branch::Plus, 2).unwrap(),
            w2.eval(&x)
        );
        assert_eq!(closed_value_at_xdelta(&p, Branch::Plus, 1).unwrap(), x);
        assert!(closed_value_at_xdelta(&p, Branch::Plus, 0).is_err());

        let p = RecurrenceParams::ints(1, 1, 1, 1);
        assert_eq!(
            closed_value_at_xg(&p, Branch::Minus, 3).unwrap(),
            QuadExt::from_rational(rat(-1, 8))
        );
        assert!(closed_value_at_xdelta(&p, Branch::Plus, 2)
            .unwrap()
            .is_zero());

        // Δ_g < 0: a = 3, b = c = d = 1 gives 4 - 8 < 0.
        let p = RecurrenceParams::ints(3, 1, 1, 1);
        assert_eq!(
            closed_value_at_xg(&p, Branch::Minus, 1),
            Err(Error::Undefined("x_g (Δ_g < 0)"))
        );
    }

    #[test]
    fn sign_at_xa_examples() {
        let p = RecurrenceParams::ints(1, 2, 1, 1);
        assert_eq!(sign_at_xa(&p, 2), -1);
        assert_eq!(gen_w(&p, 2).unwrap().eval_rational(&int(-2)), int(-1));
        let p = RecurrenceParams::ints(1, 1, 1, 1);
        for n in 2..10 {
            assert_eq!(sign_at_xa(&p, n), 0);
        }
        assert_eq!(sign_at_xa(&RecurrenceParams::ints(1, 1, 1, 2), 3), -1);
    }

    #[test]
    fn sign_tables_match_evaluation_small() {
        for p in [
            RecurrenceParams::ints(1, 2, 1, 1),
            RecurrenceParams::ints(1, 1, 1, 1),
            RecurrenceParams::ints(1, 1, 1, 2),
            p_onset(),
        ] {
            let cp = characteristic_data(&p);
            let mut cache = SequenceCache::new(p.clone());
            let w = cache.prefix(20).unwrap().to_vec();
            for (n, wn) in w.iter().enumerate() {
                let n64 = n as u64;
                assert_eq!(
                    sign_at_xa(&p, n64),
                    crate::exact::rational::sign_of(&wn.eval_rational(&cp.x_a))
                );
                if let (Some(x), Some(s)) =
                    (&cp.x_delta_minus, predicted_sign_at_xdelta_minus(&cp, n64))
                {
                    assert_eq!(s, wn.eval(x).signum(), "{p} n={n}");
                }
                if let (Some(x), Some(s)) = (&cp.x_g_minus, predicted_sign_at_xg_minus(&cp, n64)) {
                    assert_eq!(s, wn.eval(x).signum(), "{p} n={n}");
                }
            }
        }
    }
}
