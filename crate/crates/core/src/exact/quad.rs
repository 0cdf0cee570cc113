//! Elements `q0 + q1·√r` of a real quadratic field.
//!
//! Values are normalized so that a rational value always has `q1 = 0` and
//! `r = 0`; in particular a perfect-square radicand collapses to a rational.
//! Arithmetic between two irrational elements requires compatible radicands
//! (`r1·r2` a rational square); comparison works across any two fields.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::rational::{rational_sqrt, sign_of, to_f64, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct QuadExt {
    q0: Rational,
    q1: Rational,
    radicand: Rational,
}

impl QuadExt {
    pub fn new(q0: Rational, q1: Rational, radicand: Rational) -> Result<Self> {
        if radicand.is_negative() {
            return Err(Error::NegativeRadicand(radicand.to_string()));
        }
        Ok(Self::normalized(q0, q1, radicand))
    }

    fn normalized(q0: Rational, q1: Rational, radicand: Rational) -> Self {
        if q1.is_zero() || radicand.is_zero() {
            return Self::from_rational(q0);
        }
        if let Some(root) = rational_sqrt(&radicand) {
            return Self::from_rational(q0 + q1 * root);
        }
        QuadExt { q0, q1, radicand }
    }

    pub fn from_rational(q: Rational) -> Self {
        QuadExt {
            q0: q,
            q1: Rational::zero(),
            radicand: Rational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    /// `√r` itself.
    pub fn sqrt(r: Rational) -> Result<Self> {
        Self::new(Rational::zero(), Rational::one(), r)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.q0
    }

    pub fn irrational_coeff(&self) -> &Rational {
        &self.q1
    }

    pub fn radicand(&self) -> &Rational {
        &self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.q1.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.q0)
    }

    pub fn is_zero(&self) -> bool {
        self.q0.is_zero() && self.q1.is_zero()
    }

    /// Exact sign of `q0 + q1·√r`.
    pub fn signum(&self) -> i8 {
        surd_sign(&self.q0, &self.q1, &self.radicand)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_rational() {
            return to_f64(&self.q0);
        }
        to_f64(&self.q0) + to_f64(&self.q1) * to_f64(&self.radicand).sqrt()
    }

    /// Re-expresses `other` over this element's radicand. Rationals fit any
    /// field; `√s = (√(rs)/r)·√r` whenever `rs` is a rational square.
    fn aligned(
        &self,
        other: &QuadExt,
    ) -> Result<(Rational, Rational, Rational, Rational, Rational)> {
        if other.is_rational() {
            return Ok((
                self.q0.clone(),
                self.q1.clone(),
                other.q0.clone(),
                Rational::zero(),
                self.radicand.clone(),
            ));
        }
        if self.is_rational() {
            return Ok((
                self.q0.clone(),
                Rational::zero(),
                other.q0.clone(),
                other.q1.clone(),
                other.radicand.clone(),
            ));
        }
        if self.radicand == other.radicand {
            return Ok((
                self.q0.clone(),
                self.q1.clone(),
                other.q0.clone(),
                other.q1.clone(),
                self.radicand.clone(),
            ));
        }
        let product = &self.radicand * &other.radicand;
        match rational_sqrt(&product) {
            Some(root) => {
                let k = root / &self.radicand;
                Ok((
                    self.q0.clone(),
                    self.q1.clone(),
                    other.q0.clone(),
                    &other.q1 * k,
                    self.radicand.clone(),
                ))
            }
            None => Err(Error::MixedRadicand(
                self.radicand.to_string(),
                other.radicand.to_string(),
            )),
        }
    }

    pub fn try_add(&self, other: &QuadExt) -> Result<QuadExt> {
        let (a0, a1, b0, b1, r) = self.aligned(other)?;
        Ok(Self::normalized(a0 + b0, a1 + b1, r))
    }

    pub fn try_sub(&self, other: &QuadExt) -> Result<QuadExt> {
        let (a0, a1, b0, b1, r) = self.aligned(other)?;
        Ok(Self::normalized(a0 - b0, a1 - b1, r))
    }

    pub fn try_mul(&self, other: &QuadExt) -> Result<QuadExt> {
        let (a0, a1, b0, b1, r) = self.aligned(other)?;
        let q0 = &a0 * &b0 + &a1 * &b1 * &r;
        let q1 = a0 * b1 + a1 * b0;
        Ok(Self::normalized(q0, q1, r))
    }

    pub fn try_div(&self, other: &QuadExt) -> Result<QuadExt> {
        let inv = other.inverse()?;
        self.try_mul(&inv)
    }

    pub fn inverse(&self) -> Result<QuadExt> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // (q0 - q1√r) / (q0² - q1² r); the norm is nonzero for a nonzero
        // element because r is never a rational square here.
        let norm = &self.q0 * &self.q0 - &self.q1 * &self.q1 * &self.radicand;
        Ok(Self::normalized(
            &self.q0 / &norm,
            -&self.q1 / &norm,
            self.radicand.clone(),
        ))
    }

    pub fn square(&self) -> QuadExt {
        self.try_mul(self).expect("same field")
    }

    pub fn pow(&self, mut exp: u32) -> QuadExt {
        let mut base = self.clone();
        let mut acc = QuadExt::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.try_mul(&base).expect("same field");
            }
            base = base.square();
            exp >>= 1;
        }
        acc
    }

    pub fn scale(&self, k: &Rational) -> QuadExt {
        Self::normalized(&self.q0 * k, &self.q1 * k, self.radicand.clone())
    }

    pub fn add_rational(&self, k: &Rational) -> QuadExt {
        Self::normalized(&self.q0 + k, self.q1.clone(), self.radicand.clone())
    }

    /// Conjugate `q0 - q1·√r`.
    pub fn conjugate(&self) -> QuadExt {
        Self::normalized(self.q0.clone(), -&self.q1, self.radicand.clone())
    }

    /// Smallest integer `k` with `self <= k`.
    pub fn ceil(&self) -> BigInt {
        if let Some(q) = self.as_rational() {
            return q.ceil().to_integer();
        }
        let mut k = BigInt::from(self.to_f64().ceil() as i64);
        while *self <= QuadExt::from_rational(Rational::from_integer(&k - 1)) {
            k -= 1;
        }
        while *self > QuadExt::from_rational(Rational::from_integer(k.clone())) {
            k += 1;
        }
        k
    }

    /// Exact comparison, valid across different quadratic fields.
    pub fn cmp_exact(&self, other: &QuadExt) -> Ordering {
        let s = match self.try_sub(other) {
            Ok(diff) => diff.signum(),
            Err(_) => two_surd_sign(
                &(&self.q0 - &other.q0),
                &self.q1,
                &self.radicand,
                &(-&other.q1),
                &other.radicand,
            ),
        };
        s.cmp(&0)
    }
}

/// Sign of `a + b·√r` (r ≥ 0) by exact rational comparisons.
pub(crate) fn surd_sign(a: &Rational, b: &Rational, r: &Rational) -> i8 {
    let sa = sign_of(a);
    let sb = if r.is_zero() { 0 } else { sign_of(b) };
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    // Opposite signs: the larger magnitude wins.
    match (a * a).cmp(&(b * b * r)) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    }
}

/// Sign of `a + b·√r + c·√s` by nested squaring.
fn two_surd_sign(a: &Rational, b: &Rational, r: &Rational, c: &Rational, s: &Rational) -> i8 {
    // Sign of the surd part p = b√r + c√s.
    let sb = if r.is_zero() { 0 } else { sign_of(b) };
    let sc = if s.is_zero() { 0 } else { sign_of(c) };
    let sp = if sb == 0 {
        sc
    } else if sc == 0 || sb == sc {
        sb
    } else {
        match (b * b * r).cmp(&(c * c * s)) {
            Ordering::Greater => sb,
            Ordering::Less => sc,
            Ordering::Equal => 0,
        }
    };
    let sa = sign_of(a);
    if sp == 0 {
        return sa;
    }
    if sa == 0 || sa == sp {
        return sp;
    }
    // a² - p² = (a² - b²r - c²s) - 2bc·√(rs)
    let rest = a * a - b * b * r - c * c * s;
    let cross = -(b * c * Rational::from_integer(BigInt::from(2)));
    match surd_sign(&rest, &cross, &(r * s)) {
        1 => sa,
        -1 => sp,
        _ => 0,
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_exact(other) == Ordering::Equal
    }
}

impl Eq for QuadExt {}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadExt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_exact(other)
    }
}

impl From<Rational> for QuadExt {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl std::ops::Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::normalized(-&self.q0, -&self.q1, self.radicand.clone())
    }
}

impl std::ops::Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.q0);
        }
        if self.q0.is_zero() {
            write!(f, "{}*sqrt({})", self.q1, self.radicand)
        } else if self.q1.is_negative() {
            write!(f, "{} - {}*sqrt({})", self.q0, -&self.q1, self.radicand)
        } else {
            write!(f, "{} + {}*sqrt({})", self.q0, self.q1, self.radicand)
        }
    }
}

/// JSON form: exact `q0`, `q1`, `r` strings plus a float approximation.
impl Serialize for QuadExt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QuadExt", 4)?;
        st.serialize_field("q0", &self.q0.to_string())?;
        st.serialize_field("q1", &self.q1.to_string())?;
        st.serialize_field("r", &self.radicand.to_string())?;
        st.serialize_field("approx", &self.to_f64())?;
        st.end()
    }
}

impl ToPrimitive for QuadExt {
    fn to_i64(&self) -> Option<i64> {
        self.to_f64().to_i64()
    }
    fn to_u64(&self) -> Option<u64> {
        self.to_f64().to_u64()
    }
    fn to_f64(&self) -> Option<f64> {
        Some(QuadExt::to_f64(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use proptest::prelude::*;

    fn q(a: i64, b: i64, r: i64) -> QuadExt {
        QuadExt::new(int(a), int(b), int(r)).unwrap()
    }

    #[test]
    fn sign_examples() {
        assert_eq!(q(-4, 2, 2).signum(), -1);
        assert_eq!(q(0, 0, 5).signum(), 0);
        assert_eq!(q(1, -1, 2).signum(), -1);
        assert_eq!(q(-1, 1, 2).signum(), 1);
        assert_eq!(q(3, -1, 9).signum(), 0);
    }

    #[test]
    fn perfect_square_radicand_normalizes() {
        let x = QuadExt::new(int(-4), int(2), rat(9, 4)).unwrap();
        assert!(x.is_rational());
        assert_eq!(x.as_rational(), Some(&int(-1)));
        let zero_rad = QuadExt::new(int(-3), int(5), int(0)).unwrap();
        assert_eq!(zero_rad, QuadExt::from_rational(int(-3)));
    }

    #[test]
    fn negative_radicand_rejected() {
        assert!(matches!(
            QuadExt::new(int(1), int(1), int(-2)),
            Err(Error::NegativeRadicand(_))
        ));
    }

    #[test]
    fn compatible_radicands_align() {
        // √8 = 2√2
        let a = q(1, 1, 2);
        let b = q(0, 1, 8);
        let s = a.try_add(&b).unwrap();
        assert_eq!(s, q(1, 3, 2));
        assert_eq!(s.radicand(), &int(2));
    }

    #[test]
    fn mixed_radicands_error_but_compare() {
        let a = q(0, 1, 2);
        let b = q(0, 1, 3);
        assert!(matches!(a.try_add(&b), Err(Error::MixedRadicand(_, _))));
        assert!(a < b);
        // √2 + √3 vs 3.14 (= 157/50): 3.146 > 3.14
        let lhs = q(0, 1, 2);
        let rhs = QuadExt::new(rat(157, 50), int(-1), int(3)).unwrap();
        assert!(lhs > rhs);
        let rhs2 = QuadExt::new(rat(315, 100), int(-1), int(3)).unwrap();
        assert!(lhs < rhs2);
    }

    #[test]
    fn inverse_and_ceil() {
        let x = q(1, 1, 2);
        let inv = x.inverse().unwrap();
        assert_eq!(inv, q(-1, 1, 2));
        assert_eq!(x.ceil(), BigInt::from(3));
        assert_eq!(q(-1, 1, 2).ceil(), BigInt::from(1));
        assert_eq!(QuadExt::from_rational(int(5)).ceil(), BigInt::from(5));
        assert_eq!(QuadExt::zero().inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let x = q(-4, 2, 2);
        let mut acc = QuadExt::one();
        for k in 0..8 {
            assert_eq!(x.pow(k), acc);
            acc = acc.try_mul(&x).unwrap();
        }
    }

    fn arb_quad() -> impl Strategy<Value = QuadExt> {
        (-30i64..30, 1i64..12, -30i64..30, 1i64..12, 0i64..40)
            .prop_map(|(a, da, b, db, r)| QuadExt::new(rat(a, da), rat(b, db), int(r)).unwrap())
    }

    proptest! {
        #[test]
        fn sign_is_odd_and_squares_nonnegative(x in arb_quad()) {
            let s = x.signum() * (-&x).signum();
            prop_assert!(s == 0 || s == -1);
            prop_assert!(x.square().signum() >= 0);
        }

        #[test]
        fn sign_agrees_with_float(x in arb_quad()) {
            let f = x.to_f64();
            if f.abs() > 1e-9 {
                prop_assert_eq!(x.signum() as f64, f.signum());
            }
        }
    }
}
