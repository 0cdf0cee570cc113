//! Dense univariate polynomials over the rationals, lowest degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::quad::QuadExt;
use super::rational::{parse_rational, Rational};
use super::zpoly::ZPoly;
use crate::error::{Error, Result};

/// Canonical form: no trailing zero coefficient, so the zero polynomial is
/// the empty list and has no degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(
            c.iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The monomial `z`.
    pub fn z() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `slope·z + intercept`.
    pub fn linear(slope: Rational, intercept: Rational) -> Self {
        Self::new(vec![intercept, slope])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Exact value at a quadratic-field point; stays in that field.
    pub fn eval(&self, x: &QuadExt) -> QuadExt {
        if let Some(q) = x.as_rational() {
            return QuadExt::from_rational(self.eval_rational(q));
        }
        self.coeffs.iter().rev().fold(QuadExt::zero(), |acc, c| {
            acc.try_mul(x).expect("same field").add_rational(c)
        })
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let q = &rem[k + dd] / lc;
            if !q.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &q * dc;
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// `s` with `self = divisor·s`, or `NonZeroRemainder`.
    pub fn divide_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NonZeroRemainder {
                remainder: r.to_string(),
            })
        }
    }

    /// Number of times `z - root` divides `self`. Zero polynomial: error.
    pub fn multiplicity_at(&self, root: &Rational) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let factor = Poly::linear(Rational::one(), -root);
        let mut p = self.clone();
        let mut m = 0;
        while p.eval_rational(root).is_zero() {
            p = p.divide_exact(&factor)?;
            m += 1;
        }
        Ok(m)
    }

    /// Taylor shift `p(z + c)`.
    pub fn shift(&self, c: &Rational) -> Poly {
        let mut out = vec![Rational::zero(); self.coeffs.len()];
        // Horner with the linear polynomial z + c.
        for coeff in self.coeffs.iter().rev() {
            let mut next = vec![Rational::zero(); out.len()];
            for k in 0..out.len() {
                if out[k].is_zero() {
                    continue;
                }
                next[k] += &out[k] * c;
                if k + 1 < next.len() {
                    next[k + 1] += &out[k];
                }
            }
            next[0] += coeff;
            out = next;
        }
        Poly::new(out)
    }

    /// Scales to integer coefficients with gcd 1, keeping the sign of every
    /// coefficient (the scale factor is positive).
    pub(crate) fn to_zpoly(&self) -> ZPoly {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        ZPoly::new(ints).primitive()
    }

    pub(crate) fn from_zpoly(z: &ZPoly) -> Poly {
        Poly::new(z.to_rational())
    }

    /// Monic greatest common divisor; zero only if both inputs are zero.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        Poly::from_zpoly(&ZPoly::gcd(&a.to_zpoly(), &b.to_zpoly())).monic()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Poly> {
        items
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(Poly::new)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Poly, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        Poly::from_strings(&items).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn eval_examples() {
        let p = Poly::from_ints(&[1, 3, 1]);
        assert_eq!(p.eval_rational(&rat(-1, 3)), rat(1, 9));
        assert!(Poly::zero().eval_rational(&rat(7, 3)).is_zero());
        let w4 = Poly::from_ints(&[5, 22, 24, 9, 1]);
        assert_eq!(w4.eval_rational(&int(-2)), int(1));
    }

    #[test]
    fn eval_in_quadratic_field() {
        // z² + 3z + 1 at -4 + 2√2: 16 - 16√2 + 8 - 12 + 6√2 + 1 = 13 - 10√2
        let x = QuadExt::new(int(-4), int(2), int(2)).unwrap();
        let v = Poly::from_ints(&[1, 3, 1]).eval(&x);
        assert_eq!(v, QuadExt::new(int(13), int(-10), int(2)).unwrap());
    }

    #[test]
    fn exact_division_examples() {
        let p = Poly::from_ints(&[1, 2, 1]);
        let q = Poly::from_ints(&[1, 1]);
        assert_eq!(p.divide_exact(&q).unwrap(), Poly::from_ints(&[1, 1]));

        // W_3 for (1,1,1,1) = (z+1)(z²+3z+1) = z³ + 4z² + 4z + 1
        let w3 = Poly::from_ints(&[1, 4, 4, 1]);
        assert_eq!(w3.divide_exact(&q).unwrap(), Poly::from_ints(&[1, 3, 1]));

        let err = Poly::from_ints(&[1, 0, 1]).divide_exact(&q).unwrap_err();
        assert_eq!(
            err,
            Error::NonZeroRemainder {
                remainder: "2".into()
            }
        );
        assert_eq!(p.divide_exact(&Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn zero_polynomial_is_empty() {
        let z = Poly::new(vec![int(0), int(0)]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(z.coeffs().len(), 0);
    }

    #[test]
    fn multiplicity_by_repeated_division() {
        let p = Poly::from_ints(&[1, 1]).pow(3) * Poly::from_ints(&[1, 3, 1]);
        assert_eq!(p.multiplicity_at(&int(-1)).unwrap(), 3);
        assert_eq!(p.multiplicity_at(&int(2)).unwrap(), 0);
    }

    #[test]
    fn taylor_shift() {
        let p = Poly::from_ints(&[1, 3, 1]);
        let s = p.shift(&int(2));
        // (z+2)² + 3(z+2) + 1 = z² + 7z + 11
        assert_eq!(s, Poly::from_ints(&[11, 7, 1]));
    }

    #[test]
    fn display_and_json() {
        let p = Poly::new(vec![rat(1, 2), int(-3), int(0), int(1)]);
        assert_eq!(p.to_string(), "z^3 - 3z + (1/2)");
        let items = p.to_strings();
        assert_eq!(items, vec!["1/2", "-3", "0", "1"]);
        assert_eq!(Poly::from_strings(&items).unwrap(), p);
    }

    #[test]
    fn gcd_is_monic() {
        let a = Poly::from_ints(&[2, 2]) * Poly::from_ints(&[1, 0, 1]);
        let b = Poly::from_ints(&[3, 3]) * Poly::from_ints(&[-1, 1]);
        assert_eq!(Poly::gcd(&a, &b), Poly::from_ints(&[1, 1]));
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-20i64..20, 1i64..6), 0..7)
            .prop_map(|v| Poly::new(v.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    fn arb_point() -> impl Strategy<Value = QuadExt> {
        (-10i64..10, 1i64..5, -5i64..5, 0i64..12)
            .prop_map(|(a, d, b, r)| QuadExt::new(rat(a, d), int(b), int(r)).unwrap())
    }

    proptest! {
        #[test]
        fn divide_exact_inverts_multiplication(p in arb_poly(), q in arb_poly()) {
            prop_assume!(!q.is_zero());
            let prod = &p * &q;
            prop_assert_eq!(prod.divide_exact(&q).unwrap(), p);
        }

        #[test]
        fn eval_is_a_ring_homomorphism(p in arb_poly(), q in arb_poly(), x in arb_point()) {
            let sum = (&p + &q).eval(&x);
            prop_assert_eq!(sum, p.eval(&x).try_add(&q.eval(&x)).unwrap());
            let prod = (&p * &q).eval(&x);
            prop_assert_eq!(prod, p.eval(&x).try_mul(&q.eval(&x)).unwrap());
        }

        #[test]
        fn rational_field_axioms(a in (-50i64..50, 1i64..9), b in (-50i64..50, 1i64..9), c in (-50i64..50, 1i64..9)) {
            let (a, b, c) = (rat(a.0, a.1), rat(b.0, b.1), rat(c.0, c.1));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
            let renormalized = Rational::new(a.numer().clone(), a.denom().clone());
            prop_assert_eq!(renormalized, a);
        }
    }
}
