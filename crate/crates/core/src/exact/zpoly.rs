//! Dense integer polynomials used internally for remainder sequences.
//!
//! All remainders are taken up to a *positive* scalar factor and reduced to
//! their primitive part, which keeps Sturm sign patterns intact while holding
//! coefficient growth in check.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::quad::QuadExt;
use super::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ZPoly(pub Vec<BigInt>);

impl ZPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        ZPoly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> &BigInt {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the (positive) content; signs are untouched.
    pub fn primitive(mut self) -> Self {
        let g = self.content();
        if !g.is_zero() && !g.is_one() {
            for c in &mut self.0 {
                *c = &*c / &g;
            }
        }
        self
    }

    /// Primitive part normalized to a positive leading coefficient.
    pub fn normalized(self) -> Self {
        let mut p = self.primitive();
        if p.0.last().is_some_and(Signed::is_negative) {
            for c in &mut p.0 {
                *c = -&*c;
            }
        }
        p
    }

    pub fn negated(&self) -> Self {
        ZPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn derivative(&self) -> Self {
        ZPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// A positive multiple of `self mod divisor`, reduced to its primitive part.
    pub fn rem_positive(&self, divisor: &ZPoly) -> ZPoly {
        let dg = divisor.degree().expect("nonzero divisor");
        let lg = divisor.leading();
        let lg_abs = lg.abs();
        let lg_neg = lg.is_negative();
        let mut f = self.0.clone();
        while f.len() > dg && !f.is_empty() {
            let lf = f.last().unwrap().clone();
            if lf.is_zero() {
                f.pop();
                continue;
            }
            let shift = f.len() - 1 - dg;
            for c in f.iter_mut() {
                *c *= &lg_abs;
            }
            let factor = if lg_neg { -lf } else { lf };
            for (k, gc) in divisor.0.iter().enumerate() {
                f[k + shift] -= &factor * gc;
            }
            debug_assert!(f.last().unwrap().is_zero());
            f.pop();
        }
        ZPoly::new(f).primitive()
    }

    /// Sign at the rational point `x`, exact.
    pub fn sign_at(&self, x: &Rational) -> i8 {
        if self.is_zero() {
            return 0;
        }
        // q^d p(num/q) = Σ a_k num^k q^(d-k); q > 0 so the sign is p's.
        let num = x.numer();
        let den = x.denom();
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        for (k, c) in self.0.iter().enumerate().rev() {
            acc = acc * num + c * &den_pow;
            if k > 0 {
                den_pow *= den;
            }
        }
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    pub fn sign_at_quad(&self, x: &QuadExt) -> i8 {
        if let Some(q) = x.as_rational() {
            return self.sign_at(q);
        }
        let mut acc = QuadExt::zero();
        for c in self.0.iter().rev() {
            acc = acc
                .try_mul(x)
                .expect("same field")
                .add_rational(&Rational::from_integer(c.clone()));
        }
        acc.signum()
    }

    pub fn gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
        let (mut f, mut g) = (a.clone().normalized(), b.clone().normalized());
        if f.degree() < g.degree() {
            std::mem::swap(&mut f, &mut g);
        }
        while !g.is_zero() {
            let r = f.rem_positive(&g);
            f = g;
            g = r;
        }
        f.normalized()
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.0.iter().cloned().map(Rational::from_integer).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn z(v: &[i64]) -> ZPoly {
        ZPoly::new(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn sign_at_rational_points() {
        // z² + 3z + 1 at -1/3 is 1/9.
        let p = z(&[1, 3, 1]);
        assert_eq!(p.sign_at(&rat(-1, 3)), 1);
        assert_eq!(p.sign_at(&rat(-1, 1)), -1);
        // (2z - 1) at 1/2
        assert_eq!(z(&[-1, 2]).sign_at(&rat(1, 2)), 0);
        assert_eq!(z(&[-1, 2]).sign_at(&rat(3, 7)), -1);
    }

    #[test]
    fn remainder_is_positive_multiple() {
        // (z² + 1) mod (-z - 1) = 2 ; the positive-scaled version must be +.
        let r = z(&[1, 0, 1]).rem_positive(&z(&[-1, -1]));
        assert_eq!(r, z(&[1]));
        let r = z(&[0, 0, 0, 1]).rem_positive(&z(&[-1, 0, 1]));
        assert_eq!(r, z(&[0, 1]));
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (z+1)(z-2) and (z+1)(3z+5)
        let g = ZPoly::gcd(&z(&[-2, -1, 1]), &z(&[5, 8, 3]));
        assert_eq!(g, z(&[1, 1]));
        let g = ZPoly::gcd(&z(&[1, 0, 1]), &z(&[1, 1]));
        assert_eq!(g, z(&[1]));
    }
}
