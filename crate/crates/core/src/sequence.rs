//! Generation of `W_n`, the reduced sequence `U_n`, and the two independent
//! cross-checks: the order-four recurrence and the generating function.

use std::cmp::Ordering;

use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::rational::{int, parse_rational, serde_rational};
use crate::exact::{Poly, Rational};

/// Largest index generated unless overridden.
pub const DEFAULT_MAX_N: usize = 200;

/// Environment variable that overrides [`DEFAULT_MAX_N`].
pub const MAX_N_ENV: &str = "ROOTGEO_MAX_N";

pub fn max_n_from_env() -> usize {
    std::env::var(MAX_N_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_N)
}

/// Position of `x_A = -b/a` relative to `x_B = -d/c`, i.e. the sign of
/// `ad - bc`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Regime {
    /// `ad < bc`, `x_A < x_B`.
    Below,
    /// `ad = bc`, `x_A = x_B`.
    Equal,
    /// `ad > bc`, `x_A > x_B`.
    Above,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RecurrenceParams {
    #[serde(with = "serde_rational")]
    a: Rational,
    #[serde(with = "serde_rational")]
    b: Rational,
    #[serde(with = "serde_rational")]
    c: Rational,
    #[serde(with = "serde_rational")]
    d: Rational,
}

impl RecurrenceParams {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self> {
        for (name, v) in [("a", &a), ("b", &b), ("c", &c), ("d", &d)] {
            if !v.is_positive() {
                return Err(Error::NonPositiveParameter {
                    name,
                    value: v.to_string(),
                });
            }
        }
        Ok(RecurrenceParams { a, b, c, d })
    }

    pub fn parse(a: &str, b: &str, c: &str, d: &str) -> Result<Self> {
        Self::new(
            parse_rational(a)?,
            parse_rational(b)?,
            parse_rational(c)?,
            parse_rational(d)?,
        )
    }

    /// Integer parameters; panics if any is nonpositive.
    pub fn ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(int(a), int(b), int(c), int(d)).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }
    pub fn b(&self) -> &Rational {
        &self.b
    }
    pub fn c(&self) -> &Rational {
        &self.c
    }
    pub fn d(&self) -> &Rational {
        &self.d
    }

    /// `A(z) = az + b`.
    pub fn lin_a(&self) -> Poly {
        Poly::linear(self.a.clone(), self.b.clone())
    }

    /// `B(z) = cz + d`.
    pub fn lin_b(&self) -> Poly {
        Poly::linear(self.c.clone(), self.d.clone())
    }

    pub fn regime(&self) -> Regime {
        match (&self.a * &self.d).cmp(&(&self.b * &self.c)) {
            Ordering::Less => Regime::Below,
            Ordering::Equal => Regime::Equal,
            Ordering::Greater => Regime::Above,
        }
    }
}

impl From<(i64, i64, i64, i64)> for RecurrenceParams {
    fn from((a, b, c, d): (i64, i64, i64, i64)) -> Self {
        Self::ints(a, b, c, d)
    }
}

impl std::fmt::Display for RecurrenceParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {}, {})", self.a, self.b, self.c, self.d)
    }
}

/// Memoized `W_0, W_1, ...`. Extension needs `&mut self`; share a filled
/// prefix (`&[Poly]`) across threads for concurrent reads.
#[derive(Clone, Debug)]
pub struct SequenceCache {
    params: RecurrenceParams,
    polys: Vec<Poly>,
    lin_a: Poly,
    lin_b: Poly,
    cap: usize,
}

impl SequenceCache {
    /// Capped at [`max_n_from_env`].
    pub fn new(params: RecurrenceParams) -> Self {
        Self::with_cap(params, max_n_from_env())
    }

    pub fn with_cap(params: RecurrenceParams, cap: usize) -> Self {
        let lin_a = params.lin_a();
        let lin_b = params.lin_b();
        SequenceCache {
            params,
            polys: vec![Poly::one(), Poly::z()],
            lin_a,
            lin_b,
            cap,
        }
    }

    pub fn params(&self) -> &RecurrenceParams {
        &self.params
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// `W_0, ..., W_n`.
    pub fn prefix(&mut self, n: usize) -> Result<&[Poly]> {
        if n > self.cap {
            return Err(Error::IndexTooLarge { n, cap: self.cap });
        }
        while self.polys.len() <= n {
            let k = self.polys.len();
            let next = &(&self.lin_a * &self.polys[k - 1]) + &(&self.lin_b * &self.polys[k - 2]);
            self.polys.push(next);
        }
        Ok(&self.polys[..=n])
    }

    pub fn get(&mut self, n: usize) -> Result<&Poly> {
        Ok(&self.prefix(n)?[n])
    }
}

/// `W_n` for one index.
pub fn gen_w(params: &RecurrenceParams, n: usize) -> Result<Poly> {
    SequenceCache::new(params.clone()).get(n).cloned()
}

/// Outcome of an identity check over a range of indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checked: Vec<usize>,
    pub failures: Vec<usize>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Recomputes `W_n = (A² + 2B) W_{n-2} - B² W_{n-4}` for `4 <= n <= n_max`
/// and compares against the order-two recurrence.
pub fn verify_rec2(params: &RecurrenceParams, n_max: usize) -> Result<IdentityReport> {
    let mut cache = SequenceCache::with_cap(params.clone(), n_max.max(1));
    let w = cache.prefix(n_max.max(1))?;
    let lin_a = params.lin_a();
    let lin_b = params.lin_b();
    let step2 = &(&lin_a * &lin_a) + &lin_b.scale(&Rational::from_integer(2.into()));
    let step4 = &lin_b * &lin_b;
    let mut report = IdentityReport::default();
    for n in 4..=n_max {
        let via_rec2 = &(&step2 * &w[n - 2]) - &(&step4 * &w[n - 4]);
        report.checked.push(n);
        if via_rec2 != w[n] {
            report.failures.push(n);
        }
    }
    Ok(report)
}

/// First `terms` coefficients of the power series `num(t) / den(t)` whose
/// coefficients are polynomials in `z`; `den(0)` must be a nonzero constant.
pub fn series_divide(num: &[Poly], den: &[Poly], terms: usize) -> Result<Vec<Poly>> {
    let head = den
        .first()
        .filter(|p| p.degree() == Some(0))
        .ok_or(Error::DivisionByZero)?;
    let inv = head.coeffs()[0].recip();
    let mut out: Vec<Poly> = Vec::with_capacity(terms);
    for n in 0..terms {
        let mut acc = num.get(n).cloned().unwrap_or_default();
        for k in 1..=n.min(den.len().saturating_sub(1)) {
            acc = &acc - &(&den[k] * &out[n - k]);
        }
        out.push(acc.scale(&inv));
    }
    Ok(out)
}

/// Expands `(1 + (z - A)t) / (1 - A t - B t²)` and compares the coefficient
/// of `t^n` with `W_n` for `n <= n_max`.
pub fn gf_check(params: &RecurrenceParams, n_max: usize) -> Result<IdentityReport> {
    let lin_a = params.lin_a();
    let num = [Poly::one(), &Poly::z() - &lin_a];
    let den = [Poly::one(), -&lin_a, -&params.lin_b()];
    let series = series_divide(&num, &den, n_max + 1)?;
    let mut cache = SequenceCache::with_cap(params.clone(), n_max.max(1));
    let w = cache.prefix(n_max.max(1))?;
    let mut report = IdentityReport::default();
    for (n, coeff) in series.iter().enumerate() {
        report.checked.push(n);
        if *coeff != w[n] {
            report.failures.push(n);
        }
    }
    Ok(report)
}

/// `U_0, ..., U_n` in the `ad = bc` regime, built by the parity recurrence
/// and checked against `W_k / A^⌊k/2⌋`.
pub fn reduced_sequence(params: &RecurrenceParams, n: usize) -> Result<Vec<Poly>> {
    if params.regime() != Regime::Equal {
        return Err(Error::WrongRegime(format!(
            "the reduced sequence needs ad = bc, got parameters {params}"
        )));
    }
    let lin_a = params.lin_a();
    let c_prime = params.c() / params.a();
    let mut u = vec![Poly::one(), Poly::z()];
    for k in 2..=n {
        let carry = u[k - 2].scale(&c_prime);
        let next = if k % 2 == 0 {
            &u[k - 1] + &carry
        } else {
            &(&lin_a * &u[k - 1]) + &carry
        };
        u.push(next);
    }
    u.truncate(n + 1);

    let mut cache = SequenceCache::with_cap(params.clone(), n.max(1));
    let w = cache.prefix(n.max(1))?;
    let mut power = Poly::one();
    for (k, uk) in u.iter().enumerate() {
        if k >= 2 && k % 2 == 0 {
            power = &power * &lin_a;
        }
        let quotient = w[k].divide_exact(&power)?;
        if quotient != *uk {
            return Err(Error::Inconsistent(format!(
                "U_{k} from the parity recurrence differs from W_{k}/A^{}",
                k / 2
            )));
        }
    }
    Ok(u)
}

/// `U_n = W_n / A^⌊n/2⌋`; requires `ad = bc`.
pub fn gen_u(params: &RecurrenceParams, n: usize) -> Result<Poly> {
    Ok(reduced_sequence(params, n)?.swap_remove(n))
}

/// `W_2 = az² + (b + c)z + d`; a sequence equal to `z^n` would violate it.
pub fn second_term_is_nondegenerate(params: &RecurrenceParams) -> Result<bool> {
    let w2 = gen_w(params, 2)?;
    let expected = Poly::new(vec![
        params.d().clone(),
        params.b() + params.c(),
        params.a().clone(),
    ]);
    Ok(w2 == expected && w2 != Poly::z().pow(2))
}
