//! Exact real-root counting and isolation with Sturm chains.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::rational::{int, serde_rational, to_f64};
use crate::exact::zpoly::ZPoly;
use crate::exact::{Poly, QuadExt, Rational};

use super::squarefree::squarefree_decomposition;

/// Canonical Sturm chain `p, p', -rem(p, p'), ...`, each member kept up to a
/// positive factor. For square-free `p`, `V(lo) - V(hi)` counts the distinct
/// roots in `(lo, hi]`.
#[derive(Clone, Debug)]
pub(crate) struct SturmChain(Vec<ZPoly>);

impl SturmChain {
    pub fn new(p: &ZPoly) -> Self {
        let mut chain = vec![p.clone().primitive()];
        let d = chain[0].derivative().primitive();
        if !d.is_zero() {
            chain.push(d);
        }
        while chain.len() >= 2 {
            let k = chain.len();
            let r = chain[k - 2].rem_positive(&chain[k - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.negated());
        }
        SturmChain(chain)
    }

    pub fn head(&self) -> &ZPoly {
        &self.0[0]
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::variations(self.0.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_quad(&self, x: &QuadExt) -> usize {
        Self::variations(self.0.iter().map(|p| p.sign_at_quad(x)))
    }

    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.0.iter().map(|p| {
            let s: i8 = if p.leading().is_positive() { 1 } else { -1 };
            let odd = p.degree().unwrap_or(0) % 2 == 1;
            if !positive && odd {
                -s
            } else {
                s
            }
        }))
    }

    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }
}

/// An interval with exact endpoints that may be quadratic irrationals.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bounds {
    pub lo: QuadExt,
    pub hi: QuadExt,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Bounds {
    pub fn new(
        lo: impl Into<QuadExt>,
        hi: impl Into<QuadExt>,
        lo_closed: bool,
        hi_closed: bool,
    ) -> Self {
        Bounds {
            lo: lo.into(),
            hi: hi.into(),
            lo_closed,
            hi_closed,
        }
    }

    pub fn open(lo: impl Into<QuadExt>, hi: impl Into<QuadExt>) -> Self {
        Self::new(lo, hi, false, false)
    }

    pub fn closed(lo: impl Into<QuadExt>, hi: impl Into<QuadExt>) -> Self {
        Self::new(lo, hi, true, true)
    }

    /// `(lo, hi]`.
    pub fn open_closed(lo: impl Into<QuadExt>, hi: impl Into<QuadExt>) -> Self {
        Self::new(lo, hi, false, true)
    }

    /// `[lo, hi)`.
    pub fn closed_open(lo: impl Into<QuadExt>, hi: impl Into<QuadExt>) -> Self {
        Self::new(lo, hi, true, false)
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed))
    }

    fn validate(&self) -> Result<()> {
        if self.lo >= self.hi {
            return Err(Error::InvalidInterval {
                lo: self.lo.to_string(),
                hi: self.hi.to_string(),
            });
        }
        Ok(())
    }

    pub fn contains(&self, x: &QuadExt) -> bool {
        let above = if self.lo_closed {
            *x >= self.lo
        } else {
            *x > self.lo
        };
        let below = if self.hi_closed {
            *x <= self.hi
        } else {
            *x < self.hi
        };
        above && below
    }
}

/// A real root located exactly (`lo == hi`) or inside the open interval
/// `(lo, hi)`, which then contains no other distinct root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsolatedRealRoot {
    #[serde(with = "serde_rational")]
    pub lo: Rational,
    #[serde(with = "serde_rational")]
    pub hi: Rational,
    pub multiplicity: usize,
}

impl IsolatedRealRoot {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn approx(&self) -> f64 {
        to_f64(&self.midpoint())
    }

    /// Strictly below every point of `other`.
    pub fn lies_strictly_below(&self, other: &IsolatedRealRoot) -> bool {
        if self.is_exact() && other.is_exact() {
            self.hi < other.lo
        } else {
            self.hi <= other.lo
        }
    }

    pub fn overlaps(&self, other: &IsolatedRealRoot) -> bool {
        !self.lies_strictly_below(other) && !other.lies_strictly_below(self)
    }
}

/// Precomputed square-free data for repeated counting and isolation on one
/// polynomial.
#[derive(Clone, Debug)]
pub struct RealRootIsolator {
    chain: SturmChain,
    /// Yun factors with their multiplicities.
    factors: Vec<(ZPoly, SturmChain, usize)>,
    degree: usize,
}

impl RealRootIsolator {
    pub fn new(p: &Poly) -> Result<Self> {
        let parts = squarefree_decomposition(p)?;
        let mut sqfree = Poly::one();
        for (f, _) in &parts {
            sqfree = &sqfree * f;
        }
        let factors = parts
            .iter()
            .map(|(f, k)| {
                let z = f.to_zpoly().normalized();
                let chain = SturmChain::new(&z);
                (z, chain, *k)
            })
            .collect();
        Ok(RealRootIsolator {
            chain: SturmChain::new(&sqfree.to_zpoly().normalized()),
            factors,
            degree: p.degree().unwrap_or(0),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn squarefree(&self) -> &ZPoly {
        self.chain.head()
    }

    pub fn distinct_real_count(&self) -> usize {
        self.chain.count_all()
    }

    pub fn real_count_with_multiplicity(&self) -> usize {
        self.factors.iter().map(|(_, c, k)| c.count_all() * k).sum()
    }

    fn count_with_chain(chain: &SturmChain, b: &Bounds) -> usize {
        let head = chain.head();
        let mut n =
            chain.variations_at_quad(&b.lo) as isize - chain.variations_at_quad(&b.hi) as isize;
        if b.lo_closed && head.sign_at_quad(&b.lo) == 0 {
            n += 1;
        }
        if !b.hi_closed && head.sign_at_quad(&b.hi) == 0 {
            n -= 1;
        }
        n as usize
    }

    /// Distinct real roots in `b`.
    pub fn count_in(&self, b: &Bounds) -> Result<usize> {
        b.validate()?;
        Ok(Self::count_with_chain(&self.chain, b))
    }

    /// Real roots in `b` counted with multiplicity.
    pub fn count_in_with_multiplicity(&self, b: &Bounds) -> Result<usize> {
        b.validate()?;
        Ok(self
            .factors
            .iter()
            .map(|(_, c, k)| Self::count_with_chain(c, b) * k)
            .sum())
    }

    /// Power of two bounding every root's modulus (Cauchy bound).
    fn root_bound(&self) -> Rational {
        let p = self.squarefree();
        let lc = p.leading().abs();
        let mut m = Rational::zero();
        for c in &p.0[..p.0.len() - 1] {
            let r = Rational::new(c.abs(), lc.clone());
            if r > m {
                m = r;
            }
        }
        let bound = m + Rational::one();
        let mut pow = Rational::one();
        while pow < bound {
            pow *= int(2);
        }
        pow
    }

    fn multiplicity_of(&self, root: &IsolatedRealRoot) -> usize {
        for (f, chain, k) in &self.factors {
            let hit = if root.is_exact() {
                f.sign_at(&root.lo) == 0
            } else {
                chain.variations_at(&root.lo) > chain.variations_at(&root.hi)
            };
            if hit {
                return *k;
            }
        }
        unreachable!("every root of the square-free part belongs to one Yun factor")
    }

    /// All distinct real roots in increasing order.
    pub fn isolate(&self) -> Vec<IsolatedRealRoot> {
        if self.squarefree().degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let bound = self.root_bound();
        let lo = -bound.clone();
        let mut out = Vec::new();
        let vlo = self.chain.variations_at(&lo);
        let vhi = self.chain.variations_at(&bound);
        self.bisect(lo, vlo, bound, vhi, &mut out);
        for r in &mut out {
            r.multiplicity = self.multiplicity_of(r);
        }
        out
    }

    /// Roots in `(lo, hi]`, where `V(lo) = vlo`, `V(hi) = vhi`.
    fn bisect(
        &self,
        lo: Rational,
        vlo: usize,
        hi: Rational,
        vhi: usize,
        out: &mut Vec<IsolatedRealRoot>,
    ) {
        let count = vlo - vhi;
        if count == 0 {
            return;
        }
        if count == 1 {
            let exact = self.squarefree().sign_at(&hi) == 0;
            out.push(IsolatedRealRoot {
                lo: if exact { hi.clone() } else { lo },
                hi,
                multiplicity: 0,
            });
            return;
        }
        let mid = (&lo + &hi) / int(2);
        let vmid = self.chain.variations_at(&mid);
        self.bisect(lo, vlo, mid.clone(), vmid, out);
        self.bisect(mid, vmid, hi, vhi, out);
    }

    /// Halves a non-exact isolating interval, or pins the root exactly if it
    /// lands on the midpoint.
    pub fn refine_step(&self, root: &IsolatedRealRoot) -> IsolatedRealRoot {
        if root.is_exact() {
            return root.clone();
        }
        // `lo` may be a neighbouring exact root; `hi` never is.
        let p = self.squarefree();
        let mid = root.midpoint();
        let s_mid = p.sign_at(&mid);
        let (lo, hi) = if s_mid == 0 {
            (mid.clone(), mid)
        } else if s_mid == p.sign_at(&root.hi) {
            (root.lo.clone(), mid)
        } else {
            (mid, root.hi.clone())
        };
        IsolatedRealRoot {
            lo,
            hi,
            multiplicity: root.multiplicity,
        }
    }

    pub fn refine(&self, root: &IsolatedRealRoot, width: &Rational) -> IsolatedRealRoot {
        let mut r = root.clone();
        while r.width() > *width {
            r = self.refine_step(&r);
        }
        r
    }
}

pub fn isolate_real_roots(p: &Poly) -> Result<Vec<IsolatedRealRoot>> {
    Ok(RealRootIsolator::new(p)?.isolate())
}

/// Distinct real roots of `p` in `b`.
pub fn count_roots_in(p: &Poly, b: &Bounds) -> Result<usize> {
    RealRootIsolator::new(p)?.count_in(b)
}

pub fn count_roots_in_with_multiplicity(p: &Poly, b: &Bounds) -> Result<usize> {
    RealRootIsolator::new(p)?.count_in_with_multiplicity(b)
}

/// All real roots of `p` counted with multiplicity.
pub fn real_root_count(p: &Poly) -> Result<usize> {
    Ok(RealRootIsolator::new(p)?.real_count_with_multiplicity())
}

/// A dyadic rational strictly inside `(lo, hi)`, found by bisection from
/// integer bounds.
pub fn rational_between(lo: &QuadExt, hi: &QuadExt) -> Rational {
    let mut a = Rational::from_integer(lo.ceil() - 1);
    let mut b = Rational::from_integer(hi.ceil());
    loop {
        let m = (&a + &b) / int(2);
        let q = QuadExt::from_rational(m.clone());
        if *lo < q && q < *hi {
            return m;
        }
        if q <= *lo {
            a = m;
        } else {
            b = m;
        }
    }
}
