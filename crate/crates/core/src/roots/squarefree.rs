//! Square-free decomposition by Yun's algorithm.

use crate::error::{Error, Result};
use crate::exact::Poly;

/// Factors `p = lc · ∏ f_k^k` with each `f_k` monic, square-free and the
/// `f_k` pairwise coprime. Only factors of positive degree are returned, in
/// increasing `k`.
pub fn squarefree_decomposition(p: &Poly) -> Result<Vec<(Poly, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    if p.degree() == Some(0) {
        return Ok(out);
    }
    let dp = p.derivative();
    let a0 = Poly::gcd(p, &dp);
    let mut b = p.divide_exact(&a0)?;
    let c = dp.divide_exact(&a0)?;
    let mut d = &c - &b.derivative();
    let mut k = 1;
    while b.degree().is_some_and(|deg| deg > 0) {
        let a = Poly::gcd(&b, &d);
        if a.degree().is_some_and(|deg| deg > 0) {
            out.push((a.clone(), k));
        }
        b = b.divide_exact(&a)?;
        let c = d.divide_exact(&a)?;
        d = &c - &b.derivative();
        k += 1;
    }
    Ok(out)
}

/// `p / gcd(p, p')`, made monic.
pub fn squarefree_part(p: &Poly) -> Result<Poly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = Poly::gcd(p, &p.derivative());
    Ok(p.divide_exact(&g)?.monic())
}
