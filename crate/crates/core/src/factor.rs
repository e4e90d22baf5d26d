//! Factorization in `F_q[x]`: square-free decomposition, distinct-degree
//! splitting, then equal-degree splitting driven by a deterministic sequence
//! of trial polynomials. Output is sorted, so results are reproducible.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Fq;
use crate::poly::Poly;

/// Monic irreducible factors with multiplicities, sorted by [`Poly`]'s order.
/// The leading coefficient of the input is dropped.
pub fn factor(f: &Poly, k: &Fq) -> Result<Vec<(Poly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroInput("cannot factor the zero polynomial"));
    }
    let mut out: BTreeMap<Poly, u32> = BTreeMap::new();
    for (part, mult) in squarefree(&f.monic(k), k) {
        for (block, d) in distinct_degree(&part, k) {
            for irr in equal_degree(&block, d, k) {
                *out.entry(irr).or_default() += mult;
            }
        }
    }
    Ok(out.into_iter().collect())
}

pub fn is_irreducible(f: &Poly, k: &Fq) -> bool {
    match f.degree() {
        None | Some(0) => false,
        Some(1) => true,
        Some(_) => matches!(factor(f, k).as_deref(), Ok([(_, 1)])),
    }
}

/// Valuations of `num/den` at every irreducible dividing either, omitting
/// zero exponents.
pub fn valuation_profile(num: &Poly, den: &Poly, k: &Fq) -> Result<Vec<(Poly, i64)>> {
    if num.is_zero() || den.is_zero() {
        return Err(Error::ZeroInput("valuation profile needs nonzero numerator and denominator"));
    }
    let mut v: BTreeMap<Poly, i64> = BTreeMap::new();
    for (p, e) in factor(num, k)? {
        *v.entry(p).or_default() += e as i64;
    }
    for (p, e) in factor(den, k)? {
        *v.entry(p).or_default() -= e as i64;
    }
    Ok(v.into_iter().filter(|(_, e)| *e != 0).collect())
}

/// Square-free decomposition of a monic `f`: pairs `(g_i, i)` with `f = prod g_i^i`.
fn squarefree(f: &Poly, k: &Fq) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative(k);
    let mut c = f.gcd(&df, k);
    let mut w = f.div_exact(&c, k).unwrap().unwrap();
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c, k);
        let fac = w.div_exact(&y, k).unwrap().unwrap();
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w, k).unwrap().unwrap();
        i += 1;
    }
    if !c.is_one() {
        let root = c.pth_root(k).expect("remaining cofactor is a p-th power");
        let p = k.p();
        out.extend(squarefree(&root, k).into_iter().map(|(g, j)| (g, j * p)));
    }
    out
}

/// Splits a square-free monic `f` into blocks `(product of all degree-d factors, d)`.
fn distinct_degree(f: &Poly, k: &Fq) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = Poly::x();
    let mut h = x.clone();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.powmod(k.q() as u64, &rest, k).unwrap();
        let g = h.sub(&x, k).gcd(&rest, k);
        if !g.is_one() {
            rest = rest.div_exact(&g, k).unwrap().unwrap();
            h = h.rem(&rest, k).unwrap();
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree().filter(|&deg| deg > 0) {
        out.push((rest, deg));
    }
    out
}

/// Splits a product of distinct monic irreducibles of degree `d`.
fn equal_degree(f: &Poly, d: usize, k: &Fq) -> Vec<Poly> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return vec![f.clone()];
    }
    let q = k.q() as u64;
    let odd = k.p() != 2;
    // trial polynomials in counter order, starting at x
    let mut idx = q;
    loop {
        let h = counter_poly(idx, n, k);
        idx += 1;
        let w = if odd {
            // h^((q^d - 1)/2) = (prod_{i<d} h^(q^i))^((q - 1)/2)
            let mut norm = Poly::one();
            let mut hi = h.clone();
            for _ in 0..d {
                norm = norm.mul(&hi, k).rem(f, k).unwrap();
                hi = hi.powmod(q, f, k).unwrap();
            }
            norm.powmod((q - 1) / 2, f, k).unwrap().sub(&Poly::one(), k)
        } else {
            // absolute trace to F_2: sum of h^(2^i), i < n_field * d
            let steps = k.n() as usize * d;
            let mut acc = Poly::zero();
            let mut hi = h.clone();
            for _ in 0..steps {
                acc = acc.add(&hi, k);
                hi = hi.square(k).rem(f, k).unwrap();
            }
            acc
        };
        let g = w.gcd(f, k);
        if g.degree().is_some_and(|dg| dg > 0 && dg < n) {
            let other = f.div_exact(&g, k).unwrap().unwrap();
            let mut out = equal_degree(&g, d, k);
            out.extend(equal_degree(&other, d, k));
            return out;
        }
    }
}

fn counter_poly(mut idx: u64, below: usize, k: &Fq) -> Poly {
    let q = k.q() as u64;
    let mut coeffs = Vec::new();
    while idx > 0 && coeffs.len() < below {
        coeffs.push(k.element((idx % q) as u32).unwrap());
        idx /= q;
    }
    Poly::new(coeffs)
}
