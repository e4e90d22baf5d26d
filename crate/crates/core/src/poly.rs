//! Dense univariate polynomials over `F_q`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::{FieldElement, Fq};
use crate::literal::{self, LiteralAlgebra};

/// A polynomial in `F_q[x]`, lowest degree first, never with a trailing zero.
/// The zero polynomial has no coefficients and degree `None` (minus infinity).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

/// Degree first, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![FieldElement::ONE] }
    }

    pub fn x() -> Self {
        Poly::monomial(FieldElement::ONE, 1)
    }

    pub fn constant(c: FieldElement) -> Self {
        Poly::new(vec![c])
    }

    pub fn monomial(c: FieldElement, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![FieldElement::ZERO; k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// Polynomial from prime-field integer coefficients, lowest first.
    pub fn from_ints(k: &Fq, ints: &[i64]) -> Self {
        Poly::new(ints.iter().map(|&c| k.from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FieldElement::ONE
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lead(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == FieldElement::ONE
    }

    pub fn add(&self, other: &Poly, k: &Fq) -> Poly {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() { (self, other) } else { (other, self) };
        let mut coeffs = long.coeffs.clone();
        for (c, &s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c = k.add(*c, s);
        }
        Poly::new(coeffs)
    }

    pub fn add_assign(&mut self, other: &Poly, k: &Fq) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), FieldElement::ZERO);
        }
        for (c, &s) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *c = k.add(*c, s);
        }
        self.trim();
    }

    pub fn neg(&self, k: &Fq) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|&c| k.neg(c)).collect() }
    }

    pub fn sub(&self, other: &Poly, k: &Fq) -> Poly {
        self.add(&other.neg(k), k)
    }

    pub fn scale(&self, c: FieldElement, k: &Fq) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|&a| k.mul(a, c)).collect() }
    }

    /// Multiplication by `x^n`.
    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![FieldElement::ZERO; n];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    pub fn mul(&self, other: &Poly, k: &Fq) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, &b) in out[i..].iter_mut().zip(&other.coeffs) {
                *o = k.add(*o, k.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn square(&self, k: &Fq) -> Poly {
        self.mul(self, k)
    }

    pub fn pow(&self, mut e: u64, k: &Fq) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, k);
            }
            e >>= 1;
            if e > 0 {
                base = base.square(k);
            }
        }
        acc
    }

    /// Euclidean division; the remainder has degree below `divisor`.
    pub fn divrem(&self, divisor: &Poly, k: &Fq) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        if self.coeffs.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let inv_lead = k.inv(divisor.lead()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quo = vec![FieldElement::ZERO; rem.len() - dd];
        for i in (0..quo.len()).rev() {
            let c = rem[i + dd];
            if c.is_zero() {
                continue;
            }
            let f = k.mul(c, inv_lead);
            quo[i] = f;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = k.sub(rem[i + j], k.mul(f, d));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(quo), Poly::new(rem)))
    }

    pub fn rem(&self, divisor: &Poly, k: &Fq) -> Result<Poly> {
        Ok(self.divrem(divisor, k)?.1)
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly, k: &Fq) -> Result<Option<Poly>> {
        let (q, r) = self.divrem(divisor, k)?;
        Ok(r.is_zero().then_some(q))
    }

    pub fn divides(&self, other: &Poly, k: &Fq) -> Result<bool> {
        Ok(other.rem(self, k)?.is_zero())
    }

    pub fn monic(&self, k: &Fq) -> Poly {
        match k.inv(self.lead()) {
            Some(inv) => self.scale(inv, k),
            None => Poly::zero(),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly, k: &Fq) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, k).expect("b nonzero");
            a = b;
            b = r;
        }
        a.monic(k)
    }

    /// Returns `(g, s, t)` with `g = s*a + t*b` monic.
    pub fn ext_gcd(a: &Poly, b: &Poly, k: &Fq) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, k).expect("r1 nonzero");
            let s = s0.sub(&q.mul(&s1, k), k);
            let t = t0.sub(&q.mul(&t1, k), k);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match k.inv(r0.lead()) {
            Some(inv) => (r0.scale(inv, k), s0.scale(inv, k), t0.scale(inv, k)),
            None => (r0, s0, t0),
        }
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u64, m: &Poly, k: &Fq) -> Result<Poly> {
        let mut base = self.rem(m, k)?;
        let mut acc = Poly::one().rem(m, k)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, k).rem(m, k)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.square(k).rem(m, k)?;
            }
        }
        Ok(acc)
    }

    /// `self^(q^i) mod m` via repeated `q`-th powering.
    pub fn frobenius_mod(&self, i: u32, m: &Poly, k: &Fq) -> Result<Poly> {
        let mut acc = self.rem(m, k)?;
        for _ in 0..i {
            acc = acc.powmod(k.q() as u64, m, k)?;
        }
        Ok(acc)
    }

    pub fn derivative(&self, k: &Fq) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(self.coeffs[1..].iter().enumerate().map(|(i, &c)| k.mul(c, k.from_int((i + 1) as i64))).collect())
    }

    pub fn eval(&self, at: FieldElement, k: &Fq) -> FieldElement {
        self.coeffs.iter().rev().fold(FieldElement::ZERO, |acc, &c| k.add(k.mul(acc, at), c))
    }

    /// `f(x)^q = f(x^q)` for coefficients in `F_q`.
    pub fn compose_x_power(&self, e: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![FieldElement::ZERO; (self.coeffs.len() - 1) * e + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * e] = c;
        }
        Poly { coeffs }
    }

    /// The `p`-th root of a polynomial whose derivative vanishes.
    pub fn pth_root(&self, k: &Fq) -> Option<Poly> {
        let p = k.p() as usize;
        let mut out = Vec::with_capacity(self.coeffs.len() / p + 1);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i % p == 0 {
                out.push(k.pth_root(c));
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(Poly::new(out))
    }

    /// Monic polynomials of degree exactly `d`, in counter order.
    pub fn monic_of_degree(d: usize, k: &Fq) -> impl Iterator<Item = Poly> + '_ {
        let q = k.q() as u64;
        let count = q.pow(d as u32);
        (0..count).map(move |mut idx| {
            let mut coeffs = Vec::with_capacity(d + 1);
            for _ in 0..d {
                coeffs.push(k.element((idx % q) as u32).unwrap());
                idx /= q;
            }
            coeffs.push(FieldElement::ONE);
            Poly { coeffs }
        })
    }

    /// Polynomials of degree `< d` (including zero), in counter order.
    pub fn all_below_degree(d: usize, k: &Fq) -> impl Iterator<Item = Poly> + '_ {
        let q = k.q() as u64;
        let count = q.pow(d as u32);
        (0..count).map(move |mut idx| {
            let mut coeffs = Vec::with_capacity(d);
            for _ in 0..d {
                coeffs.push(k.element((idx % q) as u32).unwrap());
                idx /= q;
            }
            Poly::new(coeffs)
        })
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// Literal in the shared grammar, highest degree first.
    pub fn format(&self, k: &Fq, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| format_term(k, c, &monomial_name(var, i)))
            .collect();
        terms.join(" + ")
    }

    pub fn parse(text: &str, k: &Fq, var: &str) -> Result<Poly> {
        literal::parse(text, &PolyLiteral { k, var })
    }
}

pub(crate) fn monomial_name(var: &str, i: usize) -> String {
    match i {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{i}"),
    }
}

/// `c*mono` with the coefficient parenthesised when it is a sum.
pub(crate) fn format_term(k: &Fq, c: FieldElement, mono: &str) -> String {
    let cs = k.format(c);
    if mono.is_empty() {
        return cs;
    }
    if c == FieldElement::ONE {
        return mono.to_string();
    }
    if cs.contains('+') {
        format!("({cs})*{mono}")
    } else {
        format!("{cs}*{mono}")
    }
}

struct PolyLiteral<'a> {
    k: &'a Fq,
    var: &'a str,
}

impl LiteralAlgebra for PolyLiteral<'_> {
    type Elem = Poly;

    fn integer(&self, n: i64) -> Poly {
        Poly::constant(self.k.from_int(n))
    }

    fn variable(&self, name: &str) -> Result<Poly> {
        if name == self.var {
            Ok(Poly::x())
        } else if name == "t" && self.k.n() > 1 {
            Ok(Poly::constant(self.k.generator_t()))
        } else {
            Err(Error::parse(format!("unknown variable `{name}`")))
        }
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b, self.k)
    }

    fn neg(&self, a: &Poly) -> Poly {
        a.neg(self.k)
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(b, self.k)
    }
}
