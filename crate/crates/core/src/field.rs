//! Finite fields `F_q`, `q = p^n`, with `p` a small prime.
//!
//! An element is encoded as the integer `sum d_i p^i`, where `d_i` are the
//! coefficients of its residue polynomial in the extension generator `t`.
//! Multiplication goes through discrete-log tables, so every field operation
//! is a couple of table lookups.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported characteristic.
pub const MAX_CHARACTERISTIC: u32 = 13;
/// Largest supported field size.
pub const MAX_FIELD_SIZE: u32 = 1 << 16;

/// Parameters of `F_q`: the characteristic, the extension degree and, when
/// `n > 1`, the defining modulus over `F_p` (coefficients lowest degree first,
/// monic, length `n + 1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub n: u32,
    pub modulus: Option<Vec<u32>>,
}

impl FieldSpec {
    pub fn prime(p: u32) -> Self {
        FieldSpec { p, n: 1, modulus: None }
    }

    /// `F_{p^n}` with the built-in default modulus (the lexicographically
    /// smallest monic irreducible of degree `n`).
    pub fn extension(p: u32, n: u32) -> Result<Self> {
        check_prime(p)?;
        if n == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        if n == 1 {
            return Ok(Self::prime(p));
        }
        Ok(FieldSpec { p, n, modulus: Some(default_modulus(p, n)) })
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.n)
    }
}

/// A field element; only meaningful together with the [`Fq`] that made it.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(pub(crate) u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The integer encoding `sum d_i p^i`.
    pub fn index(self) -> u32 {
        self.0
    }
}

struct Tables {
    spec: FieldSpec,
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Option<Vec<u32>>,
    neg: Vec<u32>,
}

/// Arithmetic context for `F_q`. Cloning is cheap.
#[derive(Clone)]
pub struct Fq {
    t: Arc<Tables>,
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.t.q)
    }
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t) || self.t.spec == other.t.spec
    }
}

impl Eq for Fq {}

impl Fq {
    pub fn new(spec: &FieldSpec) -> Result<Self> {
        let p = spec.p;
        check_prime(p)?;
        if spec.n == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let q64 = spec.q();
        if q64 > MAX_FIELD_SIZE as u64 {
            return Err(Error::InvalidField(format!("q = {p}^{} exceeds the supported size {MAX_FIELD_SIZE}", spec.n)));
        }
        let q = q64 as u32;
        let n = spec.n;
        let modulus = match (&spec.modulus, n) {
            (_, 1) => vec![0, 1],
            (None, _) => {
                return Err(Error::InvalidField(format!("a modulus of degree {n} is required for q = {p}^{n}")))
            }
            (Some(m), _) => {
                if m.len() != n as usize + 1 || m[n as usize] != 1 {
                    return Err(Error::InvalidField(format!("modulus must be monic of degree {n}")));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidField("modulus coefficients must lie in [0, p)".into()));
                }
                if !fp_irreducible(m, p) {
                    return Err(Error::InvalidField(format!("modulus is reducible over F_{p}")));
                }
                m.clone()
            }
        };

        let slow_mul = |a: u32, b: u32| -> u32 {
            let da = digits(a, p, n);
            let db = digits(b, p, n);
            let mut prod = vec![0u32; 2 * n as usize];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            fp_rem_in_place(&mut prod, &modulus, p);
            undigits(&prod[..n as usize], p)
        };

        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0u32; q as usize];
        if q == 2 {
            exp.push(1);
        } else {
            let generator = (2..q)
                .chain(std::iter::once(1))
                .find(|&g| {
                    let mut x = g;
                    let mut order = 1;
                    while x != 1 {
                        x = slow_mul(x, g);
                        order += 1;
                    }
                    order == q - 1
                })
                .expect("F_q^* is cyclic");
            let mut x = 1;
            for _ in 0..q - 1 {
                exp.push(x);
                x = slow_mul(x, generator);
            }
        }
        for (i, &x) in exp.iter().enumerate() {
            log[x as usize] = i as u32;
        }

        let add = if n > 1 && q <= 1024 {
            let mut table = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = digit_add(a, b, p, n);
                }
            }
            Some(table)
        } else {
            None
        };
        let neg = (0..q)
            .map(|a| {
                let d: Vec<u32> = digits(a, p, n).iter().map(|&x| (p - x) % p).collect();
                undigits(&d, p)
            })
            .collect();

        let spec = FieldSpec { p, n, modulus: if n == 1 { None } else { Some(modulus.clone()) } };
        Ok(Fq { t: Arc::new(Tables { spec, p, n, q, modulus, exp, log, add, neg }) })
    }

    pub fn prime(p: u32) -> Result<Self> {
        Self::new(&FieldSpec::prime(p))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.t.spec
    }

    pub fn p(&self) -> u32 {
        self.t.p
    }

    pub fn n(&self) -> u32 {
        self.t.n
    }

    pub fn q(&self) -> u32 {
        self.t.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    #[inline]
    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, k: i64) -> FieldElement {
        let p = self.t.p as i64;
        FieldElement(k.rem_euclid(p) as u32)
    }

    /// The element with integer encoding `index`, if in range.
    pub fn element(&self, index: u32) -> Option<FieldElement> {
        (index < self.t.q).then_some(FieldElement(index))
    }

    /// All elements in encoding order (`0, 1, ...`).
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.t.q).map(FieldElement)
    }

    /// The generator `t` of the extension (equal to `0` when `n = 1`).
    pub fn generator_t(&self) -> FieldElement {
        if self.t.n == 1 {
            FieldElement(0)
        } else {
            FieldElement(self.t.p)
        }
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let t = &*self.t;
        if t.n == 1 {
            let s = a.0 + b.0;
            FieldElement(if s >= t.p { s - t.p } else { s })
        } else if let Some(table) = &t.add {
            FieldElement(table[(a.0 * t.q + b.0) as usize])
        } else {
            FieldElement(digit_add(a.0, b.0, t.p, t.n))
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.t.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let t = &*self.t;
        let order = t.q - 1;
        let s = t.log[a.0 as usize] + t.log[b.0 as usize];
        FieldElement(t.exp[(if s >= order { s - order } else { s }) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        let t = &*self.t;
        let order = t.q - 1;
        let l = t.log[a.0 as usize];
        Some(FieldElement(t.exp[((order - l) % order) as usize]))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let t = &*self.t;
        let order = (t.q - 1) as u64;
        let l = (t.log[a.0 as usize] as u64 * (e % order)) % order;
        FieldElement(t.exp[l as usize])
    }

    /// Inverse Frobenius: the unique `b` with `b^p = a`.
    pub fn pth_root(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.t.q as u64 / self.t.p as u64)
    }

    /// Literal form used by the polynomial grammar: an integer for prime
    /// fields, a parenthesised polynomial in `t` otherwise.
    pub fn format(&self, a: FieldElement) -> String {
        let t = &*self.t;
        if t.n == 1 {
            return a.0.to_string();
        }
        let d = digits(a.0, t.p, t.n);
        let mut terms = Vec::new();
        for (i, &c) in d.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    /// Element from its `t`-adic digit list (lowest first); digits reduced mod `p`.
    pub fn from_digits(&self, d: &[i64]) -> FieldElement {
        let t = &*self.t;
        let mut full = vec![0u32; (d.len()).max(t.n as usize)];
        for (i, &c) in d.iter().enumerate() {
            full[i] = c.rem_euclid(t.p as i64) as u32;
        }
        fp_rem_in_place(&mut full, &t.modulus, t.p);
        full.truncate(t.n as usize);
        FieldElement(undigits(&full, t.p))
    }
}

fn check_prime(p: u32) -> Result<()> {
    if !(2..=MAX_CHARACTERISTIC).contains(&p) || (2..p).any(|d| p.is_multiple_of(d)) {
        return Err(Error::InvalidField(format!(
            "characteristic {p} is not a supported prime (2 <= p <= {MAX_CHARACTERISTIC})"
        )));
    }
    Ok(())
}

fn digits(mut a: u32, p: u32, n: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(n as usize);
    for _ in 0..n {
        d.push(a % p);
        a /= p;
    }
    d
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn digit_add(mut a: u32, mut b: u32, p: u32, n: u32) -> u32 {
    let mut out = 0;
    let mut scale = 1;
    for _ in 0..n {
        out += ((a % p + b % p) % p) * scale;
        a /= p;
        b /= p;
        scale *= p;
    }
    out
}

/// Reduces `f` (dense, lowest first) modulo the monic `m` over `F_p`.
fn fp_rem_in_place(f: &mut Vec<u32>, m: &[u32], p: u32) {
    let dm = m.len() - 1;
    while f.len() > dm {
        let lead = f.pop().unwrap();
        if lead != 0 {
            let shift = f.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                f[shift + i] = (f[shift + i] + (p - lead) * c) % p;
            }
        }
    }
}

fn fp_irreducible(m: &[u32], p: u32) -> bool {
    let n = m.len() - 1;
    if n <= 1 {
        return true;
    }
    // trial division by every monic polynomial of degree 1..=n/2
    for deg in 1..=n / 2 {
        let count = (p as u64).pow(deg as u32);
        for idx in 0..count {
            let mut d = digits(idx as u32, p, deg as u32);
            d.push(1);
            let mut r = m.to_vec();
            fp_rem_in_place(&mut r, &d, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn default_modulus(p: u32, n: u32) -> Vec<u32> {
    let count = (p as u64).pow(n);
    (0..count)
        .map(|idx| {
            let mut m = digits(idx as u32, p, n);
            m.push(1);
            m
        })
        .find(|m| m[0] != 0 && fp_irreducible(m, p))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let k = Fq::prime(7).unwrap();
        let a = k.from_int(3);
        let b = k.from_int(5);
        assert_eq!(k.add(a, b), k.from_int(1));
        assert_eq!(k.mul(a, b), k.from_int(1));
        assert_eq!(k.inv(a), Some(b));
        assert_eq!(k.sub(a, b), k.from_int(5));
        assert_eq!(k.inv(k.zero()), None);
    }

    #[test]
    fn f4_default_modulus_is_t2_t_1() {
        let spec = FieldSpec::extension(2, 2).unwrap();
        assert_eq!(spec.modulus.as_deref(), Some(&[1, 1, 1][..]));
        let k = Fq::new(&spec).unwrap();
        let t = k.generator_t();
        // t^2 = t + 1
        assert_eq!(k.mul(t, t), k.add(t, k.one()));
        assert_eq!(k.pow(t, 3), k.one());
        assert_eq!(k.format(k.add(t, k.one())), "t+1");
    }

    #[test]
    fn every_nonzero_element_inverts() {
        for spec in [FieldSpec::prime(13), FieldSpec::extension(3, 3).unwrap(), FieldSpec::extension(2, 4).unwrap()] {
            let k = Fq::new(&spec).unwrap();
            for a in k.elements().skip(1) {
                let inv = k.inv(a).unwrap();
                assert_eq!(k.mul(a, inv), k.one());
                assert_eq!(k.pow(k.pth_root(a), k.p() as u64), a);
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Fq::prime(4).is_err());
        assert!(Fq::prime(17).is_err());
        assert!(Fq::new(&FieldSpec { p: 2, n: 2, modulus: None }).is_err());
        assert!(Fq::new(&FieldSpec { p: 2, n: 2, modulus: Some(vec![1, 0, 1]) }).is_err());
    }
}
