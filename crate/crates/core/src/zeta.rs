//! Power sums over monic elements and the polynomial `zeta(-s, X)`.
//!
//! For `s > 0` the coefficient of `X^d` is `S_A(d) = sum a^s` over the monic
//! `a` of degree `d`. The monic elements of degree `d` form the affine space
//! `(leading monomial) + W_d`, and a power sum over an affine space of
//! dimension `D` vanishes once `(q - 1) D > l_q(s)`. That bounds the degree of
//! `zeta(-s, X)` without having to look at higher coefficients.

use std::ops::Range;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::linalg;
use crate::ring::{CoordinateRing, RingElement};

/// Default cap on summands per coefficient.
pub const DEFAULT_BUDGET: u128 = 1 << 20;

/// Summands handled by one parallel task.
const CHUNK: u128 = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DigitProfile {
    pub k: u64,
    pub q: u64,
    /// base-`q` digits, least significant first
    pub digits: Vec<u64>,
    pub l_q: u64,
}

impl DigitProfile {
    /// `l_q(k) / (q - 1)` as a reduced fraction `(num, den)`.
    pub fn threshold(&self) -> (u64, u64) {
        let g = crate::ring::gcd(self.l_q, self.q - 1).max(1);
        (self.l_q / g, (self.q - 1) / g)
    }

    /// Whether an affine space of dimension `dim` exceeds the threshold.
    pub fn exceeded_by(&self, dim: u64) -> bool {
        (self.q - 1) as u128 * dim as u128 > self.l_q as u128
    }
}

pub fn digit_sum(k: u64, q: u64) -> DigitProfile {
    assert!(q >= 2, "digit base must be at least 2");
    let mut digits = Vec::new();
    let mut rest = k;
    while rest > 0 {
        digits.push(rest % q);
        rest /= q;
    }
    let l_q = digits.iter().sum();
    DigitProfile { k, q, digits, l_q }
}

/// `binom(n, k) mod p` by Lucas' theorem.
pub fn binom_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while k > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        acc = acc * small_binom(ni, ki) % p;
        n /= p;
        k /= p;
    }
    acc
}

fn small_binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// How `a^s` is evaluated.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum PowerStrategy {
    /// Square-and-multiply.
    #[default]
    Direct,
    /// `a^s = prod (a^(q^i))^(s_i)` over the base-`q` digits of `s`, with the
    /// Frobenius images computed by substitution instead of powering.
    FrobeniusDigits,
}

#[derive(Clone, Debug)]
pub struct ZetaOptions {
    pub budget: u128,
    pub strategy: PowerStrategy,
    pub parallel: bool,
}

impl Default for ZetaOptions {
    fn default() -> Self {
        ZetaOptions { budget: DEFAULT_BUDGET, strategy: PowerStrategy::Direct, parallel: true }
    }
}

/// Evaluates powers of ring elements with a fixed exponent.
pub(crate) struct Powerer<'a> {
    ring: &'a CoordinateRing,
    s: u64,
    digits: Vec<u64>,
    images: Option<Vec<Vec<RingElement>>>,
}

impl<'a> Powerer<'a> {
    pub(crate) fn new(ring: &'a CoordinateRing, s: u64, strategy: PowerStrategy) -> Self {
        let digits = digit_sum(s, ring.q()).digits;
        let images = match strategy {
            PowerStrategy::Direct => None,
            PowerStrategy::FrobeniusDigits => Some(ring.frobenius_images(digits.len().saturating_sub(1) as u32)),
        };
        Powerer { ring, s, digits, images }
    }

    pub(crate) fn pow(&self, a: &RingElement) -> RingElement {
        match &self.images {
            None => self.ring.pow(a, self.s),
            Some(images) => {
                let mut acc = self.ring.one();
                for (i, &digit) in self.digits.iter().enumerate() {
                    if digit > 0 {
                        let frob = self.ring.frobenius(a, i as u32, images);
                        acc = self.ring.mul(&acc, &self.ring.pow(&frob, digit));
                    }
                }
                acc
            }
        }
    }
}

/// `sum_{w in W} (f + w)^k` by exhaustive enumeration of `W = span(w_basis)`.
pub fn affine_power_sum(
    ring: &CoordinateRing,
    f: &RingElement,
    w_basis: &[RingElement],
    k: u64,
    budget: u128,
) -> Result<RingElement> {
    let q = ring.q() as u128;
    let terms = q.checked_pow(w_basis.len() as u32).unwrap_or(u128::MAX);
    if terms > budget {
        return Err(Error::BudgetExceeded { what: "affine power sum", needed: terms, budget });
    }
    let mut vectors: Vec<RingElement> = w_basis.to_vec();
    let w_rank = rank_of(ring, &vectors);
    if w_rank != w_basis.len() {
        return Err(Error::InvalidArgument("W basis is not linearly independent".into()));
    }
    vectors.push(f.clone());
    if rank_of(ring, &vectors) == w_rank {
        return Err(Error::InvalidArgument("f lies in the span of W".into()));
    }
    let k_field = ring.field();
    let powerer = Powerer::new(ring, k, PowerStrategy::FrobeniusDigits);
    let total = (0..terms)
        .into_par_iter()
        .map(|idx| {
            let mut point = f.clone();
            let mut rest = idx;
            for w in w_basis {
                let c = k_field.element((rest % q) as u32).unwrap();
                rest /= q;
                if !c.is_zero() {
                    ring.add_assign(&mut point, &ring.scale(w, c));
                }
            }
            powerer.pow(&point)
        })
        .reduce(|| ring.zero(), |a, b| ring.add(&a, &b));
    Ok(total)
}

fn rank_of(ring: &CoordinateRing, elems: &[RingElement]) -> usize {
    let width: Vec<usize> =
        (0..ring.rank()).map(|j| elems.iter().map(|e| e.coeff(j).coeffs().len()).max().unwrap_or(0)).collect();
    let rows: Vec<Vec<FieldElement>> = elems
        .iter()
        .map(|e| {
            let mut row = Vec::new();
            for (j, &w) in width.iter().enumerate() {
                row.extend((0..w).map(|i| e.coeff(j).coeff(i)));
            }
            row
        })
        .collect();
    linalg::rank(&rows, ring.field())
}

/// `S_A(d) = sum a^s` over the monic `a` of degree `d`.
pub fn power_sum_s(ring: &CoordinateRing, d: u64, s: u64, opts: &ZetaOptions) -> Result<RingElement> {
    let powerer = Powerer::new(ring, s, opts.strategy);
    power_sum_with(ring, d, &powerer, opts)
}

fn power_sum_with(ring: &CoordinateRing, d: u64, powerer: &Powerer<'_>, opts: &ZetaOptions) -> Result<RingElement> {
    let total = ring.count_monic(d);
    if total > opts.budget {
        return Err(Error::BudgetExceeded { what: "monic power sum", needed: total, budget: opts.budget });
    }
    let chunk = |range: Range<u128>| -> RingElement {
        let mut acc = ring.zero();
        for a in ring.enumerate_monic(d).restrict(range) {
            ring.add_assign(&mut acc, &powerer.pow(&a));
        }
        acc
    };
    if !opts.parallel || total <= CHUNK {
        return Ok(chunk(0..total));
    }
    let ranges: Vec<Range<u128>> =
        (0..total.div_ceil(CHUNK)).map(|c| c * CHUNK..((c + 1) * CHUNK).min(total)).collect();
    Ok(ranges.into_par_iter().map(chunk).reduce(|| ring.zero(), |a, b| ring.add(&a, &b)))
}

/// The largest degree whose coefficient is not certified zero: one less than
/// the first `d` with `(q - 1) dim W_d > l_q(s)`.
pub fn cutoff(ring: &CoordinateRing, s: u64) -> u64 {
    let profile = digit_sum(s, ring.q());
    let mut d = 0;
    while !profile.exceeded_by(ring.dim_w(d)) {
        d += 1;
    }
    d.saturating_sub(1)
}

/// `zeta(-s, X)` truncated at the certified cutoff.
#[derive(Clone, Debug)]
pub struct ZetaPolynomial {
    pub s: u64,
    pub coefficients: Vec<RingElement>,
    pub d_max: u64,
}

impl ZetaPolynomial {
    /// `zeta(-s) = sum_d S_A(d)`.
    pub fn value_at_one(&self, ring: &CoordinateRing) -> RingElement {
        self.coefficients.iter().fold(ring.zero(), |acc, c| ring.add(&acc, c))
    }

    /// `c_j` with `zeta(-s, X) = sum c_j (X - 1)^j`, from Hasse derivatives.
    pub fn centered(&self, ring: &CoordinateRing) -> Vec<RingElement> {
        recenter(ring, &self.coefficients)
    }

    /// Order of vanishing at `X = 1`.
    pub fn ord_at_one(&self, ring: &CoordinateRing) -> Result<u64> {
        ord_at_one(ring, &self.coefficients)
    }

    pub fn format(&self, ring: &CoordinateRing) -> String {
        format_x_poly(ring, &self.coefficients)
    }
}

pub fn recenter(ring: &CoordinateRing, coeffs: &[RingElement]) -> Vec<RingElement> {
    let k = ring.field();
    let p = ring.p();
    (0..coeffs.len())
        .map(|j| {
            let mut acc = ring.zero();
            for (d, c) in coeffs.iter().enumerate().skip(j) {
                let b = binom_mod_p(d as u64, j as u64, p);
                if b != 0 && !c.is_zero() {
                    ring.add_assign(&mut acc, &ring.scale(c, k.from_int(b as i64)));
                }
            }
            acc
        })
        .collect()
}

/// Smallest `j` with a nonzero Hasse coefficient `c_j`.
pub fn ord_at_one(ring: &CoordinateRing, coeffs: &[RingElement]) -> Result<u64> {
    recenter(ring, coeffs)
        .iter()
        .position(|c| !c.is_zero())
        .map(|j| j as u64)
        .ok_or(Error::ZeroInput("order of vanishing of the zero polynomial"))
}

/// Order of vanishing by repeated synthetic division by `X - 1`.
pub fn ord_at_one_by_division(ring: &CoordinateRing, coeffs: &[RingElement]) -> Result<u64> {
    if coeffs.iter().all(RingElement::is_zero) {
        return Err(Error::ZeroInput("order of vanishing of the zero polynomial"));
    }
    let mut cur = coeffs.to_vec();
    let mut ord = 0;
    loop {
        let value = cur.iter().fold(ring.zero(), |acc, c| ring.add(&acc, c));
        if !value.is_zero() {
            return Ok(ord);
        }
        // quotient by X - 1: b_{n-1} = a_n, b_{i-1} = a_i + b_i
        let n = cur.len() - 1;
        let mut quo = vec![ring.zero(); n];
        let mut carry = ring.zero();
        for i in (1..=n).rev() {
            carry = ring.add(&cur[i], &carry);
            quo[i - 1] = carry.clone();
        }
        cur = quo;
        ord += 1;
    }
}

/// `zeta(-s, X)` with every coefficient below the cutoff computed.
pub fn zeta_neg(ring: &CoordinateRing, s: u64, opts: &ZetaOptions) -> Result<ZetaPolynomial> {
    if s == 0 {
        return Err(Error::InvalidArgument("s must be positive".into()));
    }
    let d_max = cutoff(ring, s);
    for d in 0..=d_max {
        let needed = ring.count_monic(d);
        if needed > opts.budget {
            return Err(Error::BudgetExceeded { what: "monic power sum", needed, budget: opts.budget });
        }
    }
    let powerer = Powerer::new(ring, s, opts.strategy);
    let compute = |d: u64| power_sum_with(ring, d, &powerer, opts);
    let coefficients = if opts.parallel {
        (0..=d_max).into_par_iter().map(compute).collect::<Result<Vec<_>>>()?
    } else {
        (0..=d_max).map(compute).collect::<Result<Vec<_>>>()?
    };
    let mut coefficients = coefficients;
    while coefficients.len() > 1 && coefficients.last().is_some_and(RingElement::is_zero) {
        coefficients.pop();
    }
    Ok(ZetaPolynomial { s, coefficients, d_max })
}

/// `c_0 + c_1*X + ...` with ring-element coefficients.
pub fn format_x_poly(ring: &CoordinateRing, coeffs: &[RingElement]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(d, c)| {
            let cs = ring.format(c);
            let xs = match d {
                0 => return cs,
                1 => "X".to_string(),
                _ => format!("X^{d}"),
            };
            if cs == "1" {
                xs
            } else if cs.contains('+') {
                format!("({cs})*{xs}")
            } else {
                format!("{cs}*{xs}")
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn serial() -> ZetaOptions {
        ZetaOptions { parallel: false, ..ZetaOptions::default() }
    }

    #[test]
    fn digits() {
        assert_eq!(digit_sum(2, 3).l_q, 2);
        assert_eq!(digit_sum(0, 5).l_q, 0);
        assert_eq!(digit_sum(7, 2).l_q, 3);
        assert_eq!(digit_sum(7, 2).digits, [1, 1, 1]);
    }

    #[test]
    fn lucas() {
        assert_eq!(binom_mod_p(4, 2, 2), 0);
        assert_eq!(binom_mod_p(5, 1, 2), 1);
        assert_eq!(binom_mod_p(10, 3, 3), 120 % 3);
        assert_eq!(binom_mod_p(7, 3, 5), 35 % 5);
    }

    #[test]
    fn small_power_sums() {
        let f2 = catalog::fqx(2).unwrap();
        assert_eq!(f2.format(&power_sum_s(&f2, 1, 1, &serial()).unwrap()), "1");
        let f3 = catalog::fqx(3).unwrap();
        assert_eq!(f3.format(&power_sum_s(&f3, 1, 2, &serial()).unwrap()), "2");
        let ex36 = catalog::ex36();
        assert!(power_sum_s(&ex36, 1, 2, &serial()).unwrap().is_zero());
    }

    #[test]
    fn zeta_examples() {
        let f3 = catalog::fqx(3).unwrap();
        let z = zeta_neg(&f3, 2, &serial()).unwrap();
        assert_eq!(z.format(&f3), "1 + 2*X");
        assert!(z.value_at_one(&f3).is_zero());
        assert_eq!(z.ord_at_one(&f3).unwrap(), 1);

        let ex36 = catalog::ex36();
        let z = zeta_neg(&ex36, 2, &serial()).unwrap();
        assert_eq!(z.format(&ex36), "1 + 2*X^2");
        assert_eq!(z.ord_at_one(&ex36).unwrap(), 1);

        let f2 = catalog::fqx(2).unwrap();
        let z = zeta_neg(&f2, 3, &serial()).unwrap();
        assert_eq!(z.format(&f2), "1 + (x^2 + x + 1)*X + (x^2 + x)*X^2");
    }

    #[test]
    fn sharpness_witness() {
        let f2 = catalog::fqx(2).unwrap();
        let x2 = f2.parse_element("x^2").unwrap();
        let sum = affine_power_sum(&f2, &x2, &f2.basis_w(2), 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(f2.format(&sum), "x^2 + x");
        let x3 = f2.parse_element("x^3").unwrap();
        assert!(affine_power_sum(&f2, &x3, &f2.basis_w(3), 3, DEFAULT_BUDGET).unwrap().is_zero());
        assert!(affine_power_sum(&f2, &f2.one(), &f2.basis_w(2), 3, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn order_via_both_methods() {
        let f2 = catalog::fqx(2).unwrap();
        // (1 + X)^4 = 1 + X^4 in characteristic 2
        let c = vec![f2.one(), f2.zero(), f2.zero(), f2.zero(), f2.one()];
        assert_eq!(ord_at_one(&f2, &c).unwrap(), 4);
        assert_eq!(ord_at_one_by_division(&f2, &c).unwrap(), 4);
        assert!(ord_at_one(&f2, &[f2.zero()]).is_err());
    }

    #[test]
    fn strategies_agree() {
        let ring = catalog::ex26();
        for s in [3, 5, 6, 11] {
            let a = zeta_neg(&ring, s, &serial()).unwrap();
            let opts = ZetaOptions { strategy: PowerStrategy::FrobeniusDigits, ..serial() };
            let b = zeta_neg(&ring, s, &opts).unwrap();
            assert_eq!(a.coefficients, b.coefficients, "s = {s}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        let f2 = catalog::fqx(2).unwrap();
        let opts = ZetaOptions { budget: 4, ..serial() };
        assert!(matches!(power_sum_s(&f2, 3, 1, &opts), Err(Error::BudgetExceeded { .. })));
    }
}
