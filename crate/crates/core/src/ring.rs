//! The ring `A` of functions regular away from one rational place `inf`,
//! presented as a free `F_q[x]`-module with basis `b_0 = 1, b_1, ..., b_{m-1}`.
//!
//! Element degrees are pole orders at `inf`: `deg(sum g_j b_j)` is the largest
//! of `m * deg(g_j) + delta_j`. The `delta_j` are pairwise distinct modulo `m`,
//! so the maximum is attained by exactly one monomial `x^i b_j`, which is what
//! makes "monic" well defined.

use std::fmt;

use crate::error::{Error, Result};
use crate::factor;
use crate::field::{FieldElement, FieldSpec, Fq};
use crate::literal::{self, LiteralAlgebra};
use crate::poly::{format_term, monomial_name, Poly};

/// How the ring is presented.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingForm {
    /// `A = F_q[x, y]/(F)` with `F = y^m + c_{m-1}(x) y^{m-1} + ... + c_0(x)`;
    /// basis `1, y, ..., y^{m-1}`. Holds `c_0, ..., c_{m-1}`.
    Cab { coeffs: Vec<Poly> },
    /// Basis degrees and structure constants `b_i b_j = sum_k table[i][j][k] b_k`.
    Custom { delta: Vec<u64>, table: Vec<Vec<Vec<Poly>>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    pub field: FieldSpec,
    pub m: usize,
    pub form: RingForm,
}

impl RingSpec {
    /// `F_q[x]` as the rank-one custom ring.
    pub fn polynomial_ring(field: FieldSpec) -> Self {
        RingSpec { field, m: 1, form: RingForm::Custom { delta: vec![0], table: vec![vec![vec![Poly::one()]]] } }
    }

    pub fn cab(field: FieldSpec, coeffs: Vec<Poly>) -> Self {
        RingSpec { field, m: coeffs.len(), form: RingForm::Cab { coeffs } }
    }
}

/// One failed invariant with the data that exhibits it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub check: &'static str,
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn fail(&mut self, check: &'static str, witness: impl Into<String>) {
        self.violations.push(Violation { check, witness: witness.into() });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "pass");
        }
        for v in &self.violations {
            writeln!(f, "  {}: {}", v.check, v.witness)?;
        }
        Ok(())
    }
}

/// An element `sum g_j(x) b_j`; always exactly `m` coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    coeffs: Vec<Poly>,
}

impl RingElement {
    pub fn from_coeffs(coeffs: Vec<Poly>) -> Self {
        RingElement { coeffs }
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Poly> {
        self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &Poly {
        &self.coeffs[j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// `Some(g)` when the element is `g(x) * 1`.
    pub fn as_poly(&self) -> Option<&Poly> {
        self.coeffs[1..].iter().all(Poly::is_zero).then(|| &self.coeffs[0])
    }
}

/// A term `x^i b_j`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub i: u64,
    pub j: usize,
}

/// A validated ring together with its precomputed multiplication table.
#[derive(Clone, Debug)]
pub struct CoordinateRing {
    spec: RingSpec,
    k: Fq,
    m: usize,
    delta: Vec<u64>,
    /// `products[i][j]` lists the nonzero `(k, t_ijk)` of `b_i b_j`.
    products: Vec<Vec<Vec<(usize, Poly)>>>,
    /// basis index with `delta_j = r (mod m)`, indexed by `r`.
    by_residue: Vec<usize>,
    /// basis elements that generate `A` as an `F_q[x]`-algebra.
    algebra_gens: Vec<usize>,
    y_degree: Option<u64>,
}

/// Validates a specification without constructing the ring.
pub fn ring_validate(spec: &RingSpec) -> ValidationReport {
    match CoordinateRing::build(spec) {
        Ok(ring) => ring.check(),
        Err(report) => report,
    }
}

impl CoordinateRing {
    /// Builds and validates; fails with the full list of violations.
    pub fn new(spec: &RingSpec) -> Result<Self> {
        let ring = CoordinateRing::build(spec).map_err(Error::InvalidRing)?;
        let report = ring.check();
        if !report.passed() {
            return Err(Error::InvalidRing(report));
        }
        Ok(ring)
    }

    pub fn polynomial_ring(field: &FieldSpec) -> Result<Self> {
        CoordinateRing::new(&RingSpec::polynomial_ring(field.clone()))
    }

    /// Shape checks plus table construction. Semantic invariants are left to
    /// [`CoordinateRing::check`].
    fn build(spec: &RingSpec) -> std::result::Result<Self, ValidationReport> {
        let mut report = ValidationReport::default();
        let k = match Fq::new(&spec.field) {
            Ok(k) => k,
            Err(e) => {
                report.fail("field", e.to_string());
                return Err(report);
            }
        };
        let m = spec.m;
        let (delta, table, algebra_gens, y_degree) = match &spec.form {
            RingForm::Cab { coeffs } => {
                if m < 2 || coeffs.len() != m {
                    report.fail("cab rank", format!("m = {m} with {} coefficients; need m >= 2", coeffs.len()));
                    return Err(report);
                }
                let Some(n) = coeffs[0].degree() else {
                    report.fail("cab constant term", "c0 is zero, so F is divisible by y");
                    return Err(report);
                };
                let n = n as u64;
                if gcd(m as u64, n) != 1 {
                    report.fail("gcd(m, N) = 1", format!("m = {m}, N = deg c0 = {n}"));
                    return Err(report);
                }
                let delta: Vec<u64> = (0..m as u64).map(|j| j * n).collect();
                (delta, cab_table(&k, coeffs), vec![1], Some(n))
            }
            RingForm::Custom { delta, table } => {
                if m == 0 || delta.len() != m {
                    report.fail("custom rank", format!("m = {m} with {} basis degrees", delta.len()));
                    return Err(report);
                }
                let shape_ok =
                    table.len() == m && table.iter().all(|row| row.len() == m && row.iter().all(|e| e.len() == m));
                if !shape_ok {
                    report.fail("custom table shape", format!("expected {m} x {m} entries of {m} polynomials"));
                    return Err(report);
                }
                (delta.clone(), table.clone(), (1..m).collect(), None)
            }
        };

        let mut by_residue = vec![usize::MAX; m];
        for (j, &d) in delta.iter().enumerate() {
            let r = (d % m as u64) as usize;
            if by_residue[r] != usize::MAX {
                report.fail(
                    "basis degrees",
                    format!(
                        "delta_{} = {} and delta_{j} = {d} agree modulo m = {m}",
                        by_residue[r], delta[by_residue[r]]
                    ),
                );
                return Err(report);
            }
            by_residue[r] = j;
        }

        let products = table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|entry| {
                        entry
                            .iter()
                            .enumerate()
                            .filter(|(_, p)| !p.is_zero())
                            .map(|(idx, p)| (idx, p.clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();

        Ok(CoordinateRing { spec: spec.clone(), k, m, delta, products, by_residue, algebra_gens, y_degree })
    }

    fn check(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        match &self.spec.form {
            RingForm::Cab { coeffs } => self.check_cab(coeffs, &mut report),
            RingForm::Custom { .. } => self.check_custom(&mut report),
        }
        report
    }

    fn check_cab(&self, coeffs: &[Poly], report: &mut ValidationReport) {
        let m = self.m as u64;
        let n = self.y_degree.unwrap();
        for (j, c) in coeffs.iter().enumerate().skip(1) {
            if let Some(dc) = c.degree() {
                let w = m * dc as u64 + j as u64 * n;
                if w >= m * n {
                    report.fail(
                        "single slope at infinity",
                        format!("weight of c{j}*y^{j} is {w}, not below m*N = {}", m * n),
                    );
                }
            }
        }
        if report.passed() {
            if let Some(witness) = affine_singularity(coeffs, &self.k) {
                report.fail(
                    "nonsingular affine model",
                    format!("singular point with x a root of {}", witness.format(&self.k, "x")),
                );
            }
        }
    }

    fn check_custom(&self, report: &mut ValidationReport) {
        let m = self.m;
        if self.delta[0] != 0 {
            report.fail("basis degrees", format!("delta_0 = {} but b_0 must be 1", self.delta[0]));
        }
        if self.delta.windows(2).any(|w| w[0] >= w[1]) {
            report.fail("basis degrees", format!("{:?} is not strictly increasing", self.delta));
        }
        let g = self.delta.iter().fold(m as u64, |acc, &d| gcd(acc, d));
        if g != 1 {
            report.fail("gcd(m, delta) = 1", format!("gcd is {g}"));
        }
        for j in 0..m {
            let unit = self.basis(j);
            if self.mul(&self.basis(0), &unit) != unit || self.mul(&unit, &self.basis(0)) != unit {
                report.fail("b_0 is the identity", format!("b_0 * b_{j} != b_{j}"));
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                let (a, b) = (self.basis(i), self.basis(j));
                if self.mul(&a, &b) != self.mul(&b, &a) {
                    report.fail("commutativity", format!("b_{i} b_{j} != b_{j} b_{i}"));
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                let prod = self.mul(&self.basis(i), &self.basis(j));
                let want = self.delta[i] + self.delta[j];
                if self.degree(&prod) != Some(want) {
                    report.fail(
                        "degree compatibility",
                        format!("deg(b_{i} b_{j}) = {:?}, expected {want}", self.degree(&prod)),
                    );
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for l in 0..m {
                    let (a, b, c) = (self.basis(i), self.basis(j), self.basis(l));
                    let left = self.mul(&self.mul(&a, &b), &c);
                    let right = self.mul(&a, &self.mul(&b, &c));
                    if left != right {
                        report.fail("associativity", format!("(b_{i} b_{j}) b_{l} != b_{i} (b_{j} b_{l})"));
                    }
                }
            }
        }
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn field(&self) -> &Fq {
        &self.k
    }

    pub fn q(&self) -> u64 {
        self.k.q() as u64
    }

    pub fn p(&self) -> u64 {
        self.k.p() as u64
    }

    pub fn rank(&self) -> usize {
        self.m
    }

    /// `deg x`.
    pub fn x_degree(&self) -> u64 {
        self.m as u64
    }

    /// `N = deg y` for the single-equation form.
    pub fn y_degree(&self) -> Option<u64> {
        self.y_degree
    }

    pub fn basis_degrees(&self) -> &[u64] {
        &self.delta
    }

    pub fn is_cab(&self) -> bool {
        matches!(self.spec.form, RingForm::Cab { .. })
    }

    /// Indices `j` such that the `b_j` generate `A` over `F_q[x]` as an algebra.
    pub fn algebra_generators(&self) -> &[usize] {
        &self.algebra_gens
    }

    pub fn zero(&self) -> RingElement {
        RingElement { coeffs: vec![Poly::zero(); self.m] }
    }

    pub fn one(&self) -> RingElement {
        self.from_poly(Poly::one())
    }

    pub fn from_poly(&self, g: Poly) -> RingElement {
        let mut coeffs = vec![Poly::zero(); self.m];
        coeffs[0] = g;
        RingElement { coeffs }
    }

    pub fn constant(&self, c: FieldElement) -> RingElement {
        self.from_poly(Poly::constant(c))
    }

    pub fn basis(&self, j: usize) -> RingElement {
        self.monomial(Monomial { i: 0, j })
    }

    pub fn monomial(&self, mono: Monomial) -> RingElement {
        let mut coeffs = vec![Poly::zero(); self.m];
        coeffs[mono.j] = Poly::monomial(FieldElement::ONE, mono.i as usize);
        RingElement { coeffs }
    }

    pub fn monomial_degree(&self, mono: Monomial) -> u64 {
        self.m as u64 * mono.i + self.delta[mono.j]
    }

    /// The unique monomial of degree `d`, if `d` is a pole number.
    pub fn monomial_of_degree(&self, d: u64) -> Option<Monomial> {
        let m = self.m as u64;
        let j = self.by_residue[(d % m) as usize];
        (self.delta[j] <= d).then(|| Monomial { i: (d - self.delta[j]) / m, j })
    }

    /// All monomials of degree `< d`, ordered by degree.
    pub fn monomials_below(&self, d: u64) -> Vec<Monomial> {
        (0..d).filter_map(|e| self.monomial_of_degree(e)).collect()
    }

    /// `dim W_d = #{monomials of degree < d}`.
    pub fn dim_w(&self, d: u64) -> u64 {
        let m = self.m as u64;
        self.delta.iter().map(|&dj| if d > dj { (d - dj).div_ceil(m) } else { 0 }).sum()
    }

    /// A monomial basis of `W_d = {a : deg a < d}`.
    pub fn basis_w(&self, d: u64) -> Vec<RingElement> {
        self.monomials_below(d).into_iter().map(|mono| self.monomial(mono)).collect()
    }

    /// Degree at `inf`; `None` is minus infinity.
    pub fn degree(&self, a: &RingElement) -> Option<u64> {
        self.leading_monomial(a).map(|mono| self.monomial_degree(mono))
    }

    pub fn leading_monomial(&self, a: &RingElement) -> Option<Monomial> {
        a.coeffs
            .iter()
            .enumerate()
            .filter_map(|(j, g)| g.degree().map(|dg| Monomial { i: dg as u64, j }))
            .max_by_key(|&mono| self.monomial_degree(mono))
    }

    pub fn leading_coefficient(&self, a: &RingElement) -> FieldElement {
        self.leading_monomial(a).map(|mono| a.coeffs[mono.j].lead()).unwrap_or_default()
    }

    pub fn is_monic(&self, a: &RingElement) -> bool {
        self.leading_coefficient(a) == FieldElement::ONE
    }

    pub fn monic(&self, a: &RingElement) -> RingElement {
        match self.k.inv(self.leading_coefficient(a)) {
            Some(inv) => self.scale(a, inv),
            None => self.zero(),
        }
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.add(y, &self.k)).collect() }
    }

    pub fn add_assign(&self, a: &mut RingElement, b: &RingElement) {
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            x.add_assign(y, &self.k);
        }
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.sub(y, &self.k)).collect() }
    }

    pub fn neg(&self, a: &RingElement) -> RingElement {
        RingElement { coeffs: a.coeffs.iter().map(|x| x.neg(&self.k)).collect() }
    }

    pub fn scale(&self, a: &RingElement, c: FieldElement) -> RingElement {
        RingElement { coeffs: a.coeffs.iter().map(|x| x.scale(c, &self.k)).collect() }
    }

    pub fn scale_poly(&self, a: &RingElement, g: &Poly) -> RingElement {
        RingElement { coeffs: a.coeffs.iter().map(|x| x.mul(g, &self.k)).collect() }
    }

    /// Componentwise exact division by a polynomial in `x`.
    pub fn div_poly_exact(&self, a: &RingElement, g: &Poly) -> Result<Option<RingElement>> {
        let mut coeffs = Vec::with_capacity(self.m);
        for c in &a.coeffs {
            match c.div_exact(g, &self.k)? {
                Some(quo) => coeffs.push(quo),
                None => return Ok(None),
            }
        }
        Ok(Some(RingElement { coeffs }))
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let k = &self.k;
        let mut out = vec![Poly::zero(); self.m];
        for (i, gi) in a.coeffs.iter().enumerate() {
            if gi.is_zero() {
                continue;
            }
            for (j, hj) in b.coeffs.iter().enumerate() {
                if hj.is_zero() {
                    continue;
                }
                let prod = gi.mul(hj, k);
                for (idx, t) in &self.products[i][j] {
                    if t.is_one() {
                        out[*idx].add_assign(&prod, k);
                    } else {
                        out[*idx].add_assign(&prod.mul(t, k), k);
                    }
                }
            }
        }
        RingElement { coeffs: out }
    }

    /// Square-and-multiply power.
    pub fn pow(&self, a: &RingElement, mut e: u64) -> RingElement {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `b_j^(q^i)` for `i <= max_i`, indexed `[i][j]`.
    pub fn frobenius_images(&self, max_i: u32) -> Vec<Vec<RingElement>> {
        let q = self.q();
        let mut out = vec![(0..self.m).map(|j| self.basis(j)).collect::<Vec<_>>()];
        for _ in 0..max_i {
            let next = out.last().unwrap().iter().map(|b| self.pow(b, q)).collect();
            out.push(next);
        }
        out
    }

    /// `a^(q^i) = sum g_j(x^(q^i)) * b_j^(q^i)`, using precomputed basis images.
    pub fn frobenius(&self, a: &RingElement, i: u32, images: &[Vec<RingElement>]) -> RingElement {
        let e = (self.q() as usize).pow(i);
        let mut out = self.zero();
        for (g, bj) in a.coeffs.iter().zip(&images[i as usize]) {
            if g.is_zero() {
                continue;
            }
            self.add_assign(&mut out, &self.scale_poly(bj, &g.compose_x_power(e)));
        }
        out
    }

    /// Evaluates `p(xi)` for `p` in `F_q[T]` and `xi` in `A`.
    pub fn eval_poly_at(&self, p: &Poly, xi: &RingElement) -> RingElement {
        p.coeffs().iter().rev().fold(self.zero(), |acc, &c| self.add(&self.mul(&acc, xi), &self.constant(c)))
    }

    /// The monic elements of degree `d`: the leading monomial plus every
    /// `F_q`-combination of the monomials below it. Empty when `d` is a gap.
    pub fn enumerate_monic(&self, d: u64) -> MonicElements<'_> {
        let leading = self.monomial_of_degree(d);
        let lower = if leading.is_some() { self.monomials_below(d) } else { Vec::new() };
        let total =
            if leading.is_some() { (self.q() as u128).checked_pow(lower.len() as u32).unwrap_or(u128::MAX) } else { 0 };
        MonicElements { ring: self, leading, lower, next: 0, total }
    }

    /// Number of monic elements of degree `d`.
    pub fn count_monic(&self, d: u64) -> u128 {
        self.enumerate_monic(d).total
    }

    /// Literal for an element, monomials by descending degree.
    pub fn format(&self, a: &RingElement) -> String {
        let mut monos: Vec<(u64, Monomial, FieldElement)> = Vec::new();
        for (j, g) in a.coeffs.iter().enumerate() {
            for (i, &c) in g.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    let mono = Monomial { i: i as u64, j };
                    monos.push((self.monomial_degree(mono), mono, c));
                }
            }
        }
        if monos.is_empty() {
            return "0".into();
        }
        monos.sort_by_key(|m| std::cmp::Reverse(m.0));
        monos
            .iter()
            .map(|(_, mono, c)| format_term(&self.k, *c, &self.monomial_name(*mono)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    fn basis_name(&self, j: usize) -> String {
        match (&self.spec.form, j) {
            (_, 0) => String::new(),
            (RingForm::Cab { .. }, 1) => "y".into(),
            (RingForm::Cab { .. }, _) => format!("y^{j}"),
            (RingForm::Custom { .. }, _) => format!("b{j}"),
        }
    }

    fn monomial_name(&self, mono: Monomial) -> String {
        let xs = monomial_name("x", mono.i as usize);
        let bs = self.basis_name(mono.j);
        match (xs.is_empty(), bs.is_empty()) {
            (true, true) => String::new(),
            (false, true) => xs,
            (true, false) => bs,
            (false, false) => format!("{xs}*{bs}"),
        }
    }

    /// Parses an element literal in `x`, `y` (or `b1`, `b2`, ...) and `t`.
    pub fn parse_element(&self, text: &str) -> Result<RingElement> {
        literal::parse(text, &ElementLiteral { ring: self })
    }
}

/// Stream of monic elements of one degree.
pub struct MonicElements<'a> {
    ring: &'a CoordinateRing,
    leading: Option<Monomial>,
    lower: Vec<Monomial>,
    next: u128,
    total: u128,
}

impl MonicElements<'_> {
    /// Number of elements in the full enumeration.
    pub fn total(&self) -> u128 {
        self.total
    }

    /// Limits the stream to the given index range of the full enumeration.
    pub fn restrict(mut self, range: std::ops::Range<u128>) -> Self {
        self.next = range.start;
        self.total = self.total.min(range.end);
        self
    }
}

impl Iterator for MonicElements<'_> {
    type Item = RingElement;

    fn next(&mut self) -> Option<RingElement> {
        if self.next >= self.total {
            return None;
        }
        let ring = self.ring;
        let q = ring.q() as u128;
        let mut idx = self.next;
        self.next += 1;
        let mut coeffs: Vec<Vec<FieldElement>> = vec![Vec::new(); ring.m];
        let mut put = |mono: Monomial, c: FieldElement| {
            let v = &mut coeffs[mono.j];
            let i = mono.i as usize;
            if v.len() <= i {
                v.resize(i + 1, FieldElement::ZERO);
            }
            v[i] = c;
        };
        put(self.leading.unwrap(), FieldElement::ONE);
        for &mono in &self.lower {
            let c = ring.k.element((idx % q) as u32).unwrap();
            idx /= q;
            if !c.is_zero() {
                put(mono, c);
            }
        }
        Some(RingElement { coeffs: coeffs.into_iter().map(Poly::new).collect() })
    }
}

struct ElementLiteral<'a> {
    ring: &'a CoordinateRing,
}

impl LiteralAlgebra for ElementLiteral<'_> {
    type Elem = RingElement;

    fn integer(&self, n: i64) -> RingElement {
        self.ring.constant(self.ring.k.from_int(n))
    }

    fn variable(&self, name: &str) -> Result<RingElement> {
        let ring = self.ring;
        match name {
            "x" => Ok(ring.from_poly(Poly::x())),
            "t" if ring.k.n() > 1 => Ok(ring.constant(ring.k.generator_t())),
            "y" if ring.is_cab() => Ok(ring.basis(1)),
            _ => {
                if let Some(j) = name.strip_prefix('b').and_then(|s| s.parse::<usize>().ok()) {
                    if !ring.is_cab() && j < ring.m {
                        return Ok(ring.basis(j));
                    }
                }
                Err(Error::parse(format!("unknown variable `{name}`")))
            }
        }
    }

    fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.ring.add(a, b)
    }

    fn neg(&self, a: &RingElement) -> RingElement {
        self.ring.neg(a)
    }

    fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.ring.mul(a, b)
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Structure constants of `1, y, ..., y^{m-1}` under `y^m = -sum c_j y^j`.
fn cab_table(k: &Fq, coeffs: &[Poly]) -> Vec<Vec<Vec<Poly>>> {
    let m = coeffs.len();
    // powers[e] = y^e expressed in the basis, for e < 2m - 1
    let mut powers: Vec<Vec<Poly>> = Vec::with_capacity(2 * m - 1);
    for e in 0..m {
        let mut v = vec![Poly::zero(); m];
        v[e] = Poly::one();
        powers.push(v);
    }
    for _ in m..2 * m - 1 {
        let prev = powers.last().unwrap();
        // y * prev: shift up, then fold the y^m term back
        let top = prev[m - 1].clone();
        let mut v = vec![Poly::zero(); m];
        v[1..m].clone_from_slice(&prev[..m - 1]);
        for j in 0..m {
            v[j] = v[j].sub(&top.mul(&coeffs[j], k), k);
        }
        powers.push(v);
    }
    (0..m).map(|i| (0..m).map(|j| powers[i + j].clone()).collect()).collect()
}

/// Polynomial in `y` with coefficients in `F_q[x]`, lowest first.
type YPoly = Vec<Poly>;

/// Looks for a singular point of the affine curve `F = 0` over the algebraic
/// closure. Returns an irreducible `pi(x)` such that a singular point has
/// `x`-coordinate a root of `pi`.
fn affine_singularity(coeffs: &[Poly], k: &Fq) -> Option<Poly> {
    let m = coeffs.len();
    let mut f: YPoly = coeffs.to_vec();
    f.push(Poly::one());
    let fy: YPoly = (1..=m).map(|j| f[j].scale(k.from_int(j as i64), k)).collect();
    let fx: YPoly = coeffs.iter().map(|c| c.derivative(k)).collect();
    let partials: Vec<YPoly> = [fy, fx].into_iter().map(trim_y).filter(|g| !g.is_empty()).collect();

    let mut candidates = Poly::zero();
    for g in &partials {
        let r = resultant_y(&f, g, k);
        candidates = candidates.gcd(&r, k);
    }
    if partials.is_empty() {
        // both partials vanish identically: every point is singular
        return Some(Poly::x());
    }
    if candidates.is_zero() {
        // F and a partial share a factor; the curve is not reduced
        return Some(Poly::x());
    }
    if candidates.degree() == Some(0) {
        return None;
    }
    let factors = factor::factor(&candidates, k).ok()?;
    for (pi, _) in factors {
        let reduce = |g: &YPoly| -> YPoly { trim_y(g.iter().map(|c| c.rem(&pi, k).unwrap()).collect()) };
        let mut acc = reduce(&f);
        for g in &partials {
            acc = residue_gcd(acc, reduce(g), &pi, k);
        }
        if acc.len() >= 2 {
            return Some(pi);
        }
    }
    None
}

fn trim_y(mut g: YPoly) -> YPoly {
    while g.last().is_some_and(Poly::is_zero) {
        g.pop();
    }
    g
}

/// `Res_y(a, b)` up to sign, by fraction-free elimination on the Sylvester matrix.
fn resultant_y(a: &YPoly, b: &YPoly, k: &Fq) -> Poly {
    let da = a.len() - 1;
    let db = b.len() - 1;
    let n = da + db;
    if n == 0 {
        return Poly::one();
    }
    let mut mat = vec![vec![Poly::zero(); n]; n];
    for r in 0..db {
        for (j, c) in a.iter().rev().enumerate() {
            mat[r][r + j] = c.clone();
        }
    }
    for r in 0..da {
        for (j, c) in b.iter().rev().enumerate() {
            mat[db + r][r + j] = c.clone();
        }
    }
    let mut prev = Poly::one();
    for c in 0..n - 1 {
        if mat[c][c].is_zero() {
            let Some(r) = (c + 1..n).find(|&r| !mat[r][c].is_zero()) else {
                return Poly::zero();
            };
            mat.swap(c, r);
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let num = mat[i][j].mul(&mat[c][c], k).sub(&mat[i][c].mul(&mat[c][j], k), k);
                mat[i][j] = num.div_exact(&prev, k).unwrap().expect("Bareiss division is exact");
            }
        }
        prev = mat[c][c].clone();
    }
    mat[n - 1][n - 1].clone()
}

/// Gcd in `(F_q[x]/pi)[y]`; returns a trimmed polynomial (empty for zero).
fn residue_gcd(mut a: YPoly, mut b: YPoly, pi: &Poly, k: &Fq) -> YPoly {
    let inv = |c: &Poly| -> Poly {
        let (g, s, _) = Poly::ext_gcd(c, pi, k);
        debug_assert!(g.is_one());
        s.rem(pi, k).unwrap()
    };
    while !b.is_empty() {
        // a <- a mod b
        let lead_inv = inv(b.last().unwrap());
        while a.len() >= b.len() {
            let f = a.last().unwrap().mul(&lead_inv, k).rem(pi, k).unwrap();
            let shift = a.len() - b.len();
            for (j, c) in b.iter().enumerate() {
                a[shift + j] = a[shift + j].sub(&f.mul(c, k), k).rem(pi, k).unwrap();
            }
            a = trim_y(a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}
