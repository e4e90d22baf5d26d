//! Ideals of `A` as `F_q[x]`-lattices in Hermite normal form, class groups and
//! the L-polynomial recovered from ideal counts.
//!
//! An ideal is stored as an upper-triangular `m x m` matrix whose columns are
//! `F_q[x]`-module generators written in the basis `b_0, ..., b_{m-1}`. The
//! diagonal is monic and every entry above the diagonal is reduced modulo
//! the diagonal entry of its row, which makes the matrix unique.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::linalg;
use crate::poly::Poly;
use crate::ring::{CoordinateRing, Monomial, RingElement};
use crate::semigroup::semigroup_from_ring;

/// Default cap on `q^(m d)` for ideal enumeration.
pub const DEFAULT_IDEAL_BUDGET: u128 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdealHNF {
    /// `rows[i][j]`: coefficient of `b_i` in column `j`
    rows: Vec<Vec<Poly>>,
}

impl IdealHNF {
    /// The unit ideal `(1)`.
    pub fn unit(ring: &CoordinateRing) -> Self {
        let m = ring.rank();
        let rows = (0..m).map(|i| (0..m).map(|j| if i == j { Poly::one() } else { Poly::zero() }).collect()).collect();
        IdealHNF { rows }
    }

    /// The smallest ideal containing `gens`.
    pub fn from_generators(ring: &CoordinateRing, gens: &[RingElement]) -> Result<Self> {
        let mut cols = Vec::new();
        for g in gens.iter().filter(|g| !g.is_zero()) {
            for j in 0..ring.rank() {
                cols.push(ring.mul(g, &ring.basis(j)).into_coeffs());
            }
        }
        if cols.is_empty() {
            return Err(Error::ZeroInput("an ideal needs a nonzero generator"));
        }
        Ok(hnf(ring, cols).expect("nonzero generator spans a full-rank lattice"))
    }

    pub fn principal(ring: &CoordinateRing, a: &RingElement) -> Result<Self> {
        Self::from_generators(ring, std::slice::from_ref(a))
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.rows[i][j]
    }

    pub fn diagonal(&self) -> Vec<&Poly> {
        (0..self.rows.len()).map(|i| &self.rows[i][i]).collect()
    }

    /// `deg I = dim_{F_q} A/I = sum of the diagonal degrees`.
    pub fn degree(&self) -> u64 {
        self.diagonal().iter().map(|p| p.degree().unwrap() as u64).sum()
    }

    /// The monic generator of `I intersect F_q[x]`.
    pub fn norm_poly(&self) -> &Poly {
        &self.rows[0][0]
    }

    /// Column `j` as a ring element.
    pub fn column(&self, j: usize) -> RingElement {
        RingElement::from_coeffs(self.rows.iter().map(|row| row[j].clone()).collect())
    }

    pub fn columns(&self) -> Vec<RingElement> {
        (0..self.rows.len()).map(|j| self.column(j)).collect()
    }

    /// Canonical representative of `a` modulo `I`: coefficient `i` has degree
    /// below the `i`-th diagonal entry.
    pub fn reduce(&self, ring: &CoordinateRing, a: &RingElement) -> RingElement {
        let k = ring.field();
        let mut v = a.coeffs().to_vec();
        for r in (0..self.rows.len()).rev() {
            let (quo, rem) = v[r].divrem(&self.rows[r][r], k).unwrap();
            if !quo.is_zero() {
                for i in 0..r {
                    v[i] = v[i].sub(&quo.mul(&self.rows[i][r], k), k);
                }
            }
            v[r] = rem;
        }
        RingElement::from_coeffs(v)
    }

    pub fn contains(&self, ring: &CoordinateRing, a: &RingElement) -> bool {
        self.reduce(ring, a).is_zero()
    }

    /// Coordinates of `a mod I` in the basis [`IdealHNF::quotient_basis`].
    pub fn coords(&self, ring: &CoordinateRing, a: &RingElement) -> Vec<FieldElement> {
        let red = self.reduce(ring, a);
        let mut out = Vec::with_capacity(self.degree() as usize);
        for (i, d) in self.diagonal().iter().enumerate() {
            let d = d.degree().unwrap();
            out.extend((0..d).map(|l| red.coeff(i).coeff(l)));
        }
        out
    }

    /// The monomials `x^l b_i` with `l < deg I_ii`, an `F_q`-basis of `A/I`.
    pub fn quotient_basis(&self) -> Vec<Monomial> {
        let mut out = Vec::new();
        for (i, d) in self.diagonal().iter().enumerate() {
            out.extend((0..d.degree().unwrap() as u64).map(|l| Monomial { i: l, j: i }));
        }
        out
    }

    /// Whether the lattice is closed under multiplication by the algebra
    /// generators of `A`, i.e. is an ideal.
    pub fn is_stable(&self, ring: &CoordinateRing) -> bool {
        let cols = self.columns();
        ring.algebra_generators().iter().all(|&g| {
            let bg = ring.basis(g);
            cols.iter().all(|c| self.contains(ring, &ring.mul(&bg, c)))
        })
    }

    pub fn mul(&self, ring: &CoordinateRing, other: &IdealHNF) -> IdealHNF {
        let mut cols = Vec::new();
        for a in self.columns() {
            for b in other.columns() {
                cols.push(ring.mul(&a, &b).into_coeffs());
            }
        }
        hnf(ring, cols).expect("product of ideals has full rank")
    }

    pub fn pow(&self, ring: &CoordinateRing, mut e: u64) -> IdealHNF {
        let mut acc = IdealHNF::unit(ring);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(ring, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(ring, &base);
            }
        }
        acc
    }

    /// An echelon basis of `{a in I : deg a < bound}`: monic elements with
    /// pairwise distinct degrees, ascending.
    pub fn elements_below(&self, ring: &CoordinateRing, bound: u64) -> Vec<RingElement> {
        let mut monos = ring.monomials_below(bound);
        monos.reverse();
        if monos.is_empty() {
            return Vec::new();
        }
        let n = self.degree() as usize;
        let images: Vec<Vec<FieldElement>> =
            monos.iter().map(|&mono| self.coords(ring, &ring.monomial(mono))).collect();
        let rows: Vec<Vec<FieldElement>> = (0..n).map(|r| images.iter().map(|col| col[r]).collect()).collect();
        let mut ker = if n == 0 {
            (0..monos.len())
                .map(|c| {
                    let mut v = vec![FieldElement::ZERO; monos.len()];
                    v[c] = FieldElement::ONE;
                    v
                })
                .collect()
        } else {
            linalg::kernel(&rows, monos.len(), ring.field())
        };
        linalg::rref(&mut ker, ring.field());
        let mut out: Vec<RingElement> = ker
            .iter()
            .map(|v| {
                let mut acc = ring.zero();
                for (&c, &mono) in v.iter().zip(&monos) {
                    if !c.is_zero() {
                        ring.add_assign(&mut acc, &ring.scale(&ring.monomial(mono), c));
                    }
                }
                acc
            })
            .collect();
        out.reverse();
        out
    }

    /// `Some(a)` with `a` monic and `(a) = I`, if `I` is principal.
    pub fn principal_generator(&self, ring: &CoordinateRing) -> Option<RingElement> {
        let d = self.degree();
        ring.monomial_of_degree(d)?;
        self.elements_below(ring, d + 1).into_iter().find(|a| ring.degree(a) == Some(d))
    }

    pub fn is_principal(&self, ring: &CoordinateRing) -> bool {
        self.principal_generator(ring).is_some()
    }

    /// `(I : J) = {z in A : zJ inside I}`.
    pub fn colon(&self, ring: &CoordinateRing, other: &IdealHNF) -> IdealHNF {
        let basis = self.quotient_basis();
        let n = basis.len();
        let jcols = other.columns();
        if n == 0 {
            return IdealHNF::unit(ring);
        }
        // column l holds the images of basis[l] times every generator of J
        let images: Vec<Vec<FieldElement>> = basis
            .iter()
            .map(|&mono| {
                let z = ring.monomial(mono);
                jcols.iter().flat_map(|b| self.coords(ring, &ring.mul(&z, b))).collect()
            })
            .collect();
        let nrows = n * jcols.len();
        let rows: Vec<Vec<FieldElement>> = (0..nrows).map(|r| images.iter().map(|col| col[r]).collect()).collect();
        let ker = linalg::kernel(&rows, n, ring.field());
        let mut cols: Vec<Vec<Poly>> = self.columns().into_iter().map(RingElement::into_coeffs).collect();
        for v in ker {
            let mut lift = ring.zero();
            for (&c, &mono) in v.iter().zip(&basis) {
                if !c.is_zero() {
                    ring.add_assign(&mut lift, &ring.scale(&ring.monomial(mono), c));
                }
            }
            for j in 0..ring.rank() {
                cols.push(ring.mul(&lift, &ring.basis(j)).into_coeffs());
            }
        }
        hnf(ring, cols).expect("colon ideal contains I")
    }

    /// `I ~ J` in the class group: `I ((a) : J)` is principal for `a` in `J`.
    pub fn equivalent(&self, ring: &CoordinateRing, other: &IdealHNF) -> bool {
        let a = ring.from_poly(other.norm_poly().clone());
        let inverse_part = IdealHNF::principal(ring, &a).unwrap().colon(ring, other);
        self.mul(ring, &inverse_part).is_principal(ring)
    }

    /// Column generators, skipping columns already in the ideal generated by
    /// the earlier ones.
    pub fn format(&self, ring: &CoordinateRing) -> String {
        let mut kept: Vec<RingElement> = Vec::new();
        for c in self.columns() {
            let redundant =
                !kept.is_empty() && IdealHNF::from_generators(ring, &kept).is_ok_and(|i| i.contains(ring, &c));
            if !redundant {
                kept.push(c);
            }
        }
        let gens: Vec<String> = kept.iter().map(|c| ring.format(c)).collect();
        format!("({})", gens.join(", "))
    }
}

/// Hermite normal form of the lattice spanned by `cols`; `None` when the
/// span has rank below `m`.
fn hnf(ring: &CoordinateRing, mut cols: Vec<Vec<Poly>>) -> Option<IdealHNF> {
    let k = ring.field();
    let m = ring.rank();
    let nonzero = |c: &Vec<Poly>| c.iter().any(|p| !p.is_zero());
    cols.retain(nonzero);
    let mut pivots: Vec<Vec<Poly>> = vec![Vec::new(); m];
    for r in (0..m).rev() {
        loop {
            let live: Vec<usize> = (0..cols.len()).filter(|&i| !cols[i][r].is_zero()).collect();
            if live.len() <= 1 {
                break;
            }
            let best = *live.iter().min_by_key(|&&i| cols[i][r].degree()).unwrap();
            let piv = cols[best].clone();
            for &i in &live {
                if i == best {
                    continue;
                }
                let (quo, _) = cols[i][r].divrem(&piv[r], k).unwrap();
                for (t, pv) in cols[i].iter_mut().zip(&piv) {
                    *t = t.sub(&quo.mul(pv, k), k);
                }
            }
            cols.retain(nonzero);
        }
        let pos = (0..cols.len()).find(|&i| !cols[i][r].is_zero())?;
        let mut piv = cols.swap_remove(pos);
        let inv = k.inv(piv[r].lead()).unwrap();
        for t in piv.iter_mut() {
            *t = t.scale(inv, k);
        }
        pivots[r] = piv;
    }
    let mut rows: Vec<Vec<Poly>> = (0..m).map(|i| (0..m).map(|j| pivots[j][i].clone()).collect()).collect();
    for j in 0..m {
        for i in (0..j).rev() {
            let (quo, _) = rows[i][j].divrem(&rows[i][i], k).unwrap();
            if quo.is_zero() {
                continue;
            }
            for l in 0..=i {
                let sub = quo.mul(&rows[l][i], k);
                rows[l][j] = rows[l][j].sub(&sub, k);
            }
        }
    }
    Some(IdealHNF { rows })
}

/// All ideals of degree `d` in canonical order.
pub fn enumerate_ideals(ring: &CoordinateRing, d: u64, budget: u128) -> Result<Vec<IdealHNF>> {
    let m = ring.rank();
    let k = ring.field();
    let needed = (ring.q() as u128).checked_pow((m as u64 * d) as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { what: "ideal enumeration", needed, budget });
    }
    let mut out = Vec::new();
    for comp in compositions(d, m) {
        for diag0 in Poly::monic_of_degree(comp[0] as usize, k) {
            // every diagonal entry divides the first one
            let mut choices: Vec<Vec<Poly>> = vec![vec![diag0.clone()]];
            for &dj in &comp[1..] {
                let divs: Vec<Poly> =
                    Poly::monic_of_degree(dj as usize, k).filter(|p| p.divides(&diag0, k).unwrap()).collect();
                choices.push(divs);
            }
            if choices.iter().any(Vec::is_empty) {
                continue;
            }
            for diag in cartesian(&choices) {
                enumerate_off_diagonal(ring, &diag, &mut out);
            }
        }
    }
    out.sort();
    Ok(out)
}

fn enumerate_off_diagonal(ring: &CoordinateRing, diag: &[Poly], out: &mut Vec<IdealHNF>) {
    let m = diag.len();
    let k = ring.field();
    let slots: Vec<(usize, usize)> = (0..m).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let choices: Vec<Vec<Poly>> =
        slots.iter().map(|&(i, _)| Poly::all_below_degree(diag[i].degree().unwrap(), k).collect()).collect();
    for entries in cartesian(&choices) {
        let mut rows: Vec<Vec<Poly>> =
            (0..m).map(|i| (0..m).map(|j| if i == j { diag[i].clone() } else { Poly::zero() }).collect()).collect();
        for (&(i, j), e) in slots.iter().zip(entries) {
            rows[i][j] = e;
        }
        let cand = IdealHNF { rows };
        if cand.is_stable(ring) {
            out.push(cand);
        }
    }
}

fn cartesian(choices: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    let mut acc: Vec<Vec<Poly>> = vec![Vec::new()];
    for opts in choices {
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                opts.iter().map(move |o| {
                    let mut v = prefix.clone();
                    v.push(o.clone());
                    v
                })
            })
            .collect();
    }
    acc
}

/// Ordered `parts`-tuples of nonnegative integers summing to `d`.
fn compositions(d: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 1 {
        return vec![vec![d]];
    }
    (0..=d)
        .flat_map(|first| {
            compositions(d - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// `c_d = #{ideals of degree d}` for `d <= d_max`.
pub fn ideal_counts(ring: &CoordinateRing, d_max: u64, budget: u128) -> Result<Vec<u64>> {
    (0..=d_max).map(|d| Ok(enumerate_ideals(ring, d, budget)?.len() as u64)).collect()
}

/// Number of affine `F_q`-points of the defining equation (single-equation form).
pub fn affine_point_count(ring: &CoordinateRing) -> Option<u64> {
    let crate::ring::RingForm::Cab { coeffs } = &ring.spec().form else {
        return None;
    };
    let k = ring.field();
    let mut count = 0;
    for x0 in k.elements() {
        let cs: Vec<FieldElement> = coeffs.iter().map(|c| c.eval(x0, k)).collect();
        for y0 in k.elements() {
            let mut val = FieldElement::ONE;
            for c in cs.iter().rev() {
                val = k.add(k.mul(val, y0), *c);
            }
            if val.is_zero() {
                count += 1;
            }
        }
    }
    Some(count)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LPolynomial {
    pub q: u64,
    pub genus: u64,
    /// `p_0, ..., p_{2g}`
    pub coeffs: Vec<i64>,
    /// `P(1)`
    pub h: i64,
    pub functional_equation: bool,
    /// ideal counts `c_0, ..., c_{2g}`
    pub counts: Vec<u64>,
}

impl LPolynomial {
    /// Recovers `P(t)` from `sum c_d t^d = P(t)/(1 - qt)`.
    pub fn from_counts(q: u64, genus: u64, counts: &[u64]) -> Self {
        let n = (2 * genus) as usize;
        let coeffs: Vec<i64> =
            (0..=n).map(|i| counts[i] as i64 - if i > 0 { q as i64 * counts[i - 1] as i64 } else { 0 }).collect();
        let functional_equation =
            (0..=genus as usize).all(|i| coeffs[n - i] == (q as i64).pow(genus as u32 - i as u32) * coeffs[i]);
        let h = coeffs.iter().sum();
        LPolynomial { q, genus, coeffs, h, functional_equation, counts: counts[..=n].to_vec() }
    }

    pub fn format(&self) -> String {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match i {
                0 => c.to_string(),
                _ => {
                    let t = if i == 1 { "t".to_string() } else { format!("t^{i}") };
                    match c {
                        1 => t,
                        -1 => format!("-{t}"),
                        _ => format!("{c}*{t}"),
                    }
                }
            })
            .collect();
        terms.join(" + ").replace("+ -", "- ")
    }
}

/// The L-polynomial from ideal counts up to degree `2g`.
pub fn l_polynomial(ring: &CoordinateRing, budget: u128) -> Result<LPolynomial> {
    let genus = semigroup_from_ring(ring).genus();
    let counts = ideal_counts(ring, 2 * genus, budget)?;
    Ok(LPolynomial::from_counts(ring.q(), genus, &counts))
}

#[derive(Clone, Debug)]
pub struct IdealClass {
    pub ideal: IdealHNF,
    pub degree: u64,
    pub order: u64,
    /// monic generator of `ideal^order`
    pub generator: RingElement,
}

#[derive(Clone, Debug)]
pub struct ClassGroupReport {
    pub h: u64,
    pub exponent: u64,
    pub genus: u64,
    pub lpoly: LPolynomial,
    /// class 0 is the principal class `(1)`
    pub classes: Vec<IdealClass>,
}

impl ClassGroupReport {
    /// Index of the class of `ideal`.
    pub fn class_of(&self, ring: &CoordinateRing, ideal: &IdealHNF) -> Option<usize> {
        self.classes.iter().position(|c| ideal.equivalent(ring, &c.ideal))
    }
}

#[derive(Clone, Debug)]
pub struct ClassGroupOptions {
    pub budget: u128,
    /// highest degree searched for class representatives; `None` means `2g + 2`
    pub max_degree: Option<u64>,
}

impl Default for ClassGroupOptions {
    fn default() -> Self {
        ClassGroupOptions { budget: DEFAULT_IDEAL_BUDGET, max_degree: None }
    }
}

/// Class group with representatives of least degree.
///
/// The class number comes from the L-polynomial; enumeration by increasing
/// degree stops once that many classes are found. Among the representatives
/// of least degree in a class, one whose power `I^(e_k)` is generated by a
/// polynomial in `x` is preferred.
pub fn class_group(ring: &CoordinateRing, opts: &ClassGroupOptions) -> Result<ClassGroupReport> {
    let lpoly = l_polynomial(ring, opts.budget)?;
    if !lpoly.functional_equation {
        return Err(Error::Inconsistent(format!(
            "ideal counts {:?} give P(t) coefficients {:?} violating the functional equation",
            lpoly.counts, lpoly.coeffs
        )));
    }
    if lpoly.h < 1 {
        return Err(Error::Inconsistent(format!("P(1) = {} is not a class number", lpoly.h)));
    }
    let h = lpoly.h as u64;
    let genus = lpoly.genus;
    let max_degree = opts.max_degree.unwrap_or(2 * genus + 2);

    let unit = IdealHNF::unit(ring);
    let mut classes = vec![IdealClass { ideal: unit, degree: 0, order: 1, generator: ring.one() }];
    let mut d = 1;
    while (classes.len() as u64) < h {
        if d > max_degree {
            return Err(Error::Inconsistent(format!(
                "found {} of {h} classes among ideals of degree <= {max_degree}",
                classes.len()
            )));
        }
        // group the new ideals of degree d into new classes
        let mut fresh: Vec<Vec<IdealHNF>> = Vec::new();
        for ideal in enumerate_ideals(ring, d, opts.budget)? {
            if classes.iter().any(|c| ideal.equivalent(ring, &c.ideal)) {
                continue;
            }
            match fresh.iter_mut().find(|group| ideal.equivalent(ring, &group[0])) {
                Some(group) => group.push(ideal),
                None => fresh.push(vec![ideal]),
            }
        }
        for group in fresh {
            let order = class_order(ring, &group[0], h)?;
            let mut chosen = None;
            for ideal in &group {
                let generator = ideal
                    .pow(ring, order)
                    .principal_generator(ring)
                    .ok_or_else(|| Error::Inconsistent("class power is not principal".into()))?;
                let polynomial = generator.as_poly().is_some();
                if chosen.is_none() || polynomial {
                    chosen = Some(IdealClass { ideal: ideal.clone(), degree: d, order, generator });
                }
                if polynomial {
                    break;
                }
            }
            classes.push(chosen.unwrap());
        }
        d += 1;
    }
    if classes.len() as u64 != h {
        return Err(Error::Inconsistent(format!("class enumeration found {} classes but P(1) = {h}", classes.len())));
    }
    let exponent = classes.iter().fold(1, |acc, c| lcm(acc, c.order));
    Ok(ClassGroupReport { h, exponent, genus, lpoly, classes })
}

/// Least `e` with `I^e` principal; `e` divides `h`.
fn class_order(ring: &CoordinateRing, ideal: &IdealHNF, h: u64) -> Result<u64> {
    let mut power = ideal.clone();
    for e in 1..=h {
        if power.is_principal(ring) {
            return Ok(e);
        }
        power = power.mul(ring, ideal);
    }
    Err(Error::Inconsistent(format!("no power up to {h} of {} is principal", ideal.format(ring))))
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / crate::ring::gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn principal_x_in_ex26() {
        let ring = catalog::ex26();
        let x = ring.parse_element("x").unwrap();
        let i = IdealHNF::principal(&ring, &x).unwrap();
        assert_eq!(i.degree(), 2);
        assert_eq!(i.diagonal(), [&Poly::x(), &Poly::x()]);
        assert_eq!(i.principal_generator(&ring), Some(x));
        assert_eq!(IdealHNF::unit(&ring).degree(), 0);
    }

    #[test]
    fn h4g3_point_ideals() {
        let ring = catalog::h4g3();
        let gens = [ring.parse_element("x").unwrap(), ring.parse_element("y").unwrap()];
        let p = IdealHNF::from_generators(&ring, &gens).unwrap();
        assert_eq!(p.degree(), 1);
        assert!(!p.is_principal(&ring));
        let p2 = p.mul(&ring, &p);
        assert_eq!(p2.degree(), 2);
        assert_eq!(ring.format(&p2.principal_generator(&ring).unwrap()), "x");
    }

    #[test]
    fn fqx_quadratics() {
        let ring = catalog::fqx(2).unwrap();
        let ideals = enumerate_ideals(&ring, 2, DEFAULT_IDEAL_BUDGET).unwrap();
        assert_eq!(ideals.len(), 4);
        assert_eq!(enumerate_ideals(&ring, 0, DEFAULT_IDEAL_BUDGET).unwrap().len(), 1);
        let g = ring.parse_element("x^2 + x").unwrap();
        let i = IdealHNF::principal(&ring, &g).unwrap();
        assert_eq!(i.principal_generator(&ring), Some(g));
    }

    #[test]
    fn colon_and_equivalence() {
        let ring = catalog::h4g3();
        let p = IdealHNF::from_generators(&ring, &[ring.parse_element("x").unwrap(), ring.parse_element("y").unwrap()])
            .unwrap();
        let x = IdealHNF::principal(&ring, &ring.parse_element("x").unwrap()).unwrap();
        // (x) : P = P since P^2 = (x)
        assert_eq!(x.colon(&ring, &p), p);
        assert!(p.equivalent(&ring, &p));
        assert!(!p.equivalent(&ring, &IdealHNF::unit(&ring)));
        assert!(x.equivalent(&ring, &IdealHNF::unit(&ring)));
    }

    #[test]
    fn trivial_class_groups() {
        let ring = catalog::fqx(2).unwrap();
        let report = class_group(&ring, &ClassGroupOptions::default()).unwrap();
        assert_eq!((report.h, report.exponent), (1, 1));
    }

    #[test]
    fn h4g3_class_group() {
        let ring = catalog::h4g3();
        let report = class_group(&ring, &ClassGroupOptions::default()).unwrap();
        assert_eq!((report.h, report.genus, report.exponent), (4, 3, 2));
        assert!(report.lpoly.functional_equation);
        assert_eq!(report.lpoly.counts[1], affine_point_count(&ring).unwrap());
    }

    #[test]
    fn l_polynomial_format() {
        let lp = LPolynomial::from_counts(2, 1, &[1, 1, 3]);
        assert_eq!(lp.coeffs, [1, -1, 1]);
        assert_eq!(lp.format(), "1 - t + t^2");
    }
}
