//! The zeta polynomial summed over all ideals: `I^t` is `a^(t/e)` for the
//! monic generator `a` of `I^e`, where `e` is the class-group exponent.
//!
//! The direct path enumerates ideals degree by degree. The classwise path
//! uses that the ideals in the class of `I_k^{-1}` are exactly `(a) I_k^{-1}`
//! for monic `a` in `I_k`, so
//!
//! ```text
//! sum_{I ~ I_k^{-1}, deg I = d} I^t = f_k^{-t/e_k} * sum_{a in I_k monic, deg a = d + d_k} a^t
//! ```
//!
//! with `(f_k) = I_k^{e_k}`. The inner sums run over affine spaces inside
//! `I_k`, so they vanish past a cutoff read off from dimensions.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{enumerate_ideals, ClassGroupReport, IdealClass, IdealHNF, DEFAULT_IDEAL_BUDGET};
use crate::poly::Poly;
use crate::ring::{CoordinateRing, RingElement};
use crate::zeta::{self, digit_sum, format_x_poly, PowerStrategy, Powerer, ZetaOptions};

#[derive(Clone, Debug)]
pub struct IdealZetaPolynomial {
    pub t: u64,
    pub coefficients: Vec<RingElement>,
    pub d_max: u64,
    /// contribution of the class of `I_k^{-1}` for each class `k`
    pub per_class: Option<Vec<Vec<RingElement>>>,
    /// set when the classwise path fell back to direct enumeration
    pub warning: Option<String>,
}

impl IdealZetaPolynomial {
    pub fn value_at_one(&self, ring: &CoordinateRing) -> RingElement {
        self.coefficients.iter().fold(ring.zero(), |acc, c| ring.add(&acc, c))
    }

    pub fn ord_at_one(&self, ring: &CoordinateRing) -> Result<u64> {
        zeta::ord_at_one(ring, &self.coefficients)
    }

    pub fn format(&self, ring: &CoordinateRing) -> String {
        format_x_poly(ring, &self.coefficients)
    }
}

fn check_exponent(t: u64, e: u64) -> Result<()> {
    if t == 0 || !t.is_multiple_of(e) {
        return Err(Error::ExponentNotMultiple { t, e });
    }
    Ok(())
}

/// `I^t`: the monic generator of `I^e` raised to `t/e`.
pub fn ideal_power_value(
    ring: &CoordinateRing,
    ideal: &IdealHNF,
    t: u64,
    report: &ClassGroupReport,
) -> Result<RingElement> {
    let e = report.exponent;
    check_exponent(t, e)?;
    let a = ideal
        .pow(ring, e)
        .principal_generator(ring)
        .ok_or_else(|| Error::Inconsistent(format!("{}^{e} is not principal", ideal.format(ring))))?;
    Ok(ring.pow(&a, t / e))
}

/// Oracle: sum `I^t` over every ideal of degree `d <= d_max`.
pub fn ideal_zeta_direct(
    ring: &CoordinateRing,
    t: u64,
    d_max: u64,
    report: &ClassGroupReport,
    budget: u128,
) -> Result<IdealZetaPolynomial> {
    check_exponent(t, report.exponent)?;
    let coefficients = (0..=d_max)
        .into_par_iter()
        .map(|d| {
            let mut acc = ring.zero();
            for ideal in enumerate_ideals(ring, d, budget)? {
                ring.add_assign(&mut acc, &ideal_power_value(ring, &ideal, t, report)?);
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IdealZetaPolynomial { t, coefficients, d_max, per_class: None, warning: None })
}

#[derive(Clone, Debug)]
pub struct IdealZetaOptions {
    /// cap on summands per affine slice
    pub budget: u128,
    /// cap for the direct fallback's ideal enumeration
    pub ideal_budget: u128,
    pub strategy: PowerStrategy,
}

impl Default for IdealZetaOptions {
    fn default() -> Self {
        IdealZetaOptions {
            budget: zeta::DEFAULT_BUDGET,
            ideal_budget: DEFAULT_IDEAL_BUDGET,
            strategy: PowerStrategy::Direct,
        }
    }
}

/// Per-class certified cutoff: the least `D` with
/// `(q - 1) dim{a in I_k : deg a < D} > l_q(t)`, with the echelon basis of
/// that space.
fn class_cutoff(ring: &CoordinateRing, class: &IdealClass, t: u64) -> (u64, Vec<RingElement>) {
    let profile = digit_sum(t, ring.q());
    // the dimension grows by at most one per degree, so step through D
    let mut d = class.degree;
    loop {
        let basis = class.ideal.elements_below(ring, d);
        if profile.exceeded_by(basis.len() as u64) {
            return (d, basis);
        }
        d += 1;
    }
}

/// Largest coefficient index not certified zero, over all classes.
pub fn classwise_cutoff(ring: &CoordinateRing, t: u64, report: &ClassGroupReport) -> u64 {
    report
        .classes
        .iter()
        .map(|c| {
            let (dk, _) = class_cutoff(ring, c, t);
            dk.saturating_sub(1 + c.degree)
        })
        .max()
        .unwrap_or(0)
}

/// Classwise computation with the certified cutoff. Falls back to
/// [`ideal_zeta_direct`] when some `f_k` is not a polynomial in `x`.
pub fn ideal_zeta_classwise(
    ring: &CoordinateRing,
    t: u64,
    report: &ClassGroupReport,
    opts: &IdealZetaOptions,
) -> Result<IdealZetaPolynomial> {
    check_exponent(t, report.exponent)?;
    let cutoffs: Vec<(u64, Vec<RingElement>)> = report.classes.iter().map(|c| class_cutoff(ring, c, t)).collect();
    let d_max =
        report.classes.iter().zip(&cutoffs).map(|(c, (dk, _))| dk.saturating_sub(1 + c.degree)).max().unwrap_or(0);

    if let Some(bad) = report.classes.iter().find(|c| c.generator.as_poly().is_none()) {
        let mut out = ideal_zeta_direct(ring, t, d_max, report, opts.ideal_budget)?;
        out.warning = Some(format!(
            "generator {} of {}^{} is not a polynomial in x; used direct enumeration",
            ring.format(&bad.generator),
            bad.ideal.format(ring),
            bad.order
        ));
        return Ok(out);
    }

    let powerer = Powerer::new(ring, t, opts.strategy);
    let mut jobs = Vec::new();
    for (k, class) in report.classes.iter().enumerate() {
        for d in 0..=d_max {
            jobs.push((k, d, class));
        }
    }
    let values = jobs
        .par_iter()
        .map(|&(k, d, class)| {
            let (dk, basis) = &cutoffs[k];
            let deg = d + class.degree;
            if deg >= *dk {
                return Ok(ring.zero());
            }
            let sum = monic_slice_sum(ring, basis, deg, &powerer, opts.budget)?;
            let f = class.generator.as_poly().unwrap().pow(t / class.order, ring.field());
            ring.div_poly_exact(&sum, &f)?.ok_or_else(|| {
                Error::Inconsistent(format!("class sum at degree {d} is not divisible by f_{k}^(t/e_k)"))
            })
        })
        .collect::<Result<Vec<RingElement>>>()?;

    let width = d_max as usize + 1;
    let per_class: Vec<Vec<RingElement>> = values.chunks(width).map(<[RingElement]>::to_vec).collect();
    let mut coefficients = vec![ring.zero(); width];
    for series in &per_class {
        for (acc, c) in coefficients.iter_mut().zip(series) {
            ring.add_assign(acc, c);
        }
    }
    Ok(IdealZetaPolynomial { t, coefficients, d_max, per_class: Some(per_class), warning: None })
}

/// `sum a^t` over monic `a` of degree `deg` in the span of an echelon basis.
fn monic_slice_sum(
    ring: &CoordinateRing,
    basis: &[RingElement],
    deg: u64,
    powerer: &Powerer<'_>,
    budget: u128,
) -> Result<RingElement> {
    let Some(lead) = basis.iter().find(|b| ring.degree(b) == Some(deg)) else {
        return Ok(ring.zero());
    };
    let dirs: Vec<&RingElement> = basis.iter().filter(|b| ring.degree(b) < Some(deg)).collect();
    let q = ring.q() as u128;
    let terms = q.checked_pow(dirs.len() as u32).unwrap_or(u128::MAX);
    if terms > budget {
        return Err(Error::BudgetExceeded { what: "class power sum", needed: terms, budget });
    }
    let k = ring.field();
    let mut acc = ring.zero();
    for idx in 0..terms {
        let mut a = lead.clone();
        let mut rest = idx;
        for dir in &dirs {
            let c = k.element((rest % q) as u32).unwrap();
            rest /= q;
            if !c.is_zero() {
                ring.add_assign(&mut a, &ring.scale(dir, c));
            }
        }
        ring.add_assign(&mut acc, &powerer.pow(&a));
    }
    Ok(acc)
}

#[derive(Clone, Debug, Serialize)]
pub struct RemarkReport {
    pub t: u64,
    /// coefficients of `U`, ascending in `X`
    pub u: Vec<String>,
    /// `zeta(-t, X) = zeta_{F_q[x]}(-t, X^q) U` coefficientwise
    pub factorization_holds: bool,
    /// `U(1)`
    pub u_at_one: String,
    pub u_at_one_nonzero: bool,
    /// index of the first disagreeing coefficient, if any
    pub first_mismatch: Option<usize>,
}

/// `U = 1 + sum_k f_k^((t/e_k)(e_k - 1)) X^(e_k d_k - d_k)`.
pub fn remark_u(ring: &CoordinateRing, t: u64, report: &ClassGroupReport) -> Result<Vec<RingElement>> {
    check_exponent(t, report.exponent)?;
    let mut u = vec![ring.one()];
    for class in report.classes.iter().skip(1) {
        let shift = (class.order * class.degree - class.degree) as usize;
        if u.len() <= shift {
            u.resize(shift + 1, ring.zero());
        }
        let power = ring.pow(&class.generator, (t / class.order) * (class.order - 1));
        ring.add_assign(&mut u[shift], &power);
    }
    Ok(u)
}

/// Compares the all-ideal zeta against `zeta_{F_q[x]}(-t, X^q) U`.
pub fn remark_exact_check(
    ring: &CoordinateRing,
    zeta_all: &IdealZetaPolynomial,
    report: &ClassGroupReport,
) -> Result<RemarkReport> {
    let t = zeta_all.t;
    let u = remark_u(ring, t, report)?;
    let fqx = CoordinateRing::polynomial_ring(ring.field().spec())?;
    let base = zeta::zeta_neg(&fqx, t, &ZetaOptions::default())?;
    let q = ring.q() as usize;
    let mut stretched = vec![ring.zero(); (base.coefficients.len() - 1) * q + 1];
    for (i, c) in base.coefficients.iter().enumerate() {
        stretched[i * q] = ring.from_poly(c.as_poly().cloned().unwrap_or_else(Poly::zero));
    }
    let mut product = vec![ring.zero(); stretched.len() + u.len() - 1];
    for (i, a) in stretched.iter().enumerate() {
        for (j, b) in u.iter().enumerate() {
            if !a.is_zero() && !b.is_zero() {
                ring.add_assign(&mut product[i + j], &ring.mul(a, b));
            }
        }
    }
    let len = product.len().max(zeta_all.coefficients.len());
    let at = |v: &[RingElement], i: usize| v.get(i).cloned().unwrap_or_else(|| ring.zero());
    let first_mismatch = (0..len).find(|&i| at(&product, i) != at(&zeta_all.coefficients, i));
    let u_at_one = u.iter().fold(ring.zero(), |acc, c| ring.add(&acc, c));
    Ok(RemarkReport {
        t,
        u: u.iter().map(|c| ring.format(c)).collect(),
        factorization_holds: first_mismatch.is_none(),
        u_at_one: ring.format(&u_at_one),
        u_at_one_nonzero: !u_at_one.is_zero(),
        first_mismatch,
    })
}
