mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trivzero::catalog;
use trivzero::error::Error;
use trivzero::ideal::{class_group, ClassGroupOptions, ClassGroupReport, IdealHNF, DEFAULT_IDEAL_BUDGET};
use trivzero::ideal_zeta::{
    classwise_cutoff, ideal_power_value, ideal_zeta_classwise, ideal_zeta_direct, remark_exact_check, IdealZetaOptions,
};
use trivzero::ring::{CoordinateRing, RingElement};
use trivzero::semigroup::semigroup_from_ring;
use trivzero::zeta::{digit_sum, zeta_neg, ZetaOptions};

fn report(r: &CoordinateRing) -> ClassGroupReport {
    class_group(r, &ClassGroupOptions::default()).unwrap()
}

fn rings() -> Vec<CoordinateRing> {
    vec![catalog::h4g3(), catalog::ex26(), catalog::ex36(), catalog::fqx(2).unwrap(), catalog::fqx(3).unwrap()]
}

fn padded(r: &CoordinateRing, v: &[RingElement], n: usize) -> Vec<RingElement> {
    (0..n).map(|i| v.get(i).cloned().unwrap_or_else(|| r.zero())).collect()
}

#[test]
fn power_value_examples() {
    let h = catalog::h4g3();
    let rep = report(&h);
    let e = rep.exponent;
    let unit = IdealHNF::unit(&h);
    assert_eq!(ideal_power_value(&h, &unit, e, &rep).unwrap(), h.one());
    let a = h.parse_element("y + x^3 + 1").unwrap();
    let principal = IdealHNF::principal(&h, &a).unwrap();
    assert_eq!(ideal_power_value(&h, &principal, 3 * e, &rep).unwrap(), h.pow(&h.monic(&a), 3 * e));
    let p = IdealHNF::from_generators(&h, &[h.parse_element("x").unwrap(), h.parse_element("y").unwrap()]).unwrap();
    let f = ideal_power_value(&h, &p, e, &rep).unwrap();
    assert_eq!(h.format(&f), "x");
    assert!(matches!(ideal_power_value(&h, &p, e + 1, &rep), Err(Error::ExponentNotMultiple { .. })));
    assert!(matches!(ideal_zeta_direct(&h, 3, 2, &rep, DEFAULT_IDEAL_BUDGET), Err(Error::ExponentNotMultiple { .. })));
}

#[test]
fn direct_examples() {
    let f2 = catalog::fqx(2).unwrap();
    let rep = report(&f2);
    for t in 1..=8 {
        let principal = zeta_neg(&f2, t, &ZetaOptions::default()).unwrap();
        let direct = ideal_zeta_direct(&f2, t, principal.d_max + 2, &rep, DEFAULT_IDEAL_BUDGET).unwrap();
        let n = direct.coefficients.len();
        assert_eq!(direct.coefficients, padded(&f2, &principal.coefficients, n));
    }
    let h = catalog::h4g3();
    let z = ideal_zeta_direct(&h, 2, 0, &report(&h), DEFAULT_IDEAL_BUDGET).unwrap();
    assert_eq!(z.coefficients, [h.one()]);
}

#[test]
fn classwise_equals_direct() {
    for r in rings() {
        let rep = report(&r);
        let g = semigroup_from_ring(&r).genus();
        let e = rep.exponent;
        for t in (1..=4).map(|i| i * e) {
            let classwise = ideal_zeta_classwise(&r, t, &rep, &IdealZetaOptions::default()).unwrap();
            assert!(classwise.warning.is_none());
            assert_eq!(classwise.coefficients[0], r.one());
            let limit = if r.q() == 2 { 2 * g + 4 } else { 2 * g + 2 };
            let direct = ideal_zeta_direct(&r, t, limit, &rep, DEFAULT_IDEAL_BUDGET).unwrap();
            let n = direct.coefficients.len().max(classwise.coefficients.len());
            assert_eq!(
                padded(&r, &classwise.coefficients, n),
                padded(&r, &direct.coefficients, n),
                "q = {}, h = {}, t = {t}",
                r.q(),
                rep.h
            );
            assert_eq!(classwise.d_max, classwise_cutoff(&r, t, &rep));
        }
    }
}

#[test]
fn h_one_reduces_to_principal_zeta() {
    let f3 = catalog::fqx(3).unwrap();
    let rep = report(&f3);
    for t in 1..=9 {
        let classwise = ideal_zeta_classwise(&f3, t, &rep, &IdealZetaOptions::default()).unwrap();
        let principal = zeta_neg(&f3, t, &ZetaOptions::default()).unwrap();
        let n = classwise.coefficients.len().max(principal.coefficients.len());
        assert_eq!(padded(&f3, &classwise.coefficients, n), padded(&f3, &principal.coefficients, n));
    }
}

#[test]
fn trivial_zeros_extend_to_all_ideals() {
    for r in rings() {
        let rep = report(&r);
        let step = (r.q() - 1) * rep.exponent;
        for t in (1..=4).map(|i| i * step) {
            let z = ideal_zeta_classwise(&r, t, &rep, &IdealZetaOptions::default()).unwrap();
            assert!(z.value_at_one(&r).is_zero(), "q = {}, t = {t}", r.q());
        }
    }
}

#[test]
fn order_at_least_two_on_h4g3() {
    let h = catalog::h4g3();
    let rep = report(&h);
    let mu = 1;
    let mut checked = 0;
    for s in 1..=40 {
        let t = rep.exponent * s;
        if digit_sum(t, 2).l_q <= mu {
            let z = ideal_zeta_classwise(&h, t, &rep, &IdealZetaOptions::default()).unwrap();
            assert!(z.ord_at_one(&h).unwrap() >= 2, "t = {t}");
            checked += 1;
        }
    }
    assert!(checked >= 4);
}

#[test]
fn remark_factorization() {
    let h = catalog::h4g3();
    let rep = report(&h);
    for t in [2, 4, 8, 16] {
        let z = ideal_zeta_classwise(&h, t, &rep, &IdealZetaOptions::default()).unwrap();
        let rem = remark_exact_check(&h, &z, &rep).unwrap();
        assert!(rem.factorization_holds, "t = {t}, mismatch at {:?}", rem.first_mismatch);
        assert!(rem.u_at_one_nonzero);
        assert_eq!(z.ord_at_one(&h).unwrap(), 2);
    }
    let ex26 = catalog::ex26();
    let rep = report(&ex26);
    assert_eq!(rep.h, 2);
    let z = ideal_zeta_classwise(&ex26, 2, &rep, &IdealZetaOptions::default()).unwrap();
    let rem = remark_exact_check(&ex26, &z, &rep).unwrap();
    assert!(rem.factorization_holds && rem.u_at_one_nonzero);
    assert_eq!(rem.u.len(), 3);
}

#[test]
fn per_class_terms_sum_to_the_total() {
    let h = catalog::h4g3();
    let rep = report(&h);
    let z = ideal_zeta_classwise(&h, 4, &rep, &IdealZetaOptions::default()).unwrap();
    let parts = z.per_class.as_ref().unwrap();
    assert_eq!(parts.len() as u64, rep.h);
    for (d, c) in z.coefficients.iter().enumerate() {
        let sum = parts.iter().fold(h.zero(), |acc, p| h.add(&acc, &p[d]));
        assert_eq!(&sum, c);
    }
}

#[test]
fn congruence_step_on_h4g3() {
    let h = catalog::h4g3();
    let rep = report(&h);
    let k = h.field();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for class in rep.classes.iter().skip(1) {
        let f = class.generator.as_poly().unwrap();
        for _ in 0..40 {
            let alpha = class
                .ideal
                .columns()
                .iter()
                .fold(h.zero(), |acc, c| h.add(&acc, &h.mul(c, &common::ring_elem(&h, 10, &mut rng))));
            let g0 = alpha.coeff(0).clone();
            let lhs = h.pow(&alpha, class.order).coeff(0).clone();
            let diff = lhs.sub(&g0.pow(class.order, k), k);
            assert!(f.divides(&diff, k).unwrap());
            assert!(f.divides(&g0, k).unwrap());
        }
    }
}
