use proptest::prelude::*;
use trivzero::catalog;
use trivzero::semigroup::{
    degree_q_theorem_check, enumerate_semigroups, r_gap_values, semigroup_from_ring, DegreeQOutcome, NumericalSemigroup,
};

/// All `g`-subsets of `[1, 2g - 1]` whose complement is additively closed.
fn brute_force_gap_sets(g: u64) -> Vec<Vec<u64>> {
    if g == 0 {
        return vec![vec![]];
    }
    let n = 2 * g - 1;
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as u64 != g {
            continue;
        }
        let gap = |x: u64| x >= 1 && x <= n && mask & (1 << (x - 1)) != 0;
        let closed = (1..=n).all(|a| (a..=n - a).all(|b| gap(a) || gap(b) || !gap(a + b)));
        if closed {
            out.push((1..=n).filter(|&x| gap(x)).collect());
        }
    }
    out.sort();
    out
}

#[test]
fn enumeration_matches_brute_force() {
    for g in 0..=8 {
        let fast: Vec<Vec<u64>> = enumerate_semigroups(g).unwrap().iter().map(NumericalSemigroup::gaps).collect();
        assert_eq!(fast, brute_force_gap_sets(g), "genus {g}");
    }
}

#[test]
fn enumerated_semigroups_are_well_formed() {
    for g in 0..=8 {
        for s in enumerate_semigroups(g).unwrap() {
            assert_eq!(s.genus(), g);
            assert_eq!(s.gaps().len() as u64, g);
            assert!(s.frobenius().map_or(g == 0, |f| f < 2 * g));
            assert_eq!(NumericalSemigroup::from_generators(&s.minimal_generators()).unwrap(), s);
        }
    }
}

#[test]
fn rings_give_their_semigroups() {
    let s26 = semigroup_from_ring(&catalog::ex26());
    assert_eq!((s26.gaps(), s26.genus()), (vec![1, 3, 5], 3));
    let s36 = semigroup_from_ring(&catalog::ex36());
    assert_eq!((s36.gaps(), s36.genus()), (vec![1, 3], 2));
    let full = semigroup_from_ring(&catalog::fqx(2).unwrap());
    assert_eq!(full.genus(), 0);
    assert!(r_gap_values(&full, 2).unwrap().valid_r.is_empty());
}

#[test]
fn genus_five_cubic_scan() {
    let all = enumerate_semigroups(5).unwrap();
    let mut two_gap = Vec::new();
    for s in &all {
        let rep = r_gap_values(s, 3).unwrap();
        assert!(!rep.valid_r.contains(&1), "{:?} has a 1-gap structure", s.gaps());
        if rep.valid_r.contains(&2) {
            two_gap.push(s.gaps());
        }
    }
    assert_eq!(two_gap, [vec![1, 2, 4, 5, 7]]);
}

#[test]
fn quintic_data() {
    let s = NumericalSemigroup::from_gaps(&[1, 2, 4, 5, 7, 8]).unwrap();
    assert_eq!((s.l_infinity(3), s.l_infinity(6), s.l_infinity(8)), (2, 3, 3));
    assert!(r_gap_values(&s, 3).unwrap().valid_r.contains(&2));
    let rep = degree_q_theorem_check(&s, 3, 2);
    assert_eq!(rep.elements, [3, 6]);
    assert_eq!(rep.outcome, DegreeQOutcome::Pass);
}

#[test]
fn degree_q_theorem_exhaustive() {
    let mut checked = 0;
    for g in 0..=8 {
        for s in enumerate_semigroups(g).unwrap() {
            for q in 2..=4 {
                for r in r_gap_values(&s, q).unwrap().valid_r {
                    if r + 1 >= q {
                        let rep = degree_q_theorem_check(&s, q, r);
                        assert_eq!(rep.outcome, DegreeQOutcome::Pass, "gaps {:?}, q = {q}, r = {r}", s.gaps());
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn degree_q_precondition_is_not_applicable() {
    let s = NumericalSemigroup::from_generators(&[2, 7]).unwrap();
    assert!(matches!(degree_q_theorem_check(&s, 2, 1).outcome, DegreeQOutcome::NotApplicable { .. }));
    assert!(matches!(degree_q_theorem_check(&s, 4, 1).outcome, DegreeQOutcome::NotApplicable { .. }));
}

#[test]
fn witnesses_satisfy_the_definition() {
    for g in 1..=7 {
        for s in enumerate_semigroups(g).unwrap() {
            for q in 2..=4 {
                let rep = r_gap_values(&s, q).unwrap();
                for w in &rep.witnesses {
                    assert!(w.l_iq.iter().enumerate().all(|(i, &l)| l == i as u64 + 2));
                    assert_eq!(w.l_g_plus_r, w.r + 1);
                    assert!(w.r * q <= g + w.r);
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn l_infinity_steps_detect_gaps(gens in prop::collection::vec(2u64..20, 1..4)) {
        let mut gens = gens;
        gens.push(gens[0] + 1);
        let s = NumericalSemigroup::from_generators(&gens).unwrap();
        prop_assert_eq!(s.l_infinity(0), 1);
        for n in 1..60 {
            let step = s.l_infinity(n) - s.l_infinity(n - 1);
            prop_assert!(step <= 1);
            prop_assert_eq!(step == 0, !s.contains(n));
        }
        for a in 0..40 {
            for b in 0..40 {
                if s.contains(a) && s.contains(b) {
                    prop_assert!(s.contains(a + b));
                }
            }
        }
    }

    #[test]
    fn hyperelliptic_rgap_bound(half in 1u64..10) {
        let n = 2 * half + 1;
        let s = NumericalSemigroup::from_generators(&[2, n]).unwrap();
        let g = s.genus();
        for r in r_gap_values(&s, 2).unwrap().valid_r {
            prop_assert!(r + 1 == g || r == g);
        }
    }
}
