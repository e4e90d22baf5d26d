#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use trivzero::field::{FieldElement, Fq};
use trivzero::poly::Poly;
use trivzero::ring::{CoordinateRing, RingElement};

pub fn elem(k: &Fq, rng: &mut ChaCha8Rng) -> FieldElement {
    k.element(rng.gen_range(0..k.q())).unwrap()
}

pub fn poly(k: &Fq, max_deg: usize, rng: &mut ChaCha8Rng) -> Poly {
    let n = rng.gen_range(0..=max_deg + 1);
    Poly::new((0..n).map(|_| elem(k, rng)).collect())
}

pub fn nonzero_poly(k: &Fq, max_deg: usize, rng: &mut ChaCha8Rng) -> Poly {
    loop {
        let p = poly(k, max_deg, rng);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A random element with every monomial of degree below `bound`.
pub fn ring_elem(ring: &CoordinateRing, bound: u64, rng: &mut ChaCha8Rng) -> RingElement {
    let k = ring.field();
    ring.basis_w(bound).iter().fold(ring.zero(), |acc, b| ring.add(&acc, &ring.scale(b, elem(k, rng))))
}

pub fn nonzero_ring_elem(ring: &CoordinateRing, bound: u64, rng: &mut ChaCha8Rng) -> RingElement {
    loop {
        let a = ring_elem(ring, bound, rng);
        if !a.is_zero() {
            return a;
        }
    }
}

/// Irreducibility by trial division over every monic polynomial of at most
/// half the degree.
pub fn irreducible_by_trial(f: &Poly, k: &Fq) -> bool {
    let Some(d) = f.degree() else { return false };
    if d == 0 {
        return false;
    }
    (1..=d / 2).all(|e| Poly::monic_of_degree(e, k).all(|g| !g.divides(f, k).unwrap()))
}
