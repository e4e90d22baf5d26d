//! Numerical semigroups of pole orders at `inf`, gap counting and the
//! `r`-gap-structure conditions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{gcd, CoordinateRing};

/// Default genus cap for [`enumerate_semigroups`].
pub const GENUS_CAP: u64 = 12;

/// A cofinite submonoid of the nonnegative integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NumericalSemigroup {
    /// membership of `0..conductor`; everything from the conductor on is in `S`
    members: Vec<bool>,
}

impl NumericalSemigroup {
    /// The semigroup generated by `gens`, which must have gcd 1.
    pub fn from_generators(gens: &[u64]) -> Result<Self> {
        if gens.contains(&0) || gens.is_empty() {
            return Err(Error::InvalidArgument("generators must be positive".into()));
        }
        if gens.iter().fold(0, |a, &g| gcd(a, g)) != 1 {
            return Err(Error::InvalidArgument(format!("generators {gens:?} do not have gcd 1")));
        }
        let mult = *gens.iter().min().unwrap() as usize;
        let mut members = vec![true];
        let mut run = 1;
        // stop once `mult` consecutive members appear
        while run < mult {
            let n = members.len();
            let inside = gens.iter().any(|&g| (g as usize) <= n && members[n - g as usize]);
            members.push(inside);
            run = if inside { run + 1 } else { 0 };
        }
        Ok(Self::from_members(members))
    }

    /// The semigroup whose gap set is `gaps`; fails when the complement is not
    /// closed under addition.
    pub fn from_gaps(gaps: &[u64]) -> Result<Self> {
        let conductor = gaps.iter().max().map_or(0, |&f| f as usize + 1);
        let mut members = vec![true; conductor];
        for &g in gaps {
            if g == 0 {
                return Err(Error::InvalidArgument("0 cannot be a gap".into()));
            }
            members[g as usize] = false;
        }
        for a in 1..conductor {
            for b in a..conductor - a {
                if members[a] && members[b] && !members[a + b] {
                    return Err(Error::InvalidArgument(format!("{a} and {b} are not gaps but {} is", a + b)));
                }
            }
        }
        Ok(Self::from_members(members))
    }

    fn from_members(mut members: Vec<bool>) -> Self {
        while members.len() > 1 && *members.last().unwrap() {
            members.pop();
        }
        if members == [true] {
            members.clear();
        }
        NumericalSemigroup { members }
    }

    /// The nonnegative integers.
    pub fn full() -> Self {
        NumericalSemigroup { members: Vec::new() }
    }

    pub fn contains(&self, n: u64) -> bool {
        (n as usize) >= self.members.len() || self.members[n as usize]
    }

    /// Smallest `c` with `c + N` inside `S`.
    pub fn conductor(&self) -> u64 {
        self.members.len() as u64
    }

    /// Largest gap, `None` for the full semigroup.
    pub fn frobenius(&self) -> Option<u64> {
        self.conductor().checked_sub(1)
    }

    pub fn gaps(&self) -> Vec<u64> {
        (1..self.conductor()).filter(|&n| !self.contains(n)).collect()
    }

    pub fn genus(&self) -> u64 {
        self.members.iter().filter(|&&b| !b).count() as u64
    }

    /// Smallest positive element.
    pub fn multiplicity(&self) -> u64 {
        (1..).find(|&n| self.contains(n)).unwrap()
    }

    /// The minimal generating set, ascending.
    pub fn minimal_generators(&self) -> Vec<u64> {
        let bound = self.conductor() + self.multiplicity() + 1;
        (1..bound)
            .filter(|&n| self.contains(n) && !(1..=n / 2).any(|a| self.contains(a) && self.contains(n - a)))
            .collect()
    }

    /// `l(n inf) = #(S intersect [0, n])`.
    pub fn l_infinity(&self, n: u64) -> u64 {
        let c = self.conductor();
        if n < c {
            self.members[..=n as usize].iter().filter(|&&b| b).count() as u64
        } else {
            n + 1 - self.genus()
        }
    }

    /// Whether `r` satisfies the three `r`-gap-structure conditions for `q`.
    pub fn has_r_gap_structure(&self, q: u64, r: u64) -> bool {
        r >= 1
            && (1..=r).all(|i| self.l_infinity(i * q) == i + 1)
            && self.l_infinity(self.genus() + r) == r + 1
            && r * q <= self.genus() + r
    }

    /// Children in the removal tree: remove a minimal generator beyond the
    /// Frobenius number.
    fn children(&self) -> Vec<NumericalSemigroup> {
        let f = self.conductor();
        self.minimal_generators()
            .into_iter()
            .filter(|&x| x >= f)
            .map(|x| {
                let mut members: Vec<bool> = (0..=x).map(|n| self.contains(n)).collect();
                members[x as usize] = false;
                NumericalSemigroup { members }
            })
            .collect()
    }
}

/// The semigroup of pole orders `<m, delta_1, ..., delta_{m-1}>` of a ring.
pub fn semigroup_from_ring(ring: &CoordinateRing) -> NumericalSemigroup {
    let mut gens = vec![ring.x_degree()];
    gens.extend(ring.basis_degrees().iter().copied().filter(|&d| d > 0));
    NumericalSemigroup::from_generators(&gens).expect("validated ring has coprime degrees")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RWitness {
    pub r: u64,
    /// `l(iq inf)` for `i = 1..=r`
    pub l_iq: Vec<u64>,
    /// `l((g + r) inf)`
    pub l_g_plus_r: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RGapReport {
    pub q: u64,
    pub genus: u64,
    pub valid_r: Vec<u64>,
    pub witnesses: Vec<RWitness>,
}

/// All `r >= 1` with an `r`-gap structure for `q`. Since `rq <= g + r`
/// forces `r <= g/(q-1)`, the search range is finite.
pub fn r_gap_values(s: &NumericalSemigroup, q: u64) -> Result<RGapReport> {
    if q < 2 {
        return Err(Error::InvalidArgument(format!("q = {q} must be at least 2")));
    }
    let g = s.genus();
    let mut valid_r = Vec::new();
    let mut witnesses = Vec::new();
    for r in 1..=g / (q - 1) {
        if s.has_r_gap_structure(q, r) {
            valid_r.push(r);
            witnesses.push(RWitness {
                r,
                l_iq: (1..=r).map(|i| s.l_infinity(i * q)).collect(),
                l_g_plus_r: s.l_infinity(g + r),
            });
        }
    }
    Ok(RGapReport { q, genus: g, valid_r, witnesses })
}

/// Every numerical semigroup of the given genus, ordered by gap set, using
/// the default [`GENUS_CAP`].
pub fn enumerate_semigroups(genus: u64) -> Result<Vec<NumericalSemigroup>> {
    enumerate_semigroups_capped(genus, GENUS_CAP)
}

pub fn enumerate_semigroups_capped(genus: u64, cap: u64) -> Result<Vec<NumericalSemigroup>> {
    if genus > cap {
        return Err(Error::GenusCap { genus, cap });
    }
    let mut layer = vec![NumericalSemigroup::full()];
    for _ in 0..genus {
        layer = layer.iter().flat_map(NumericalSemigroup::children).collect();
    }
    layer.sort_by_key(NumericalSemigroup::gaps);
    Ok(layer)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum DegreeQOutcome {
    /// `r` is not a valid `r`-gap value or `r < q - 1`.
    NotApplicable {
        reason: String,
    },
    Pass,
    /// `q` is missing from `S`, or `S` has elements in `[1, rq]` that are not
    /// multiples of `q`.
    Fail {
        q_in_s: bool,
        off_multiples: Vec<u64>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeQReport {
    pub q: u64,
    pub r: u64,
    /// `S intersect [1, rq]`
    pub elements: Vec<u64>,
    pub outcome: DegreeQOutcome,
}

/// Under an `r`-gap structure with `r >= q - 1`, `q` lies in `S` and every
/// element of `S` up to `rq` is a multiple of `q`.
pub fn degree_q_theorem_check(s: &NumericalSemigroup, q: u64, r: u64) -> DegreeQReport {
    let elements: Vec<u64> = (1..=r * q).filter(|&n| s.contains(n)).collect();
    let outcome = if q < 2 || r + 1 < q {
        DegreeQOutcome::NotApplicable { reason: format!("need q >= 2 and r >= q - 1, got q = {q}, r = {r}") }
    } else if !s.has_r_gap_structure(q, r) {
        DegreeQOutcome::NotApplicable { reason: format!("{r} is not an r-gap value for q = {q}") }
    } else {
        let off_multiples: Vec<u64> = elements.iter().copied().filter(|n| n % q != 0).collect();
        let q_in_s = s.contains(q);
        if q_in_s && off_multiples.is_empty() {
            DegreeQOutcome::Pass
        } else {
            DegreeQOutcome::Fail { q_in_s, off_multiples }
        }
    };
    DegreeQReport { q, r, elements, outcome }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_seven() {
        let s = NumericalSemigroup::from_generators(&[2, 7]).unwrap();
        assert_eq!(s.gaps(), [1, 3, 5]);
        assert_eq!(s.genus(), 3);
        assert_eq!(s.frobenius(), Some(5));
        assert_eq!(s.l_infinity(6), 4);
        assert_eq!(s.l_infinity(0), 1);
        assert_eq!(r_gap_values(&s, 2).unwrap().valid_r, [2, 3]);
        let rep = degree_q_theorem_check(&s, 2, 3);
        assert_eq!(rep.elements, [2, 4, 6]);
        assert_eq!(rep.outcome, DegreeQOutcome::Pass);
    }

    #[test]
    fn quintic_gap_set() {
        let s = NumericalSemigroup::from_gaps(&[1, 2, 4, 5, 7, 8]).unwrap();
        assert_eq!(s, NumericalSemigroup::from_generators(&[3, 10, 11]).unwrap());
        assert_eq!(s.minimal_generators(), [3, 10, 11]);
        assert_eq!((s.l_infinity(3), s.l_infinity(6), s.l_infinity(8)), (2, 3, 3));
        assert!(r_gap_values(&s, 3).unwrap().valid_r.contains(&2));
        assert_eq!(degree_q_theorem_check(&s, 3, 2).outcome, DegreeQOutcome::Pass);
    }

    #[test]
    fn full_semigroup() {
        let s = NumericalSemigroup::full();
        assert_eq!(s.genus(), 0);
        assert!(s.gaps().is_empty());
        assert!(r_gap_values(&s, 2).unwrap().valid_r.is_empty());
        assert!(!s.has_r_gap_structure(2, 1));
        assert_eq!(enumerate_semigroups(0).unwrap(), [s]);
    }

    #[test]
    fn not_closed_gap_set() {
        assert!(NumericalSemigroup::from_gaps(&[1, 3]).is_ok());
        assert!(NumericalSemigroup::from_gaps(&[1, 4]).is_err());
    }

    #[test]
    fn census_and_cap() {
        let counts: Vec<usize> = (0..=8).map(|g| enumerate_semigroups(g).unwrap().len()).collect();
        assert_eq!(counts, [1, 1, 2, 4, 7, 12, 23, 39, 67]);
        assert!(matches!(enumerate_semigroups(13), Err(Error::GenusCap { .. })));
    }
}
