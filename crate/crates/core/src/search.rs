//! Resumable exhaustive search over Artin-Schreier and hyperelliptic families
//! for rings passing the multiplicity-at-least-q hypothesis chain.

use std::collections::BTreeMap;
use std::fmt;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::ops::{Range, RangeInclusive};
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Fq};
use crate::ideal::{class_group, ClassGroupOptions, DEFAULT_IDEAL_BUDGET};
use crate::poly::Poly;
use crate::ring::{ring_validate, CoordinateRing, RingSpec};
use crate::semigroup::{r_gap_values, semigroup_from_ring, RGapReport};
use crate::theorems::{check_generalization, check_tesismc, FkRule, HypothesisReport, TheoremOptions};

const CHUNK: u64 = 32;
const HEADER: &str = "# trivzero-search v1 ";

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `y^q - a^(q-1) y = b`, checked against the multiplicity-q chain
    ArtinSchreier,
    /// `y^2 - a y = b` over `F_2`, checked against the `q = 2` chain
    HyperellipticQ2,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::ArtinSchreier => "artin-schreier",
            Family::HyperellipticQ2 => "hyperelliptic-q2",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "artin-schreier" => Ok(Family::ArtinSchreier),
            "hyperelliptic-q2" => Ok(Family::HyperellipticQ2),
            _ => Err(format!("unknown family {s:?}; expected artin-schreier or hyperelliptic-q2")),
        }
    }
}

/// Pipeline stage a candidate stopped at, in pipeline order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    RingInvalid,
    GapStructure,
    ClassBudget,
    ClassError,
    HypothesesFailed,
    Passed,
}

impl Stage {
    pub const ALL: [Stage; 6] = [
        Stage::RingInvalid,
        Stage::GapStructure,
        Stage::ClassBudget,
        Stage::ClassError,
        Stage::HypothesesFailed,
        Stage::Passed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::RingInvalid => "ring-invalid",
            Stage::GapStructure => "gap-structure",
            Stage::ClassBudget => "class-budget",
            Stage::ClassError => "class-error",
            Stage::HypothesesFailed => "hypotheses-failed",
            Stage::Passed => "passed",
        }
    }

    fn parse(s: &str) -> Option<Stage> {
        Stage::ALL.into_iter().find(|st| st.name() == s)
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpace {
    pub field: FieldSpec,
    pub family: Family,
    pub deg_a: RangeInclusive<u64>,
    pub deg_b: RangeInclusive<u64>,
    /// replaces the `deg_a` range with a single monic `a`
    pub a_fixed: Option<Poly>,
    /// restricts `b` to monic multiples of this polynomial
    pub b_multiple_of: Option<Poly>,
    /// least acceptable `r`-gap value; `None` uses the family default
    pub min_r: Option<u64>,
    pub ideal_budget: u128,
    /// exponent the hypothesis chain is evaluated at; `None` means `q - 1`
    pub s: Option<u64>,
    pub fk_rule: FkRule,
    /// candidate indices covered; `None` means all
    pub part: Option<Range<u64>>,
}

impl SearchSpace {
    pub fn new(field: FieldSpec, family: Family, deg_a: RangeInclusive<u64>, deg_b: RangeInclusive<u64>) -> Self {
        SearchSpace {
            field,
            family,
            deg_a,
            deg_b,
            a_fixed: None,
            b_multiple_of: None,
            min_r: None,
            ideal_budget: DEFAULT_IDEAL_BUDGET,
            s: None,
            fk_rule: FkRule::default(),
            part: None,
        }
    }

    fn enumeration(&self) -> Result<Enumeration> {
        let k = Fq::new(&self.field)?;
        let q = k.q() as u64;
        if self.family == Family::HyperellipticQ2 && q != 2 {
            return Err(Error::InvalidArgument(format!("family hyperelliptic-q2 needs q = 2, got q = {q}")));
        }
        let a = match &self.a_fixed {
            Some(a) if !a.is_monic() => return Err(Error::InvalidArgument("fixed a must be monic".into())),
            Some(a) => MonicSet::Fixed(a.clone()),
            None => MonicSet::Degrees { degrees: self.deg_a.clone(), factor: Poly::one() },
        };
        let factor = self.b_multiple_of.clone().unwrap_or_else(Poly::one);
        if factor.is_zero() {
            return Err(Error::InvalidArgument("b cannot be a multiple of 0".into()));
        }
        let factor = factor.monic(&k);
        let shift = factor.degree().unwrap() as u64;
        let lo = (*self.deg_b.start()).max(shift) - shift;
        let b = if *self.deg_b.end() < shift {
            MonicSet::Empty
        } else {
            MonicSet::Degrees { degrees: lo..=*self.deg_b.end() - shift, factor }
        };
        let (na, nb) = (a.len(q)?, b.len(q)?);
        let total = na.checked_mul(nb).ok_or_else(|| Error::InvalidArgument("search space too large".into()))?;
        Ok(Enumeration { k, q, a, b, nb, total })
    }

    /// Number of candidates in the whole space, ignoring `part`.
    pub fn total_size(&self) -> Result<u64> {
        Ok(self.enumeration()?.total)
    }

    /// Candidate indices this space covers.
    pub fn indices(&self) -> Result<Range<u64>> {
        let total = self.total_size()?;
        Ok(match &self.part {
            Some(r) => r.start.min(total)..r.end.min(total),
            None => 0..total,
        })
    }

    pub fn size(&self) -> Result<u64> {
        let r = self.indices()?;
        Ok(r.end - r.start)
    }

    fn fingerprint(&self) -> Result<String> {
        let k = Fq::new(&self.field)?;
        let idx = self.indices()?;
        let modulus = self.field.modulus.as_ref().map_or(String::from("-"), |m| format!("{m:?}"));
        let poly = |p: &Option<Poly>| p.as_ref().map_or(String::from("-"), |p| p.format(&k, "x"));
        Ok(format!(
            "p={} n={} modulus={modulus} family={} deg_a={}..{} deg_b={}..{} a={} b_multiple_of={} min_r={} budget={} s={} fk_rule={:?} part={}..{}",
            self.field.p,
            self.field.n,
            self.family.name(),
            self.deg_a.start(),
            self.deg_a.end(),
            self.deg_b.start(),
            self.deg_b.end(),
            poly(&self.a_fixed),
            poly(&self.b_multiple_of),
            self.min_r.map_or(String::from("-"), |r| r.to_string()),
            self.ideal_budget,
            self.s.map_or(String::from("-"), |s| s.to_string()),
            self.fk_rule,
            idx.start,
            idx.end,
        ))
    }
}

/// Splits the candidates into `parts` contiguous blocks whose sizes differ by
/// at most one.
pub fn search_partition(space: &SearchSpace, parts: u64) -> Result<Vec<SearchSpace>> {
    if parts == 0 {
        return Err(Error::InvalidArgument("parts must be at least 1".into()));
    }
    let r = space.indices()?;
    let n = r.end - r.start;
    Ok((0..parts)
        .map(|i| {
            let lo = r.start + (n as u128 * i as u128 / parts as u128) as u64;
            let hi = r.start + (n as u128 * (i + 1) as u128 / parts as u128) as u64;
            SearchSpace { part: Some(lo..hi), ..space.clone() }
        })
        .collect())
}

#[derive(Clone, Debug)]
enum MonicSet {
    Empty,
    Fixed(Poly),
    /// `factor * c` for monic `c` with degree in `degrees`
    Degrees {
        degrees: RangeInclusive<u64>,
        factor: Poly,
    },
}

impl MonicSet {
    fn len(&self, q: u64) -> Result<u64> {
        match self {
            MonicSet::Empty => Ok(0),
            MonicSet::Fixed(_) => Ok(1),
            MonicSet::Degrees { degrees, .. } => degrees.clone().try_fold(0u64, |acc, d| {
                q.checked_pow(d as u32)
                    .and_then(|c| acc.checked_add(c))
                    .ok_or_else(|| Error::InvalidArgument("search space too large".into()))
            }),
        }
    }

    /// The `i`-th element, ordered by degree and then lexicographically on
    /// coefficients from the top down.
    fn get(&self, mut i: u64, k: &Fq) -> Poly {
        match self {
            MonicSet::Empty => unreachable!("empty set indexed"),
            MonicSet::Fixed(a) => a.clone(),
            MonicSet::Degrees { degrees, factor } => {
                let q = k.q() as u64;
                for d in degrees.clone() {
                    let count = q.pow(d as u32);
                    if i < count {
                        let mut coeffs = Vec::with_capacity(d as usize + 1);
                        for _ in 0..d {
                            coeffs.push(k.element((i % q) as u32).unwrap());
                            i /= q;
                        }
                        coeffs.push(k.one());
                        return factor.mul(&Poly::new(coeffs), k);
                    }
                    i -= count;
                }
                unreachable!("index beyond the enumerated degrees")
            }
        }
    }
}

struct Enumeration {
    k: Fq,
    q: u64,
    a: MonicSet,
    b: MonicSet,
    nb: u64,
    total: u64,
}

impl Enumeration {
    fn candidate(&self, idx: u64) -> (Poly, Poly) {
        (self.a.get(idx / self.nb, &self.k), self.b.get(idx % self.nb, &self.k))
    }

    fn coeffs_string(&self, a: &Poly, b: &Poly) -> String {
        format!("a={};b={}", a.format(&self.k, "x"), b.format(&self.k, "x"))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchRecord {
    pub index: u64,
    pub coeffs: String,
    pub stage: Stage,
    pub verdict: String,
    pub gap: Option<RGapReport>,
    pub class_number: Option<u64>,
    pub hypothesis: Option<HypothesisReport>,
}

/// Builds the ring `y^m - a^(m-1) y - b` for the family.
pub fn candidate_spec(space: &SearchSpace, a: &Poly, b: &Poly) -> Result<RingSpec> {
    let k = Fq::new(&space.field)?;
    let m = match space.family {
        Family::ArtinSchreier => k.q() as usize,
        Family::HyperellipticQ2 => 2,
    };
    let mut coeffs = vec![Poly::zero(); m];
    coeffs[0] = b.neg(&k);
    coeffs[1] = a.pow(m as u64 - 1, &k).neg(&k);
    Ok(RingSpec::cab(space.field.clone(), coeffs))
}

/// Runs the pipeline on one candidate, independent of any checkpoint.
pub fn search_evaluate(space: &SearchSpace, index: u64) -> Result<SearchRecord> {
    let en = space.enumeration()?;
    if index >= en.total {
        return Err(Error::InvalidArgument(format!("candidate {index} outside a space of {}", en.total)));
    }
    Ok(evaluate(space, &en, index))
}

fn evaluate(space: &SearchSpace, en: &Enumeration, index: u64) -> SearchRecord {
    let (a, b) = en.candidate(index);
    let mut rec = SearchRecord {
        index,
        coeffs: en.coeffs_string(&a, &b),
        stage: Stage::RingInvalid,
        verdict: String::new(),
        gap: None,
        class_number: None,
        hypothesis: None,
    };
    let spec = match candidate_spec(space, &a, &b) {
        Ok(spec) => spec,
        Err(e) => {
            rec.verdict = e.to_string();
            return rec;
        }
    };
    let report = ring_validate(&spec);
    if let Some(v) = report.violations.first() {
        rec.verdict = v.check.to_string();
        return rec;
    }
    let ring = match CoordinateRing::new(&spec) {
        Ok(ring) => ring,
        Err(e) => {
            rec.verdict = e.to_string();
            return rec;
        }
    };

    rec.stage = Stage::GapStructure;
    let gaps = match r_gap_values(&semigroup_from_ring(&ring), en.q) {
        Ok(g) => g,
        Err(e) => {
            rec.verdict = e.to_string();
            return rec;
        }
    };
    let min_r = space.min_r.unwrap_or(match space.family {
        Family::ArtinSchreier => 1,
        Family::HyperellipticQ2 => 0,
    });
    let best = gaps.valid_r.last().copied().unwrap_or(0);
    let gap_ok = min_r == 0 || best >= min_r;
    rec.verdict = format!("valid_r={:?}", gaps.valid_r);
    rec.gap = Some(gaps);
    if !gap_ok {
        return rec;
    }

    rec.stage = Stage::ClassBudget;
    let copts = ClassGroupOptions { budget: space.ideal_budget, ..ClassGroupOptions::default() };
    let classes = match class_group(&ring, &copts) {
        Ok(c) => c,
        Err(e @ Error::BudgetExceeded { .. }) => {
            rec.verdict = e.to_string();
            return rec;
        }
        Err(e) => {
            rec.stage = Stage::ClassError;
            rec.verdict = e.to_string();
            return rec;
        }
    };
    rec.class_number = Some(classes.h);

    rec.stage = Stage::HypothesesFailed;
    let topts = TheoremOptions { fk_rule: space.fk_rule, hypotheses_only: true, ..TheoremOptions::default() };
    let s = space.s.unwrap_or(en.q - 1);
    let hyp = match space.family {
        Family::ArtinSchreier => check_tesismc(&ring, s, &classes, &topts),
        Family::HyperellipticQ2 => check_generalization(&ring, s, &classes, &topts),
    };
    match hyp {
        Ok(h) => {
            if h.applicable {
                rec.stage = Stage::Passed;
                rec.verdict = format!("h={} e={} mu={}", classes.h, classes.exponent, h.mu.unwrap_or(0));
            } else {
                let first = h.checks.iter().find(|c| !c.passed).map(|c| c.name.clone()).unwrap_or_default();
                rec.verdict = format!("h={} {first}", classes.h);
            }
            rec.hypothesis = Some(h);
        }
        Err(e) => rec.verdict = e.to_string(),
    }
    rec
}

/// Per-stage counts plus the passing candidates; merging is associative and
/// commutative.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchSummary {
    pub evaluated: u64,
    pub stages: BTreeMap<Stage, u64>,
    /// `(index, coeffs)` of every passing candidate, by index
    pub passed: Vec<(u64, String)>,
}

impl SearchSummary {
    fn add(&mut self, index: u64, coeffs: &str, stage: Stage) {
        self.evaluated += 1;
        *self.stages.entry(stage).or_default() += 1;
        if stage == Stage::Passed {
            self.passed.push((index, coeffs.to_string()));
        }
    }

    pub fn merge(mut self, other: &SearchSummary) -> SearchSummary {
        self.evaluated += other.evaluated;
        for (&st, &n) in &other.stages {
            *self.stages.entry(st).or_default() += n;
        }
        self.passed.extend(other.passed.iter().cloned());
        self.passed.sort();
        self
    }

    pub fn count(&self, stage: Stage) -> u64 {
        self.stages.get(&stage).copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// stop after this many new evaluations, leaving the checkpoint resumable
    pub stop_after: Option<u64>,
}

/// Evaluates every candidate not already in the checkpoint, appending one
/// line per candidate, and returns the summary over the whole space.
pub fn search_run(
    space: &SearchSpace,
    checkpoint: Option<&Path>,
    opts: &RunOptions,
    mut on_record: impl FnMut(&SearchRecord),
) -> Result<SearchSummary> {
    let en = space.enumeration()?;
    let range = space.indices()?;
    let fingerprint = space.fingerprint()?;
    let mut summary = SearchSummary::default();
    let mut next = range.start;
    let mut sink = match checkpoint {
        Some(path) => {
            if path.exists() && std::fs::metadata(path)?.len() > 0 {
                next = resume(path, &fingerprint, &en, range.clone(), &mut summary)?;
            } else {
                let mut f = File::create(path)?;
                writeln!(f, "{HEADER}{fingerprint}")?;
            }
            Some(OpenOptions::new().append(true).open(path)?)
        }
        None => None,
    };
    let stop = opts.stop_after.map_or(range.end, |n| next.saturating_add(n).min(range.end));
    while next < stop {
        let end = (next + CHUNK).min(stop);
        let records: Vec<SearchRecord> = (next..end).into_par_iter().map(|i| evaluate(space, &en, i)).collect();
        for rec in &records {
            if let Some(f) = sink.as_mut() {
                writeln!(f, "{}\t{}\t{}", rec.coeffs, rec.stage, sanitize(&rec.verdict))?;
            }
            summary.add(rec.index, &rec.coeffs, rec.stage);
            on_record(rec);
        }
        if let Some(f) = sink.as_mut() {
            f.flush()?;
        }
        next = end;
    }
    Ok(summary)
}

fn sanitize(s: &str) -> String {
    s.replace(['\t', '\n', '\r'], " ")
}

/// Replays a checkpoint into `summary` and returns the next index; any
/// mismatch with the space refuses the resume.
fn resume(
    path: &Path,
    fingerprint: &str,
    en: &Enumeration,
    range: Range<u64>,
    summary: &mut SearchSummary,
) -> Result<u64> {
    let bad = |line: usize, msg: String| Error::Checkpoint(format!("{}:{line}: {msg}", path.display()));
    let text = std::fs::read_to_string(path)?;
    if !text.ends_with('\n') {
        return Err(bad(text.lines().count(), "truncated final line".into()));
    }
    let mut lines = BufReader::new(text.as_bytes()).lines();
    let header = lines.next().transpose()?.unwrap_or_default();
    if header.strip_prefix(HEADER) != Some(fingerprint) {
        return Err(bad(1, "header does not match this search space".into()));
    }
    let mut next = range.start;
    for (n, line) in lines.enumerate() {
        let line = line?;
        let lineno = n + 2;
        let fields: Vec<&str> = line.split('\t').collect();
        let [coeffs, stage, _verdict] = fields[..] else {
            return Err(bad(lineno, format!("expected 3 tab-separated fields, found {}", fields.len())));
        };
        if next >= range.end {
            return Err(bad(lineno, "more records than candidates".into()));
        }
        let (a, b) = en.candidate(next);
        let expected = en.coeffs_string(&a, &b);
        if coeffs != expected {
            return Err(bad(lineno, format!("expected candidate {expected:?}, found {coeffs:?}")));
        }
        let stage = Stage::parse(stage).ok_or_else(|| bad(lineno, format!("unknown stage {stage:?}")))?;
        summary.add(next, coeffs, stage);
        next += 1;
    }
    Ok(next)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h4g3_space() -> SearchSpace {
        let k = Fq::prime(2).unwrap();
        let mut space = SearchSpace::new(FieldSpec::prime(2), Family::HyperellipticQ2, 0..=0, 7..=7);
        space.a_fixed = Some(Poly::parse("x^2 + x", &k, "x").unwrap());
        space.b_multiple_of = Some(Poly::parse("x^2 + x", &k, "x").unwrap());
        space
    }

    #[test]
    fn sizes_and_partition() {
        let space = h4g3_space();
        assert_eq!(space.size().unwrap(), 32);
        let mut wide = SearchSpace::new(FieldSpec::prime(3), Family::ArtinSchreier, 1..=2, 4..=4);
        assert_eq!(wide.size().unwrap(), (3 + 9) * 81);
        wide.deg_b = 0..=3;
        let sizes: Vec<u64> = search_partition(&wide, 4).unwrap().iter().map(|s| s.size().unwrap()).collect();
        assert_eq!(sizes.iter().sum::<u64>(), wide.size().unwrap());
        assert_eq!(search_partition(&space, 1).unwrap()[0].indices().unwrap(), 0..32);
    }

    #[test]
    fn squarefree_rule_finds_h4g3() {
        let mut space = h4g3_space();
        space.fk_rule = FkRule::Squarefree;
        let summary = search_run(&space, None, &RunOptions::default(), |_| {}).unwrap();
        assert_eq!(summary.evaluated, 32);
        assert!(summary.passed.iter().any(|(_, c)| c == "a=x^2 + x;b=x^7 + x^6 + x^5 + x"));
    }
}
