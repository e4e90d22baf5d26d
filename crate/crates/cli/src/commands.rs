//! Argument definitions and subcommand implementations.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use trivzero::catalog;
use trivzero::error::Error;
use trivzero::factor;
use trivzero::field::{FieldSpec, Fq};
use trivzero::ideal::{class_group, l_polynomial, ClassGroupOptions, ClassGroupReport, DEFAULT_IDEAL_BUDGET};
use trivzero::ideal_zeta::{classwise_cutoff, ideal_zeta_classwise, ideal_zeta_direct, IdealZetaOptions};
use trivzero::poly::Poly;
use trivzero::ring::{CoordinateRing, RingElement};
use trivzero::ringfile::{load_ring, parse_ring};
use trivzero::search::{
    search_evaluate, search_partition, search_run, Family, RunOptions, SearchRecord, SearchSpace, Stage,
};
use trivzero::semigroup::{
    degree_q_theorem_check, enumerate_semigroups_capped, r_gap_values, semigroup_from_ring, NumericalSemigroup,
    GENUS_CAP,
};
use trivzero::theorems::{self, FkRule, HypothesisReport, Prediction, Theorem, TheoremOptions};
use trivzero::zeta::{affine_power_sum, digit_sum, power_sum_s, zeta_neg, PowerStrategy, ZetaOptions, DEFAULT_BUDGET};

pub enum CliError {
    /// bad arguments: exit 2
    Usage(String),
    /// refused or failed computation: exit 1
    Compute(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Compute(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

pub struct Output {
    pub text: String,
    pub json: Value,
}

#[derive(Parser)]
#[command(name = "trivzero", version, about = "Trivial zeros of characteristic-p zeta functions of affine curves")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

impl Cli {
    pub fn json(&self) -> bool {
        match &self.command {
            Command::Zeta(a) => a.json,
            Command::Gaps(a) => a.json,
            Command::Classgroup(a) => a.json,
            Command::Lpoly(a) => a.json,
            Command::Check(a) => a.json,
            Command::Powsum(a) => a.json,
            Command::Search(a) => a.json,
            Command::Semigroups(a) => a.json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// zeta(-s, X) of A, or of all ideals with --all-ideals
    Zeta(ZetaArgs),
    /// Weierstrass gaps and r-gap structures
    Gaps(GapsArgs),
    /// ideal class group with least-degree representatives
    Classgroup(ClassArgs),
    /// L-polynomial from ideal counts
    Lpoly(LpolyArgs),
    /// hypothesis report for one theorem
    Check(CheckArgs),
    /// sum of (f + w)^k over a space W of low-degree elements
    Powsum(PowsumArgs),
    /// exhaustive curve search with checkpoints
    Search(SearchArgs),
    /// numerical semigroups of a given genus
    Semigroups(SemigroupArgs),
}

#[derive(Copy, Clone, ValueEnum)]
enum StrategyArg {
    Direct,
    Frobenius,
}

impl From<StrategyArg> for PowerStrategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Direct => PowerStrategy::Direct,
            StrategyArg::Frobenius => PowerStrategy::FrobeniusDigits,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum FkRuleArg {
    Irreducible,
    Squarefree,
}

impl From<FkRuleArg> for FkRule {
    fn from(r: FkRuleArg) -> Self {
        match r {
            FkRuleArg::Irreducible => FkRule::Irreducible,
            FkRuleArg::Squarefree => FkRule::Squarefree,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum TheoremArg {
    Hiper,
    Dinesh,
    Generalization,
    Tesismc,
    /// `valid_r` of `<2, N>` lies in {g-1, g} for odd N
    Proposition,
}

#[derive(Args)]
struct ZetaArgs {
    /// ring file, or the name of a shipped ring
    #[arg(long)]
    ring: String,
    #[arg(short = 's')]
    s: u64,
    /// sum over all nonzero ideals instead of principal ones
    #[arg(long)]
    all_ideals: bool,
    /// enumerate ideals directly instead of class by class
    #[arg(long, requires = "all_ideals")]
    direct: bool,
    /// last coefficient computed by --direct
    #[arg(long, requires = "direct")]
    dmax: Option<u64>,
    #[arg(long, value_enum, default_value = "direct")]
    strategy: StrategyArg,
    /// cap on summands per coefficient
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["ring", "generators", "gaps"])))]
struct GapsArgs {
    #[arg(long)]
    ring: Option<String>,
    /// semigroup generators, comma separated
    #[arg(long, value_delimiter = ',')]
    generators: Option<Vec<u64>>,
    /// gap set, comma separated
    #[arg(long, value_delimiter = ',')]
    gaps: Option<Vec<u64>>,
    /// field sizes to test; defaults to the ring's q, or 2,3,4
    #[arg(long, value_delimiter = ',')]
    q: Vec<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ClassArgs {
    #[arg(long)]
    ring: String,
    /// cap on ideals enumerated per degree
    #[arg(long, default_value_t = DEFAULT_IDEAL_BUDGET)]
    budget: u128,
    /// highest degree searched for representatives
    #[arg(long)]
    max_degree: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct LpolyArgs {
    #[arg(long)]
    ring: String,
    #[arg(long, default_value_t = DEFAULT_IDEAL_BUDGET)]
    budget: u128,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    ring: Option<String>,
    #[arg(short = 's')]
    s: Option<u64>,
    #[arg(long, value_enum)]
    theorem: TheoremArg,
    /// use this mu instead of the largest admissible one
    #[arg(long)]
    mu: Option<u64>,
    /// property required of the class generators f_k
    #[arg(long, value_enum, default_value = "irreducible")]
    fk_rule: FkRuleArg,
    /// skip the zeta computations
    #[arg(long)]
    hypotheses_only: bool,
    /// semigroup gap set for a ring-free dinesh check
    #[arg(long, value_delimiter = ',', conflicts_with = "ring")]
    gaps: Option<Vec<u64>>,
    /// field size for a ring-free dinesh check
    #[arg(long, requires = "gaps")]
    q: Option<u64>,
    /// range of odd N for the proposition, LO..HI
    #[arg(long, default_value = "3..21")]
    n_range: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct PowsumArgs {
    #[arg(long)]
    ring: String,
    /// exponent
    #[arg(short = 'k')]
    k: u64,
    /// W is the space of elements of degree < d
    #[arg(short = 'd')]
    d: u64,
    /// shift element; defaults to the monic monomial of least degree >= d
    #[arg(long)]
    f: Option<String>,
    /// sum a^k over monic a of degree d instead
    #[arg(long, conflicts_with = "f")]
    monic: bool,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    q: u64,
    /// artin-schreier or hyperelliptic-q2
    #[arg(long)]
    family: Family,
    /// degree range of a, LO..HI or a single degree
    #[arg(long, required_unless_present = "a")]
    deg_a: Option<String>,
    /// degree range of b, LO..HI or a single degree
    #[arg(long)]
    deg_b: String,
    /// fix a to this monic polynomial
    #[arg(long, conflicts_with = "deg_a")]
    a: Option<String>,
    /// only b divisible by this polynomial
    #[arg(long)]
    b_multiple_of: Option<String>,
    /// least acceptable r-gap value; 0 disables the gap filter
    #[arg(long)]
    min_r: Option<u64>,
    /// cap on ideals enumerated per degree during the class-group stage
    #[arg(long, default_value_t = DEFAULT_IDEAL_BUDGET)]
    h_budget: u128,
    /// exponent the hypotheses are evaluated at; defaults to q - 1
    #[arg(short = 's')]
    s: Option<u64>,
    #[arg(long, value_enum, default_value = "irreducible")]
    fk_rule: FkRuleArg,
    #[arg(long, default_value_t = 1)]
    parts: u64,
    /// zero-based part index
    #[arg(long, default_value_t = 0)]
    part: u64,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// evaluate at most this many new candidates
    #[arg(long)]
    limit: Option<u64>,
    /// list every record, not only passing ones
    #[arg(long)]
    records: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SemigroupArgs {
    #[arg(long)]
    genus: u64,
    /// report r-gap values for this q
    #[arg(long)]
    q: Option<u64>,
    /// only semigroups with some r-gap structure for q
    #[arg(long, requires = "q")]
    r_gap: bool,
    /// raise the genus cap
    #[arg(long, default_value_t = GENUS_CAP)]
    cap: u64,
    #[arg(long)]
    json: bool,
}

pub fn run(cli: Cli) -> CliResult<Output> {
    match cli.command {
        Command::Zeta(a) => zeta(a),
        Command::Gaps(a) => gaps(a),
        Command::Classgroup(a) => classgroup(a),
        Command::Lpoly(a) => lpoly(a),
        Command::Check(a) => check(a),
        Command::Powsum(a) => powsum(a),
        Command::Search(a) => search(a),
        Command::Semigroups(a) => semigroups(a),
    }
}

/// Loads a ring file; a bare name of a shipped ring that is not on disk
/// resolves to the embedded copy.
fn open_ring(name: &str) -> CliResult<CoordinateRing> {
    let path = Path::new(name);
    if !path.exists() {
        let base = path.file_name().and_then(|f| f.to_str()).unwrap_or(name);
        if let Some((_, text)) = catalog::ALL.iter().find(|(n, _)| *n == base || n.trim_end_matches(".ring") == base) {
            return Ok(parse_ring(text)?);
        }
        return Err(CliError::Usage(format!("ring file {name} not found")));
    }
    Ok(load_ring(path)?)
}

fn field_of_size(q: u64) -> CliResult<FieldSpec> {
    let p = (2..=q)
        .find(|d| q.is_multiple_of(*d))
        .ok_or_else(|| CliError::Usage(format!("q = {q} is not a prime power")))?;
    let n = q.ilog(p);
    if p.checked_pow(n) != Some(q) {
        return Err(CliError::Usage(format!("q = {q} is not a prime power")));
    }
    FieldSpec::extension(p as u32, n).map_err(|e| CliError::Usage(e.to_string()))
}

fn parse_range(text: &str, what: &str) -> CliResult<std::ops::RangeInclusive<u64>> {
    let bad = || CliError::Usage(format!("{what}: expected LO..HI or N, got {text:?}"));
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (lo.trim(), hi.trim().trim_start_matches('=')),
        None => (text.trim(), text.trim()),
    };
    let lo: u64 = lo.parse().map_err(|_| bad())?;
    let hi: u64 = hi.parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

fn set(v: &[u64]) -> String {
    let items: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn strings(ring: &CoordinateRing, v: &[RingElement]) -> Vec<String> {
    v.iter().map(|c| ring.format(c)).collect()
}

fn zeta(a: ZetaArgs) -> CliResult<Output> {
    let ring = open_ring(&a.ring)?;
    let zopts = ZetaOptions { budget: a.budget, strategy: a.strategy.into(), parallel: true };
    let mut text = String::new();
    if !a.all_ideals {
        let z = zeta_neg(&ring, a.s, &zopts)?;
        let value = z.value_at_one(&ring);
        let ord = z.ord_at_one(&ring)?;
        let poly = z.format(&ring);
        writeln!(text, "zeta(-{}, X) = {poly}", a.s).unwrap();
        writeln!(text, "certified degree bound: {}", z.d_max).unwrap();
        writeln!(text, "zeta(-{}) = {}", a.s, ring.format(&value)).unwrap();
        writeln!(text, "ord at X = 1: {ord}").unwrap();
        let json = json!({
            "command": "zeta",
            "kind": "principal",
            "s": a.s,
            "d_max": z.d_max,
            "coefficients": strings(&ring, &z.coefficients),
            "polynomial": poly,
            "value_at_one": ring.format(&value),
            "ord": ord,
        });
        return Ok(Output { text, json });
    }
    let classes = class_group(&ring, &ClassGroupOptions::default())?;
    let iopts = IdealZetaOptions { budget: a.budget, strategy: a.strategy.into(), ..IdealZetaOptions::default() };
    let (z, method) = if a.direct {
        let d_max = a.dmax.unwrap_or_else(|| classwise_cutoff(&ring, a.s, &classes));
        (ideal_zeta_direct(&ring, a.s, d_max, &classes, iopts.ideal_budget)?, "direct")
    } else {
        (ideal_zeta_classwise(&ring, a.s, &classes, &iopts)?, "classwise")
    };
    let value = z.value_at_one(&ring);
    let ord = z.ord_at_one(&ring)?;
    let poly = z.format(&ring);
    writeln!(text, "all-ideal zeta(-{}, X) = {poly}", a.s).unwrap();
    writeln!(text, "method: {method}, degree bound: {}", z.d_max).unwrap();
    writeln!(text, "h = {}, exponent = {}", classes.h, classes.exponent).unwrap();
    writeln!(text, "value at X = 1: {}", ring.format(&value)).unwrap();
    writeln!(text, "ord at X = 1: {ord}").unwrap();
    if let Some(w) = &z.warning {
        writeln!(text, "warning: {w}").unwrap();
    }
    let json = json!({
        "command": "zeta",
        "kind": "all-ideals",
        "s": a.s,
        "method": method,
        "class_number": classes.h,
        "exponent": classes.exponent,
        "d_max": z.d_max,
        "coefficients": strings(&ring, &z.coefficients),
        "polynomial": poly,
        "value_at_one": ring.format(&value),
        "ord": ord,
        "warning": z.warning,
    });
    Ok(Output { text, json })
}

fn gaps(a: GapsArgs) -> CliResult<Output> {
    let (s, default_q) = if let Some(name) = &a.ring {
        let ring = open_ring(name)?;
        (semigroup_from_ring(&ring), vec![ring.q()])
    } else if let Some(gens) = &a.generators {
        (NumericalSemigroup::from_generators(gens).map_err(|e| CliError::Usage(e.to_string()))?, vec![2, 3, 4])
    } else {
        let gaps = a.gaps.as_deref().unwrap_or_default();
        (NumericalSemigroup::from_gaps(gaps).map_err(|e| CliError::Usage(e.to_string()))?, vec![2, 3, 4])
    };
    let qs = if a.q.is_empty() { default_q } else { a.q.clone() };
    let mut text = String::new();
    let gens = s.minimal_generators();
    writeln!(text, "generators: {}", set(&gens)).unwrap();
    writeln!(text, "gaps: {}", set(&s.gaps())).unwrap();
    writeln!(text, "genus: {}", s.genus()).unwrap();
    match s.frobenius() {
        Some(f) => writeln!(text, "frobenius number: {f}").unwrap(),
        None => writeln!(text, "frobenius number: none").unwrap(),
    }
    let mut per_q = Vec::new();
    for &q in &qs {
        let rep = r_gap_values(&s, q).map_err(|e| CliError::Usage(e.to_string()))?;
        writeln!(text, "valid_r(q = {q}): {}", set(&rep.valid_r)).unwrap();
        let degree_q = rep.valid_r.last().map(|&r| degree_q_theorem_check(&s, q, r));
        if let Some(d) = &degree_q {
            writeln!(text, "  degree-q check at r = {}: {:?}", d.r, d.outcome).unwrap();
        }
        per_q.push(json!({ "q": q, "valid_r": rep.valid_r, "witnesses": rep.witnesses, "degree_q": degree_q }));
    }
    let json = json!({
        "command": "gaps",
        "generators": gens,
        "gaps": s.gaps(),
        "genus": s.genus(),
        "frobenius": s.frobenius(),
        "conductor": s.conductor(),
        "multiplicity": s.multiplicity(),
        "r_gap": per_q,
    });
    Ok(Output { text, json })
}

fn class_json(ring: &CoordinateRing, report: &ClassGroupReport) -> (String, Value) {
    let k = ring.field();
    let mut text = String::new();
    writeln!(text, "h = {}, exponent = {}, genus = {}", report.h, report.exponent, report.genus).unwrap();
    writeln!(text, "P(t) = {}", report.lpoly.format()).unwrap();
    let mut classes = Vec::new();
    for (i, c) in report.classes.iter().enumerate() {
        let f = ring.format(&c.generator);
        let poly = c.generator.as_poly();
        let irreducible = poly.map(|p| factor::is_irreducible(p, k));
        let factors = poly.and_then(|p| factor::factor(p, k).ok()).map(|fs| {
            fs.iter()
                .map(|(p, e)| if *e == 1 { p.format(k, "x") } else { format!("({})^{e}", p.format(k, "x")) })
                .collect::<Vec<_>>()
        });
        writeln!(
            text,
            "class {i}: {}  d = {}, e = {}, f = {f}{}",
            c.ideal.format(ring),
            c.degree,
            c.order,
            match irreducible {
                _ if i == 0 => "",
                Some(true) => "  (irreducible)",
                Some(false) => "  (reducible)",
                None => "  (not in F_q[x])",
            }
        )
        .unwrap();
        classes.push(json!({
            "index": i,
            "ideal": c.ideal.format(ring),
            "degree": c.degree,
            "order": c.order,
            "generator": f,
            "generator_in_fq_x": poly.is_some(),
            "generator_irreducible": irreducible,
            "generator_factors": factors,
        }));
    }
    let json = json!({
        "h": report.h,
        "exponent": report.exponent,
        "genus": report.genus,
        "lpoly": report.lpoly,
        "classes": classes,
    });
    (text, json)
}

fn classgroup(a: ClassArgs) -> CliResult<Output> {
    let ring = open_ring(&a.ring)?;
    let report = class_group(&ring, &ClassGroupOptions { budget: a.budget, max_degree: a.max_degree })?;
    let (text, mut json) = class_json(&ring, &report);
    json["command"] = json!("classgroup");
    Ok(Output { text, json })
}

fn lpoly(a: LpolyArgs) -> CliResult<Output> {
    let ring = open_ring(&a.ring)?;
    let lp = l_polynomial(&ring, a.budget)?;
    let mut text = String::new();
    writeln!(text, "P(t) = {}", lp.format()).unwrap();
    writeln!(text, "P(1) = {}", lp.h).unwrap();
    writeln!(text, "genus: {}", lp.genus).unwrap();
    writeln!(text, "functional equation: {}", if lp.functional_equation { "holds" } else { "fails" }).unwrap();
    writeln!(text, "ideal counts: {:?}", lp.counts).unwrap();
    let mut json = serde_json::to_value(&lp).expect("serializable");
    json["command"] = json!("lpoly");
    json["polynomial"] = json!(lp.format());
    Ok(Output { text, json })
}

fn report_text(rep: &HypothesisReport) -> String {
    let mut text = String::new();
    writeln!(text, "theorem: {} (s = {})", rep.theorem.name(), rep.s).unwrap();
    for c in &rep.checks {
        writeln!(text, "  [{}] {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.witness).unwrap();
    }
    writeln!(text, "applicable: {}", if rep.applicable { "yes" } else { "no" }).unwrap();
    if let Some(p) = rep.predicted {
        match p {
            Prediction::Exactly(n) => writeln!(text, "predicted order: exactly {n}").unwrap(),
            Prediction::AtLeast(n) => writeln!(text, "predicted order: at least {n}").unwrap(),
        }
    }
    if let Some(c) = rep.computed {
        writeln!(text, "computed order: {c}").unwrap();
    }
    if let Some(mu) = rep.mu {
        writeln!(text, "mu: {mu}").unwrap();
    }
    if let Some(id) = rep.identity_holds {
        writeln!(text, "zeta_A(-s, X) = zeta_Fq[x](-s, X^q): {}", if id { "holds" } else { "fails" }).unwrap();
    }
    if let Some(r) = &rep.remark {
        writeln!(
            text,
            "zeta(-es, X) = zeta_Fq[x](-es, X^q) * U: {}; U(1) = {}",
            if r.factorization_holds { "holds" } else { "fails" },
            r.u_at_one
        )
        .unwrap();
    }
    for n in &rep.notes {
        writeln!(text, "note: {n}").unwrap();
    }
    text
}

fn check(a: CheckArgs) -> CliResult<Output> {
    if let TheoremArg::Proposition = a.theorem {
        let range = parse_range(&a.n_range, "--n-range")?;
        let rows = theorems::check_hyperelliptic_rgap_proposition(range)?;
        let mut text = String::new();
        for r in &rows {
            writeln!(
                text,
                "N = {}: g = {}, valid_r = {} {}",
                r.n,
                r.genus,
                set(&r.valid_r),
                if r.ok { "ok" } else { "VIOLATION" }
            )
            .unwrap();
        }
        let ok = rows.iter().all(|r| r.ok);
        writeln!(text, "proposition: {}", if ok { "holds" } else { "fails" }).unwrap();
        return Ok(Output {
            text,
            json: json!({ "command": "check", "theorem": "proposition", "rows": rows, "holds": ok }),
        });
    }
    let s = a.s.ok_or_else(|| CliError::Usage("-s is required for this theorem".into()))?;
    let report = if let Some(gaps) = &a.gaps {
        if !matches!(a.theorem, TheoremArg::Dinesh) {
            return Err(CliError::Usage("--gaps only applies to --theorem dinesh".into()));
        }
        let q = a.q.ok_or_else(|| CliError::Usage("--q is required with --gaps".into()))?;
        let sg = NumericalSemigroup::from_gaps(gaps).map_err(|e| CliError::Usage(e.to_string()))?;
        theorems::dinesh_hypotheses(&sg, q, s).map_err(|e| CliError::Usage(e.to_string()))?
    } else {
        let name = a.ring.as_deref().ok_or_else(|| CliError::Usage("--ring is required".into()))?;
        let ring = open_ring(name)?;
        let opts = TheoremOptions {
            mu_override: a.mu,
            fk_rule: a.fk_rule.into(),
            hypotheses_only: a.hypotheses_only,
            ..TheoremOptions::default()
        };
        let theorem = match a.theorem {
            TheoremArg::Hiper => Theorem::Hiper,
            TheoremArg::Dinesh => Theorem::Dinesh,
            TheoremArg::Generalization => Theorem::Generalization,
            TheoremArg::Tesismc => Theorem::Tesismc,
            TheoremArg::Proposition => unreachable!(),
        };
        theorems::check(&ring, theorem, s, &opts)?
    };
    let text = report_text(&report);
    let mut json = serde_json::to_value(&report).expect("serializable");
    json["command"] = json!("check");
    Ok(Output { text, json })
}

fn powsum(a: PowsumArgs) -> CliResult<Output> {
    let ring = open_ring(&a.ring)?;
    let q = ring.q();
    let profile = digit_sum(a.k, q);
    let mut text = String::new();
    if a.monic {
        let opts = ZetaOptions { budget: a.budget, ..ZetaOptions::default() };
        let v = power_sum_s(&ring, a.d, a.k, &opts)?;
        writeln!(text, "S_{}({}) = {}", a.d, a.k, ring.format(&v)).unwrap();
        let json = json!({ "command": "powsum", "kind": "monic", "k": a.k, "d": a.d, "value": ring.format(&v) });
        return Ok(Output { text, json });
    }
    let w = ring.basis_w(a.d);
    let f = match &a.f {
        Some(lit) => ring.parse_element(lit).map_err(|e| CliError::Usage(e.to_string()))?,
        None => {
            let deg = (a.d..).find(|&e| ring.monomial_of_degree(e).is_some()).unwrap();
            ring.monomial(ring.monomial_of_degree(deg).unwrap())
        }
    };
    let v = affine_power_sum(&ring, &f, &w, a.k, a.budget)?;
    let predicted = profile.exceeded_by(w.len() as u64);
    writeln!(text, "sum over w in W_{} of ({} + w)^{} = {}", a.d, ring.format(&f), a.k, ring.format(&v)).unwrap();
    writeln!(text, "dim W = {}, l_q(k) = {}", w.len(), profile.l_q).unwrap();
    writeln!(text, "vanishing forced by (q-1) dim W > l_q(k): {}", if predicted { "yes" } else { "no" }).unwrap();
    let json = json!({
        "command": "powsum",
        "kind": "affine",
        "k": a.k,
        "d": a.d,
        "f": ring.format(&f),
        "dim_w": w.len(),
        "l_q": profile.l_q,
        "vanishing_forced": predicted,
        "value": ring.format(&v),
    });
    Ok(Output { text, json })
}

fn search(a: SearchArgs) -> CliResult<Output> {
    let field = field_of_size(a.q)?;
    let k = Fq::new(&field)?;
    let parse_poly =
        |lit: &str, what: &str| Poly::parse(lit, &k, "x").map_err(|e| CliError::Usage(format!("{what}: {e}")));
    let deg_a = match &a.deg_a {
        Some(r) => parse_range(r, "--deg-a")?,
        None => 0..=0,
    };
    let mut space = SearchSpace::new(field, a.family, deg_a, parse_range(&a.deg_b, "--deg-b")?);
    space.a_fixed = a.a.as_deref().map(|l| parse_poly(l, "--a")).transpose()?;
    space.b_multiple_of = a.b_multiple_of.as_deref().map(|l| parse_poly(l, "--b-multiple-of")).transpose()?;
    space.min_r = a.min_r;
    space.ideal_budget = a.h_budget;
    space.s = a.s;
    space.fk_rule = a.fk_rule.into();
    if a.part >= a.parts {
        return Err(CliError::Usage(format!("--part {} is outside 0..{}", a.part, a.parts)));
    }
    let total = space.total_size().map_err(|e| CliError::Usage(e.to_string()))?;
    let space = search_partition(&space, a.parts)?.swap_remove(a.part as usize);
    let range = space.indices()?;

    let mut seen: Vec<SearchRecord> = Vec::new();
    let keep_all = a.records;
    let summary = search_run(&space, a.checkpoint.as_deref(), &RunOptions { stop_after: a.limit }, |rec| {
        if keep_all || rec.stage == Stage::Passed {
            seen.push(rec.clone());
        }
    })?;
    // passing candidates replayed from a checkpoint are re-evaluated for their reports
    for (idx, _) in &summary.passed {
        if !seen.iter().any(|r| r.index == *idx) {
            seen.push(search_evaluate(&space, *idx)?);
        }
    }
    seen.sort_by_key(|r| r.index);

    let mut text = String::new();
    writeln!(text, "space: {total} candidates; part {} of {} covers {}..{}", a.part, a.parts, range.start, range.end)
        .unwrap();
    writeln!(text, "evaluated: {}", summary.evaluated).unwrap();
    for st in Stage::ALL {
        writeln!(text, "  {st}: {}", summary.count(st)).unwrap();
    }
    for rec in &seen {
        writeln!(text, "{}\t{}\t{}", rec.coeffs, rec.stage, rec.verdict).unwrap();
    }
    let json = json!({
        "command": "search",
        "family": a.family.name(),
        "q": a.q,
        "total_size": total,
        "part": { "index": a.part, "parts": a.parts, "range": [range.start, range.end] },
        "summary": summary,
        "records": seen,
    });
    Ok(Output { text, json })
}

fn semigroups(a: SemigroupArgs) -> CliResult<Output> {
    let all = enumerate_semigroups_capped(a.genus, a.cap)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for s in &all {
        let valid_r = match a.q {
            Some(q) => Some(r_gap_values(s, q).map_err(|e| CliError::Usage(e.to_string()))?.valid_r),
            None => None,
        };
        if a.r_gap && valid_r.as_ref().is_some_and(|v| v.is_empty()) {
            continue;
        }
        let mut line = format!("gaps {}  generators {}", set(&s.gaps()), set(&s.minimal_generators()));
        if let (Some(q), Some(v)) = (a.q, &valid_r) {
            write!(line, "  valid_r(q = {q}) = {}", set(v)).unwrap();
        }
        writeln!(text, "{line}").unwrap();
        rows.push(json!({
            "gaps": s.gaps(),
            "generators": s.minimal_generators(),
            "frobenius": s.frobenius(),
            "valid_r": valid_r,
        }));
    }
    writeln!(text, "{} semigroups of genus {}", rows.len(), a.genus).unwrap();
    let json = json!({ "command": "semigroups", "genus": a.genus, "q": a.q, "count": rows.len(), "semigroups": rows });
    Ok(Output { text, json })
}
