//! Hypothesis checkers that predict orders of vanishing at the trivial zeros
//! and compare the prediction with the computed order.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::{self, valuation_profile};
use crate::ideal::{class_group, ClassGroupOptions, ClassGroupReport};
use crate::ideal_zeta::{ideal_zeta_classwise, remark_exact_check, IdealZetaOptions, RemarkReport};
use crate::poly::Poly;
use crate::ring::{CoordinateRing, RingForm};
use crate::semigroup::{degree_q_theorem_check, r_gap_values, semigroup_from_ring, DegreeQOutcome, NumericalSemigroup};
use crate::zeta::{digit_sum, zeta_neg, ZetaOptions};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    Hiper,
    Dinesh,
    Generalization,
    Tesismc,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::Hiper => "hiper",
            Theorem::Dinesh => "dinesh",
            Theorem::Generalization => "generalization",
            Theorem::Tesismc => "tesismc",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "order", rename_all = "kebab-case")]
pub enum Prediction {
    Exactly(u64),
    AtLeast(u64),
}

impl Prediction {
    pub fn admits(self, computed: u64) -> bool {
        match self {
            Prediction::Exactly(n) => computed == n,
            Prediction::AtLeast(n) => computed >= n,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HypothesisReport {
    pub theorem: Theorem,
    pub s: u64,
    pub checks: Vec<Check>,
    pub applicable: bool,
    pub predicted: Option<Prediction>,
    pub computed: Option<u64>,
    pub mu: Option<u64>,
    /// `zeta_A(-s, X) = zeta_{F_q[x]}(-s, X^q)` for the principal zeta
    pub identity_holds: Option<bool>,
    pub remark: Option<RemarkReport>,
    pub notes: Vec<String>,
}

impl HypothesisReport {
    fn new(theorem: Theorem, s: u64) -> Self {
        HypothesisReport {
            theorem,
            s,
            checks: Vec::new(),
            applicable: false,
            predicted: None,
            computed: None,
            mu: None,
            identity_holds: None,
            remark: None,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, witness: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, witness: witness.into() });
    }

    fn finish(&mut self, prediction: Prediction) {
        self.applicable = self.checks.iter().all(|c| c.passed);
        if self.applicable {
            self.predicted = Some(prediction);
        }
    }

    /// Whether the computed order agrees with the prediction; `None` when
    /// either is missing.
    pub fn consistent(&self) -> Option<bool> {
        Some(self.predicted?.admits(self.computed?))
    }
}

/// Which property of the class generators `f_k` is required.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FkRule {
    /// `f_k` irreducible, as the hypothesis is worded.
    #[default]
    Irreducible,
    /// `f_k` square-free, which is what `f_k | g^(e_k) => f_k | g` needs.
    Squarefree,
}

#[derive(Clone, Debug, Default)]
pub struct TheoremOptions {
    pub zeta: ZetaOptions,
    pub ideal_zeta: IdealZetaOptions,
    pub class: ClassGroupOptions,
    pub mu_override: Option<u64>,
    pub fk_rule: FkRule,
    /// skip the zeta computations and report hypotheses only
    pub hypotheses_only: bool,
}

/// `y^q - a(x)^(q-1) y = b(x)` recovered from a single-equation ring with `m = q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinSchreierForm {
    pub a: Poly,
    pub b: Poly,
}

/// Reads off `a` (monic) and `b`; `Err` carries the reason the ring is not of
/// this form.
pub fn artin_schreier_form(ring: &CoordinateRing) -> std::result::Result<ArtinSchreierForm, String> {
    let k = ring.field();
    let q = ring.q() as usize;
    let RingForm::Cab { coeffs } = &ring.spec().form else {
        return Err("ring is not given by a single equation".into());
    };
    if coeffs.len() != q {
        return Err(format!("deg_y F = {} but q = {q}", coeffs.len()));
    }
    if let Some(j) = (2..q).find(|&j| !coeffs[j].is_zero()) {
        return Err(format!("coefficient of y^{j} is nonzero"));
    }
    let a_pow = coeffs[1].neg(k);
    if a_pow.is_zero() {
        return Err("coefficient of y is zero".into());
    }
    let a =
        root(&a_pow, q as u64 - 1, ring).ok_or_else(|| format!("{} is not a (q-1)-th power", a_pow.format(k, "x")))?;
    Ok(ArtinSchreierForm { a, b: coeffs[0].neg(k) })
}

/// Monic `r` with `r^n = f`, if it exists.
fn root(f: &Poly, n: u64, ring: &CoordinateRing) -> Option<Poly> {
    let k = ring.field();
    if n == 1 {
        return Some(f.clone());
    }
    if f.lead() != k.one() {
        return None;
    }
    if f.degree() == Some(0) {
        return Some(Poly::one());
    }
    let mut out = Poly::one();
    for (p, e) in factor::factor(f, k).ok()? {
        if !(e as u64).is_multiple_of(n) {
            return None;
        }
        out = out.mul(&p.pow(e as u64 / n, k), k);
    }
    Some(out)
}

/// Order 2 exactly when `q = 2`, `A` is hyperelliptic with `deg x = 2` and
/// `l_2(s) <= g`.
pub fn check_hiper(ring: &CoordinateRing, s: u64, opts: &TheoremOptions) -> Result<HypothesisReport> {
    let mut rep = HypothesisReport::new(Theorem::Hiper, s);
    let g = semigroup_from_ring(ring).genus();
    rep.check("q = 2", ring.q() == 2, format!("q = {}", ring.q()));
    rep.check("deg x = 2", ring.x_degree() == 2, format!("deg x = {}", ring.x_degree()));
    let l = digit_sum(s, 2).l_q;
    rep.check("l_2(s) <= g", l <= g, format!("l_2({s}) = {l}, g = {g}"));
    rep.finish(Prediction::Exactly(2));
    if !opts.hypotheses_only {
        record_principal_order(ring, s, opts, &mut rep);
    }
    Ok(rep)
}

fn record_principal_order(ring: &CoordinateRing, s: u64, opts: &TheoremOptions, rep: &mut HypothesisReport) {
    match zeta_neg(ring, s, &opts.zeta).and_then(|z| z.ord_at_one(ring)) {
        Ok(ord) => rep.computed = Some(ord),
        Err(e) => rep.notes.push(format!("order not computed: {e}")),
    }
}

/// Order `q` exactly under an `r`-gap structure with `r >= q - 1` and
/// `l_q(s)/(q-1) <= r`, for `s` a multiple of `q - 1`.
pub fn check_dinesh(ring: &CoordinateRing, s: u64, opts: &TheoremOptions) -> Result<HypothesisReport> {
    let semigroup = semigroup_from_ring(ring);
    let mut rep = dinesh_hypotheses(&semigroup, ring.q(), s)?;
    if rep.applicable && ring.x_degree() != ring.q() {
        rep.notes.push(format!(
            "deg x = {}; the identity uses the monic element of degree q in place of x",
            ring.x_degree()
        ));
    }
    if !opts.hypotheses_only {
        record_principal_order(ring, s, opts, &mut rep);
        if rep.applicable {
            match dinesh_identity(ring, s, &opts.zeta) {
                Ok(holds) => rep.identity_holds = Some(holds),
                Err(e) => rep.notes.push(format!("identity not checked: {e}")),
            }
        }
    }
    Ok(rep)
}

/// The same hypotheses evaluated on a semigroup alone, with no ring.
pub fn dinesh_hypotheses(s_group: &NumericalSemigroup, q: u64, s: u64) -> Result<HypothesisReport> {
    let mut rep = HypothesisReport::new(Theorem::Dinesh, s);
    rep.check("(q-1) | s", s.is_multiple_of(q - 1), format!("q - 1 = {}, s = {s}", q - 1));
    let report = r_gap_values(s_group, q)?;
    let l = digit_sum(s, q).l_q;
    let usable: Vec<u64> = report.valid_r.iter().copied().filter(|&r| r + 1 >= q && l <= r * (q - 1)).collect();
    rep.check(
        "r-gap structure with r >= q-1 and l_q(s)/(q-1) <= r",
        !usable.is_empty(),
        format!("valid r = {:?}, l_q(s) = {l}", report.valid_r),
    );
    let degree_q = match usable.first() {
        Some(&r) => degree_q_theorem_check(s_group, q, r),
        None => degree_q_theorem_check(s_group, q, report.valid_r.last().copied().unwrap_or(0)),
    };
    let q_ok =
        s_group.contains(q) && matches!(degree_q.outcome, DegreeQOutcome::Pass | DegreeQOutcome::NotApplicable { .. });
    rep.check("q in S", q_ok, format!("S up to rq: {:?}", degree_q.elements));
    rep.finish(Prediction::Exactly(q));
    Ok(rep)
}

/// `zeta_A(-s, X) = zeta_{F_q[T]}(-s, X^q)` with `T` the monic monomial of degree `q`.
pub fn dinesh_identity(ring: &CoordinateRing, s: u64, opts: &ZetaOptions) -> Result<bool> {
    let q = ring.q();
    let t_mono =
        ring.monomial_of_degree(q).ok_or_else(|| Error::InvalidArgument(format!("no element of degree {q}")))?;
    let t_elem = ring.monomial(t_mono);
    let za = zeta_neg(ring, s, opts)?;
    let fqx = CoordinateRing::polynomial_ring(ring.field().spec())?;
    let zt = zeta_neg(&fqx, s, opts)?;
    let mut expected = vec![ring.zero(); (zt.coefficients.len() - 1) * q as usize + 1];
    for (d, c) in zt.coefficients.iter().enumerate() {
        expected[d * q as usize] = ring.eval_poly_at(c.as_poly().unwrap(), &t_elem);
    }
    let n = expected.len().max(za.coefficients.len());
    let at = |v: &[_], i: usize| v.get(i).cloned().unwrap_or_else(|| ring.zero());
    Ok((0..n).all(|i| at(&za.coefficients, i) == at(&expected, i)))
}

/// Order at least 2 for the all-ideal zeta at `-es`, `q = 2`.
pub fn check_generalization(
    ring: &CoordinateRing,
    s: u64,
    classes: &ClassGroupReport,
    opts: &TheoremOptions,
) -> Result<HypothesisReport> {
    let mut rep = HypothesisReport::new(Theorem::Generalization, s);
    rep.check("q = 2", ring.q() == 2, format!("q = {}", ring.q()));
    rep.check("deg x = 2", ring.x_degree() == 2, format!("deg x = {}", ring.x_degree()));
    let form = artin_schreier_form(ring);
    let n = ring.y_degree();
    rep.check(
        "form y^2 - a(x) y = b(x)",
        form.is_ok(),
        match &form {
            Ok(f) => format!("a = {}", f.a.format(ring.field(), "x")),
            Err(why) => why.clone(),
        },
    );
    rep.check(
        "N odd",
        n.is_some_and(|n| n % 2 == 1),
        n.map_or("no single defining equation".into(), |n| format!("N = {n}")),
    );
    let g = semigroup_from_ring(ring).genus();
    class_conditions(ring, classes, form.as_ref().ok(), opts.fk_rule, &mut rep);
    let mu = mu_bound(ring, classes, g, opts, &mut rep);
    let es = classes.exponent * s;
    let l = digit_sum(es, 2).l_q;
    rep.check(
        "l_2(es) <= mu",
        mu.is_some_and(|mu| l <= mu),
        format!("e = {}, l_2({es}) = {l}, mu = {}", classes.exponent, show(mu)),
    );
    rep.finish(Prediction::AtLeast(2));
    if !opts.hypotheses_only {
        record_ideal_order(ring, es, classes, opts, &mut rep);
    }
    Ok(rep)
}

/// Multiplicity at least `q` for the all-ideal zeta at `-es`.
pub fn check_tesismc(
    ring: &CoordinateRing,
    s: u64,
    classes: &ClassGroupReport,
    opts: &TheoremOptions,
) -> Result<HypothesisReport> {
    let mut rep = HypothesisReport::new(Theorem::Tesismc, s);
    let k = ring.field();
    let q = ring.q();
    let p = ring.p();
    let form = artin_schreier_form(ring);
    rep.check(
        "form y^q - a(x)^(q-1) y = b(x)",
        form.is_ok(),
        match &form {
            Ok(f) => format!("a = {}, b = {}", f.a.format(k, "x"), f.b.format(k, "x")),
            Err(why) => why.clone(),
        },
    );
    let n = ring.y_degree().unwrap_or(0);
    rep.check("gcd(N, p) = 1", crate::ring::gcd(n, p) == 1, format!("N = {n}, p = {p}"));
    if let Ok(f) = &form {
        let da = f.a.degree().unwrap() as u64;
        rep.check("N > q deg a", n > q * da, format!("N = {n}, q deg a = {}", q * da));
        let (passed, witness) = u_condition(f, p, ring);
        rep.check("negative valuations of u = b/a^q prime to p", passed, witness);
    }
    let semigroup = semigroup_from_ring(ring);
    let gaps = r_gap_values(&semigroup, q)?;
    rep.check("r-gap structure", !gaps.valid_r.is_empty(), format!("valid r = {:?}", gaps.valid_r));
    class_conditions(ring, classes, form.as_ref().ok(), opts.fk_rule, &mut rep);
    let r_cap = gaps.valid_r.last().copied().unwrap_or(0);
    let mu = mu_bound(ring, classes, r_cap, opts, &mut rep);
    rep.check("(q-1) | s", s.is_multiple_of(q - 1), format!("q - 1 = {}, s = {s}", q - 1));
    let es = classes.exponent * s;
    let l = digit_sum(es, q).l_q;
    rep.check(
        "l_q(es)/(q-1) <= mu",
        mu.is_some_and(|mu| l <= mu * (q - 1)),
        format!("e = {}, l_q({es}) = {l}, mu = {}", classes.exponent, show(mu)),
    );
    rep.finish(Prediction::AtLeast(q));
    if !opts.hypotheses_only {
        record_ideal_order(ring, es, classes, opts, &mut rep);
    }
    Ok(rep)
}

fn u_condition(form: &ArtinSchreierForm, p: u64, ring: &CoordinateRing) -> (bool, String) {
    let k = ring.field();
    let den = form.a.pow(ring.q(), k);
    match valuation_profile(&form.b, &den, k) {
        Ok(profile) => {
            let bad: Vec<String> = profile
                .iter()
                .filter(|(_, v)| *v < 0 && (v.unsigned_abs() % p == 0))
                .map(|(m, v)| format!("v_({}) = {v}", m.format(k, "x")))
                .collect();
            let all: Vec<String> = profile
                .iter()
                .filter(|(_, v)| *v < 0)
                .map(|(m, v)| format!("v_({}) = {v}", m.format(k, "x")))
                .collect();
            if bad.is_empty() {
                (true, format!("negative valuations: [{}]", all.join(", ")))
            } else {
                (false, bad.join(", "))
            }
        }
        Err(e) => (false, e.to_string()),
    }
}

/// For every nontrivial class: `f_k` lies in `F_q[x]`, satisfies the rule,
/// and divides `b`. Both the irreducibility and square-freeness outcomes are
/// recorded; only the selected rule counts towards applicability.
fn class_conditions(
    ring: &CoordinateRing,
    classes: &ClassGroupReport,
    form: Option<&ArtinSchreierForm>,
    rule: FkRule,
    rep: &mut HypothesisReport,
) {
    let k = ring.field();
    for (idx, class) in classes.classes.iter().enumerate().skip(1) {
        let label = format!("class {idx} (d = {}, e = {})", class.degree, class.order);
        let Some(f) = class.generator.as_poly() else {
            rep.check(format!("{label}: f_k in F_q[x]"), false, format!("f_k = {}", ring.format(&class.generator)));
            continue;
        };
        let fs = f.format(k, "x");
        let irreducible = factor::is_irreducible(f, k);
        let squarefree = f.gcd(&f.derivative(k), k).is_one();
        match rule {
            FkRule::Irreducible => rep.check(format!("{label}: f_k irreducible"), irreducible, format!("f_k = {fs}")),
            FkRule::Squarefree => {
                rep.check(format!("{label}: f_k square-free"), squarefree, format!("f_k = {fs}"));
                if !irreducible {
                    rep.notes.push(format!("{label}: f_k = {fs} is square-free but not irreducible"));
                }
            }
        }
        let divides = form.is_some_and(|fm| f.divides(&fm.b, k).unwrap_or(false));
        rep.check(format!("{label}: f_k | b"), divides, format!("f_k = {fs}"));
    }
}

/// The largest `mu` with `N > q mu + e_k d_k` for every nontrivial class,
/// capped by the principal-part bound `cap`; a user override replaces the
/// maximum but is still checked against the inequalities.
fn mu_bound(
    ring: &CoordinateRing,
    classes: &ClassGroupReport,
    cap: u64,
    opts: &TheoremOptions,
    rep: &mut HypothesisReport,
) -> Option<u64> {
    let q = ring.q();
    let n = ring.y_degree().unwrap_or(0);
    let worst = classes.classes.iter().skip(1).map(|c| c.order * c.degree).max().unwrap_or(0);
    // N > q mu + worst  <=>  mu <= (N - worst - 1) / q
    let from_classes = (n > worst).then(|| (n - worst - 1) / q);
    let mu = match opts.mu_override {
        Some(user) => {
            let ok = n > q * user + worst;
            rep.check("N > q mu + e_k d_k (user mu)", ok, format!("N = {n}, mu = {user}, max e_k d_k = {worst}"));
            ok.then_some(user)
        }
        None => {
            let mu = from_classes.map(|m| m.min(cap)).filter(|&m| m >= 1);
            rep.check(
                "mu >= 1 with N > q mu + e_k d_k",
                mu.is_some(),
                format!("N = {n}, max e_k d_k = {worst}, cap = {cap}, mu = {}", show(mu)),
            );
            mu
        }
    };
    rep.mu = mu;
    mu
}

fn show(mu: Option<u64>) -> String {
    mu.map_or("none".into(), |m| m.to_string())
}

fn record_ideal_order(
    ring: &CoordinateRing,
    es: u64,
    classes: &ClassGroupReport,
    opts: &TheoremOptions,
    rep: &mut HypothesisReport,
) {
    match ideal_zeta_classwise(ring, es, classes, &opts.ideal_zeta) {
        Ok(z) => {
            if let Some(w) = &z.warning {
                rep.notes.push(w.clone());
            }
            match z.ord_at_one(ring) {
                Ok(ord) => rep.computed = Some(ord),
                Err(e) => rep.notes.push(format!("order not computed: {e}")),
            }
            if rep.applicable {
                match remark_exact_check(ring, &z, classes) {
                    Ok(remark) => {
                        if remark.factorization_holds && remark.u_at_one_nonzero {
                            rep.notes.push(format!(
                                "U(1) = {} is nonzero: order exactly {}",
                                remark.u_at_one,
                                ring.q()
                            ));
                        }
                        rep.remark = Some(remark);
                    }
                    Err(e) => rep.notes.push(format!("factorization not checked: {e}")),
                }
            }
        }
        Err(e) => rep.notes.push(format!("order not computed: {e}")),
    }
}

/// Runs one theorem, computing the class group when needed.
pub fn check(ring: &CoordinateRing, theorem: Theorem, s: u64, opts: &TheoremOptions) -> Result<HypothesisReport> {
    match theorem {
        Theorem::Hiper => check_hiper(ring, s, opts),
        Theorem::Dinesh => check_dinesh(ring, s, opts),
        Theorem::Generalization => {
            let classes = class_group(ring, &opts.class)?;
            check_generalization(ring, s, &classes, opts)
        }
        Theorem::Tesismc => {
            let classes = class_group(ring, &opts.class)?;
            check_tesismc(ring, s, &classes, opts)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropositionRow {
    pub n: u64,
    pub genus: u64,
    pub valid_r: Vec<u64>,
    pub ok: bool,
}

/// For `q = 2` and `S = <2, N>` with `N` odd: every `r`-gap value lies in `{g-1, g}`.
pub fn check_hyperelliptic_rgap_proposition(ns: impl IntoIterator<Item = u64>) -> Result<Vec<PropositionRow>> {
    ns.into_iter()
        .filter(|n| n % 2 == 1 && *n >= 3)
        .map(|n| {
            let s = NumericalSemigroup::from_generators(&[2, n])?;
            let g = s.genus();
            let valid_r = r_gap_values(&s, 2)?.valid_r;
            let ok = valid_r.iter().all(|&r| r + 1 == g || r == g);
            Ok(PropositionRow { n, genus: g, valid_r, ok })
        })
        .collect()
}
