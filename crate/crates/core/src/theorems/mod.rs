//! Verifiers for the exponent bounds, the normality criteria and the
//! factorization theorem. Each verifier records its hypotheses first; if any
//! fails the outcome is `vacuous` and the conclusion is never evaluated.

mod corpus;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::catalog::{self, ElementSpec};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::fusion::{generate, Backend, FusionSystem, GeneratorPart, PGroup};
use crate::group::{Caps, Subgroup};
use crate::lattice::{Lattice, NodeId};
use crate::structure;
use crate::table::Ix;

pub use corpus::{
    corpus_run, default_corpus, run_verifier, CorpusConfig, CorpusEntry, CorpusOutcome,
    InstanceError, Summary, VERIFIER_IDS,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Vacuous,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub result_id: String,
    pub instance: String,
    pub hypotheses: Vec<Hypothesis>,
    pub checks: Vec<Check>,
    pub conclusion: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.conclusion == Outcome::Pass
    }
}

struct Report(VerificationReport);

impl Report {
    fn new(id: &str, instance: String) -> Report {
        Report(VerificationReport {
            result_id: id.into(),
            instance,
            hypotheses: vec![],
            checks: vec![],
            conclusion: Outcome::Vacuous,
            counterexample: None,
            timing_ms: None,
        })
    }

    fn hypothesis(&mut self, name: &str, holds: bool, witness: Option<Value>) -> bool {
        self.0.hypotheses.push(Hypothesis {
            name: name.into(),
            holds,
            witness,
        });
        holds
    }

    fn vacuous(&self) -> bool {
        self.0.hypotheses.iter().any(|h| !h.holds)
    }

    fn check(&mut self, name: &str, holds: bool, detail: Value) -> bool {
        self.0.checks.push(Check {
            name: name.into(),
            holds,
            detail,
        });
        holds
    }

    fn counterexample(&mut self, v: Value) {
        if self.0.counterexample.is_none() {
            self.0.counterexample = Some(v);
        }
    }

    fn finish(mut self) -> VerificationReport {
        self.0.conclusion = if self.vacuous() {
            Outcome::Vacuous
        } else if self.0.checks.iter().all(|c| c.holds) {
            Outcome::Pass
        } else {
            Outcome::Fail
        };
        self.0
    }
}

/// JSON description of an element.
pub fn describe_element(e: &Element) -> Value {
    serde_json::to_value(ElementSpec::from_element(e)).expect("elements serialize")
}

/// JSON description of a subgroup: order and generators.
pub fn describe_subgroup(s: &Subgroup) -> Value {
    json!({
        "order": s.order(),
        "generators": s.generators().iter().map(describe_element).collect::<Vec<_>>(),
    })
}

fn describe(pg: &PGroup, q: NodeId) -> Value {
    describe_subgroup(&pg.sub(q))
}

fn describe_map(pg: &PGroup, q: NodeId, t: &[Ix]) -> Value {
    let lat = pg.lattice();
    let tg = pg.table();
    let pairs: Vec<Value> = lat
        .node(q)
        .gens
        .iter()
        .map(|&g| {
            let i = lat.node(q).position(g).unwrap();
            json!([describe_element(tg.element(g)), describe_element(tg.element(t[i]))])
        })
        .collect();
    json!({ "source": describe(pg, q), "generator_images": pairs })
}

/// Largest nilpotence class covered by a parameter: `n(p-1) + 1`.
pub fn class_bound(p: u64, n: u32) -> u64 {
    n as u64 * (p - 1) + 1
}

/// Smallest `n` with `class ≤ n(p-1) + 1`.
pub fn minimal_n(class: u32, p: u64) -> u32 {
    if class <= 1 {
        0
    } else {
        (class as u64 - 1).div_ceil(p - 1) as u32
    }
}

fn p_label(pg: &PGroup) -> String {
    format!("|P| = {}, p = {}", pg.subgroup().order(), pg.prime())
}

fn f_label(f: &FusionSystem) -> String {
    let kind = match f.backend() {
        Backend::GroupRealized(g) => format!("F_P(G), |G| = {}", g.order()),
        Backend::Generated => "generated".into(),
    };
    format!("{kind}, |P| = {}, p = {}", f.pgroup().order(f.base()), f.prime())
}

/// A characteristic subfunctor of the center functor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CharFunctor {
    Center,
    AgemoCenter(u32),
    OmegaCenter(u32),
}

impl CharFunctor {
    pub fn apply(&self, lat: &Lattice, q: NodeId) -> NodeId {
        let z = lat.center(q);
        match *self {
            CharFunctor::Center => z,
            CharFunctor::AgemoCenter(n) => lat.agemo(z, n),
            CharFunctor::OmegaCenter(n) => lat.omega(z, n),
        }
    }

    pub fn label(&self) -> String {
        match self {
            CharFunctor::Center => "Z".into(),
            CharFunctor::AgemoCenter(n) => format!("agemo^{n}(Z)"),
            CharFunctor::OmegaCenter(n) => format!("omega_{n}(Z)"),
        }
    }
}

fn class_hypothesis(r: &mut Report, lat: &Lattice, top: NodeId, p: u64, n: u32) -> bool {
    let class = lat.class(top) as u64;
    let bound = class_bound(p, n);
    r.hypothesis(
        "class(P) <= n(p-1)+1",
        class <= bound,
        Some(json!({ "class": class, "n": n, "bound": bound })),
    )
}

fn saturation_hypothesis(r: &mut Report, f: &FusionSystem) -> bool {
    let s = f.check_saturation();
    r.hypothesis(
        "F is saturated",
        s.saturated(),
        (!s.saturated()).then(|| {
            json!({
                "sylow_axiom": s.sylow_axiom.detail,
                "extension_axiom": s.extension_axiom.detail,
            })
        }),
    )
}

fn op_trivial_hypothesis(r: &mut Report, f: &FusionSystem) -> bool {
    match f.op_subgroup() {
        Ok(o) => r.hypothesis(
            "O_p(F) = 1",
            f.pgroup().order(o) == 1,
            Some(json!({ "order": f.pgroup().order(o) })),
        ),
        Err(e) => r.hypothesis("O_p(F) = 1", false, Some(json!(e.to_string()))),
    }
}

/// `C_P(℧ⁿ(Z(Q))) = Q` forces `Q = P` when `class(P) ≤ n(p-1)+1`.
pub fn verify_goldcent(pg: &PGroup, n: u32) -> VerificationReport {
    let lat = pg.lattice();
    let top = lat.top();
    let mut r = Report::new("goldcent", format!("{}, n = {n}", p_label(pg)));
    if !class_hypothesis(&mut r, lat, top, pg.prime(), n) {
        return r.finish();
    }
    let bad = (0..top).find(|&q| lat.centralizer_in(top, lat.agemo(lat.center(q), n)) == q);
    r.check(
        "no proper Q with C_P(agemo^n(Z(Q))) = Q",
        bad.is_none(),
        json!({ "subgroups_scanned": lat.len() }),
    );
    if let Some(q) = bad {
        r.counterexample(describe(pg, q));
    }
    r.finish()
}

/// For normal `Q` with `C_P(℧¹(Z(Q))) = Q`, `J(P) ≤ Q`.
pub fn verify_goldj(pg: &PGroup) -> VerificationReport {
    let lat = pg.lattice();
    let top = lat.top();
    let mut r = Report::new("goldj", p_label(pg));
    let j = lat.thompson(top);
    let qualifying: Vec<NodeId> = (0..=top)
        .filter(|&q| lat.is_normal(q) && lat.centralizer_in(top, lat.agemo(lat.center(q), 1)) == q)
        .collect();
    let bad = qualifying.iter().copied().find(|&q| !lat.is_subgroup(j, q));
    r.check(
        "J(P) <= Q for every normal Q with C_P(agemo^1(Z(Q))) = Q",
        bad.is_none(),
        json!({ "qualifying_subgroups": qualifying.len(), "order_J": lat.order(j) }),
    );
    if let Some(q) = bad {
        r.counterexample(describe(pg, q));
    }
    r.finish()
}

/// Subgroups in the F-classes of centric radical subgroups, and in the
/// F-classes of the Alperin family (computed independently).
struct Families {
    centric_radical: Vec<NodeId>,
    alperin_closure: Vec<NodeId>,
}

fn families(f: &FusionSystem) -> Result<Families> {
    let mut centric_radical = Vec::new();
    for q in f.nodes() {
        if f.is_centric(q) && f.is_radical(q)? {
            centric_radical.push(q);
        }
    }
    let mut alperin_closure: Vec<NodeId> = f
        .alperin_family()?
        .into_iter()
        .flat_map(|q| f.class_members(q).to_vec())
        .collect();
    alperin_closure.sort_unstable();
    alperin_closure.dedup();
    Ok(Families {
        centric_radical,
        alperin_closure,
    })
}

fn equivnorm_conditions(f: &FusionSystem, fam: &Families, w: NodeId) -> (bool, bool, bool) {
    let lat = f.lattice();
    let a = f.is_normal(w);
    let b = f.is_strongly_closed(w) && fam.centric_radical.iter().all(|&q| lat.is_subgroup(w, q));
    let c = f.is_weakly_closed(w) && fam.alperin_closure.iter().all(|&q| lat.is_subgroup(w, q));
    (a, b, c)
}

/// The three normality criteria agree on `W`.
pub fn verify_equivnorm(f: &FusionSystem, w: NodeId) -> Result<VerificationReport> {
    let pg = f.pgroup();
    let mut r = Report::new(
        "equivnorm",
        format!("{}, |W| = {}", f_label(f), pg.order(w)),
    );
    if !saturation_hypothesis(&mut r, f) {
        return Ok(r.finish());
    }
    let fam = families(f)?;
    let (a, b, c) = equivnorm_conditions(f, &fam, w);
    r.check(
        "(a) <=> (b) <=> (c)",
        a == b && b == c,
        json!({ "normal": a, "strongly_closed_in_centric_radicals": b, "weakly_closed_in_alperin_family": c }),
    );
    if !(a == b && b == c) {
        r.counterexample(describe(pg, w));
    }
    Ok(r.finish())
}

/// The normality criteria agree on every subgroup of `P`.
pub fn verify_equivnorm_all(f: &FusionSystem) -> Result<VerificationReport> {
    let pg = f.pgroup();
    let mut r = Report::new("equivnorm", format!("{}, every W <= P", f_label(f)));
    if !saturation_hypothesis(&mut r, f) {
        return Ok(r.finish());
    }
    let fam = families(f)?;
    let mut normal = 0;
    let mut scanned = 0;
    let mut bad = None;
    for w in f.nodes() {
        scanned += 1;
        let (a, b, c) = equivnorm_conditions(f, &fam, w);
        normal += a as usize;
        if !(a == b && b == c) && bad.is_none() {
            bad = Some((w, a, b, c));
        }
    }
    r.check(
        "(a) <=> (b) <=> (c) for every W",
        bad.is_none(),
        json!({ "subgroups_scanned": scanned, "normal_subgroups": normal }),
    );
    if let Some((w, a, b, c)) = bad {
        r.counterexample(json!({ "W": describe(pg, w), "a": a, "b": b, "c": c }));
    }
    Ok(r.finish())
}

/// Either a proper F-centric `Q` has `C_P(W(Q)) = Q`, or `W(P)` is normal.
pub fn verify_poschar(f: &FusionSystem, w: CharFunctor) -> Result<VerificationReport> {
    let pg = f.pgroup();
    let lat = f.lattice();
    let top = f.base();
    let mut r = Report::new("poschar", format!("{}, W = {}", f_label(f), w.label()));
    saturation_hypothesis(&mut r, f);
    let wp = w.apply(lat, top);
    let monotone_bad = f
        .nodes()
        .find(|&q| lat.is_subgroup(lat.centralizer_in(top, q), q) && !lat.is_subgroup(wp, w.apply(lat, q)));
    r.hypothesis(
        "W(P) <= W(Q) for all Q <= P with C_P(Q) <= Q",
        monotone_bad.is_none(),
        monotone_bad.map(|q| describe(pg, q)),
    );
    let functor_bad = f.classes().iter().find_map(|class| {
        let rep = class.rep;
        let wr = w.apply(lat, rep);
        if !lat.is_subgroup(wr, lat.center(rep)) {
            return Some(rep);
        }
        let wr_elems = &lat.node(wr).elems;
        let maps_onto = |t: &[Ix], m: NodeId| {
            let img: Vec<Ix> = wr_elems
                .iter()
                .map(|&x| t[lat.node(rep).position(x).unwrap()])
                .collect();
            pg.lattice().find(&crate::table::Bits::from_iter(pg.table().order(), img))
                == Some(w.apply(lat, m))
        };
        let auts_ok = f.aut_generators(rep).iter().all(|a| maps_onto(a, rep));
        let isos_ok = class
            .members
            .iter()
            .all(|&m| maps_onto(&f.some_iso(rep, m).unwrap(), m));
        (!(auts_ok && isos_ok)).then_some(rep)
    });
    r.hypothesis(
        "W is a characteristic subfunctor of the center",
        functor_bad.is_none(),
        functor_bad.map(|q| describe(pg, q)),
    );
    if r.vacuous() {
        return Ok(r.finish());
    }
    let centric_q = f
        .nodes()
        .filter(|&q| q != top)
        .find(|&q| f.is_centric(q) && lat.centralizer_in(top, w.apply(lat, q)) == q);
    let normal = f.is_normal(wp);
    r.check(
        "proper F-centric Q with C_P(W(Q)) = Q exists, or W(P) is normal",
        centric_q.is_some() || normal,
        json!({
            "centric_witness": centric_q.map(|q| describe(pg, q)),
            "W(P)_normal": normal,
            "order_W(P)": pg.order(wp),
        }),
    );
    Ok(r.finish())
}

/// `℧ⁿ(Z(P))` is normal in F.
pub fn verify_theorem_norm(f: &FusionSystem, n: u32) -> VerificationReport {
    let lat = f.lattice();
    let top = f.base();
    let mut r = Report::new("theorem-norm", format!("{}, n = {n}", f_label(f)));
    saturation_hypothesis(&mut r, f);
    class_hypothesis(&mut r, lat, top, f.prime(), n);
    if r.vacuous() {
        return r.finish();
    }
    let a = lat.agemo(lat.center(top), n);
    let normal = f.is_normal(a);
    r.check(
        "agemo^n(Z(P)) is normal in F",
        normal,
        json!({ "order": lat.order(a) }),
    );
    if !normal {
        r.counterexample(describe(f.pgroup(), a));
    }
    r.finish()
}

/// `exp Z(P) ≤ pⁿ` when `O_p(F) = 1`.
pub fn verify_theorem_main(f: &FusionSystem, n: u32) -> VerificationReport {
    let lat = f.lattice();
    let top = f.base();
    let p = f.prime();
    let mut r = Report::new("theorem-main", format!("{}, n = {n}", f_label(f)));
    saturation_hypothesis(&mut r, f);
    class_hypothesis(&mut r, lat, top, p, n);
    op_trivial_hypothesis(&mut r, f);
    if r.vacuous() {
        return r.finish();
    }
    let e = lat.exponent(lat.center(top));
    let bound = p.pow(n);
    r.check(
        "exp Z(P) <= p^n",
        e <= bound,
        json!({ "exponent": e, "bound": bound, "attained": e == bound }),
    );
    r.finish()
}

/// `exp P ≤ p^{n²(p-1)+n}` when `O_p(F) = 1`, together with the exponent
/// bound on every upper central quotient and the commutator congruence
/// used to derive it.
pub fn verify_corollary_exponent(f: &FusionSystem, n: u32) -> VerificationReport {
    let lat = f.lattice();
    let tg = f.pgroup().table();
    let top = f.base();
    let p = f.prime();
    let mut r = Report::new("corollary-exponent", format!("{}, n = {n}", f_label(f)));
    r.hypothesis("P is nontrivial", lat.order(top) > 1, None);
    saturation_hypothesis(&mut r, f);
    class_hypothesis(&mut r, lat, top, p, n);
    op_trivial_hypothesis(&mut r, f);
    if r.vacuous() {
        return r.finish();
    }
    let pn = p.pow(n);
    let upper = tg.upper_central_series(&lat.node(top).bits);
    let quotient_bad = (1..upper.len()).find(|&k| {
        upper[k]
            .iter()
            .any(|x| !upper[k - 1].contains(tg.pow(x, pn)))
    });
    r.check(
        "every upper central quotient has exponent <= p^n",
        quotient_bad.is_none(),
        json!({ "terms": upper.len() }),
    );
    // [x^{p^n}, t] ≡ [x, t]^{p^n} mod Z^{k-1} for x ∈ Z^{k+1}, k ≥ 1.
    let congruence = (2..upper.len()).all(|k1| {
        let (zk1, zkm1) = (&upper[k1], &upper[k1 - 2]);
        zk1.iter().all(|x| {
            lat.node(top).elems.iter().all(|&t| {
                let lhs = tg.commutator(tg.pow(x, pn), t);
                let rhs = tg.pow(tg.commutator(x, t), pn);
                zkm1.contains(tg.mul(lhs, tg.inv(rhs)))
            })
        })
    });
    r.check(
        "[x^(p^n), t] = [x, t]^(p^n) modulo Z^(k-1) for x in Z^(k+1)",
        congruence,
        json!(null),
    );
    let e = lat.exponent(top);
    let exp_bound = (n as u64 * n as u64 * (p - 1) + n as u64) as u32;
    let bound = p.checked_pow(exp_bound).unwrap_or(u64::MAX);
    r.check(
        "exp P <= p^(n^2(p-1)+n)",
        e <= bound,
        json!({ "exponent": e, "bound_log_p": exp_bound }),
    );
    r.finish()
}

/// Theorem maingrp for `F = F_P(G)`: with no nontrivial strongly closed
/// abelian subgroup, `exp Z(P) ≤ pⁿ`.
pub fn verify_theorem_maingrp(f: &FusionSystem, n: u32) -> VerificationReport {
    let lat = f.lattice();
    let top = f.base();
    let p = f.prime();
    let mut r = Report::new("theorem-maingrp", format!("{}, n = {n}", f_label(f)));
    r.hypothesis(
        "F is realized by a group",
        matches!(f.backend(), Backend::GroupRealized(_)),
        None,
    );
    r.hypothesis("P is nonabelian", !lat.is_abelian(top), None);
    class_hypothesis(&mut r, lat, top, p, n);
    let closed = f
        .nodes()
        .find(|&w| w != lat.trivial() && lat.is_abelian(w) && f.is_strongly_closed(w));
    r.hypothesis(
        "no nontrivial strongly closed abelian subgroup",
        closed.is_none(),
        closed.map(|w| describe(f.pgroup(), w)),
    );
    if r.vacuous() {
        return r.finish();
    }
    let e = lat.exponent(lat.center(top));
    r.check(
        "exp Z(P) <= p^n",
        e <= p.pow(n),
        json!({ "exponent": e, "bound": p.pow(n) }),
    );
    r.finish()
}

/// `F = ⟨C_F(℧¹(Z(P))), N_F(J(P))⟩`, and the inclusion
/// `℧¹(Z(P)) ∩ Z(N_F(J(P))) ≤ Z(F)`.
pub fn verify_theorem_fact(f: &FusionSystem) -> Result<VerificationReport> {
    let lat = f.lattice();
    let pg = f.pgroup();
    let top = f.base();
    let mut r = Report::new("theorem-fact", f_label(f));
    if !saturation_hypothesis(&mut r, f) {
        return Ok(r.finish());
    }
    let a = lat.agemo(lat.center(top), 1);
    let j = lat.thompson(top);
    let c = f.centralizer_system(a)?;
    let nj = f.normalizer_system(j)?;
    let generated = generate(
        pg,
        top,
        &[GeneratorPart::System(&c), GeneratorPart::System(&nj)],
    )?;
    r.check(
        "F = <C_F(agemo^1(Z(P))), N_F(J(P))>",
        f.equals(&generated),
        json!({ "order_agemo": lat.order(a), "order_J": lat.order(j) }),
    );
    let znj = nj.center_of_fusion()?;
    let zf = f.center_of_fusion()?;
    let meet = lat.meet(a, znj);
    r.check(
        "agemo^1(Z(P)) meet Z(N_F(J(P))) <= Z(F)",
        lat.is_subgroup(meet, zf),
        json!({ "order_meet": lat.order(meet), "order_Z(F)": lat.order(zf) }),
    );
    Ok(r.finish())
}

/// `F = ⟨PC_F(Q), N_F(QC_P(Q))⟩` for `Q` normal in F.
pub fn verify_frattini(f: &FusionSystem, q: NodeId) -> Result<VerificationReport> {
    let lat = f.lattice();
    let pg = f.pgroup();
    let top = f.base();
    let mut r = Report::new("frattini", format!("{}, |Q| = {}", f_label(f), lat.order(q)));
    saturation_hypothesis(&mut r, f);
    r.hypothesis("Q is normal in F", f.is_normal(q), Some(describe(pg, q)));
    if r.vacuous() {
        return Ok(r.finish());
    }
    let qc = lat.join(q, lat.centralizer_in(top, q));
    let pc = f.np_cf(q)?;
    let nqc = f.normalizer_system(qc)?;
    let generated = generate(
        pg,
        top,
        &[GeneratorPart::System(&pc), GeneratorPart::System(&nqc)],
    )?;
    r.check(
        "F = <PC_F(Q), N_F(QC_P(Q))>",
        f.equals(&generated),
        json!({ "order_QC_P(Q)": lat.order(qc) }),
    );
    Ok(r.finish())
}

/// Both saturation axioms.
pub fn verify_saturation(f: &FusionSystem) -> VerificationReport {
    let mut r = Report::new("saturation", f_label(f));
    let s = f.check_saturation();
    r.check("Sylow axiom", s.sylow_axiom.holds, json!(s.sylow_axiom.detail));
    r.check(
        "extension axiom",
        s.extension_axiom.holds,
        json!(s.extension_axiom.detail),
    );
    if let Some(x) = &s.extension_failure {
        let pg = f.pgroup();
        r.counterexample(json!({
            "phi": describe_map(pg, x.source, &x.phi),
            "target": describe(pg, x.target),
            "n_phi": describe(pg, x.n_phi),
        }));
    }
    r.finish()
}

/// Automizers of the Alperin family generate F.
pub fn verify_alperin(f: &FusionSystem) -> Result<VerificationReport> {
    let mut r = Report::new("alperin", f_label(f));
    if !saturation_hypothesis(&mut r, f) {
        return Ok(r.finish());
    }
    let family = f.alperin_family()?;
    let tables = family
        .iter()
        .flat_map(|&q| f.aut_generators(q).into_iter().map(move |t| (q, t)))
        .collect();
    let g = generate(f.pgroup(), f.base(), &[GeneratorPart::Tables(tables)])?;
    r.check(
        "F is generated by Aut_F(Q), Q in the Alperin family",
        f.equals(&g),
        json!({ "family_orders": family.iter().map(|&q| f.pgroup().order(q)).collect::<Vec<_>>() }),
    );
    Ok(r.finish())
}

fn invariant_subgroup(
    f: &FusionSystem,
    q: NodeId,
    lower: NodeId,
    upper: NodeId,
) -> Option<NodeId> {
    let lat = f.lattice();
    let gens = f.aut_generators(q);
    lat.subgroups_of(upper)
        .filter(|&u| u != upper && u != lower && lat.is_subgroup(lower, u))
        .find(|&u| {
            gens.iter().all(|a| {
                lat.node(u)
                    .elems
                    .iter()
                    .all(|&x| lat.node(u).bits.contains(a[lat.node(q).position(x).unwrap()]))
            })
        })
}

/// Structure of `C_{pⁿ} ≀ C_p` showing that the bound on `exp Z(P)` is
/// attained, plus `O_p(F) = 1` on a supplied realization.
pub fn verify_example_sharpness(
    p: u64,
    n: u32,
    realization: Option<&FusionSystem>,
    caps: &Caps,
) -> Result<VerificationReport> {
    let label = match realization {
        Some(f) => format!("C_{}^{n} wr C_{p}, realization {}", p, f_label(f)),
        None => format!("C_{}^{n} wr C_{p}", p),
    };
    let mut r = Report::new("example-sharpness", label);
    let prime = crate::element::is_prime(p);
    r.hypothesis("p is prime and n >= 1", prime && n >= 1, None);
    if r.vacuous() {
        return Ok(r.finish());
    }
    let g = catalog::build(
        &catalog::GroupSpec::catalog(catalog::CatalogName::WreathCyclic, &[p, n as u64]),
        caps,
    )?;
    let ws = catalog::wreath_structure(&g, caps)?;
    let whole = g.as_subgroup();
    let pn = p.pow(n);

    let class = structure::central_series(&whole, caps)?.class();
    let expected_class = class_bound(p, n) as u32;
    r.check(
        "class(P) = n(p-1)+1",
        class == Some(expected_class),
        json!({ "class": class, "expected": expected_class }),
    );
    let z = structure::center(&whole);
    let ez = structure::exponent(&z);
    r.check("exp Z(P) = p^n", ez == pn, json!({ "exponent": ez, "expected": pn }));

    let derived = &ws.derived;
    let lhs = structure::iterated_commutator(derived, &ws.x, (p - 1) as u32, caps)?;
    let rhs = structure::omega(derived, n - 1, caps)?;
    r.check(
        "[P', x; p-1] = omega_(n-1)(P')",
        lhs == rhs,
        json!({ "order_lhs": lhs.order(), "order_rhs": rhs.order() }),
    );

    let omega1 = structure::omega(derived, 1, caps)?;
    let homocyclic = derived.is_abelian()
        && derived.order() == pn.pow((p - 1) as u32)
        && structure::exponent(derived) == pn
        && omega1.order() == p.pow((p - 1) as u32);
    r.check(
        "P' is a direct product of p-1 copies of C_(p^n)",
        homocyclic,
        json!({ "order": derived.order(), "exponent": structure::exponent(derived), "order_omega_1": omega1.order() }),
    );

    if p % 2 == 1 {
        let sum = catalog::exponent_sum(p);
        r.check(
            "-p + 1 + sum (-1)^k C(p-1,k) = -p",
            sum == -(p as i128),
            json!({ "value": sum.to_string() }),
        );
        // [a_1, x; p-1] = ∏ a_{k+1}^{e_k}
        let a = &ws.derived_generators;
        let mut c = a[0].clone();
        for _ in 0..p - 1 {
            c = c.commutator(&ws.x);
        }
        let expected = catalog::iterated_commutator_exponents(p)
            .iter()
            .enumerate()
            .fold(g.identity(), |acc, (k, &e)| acc.mul(&a[k].pow(e as i64)));
        r.check(
            "[a_1, x; p-1] = prod a_(k+1)^((-1)^k C(p-1,k) - 1)",
            c == expected,
            json!(null),
        );
    }

    if let Some(f) = realization {
        let lat = f.lattice();
        let top = f.base();
        let same_shape = lat.order(top) as u64 == g.order()
            && Some(lat.class(top)) == class
            && lat.exponent(lat.center(top)) == ez;
        r.check(
            "realization lives on a group with the same order, class and exp Z",
            same_shape,
            json!({ "order": lat.order(top), "class": lat.class(top) }),
        );
        let op = f.op_subgroup()?;
        r.check(
            "O_p(F) = 1",
            lat.order(op) == 1,
            json!({ "order": lat.order(op) }),
        );
        // The maximal abelian subgroup `Q`, homocyclic of rank p.
        let q = lat.thompson(top);
        let o1 = lat.omega(q, 1);
        let inv = invariant_subgroup(f, q, lat.trivial(), o1);
        r.check(
            "Aut_F(Q) acts irreducibly on omega_1(Q)",
            inv.is_none(),
            json!({ "order_Q": lat.order(q), "order_omega_1": lat.order(o1) }),
        );
        if n >= 2 {
            let lower = lat.omega(q, n - 1);
            let inv = invariant_subgroup(f, q, lower, q);
            r.check(
                "Aut_F(Q) acts irreducibly on Q / omega_(n-1)(Q)",
                inv.is_none(),
                json!(null),
            );
        }
    }
    Ok(r.finish())
}

/// The non-saturated system on `C_p × C_p` generated by an automorphism of
/// order `p - 1` of one factor.
pub fn lopsided_system(p: u64, caps: &Caps) -> Result<FusionSystem> {
    use crate::catalog::{CatalogName, GroupSpec};
    let cp = GroupSpec::catalog(CatalogName::Cyclic, &[p]);
    let g = catalog::build(&GroupSpec::direct_product(vec![cp.clone(), cp]), caps)?;
    let whole = g.as_subgroup();
    let pg = PGroup::new(&whole, p, caps)?;
    let a = g.generators()[0].clone();
    let factor = g.closure(&[a.clone()], caps)?;
    let r = primitive_root(p).ok_or_else(|| Error::invalid("no primitive root"))?;
    let m = crate::morphism::GroupMorphism::from_generator_images(
        factor,
        whole,
        &[a.clone()],
        &[a.pow(r as i64)],
    )?;
    generate(&pg, pg.top(), &[GeneratorPart::Morphisms(vec![m])])
}

fn primitive_root(p: u64) -> Option<u64> {
    if p == 2 {
        return Some(1);
    }
    (2..p).find(|&r| {
        let mut x = 1;
        (1..p - 1).all(|_| {
            x = x * r % p;
            x != 1
        })
    })
}
