//! Corpus runner.
//!
//! A corpus document is a JSON array of entries:
//!
//! ```json
//! [{"id": "S4/2", "group": {"catalog": {"name": "sym", "params": [4]}},
//!   "prime": 2, "verifiers": ["theorem-norm", "alperin"]}]
//! ```
//!
//! Optional fields: `n` (defaults to the smallest `n` covering the class of
//! the Sylow subgroup), `caps`, and `sylow` (generators of the p-subgroup to
//! use instead of a computed Sylow subgroup).

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::*;
use crate::catalog::{CatalogName, CatalogSpec, GroupSpec};
use crate::fusion::fusion_of_group;
use crate::table::log_p;

pub const VERIFIER_IDS: &[&str] = &[
    "goldcent",
    "goldj",
    "equivnorm",
    "poschar",
    "theorem-norm",
    "theorem-main",
    "corollary-exponent",
    "theorem-maingrp",
    "theorem-fact",
    "frattini",
    "example-sharpness",
    "saturation",
    "alperin",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub group: GroupSpec,
    pub prime: u64,
    pub verifiers: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub caps: Option<Caps>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sylow: Option<Vec<ElementSpec>>,
}

impl CorpusEntry {
    pub fn new(id: &str, group: GroupSpec, prime: u64, verifiers: &[&str]) -> Self {
        CorpusEntry {
            id: Some(id.into()),
            group,
            prime,
            verifiers: verifiers.iter().map(|s| s.to_string()).collect(),
            n: None,
            caps: None,
            sylow: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CorpusConfig {
    pub entries: Vec<CorpusEntry>,
}

impl CorpusConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceError {
    pub instance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verifier: Option<String>,
    pub message: String,
    pub cap_exceeded: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub vacuous: usize,
    pub error: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusOutcome {
    pub reports: Vec<VerificationReport>,
    pub errors: Vec<InstanceError>,
    pub summary: Summary,
}

impl CorpusOutcome {
    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0 && self.summary.error == 0
    }
}

fn catalog_entry(id: &str, name: CatalogName, params: &[u64], p: u64, v: &[&str]) -> CorpusEntry {
    CorpusEntry::new(id, GroupSpec::catalog(name, params), p, v)
}

/// The standard corpus: six group-realized systems and four wreath products.
pub fn default_corpus() -> CorpusConfig {
    use CatalogName::*;
    let fusion: Vec<&str> = VERIFIER_IDS
        .iter()
        .copied()
        .filter(|&v| v != "example-sharpness")
        .collect();
    let mut entries = vec![
        catalog_entry("S4/2", Sym, &[4], 2, &fusion),
        catalog_entry("A5/2", Alt, &[5], 2, &fusion),
        catalog_entry("A6/2", Alt, &[6], 2, &fusion),
        catalog_entry("S6/2", Sym, &[6], 2, &fusion),
        CorpusEntry::new(
            "C4xS4/2",
            GroupSpec::direct_product(vec![
                GroupSpec::catalog(Cyclic, &[4]),
                GroupSpec::catalog(Sym, &[4]),
            ]),
            2,
            &fusion,
        ),
        catalog_entry("A9/3", Alt, &[9], 3, VERIFIER_IDS),
    ];
    for (p, n) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
        entries.push(catalog_entry(
            &format!("wreath({p},{n})"),
            WreathCyclic,
            &[p, n],
            p,
            &["goldcent", "goldj", "example-sharpness", "saturation", "theorem-norm"],
        ));
    }
    CorpusConfig { entries }
}

struct Instance {
    id: String,
    f: FusionSystem,
    n: u32,
    explicit_n: bool,
    wreath: Option<(u64, u32)>,
    caps: Caps,
}

fn build_instance(id: String, e: &CorpusEntry, default_caps: &Caps) -> Result<Instance> {
    let caps = e.caps.unwrap_or(*default_caps);
    let g = catalog::build(&e.group, &caps)?;
    let p_sub = match &e.sylow {
        Some(gens) => {
            let gens = gens
                .iter()
                .map(|s| s.to_element(g.kind()))
                .collect::<Result<Vec<_>>>()?;
            g.closure(&gens, &caps)?
        }
        None => structure::sylow(&g, e.prime, &caps)?,
    };
    let f = fusion_of_group(&g, &p_sub, e.prime, &caps)?;
    let lat = f.lattice();
    let class = lat.class(f.base());
    let n = e.n.unwrap_or_else(|| minimal_n(class, e.prime).max(1));
    let wreath = match &e.group {
        GroupSpec::Catalog(CatalogSpec {
            name: CatalogName::WreathCyclic,
            params,
            ..
        }) if params.len() == 2 => Some((params[0], params[1] as u32)),
        _ => None,
    };
    Ok(Instance {
        id,
        f,
        n,
        explicit_n: e.n.is_some(),
        wreath,
        caps,
    })
}

fn dispatch(id: &str, inst: &Instance) -> Result<Vec<VerificationReport>> {
    let f = &inst.f;
    let n = inst.n;
    let lat = f.lattice();
    Ok(match id {
        "goldcent" => vec![verify_goldcent(f.pgroup(), n)],
        "goldj" => vec![verify_goldj(f.pgroup())],
        "equivnorm" => vec![verify_equivnorm_all(f)?],
        "poschar" => [
            CharFunctor::Center,
            CharFunctor::AgemoCenter(1),
            CharFunctor::OmegaCenter(1),
        ]
        .iter()
        .map(|&w| verify_poschar(f, w))
        .collect::<Result<_>>()?,
        "theorem-norm" => {
            let top = f.base();
            let lo = minimal_n(lat.class(top), f.prime());
            let hi = log_p(lat.exponent(lat.center(top)), f.prime()).unwrap_or(0).max(lo);
            if inst.explicit_n {
                vec![verify_theorem_norm(f, n)]
            } else {
                (lo..=hi).map(|m| verify_theorem_norm(f, m)).collect()
            }
        }
        "theorem-main" => vec![verify_theorem_main(f, n)],
        "corollary-exponent" => vec![verify_corollary_exponent(f, n)],
        "theorem-maingrp" => vec![verify_theorem_maingrp(f, n)],
        "theorem-fact" => vec![verify_theorem_fact(f)?],
        "frattini" => f
            .normal_subgroups()
            .into_iter()
            .map(|q| verify_frattini(f, q))
            .collect::<Result<_>>()?,
        "example-sharpness" => vec![match inst.wreath {
            Some((p, m)) => verify_example_sharpness(p, m, None, &inst.caps)?,
            None => verify_example_sharpness(f.prime(), n, Some(f), &inst.caps)?,
        }],
        "saturation" => vec![verify_saturation(f)],
        "alperin" => vec![verify_alperin(f)?],
        other => return Err(Error::invalid(format!("unknown verifier {other:?}"))),
    })
}

/// Runs one verifier by id on a fusion system. Verifiers that range over a
/// family (every normal subgroup, several functors, several `n`) return one
/// report per member.
pub fn run_verifier(id: &str, f: &FusionSystem, n: Option<u32>, caps: &Caps) -> Result<Vec<VerificationReport>> {
    let class = f.lattice().class(f.base());
    let inst = Instance {
        id: String::new(),
        f: f.clone(),
        n: n.unwrap_or_else(|| minimal_n(class, f.prime()).max(1)),
        explicit_n: n.is_some(),
        wreath: None,
        caps: *caps,
    };
    dispatch(id, &inst)
}

struct EntryResult {
    reports: Vec<VerificationReport>,
    errors: Vec<InstanceError>,
}

fn error(instance: &str, verifier: Option<&str>, e: &Error) -> InstanceError {
    InstanceError {
        instance: instance.into(),
        verifier: verifier.map(String::from),
        message: e.to_string(),
        cap_exceeded: e.is_cap(),
    }
}

fn run_entry(index: usize, e: &CorpusEntry, caps: &Caps, timing: bool) -> EntryResult {
    let id = e.id.clone().unwrap_or_else(|| format!("instance-{index}"));
    let mut out = EntryResult {
        reports: vec![],
        errors: vec![],
    };
    if let Some(bad) = e.verifiers.iter().find(|v| !VERIFIER_IDS.contains(&v.as_str())) {
        out.errors.push(error(
            &id,
            Some(bad),
            &Error::invalid(format!("unknown verifier {bad:?}")),
        ));
        return out;
    }
    let inst = match build_instance(id.clone(), e, caps) {
        Ok(i) => i,
        Err(err) => {
            out.errors.push(error(&id, None, &err));
            return out;
        }
    };
    for v in &e.verifiers {
        let start = Instant::now();
        match dispatch(v, &inst) {
            Ok(reports) => {
                let ms = start.elapsed().as_millis() as u64;
                for mut r in reports {
                    r.instance = format!("{}: {}", inst.id, r.instance);
                    if timing {
                        r.timing_ms = Some(ms);
                    }
                    out.reports.push(r);
                }
            }
            Err(err) => out.errors.push(error(&id, Some(v), &err)),
        }
    }
    out
}

/// Runs every requested verifier on every entry, in parallel across entries.
/// Output order follows the configuration. Errors are reported per entry and
/// never abort the run. Timings are recorded only when requested, so that
/// repeated runs give identical output.
pub fn corpus_run(config: &CorpusConfig, caps: &Caps, timing: bool) -> CorpusOutcome {
    let results: Vec<EntryResult> = config
        .entries
        .par_iter()
        .enumerate()
        .map(|(i, e)| run_entry(i, e, caps, timing))
        .collect();
    let mut summary = Summary::default();
    let mut reports = Vec::new();
    let mut errors = Vec::new();
    for r in results {
        for rep in &r.reports {
            match rep.conclusion {
                Outcome::Pass => summary.pass += 1,
                Outcome::Fail => summary.fail += 1,
                Outcome::Vacuous => summary.vacuous += 1,
            }
        }
        summary.error += r.errors.len();
        reports.extend(r.reports);
        errors.extend(r.errors);
    }
    CorpusOutcome {
        reports,
        errors,
        summary,
    }
}
