//! Saturation: the Sylow axiom on `Aut_F(S)` and the extension axiom for
//! isomorphisms onto fully normalized subgroups.

use std::collections::HashSet;

use serde::Serialize;

use super::{FusionSystem, Table};
use crate::lattice::NodeId;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SaturationMode {
    /// One source subgroup per S-conjugacy class.
    Reduced,
    /// Every source subgroup.
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomOutcome {
    pub holds: bool,
    pub detail: String,
}

/// An isomorphism onto a fully normalized subgroup with no extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionFailure {
    pub source: NodeId,
    pub target: NodeId,
    pub phi: Table,
    pub n_phi: NodeId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassDetail {
    pub representative: NodeId,
    pub order: usize,
    pub members: usize,
    pub fully_normalized: usize,
    pub isomorphisms_checked: usize,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct SaturationReport {
    pub sylow_axiom: AxiomOutcome,
    pub extension_axiom: AxiomOutcome,
    pub extension_failure: Option<ExtensionFailure>,
    pub classes: Vec<ClassDetail>,
}

impl SaturationReport {
    pub fn saturated(&self) -> bool {
        self.sylow_axiom.holds && self.extension_axiom.holds
    }
}

impl FusionSystem {
    pub fn check_saturation(&self) -> SaturationReport {
        self.check_saturation_with(SaturationMode::Reduced)
    }

    pub fn check_saturation_with(&self, mode: SaturationMode) -> SaturationReport {
        let p = self.prime();
        let base = self.base();
        let lat = self.lattice();
        let aut_order = self.aut_order(base) as u64;
        let inner = (self.pgroup().order(base) / self.pgroup().order(lat.center(base))) as u64;
        let index = aut_order / inner;
        let sylow_axiom = AxiomOutcome {
            holds: aut_order % inner == 0 && (p < 2 || index % p != 0),
            detail: format!("|Aut_F(S)| = {aut_order}, |Aut_S(S)| = {inner}"),
        };

        let mut classes = Vec::new();
        let mut failure = None;
        for class in self.classes() {
            let rep = class.rep;
            let best = class
                .members
                .iter()
                .map(|&m| self.normalizer_order(m))
                .max()
                .unwrap();
            let targets: Vec<NodeId> = class
                .members
                .iter()
                .copied()
                .filter(|&m| self.normalizer_order(m) == best)
                .collect();
            let (sources, targets) = match mode {
                SaturationMode::Exhaustive => (class.members.clone(), targets),
                SaturationMode::Reduced => {
                    (self.s_class_reps(&class.members), self.s_class_reps(&targets))
                }
            };
            let mut checked = 0;
            let mut holds = true;
            'targets: for &t in &targets {
                let allowed: HashSet<Table> = {
                    let n = lat.normalizer_in(base, t);
                    lat.node(n)
                        .elems
                        .iter()
                        .map(|&y| self.pgroup().conj_left_table(t, y))
                        .collect()
                };
                for &s in &sources {
                    let mut covered: HashSet<Table> = HashSet::new();
                    for phi in self.iso_tables(s, t) {
                        if mode == SaturationMode::Reduced {
                            if covered.contains(&phi) {
                                continue;
                            }
                            self.double_coset(s, t, &phi, &mut covered);
                        }
                        checked += 1;
                        let n = self.n_phi_with(s, t, &phi, &allowed);
                        if self.find_extension(s, &phi, n).is_none() {
                            holds = false;
                            if failure.is_none() {
                                failure = Some(ExtensionFailure {
                                    source: s,
                                    target: t,
                                    phi,
                                    n_phi: n,
                                });
                            }
                            break 'targets;
                        }
                    }
                }
            }
            classes.push(ClassDetail {
                representative: rep,
                order: self.pgroup().order(rep),
                members: class.members.len(),
                fully_normalized: targets.len(),
                isomorphisms_checked: checked,
                holds,
            });
        }
        let extension_axiom = AxiomOutcome {
            holds: failure.is_none(),
            detail: match &failure {
                None => format!("{} classes checked", classes.len()),
                Some(f) => format!(
                    "isomorphism from a subgroup of order {} onto a fully normalized subgroup does not extend to N_phi of order {}",
                    self.pgroup().order(f.source),
                    self.pgroup().order(f.n_phi)
                ),
            },
        };
        SaturationReport {
            sylow_axiom,
            extension_axiom,
            extension_failure: failure,
            classes,
        }
    }

    /// Adds `Aut_S(t) ∘ φ ∘ Aut_S(s)` to `seen`. Extending one member of the
    /// double coset extends them all.
    fn double_coset(&self, s: NodeId, t: NodeId, phi: &[u16], seen: &mut HashSet<Table>) {
        let pg = self.pgroup();
        let lat = self.lattice();
        let base = self.base();
        let gens = |q: NodeId| -> Vec<Table> {
            lat.node(lat.normalizer_in(base, q))
                .gens
                .iter()
                .map(|&y| pg.conj_left_table(q, y))
                .collect()
        };
        let (left, right) = (gens(t), gens(s));
        let mut stack: Vec<Table> = vec![phi.into()];
        seen.insert(phi.into());
        while let Some(f) = stack.pop() {
            let next = left
                .iter()
                .map(|a| pg.compose(a, t, &f))
                .chain(right.iter().map(|b| pg.compose(&f, s, b)));
            for g in next.collect::<Vec<_>>() {
                if seen.insert(g.clone()) {
                    stack.push(g);
                }
            }
        }
    }

    /// One member of each S-conjugacy class among `members`.
    pub(crate) fn s_class_reps(&self, members: &[NodeId]) -> Vec<NodeId> {
        let lat = self.lattice();
        let gens = &lat.node(self.base()).gens;
        let mut covered: HashSet<NodeId> = HashSet::new();
        let mut reps = Vec::new();
        for &m in members {
            if covered.contains(&m) {
                continue;
            }
            reps.push(m);
            let mut stack = vec![m];
            covered.insert(m);
            while let Some(x) = stack.pop() {
                for &g in gens {
                    let y = lat.conjugate(x, g);
                    if covered.insert(y) {
                        stack.push(y);
                    }
                }
            }
        }
        reps
    }
}
