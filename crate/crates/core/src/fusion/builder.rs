//! Closure of a set of isomorphisms into a fusion system.
//!
//! Starting from singleton classes, every added isomorphism `ψ: A → B`
//! either already lies in the current category (and is dropped together
//! with its restrictions) or merges the classes of `A` and `B`, or enlarges
//! `Aut_F(rep)`. Restrictions of each new isomorphism to the maximal
//! subgroups of `A` are queued, so the result is closed under composition,
//! inverses and restriction.

use std::collections::VecDeque;
use std::sync::Mutex;

use super::{AutSet, Backend, Class, FusionSystem, PGroup, Table};
use crate::error::{Error, Result};
use crate::lattice::NodeId;
use crate::morphism::GroupMorphism;

struct BClass {
    rep: NodeId,
    members: Vec<NodeId>,
    aut: AutSet,
}

pub(crate) struct Builder {
    pg: PGroup,
    base: NodeId,
    class_of: Vec<usize>,
    classes: Vec<Option<BClass>>,
    iso: Vec<Option<Table>>,
    iso_inv: Vec<Option<Table>>,
    queue: VecDeque<(NodeId, NodeId, Table)>,
}

impl Builder {
    /// The fusion system `F_S(S)` is the starting point.
    pub(crate) fn new(pg: &PGroup, base: NodeId) -> Builder {
        let n = pg.lattice().len();
        let mut b = Builder {
            pg: pg.clone(),
            base,
            class_of: vec![usize::MAX; n],
            classes: Vec::new(),
            iso: vec![None; n],
            iso_inv: vec![None; n],
            queue: VecDeque::new(),
        };
        for q in pg.lattice().subgroups_of(base) {
            b.class_of[q] = b.classes.len();
            b.classes.push(Some(BClass {
                rep: q,
                members: vec![q],
                aut: AutSet::trivial(pg, q),
            }));
            b.iso[q] = Some(pg.identity_table(q));
            b.iso_inv[q] = Some(pg.identity_table(q));
        }
        for &x in &pg.lattice().node(base).gens.clone() {
            let t = pg.conj_table(base, x);
            b.queue.push_back((base, base, t));
        }
        b
    }

    pub(crate) fn contains_node(&self, q: NodeId) -> bool {
        self.class_of[q] != usize::MAX
    }

    /// Queues an isomorphism `a → b`, given as a table on `a`.
    pub(crate) fn add(&mut self, a: NodeId, t: Table) -> Result<()> {
        let b = self.pg.image_node(&t);
        if !self.contains_node(a) || !self.contains_node(b) {
            return Err(Error::invalid(
                "generating morphism does not live on subgroups of the underlying group",
            ));
        }
        self.queue.push_back((a, b, t));
        Ok(())
    }

    fn run(&mut self) {
        while let Some((a, b, t)) = self.queue.pop_front() {
            if !self.absorb(a, b, &t) {
                continue;
            }
            let maximal = self.pg.lattice().node(a).maximal.clone();
            for m in maximal {
                let r = self.pg.restrict(&t, a, m);
                let mb = self.pg.image_node(&r);
                self.queue.push_back((m, mb, r));
            }
        }
    }

    /// Returns false if `t` already lies in the category.
    fn absorb(&mut self, a: NodeId, b: NodeId, t: &[u16]) -> bool {
        let pg = &self.pg;
        let (ca, cb) = (self.class_of[a], self.class_of[b]);
        let rep_a = self.classes[ca].as_ref().unwrap().rep;
        let rep_b = self.classes[cb].as_ref().unwrap().rep;
        let through = pg.compose(t, a, self.iso[a].as_ref().unwrap());
        let theta = pg.compose(self.iso_inv[b].as_ref().unwrap(), b, &through);
        if ca == cb {
            let class = self.classes[ca].as_mut().unwrap();
            if class.aut.contains(&theta) {
                return false;
            }
            let mut gens = class.aut.gens().to_vec();
            gens.push(theta);
            class.aut = AutSet::close(pg, rep_a, gens, None);
            return true;
        }
        let theta_inv = pg.invert(&theta, rep_a, rep_b);
        let size_a = self.classes[ca].as_ref().unwrap().members.len();
        let size_b = self.classes[cb].as_ref().unwrap().members.len();
        // Absorb the smaller class into the larger one.
        let (keep, gone, keep_rep, gone_rep, fwd, back) = if size_b >= size_a {
            (cb, ca, rep_b, rep_a, theta, theta_inv)
        } else {
            (ca, cb, rep_a, rep_b, theta_inv, theta)
        };
        // fwd: gone_rep → keep_rep, back: keep_rep → gone_rep
        let old = self.classes[gone].take().unwrap();
        for &m in &old.members {
            let iso = pg.compose(self.iso[m].as_ref().unwrap(), gone_rep, &back);
            let iso_inv = pg.compose(&fwd, gone_rep, self.iso_inv[m].as_ref().unwrap());
            self.iso[m] = Some(iso);
            self.iso_inv[m] = Some(iso_inv);
            self.class_of[m] = keep;
        }
        let moved: Vec<Table> = old
            .aut
            .gens()
            .iter()
            .map(|g| pg.compose(&fwd, gone_rep, &pg.compose(g, gone_rep, &back)))
            .collect();
        let class = self.classes[keep].as_mut().unwrap();
        class.members.extend(old.members);
        let mut gens = class.aut.gens().to_vec();
        for g in moved {
            if !class.aut.contains(&g) {
                gens.push(g);
            }
        }
        if gens.len() != class.aut.gens().len() {
            class.aut = AutSet::close(pg, keep_rep, gens, None);
        }
        true
    }

    pub(crate) fn finish(mut self) -> FusionSystem {
        self.run();
        let mut remap = vec![usize::MAX; self.classes.len()];
        let mut classes: Vec<Class> = Vec::new();
        // Number classes by their smallest member for a stable layout.
        let mut order: Vec<usize> = (0..self.classes.len())
            .filter(|&c| self.classes[c].is_some())
            .collect();
        order.sort_by_key(|&c| self.classes[c].as_ref().unwrap().members.iter().min().copied());
        for c in order {
            let bc = self.classes[c].take().unwrap();
            remap[c] = classes.len();
            let mut members = bc.members;
            members.sort_unstable();
            classes.push(Class {
                rep: bc.rep,
                members,
                aut: bc.aut,
            });
        }
        let class_of = self
            .class_of
            .iter()
            .map(|&c| if c == usize::MAX { c } else { remap[c] })
            .collect();
        let n = self.iso.len();
        FusionSystem {
            pg: self.pg,
            base: self.base,
            class_of,
            iso: self.iso,
            iso_inv: self.iso_inv,
            witness: vec![None; n],
            classes,
            backend: Backend::Generated,
            cache: Mutex::new(Default::default()),
        }
    }
}

/// Inputs to [`generate`].
#[derive(Clone, Debug)]
pub enum GeneratorPart<'a> {
    /// All morphisms of a fusion system on a subgroup of the target group.
    System(&'a FusionSystem),
    /// Explicit morphisms between subgroups of the target group.
    Morphisms(Vec<GroupMorphism>),
    /// Explicit morphisms given as lattice tables: `(source node, table)`.
    Tables(Vec<(NodeId, Table)>),
}

/// The smallest fusion system on the subgroup `base` of `pg` containing
/// every part.
pub fn generate(pg: &PGroup, base: NodeId, parts: &[GeneratorPart<'_>]) -> Result<FusionSystem> {
    let mut b = Builder::new(pg, base);
    for part in parts {
        match part {
            GeneratorPart::System(f) => {
                if !f.pgroup().same(pg) {
                    return Err(Error::invalid("fusion system lives on a different p-group"));
                }
                for class in f.classes() {
                    let rep = class.rep;
                    for &m in &class.members {
                        if m != rep {
                            b.add(rep, f.some_iso(rep, m).unwrap())?;
                        }
                    }
                    for g in f.aut_generators(rep) {
                        b.add(rep, g)?;
                    }
                }
            }
            GeneratorPart::Morphisms(ms) => {
                for m in ms {
                    let (src, _, t) = pg.from_morphism(m)?;
                    b.add(src, t)?;
                }
            }
            GeneratorPart::Tables(ts) => {
                for (src, t) in ts {
                    b.add(*src, t.clone())?;
                }
            }
        }
    }
    Ok(b.finish())
}
