//! Closure properties, `O_p(F)`, `Z(F)`, the Alperin family, equality.

use std::collections::BTreeSet;

use super::{FusionSystem, Table};
use crate::error::{Error, Result};
use crate::lattice::NodeId;
use crate::table::Bits;

/// `Z(F)` computed two ways.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CenterRoutes {
    /// Largest `X ≤ Z(S)` with `C_F(X) = F`.
    pub by_centralizer: NodeId,
    /// Elements of `Z(S)` fixed by `Aut_F(Q)` for every `Q` in the Alperin
    /// family.
    pub by_fixed_points: NodeId,
}

impl FusionSystem {
    pub fn is_weakly_closed(&self, w: NodeId) -> bool {
        self.class_members(w) == [w]
    }

    pub fn is_strongly_closed(&self, w: NodeId) -> bool {
        let lat = self.lattice();
        let wb = &lat.node(w).bits;
        lat.subgroups_of(w).all(|u| {
            self.class_members(u)
                .iter()
                .all(|&m| lat.node(m).bits.is_subset(wb))
        })
    }

    /// `F = N_F(W)`.
    pub fn is_normal(&self, w: NodeId) -> bool {
        if self.lattice().normalizer_in(self.base, w) != self.base || !self.is_strongly_closed(w) {
            return false;
        }
        match self.normalizer_system(w) {
            Ok(n) => self.equals(&n),
            Err(_) => false,
        }
    }

    /// Every subgroup normal in F, ascending.
    pub fn normal_subgroups(&self) -> Vec<NodeId> {
        self.nodes().filter(|&w| self.is_normal(w)).collect()
    }

    /// `O_p(F)`, checked to contain every normal subgroup.
    pub fn op_subgroup(&self) -> Result<NodeId> {
        let lat = self.lattice();
        let normal = self.normal_subgroups();
        let top = *normal.last().expect("the trivial subgroup is normal");
        if normal.iter().all(|&w| lat.is_subgroup(w, top)) {
            Ok(top)
        } else {
            Err(Error::Precondition(
                "normal subgroups have no largest member; the system is not saturated".into(),
            ))
        }
    }

    pub fn center_routes(&self) -> Result<CenterRoutes> {
        let lat = self.lattice();
        let z = lat.center(self.base);
        let mut by_centralizer = lat.trivial();
        for x in lat.subgroups_of(z).collect::<Vec<_>>().into_iter().rev() {
            if self.centralizer_system(x).map(|c| self.equals(&c)).unwrap_or(false) {
                by_centralizer = x;
                break;
            }
        }
        let family = self.alperin_family()?;
        let tg = self.pg.table();
        let fixed = lat.node(z).elems.iter().copied().filter(|&x| {
            family.iter().all(|&q| match lat.node(q).position(x) {
                Some(i) => self.aut_generators(q).iter().all(|a| a[i] == x),
                None => true,
            })
        });
        let fixed_bits = Bits::from_iter(tg.order(), fixed);
        let by_fixed_points = lat.id(&tg.closure(&fixed_bits.to_vec()));
        Ok(CenterRoutes {
            by_centralizer,
            by_fixed_points,
        })
    }

    /// `Z(F)`; both routes must agree.
    pub fn center_of_fusion(&self) -> Result<NodeId> {
        let r = self.center_routes()?;
        if r.by_centralizer == r.by_fixed_points {
            Ok(r.by_centralizer)
        } else {
            Err(Error::Precondition(
                "the two computations of Z(F) disagree; the system is not saturated".into(),
            ))
        }
    }

    /// F-centric, F-radical classes, one fully normalized representative
    /// each (largest normalizer, then smallest lattice position).
    pub fn alperin_family(&self) -> Result<Vec<NodeId>> {
        let mut out = Vec::new();
        for class in self.classes() {
            let rep = class.rep;
            if !self.is_centric(rep) || !self.is_radical(rep)? {
                continue;
            }
            let best = class
                .members
                .iter()
                .copied()
                .max_by(|&a, &b| {
                    self.normalizer_order(a)
                        .cmp(&self.normalizer_order(b))
                        .then(b.cmp(&a))
                })
                .unwrap();
            out.push(best);
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Hom-set equality over all pairs of subgroups, decided from the class
    /// structure. `Aut` on the Alperin family is compared first as a screen.
    pub fn equals(&self, other: &FusionSystem) -> bool {
        if !self.pg.same(&other.pg) || self.base != other.base {
            return false;
        }
        let mut screen: BTreeSet<NodeId> = BTreeSet::new();
        for f in [self, other] {
            if let Ok(fam) = f.alperin_family() {
                screen.extend(fam);
            }
        }
        if screen
            .iter()
            .any(|&q| self.aut_tables(q) != other.aut_tables(q))
        {
            return false;
        }
        let structural = self.equals_structural(other);
        if cfg!(debug_assertions) && self.pg.order(self.base) <= 128 {
            assert_eq!(structural, self.equals_exhaustive(other));
        }
        structural
    }

    fn equals_structural(&self, other: &FusionSystem) -> bool {
        if self.nodes().any(|q| self.class_members(q) != other.class_members(q)) {
            return false;
        }
        self.classes().iter().all(|class| {
            let r = class.rep;
            self.aut_tables(r) == other.aut_tables(r)
                && class.members.iter().all(|&m| {
                    let t = other.some_iso(r, m).expect("same class");
                    self.contains_iso(r, m, &t)
                })
        })
    }

    /// Compares `Hom_F(Q, R)` for every pair directly.
    pub fn equals_exhaustive(&self, other: &FusionSystem) -> bool {
        if !self.pg.same(&other.pg) || self.base != other.base {
            return false;
        }
        let nodes: Vec<NodeId> = self.nodes().collect();
        nodes.iter().all(|&q| {
            nodes
                .iter()
                .all(|&r| self.hom_uncached(q, r) == other.hom_uncached(q, r))
        })
    }

    fn hom_uncached(&self, q: NodeId, r: NodeId) -> Vec<Table> {
        let lat = self.lattice();
        let mut v: Vec<Table> = self
            .class_members(q)
            .iter()
            .filter(|&&m| lat.is_subgroup(m, r))
            .flat_map(|&m| self.iso_tables(q, m))
            .collect();
        v.sort();
        v
    }
}
