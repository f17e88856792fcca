//! `N_F(Q)`, `C_F(Q)` and `N_P(Q)C_F(Q)`, generated by the restrictions of
//! the F-isomorphisms between overgroups of `Q` that satisfy the defining
//! condition on `Q`. Extensions are searched in F itself.

use std::collections::HashSet;

use super::builder::Builder;
use super::{FusionSystem, Table};
use crate::error::{Error, Result};
use crate::lattice::NodeId;

enum Kind {
    Normalizer,
    Centralizer,
    NpCf,
}

impl FusionSystem {
    /// `N_F(Q)` on `N_S(Q)`; `Q` must be fully normalized.
    pub fn normalizer_system(&self, q: NodeId) -> Result<FusionSystem> {
        self.check(q)?;
        if !self.is_fully_normalized(q) {
            return Err(Error::Precondition(format!(
                "subgroup {} of order {} is not fully normalized",
                self.pg.sub(q).key(),
                self.pg.order(q)
            )));
        }
        Ok(self.subsystem(q, Kind::Normalizer))
    }

    /// `C_F(Q)` on `C_S(Q)`; `Q` must be fully centralized.
    pub fn centralizer_system(&self, q: NodeId) -> Result<FusionSystem> {
        self.check(q)?;
        self.require_fully_centralized(q)?;
        Ok(self.subsystem(q, Kind::Centralizer))
    }

    /// `N_S(Q)C_F(Q)` on `N_S(Q)`; `Q` must be fully centralized.
    pub fn np_cf(&self, q: NodeId) -> Result<FusionSystem> {
        self.check(q)?;
        self.require_fully_centralized(q)?;
        Ok(self.subsystem(q, Kind::NpCf))
    }

    fn require_fully_centralized(&self, q: NodeId) -> Result<()> {
        if self.is_fully_centralized(q) {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "subgroup {} of order {} is not fully centralized",
                self.pg.sub(q).key(),
                self.pg.order(q)
            )))
        }
    }

    fn subsystem(&self, q: NodeId, kind: Kind) -> FusionSystem {
        let lat = self.lattice();
        let pg = &self.pg;
        let norm = lat.normalizer_in(self.base, q);
        let cent = lat.centralizer_in(self.base, q);
        let (base, ceiling) = match kind {
            Kind::Normalizer | Kind::NpCf => (norm, norm),
            Kind::Centralizer => (cent, lat.join(q, cent)),
        };
        let qbits = &lat.node(q).bits;
        let qpos = |t: NodeId| -> Vec<usize> {
            lat.node(q).elems.iter().map(|&x| pg.pos(t, x)).collect()
        };
        let inner_q: HashSet<Table> = match kind {
            Kind::NpCf => pg.inner_auts(self.base, q).into_iter().collect(),
            _ => HashSet::new(),
        };
        let identity_q = pg.identity_table(q);
        let mut b = Builder::new(pg, base);
        let domains: Vec<NodeId> = lat
            .overgroups_of(q)
            .filter(|&t| lat.is_subgroup(t, ceiling))
            .collect();
        for &t1 in &domains {
            let pos1 = qpos(t1);
            let cand: Vec<NodeId> = self
                .class(t1)
                .members
                .iter()
                .copied()
                .filter(|&m| lat.is_subgroup(q, m) && lat.is_subgroup(m, ceiling))
                .collect();
            for &t2 in &cand {
                for a in self.class(t1).aut.elems() {
                    let psi = self.transport(t1, t2, a);
                    let on_q: Table = pos1.iter().map(|&i| psi[i]).collect();
                    let ok = match kind {
                        Kind::Normalizer => pg.image_bits(&on_q) == *qbits,
                        Kind::Centralizer => on_q == identity_q,
                        Kind::NpCf => {
                            pg.image_bits(&on_q) == *qbits && inner_q.contains(&on_q)
                        }
                    };
                    if !ok {
                        continue;
                    }
                    match kind {
                        Kind::Centralizer => {
                            let d = lat.meet(t1, cent);
                            let r = pg.restrict(&psi, t1, d);
                            b.add(d, r).expect("restriction lies in C_S(Q)");
                        }
                        _ => b.add(t1, psi).expect("isomorphism lies in N_S(Q)"),
                    }
                }
            }
        }
        b.finish()
    }
}
