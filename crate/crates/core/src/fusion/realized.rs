//! `F_P(G)`: classes are the traces on `P` of G-conjugacy classes of
//! subgroups, automorphism groups are `N_G(Q)/C_G(Q)` acting on `Q`.

use std::collections::HashMap;
use std::sync::Mutex;

use super::{AutSet, Backend, Class, FusionSystem, PGroup, Table};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::group::{Caps, Group, Subgroup};
use crate::structure::{p_part, subgroup_orbit};
use crate::table::Ix;

/// The fusion system of `G` on its Sylow p-subgroup `P`.
pub fn fusion_of_group(g: &Group, p_sub: &Subgroup, p: u64, caps: &Caps) -> Result<FusionSystem> {
    let expected = p_part(g.order(), p.max(2));
    if !p_sub.elements().iter().all(|x| g.contains(x)) || p_sub.order() != expected {
        return Err(Error::NotSylow {
            order: p_sub.order(),
            p,
            expected,
        });
    }
    let pg = PGroup::new(p_sub, p, caps)?;
    let tg = pg.table();
    let lat = pg.lattice();
    let n = lat.len();
    let mut class_of = vec![usize::MAX; n];
    let mut iso: Vec<Option<Table>> = vec![None; n];
    let mut iso_inv: Vec<Option<Table>> = vec![None; n];
    let mut witness: Vec<Option<Element>> = vec![None; n];
    let mut classes: Vec<Class> = Vec::new();

    for q in 0..n {
        if class_of[q] != usize::MAX {
            continue;
        }
        let qsub = pg.sub(q);
        let orbit = subgroup_orbit(g, &qsub, caps)?;
        let elems = &lat.node(q).elems;
        let conj = |w: &Element| -> Option<Table> {
            elems
                .iter()
                .map(|&x| tg.index_of(&tg.element(x).conj(w)))
                .collect::<Option<Vec<Ix>>>()
                .map(Into::into)
        };
        let mut members = Vec::new();
        for (sub, w) in &orbit.points {
            let Some(bits) = tg.to_bits(sub) else { continue };
            let m = lat.id(&bits);
            let t = conj(w).expect("conjugate lies in P");
            iso_inv[m] = Some(pg.invert(&t, q, m));
            iso[m] = Some(t);
            witness[m] = Some(w.clone());
            class_of[m] = classes.len();
            members.push(m);
        }
        let mut seen: HashMap<Table, Element> = HashMap::new();
        for s in orbit.stabilizer_generators() {
            let t = conj(&s).expect("normalizer element preserves Q");
            if t.as_ref() != elems.as_slice() {
                seen.entry(t).or_insert(s);
            }
        }
        let mut gens: Vec<(Table, Element)> = seen.into_iter().collect();
        gens.sort();
        // Keep only generators that enlarge the group built so far.
        let mut kept_t: Vec<Table> = Vec::new();
        let mut kept_w: Vec<Element> = Vec::new();
        let mut aut = AutSet::close(&pg, q, vec![], Some((g.identity(), vec![])));
        for (t, w) in gens {
            if aut.contains(&t) {
                continue;
            }
            kept_t.push(t);
            kept_w.push(w);
            aut = AutSet::close(&pg, q, kept_t.clone(), Some((g.identity(), kept_w.clone())));
        }
        members.sort_unstable();
        classes.push(Class {
            rep: q,
            members,
            aut,
        });
    }
    let top = pg.top();
    Ok(FusionSystem {
        pg,
        base: top,
        class_of,
        iso,
        iso_inv,
        witness,
        classes,
        backend: Backend::GroupRealized(g.clone()),
        cache: Mutex::new(HashMap::new()),
    })
}
