//! Exhaustive subgroup lattice of a tabulated p-group.
//!
//! Built bottom-up by order: every subgroup of order `p^{k+1}` contains a
//! normal subgroup of index `p`, so extending each subgroup `H` of order
//! `p^k` by the elements `g ∈ N(H) \ H` with `g^p ∈ H` reaches all of them.
//! Each layer is deduplicated by bitset and nodes are finally sorted by
//! (order, element list) so numbering is canonical.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::table::{Bits, Ix, TableGroup};

/// Index of a subgroup in a [`Lattice`].
pub type NodeId = usize;

#[derive(Debug, Clone)]
pub struct Node {
    pub bits: Bits,
    /// Sorted element indices; position in this list aligns morphism tables.
    pub elems: Vec<Ix>,
    pub gens: Vec<Ix>,
    /// Subgroups of index `p`.
    pub maximal: Vec<NodeId>,
    /// `N_P(Q)`.
    pub normalizer: NodeId,
    /// `C_P(Q)`.
    pub centralizer: NodeId,
}

impl Node {
    pub fn order(&self) -> usize {
        self.elems.len()
    }

    /// Position of an element in `elems`.
    #[inline]
    pub fn position(&self, x: Ix) -> Option<usize> {
        self.elems.binary_search(&x).ok()
    }
}

#[derive(Debug)]
pub struct Lattice {
    group: Arc<TableGroup>,
    p: u32,
    nodes: Vec<Node>,
    lookup: HashMap<Bits, NodeId>,
}

struct Raw {
    bits: Bits,
    gens: Vec<Ix>,
    maximal: Vec<usize>,
}

impl Lattice {
    pub fn build(group: Arc<TableGroup>) -> Result<Lattice> {
        let n = group.order();
        let p = match group.prime() {
            Some(p) => p,
            None if n == 1 => 1,
            None => {
                return Err(Error::NotPGroup {
                    order: n as u64,
                    p: 0,
                })
            }
        };
        let mut raws: Vec<Raw> = vec![Raw {
            bits: group.trivial(),
            gens: vec![],
            maximal: vec![],
        }];
        let mut layer: Vec<usize> = vec![0];
        while !layer.is_empty() && raws[layer[0]].bits.count() < n {
            // Each subgroup of the layer proposes its index-p overgroups.
            let proposals: Vec<Vec<(Bits, Ix)>> = layer
                .par_iter()
                .map(|&hid| extensions(&group, p, &raws[hid].bits, &raws[hid].gens))
                .collect();
            let mut next_lookup: HashMap<Bits, usize> = HashMap::new();
            let mut next_layer = Vec::new();
            for (&hid, props) in layer.iter().zip(proposals) {
                for (bits, g) in props {
                    let id = match next_lookup.get(&bits) {
                        Some(&id) => id,
                        None => {
                            let mut gens = raws[hid].gens.clone();
                            gens.push(g);
                            raws.push(Raw {
                                bits: bits.clone(),
                                gens,
                                maximal: vec![],
                            });
                            let id = raws.len() - 1;
                            next_lookup.insert(bits, id);
                            next_layer.push(id);
                            id
                        }
                    };
                    raws[id].maximal.push(hid);
                }
            }
            layer = next_layer;
        }

        // Canonical numbering.
        let elems: Vec<Vec<Ix>> = raws.iter().map(|r| r.bits.to_vec()).collect();
        let mut order: Vec<usize> = (0..raws.len()).collect();
        order.sort_by(|&a, &b| {
            elems[a]
                .len()
                .cmp(&elems[b].len())
                .then_with(|| elems[a].cmp(&elems[b]))
        });
        let mut new_id = vec![0; raws.len()];
        for (new, &old) in order.iter().enumerate() {
            new_id[old] = new;
        }
        let lookup: HashMap<Bits, NodeId> = order
            .iter()
            .enumerate()
            .map(|(new, &old)| (raws[old].bits.clone(), new))
            .collect();
        let all = group.all();
        let nodes: Vec<Node> = order
            .par_iter()
            .map(|&old| {
                let r = &raws[old];
                let mut maximal: Vec<NodeId> = r.maximal.iter().map(|&m| new_id[m]).collect();
                maximal.sort_unstable();
                maximal.dedup();
                let norm = group.normalizer(&all, &r.bits, &r.gens);
                let cent = group.centralizer(&all, &r.gens);
                Node {
                    bits: r.bits.clone(),
                    elems: elems[old].clone(),
                    gens: r.gens.clone(),
                    maximal,
                    normalizer: lookup[&norm],
                    centralizer: lookup[&cent],
                }
            })
            .collect();
        Ok(Lattice {
            group,
            p,
            nodes,
            lookup,
        })
    }

    pub fn group(&self) -> &Arc<TableGroup> {
        &self.group
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn trivial(&self) -> NodeId {
        0
    }

    pub fn top(&self) -> NodeId {
        self.nodes.len() - 1
    }

    pub fn find(&self, bits: &Bits) -> Option<NodeId> {
        self.lookup.get(bits).copied()
    }

    /// Node for a set known to be a subgroup.
    pub fn id(&self, bits: &Bits) -> NodeId {
        *self
            .lookup
            .get(bits)
            .expect("set is a subgroup of the lattice group")
    }

    pub fn order(&self, id: NodeId) -> usize {
        self.nodes[id].elems.len()
    }

    pub fn is_subgroup(&self, a: NodeId, b: NodeId) -> bool {
        self.nodes[a].bits.is_subset(&self.nodes[b].bits)
    }

    /// All subgroups of `id`, in lattice order.
    pub fn subgroups_of(&self, id: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        let bits = &self.nodes[id].bits;
        let max = self.nodes[id].elems.len();
        (0..=id).filter(move |&j| self.nodes[j].elems.len() <= max && self.nodes[j].bits.is_subset(bits))
    }

    /// All subgroups containing `id`, in lattice order.
    pub fn overgroups_of(&self, id: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        let bits = &self.nodes[id].bits;
        (id..self.nodes.len()).filter(move |&j| bits.is_subset(&self.nodes[j].bits))
    }

    pub fn meet(&self, a: NodeId, b: NodeId) -> NodeId {
        self.id(&self.nodes[a].bits.and(&self.nodes[b].bits))
    }

    pub fn join(&self, a: NodeId, b: NodeId) -> NodeId {
        let mut gens = self.nodes[a].gens.clone();
        gens.extend_from_slice(&self.nodes[b].gens);
        self.id(&self.group.closure(&gens))
    }

    /// `Q^g` for `g ∈ P`.
    pub fn conjugate(&self, id: NodeId, g: Ix) -> NodeId {
        let bits = Bits::from_iter(
            self.group.order(),
            self.nodes[id].elems.iter().map(|&x| self.group.conj(x, g)),
        );
        self.id(&bits)
    }

    pub fn is_normal(&self, id: NodeId) -> bool {
        self.nodes[id].normalizer == self.top()
    }

    pub fn center(&self, id: NodeId) -> NodeId {
        let node = &self.nodes[id];
        self.id(&self.group.centralizer(&node.bits, &node.gens))
    }

    /// `C_S(Q)` for an arbitrary ambient node `S`.
    pub fn centralizer_in(&self, ambient: NodeId, id: NodeId) -> NodeId {
        self.meet(ambient, self.nodes[id].centralizer)
    }

    /// `N_S(Q)` for an arbitrary ambient node `S`.
    pub fn normalizer_in(&self, ambient: NodeId, id: NodeId) -> NodeId {
        self.meet(ambient, self.nodes[id].normalizer)
    }

    pub fn agemo(&self, id: NodeId, k: u32) -> NodeId {
        self.id(&self.group.agemo(&self.nodes[id].bits, self.p, k))
    }

    pub fn omega(&self, id: NodeId, k: u32) -> NodeId {
        self.id(&self.group.omega(&self.nodes[id].bits, self.p, k))
    }

    pub fn is_abelian(&self, id: NodeId) -> bool {
        let g = &self.nodes[id].gens;
        g.iter()
            .all(|&a| g.iter().all(|&b| self.group.mul(a, b) == self.group.mul(b, a)))
    }

    /// Thompson subgroup of `id`: generated by its abelian subgroups of
    /// maximal order.
    pub fn thompson(&self, id: NodeId) -> NodeId {
        let abelian: Vec<NodeId> = self
            .subgroups_of(id)
            .filter(|&j| self.is_abelian(j))
            .collect();
        let max = abelian.iter().map(|&j| self.order(j)).max().unwrap_or(1);
        let gens: Vec<Ix> = abelian
            .iter()
            .filter(|&&j| self.order(j) == max)
            .flat_map(|&j| self.nodes[j].gens.iter().copied())
            .collect();
        self.id(&self.group.closure(&gens))
    }

    /// Nilpotence class of a subgroup.
    pub fn class(&self, id: NodeId) -> u32 {
        self.group
            .nilpotency_class(&self.nodes[id].bits)
            .expect("p-groups are nilpotent")
    }

    pub fn exponent(&self, id: NodeId) -> u64 {
        self.group.exponent(&self.nodes[id].bits)
    }
}

fn extensions(group: &TableGroup, p: u32, h: &Bits, gens: &[Ix]) -> Vec<(Bits, Ix)> {
    let n = group.order();
    let norm = group.normalizer(&group.all(), h, gens);
    let mut covered = h.clone();
    let mut out = Vec::new();
    let hv: Vec<Ix> = h.to_vec();
    for g in norm.iter() {
        if covered.contains(g) || !h.contains(group.pow(g, p as u64)) {
            continue;
        }
        let mut k = Bits::empty(n);
        let mut gi = 0 as Ix;
        for _ in 0..p {
            for &x in &hv {
                k.insert(group.mul(x, gi));
            }
            gi = group.mul(gi, g);
        }
        covered = covered.or(&k);
        out.push((k, g));
    }
    out
}
