//! Fusion systems on a p-group `P`.
//!
//! Every fusion system is stored as a partition of the subgroups of its
//! underlying group `S ≤ P` into isomorphism classes. Each class keeps a
//! representative `r`, the group `Aut_F(r)` as a closed set of tables, and
//! one isomorphism `r → M` for every member `M`. Then
//!
//! ```text
//! Hom_F(Q, R) = { iso_M ∘ α ∘ iso_Q⁻¹ : M ∈ class(Q), M ≤ R, α ∈ Aut_F(r) }.
//! ```
//!
//! Tables index the sorted element list of the source node of the subgroup
//! lattice of `P` and hold element indices of `P`.

mod builder;
mod closed;
mod realized;
mod saturation;
pub mod spec;
mod subsystem;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::element::{Element, Perm};
use crate::error::{Error, Result};
use crate::group::{Caps, Group, GroupKind, Subgroup};
use crate::lattice::{Lattice, NodeId};
use crate::morphism::GroupMorphism;
use crate::table::{prime_of_power, Bits, Ix, TableGroup};

pub use builder::{generate, GeneratorPart};
pub use closed::CenterRoutes;
pub use realized::fusion_of_group;
pub use saturation::{AxiomOutcome, ClassDetail, ExtensionFailure, SaturationMode, SaturationReport};

/// A morphism table: `t[i]` is the image of the `i`-th element of the source.
pub type Table = Box<[Ix]>;

/// A p-group with its tabulation and full subgroup lattice.
#[derive(Clone)]
pub struct PGroup(Arc<PGroupData>);

struct PGroupData {
    subgroup: Subgroup,
    prime: u64,
    lattice: Lattice,
    caps: Caps,
}

impl std::fmt::Debug for PGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PGroup(order {}, p = {})", self.0.subgroup.order(), self.0.prime)
    }
}

impl PGroup {
    pub fn new(p_group: &Subgroup, p: u64, caps: &Caps) -> Result<PGroup> {
        let order = p_group.order();
        if order > 1 && prime_of_power(order) != Some(p) {
            return Err(Error::NotPGroup { order, p });
        }
        if order > caps.max_lattice_order {
            return Err(Error::cap("subgroup lattice group order", caps.max_lattice_order));
        }
        let table = TableGroup::from_subgroup(p_group, caps.max_lattice_order)?;
        let lattice = Lattice::build(Arc::new(table))?;
        Ok(PGroup(Arc::new(PGroupData {
            subgroup: p_group.clone(),
            prime: p,
            lattice,
            caps: caps.clone(),
        })))
    }

    pub fn prime(&self) -> u64 {
        self.0.prime
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.0.subgroup
    }

    pub fn lattice(&self) -> &Lattice {
        &self.0.lattice
    }

    pub fn table(&self) -> &TableGroup {
        self.0.lattice.group()
    }

    pub fn caps(&self) -> &Caps {
        &self.0.caps
    }

    pub fn top(&self) -> NodeId {
        self.0.lattice.top()
    }

    pub fn same(&self, other: &PGroup) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.subgroup == other.0.subgroup
    }

    /// Lattice node of a subgroup of `P`.
    pub fn node(&self, q: &Subgroup) -> Result<NodeId> {
        let bits = self
            .table()
            .to_bits(q)
            .ok_or_else(|| Error::invalid("subgroup is not contained in P"))?;
        self.lattice()
            .find(&bits)
            .ok_or_else(|| Error::invalid("element set is not a subgroup of P"))
    }

    pub fn sub(&self, id: NodeId) -> Subgroup {
        self.table().to_subgroup(&self.lattice().node(id).bits)
    }

    pub fn order(&self, id: NodeId) -> usize {
        self.lattice().order(id)
    }

    fn elems(&self, id: NodeId) -> &[Ix] {
        &self.lattice().node(id).elems
    }

    #[inline]
    fn pos(&self, id: NodeId, x: Ix) -> usize {
        self.lattice()
            .node(id)
            .position(x)
            .expect("element lies in the node")
    }

    pub(crate) fn identity_table(&self, id: NodeId) -> Table {
        self.elems(id).into()
    }

    /// `g ∘ f` where `g` is a table on `g_src`.
    pub(crate) fn compose(&self, g: &[Ix], g_src: NodeId, f: &[Ix]) -> Table {
        f.iter().map(|&y| g[self.pos(g_src, y)]).collect()
    }

    /// Inverse of a bijection `src → dst`.
    pub(crate) fn invert(&self, f: &[Ix], src: NodeId, dst: NodeId) -> Table {
        let mut out = vec![0 as Ix; f.len()];
        for (i, &y) in f.iter().enumerate() {
            out[self.pos(dst, y)] = self.elems(src)[i];
        }
        out.into()
    }

    pub(crate) fn image_bits(&self, f: &[Ix]) -> Bits {
        Bits::from_iter(self.table().order(), f.iter().copied())
    }

    pub(crate) fn image_node(&self, f: &[Ix]) -> NodeId {
        self.lattice().id(&self.image_bits(f))
    }

    pub(crate) fn restrict(&self, f: &[Ix], src: NodeId, sub: NodeId) -> Table {
        self.elems(sub).iter().map(|&x| f[self.pos(src, x)]).collect()
    }

    /// `z ↦ g⁻¹zg` on a node.
    pub(crate) fn conj_table(&self, id: NodeId, g: Ix) -> Table {
        self.elems(id).iter().map(|&z| self.table().conj(z, g)).collect()
    }

    /// `z ↦ gzg⁻¹` on a node.
    pub(crate) fn conj_left_table(&self, id: NodeId, g: Ix) -> Table {
        self.elems(id)
            .iter()
            .map(|&z| self.table().conj_left(z, g))
            .collect()
    }

    /// `Aut_S(Q)`, the conjugation maps induced by `N_S(Q)`.
    pub(crate) fn inner_auts(&self, ambient: NodeId, id: NodeId) -> Vec<Table> {
        let n = self.lattice().normalizer_in(ambient, id);
        let mut v: Vec<Table> = self
            .elems(n)
            .iter()
            .map(|&g| self.conj_table(id, g))
            .collect();
        v.sort();
        v.dedup();
        v
    }

    pub(crate) fn to_morphism(&self, src: NodeId, dst: NodeId, t: &[Ix]) -> GroupMorphism {
        let source = self.sub(src);
        let target = self.sub(dst);
        let tg = self.table();
        let images = source
            .elements()
            .iter()
            .map(|e| {
                let x = tg.index_of(e).expect("element of P");
                tg.element(t[self.pos(src, x)]).clone()
            })
            .collect();
        GroupMorphism::new_unchecked(source, target, images)
    }

    pub(crate) fn from_morphism(&self, m: &GroupMorphism) -> Result<(NodeId, NodeId, Table)> {
        let src = self.node(m.source())?;
        let tg = self.table();
        let mut t = vec![0 as Ix; self.order(src)];
        for (e, fe) in m.source().elements().iter().zip(m.images()) {
            let x = tg.index_of(e).expect("source lies in P");
            t[self.pos(src, x)] = tg
                .index_of(fe)
                .ok_or_else(|| Error::invalid("morphism image is not contained in P"))?;
        }
        let dst = self.image_node(&t);
        Ok((src, dst, t.into()))
    }
}

/// A finite group of automorphisms of one node, closed under composition.
#[derive(Clone, Debug)]
pub(crate) struct AutSet {
    elems: Vec<Table>,
    index: HashMap<Table, usize>,
    gens: Vec<Table>,
    /// Realizing group elements, aligned with `elems`.
    witnesses: Option<Vec<Element>>,
}

impl AutSet {
    pub(crate) fn trivial(pg: &PGroup, id: NodeId) -> AutSet {
        let e = pg.identity_table(id);
        AutSet {
            index: HashMap::from([(e.clone(), 0)]),
            elems: vec![e],
            gens: vec![],
            witnesses: None,
        }
    }

    /// Closure of `gens`; `gen_witnesses`, when given, realize the
    /// generators by conjugation and are carried through products.
    pub(crate) fn close(
        pg: &PGroup,
        id: NodeId,
        gens: Vec<Table>,
        gen_witnesses: Option<(Element, Vec<Element>)>,
    ) -> AutSet {
        let e = pg.identity_table(id);
        let mut elems = vec![e.clone()];
        let mut index = HashMap::from([(e, 0usize)]);
        let mut wit = gen_witnesses.as_ref().map(|(one, _)| vec![one.clone()]);
        let mut head = 0;
        while head < elems.len() {
            for (k, g) in gens.iter().enumerate() {
                let h = pg.compose(g, id, &elems[head]);
                if !index.contains_key(&h) {
                    index.insert(h.clone(), elems.len());
                    elems.push(h);
                    if let (Some(w), Some((_, gw))) = (wit.as_mut(), gen_witnesses.as_ref()) {
                        let prod = w[head].mul(&gw[k]);
                        w.push(prod);
                    }
                }
            }
            head += 1;
        }
        AutSet {
            elems,
            index,
            gens,
            witnesses: wit,
        }
    }

    pub(crate) fn contains(&self, t: &[Ix]) -> bool {
        self.index.contains_key(t)
    }

    pub(crate) fn len(&self) -> usize {
        self.elems.len()
    }

    pub(crate) fn elems(&self) -> &[Table] {
        &self.elems
    }

    pub(crate) fn gens(&self) -> &[Table] {
        &self.gens
    }

    pub(crate) fn witness(&self, t: &[Ix]) -> Option<&Element> {
        let w = self.witnesses.as_ref()?;
        self.index.get(t).map(|&i| &w[i])
    }
}

/// One isomorphism class of subgroups.
#[derive(Clone, Debug)]
pub struct Class {
    pub rep: NodeId,
    /// Sorted.
    pub members: Vec<NodeId>,
    pub(crate) aut: AutSet,
}

#[derive(Clone, Debug)]
pub enum Backend {
    /// `F_P(G)`.
    GroupRealized(Group),
    /// Closure of a set of morphisms.
    Generated,
}

pub struct FusionSystem {
    pg: PGroup,
    base: NodeId,
    /// `usize::MAX` for nodes outside the underlying group.
    class_of: Vec<usize>,
    iso: Vec<Option<Table>>,
    iso_inv: Vec<Option<Table>>,
    /// For realized systems: `rep^w = node`.
    witness: Vec<Option<Element>>,
    classes: Vec<Class>,
    backend: Backend,
    cache: Mutex<HashMap<(NodeId, NodeId), Arc<Vec<Table>>>>,
}

impl Clone for FusionSystem {
    fn clone(&self) -> Self {
        FusionSystem {
            pg: self.pg.clone(),
            base: self.base,
            class_of: self.class_of.clone(),
            iso: self.iso.clone(),
            iso_inv: self.iso_inv.clone(),
            witness: self.witness.clone(),
            classes: self.classes.clone(),
            backend: self.backend.clone(),
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl std::fmt::Debug for FusionSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FusionSystem")
            .field("p", &self.pg.prime())
            .field("order", &self.pg.order(self.base))
            .field("classes", &self.classes.len())
            .finish()
    }
}

impl FusionSystem {
    pub fn pgroup(&self) -> &PGroup {
        &self.pg
    }

    pub fn prime(&self) -> u64 {
        self.pg.prime()
    }

    /// Node of the underlying group `S`.
    pub fn base(&self) -> NodeId {
        self.base
    }

    pub fn underlying(&self) -> Subgroup {
        self.pg.sub(self.base)
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn lattice(&self) -> &Lattice {
        self.pg.lattice()
    }

    /// Whether `q` is a subgroup of the underlying group.
    pub fn has_node(&self, q: NodeId) -> bool {
        self.class_of.get(q).is_some_and(|&c| c != usize::MAX)
    }

    fn check(&self, q: NodeId) -> Result<()> {
        if self.has_node(q) {
            Ok(())
        } else {
            Err(Error::invalid("subgroup is not contained in the underlying group"))
        }
    }

    pub fn node(&self, q: &Subgroup) -> Result<NodeId> {
        let id = self.pg.node(q)?;
        self.check(id)?;
        Ok(id)
    }

    /// Subgroups of the underlying group in lattice order.
    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.class_of.len()).filter(|&q| self.has_node(q))
    }

    pub fn classes(&self) -> &[Class] {
        &self.classes
    }

    pub fn class(&self, q: NodeId) -> &Class {
        &self.classes[self.class_of[q]]
    }

    pub fn class_index(&self, q: NodeId) -> usize {
        self.class_of[q]
    }

    pub fn class_members(&self, q: NodeId) -> &[NodeId] {
        &self.class(q).members
    }

    pub fn aut_order(&self, q: NodeId) -> usize {
        self.class(q).aut.len()
    }

    fn iso(&self, q: NodeId) -> &[Ix] {
        self.iso[q].as_deref().expect("node in the underlying group")
    }

    fn iso_inv(&self, q: NodeId) -> &[Ix] {
        self.iso_inv[q].as_deref().expect("node in the underlying group")
    }

    /// `iso_m ∘ α ∘ iso_q⁻¹`.
    fn transport(&self, q: NodeId, m: NodeId, alpha: &[Ix]) -> Table {
        let rep = self.class(q).rep;
        let a = self.pg.compose(alpha, rep, self.iso_inv(q));
        self.pg.compose(self.iso(m), rep, &a)
    }

    /// `iso_m⁻¹ ∘ t ∘ iso_q` for `t: q → m`.
    fn to_rep(&self, q: NodeId, m: NodeId, t: &[Ix]) -> Table {
        let a = self.pg.compose(t, q, self.iso(q));
        self.pg.compose(self.iso_inv(m), m, &a)
    }

    /// `Aut_F(Q)`, sorted.
    pub fn aut_tables(&self, q: NodeId) -> Vec<Table> {
        let mut v: Vec<Table> = self
            .class(q)
            .aut
            .elems()
            .iter()
            .map(|a| self.transport(q, q, a))
            .collect();
        v.sort();
        v
    }

    /// Generators of `Aut_F(Q)`.
    pub fn aut_generators(&self, q: NodeId) -> Vec<Table> {
        self.class(q)
            .aut
            .gens()
            .iter()
            .map(|a| self.transport(q, q, a))
            .collect()
    }

    /// `Iso_F(Q, M)`, sorted.
    pub fn iso_tables(&self, q: NodeId, m: NodeId) -> Vec<Table> {
        if !self.has_node(q) || !self.has_node(m) || self.class_of[q] != self.class_of[m] {
            return vec![];
        }
        let mut v: Vec<Table> = self
            .class(q)
            .aut
            .elems()
            .iter()
            .map(|a| self.transport(q, m, a))
            .collect();
        v.sort();
        v
    }

    /// One F-isomorphism `Q → M`, if any.
    pub fn some_iso(&self, q: NodeId, m: NodeId) -> Option<Table> {
        (self.has_node(q) && self.has_node(m) && self.class_of[q] == self.class_of[m])
            .then(|| self.transport(q, m, &self.pg.identity_table(self.class(q).rep)))
    }

    /// `Hom_F(Q, R)`, sorted by table.
    pub fn hom_tables(&self, q: NodeId, r: NodeId) -> Arc<Vec<Table>> {
        if let Some(v) = self.cache.lock().unwrap().get(&(q, r)) {
            return v.clone();
        }
        let mut v = Vec::new();
        if self.has_node(q) && self.has_node(r) {
            let rbits = &self.lattice().node(r).bits;
            for &m in &self.class(q).members {
                if self.lattice().node(m).bits.is_subset(rbits) {
                    v.extend(
                        self.class(q)
                            .aut
                            .elems()
                            .iter()
                            .map(|a| self.transport(q, m, a)),
                    );
                }
            }
        }
        v.sort();
        let v = Arc::new(v);
        self.cache.lock().unwrap().insert((q, r), v.clone());
        v
    }

    /// Whether an isomorphism `a → b` lies in F.
    pub fn contains_iso(&self, a: NodeId, b: NodeId, t: &[Ix]) -> bool {
        self.has_node(a)
            && self.has_node(b)
            && self.class_of[a] == self.class_of[b]
            && self.class(a).aut.contains(&self.to_rep(a, b, t))
    }

    /// Whether a morphism `q → P` lies in F.
    pub fn contains_hom(&self, q: NodeId, t: &[Ix]) -> bool {
        match self.lattice().find(&self.pg.image_bits(t)) {
            Some(b) => self.contains_iso(q, b, t),
            None => false,
        }
    }

    /// `Hom_F(Q, R)` as explicit morphisms.
    pub fn hom_set(&self, q: &Subgroup, r: &Subgroup) -> Result<Vec<GroupMorphism>> {
        let (qi, ri) = (self.node(q)?, self.node(r)?);
        Ok(self
            .hom_tables(qi, ri)
            .iter()
            .map(|t| self.pg.to_morphism(qi, ri, t))
            .collect())
    }

    pub fn morphism(&self, q: NodeId, r: NodeId, t: &[Ix]) -> GroupMorphism {
        self.pg.to_morphism(q, r, t)
    }

    /// For realized systems, a `g ∈ G` with `t = c_g|_Q`.
    pub fn witness(&self, q: NodeId, t: &[Ix]) -> Option<Element> {
        let m = self.lattice().find(&self.pg.image_bits(t))?;
        if !self.contains_iso(q, m, t) {
            return None;
        }
        let a = self.to_rep(q, m, t);
        let ga = self.class(q).aut.witness(&a)?;
        let wq = self.witness[q].as_ref()?;
        let wm = self.witness[m].as_ref()?;
        Some(wq.inv().mul(ga).mul(wm))
    }

    /// `|N_S(Q)|`.
    pub fn normalizer_order(&self, q: NodeId) -> usize {
        self.pg.order(self.lattice().normalizer_in(self.base, q))
    }

    /// `|C_S(Q)|`.
    pub fn centralizer_order(&self, q: NodeId) -> usize {
        self.pg.order(self.lattice().centralizer_in(self.base, q))
    }

    pub fn is_fully_normalized(&self, q: NodeId) -> bool {
        let n = self.normalizer_order(q);
        self.class(q)
            .members
            .iter()
            .all(|&m| self.normalizer_order(m) <= n)
    }

    pub fn is_fully_centralized(&self, q: NodeId) -> bool {
        let c = self.centralizer_order(q);
        self.class(q)
            .members
            .iter()
            .all(|&m| self.centralizer_order(m) <= c)
    }

    pub fn is_centric(&self, q: NodeId) -> bool {
        let l = self.lattice();
        self.class(q)
            .members
            .iter()
            .all(|&m| l.is_subgroup(l.centralizer_in(self.base, m), m))
    }

    /// `Aut_F(Q)` as a permutation group on the positions of `Q`.
    pub fn aut_group(&self, q: NodeId) -> Result<Group> {
        let n = self.pg.order(q);
        let gens = self
            .aut_generators(q)
            .iter()
            .map(|t| {
                let images = t.iter().map(|&y| self.pg.pos(q, y) as u16).collect();
                Perm::from_images(images).map(Element::from)
            })
            .collect::<Result<Vec<_>>>()?;
        Group::new(GroupKind::Permutation { degree: n }, gens, self.pg.caps())
    }

    /// `O_p(Aut_F(Q))` order: the core of a Sylow p-subgroup.
    pub fn op_aut_order(&self, q: NodeId) -> Result<u64> {
        let a = self.aut_group(q)?;
        Ok(op_of_group(&a, self.prime(), self.pg.caps())?.order())
    }

    /// `O_p(Out_F(Q)) = 1`, i.e. `O_p(Aut_F(Q)) = Inn(Q)`.
    pub fn is_radical(&self, q: NodeId) -> Result<bool> {
        let inn = self.pg.order(q) / self.pg.order(self.lattice().center(q));
        Ok(self.op_aut_order(q)? == inn as u64)
    }

    /// `N_φ` for an F-morphism `φ: Q → P`, returned with the image node.
    pub fn n_phi(&self, q: NodeId, phi: &[Ix]) -> (NodeId, NodeId) {
        let target = self.pg.image_node(phi);
        let allowed: std::collections::HashSet<Table> = {
            let n = self.lattice().normalizer_in(self.base, target);
            self.pg
                .elems(n)
                .iter()
                .map(|&y| self.pg.conj_left_table(target, y))
                .collect()
        };
        let n_phi = self.n_phi_with(q, target, phi, &allowed);
        (target, n_phi)
    }

    fn n_phi_with(
        &self,
        q: NodeId,
        target: NodeId,
        phi: &[Ix],
        allowed: &std::collections::HashSet<Table>,
    ) -> NodeId {
        let tg = self.pg.table();
        let phi_inv = self.pg.invert(phi, q, target);
        let nq = self.lattice().normalizer_in(self.base, q);
        let xs = self.pg.elems(nq).iter().copied().filter(|&x| {
            // z' ↦ φ(x φ⁻¹(z') x⁻¹)
            let t: Table = phi_inv
                .iter()
                .map(|&z| phi[self.pg.pos(q, tg.conj_left(z, x))])
                .collect();
            allowed.contains(&t)
        });
        self.lattice().id(&Bits::from_iter(tg.order(), xs))
    }

    /// An F-morphism `N → P` whose restriction to `Q ≤ N` is `φ`.
    pub fn find_extension(&self, q: NodeId, phi: &[Ix], n: NodeId) -> Option<Table> {
        let class = self.class(n);
        let rep = class.rep;
        let qpos: Vec<usize> = self.pg.elems(q).iter().map(|&x| self.pg.pos(n, x)).collect();
        let inv = self.iso_inv(n);
        let image = self.pg.image_bits(phi);
        for &m in &class.members {
            if !image.is_subset(&self.lattice().node(m).bits) {
                continue;
            }
            let iso_m = self.iso(m);
            'aut: for a in class.aut.elems() {
                for (k, &i) in qpos.iter().enumerate() {
                    let y = a[self.pg.pos(rep, inv[i])];
                    if iso_m[self.pg.pos(rep, y)] != phi[k] {
                        continue 'aut;
                    }
                }
                return Some(self.transport(n, m, a));
            }
        }
        None
    }
}

/// `O_p` of a permutation group: the largest subset of a Sylow p-subgroup
/// closed under conjugation by the generators.
pub(crate) fn op_of_group(a: &Group, p: u64, caps: &Caps) -> Result<Subgroup> {
    let order = a.order();
    if order == 1 || prime_of_power(order) == Some(p) {
        return Ok(a.as_subgroup());
    }
    if order % p != 0 {
        return a.closure(&[], caps);
    }
    let syl = crate::structure::sylow(a, p, caps)?;
    let mut core: Vec<Element> = syl.elements().to_vec();
    loop {
        let keep: Vec<Element> = core
            .iter()
            .filter(|x| {
                a.generators()
                    .iter()
                    .all(|g| core.binary_search(&x.conj(g)).is_ok())
            })
            .cloned()
            .collect();
        if keep.len() == core.len() {
            break;
        }
        core = keep;
    }
    a.closure(&core, caps)
}
