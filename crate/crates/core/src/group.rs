//! Finite groups given by generators, with exhaustive element sets.

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::element::{Element, Matrix, Perm};
use crate::error::{Error, Result};

/// Size bounds for exhaustive computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Caps {
    /// Largest group whose elements are enumerated.
    pub max_group_order: u64,
    /// Largest p-group whose subgroup lattice is enumerated.
    pub max_lattice_order: u64,
    /// Largest subgroup conjugacy orbit explored.
    pub max_orbit: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_group_order: 1 << 21,
            max_lattice_order: 2187,
            max_orbit: 1 << 20,
        }
    }
}

/// The representation shared by every element of a group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    Permutation { degree: usize },
    Matrix { dim: usize, prime: u32 },
}

impl GroupKind {
    pub fn identity(&self) -> Element {
        match *self {
            GroupKind::Permutation { degree } => Perm::identity(degree).into(),
            GroupKind::Matrix { dim, prime } => Matrix::identity(dim, prime).into(),
        }
    }

    pub fn admits(&self, e: &Element) -> bool {
        match (self, e) {
            (GroupKind::Permutation { degree }, Element::Perm(p)) => p.degree() == *degree,
            (GroupKind::Matrix { dim, prime }, Element::Matrix(m)) => {
                m.dim() == *dim && m.prime() == *prime
            }
            _ => false,
        }
    }
}

/// Distinguished elements of a cyclic wreath product `C_{p^n} ≀ C_p`.
#[derive(Clone, Debug)]
pub struct WreathData {
    pub p: u32,
    pub n: u32,
    /// Cyclically permutes the blocks: `b_i^x = b_{i+1}`.
    pub x: Element,
    /// `b_1, …, b_p`, each a `p^n`-cycle on its own block.
    pub base_generators: Vec<Element>,
}

/// A finite group: generators plus its full sorted element list.
#[derive(Clone)]
pub struct Group {
    kind: GroupKind,
    generators: Vec<Element>,
    elements: Arc<Vec<Element>>,
    wreath: Option<Arc<WreathData>>,
    name: Option<String>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .field("order", &self.order())
            .finish()
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.elements == other.elements
    }
}

impl Group {
    pub fn new(kind: GroupKind, generators: Vec<Element>, caps: &Caps) -> Result<Group> {
        if let Some(bad) = generators.iter().find(|g| !kind.admits(g)) {
            return Err(Error::invalid(format!(
                "generator {bad:?} does not match group kind {kind:?}"
            )));
        }
        let elements = enumerate(&kind.identity(), &generators, caps.max_group_order)?;
        Ok(Group {
            kind,
            generators,
            elements: Arc::new(elements),
            wreath: None,
            name: None,
        })
    }

    pub(crate) fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub(crate) fn with_wreath(mut self, data: WreathData) -> Self {
        self.wreath = Some(Arc::new(data));
        self
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn identity(&self) -> Element {
        self.kind.identity()
    }

    pub fn wreath(&self) -> Option<&WreathData> {
        self.wreath.as_deref()
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.elements.binary_search(e).is_ok()
    }

    /// The whole group viewed as a subgroup of itself.
    pub fn as_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted(self.elements.clone(), self.generators.clone())
    }

    /// Smallest subgroup containing `gens`.
    pub fn closure(&self, gens: &[Element], caps: &Caps) -> Result<Subgroup> {
        if let Some(bad) = gens.iter().find(|g| !self.contains(g)) {
            return Err(Error::invalid(format!("{bad:?} is not an element of the group")));
        }
        Subgroup::generated(&self.identity(), gens, caps.max_group_order)
    }
}

fn enumerate(identity: &Element, gens: &[Element], cap: u64) -> Result<Vec<Element>> {
    let mut seen: HashSet<Element> = HashSet::new();
    seen.insert(identity.clone());
    let mut frontier = vec![identity.clone()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.mul(g);
            if !seen.contains(&y) {
                if seen.len() as u64 >= cap {
                    return Err(Error::cap("group order", cap));
                }
                seen.insert(y.clone());
                frontier.push(y);
            }
        }
    }
    let mut v: Vec<Element> = seen.into_iter().collect();
    v.sort();
    Ok(v)
}

/// Stable 64-bit digest of a sorted element list (FNV-1a over a canonical
/// byte encoding).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubgroupKey(pub u64);

impl fmt::Display for SubgroupKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

fn digest(elements: &[Element]) -> SubgroupKey {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    let mut feed = |b: u8| {
        h ^= b as u64;
        h = h.wrapping_mul(PRIME);
    };
    for e in elements {
        match e {
            Element::Perm(p) => {
                feed(0);
                for &x in p.images() {
                    feed(x as u8);
                    feed((x >> 8) as u8);
                }
            }
            Element::Matrix(m) => {
                feed(1);
                for row in m.rows() {
                    for x in row {
                        x.to_le_bytes().into_iter().for_each(&mut feed);
                    }
                }
            }
        }
    }
    SubgroupKey(h)
}

struct SubgroupData {
    elements: Arc<Vec<Element>>,
    generators: Vec<Element>,
    key: SubgroupKey,
}

/// A subgroup, identified by its canonical sorted element set.
#[derive(Clone)]
pub struct Subgroup(Arc<SubgroupData>);

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.0.key == other.0.key && self.0.elements == other.0.elements
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.key.hash(state);
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, gens {:?})", self.order(), self.generators())
    }
}

impl Subgroup {
    pub(crate) fn from_sorted(elements: Arc<Vec<Element>>, generators: Vec<Element>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        let key = digest(&elements);
        Subgroup(Arc::new(SubgroupData {
            elements,
            generators,
            key,
        }))
    }

    /// Closure of `gens` starting from `identity`.
    pub fn generated(identity: &Element, gens: &[Element], cap: u64) -> Result<Subgroup> {
        let elements = enumerate(identity, gens, cap)?;
        let gens: Vec<Element> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        Ok(Subgroup::from_sorted(Arc::new(elements), gens))
    }

    /// Closure of a set already known to be a subgroup, reusing its elements.
    pub(crate) fn from_element_set(mut elements: Vec<Element>, generators: Vec<Element>) -> Self {
        elements.sort();
        elements.dedup();
        Subgroup::from_sorted(Arc::new(elements), generators)
    }

    pub fn order(&self) -> u64 {
        self.0.elements.len() as u64
    }

    pub fn elements(&self) -> &[Element] {
        &self.0.elements
    }

    pub fn generators(&self) -> &[Element] {
        &self.0.generators
    }

    pub fn key(&self) -> SubgroupKey {
        self.0.key
    }

    pub fn identity(&self) -> Element {
        self.0.elements[0].identity_like()
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.0.elements.binary_search(e).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.elements().iter().all(|e| other.contains(e))
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.generators();
        g.iter()
            .enumerate()
            .all(|(i, a)| g[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    /// `g⁻¹ H g`.
    pub fn conjugate(&self, g: &Element) -> Subgroup {
        let ginv = g.inv();
        let elements: Vec<Element> = self.elements().iter().map(|x| ginv.mul(x).mul(g)).collect();
        let gens = self.generators().iter().map(|x| ginv.mul(x).mul(g)).collect();
        Subgroup::from_element_set(elements, gens)
    }

    pub fn is_normalized_by(&self, g: &Element) -> bool {
        let ginv = g.inv();
        self.generators()
            .iter()
            .all(|x| self.contains(&ginv.mul(x).mul(g)))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let elements: Vec<Element> = self
            .elements()
            .iter()
            .filter(|e| other.contains(e))
            .cloned()
            .collect();
        let gens = small_generating_set(&elements);
        Subgroup::from_sorted(Arc::new(elements), gens)
    }

    /// `⟨self, other⟩`.
    pub fn join(&self, other: &Subgroup, cap: u64) -> Result<Subgroup> {
        let mut gens = self.generators().to_vec();
        gens.extend(other.generators().iter().cloned());
        Subgroup::generated(&self.identity(), &gens, cap)
    }
}

/// A short generating list for a sorted subgroup element set, chosen greedily
/// in element order.
pub(crate) fn small_generating_set(elements: &[Element]) -> Vec<Element> {
    let Some(first) = elements.first() else {
        return Vec::new();
    };
    let identity = first.identity_like();
    let mut gens: Vec<Element> = Vec::new();
    let mut span: HashSet<Element> = HashSet::from([identity.clone()]);
    for e in elements {
        if span.contains(e) {
            continue;
        }
        gens.push(e.clone());
        let sub = enumerate(&identity, &gens, u64::MAX).expect("uncapped");
        // `elements` need not be a subgroup, so a span of the same size
        // proves nothing; keep scanning.
        span = sub.into_iter().collect();
    }
    gens
}
