//! Tabulated finite groups with bitset subgroups.
//!
//! Every p-group the fusion engine touches is small, so it is converted once
//! into a full multiplication table over element indices `0..n`, with the
//! identity at index 0 and the remaining elements in canonical order.
//! Subgroups are then bitsets, and all structural work (series, agemo, omega,
//! commutators) is array lookups.

use std::collections::HashMap;
use std::fmt;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::group::{small_generating_set, Subgroup};

/// Element index inside a [`TableGroup`].
pub type Ix = u16;

/// Fixed-width bitset over element indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits(Box<[u64]>);

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Bits {
    pub fn empty(n: usize) -> Self {
        Bits(vec![0u64; n.div_ceil(64)].into_boxed_slice())
    }

    pub fn full(n: usize) -> Self {
        let mut b = Bits::empty(n);
        for i in 0..n {
            b.insert(i as Ix);
        }
        b
    }

    pub fn from_iter(n: usize, it: impl IntoIterator<Item = Ix>) -> Self {
        let mut b = Bits::empty(n);
        for i in it {
            b.insert(i);
        }
        b
    }

    #[inline]
    pub fn contains(&self, i: Ix) -> bool {
        self.0[i as usize >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: Ix) -> bool {
        let w = &mut self.0[i as usize >> 6];
        let bit = 1u64 << (i & 63);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(other.0.iter()).map(|(a, b)| a & b).collect())
    }

    pub fn or(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(other.0.iter()).map(|(a, b)| a | b).collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = Ix> + '_ {
        self.0.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros();
                w &= w - 1;
                Some((wi * 64 + t as usize) as Ix)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<Ix> {
        self.iter().collect()
    }
}

/// A finite group stored as a multiplication table.
pub struct TableGroup {
    n: usize,
    mul: Vec<Ix>,
    inv: Vec<Ix>,
    elem_order: Vec<u32>,
    elements: Vec<Element>,
    index: HashMap<Element, Ix>,
}

impl fmt::Debug for TableGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TableGroup(order {})", self.n)
    }
}

impl TableGroup {
    /// Tabulates a subgroup. `cap` bounds the order.
    pub fn from_subgroup(h: &Subgroup, cap: u64) -> Result<TableGroup> {
        if h.order() > cap || h.order() > Ix::MAX as u64 {
            return Err(Error::cap("tabulated group order", cap.min(Ix::MAX as u64)));
        }
        let identity = h.identity();
        let mut elements: Vec<Element> = Vec::with_capacity(h.elements().len());
        elements.push(identity.clone());
        elements.extend(h.elements().iter().filter(|e| **e != identity).cloned());
        let n = elements.len();
        let index: HashMap<Element, Ix> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as Ix))
            .collect();
        let mut gens: Vec<Element> = h.generators().to_vec();
        if gens.is_empty() && n > 1 {
            gens = small_generating_set(h.elements());
        }
        // right_gen[g][k] = index(e_k * g)
        let right_gen: Vec<Vec<Ix>> = gens
            .iter()
            .map(|g| elements.iter().map(|e| index[&e.mul(g)]).collect())
            .collect();
        // BFS spanning tree: every element j != 0 is parent[j] * gens[via[j]].
        let mut parent = vec![Ix::MAX; n];
        let mut via = vec![usize::MAX; n];
        let mut order_visited = vec![0 as Ix];
        parent[0] = 0;
        let mut head = 0;
        while head < order_visited.len() {
            let x = order_visited[head];
            head += 1;
            for (gi, rg) in right_gen.iter().enumerate() {
                let y = rg[x as usize];
                if parent[y as usize] == Ix::MAX {
                    parent[y as usize] = x;
                    via[y as usize] = gi;
                    order_visited.push(y);
                }
            }
        }
        debug_assert_eq!(order_visited.len(), n);
        let mut mul = vec![0 as Ix; n * n];
        for i in 0..n {
            let row = &mut mul[i * n..(i + 1) * n];
            row[0] = i as Ix;
            for &j in &order_visited[1..] {
                let j = j as usize;
                row[j] = right_gen[via[j]][row[parent[j] as usize] as usize];
            }
        }
        let mut inv = vec![0 as Ix; n];
        for i in 0..n {
            for j in 0..n {
                if mul[i * n + j] == 0 {
                    inv[i] = j as Ix;
                    break;
                }
            }
        }
        let mut elem_order = vec![1u32; n];
        for (i, o) in elem_order.iter_mut().enumerate() {
            let mut x = i;
            while x != 0 {
                x = mul[x * n + i] as usize;
                *o += 1;
            }
        }
        Ok(TableGroup {
            n,
            mul,
            inv,
            elem_order,
            elements,
            index,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// The prime `p` if this is a nontrivial p-group.
    pub fn prime(&self) -> Option<u32> {
        prime_of_power(self.n as u64).map(|p| p as u32)
    }

    #[inline]
    pub fn mul(&self, a: Ix, b: Ix) -> Ix {
        self.mul[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Ix) -> Ix {
        self.inv[a as usize]
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: Ix, g: Ix) -> Ix {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conj_left(&self, x: Ix, g: Ix) -> Ix {
        self.mul(self.mul(g, x), self.inv(g))
    }

    #[inline]
    pub fn commutator(&self, a: Ix, b: Ix) -> Ix {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, x: Ix, e: u64) -> Ix {
        let e = e % self.elem_order[x as usize] as u64;
        let mut acc = 0;
        for _ in 0..e {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn elem_order(&self, x: Ix) -> u32 {
        self.elem_order[x as usize]
    }

    pub fn element(&self, i: Ix) -> &Element {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, e: &Element) -> Option<Ix> {
        self.index.get(e).copied()
    }

    pub fn all(&self) -> Bits {
        Bits::full(self.n)
    }

    pub fn trivial(&self) -> Bits {
        Bits::from_iter(self.n, [0])
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[Ix]) -> Bits {
        let mut set = self.trivial();
        let mut stack = vec![0 as Ix];
        let gens: Vec<Ix> = gens.iter().copied().filter(|&g| g != 0).collect();
        while let Some(x) = stack.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    stack.push(y);
                }
            }
        }
        set
    }

    /// Subgroup generated by an existing subgroup and extra elements.
    pub fn closure_with(&self, sub: &Bits, extra: &[Ix]) -> Bits {
        let mut gens = self.generators(sub);
        gens.extend_from_slice(extra);
        self.closure(&gens)
    }

    /// A small generating list of a subgroup, chosen greedily by index.
    pub fn generators(&self, sub: &Bits) -> Vec<Ix> {
        let target = sub.count();
        let mut span = self.trivial();
        let mut gens = Vec::new();
        for x in sub.iter() {
            if span.count() == target {
                break;
            }
            if !span.contains(x) {
                gens.push(x);
                span = self.closure(&gens);
            }
        }
        gens
    }

    pub fn is_subgroup(&self, set: &Bits) -> bool {
        set.contains(0)
            && set
                .iter()
                .all(|a| set.iter().all(|b| set.contains(self.mul(a, b))))
    }

    /// `{g ∈ ambient : g commutes with every element of gens}`.
    pub fn centralizer(&self, ambient: &Bits, gens: &[Ix]) -> Bits {
        Bits::from_iter(
            self.n,
            ambient
                .iter()
                .filter(|&g| gens.iter().all(|&x| self.mul(g, x) == self.mul(x, g))),
        )
    }

    /// `{g ∈ ambient : g normalizes sub}`, where `gens` generates `sub`.
    pub fn normalizer(&self, ambient: &Bits, sub: &Bits, gens: &[Ix]) -> Bits {
        Bits::from_iter(
            self.n,
            ambient
                .iter()
                .filter(|&g| gens.iter().all(|&x| sub.contains(self.conj(x, g)))),
        )
    }

    pub fn center(&self, sub: &Bits) -> Bits {
        let gens = self.generators(sub);
        self.centralizer(sub, &gens)
    }

    pub fn is_abelian(&self, sub: &Bits) -> bool {
        let gens = self.generators(sub);
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_normal_in(&self, sub: &Bits, ambient: &Bits) -> bool {
        let gens = self.generators(sub);
        self.generators(ambient)
            .iter()
            .all(|&g| gens.iter().all(|&x| sub.contains(self.conj(x, g))))
    }

    /// `⟨x^{p^k} : x ∈ sub⟩`; `k = 0` gives `sub` itself.
    pub fn agemo(&self, sub: &Bits, p: u32, k: u32) -> Bits {
        let e = (p as u64).pow(k);
        let powers: Vec<Ix> = sub.iter().map(|x| self.pow(x, e)).collect();
        self.closure(&powers)
    }

    /// `⟨x ∈ sub : x^{p^k} = 1⟩`; `k = 0` gives the trivial subgroup.
    pub fn omega(&self, sub: &Bits, p: u32, k: u32) -> Bits {
        let e = (p as u64).pow(k);
        let small: Vec<Ix> = sub
            .iter()
            .filter(|&x| e % self.elem_order(x) as u64 == 0)
            .collect();
        self.closure(&small)
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self, sub: &Bits) -> u64 {
        sub.iter()
            .map(|x| self.elem_order(x) as u64)
            .fold(1, lcm)
    }

    /// `[A, B]`, as the normal closure in `⟨A, B⟩` of commutators of
    /// generators.
    pub fn commutator_subgroup(&self, a: &Bits, b: &Bits) -> Bits {
        let ga = self.generators(a);
        let gb = self.generators(b);
        let comms: Vec<Ix> = ga
            .iter()
            .flat_map(|&x| gb.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.commutator(x, y))
            .collect();
        let mut k = self.closure(&comms);
        let conj_by: Vec<Ix> = ga.iter().chain(gb.iter()).copied().collect();
        loop {
            let kg = self.generators(&k);
            let missing: Vec<Ix> = kg
                .iter()
                .flat_map(|&x| conj_by.iter().map(move |&g| (x, g)))
                .map(|(x, g)| self.conj(x, g))
                .filter(|&y| !k.contains(y))
                .collect();
            if missing.is_empty() {
                return k;
            }
            k = self.closure_with(&k, &missing);
        }
    }

    /// `⟨[a, x] : a ∈ A⟩`.
    pub fn commutators_with(&self, a: &Bits, x: Ix) -> Bits {
        let comms: Vec<Ix> = a.iter().map(|y| self.commutator(y, x)).collect();
        self.closure(&comms)
    }

    /// Upper central series of `sub`, from the trivial group. Stops when it
    /// stalls; the last term equals `sub` iff `sub` is nilpotent.
    pub fn upper_central_series(&self, sub: &Bits) -> Vec<Bits> {
        let gens = self.generators(sub);
        let mut series = vec![self.trivial()];
        loop {
            let z = series.last().unwrap();
            if z == sub {
                return series;
            }
            let next = Bits::from_iter(
                self.n,
                sub.iter()
                    .filter(|&x| gens.iter().all(|&h| z.contains(self.commutator(x, h)))),
            );
            if &next == z {
                return series;
            }
            series.push(next);
        }
    }

    /// Lower central series of `sub`, from `sub`. Stops when it stalls.
    pub fn lower_central_series(&self, sub: &Bits) -> Vec<Bits> {
        let mut series = vec![sub.clone()];
        loop {
            let g = series.last().unwrap();
            if g.count() == 1 {
                return series;
            }
            let next = self.commutator_subgroup(g, sub);
            if &next == g {
                return series;
            }
            series.push(next);
        }
    }

    /// Nilpotence class of a p-subgroup (0 for the trivial group).
    pub fn nilpotency_class(&self, sub: &Bits) -> Option<u32> {
        let upper = self.upper_central_series(sub);
        if upper.last() != Some(sub) {
            return None;
        }
        Some(upper.len() as u32 - 1)
    }

    /// Converts a bitset subgroup back to element form.
    pub fn to_subgroup(&self, sub: &Bits) -> Subgroup {
        let elements: Vec<Element> = sub.iter().map(|i| self.element(i).clone()).collect();
        let gens = self
            .generators(sub)
            .into_iter()
            .map(|i| self.element(i).clone())
            .collect();
        Subgroup::from_element_set(elements, gens)
    }

    /// Converts an element-form subgroup contained in this group to a bitset.
    pub fn to_bits(&self, sub: &Subgroup) -> Option<Bits> {
        let mut b = Bits::empty(self.n);
        for e in sub.elements() {
            b.insert(self.index_of(e)?);
        }
        Some(b)
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// `Some(p)` when `n = p^k` with `k ≥ 1`.
pub fn prime_of_power(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n % d == 0)?;
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    (m == 1).then_some(p)
}

/// `log_p(n)` when `n` is a power of `p`.
pub fn log_p(n: u64, p: u64) -> Option<u32> {
    let mut k = 0;
    let mut m = n;
    while m > 1 {
        if m % p != 0 {
            return None;
        }
        m /= p;
        k += 1;
    }
    Some(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Perm;
    use crate::group::{Caps, Group, GroupKind};

    fn d8() -> TableGroup {
        let gens = vec![
            Perm::from_cycles(4, &[&[1, 2, 3, 4]]).unwrap().into(),
            Perm::from_cycles(4, &[&[1, 3]]).unwrap().into(),
        ];
        let g = Group::new(GroupKind::Permutation { degree: 4 }, gens, &Caps::default()).unwrap();
        TableGroup::from_subgroup(&g.as_subgroup(), 2187).unwrap()
    }

    #[test]
    fn table_matches_element_products() {
        let t = d8();
        for a in 0..8 {
            for b in 0..8 {
                let prod = t.element(a).mul(t.element(b));
                assert_eq!(t.index_of(&prod), Some(t.mul(a, b)));
            }
            assert_eq!(t.mul(a, t.inv(a)), 0);
        }
        assert!(t.element(0).is_identity());
    }

    #[test]
    fn d8_structure() {
        let t = d8();
        let all = t.all();
        assert_eq!(t.center(&all).count(), 2);
        assert_eq!(t.nilpotency_class(&all), Some(2));
        assert_eq!(t.lower_central_series(&all).len(), 3);
        assert_eq!(t.exponent(&all), 4);
        assert_eq!(t.agemo(&all, 2, 1).count(), 2);
        assert_eq!(t.omega(&all, 2, 1).count(), 8);
        assert_eq!(t.omega(&all, 2, 0).count(), 1);
        assert_eq!(&t.agemo(&all, 2, 0), &all);
        assert_eq!(t.commutator_subgroup(&all, &all).count(), 2);
    }

    #[test]
    fn bits_ops() {
        let a = Bits::from_iter(130, [0, 5, 129]);
        let b = Bits::from_iter(130, [0, 129]);
        assert!(b.is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(a.and(&b), b);
        assert_eq!(a.to_vec(), vec![0, 5, 129]);
        assert_eq!(a.count(), 3);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_of_power(81), Some(3));
        assert_eq!(prime_of_power(12), None);
        assert_eq!(prime_of_power(1), None);
        assert_eq!(log_p(2187, 3), Some(7));
        assert_eq!(log_p(10, 3), None);
    }
}
