//! Subgroup-level operations on element-set subgroups: normalizers,
//! centralizers, central series, agemo/omega, Sylow subgroups, conjugacy
//! orbits.
//!
//! Everything is exhaustive. p-group lattice work is delegated to
//! [`crate::lattice`] after tabulating the group.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::group::{small_generating_set, Caps, Group, Subgroup, SubgroupKey};
use crate::lattice::Lattice;
use crate::table::{log_p, prime_of_power, TableGroup};

/// `{g ∈ ambient : g commutes with target}`.
pub fn centralizer(ambient: &Subgroup, target: &Subgroup) -> Subgroup {
    let gens = target.generators();
    let elements: Vec<Element> = ambient
        .elements()
        .iter()
        .filter(|g| gens.iter().all(|x| g.mul(x) == x.mul(g)))
        .cloned()
        .collect();
    let generators = small_generating_set(&elements);
    Subgroup::from_element_set(elements, generators)
}

/// `{g ∈ ambient : target^g = target}`.
pub fn normalizer(ambient: &Subgroup, target: &Subgroup) -> Subgroup {
    let elements: Vec<Element> = ambient
        .elements()
        .iter()
        .filter(|g| target.is_normalized_by(g))
        .cloned()
        .collect();
    let generators = small_generating_set(&elements);
    Subgroup::from_element_set(elements, generators)
}

pub fn center(h: &Subgroup) -> Subgroup {
    centralizer(h, h)
}

/// `[A, B]`: normal closure in `⟨A, B⟩` of commutators of generators.
pub fn commutator_subgroup(a: &Subgroup, b: &Subgroup, caps: &Caps) -> Result<Subgroup> {
    let identity = a.identity();
    let comms: Vec<Element> = a
        .generators()
        .iter()
        .flat_map(|x| b.generators().iter().map(move |y| x.commutator(y)))
        .collect();
    let mut k = Subgroup::generated(&identity, &comms, caps.max_group_order)?;
    let conj_by: Vec<&Element> = a.generators().iter().chain(b.generators()).collect();
    loop {
        let missing: Vec<Element> = k
            .generators()
            .iter()
            .flat_map(|x| conj_by.iter().map(move |g| x.conj(g)))
            .filter(|y| !k.contains(y))
            .collect();
        if missing.is_empty() {
            return Ok(k);
        }
        let mut gens = k.generators().to_vec();
        gens.extend(missing);
        k = Subgroup::generated(&identity, &gens, caps.max_group_order)?;
    }
}

pub fn derived_subgroup(h: &Subgroup, caps: &Caps) -> Result<Subgroup> {
    commutator_subgroup(h, h, caps)
}

/// Upper and lower central series of a nilpotent group.
#[derive(Clone, Debug)]
pub struct CentralSeriesData {
    /// `1 = Z⁰ ≤ Z¹ ≤ … ≤ Z^c = H`.
    pub upper: Vec<Subgroup>,
    /// `H = γ₁ ≥ γ₂ ≥ … ≥ γ_{c+1} = 1`.
    pub lower: Vec<Subgroup>,
    pub class: u32,
}

#[derive(Clone, Debug)]
pub enum CentralSeries {
    Nilpotent(CentralSeriesData),
    /// Both series stall before reaching the end; the stalled prefixes are
    /// kept.
    NotNilpotent {
        upper: Vec<Subgroup>,
        lower: Vec<Subgroup>,
    },
}

impl CentralSeries {
    pub fn class(&self) -> Option<u32> {
        match self {
            CentralSeries::Nilpotent(d) => Some(d.class),
            CentralSeries::NotNilpotent { .. } => None,
        }
    }
}

pub fn central_series(h: &Subgroup, caps: &Caps) -> Result<CentralSeries> {
    if h.is_trivial() {
        return Err(Error::Precondition("central series of the trivial group".into()));
    }
    let gens = h.generators().to_vec();
    let mut upper = vec![Subgroup::generated(&h.identity(), &[], 1)?];
    loop {
        let z = upper.last().unwrap();
        if z == h {
            break;
        }
        let elements: Vec<Element> = h
            .elements()
            .iter()
            .filter(|x| gens.iter().all(|g| z.contains(&x.commutator(g))))
            .cloned()
            .collect();
        if elements.len() as u64 == z.order() {
            break;
        }
        let generators = small_generating_set(&elements);
        upper.push(Subgroup::from_element_set(elements, generators));
    }
    let mut lower = vec![h.clone()];
    loop {
        let g = lower.last().unwrap();
        if g.is_trivial() {
            break;
        }
        let next = commutator_subgroup(g, h, caps)?;
        if &next == g {
            break;
        }
        lower.push(next);
    }
    let reached_top = upper.last() == Some(h);
    let reached_bottom = lower.last().is_some_and(|g| g.is_trivial());
    if reached_top && reached_bottom {
        let class = upper.len() as u32 - 1;
        debug_assert_eq!(class, lower.len() as u32 - 1);
        Ok(CentralSeries::Nilpotent(CentralSeriesData {
            upper,
            lower,
            class,
        }))
    } else {
        Ok(CentralSeries::NotNilpotent { upper, lower })
    }
}

fn p_of(h: &Subgroup) -> Result<Option<u64>> {
    if h.is_trivial() {
        return Ok(None);
    }
    prime_of_power(h.order())
        .map(Some)
        .ok_or(Error::NotPGroup {
            order: h.order(),
            p: 0,
        })
}

/// `℧ⁿ(H) = ⟨x^{pⁿ} : x ∈ H⟩`.
pub fn agemo(h: &Subgroup, n: u32, caps: &Caps) -> Result<Subgroup> {
    let Some(p) = p_of(h)? else {
        return Ok(h.clone());
    };
    let e = p.pow(n) as i64;
    let powers: Vec<Element> = h.elements().iter().map(|x| x.pow(e)).collect();
    Subgroup::generated(&h.identity(), &small_generating_set(&sorted(powers)), caps.max_group_order)
}

/// `Ωₙ(H) = ⟨x ∈ H : x^{pⁿ} = 1⟩`.
pub fn omega(h: &Subgroup, n: u32, caps: &Caps) -> Result<Subgroup> {
    let Some(p) = p_of(h)? else {
        return Ok(h.clone());
    };
    let e = p.pow(n) as i64;
    let small: Vec<Element> = h
        .elements()
        .iter()
        .filter(|x| x.pow(e).is_identity())
        .cloned()
        .collect();
    Subgroup::generated(&h.identity(), &small_generating_set(&small), caps.max_group_order)
}

fn sorted(mut v: Vec<Element>) -> Vec<Element> {
    v.sort();
    v.dedup();
    v
}

/// Least common multiple of element orders.
pub fn exponent(h: &Subgroup) -> u64 {
    h.elements()
        .iter()
        .map(Element::order)
        .fold(1, crate::table::lcm)
}

/// `[A, x; k]`: `[A, x; 1] = ⟨[a, x] : a ∈ A⟩`, `[A, x; k] = [[A, x; k-1], x]`.
pub fn iterated_commutator(a: &Subgroup, x: &Element, k: u32, caps: &Caps) -> Result<Subgroup> {
    if k == 0 {
        return Err(Error::Precondition("iterated commutator needs k >= 1".into()));
    }
    if !a.is_normalized_by(x) {
        return Err(Error::NotNormalizing);
    }
    let mut cur = a.clone();
    for _ in 0..k {
        let comms: Vec<Element> = cur.elements().iter().map(|y| y.commutator(x)).collect();
        cur = Subgroup::generated(
            &a.identity(),
            &small_generating_set(&sorted(comms)),
            caps.max_group_order,
        )?;
    }
    Ok(cur)
}

fn lattice_of(h: &Subgroup, caps: &Caps) -> Result<Lattice> {
    if h.order() > caps.max_lattice_order {
        return Err(Error::cap("subgroup lattice group order", caps.max_lattice_order));
    }
    p_of(h)?;
    let t = TableGroup::from_subgroup(h, caps.max_lattice_order)?;
    Lattice::build(Arc::new(t))
}

/// Every subgroup of a p-group, ordered by order then canonical element list.
pub fn all_subgroups(h: &Subgroup, caps: &Caps) -> Result<Vec<Subgroup>> {
    let lat = lattice_of(h, caps)?;
    Ok(lat
        .nodes()
        .iter()
        .map(|n| lat.group().to_subgroup(&n.bits))
        .collect())
}

/// `J(H)`, generated by the abelian subgroups of maximal order.
pub fn thompson_subgroup(h: &Subgroup, caps: &Caps) -> Result<Subgroup> {
    let lat = lattice_of(h, caps)?;
    let j = lat.thompson(lat.top());
    Ok(lat.group().to_subgroup(&lat.node(j).bits))
}

/// p-part of `n`.
pub fn p_part(n: u64, p: u64) -> u64 {
    let mut m = n;
    let mut out = 1;
    while m % p == 0 {
        m /= p;
        out *= p;
    }
    out
}

/// A Sylow p-subgroup, grown from a subgroup of order `p` by repeatedly
/// adjoining an element of `N_G(Q) \ Q` whose p-th power lies in `Q`.
/// Choices are the first eligible element in canonical order.
pub fn sylow(g: &Group, p: u64, caps: &Caps) -> Result<Subgroup> {
    let target = p_part(g.order(), p);
    if p < 2 || target == 1 {
        return Err(Error::PrimeDoesNotDivide {
            p,
            order: g.order(),
        });
    }
    let seed = g
        .elements()
        .iter()
        .find(|x| x.order() % p == 0)
        .expect("Cauchy: an element of order divisible by p exists");
    let seed = seed.pow((seed.order() / p) as i64);
    let mut q = g.closure(&[seed], caps)?;
    while q.order() < target {
        let x = g
            .elements()
            .iter()
            .find(|x| !q.contains(x) && q.is_normalized_by(x) && q.contains(&x.pow(p as i64)))
            .expect("a non-Sylow p-subgroup grows inside its normalizer")
            .clone();
        let mut gens = q.generators().to_vec();
        gens.push(x);
        q = g.closure(&gens, caps)?;
    }
    Ok(q)
}

/// The conjugacy orbit of a subgroup, with one witness per conjugate.
#[derive(Clone, Debug)]
pub struct SubgroupOrbit {
    /// `(Q^w, w)` in breadth-first discovery order; the first entry is
    /// `(Q, 1)`.
    pub points: Vec<(Subgroup, Element)>,
    index: HashMap<Subgroup, usize>,
    /// For each point and each group generator, the index of its image.
    transitions: Vec<Vec<usize>>,
    generators: Vec<Element>,
}

impl SubgroupOrbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn witness(&self, q: &Subgroup) -> Option<&Element> {
        self.index.get(q).map(|&i| &self.points[i].1)
    }

    /// Conjugate subgroup key → witness.
    pub fn witness_map(&self) -> Vec<(SubgroupKey, Element)> {
        let mut v: Vec<(SubgroupKey, Element)> = self
            .points
            .iter()
            .map(|(s, w)| (s.key(), w.clone()))
            .collect();
        v.sort();
        v
    }

    /// Schreier generators of the stabilizer `N_G(Q)`.
    pub fn stabilizer_generators(&self) -> Vec<Element> {
        let mut out = Vec::new();
        for (i, (_, w)) in self.points.iter().enumerate() {
            for (s, &j) in self.generators.iter().zip(&self.transitions[i]) {
                let g = w.mul(s).mul(&self.points[j].1.inv());
                if !g.is_identity() {
                    out.push(g);
                }
            }
        }
        sorted(out)
    }
}

/// Orbit of `Q` under conjugation by `G`, breadth first over generators.
pub fn subgroup_orbit(g: &Group, q: &Subgroup, caps: &Caps) -> Result<SubgroupOrbit> {
    let gens = g.generators().to_vec();
    let mut points = vec![(q.clone(), g.identity())];
    let mut index = HashMap::from([(q.clone(), 0usize)]);
    let mut transitions: Vec<Vec<usize>> = Vec::new();
    let mut head = 0;
    while head < points.len() {
        let (cur, w) = points[head].clone();
        let mut row = Vec::with_capacity(gens.len());
        for s in &gens {
            let next = cur.conjugate(s);
            let j = match index.get(&next) {
                Some(&j) => j,
                None => {
                    if points.len() as u64 >= caps.max_orbit {
                        return Err(Error::cap("subgroup orbit size", caps.max_orbit));
                    }
                    points.push((next.clone(), w.mul(s)));
                    index.insert(next, points.len() - 1);
                    points.len() - 1
                }
            };
            row.push(j);
        }
        transitions.push(row);
        head += 1;
    }
    Ok(SubgroupOrbit {
        points,
        index,
        transitions,
        generators: gens,
    })
}

/// Thompson ordering on subgroups of `P`: compare `|N_P(·)|`, then order.
pub fn thompson_compare(p: &Subgroup, q: &Subgroup, r: &Subgroup) -> Ordering {
    let nq = normalizer(p, q).order();
    let nr = normalizer(p, r).order();
    nq.cmp(&nr).then(q.order().cmp(&r.order()))
}

/// `log_p |H|` for a p-group.
pub fn p_rank_of_order(h: &Subgroup, p: u64) -> Option<u32> {
    log_p(h.order(), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, CatalogName, GroupSpec};
    use crate::element::Perm;

    fn caps() -> Caps {
        Caps::default()
    }

    fn grp(name: CatalogName, params: &[u64]) -> Group {
        build(&GroupSpec::catalog(name, params), &caps()).unwrap()
    }

    fn el(n: usize, c: &[&[u32]]) -> Element {
        Perm::from_cycles(n, c).unwrap().into()
    }

    #[test]
    fn center_of_d8_is_central() {
        let d8 = grp(CatalogName::Dihedral, &[8]).as_subgroup();
        let z = center(&d8);
        assert_eq!(z.order(), 2);
        assert_eq!(centralizer(&d8, &z), d8);
    }

    #[test]
    fn normalizer_of_three_cycle_in_s4() {
        let s4 = grp(CatalogName::Sym, &[4]);
        let q = s4.closure(&[el(4, &[&[1, 2, 3]])], &caps()).unwrap();
        assert_eq!(normalizer(&s4.as_subgroup(), &q).order(), 6);
    }

    #[test]
    fn base_of_c3_wr_c3_is_self_centralizing() {
        let g = grp(CatalogName::WreathCyclic, &[3, 1]);
        let base = g.closure(&g.wreath().unwrap().base_generators, &caps()).unwrap();
        assert_eq!(base.order(), 27);
        assert_eq!(centralizer(&g.as_subgroup(), &base), base);
    }

    #[test]
    fn classes_of_known_groups() {
        let cases = [
            (grp(CatalogName::Dihedral, &[8]), 2),
            (grp(CatalogName::WreathCyclic, &[3, 1]), 3),
            (grp(CatalogName::WreathCyclic, &[3, 2]), 5),
            (grp(CatalogName::Quaternion, &[8]), 2),
            (grp(CatalogName::Cyclic, &[9]), 1),
        ];
        for (g, class) in cases {
            let cs = central_series(&g.as_subgroup(), &caps()).unwrap();
            assert_eq!(cs.class(), Some(class), "{g:?}");
            if let CentralSeries::Nilpotent(d) = cs {
                assert_eq!(d.upper[1], center(&g.as_subgroup()));
                assert_eq!(d.upper.len(), d.lower.len());
            }
        }
    }

    #[test]
    fn s3_is_not_nilpotent() {
        let s3 = grp(CatalogName::Sym, &[3]);
        let cs = central_series(&s3.as_subgroup(), &caps()).unwrap();
        assert!(cs.class().is_none());
        assert!(central_series(&s3.closure(&[], &caps()).unwrap(), &caps()).is_err());
    }

    #[test]
    fn agemo_omega_examples() {
        let c9 = grp(CatalogName::Cyclic, &[9]).as_subgroup();
        assert_eq!(agemo(&c9, 1, &caps()).unwrap().order(), 3);
        assert_eq!(agemo(&c9, 0, &caps()).unwrap(), c9);
        assert_eq!(omega(&c9, 0, &caps()).unwrap().order(), 1);
        let c9c3 = build(
            &GroupSpec::direct_product(vec![
                GroupSpec::catalog(CatalogName::Cyclic, &[9]),
                GroupSpec::catalog(CatalogName::Cyclic, &[3]),
            ]),
            &caps(),
        )
        .unwrap()
        .as_subgroup();
        let om = omega(&c9c3, 1, &caps()).unwrap();
        assert_eq!(om.order(), 9);
        assert_eq!(exponent(&om), 3);
        let s3 = grp(CatalogName::Sym, &[3]).as_subgroup();
        assert!(matches!(agemo(&s3, 1, &caps()), Err(Error::NotPGroup { .. })));
    }

    #[test]
    fn exponents() {
        assert_eq!(exponent(&grp(CatalogName::Quaternion, &[8]).as_subgroup()), 4);
        let v4 = build(
            &GroupSpec::direct_product(vec![
                GroupSpec::catalog(CatalogName::Cyclic, &[2]),
                GroupSpec::catalog(CatalogName::Cyclic, &[2]),
            ]),
            &caps(),
        )
        .unwrap();
        assert_eq!(exponent(&v4.as_subgroup()), 2);
        for (p, n) in [(2u64, 1u32), (2, 2), (3, 1), (3, 2)] {
            let g = grp(CatalogName::WreathCyclic, &[p, n as u64]);
            assert_eq!(exponent(&center(&g.as_subgroup())), p.pow(n));
        }
    }

    #[test]
    fn iterated_commutator_examples() {
        let g = grp(CatalogName::WreathCyclic, &[3, 1]);
        let w = g.wreath().unwrap();
        let derived = derived_subgroup(&g.as_subgroup(), &caps()).unwrap();
        let r = iterated_commutator(&derived, &w.x, 2, &caps()).unwrap();
        assert!(r.is_trivial());
        let r1 = iterated_commutator(&derived, &g.identity(), 1, &caps()).unwrap();
        assert!(r1.is_trivial());
        let base = g.closure(&w.base_generators[..1], &caps()).unwrap();
        assert_eq!(
            iterated_commutator(&base, &w.x, 1, &caps()).unwrap_err(),
            Error::NotNormalizing
        );
    }

    #[test]
    fn lattice_counts() {
        let d8 = grp(CatalogName::Dihedral, &[8]).as_subgroup();
        assert_eq!(all_subgroups(&d8, &caps()).unwrap().len(), 10);
        let c5 = grp(CatalogName::Cyclic, &[5]).as_subgroup();
        assert_eq!(all_subgroups(&c5, &caps()).unwrap().len(), 2);
        let s3 = grp(CatalogName::Sym, &[3]).as_subgroup();
        assert!(all_subgroups(&s3, &caps()).is_err());
    }

    #[test]
    fn thompson_examples() {
        let d8 = grp(CatalogName::Dihedral, &[8]).as_subgroup();
        assert_eq!(thompson_subgroup(&d8, &caps()).unwrap(), d8);
        let g = grp(CatalogName::WreathCyclic, &[3, 1]);
        let base = g.closure(&g.wreath().unwrap().base_generators, &caps()).unwrap();
        assert_eq!(thompson_subgroup(&g.as_subgroup(), &caps()).unwrap(), base);
        let c9 = grp(CatalogName::Cyclic, &[9]).as_subgroup();
        assert_eq!(thompson_subgroup(&c9, &caps()).unwrap(), c9);
    }

    #[test]
    fn sylow_examples() {
        let s4 = grp(CatalogName::Sym, &[4]);
        let p = sylow(&s4, 2, &caps()).unwrap();
        assert_eq!(p.order(), 8);
        assert!(!p.is_abelian());
        let c6 = grp(CatalogName::Cyclic, &[6]);
        assert_eq!(sylow(&c6, 3, &caps()).unwrap().order(), 3);
        assert!(matches!(sylow(&c6, 5, &caps()), Err(Error::PrimeDoesNotDivide { .. })));
    }

    #[test]
    fn orbit_of_three_cycle_subgroup_in_s4() {
        let s4 = grp(CatalogName::Sym, &[4]);
        let q = s4.closure(&[el(4, &[&[1, 2, 3]])], &caps()).unwrap();
        let orb = subgroup_orbit(&s4, &q, &caps()).unwrap();
        assert_eq!(orb.len(), 4);
        for (sub, w) in &orb.points {
            assert_eq!(&q.conjugate(w), sub);
        }
        let stab = s4.closure(&orb.stabilizer_generators(), &caps()).unwrap();
        assert_eq!(stab, normalizer(&s4.as_subgroup(), &q));
    }

    #[test]
    fn orbit_of_sylow_has_index_of_normalizer() {
        let s4 = grp(CatalogName::Sym, &[4]);
        let p = sylow(&s4, 2, &caps()).unwrap();
        let orb = subgroup_orbit(&s4, &p, &caps()).unwrap();
        let n = normalizer(&s4.as_subgroup(), &p);
        assert_eq!(orb.len() as u64, s4.order() / n.order());
    }

    #[test]
    fn thompson_order_examples() {
        let d8g = grp(CatalogName::Dihedral, &[8]);
        let d8 = d8g.as_subgroup();
        let z = center(&d8);
        let klein = all_subgroups(&d8, &caps())
            .unwrap()
            .into_iter()
            .find(|s| s.order() == 4 && !s.elements().iter().any(|e| e.order() == 4))
            .unwrap();
        assert_eq!(thompson_compare(&d8, &z, &klein), Ordering::Less);
        assert_eq!(thompson_compare(&d8, &z, &z), Ordering::Equal);
        assert_eq!(thompson_compare(&d8, &klein, &d8), Ordering::Less);
    }
}
