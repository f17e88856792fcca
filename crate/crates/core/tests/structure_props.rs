use std::collections::HashSet;

use proptest::prelude::*;

use fusion_forge::catalog::{build, CatalogName, GroupSpec};
use fusion_forge::structure::{self, CentralSeries};
use fusion_forge::{Caps, Element, Group, Subgroup};

fn group(name: CatalogName, params: &[u64]) -> Group {
    build(&GroupSpec::catalog(name, params), &Caps::default()).unwrap()
}

fn product(a: GroupSpec, b: GroupSpec) -> Group {
    build(&GroupSpec::direct_product(vec![a, b]), &Caps::default()).unwrap()
}

fn p_groups() -> Vec<Group> {
    use CatalogName::*;
    vec![
        group(Dihedral, &[8]),
        group(Quaternion, &[8]),
        group(Dihedral, &[16]),
        group(Quaternion, &[16]),
        group(WreathCyclic, &[2, 2]),
        group(WreathCyclic, &[3, 1]),
        product(GroupSpec::catalog(Cyclic, &[4]), GroupSpec::catalog(Cyclic, &[2])),
        product(GroupSpec::catalog(Dihedral, &[8]), GroupSpec::catalog(Cyclic, &[2])),
        product(GroupSpec::catalog(Cyclic, &[3]), GroupSpec::catalog(Cyclic, &[9])),
    ]
}

fn mixed_groups() -> Vec<Group> {
    use CatalogName::*;
    vec![
        group(Sym, &[4]),
        group(Alt, &[5]),
        group(Sym, &[5]),
        group(Dihedral, &[12]),
        group(Sl, &[2, 3]),
        group(Dihedral, &[8]),
    ]
}

fn closure(g: &Group, gens: &[Element]) -> Subgroup {
    g.closure(gens, &Caps::default()).unwrap()
}

/// Every subgroup, by repeatedly adjoining single elements starting from
/// the trivial subgroup. Each subgroup of a finite group arises this way.
fn subgroups_by_adjoining(g: &Group) -> HashSet<Vec<Element>> {
    let mut seen: HashSet<Vec<Element>> = HashSet::new();
    let start = closure(g, &[]);
    seen.insert(start.elements().to_vec());
    let mut frontier = vec![start];
    while let Some(h) = frontier.pop() {
        for x in g.elements() {
            if h.contains(x) {
                continue;
            }
            let mut gens = h.generators().to_vec();
            gens.push(x.clone());
            let k = closure(g, &gens);
            if seen.insert(k.elements().to_vec()) {
                frontier.push(k);
            }
        }
    }
    seen
}

#[test]
fn all_subgroups_matches_element_adjoining() {
    let caps = Caps::default();
    for g in p_groups().into_iter().filter(|g| g.order() <= 32) {
        let engine: HashSet<Vec<Element>> = structure::all_subgroups(&g.as_subgroup(), &caps)
            .unwrap()
            .iter()
            .map(|s| s.elements().to_vec())
            .collect();
        let oracle = subgroups_by_adjoining(&g);
        assert_eq!(engine, oracle, "group of order {}", g.order());
    }
}

#[test]
fn known_subgroup_counts() {
    let caps = Caps::default();
    let count = |g: &Group| structure::all_subgroups(&g.as_subgroup(), &caps).unwrap().len();
    assert_eq!(count(&group(CatalogName::Dihedral, &[8])), 10);
    assert_eq!(count(&group(CatalogName::Quaternion, &[8])), 6);
    assert_eq!(count(&group(CatalogName::Dihedral, &[16])), 19);
    assert_eq!(count(&group(CatalogName::WreathCyclic, &[3, 1])), 50);
}

fn pick(g: &Group, i: usize) -> Element {
    g.elements()[i % g.elements().len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lagrange(gi in 0usize..6, a in 0usize..200, b in 0usize..200) {
        let g = &mixed_groups()[gi];
        let h = closure(g, &[pick(g, a), pick(g, b)]);
        prop_assert_eq!(g.order() % h.order(), 0);
        for x in h.elements() {
            prop_assert_eq!(h.order() % x.order(), 0);
        }
    }

    #[test]
    fn closure_is_idempotent(gi in 0usize..6, a in 0usize..200, b in 0usize..200) {
        let g = &mixed_groups()[gi];
        let h = closure(g, &[pick(g, a), pick(g, b)]);
        let again = closure(g, h.elements());
        prop_assert_eq!(&again, &h);
        let from_gens = closure(g, h.generators());
        prop_assert_eq!(&from_gens, &h);
    }

    #[test]
    fn exponent_divides_order(gi in 0usize..9, a in 0usize..200, b in 0usize..200) {
        let g = &p_groups()[gi];
        let h = closure(g, &[pick(g, a), pick(g, b)]);
        let e = structure::exponent(&h);
        prop_assert_eq!(h.order() % e, 0);
        prop_assert!(h.elements().iter().all(|x| e % x.order() == 0));
        prop_assert!(h.elements().iter().any(|x| x.order() == e));
    }

    #[test]
    fn agemo_and_omega_commute_with_conjugation(
        gi in 0usize..9, a in 0usize..200, b in 0usize..200, c in 0usize..200, n in 0u32..3,
    ) {
        let caps = Caps::default();
        let g = &p_groups()[gi];
        let h = closure(g, &[pick(g, a), pick(g, b)]);
        let x = pick(g, c);
        let hx = h.conjugate(&x);
        let ag = structure::agemo(&h, n, &caps).unwrap();
        let om = structure::omega(&h, n, &caps).unwrap();
        prop_assert!(ag.is_subgroup_of(&h));
        prop_assert!(om.is_subgroup_of(&h));
        prop_assert_eq!(structure::agemo(&hx, n, &caps).unwrap(), ag.conjugate(&x));
        prop_assert_eq!(structure::omega(&hx, n, &caps).unwrap(), om.conjugate(&x));
        // Characteristic subgroups of H are normalized by N_G(H).
        let norm = structure::normalizer(&g.as_subgroup(), &h);
        for y in norm.generators() {
            prop_assert!(ag.is_normalized_by(y));
            prop_assert!(om.is_normalized_by(y));
        }
    }

    #[test]
    fn omega_by_element_orders(gi in 0usize..9, a in 0usize..200, b in 0usize..200, n in 0u32..3) {
        let caps = Caps::default();
        let g = &p_groups()[gi];
        let h = closure(g, &[pick(g, a), pick(g, b)]);
        if h.is_trivial() {
            return Ok(());
        }
        let p = fusion_forge::table::prime_of_power(h.order()).unwrap();
        let small: Vec<Element> = h
            .elements()
            .iter()
            .filter(|x| p.pow(n) % x.order() == 0)
            .cloned()
            .collect();
        prop_assert_eq!(structure::omega(&h, n, &caps).unwrap(), closure(g, &small));
        let powers: Vec<Element> = h.elements().iter().map(|x| x.pow(p.pow(n) as i64)).collect();
        prop_assert_eq!(structure::agemo(&h, n, &caps).unwrap(), closure(g, &powers));
    }

    #[test]
    fn central_series_are_consistent(gi in 0usize..9, a in 0usize..200, b in 0usize..200) {
        let caps = Caps::default();
        let g = &p_groups()[gi];
        let h = closure(g, &[pick(g, a), pick(g, b)]);
        if h.is_trivial() {
            return Ok(());
        }
        let CentralSeries::Nilpotent(d) = structure::central_series(&h, &caps).unwrap() else {
            return Err(TestCaseError::fail("p-groups are nilpotent"));
        };
        let c = d.class as usize;
        prop_assert_eq!(d.upper.len(), c + 1);
        prop_assert_eq!(d.lower.len(), c + 1);
        prop_assert!(d.upper[0].is_trivial());
        prop_assert_eq!(&d.upper[c], &h);
        prop_assert_eq!(&d.lower[0], &h);
        prop_assert!(d.lower[c].is_trivial());
        // γ_{i+1} ≤ Z^{c-i}.
        for i in 0..=c {
            prop_assert!(d.lower[i].is_subgroup_of(&d.upper[c - i]));
        }
        prop_assert_eq!(c == 1, h.is_abelian() && !h.is_trivial());
        prop_assert_eq!(&d.upper[1], &structure::center(&h));
    }

    #[test]
    fn sylow_has_full_p_part(gi in 0usize..6, pi in 0usize..3) {
        let caps = Caps::default();
        let g = &mixed_groups()[gi];
        let p = [2u64, 3, 5][pi];
        if g.order() % p != 0 {
            prop_assert!(structure::sylow(g, p, &caps).is_err());
            return Ok(());
        }
        let s = structure::sylow(g, p, &caps).unwrap();
        prop_assert_eq!(s.order(), structure::p_part(g.order(), p));
        prop_assert_eq!(fusion_forge::table::prime_of_power(s.order()), Some(p));
        prop_assert!(s.is_subgroup_of(&g.as_subgroup()));
    }

    #[test]
    fn subgroup_orbit_witnesses_conjugate(gi in 0usize..6, a in 0usize..200, b in 0usize..200) {
        let caps = Caps::default();
        let g = &mixed_groups()[gi];
        let q = closure(g, &[pick(g, a), pick(g, b)]);
        let orbit = structure::subgroup_orbit(g, &q, &caps).unwrap();
        let whole = g.as_subgroup();
        let norm = structure::normalizer(&whole, &q);
        prop_assert_eq!(orbit.len() as u64 * norm.order(), g.order());
        let mut keys = HashSet::new();
        for (conj, w) in &orbit.points {
            prop_assert_eq!(&q.conjugate(w), conj);
            prop_assert_eq!(orbit.witness(conj), Some(w));
            prop_assert!(keys.insert(conj.clone()));
        }
        let stab = orbit.stabilizer_generators();
        prop_assert!(stab.iter().all(|s| q.is_normalized_by(s)));
        prop_assert_eq!(closure(g, &stab), norm);
    }

    #[test]
    fn centralizer_and_normalizer_by_definition(gi in 0usize..6, a in 0usize..200) {
        let g = &mixed_groups()[gi];
        let q = closure(g, &[pick(g, a)]);
        let whole = g.as_subgroup();
        let c = structure::centralizer(&whole, &q);
        let n = structure::normalizer(&whole, &q);
        for x in g.elements() {
            let centralizes = q.elements().iter().all(|y| x.mul(y) == y.mul(x));
            prop_assert_eq!(c.contains(x), centralizes);
            prop_assert_eq!(n.contains(x), q.conjugate(x) == q);
        }
        prop_assert!(c.is_subgroup_of(&n));
    }
}
