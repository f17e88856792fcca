//! Acceptance criteria, one line of output each. Runs without the libtest
//! harness so the summary is always printed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use fusion_forge::catalog::{self, exponent_sum, CatalogName, GroupSpec};
use fusion_forge::fusion::{fusion_of_group, FusionSystem, PGroup};
use fusion_forge::structure;
use fusion_forge::theorems::{self, minimal_n, Outcome};
use fusion_forge::{Caps, Element, Group, Subgroup};

struct Instance {
    name: &'static str,
    f: FusionSystem,
}

fn realized(name: &'static str, spec: GroupSpec, p: u64, caps: &Caps) -> Instance {
    let g = catalog::build(&spec, caps).unwrap();
    let s = structure::sylow(&g, p, caps).unwrap();
    Instance {
        name,
        f: fusion_of_group(&g, &s, p, caps).unwrap(),
    }
}

fn corpus(caps: &Caps) -> Vec<Instance> {
    use CatalogName::*;
    vec![
        realized("S4/2", GroupSpec::catalog(Sym, &[4]), 2, caps),
        realized("A5/2", GroupSpec::catalog(Alt, &[5]), 2, caps),
        realized("A6/2", GroupSpec::catalog(Alt, &[6]), 2, caps),
        realized("S6/2", GroupSpec::catalog(Sym, &[6]), 2, caps),
        realized(
            "C4xS4/2",
            GroupSpec::direct_product(vec![
                GroupSpec::catalog(Cyclic, &[4]),
                GroupSpec::catalog(Sym, &[4]),
            ]),
            2,
            caps,
        ),
        realized("A9/3", GroupSpec::catalog(Alt, &[9]), 3, caps),
    ]
}

fn wreath(p: u64, n: u64, caps: &Caps) -> Group {
    catalog::build(&GroupSpec::catalog(CatalogName::WreathCyclic, &[p, n]), caps).unwrap()
}

fn generated(g: &Group, elems: &[Element]) -> Subgroup {
    g.closure(elems, &Caps::default()).unwrap()
}

/// Lower central series by brute force over element pairs.
fn class_by_brute_force(g: &Group, h: &Subgroup) -> u32 {
    let mut term = h.clone();
    let mut class = 0;
    while !term.is_trivial() {
        let comms: Vec<Element> = term
            .elements()
            .iter()
            .flat_map(|a| h.elements().iter().map(move |b| a.commutator(b)))
            .collect();
        term = generated(g, &comms);
        class += 1;
    }
    class
}

fn center_exponent_by_brute_force(h: &Subgroup) -> u64 {
    h.elements()
        .iter()
        .filter(|z| h.generators().iter().all(|g| z.mul(g) == g.mul(z)))
        .map(|z| z.order())
        .max()
        .unwrap()
}

struct Line {
    ok: bool,
    text: String,
}

fn line(n: u32, ok: bool, elapsed: Duration, limit: Duration, what: String) -> Line {
    let in_time = elapsed <= limit;
    Line {
        ok: ok && in_time,
        text: format!(
            "criterion {n:>2}: {} {what} ({:.2} s, limit {} s)",
            if ok && in_time { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        ),
    }
}

const MINUTE: Duration = Duration::from_secs(60);

fn criterion_1(caps: &Caps) -> Line {
    let t = Instant::now();
    let g = catalog::build(&GroupSpec::catalog(CatalogName::Alt, &[9]), caps).unwrap();
    // |A9| = 9!/2 = 2^6 3^4 5 7.
    let three_part = {
        let mut m = (1..=9u64).product::<u64>() / 2;
        let mut k = 1;
        while m % 3 == 0 {
            m /= 3;
            k *= 3;
        }
        k
    };
    let p = structure::sylow(&g, 3, caps).unwrap();
    let class = class_by_brute_force(&g, &p);
    let ez = center_exponent_by_brute_force(&p);
    let f = fusion_of_group(&g, &p, 3, caps).unwrap();
    let op = f.pgroup().order(f.op_subgroup().unwrap());
    let ok = p.order() == 81 && three_part == 81 && class == 3 && ez == 3 && op == 1;
    line(
        1,
        ok,
        t.elapsed(),
        10 * MINUTE,
        format!("Sylow 3 of A9: |P| = {}, class {class}, exp Z(P) = {ez}, |O_3(F)| = {op}", p.order()),
    )
}

fn criterion_2(caps: &Caps) -> Line {
    let t = Instant::now();
    let mut ok = true;
    let mut orders = Vec::new();
    for (p, n) in [(2u64, 1u32), (2, 2), (3, 1), (3, 2)] {
        let g = wreath(p, n as u64, caps);
        let ws = catalog::wreath_structure(&g, caps).unwrap();
        let engine = structure::iterated_commutator(&ws.derived, &ws.x, (p - 1) as u32, caps).unwrap();
        // Oracle: iterate H -> <[h, x] : h in H>, and collect elements of P'
        // of order dividing p^(n-1).
        let mut h = ws.derived.clone();
        for _ in 0..p - 1 {
            let comms: Vec<Element> = h.elements().iter().map(|a| a.commutator(&ws.x)).collect();
            h = generated(&g, &comms);
        }
        let bound = p.pow(n - 1);
        let omega: Vec<Element> = ws
            .derived
            .elements()
            .iter()
            .filter(|e| bound % e.order() == 0)
            .cloned()
            .collect();
        let omega = generated(&g, &omega);
        ok &= engine == h && h == omega;
        if (p, n) == (3, 2) {
            ok &= omega.order() == 9;
        }
        orders.push(format!("({p},{n}): {}", omega.order()));
    }
    line(
        2,
        ok,
        t.elapsed(),
        MINUTE,
        format!("[P', x; p-1] = omega_(n-1)(P'), orders {}", orders.join(", ")),
    )
}

fn criterion_3() -> Line {
    let t = Instant::now();
    let mut ok = true;
    for p in [3u64, 5, 7, 11] {
        // Pascal's triangle row p-1.
        let mut row = vec![1i128];
        for _ in 0..p - 1 {
            let mut next = vec![1i128; row.len() + 1];
            for k in 1..row.len() {
                next[k] = row[k - 1] + row[k];
            }
            row = next;
        }
        let sum: i128 = (0..=(p - 2) as usize)
            .map(|k| if k % 2 == 0 { row[k] } else { -row[k] })
            .sum();
        let direct = -(p as i128) + 1 + sum;
        ok &= direct == -(p as i128) && exponent_sum(p) == direct;
    }
    line(3, ok, t.elapsed(), MINUTE, "exponent sum equals -p for p in {3, 5, 7, 11}".into())
}

fn criterion_4(corpus: &[Instance]) -> Line {
    let t = Instant::now();
    let mut ok = true;
    let mut runs = 0;
    for i in corpus {
        let lat = i.f.lattice();
        let top = i.f.base();
        let p = i.f.prime();
        let lo = minimal_n(lat.class(top), p);
        let mut hi = lo;
        while lat.order(lat.agemo(lat.center(top), hi)) > 1 {
            hi += 1;
        }
        for n in lo..=hi + 1 {
            runs += 1;
            let r = theorems::verify_theorem_norm(&i.f, n);
            if r.conclusion != Outcome::Pass {
                ok = false;
                println!("  theorem-norm {} n = {n}: {:?}", i.name, r.conclusion);
            }
        }
    }
    line(4, ok, t.elapsed(), 15 * MINUTE, format!("agemo^n(Z(P)) normal in F, {runs} (instance, n) pairs"))
}

fn criterion_5(corpus: &[Instance]) -> Line {
    let t = Instant::now();
    let mut ok = true;
    let mut nontrivial = Vec::new();
    for i in corpus {
        let r = theorems::verify_theorem_fact(&i.f).unwrap();
        ok &= r.conclusion == Outcome::Pass;
        let lat = i.f.lattice();
        if lat.order(lat.agemo(lat.center(i.f.base()), 1)) > 1 {
            nontrivial.push(i.name);
        }
    }
    ok &= nontrivial.contains(&"C4xS4/2");
    line(
        5,
        ok,
        t.elapsed(),
        15 * MINUTE,
        format!("F = <C_F(agemo^1(Z(P))), N_F(J(P))>; agemo^1(Z(P)) nontrivial for {nontrivial:?}"),
    )
}

fn criterion_6(corpus: &[Instance]) -> Line {
    let t = Instant::now();
    let mut ok = true;
    let mut slowest = Duration::ZERO;
    let mut scanned = 0;
    for i in corpus {
        let s = Instant::now();
        let r = theorems::verify_equivnorm_all(&i.f).unwrap();
        slowest = slowest.max(s.elapsed());
        scanned += i.f.nodes().count();
        ok &= r.conclusion == Outcome::Pass;
    }
    line(
        6,
        ok,
        slowest,
        10 * MINUTE,
        format!(
            "(a), (b), (c) agree on all {scanned} subgroups; slowest instance shown, total {:.2} s",
            t.elapsed().as_secs_f64()
        ),
    )
}

/// Catalog p-groups of order at most 256, plus wreath products within caps.
fn catalog_p_groups() -> Vec<(String, GroupSpec)> {
    use CatalogName::*;
    let mut v: Vec<(String, GroupSpec)> = Vec::new();
    for (p, max) in [(2u64, 256u64), (3, 243), (5, 125), (7, 49), (11, 121), (13, 169)] {
        let mut q = p;
        while q <= max {
            v.push((format!("C{q}"), GroupSpec::catalog(Cyclic, &[q])));
            q *= p;
        }
    }
    let mut m = 8;
    while m <= 256 {
        v.push((format!("D{m}"), GroupSpec::catalog(Dihedral, &[m])));
        v.push((format!("Q{m}"), GroupSpec::catalog(Quaternion, &[m])));
        m *= 2;
    }
    let small2 = [
        ("C2", GroupSpec::catalog(Cyclic, &[2])),
        ("C4", GroupSpec::catalog(Cyclic, &[4])),
        ("D8", GroupSpec::catalog(Dihedral, &[8])),
        ("Q8", GroupSpec::catalog(Quaternion, &[8])),
        ("D16", GroupSpec::catalog(Dihedral, &[16])),
        ("Q16", GroupSpec::catalog(Quaternion, &[16])),
    ];
    for (i, (a, sa)) in small2.iter().enumerate() {
        for (b, sb) in &small2[i..] {
            v.push((format!("{a}x{b}"), GroupSpec::direct_product(vec![sa.clone(), sb.clone()])));
        }
    }
    let c3 = GroupSpec::catalog(Cyclic, &[3]);
    let c9 = GroupSpec::catalog(Cyclic, &[9]);
    v.push(("C3xC3".into(), GroupSpec::direct_product(vec![c3.clone(), c3.clone()])));
    v.push(("C3xC9".into(), GroupSpec::direct_product(vec![c3.clone(), c9.clone()])));
    v.push(("C3xC3xC3".into(), GroupSpec::direct_product(vec![c3.clone(), c3.clone(), c3])));
    v.push(("C9xC9".into(), GroupSpec::direct_product(vec![c9.clone(), c9])));
    for (p, n) in [(2u64, 1u64), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2)] {
        v.push((format!("C{}wrC{p}", p.pow(n as u32)), GroupSpec::catalog(WreathCyclic, &[p, n])));
    }
    v
}

fn criterion_7(caps: &Caps) -> Line {
    let t = Instant::now();
    let mut ok = true;
    let mut count = 0;
    for (name, spec) in catalog_p_groups() {
        let g = catalog::build(&spec, caps).unwrap();
        let p = fusion_forge::table::prime_of_power(g.order()).unwrap();
        let pg = PGroup::new(&g.as_subgroup(), p, caps).unwrap();
        let lat = pg.lattice();
        let lo = minimal_n(lat.class(lat.top()), p).max(1);
        for n in lo..=lo + 1 {
            let r = theorems::verify_goldcent(&pg, n);
            if r.conclusion != Outcome::Pass {
                ok = false;
                println!("  goldcent {name} n = {n}: {:?}", r.conclusion);
            }
        }
        let r = theorems::verify_goldj(&pg);
        if r.conclusion != Outcome::Pass {
            ok = false;
            println!("  goldj {name}: {:?}", r.conclusion);
        }
        count += 1;
    }
    line(7, ok, t.elapsed(), 15 * MINUTE, format!("goldcent and goldj on {count} catalog p-groups"))
}

fn criterion_8(corpus: &[Instance], caps: &Caps) -> Line {
    let t = Instant::now();
    let mut ok = corpus.iter().all(|i| i.f.check_saturation().saturated());
    let lop = theorems::lopsided_system(3, caps).unwrap();
    let report = lop.check_saturation();
    ok &= !report.saturated();
    let witness = match &report.extension_failure {
        Some(x) => {
            // No F-morphism out of N_phi restricts to phi.
            let lat = lop.lattice();
            let src = &lat.node(x.source).elems;
            let n = &lat.node(x.n_phi);
            let extends = lop.hom_tables(x.n_phi, lop.base()).iter().any(|h| {
                src.iter()
                    .enumerate()
                    .all(|(k, &y)| h[n.position(y).unwrap()] == x.phi[k])
            });
            ok &= !extends && lat.is_subgroup(x.source, x.n_phi) && x.n_phi != x.source;
            format!(
                "phi on a subgroup of order {} has no extension to N_phi of order {}",
                lat.order(x.source),
                lat.order(x.n_phi)
            )
        }
        None => {
            ok = false;
            "no failure witness".into()
        }
    };
    line(8, ok, t.elapsed(), 15 * MINUTE, format!("corpus saturated; C3xC3 system rejected: {witness}"))
}

fn criterion_9(corpus: &[Instance]) -> Line {
    let t = Instant::now();
    let ok = corpus
        .iter()
        .all(|i| theorems::verify_alperin(&i.f).unwrap().conclusion == Outcome::Pass);
    line(9, ok, t.elapsed(), 15 * MINUTE, "Aut_F on the Alperin family regenerates F".into())
}

fn criterion_10(corpus: &[Instance]) -> Line {
    let t = Instant::now();
    let mut ok = true;
    let mut covered = Vec::new();
    for i in corpus {
        let lat = i.f.lattice();
        let n = minimal_n(lat.class(i.f.base()), i.f.prime()).max(1);
        let r = theorems::verify_corollary_exponent(&i.f, n);
        let op_trivial = lat.order(i.f.op_subgroup().unwrap()) == 1;
        let expected = if op_trivial { Outcome::Pass } else { Outcome::Vacuous };
        ok &= r.conclusion == expected;
        if op_trivial {
            covered.push(i.name);
        }
    }
    let exp = |name: &str| {
        let f = &corpus.iter().find(|i| i.name == name).unwrap().f;
        f.lattice().exponent(f.base())
    };
    ok &= exp("A6/2") == 4 && 4 <= 2u64.pow(2);
    ok &= exp("A9/3") == 9 && 9 <= 3u64.pow(3);
    line(
        10,
        ok,
        t.elapsed(),
        15 * MINUTE,
        format!("exp P <= p^(n^2(p-1)+n) on {covered:?}; exp D8 = 4 <= 4, exp C3wrC3 = 9 <= 27"),
    )
}

fn main() -> ExitCode {
    let caps = Caps::default();
    let t = Instant::now();
    let corpus = corpus(&caps);
    println!("corpus built in {:.2} s", t.elapsed().as_secs_f64());
    let lines = [
        criterion_1(&caps),
        criterion_2(&caps),
        criterion_3(),
        criterion_4(&corpus),
        criterion_5(&corpus),
        criterion_6(&corpus),
        criterion_7(&caps),
        criterion_8(&corpus, &caps),
        criterion_9(&corpus),
        criterion_10(&corpus),
    ];
    for l in &lines {
        println!("{}", l.text);
    }
    let passed = lines.iter().filter(|l| l.ok).count();
    println!("acceptance: {passed}/{} criteria pass", lines.len());
    if passed == lines.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
