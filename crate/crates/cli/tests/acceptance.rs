//! Acceptance criteria. Prints one PASS/FAIL line per criterion and fails
//! if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hamsym::abelian::AbelianGroup;
use hamsym::canon::{edge_orbits, graph_automorphisms, graph_canonical_form};
use hamsym::census::{enumerate_generating_sets, run_census, CensusOptions, CensusReport, CensusVerdict, GroupSpec};
use hamsym::construct::{
    cartesian_product, complement_of_cycle, complete_bipartite, complete_graph, cycle_graph, group_induced_layers,
    prism, regular_gadget, truncation, LayeredView,
};
use hamsym::factor::{classify_by_theorems, Verdict};
use hamsym::family::parse_family;
use hamsym::hamilton::{
    boustrophedon_cycles, count_ham_cycles, enumerate_ham_cycles, find_ham_cycle, is_ham_transitive, kappa_of_cycle,
    orbit_classes, zigzag_cycle, ClassCount, HamCycle, SearchLimits, ZigzagSpec,
};
use hamsym::Graph;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cert(g: &Graph) -> Vec<u8> {
    graph_canonical_form(g).cert
}

fn transitive(g: &Graph) -> bool {
    is_ham_transitive(g, &SearchLimits::default()).expect("decided").is_transitive()
}

fn census16() -> &'static CensusReport {
    static REPORT: OnceLock<CensusReport> = OnceLock::new();
    REPORT.get_or_init(|| {
        let mut opts = CensusOptions::new(16);
        opts.jobs = Some(8);
        run_census(&opts).expect("census runs")
    })
}

/// All graphs on `n` vertices up to isomorphism: each graph on `n` vertices
/// is a graph on `n - 1` vertices plus a last vertex with some neighborhood.
fn all_graphs(max_n: usize) -> Vec<Vec<Graph>> {
    let mut by_n: Vec<Vec<Graph>> = vec![vec![Graph::empty(0).unwrap()]];
    for n in 1..=max_n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for g in &by_n[n - 1] {
            let base: Vec<(usize, usize)> = g.edges().map(|e| (e.0, e.1)).collect();
            for mask in 0u32..(1 << (n - 1)) {
                let mut pairs = base.clone();
                pairs.extend((0..n - 1).filter(|v| mask >> v & 1 == 1).map(|v| (v, n - 1)));
                let h = Graph::from_pairs(n, &pairs).unwrap();
                if seen.insert(cert(&h)) {
                    next.push(h);
                }
            }
        }
        by_n.push(next);
    }
    by_n
}

fn graph_corpus() -> &'static Vec<Vec<Graph>> {
    static CORPUS: OnceLock<Vec<Vec<Graph>>> = OnceLock::new();
    CORPUS.get_or_init(|| all_graphs(7))
}

fn grid_layers(k: usize, l: usize) -> LayeredView {
    let group = AbelianGroup::new(vec![l, k]).unwrap();
    let s: Vec<_> = [[1, 0], [-1, 0], [0, 1], [0, -1]].iter().map(|x| group.elem_mod(x).unwrap()).collect();
    let s = hamsym::abelian::GeneratingSet::new(&group, s).unwrap();
    let sub = vec![group.elem_mod(&[0, 1]).unwrap(), group.elem_mod(&[0, -1]).unwrap()];
    group_induced_layers(&group, &s, &sub).unwrap()
}

fn criterion_1() -> Outcome {
    let report = census16();
    let mut expected: BTreeMap<Vec<u8>, String> = BTreeMap::new();
    for n in 3..=16 {
        expected.insert(cert(&complete_graph(n).unwrap()), format!("K{n}"));
        expected.insert(cert(&cycle_graph(n).unwrap()), format!("C{n}"));
    }
    for m in 2..=8 {
        expected.insert(cert(&complete_bipartite(m, m).unwrap()), format!("K{m},{m}"));
    }
    for k in [3, 4, 5, 7] {
        expected.insert(cert(&prism(k).unwrap().graph), format!("C{k}xK2"));
    }
    let expected: BTreeSet<String> = expected.keys().map(hex::encode).collect();
    let found: BTreeSet<String> = report.summary.iter().map(|s| s.cert.clone()).collect();
    let inconclusive = report.inconclusive().count();
    ensure(inconclusive == 0, || format!("{inconclusive} inconclusive graphs"))?;
    let missing = expected.difference(&found).count();
    let extra: Vec<&String> = found.difference(&expected).collect();
    ensure(missing == 0 && extra.is_empty(), || format!("{missing} expected members missing, {} unexpected", extra.len()))?;
    let graphs: usize = report.orders.iter().map(|o| o.distinct_graphs).sum();
    Ok(format!("{} members over {graphs} distinct Cayley graphs of orders 3..16", found.len()))
}

fn criterion_2() -> Outcome {
    let mut opts = CensusOptions::new(3);
    opts.include_order_27 = true;
    opts.graph_budget = Some(Duration::from_secs(60));
    let report = run_census(&opts).map_err(|e| e.to_string())?;
    let k27 = hex::encode(cert(&complete_graph(27).unwrap()));
    let noncyclic = [GroupSpec { invariant_factors: vec![3, 3, 3] }, GroupSpec { invariant_factors: vec![3, 9] }];
    let mut decided = 0;
    let mut inconclusive = 0;
    for r in report.records.iter().filter(|r| r.order == 27) {
        if !r.realized_by.iter().any(|g| noncyclic.contains(g)) {
            continue;
        }
        match r.verdict {
            CensusVerdict::Inconclusive => inconclusive += 1,
            v => {
                decided += 1;
                ensure((v == CensusVerdict::InH) == (r.cert == k27), || format!("{} has verdict {v:?}", r.family_tag))?;
            }
        }
    }
    Ok(format!("{decided} graphs of Z3^3 and Z9xZ3 decided, only K27 transitive; {inconclusive} inconclusive"))
}

fn criterion_3() -> Outcome {
    let members: BTreeSet<Vec<u8>> = [3, 4, 5, 7].iter().map(|&n| cert(&cycle_graph(n).unwrap())).collect();
    let mut checked = 0;
    for n in 3..=7 {
        for g in &graph_corpus()[n] {
            if !g.is_connected() || find_ham_cycle(g).is_none() {
                continue;
            }
            let prod = cartesian_product(g, &complete_graph(2).unwrap()).unwrap().graph;
            let got = transitive(&prod);
            ensure(got == members.contains(&cert(g)), || format!("G with edges {:?}: transitive = {got}", g.edges().collect::<Vec<_>>()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} Hamiltonian graphs G on 3..7 vertices, G x K2 transitive exactly for C3, C4, C5, C7"))
}

fn criterion_4() -> Outcome {
    let c = |n| cycle_graph(n).unwrap();
    let k = |n| complete_graph(n).unwrap();
    let cases = [
        ("C3xC5", c(3), c(5)),
        ("C3xK4", c(3), k(4)),
        ("C5xK4", c(5), k(4)),
        ("K3xK3", k(3), k(3)),
        ("C5xC5", c(5), c(5)),
        ("K4xK4", k(4), k(4)),
    ];
    let mut notes = Vec::new();
    for (name, g, h) in cases {
        let t = Instant::now();
        let prod = cartesian_product(&g, &h).unwrap().graph;
        ensure(!transitive(&prod), || format!("{name} is transitive"))?;
        let p = classify_by_theorems(&prod, None);
        ensure(p.verdict == Verdict::NotInH, || format!("{name} predicted {:?}", p.verdict))?;
        let secs = t.elapsed().as_secs_f64();
        ensure(secs <= 60.0, || format!("{name} took {secs:.1}s"))?;
        notes.push(format!("{name} {secs:.2}s"));
    }
    Ok(format!("all not transitive ({})", notes.join(", ")))
}

fn criterion_5() -> Outcome {
    let mut n = 0;
    for k in 3..=8 {
        for l in 3..=8 {
            let pv = cartesian_product(&cycle_graph(k).unwrap(), &cycle_graph(l).unwrap()).unwrap();
            let w = boustrophedon_cycles(&pv).map_err(|e| e.to_string())?;
            let want = (2 * (l - 1), 2 * (l - 1) + (k - 2) * (l - 2));
            ensure(w.eh_counts == want, || format!("k={k} l={l}: {:?} vs {want:?}", w.eh_counts))?;
            n += 1;
        }
    }
    Ok(format!("{n} products C_k x C_l match both E_H counts"))
}

fn criterion_6() -> Outcome {
    let mut walked = 0;
    for k in 4..=9 {
        for l in [5, 7, 9] {
            let lv = grid_layers(k, l);
            let pairs = (l - 3) / 2;
            let mut achieved = BTreeSet::new();
            for a in (0..pairs).map(|_| 0..=k - 2).multi_cartesian_product() {
                let (c, mu) = zigzag_cycle(&lv, &ZigzagSpec::new(a.clone())).map_err(|e| e.to_string())?;
                ensure(c.is_cycle_of(&lv.graph), || format!("k={k} l={l} a={a:?}: not a cycle"))?;
                let closed = 2 * k - 1 + 2 * a.iter().map(|x| x + 1).sum::<usize>();
                ensure(mu == closed, || format!("k={k} l={l} a={a:?}: mu {mu} vs {closed}"))?;
                achieved.insert(mu);
                walked += 1;
            }
            let (lo, hi) = (2 * k - 1 + (l - 3), 2 * k - 1 + (l - 3) * (k - 1));
            for target in (lo..=hi).filter(|m| m % 2 == 1) {
                ensure(achieved.contains(&target), || format!("k={k} l={l}: mu {target} not achieved"))?;
            }
        }
    }
    Ok(format!("{walked} zigzag cycles walked; every odd mu in range achieved"))
}

fn criterion_7() -> Outcome {
    let mut sets = 0;
    for n in 3..=12 {
        let group = AbelianGroup::cyclic(n).unwrap();
        let one = group.elem_mod(&[1]).unwrap();
        for s in enumerate_generating_sets(&group).filter(|s| s.elems().contains(&one)) {
            let g = hamsym::construct::cayley_graph(&group, &s).unwrap();
            let seq: Vec<usize> = (0..n).collect();
            let c = HamCycle::new(&g, &seq).map_err(|e| e.to_string())?;
            let kappa = kappa_of_cycle(&g, &c).unwrap();
            ensure(kappa == n, || format!("Cay(Z{n}, {{{}}}) gives kappa {kappa}", s.format(&group)))?;
            sets += 1;
        }
    }
    let mut members = 0;
    for r in census16().records.iter().filter(|r| r.verdict == CensusVerdict::InH && r.order % 2 == 0) {
        let k = r.kappa.as_ref().ok_or("member without kappa")?;
        ensure(k.exact && k.value % 2 == 0, || format!("{} has kappa {:?}", r.family_tag, k))?;
        members += 1;
    }
    Ok(format!("kappa = n for {sets} circulants with 1 in S; {members} even-order members have even kappa"))
}

fn criterion_8() -> Outcome {
    let k4 = complete_graph(4).unwrap();
    let cube = prism(4).unwrap().graph;
    let k33 = complete_bipartite(3, 3).unwrap();
    for (name, g) in [("K4", &k4), ("K3,3", &k33), ("cube", &cube)] {
        let t = truncation(g).unwrap();
        ensure(transitive(&t), || format!("trunc({name}) not transitive"))?;
    }
    for (name, g) in [("K4", &k4), ("cube", &cube)] {
        let t = truncation(g).unwrap();
        for e in g.edges() {
            let (u, v) = (e.0, e.1);
            let i = g.neighbors(u).position(|x| x == v).unwrap();
            let j = g.neighbors(v).position(|x| x == u).unwrap();
            let link = hamsym::Edge::new(3 * u + i, 3 * v + j);
            let before = g.shortest_cycle_through_edge(e).unwrap().unwrap();
            let after = t.shortest_cycle_through_edge(link).unwrap().unwrap();
            ensure(after == 2 * before, || format!("{name} edge {e}: ell {before} -> {after}"))?;
        }
    }
    let t2 = truncation(&truncation(&k4).unwrap()).unwrap();
    let ells: BTreeSet<usize> = edge_orbits(&t2)
        .iter()
        .map(|o| t2.shortest_cycle_through_edge(o[0]).unwrap().unwrap())
        .collect();
    let orbits = edge_orbits(&t2).len();
    ensure(orbits >= 2 && ells.len() >= 2, || format!("trunc^2(K4): {orbits} orbits, ell values {ells:?}"))?;
    Ok(format!("truncations transitive; ell doubles; trunc^2(K4) has {orbits} edge orbits with ell {ells:?}"))
}

fn criterion_9() -> Outcome {
    for (d, n) in [(3, 3), (3, 4), (4, 3)] {
        let g = regular_gadget(d, n).unwrap();
        ensure(g.regular_degree() == Some(d), || format!("gadget({d},{n}) not {d}-regular"))?;
        ensure(transitive(&g), || format!("gadget({d},{n}) not transitive"))?;
    }
    Ok("gadget(3,3), gadget(3,4), gadget(4,3) transitive".into())
}

fn criterion_10() -> Outcome {
    let mut notes = Vec::new();
    for n in 7..=9usize {
        let g = complement_of_cycle(n).unwrap();
        let aut = graph_automorphisms(&g).order();
        ensure(aut == BigUint::from(2 * n), || format!("n={n}: |Aut| = {aut}"))?;
        let total = count_ham_cycles(&g).unwrap();
        let bound = (1..=n as u64 - 3).product::<u64>() / 12;
        ensure(total >= BigUint::from(bound), || format!("n={n}: {total} cycles < {bound}"))?;
        let enumerated = enumerate_ham_cycles(&g, usize::MAX).cycles.len();
        ensure(BigUint::from(enumerated) == total, || format!("n={n}: enumeration {enumerated} vs count {total}"))?;
        let classes = match orbit_classes(&g, &SearchLimits::default()).unwrap().class_count {
            ClassCount::Exact(c) => c,
            ClassCount::LowerBound(c) => return Err(format!("n={n}: class count only bounded below by {c}")),
        };
        ensure(BigUint::from(classes) * BigUint::from(2 * n) >= total, || format!("n={n}: {classes} classes"))?;
        notes.push(format!("n={n}: {total} cycles, {classes} classes"));
    }
    Ok(notes.join("; "))
}

fn brute_force_aut_order(g: &Graph) -> u64 {
    (0..g.n()).permutations(g.n()).filter(|p| g.is_automorphism(p)).count() as u64
}

fn criterion_11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut random = 0;
    while random < 200 {
        let n = rng.gen_range(3..=10);
        let p: f64 = rng.gen_range(0.3..0.9);
        let pairs: Vec<(usize, usize)> =
            (0..n).tuple_combinations().filter(|_| rng.gen_bool(p)).collect();
        let g = Graph::from_pairs(n, &pairs).unwrap();
        if !g.is_connected() {
            continue;
        }
        let count = count_ham_cycles(&g).unwrap();
        let listed = enumerate_ham_cycles(&g, usize::MAX).cycles.len();
        ensure(count == BigUint::from(listed), || format!("random graph {pairs:?}: {count} vs {listed}"))?;
        random += 1;
    }
    let fixtures = [
        "prism 5", "prism 6", "complete 7", "bipartite 4 4", "trunc (complete 4)", "gadget 3 3", "comp-cycle 8",
        "cayley Z4xZ2 gens=(1,0),(0,1)", "product (cycle 3) (cycle 4)", "cayley Z10 gens=1,5",
    ];
    for f in fixtures {
        let g = parse_family(f).unwrap().build().unwrap().graph;
        let count = count_ham_cycles(&g).unwrap();
        let listed = enumerate_ham_cycles(&g, usize::MAX).cycles.len();
        ensure(count == BigUint::from(listed), || format!("{f}: {count} vs {listed}"))?;
    }
    let mut oracle = 0;
    for graphs in graph_corpus().iter() {
        for g in graphs {
            let got = graph_automorphisms(g).order();
            let want = brute_force_aut_order(g);
            ensure(got == BigUint::from(want), || format!("edges {:?}: |Aut| {got} vs {want}", g.edges().collect::<Vec<_>>()))?;
            oracle += 1;
        }
    }
    Ok(format!("{random} random graphs and {} fixtures agree; |Aut| matches brute force on {oracle} graphs", fixtures.len()))
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "census of orders 3..16", criterion_1),
        (2, "order-27 census", criterion_2),
        (3, "products with K2", criterion_3),
        (4, "relatively prime products and powers", criterion_4),
        (5, "boustrophedon E_H counts", criterion_5),
        (6, "zigzag mu", criterion_6),
        (7, "compression laws", criterion_7),
        (8, "truncation", criterion_8),
        (9, "regular gadget", criterion_9),
        (10, "many-classes construction", criterion_10),
        (11, "oracle equivalence", criterion_11),
    ];
    let mut failed = 0;
    for (id, name, f) in criteria {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {name} ({secs:.1}s): {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name} ({secs:.1}s): {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 11 criteria failed");
        std::process::exit(1);
    }
    println!("all 11 criteria passed");
}
