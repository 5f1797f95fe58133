use std::collections::{BTreeSet, HashMap};
use std::ops::ControlFlow;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use super::count::{count_ham_cycles, MAX_COUNT_VERTICES};
use super::cycle::{find_ham_cycle, for_each_ham_cycle, random_ham_cycle, semiregular_ham_cycle, HamCycle, DEFAULT_CYCLE_CAP};
use super::kappa::kappa_unchecked;
use crate::canon;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::group::PermGroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassCount {
    Exact(u64),
    LowerBound(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    CountVsOrbitStabilizer,
    FullOrbitPartition,
    EarlyWitness,
}

fn big_dec<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_str_radix(10))
}

fn opt_big_dec<S: Serializer>(x: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_str(&x.to_str_radix(10)),
        None => s.serialize_none(),
    }
}

/// Outcome of a transitivity or class computation.
#[derive(Debug, Clone, Serialize)]
pub struct ClassReport {
    /// Number of Hamiltonian cycles, when known.
    #[serde(serialize_with = "opt_big_dec")]
    pub total_cycles: Option<BigUint>,
    pub class_count: ClassCount,
    /// Pairwise inequivalent cycles, one per discovered class.
    pub representatives: Vec<HamCycle>,
    pub method: Method,
    #[serde(serialize_with = "big_dec")]
    pub aut_order: BigUint,
}

impl ClassReport {
    pub fn is_transitive(&self) -> bool {
        self.class_count == ClassCount::Exact(1)
    }
}

/// Caps for the searches behind a class computation.
#[derive(Debug, Clone, Copy)]
pub struct SearchLimits {
    pub cycle_cap: usize,
    pub deadline: Option<Instant>,
    /// Random cycles sampled for early witnesses.
    pub witness_samples: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { cycle_cap: DEFAULT_CYCLE_CAP, deadline: None, witness_samples: 24 }
    }
}

impl SearchLimits {
    fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn check(&self, what: &str) -> Result<()> {
        if self.expired() {
            Err(Error::Inconclusive(format!("time budget exhausted during {what}")))
        } else {
            Ok(())
        }
    }
}

/// Automorphism-invariant summary of a cycle.
type Fingerprint = (usize, Vec<usize>);

struct Context<'a> {
    g: &'a Graph,
    aut: PermGroup,
    edge_orbit: HashMap<Edge, usize>,
}

impl<'a> Context<'a> {
    fn new(g: &'a Graph) -> Self {
        let aut = canon::graph_automorphisms(g);
        let mut edge_orbit = HashMap::new();
        for (i, orbit) in canon::edge_orbits_under(g, &aut).into_iter().enumerate() {
            for e in orbit {
                edge_orbit.insert(e, i);
            }
        }
        Context { g, aut, edge_orbit }
    }

    fn fingerprint(&self, c: &HamCycle) -> Fingerprint {
        let mut ids: Vec<usize> = c.edges().iter().map(|e| self.edge_orbit[e]).collect();
        ids.sort_unstable();
        (kappa_unchecked(self.g, c), ids)
    }

    fn orbit_size(&self, c: &HamCycle) -> BigUint {
        let stab = canon::stabilizer_of_edge_set(self.g, c.edges()).expect("cycle edges lie in the graph");
        self.aut.order() / stab.order()
    }

    /// Same Aut-orbit: the graphs with either cycle marked are isomorphic.
    fn equivalent(&self, a: &HamCycle, b: &HamCycle) -> bool {
        let mark = |c: &HamCycle| {
            let cg = canon::ColoredGraph::new(self.g.clone()).with_marked_edges(c.edges()).expect("cycle edges");
            canon::canonical_form(&cg).cert
        };
        mark(a) == mark(b)
    }

    /// Cycles from the front of the enumeration, random searches and
    /// rotations by fixed-point-free automorphisms of prime order.
    fn sample(&self, limits: &SearchLimits) -> Vec<HamCycle> {
        let mut out = Vec::new();
        let _ = for_each_ham_cycle(self.g, |seq| {
            out.push(HamCycle::from_seq_unchecked(seq));
            if out.len() >= 8 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ self.g.n() as u64);
        for _ in 0..limits.witness_samples {
            if limits.expired() {
                break;
            }
            if let Some(c) = random_ham_cycle(self.g, &mut rng, 20_000) {
                out.push(c);
            }
        }
        let mut tried = BTreeSet::new();
        for _ in 0..limits.witness_samples {
            if limits.expired() {
                break;
            }
            let psi = self.aut.random_element(&mut rng);
            let ord = element_order(&psi);
            for p in prime_divisors(ord) {
                let phi = psi.pow((ord / p) as u64);
                if phi.images().iter().enumerate().any(|(i, &x)| i == x) || !tried.insert(phi.images().to_vec()) {
                    continue;
                }
                if let Some(c) = semiregular_ham_cycle(self.g, &phi, 20_000) {
                    out.push(c);
                }
            }
        }
        out
    }
}

fn element_order(p: &crate::perm::Perm) -> usize {
    let n = p.degree();
    let mut seen = vec![false; n];
    let mut ord = 1usize;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p.apply(x);
            len += 1;
        }
        ord = lcm(ord, len);
    }
    ord
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

fn prime_divisors(mut m: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

fn is_complete(g: &Graph) -> bool {
    g.regular_degree() == Some(g.n().saturating_sub(1))
}

fn lower_bound(total: &BigUint, aut: &BigUint) -> u64 {
    let q = (total + aut - BigUint::one()) / aut;
    q.to_u64().unwrap_or(u64::MAX).max(2)
}

/// Decides whether every two Hamiltonian cycles of `g` are related by an
/// automorphism.
///
/// Cheap invariants of sampled cycles (κ and the multiset of edge orbits)
/// may reveal two inequivalent cycles at once. Otherwise the number `N` of
/// Hamiltonian cycles is compared with the orbit size `|Aut|/|Stab(C_0)|` of
/// one cycle. `N` comes from the subset dynamic program up to 20 vertices, a
/// closed form for complete graphs, or full enumeration under the cycle cap.
pub fn is_ham_transitive(g: &Graph, limits: &SearchLimits) -> Result<ClassReport> {
    let c0 = find_ham_cycle(g).ok_or(Error::NotHamiltonian)?;
    limits.check("the first cycle search")?;
    let ctx = Context::new(g);
    let aut_order = ctx.aut.order();
    let orbit = ctx.orbit_size(&c0);
    limits.check("the stabilizer computation")?;

    let report = |total, class_count, representatives, method| ClassReport {
        total_cycles: total,
        class_count,
        representatives,
        method,
        aut_order: aut_order.clone(),
    };

    if is_complete(g) {
        let total = factorial(g.n() - 1) / BigUint::from(2u32);
        assert_eq!(total, orbit, "complete graphs are transitive on Hamiltonian cycles");
        return Ok(report(Some(total), ClassCount::Exact(1), vec![c0], Method::CountVsOrbitStabilizer));
    }

    let f0 = ctx.fingerprint(&c0);
    for c in ctx.sample(limits) {
        if ctx.fingerprint(&c) != f0 {
            let total = if g.n() <= MAX_COUNT_VERTICES { Some(count_ham_cycles(g)?) } else { None };
            return Ok(report(total, ClassCount::LowerBound(2), vec![c0, c], Method::EarlyWitness));
        }
    }
    limits.check("the witness search")?;

    let total = if g.n() <= MAX_COUNT_VERTICES {
        count_ham_cycles(g)?
    } else {
        // enumerate at most one cycle past the orbit size
        let cap = orbit.to_usize().map_or(limits.cycle_cap, |o| o.saturating_add(1).min(limits.cycle_cap));
        let mut seen = 0usize;
        let mut stopped = false;
        let _ = for_each_ham_cycle(g, |_| {
            seen += 1;
            if seen >= cap || (seen.is_multiple_of(4096) && limits.expired()) {
                stopped = true;
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        let seen_big = BigUint::from(seen);
        if stopped && seen_big <= orbit {
            return Err(Error::Inconclusive(format!(
                "stopped after {seen} cycles without exceeding the orbit size {orbit}"
            )));
        }
        if stopped {
            let second = find_inequivalent(&ctx, &c0, limits);
            let mut reps = vec![c0];
            reps.extend(second);
            return Ok(report(None, ClassCount::LowerBound(2), reps, Method::CountVsOrbitStabilizer));
        }
        seen_big
    };
    assert!(total >= orbit, "orbit of a cycle larger than the number of cycles");
    if total == orbit {
        return Ok(report(Some(total), ClassCount::Exact(1), vec![c0], Method::CountVsOrbitStabilizer));
    }
    let lb = lower_bound(&total, &aut_order);
    let mut reps = vec![c0.clone()];
    reps.extend(find_inequivalent(&ctx, &c0, limits));
    Ok(report(Some(total), ClassCount::LowerBound(lb), reps, Method::CountVsOrbitStabilizer))
}

/// A cycle outside the orbit of `c0`, looked for among the first few
/// thousand enumerated cycles.
fn find_inequivalent(ctx: &Context, c0: &HamCycle, limits: &SearchLimits) -> Option<HamCycle> {
    let f0 = ctx.fingerprint(c0);
    let mut found = None;
    let mut tried = 0;
    let _ = for_each_ham_cycle(ctx.g, |seq| {
        tried += 1;
        if tried > 2000 || limits.expired() {
            return ControlFlow::Break(());
        }
        let c = HamCycle::from_seq_unchecked(seq);
        if ctx.fingerprint(&c) != f0 || !ctx.equivalent(&c, c0) {
            found = Some(c);
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    found
}

/// Partitions all Hamiltonian cycles into Aut-orbits by closing the
/// enumerated set under the automorphism generators.
///
/// When the cap is hit the count is a lower bound: the larger of the number
/// of distinct invariants seen and `ceil(found / |Aut|)`.
pub fn orbit_classes(g: &Graph, limits: &SearchLimits) -> Result<ClassReport> {
    if find_ham_cycle(g).is_none() {
        return Err(Error::NotHamiltonian);
    }
    let ctx = Context::new(g);
    let aut_order = ctx.aut.order();
    let mut cycles: Vec<HamCycle> = Vec::new();
    let mut truncated = false;
    let _ = for_each_ham_cycle(g, |seq| {
        if cycles.len() >= limits.cycle_cap || (cycles.len() % 4096 == 4095 && limits.expired()) {
            truncated = true;
            return ControlFlow::Break(());
        }
        cycles.push(HamCycle::from_seq_unchecked(seq));
        ControlFlow::Continue(())
    });
    let index: HashMap<&[Edge], usize> = cycles.iter().enumerate().map(|(i, c)| (c.edges(), i)).collect();
    let mut parent: Vec<usize> = (0..cycles.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, c) in cycles.iter().enumerate() {
        for gen in ctx.aut.generators() {
            let img = gen.apply_to_edge_set(c.edges()).expect("same degree");
            if let Some(&j) = index.get(img.as_slice()) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            } else {
                debug_assert!(truncated, "image of a Hamiltonian cycle missing from a complete enumeration");
            }
        }
    }
    let total = BigUint::from(cycles.len());
    if truncated {
        let fingerprints: BTreeSet<Fingerprint> = cycles.iter().map(|c| ctx.fingerprint(c)).collect();
        let by_count = ((&total + &aut_order - BigUint::one()) / &aut_order).to_u64().unwrap_or(u64::MAX);
        let lb = (fingerprints.len() as u64).max(by_count).max(1);
        let mut reps: Vec<HamCycle> = Vec::new();
        let mut seen_fp = BTreeSet::new();
        for c in &cycles {
            if seen_fp.insert(ctx.fingerprint(c)) {
                reps.push(c.clone());
            }
        }
        return Ok(ClassReport {
            total_cycles: None,
            class_count: ClassCount::LowerBound(lb),
            representatives: reps,
            method: Method::FullOrbitPartition,
            aut_order,
        });
    }
    let mut reps = Vec::new();
    for i in 0..cycles.len() {
        if find(&mut parent, i) == i {
            reps.push(cycles[i].clone());
        }
    }
    debug_assert!(!total.is_zero());
    Ok(ClassReport {
        total_cycles: Some(total),
        class_count: ClassCount::Exact(reps.len() as u64),
        representatives: reps,
        method: Method::FullOrbitPartition,
        aut_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{cartesian_product, complement_of_cycle, complete_graph, cycle_graph, prism};

    fn transitive(g: &Graph) -> bool {
        is_ham_transitive(g, &SearchLimits::default()).unwrap().is_transitive()
    }

    #[test]
    fn known_examples() {
        assert!(transitive(&complete_graph(5).unwrap()));
        assert!(!transitive(&prism(6).unwrap().graph));
        let c3c5 = cartesian_product(&cycle_graph(3).unwrap(), &cycle_graph(5).unwrap()).unwrap();
        assert!(!transitive(&c3c5.graph));
        assert!(transitive(&prism(7).unwrap().graph));
        assert!(transitive(&cycle_graph(11).unwrap()));
    }

    #[test]
    fn class_partitions() {
        let lim = SearchLimits::default();
        assert_eq!(orbit_classes(&prism(7).unwrap().graph, &lim).unwrap().class_count, ClassCount::Exact(1));
        assert_eq!(orbit_classes(&complete_graph(4).unwrap(), &lim).unwrap().class_count, ClassCount::Exact(1));
        let g8 = complement_of_cycle(8).unwrap();
        let r = orbit_classes(&g8, &lim).unwrap();
        let ClassCount::Exact(c) = r.class_count else { panic!("complete enumeration expected") };
        let total = r.total_cycles.unwrap().to_u64().unwrap();
        assert!(c >= total.div_ceil(16));
        assert_eq!(r.representatives.len() as u64, c);
    }

    #[test]
    fn counting_and_partition_agree() {
        let lim = SearchLimits::default();
        for g in [prism(6).unwrap().graph, complement_of_cycle(7).unwrap(), complete_graph(6).unwrap()] {
            let a = is_ham_transitive(&g, &lim).unwrap();
            let b = orbit_classes(&g, &lim).unwrap();
            assert_eq!(a.is_transitive(), b.is_transitive());
        }
    }

    #[test]
    fn non_hamiltonian_input() {
        let p = crate::construct::path_graph(5).unwrap();
        assert_eq!(is_ham_transitive(&p, &SearchLimits::default()).unwrap_err(), Error::NotHamiltonian);
        assert_eq!(orbit_classes(&p, &SearchLimits::default()).unwrap_err(), Error::NotHamiltonian);
    }
}
