//! Cartesian prime factorization at desk scale, relative primeness, and a
//! classifier that predicts Hamiltonian transitivity from known theorems.
//!
//! Factorization first partitions the edges into classes that cannot be
//! split between factors: incident edges are merged when they lie on a
//! triangle or do not span exactly one chordless square, and opposite edges
//! of such squares are merged. Every factorization's direction classes are
//! unions of these classes, so a search over unions of classes, each
//! candidate verified as an exact product decomposition, finds a nontrivial
//! factorization whenever one exists.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::abelian::{AbelianGroup, GeneratingSet};
use crate::canon;
use crate::construct::{cartesian_product_many, cayley_graph};
use crate::error::{Error, Result};
use crate::graph::{bit, bits, Edge, Graph, Row};
use crate::hamilton::find_ham_cycle;
use crate::perm::Perm;

/// Largest number of edge classes the subset search accepts.
pub const MAX_EDGE_CLASSES: usize = 24;

#[derive(Debug, Clone)]
pub struct PrimeFactor {
    /// Canonically labeled factor.
    pub graph: Graph,
    pub multiplicity: usize,
    pub cert: Vec<u8>,
}

impl PrimeFactor {
    /// A catalogue name when the factor is a familiar graph.
    pub fn tag(&self) -> Option<String> {
        family_tag(&self.graph)
    }
}

#[derive(Debug, Clone)]
pub struct Factorization {
    pub prime_factors: Vec<PrimeFactor>,
    /// Isomorphism from the product of the factors, each repeated by its
    /// multiplicity in listed order, onto the input graph.
    pub certificate: Perm,
}

impl Factorization {
    pub fn expanded(&self) -> Vec<Graph> {
        self.prime_factors
            .iter()
            .flat_map(|f| std::iter::repeat_n(f.graph.clone(), f.multiplicity))
            .collect()
    }

    pub fn factor_count(&self) -> usize {
        self.prime_factors.iter().map(|f| f.multiplicity).sum()
    }

    pub fn is_prime(&self) -> bool {
        self.factor_count() == 1
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Edge classes that every factorization respects, as edge lists.
fn square_classes(g: &Graph) -> Vec<Vec<Edge>> {
    let edges: Vec<Edge> = g.edges().collect();
    let id: BTreeMap<Edge, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut uf = UnionFind((0..edges.len()).collect());
    for v in 0..g.n() {
        let nb: Vec<usize> = g.neighbors(v).collect();
        for (x, &a) in nb.iter().enumerate() {
            for &b in &nb[x + 1..] {
                let va = id[&Edge::new(v, a)];
                let vb = id[&Edge::new(v, b)];
                let common = g.row(a) & g.row(b) & !bit(v);
                if g.has_edge(a, b) || common.count_ones() != 1 {
                    uf.union(va, vb);
                    continue;
                }
                let w = common.trailing_zeros() as usize;
                if g.has_edge(v, w) {
                    uf.union(va, vb);
                    continue;
                }
                uf.union(va, id[&Edge::new(b, w)]);
                uf.union(vb, id[&Edge::new(a, w)]);
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<Edge>> = BTreeMap::new();
    for (i, &e) in edges.iter().enumerate() {
        let r = uf.find(i);
        classes.entry(r).or_default().push(e);
    }
    classes.into_values().collect()
}

/// If the edges `e1` (the rest being the other direction) split `g` as a
/// product, returns the two factor vertex sets through vertex 0.
fn try_split(g: &Graph, e1: &[Edge]) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.n();
    let mut r1: Vec<Row> = vec![0; n];
    for &Edge(u, v) in e1 {
        r1[u] |= bit(v);
        r1[v] |= bit(u);
    }
    let r2: Vec<Row> = (0..n).map(|v| g.row(v) & !r1[v]).collect();
    let comp = |rows: &[Row], s: usize| {
        let mut seen = bit(s);
        let mut frontier = bit(s);
        while frontier != 0 {
            let mut next: Row = 0;
            for v in bits(frontier) {
                next |= rows[v];
            }
            next &= !seen;
            seen |= next;
            frontier = next;
        }
        seen
    };
    let a_mask = comp(&r1, 0);
    let b_mask = comp(&r2, 0);
    let a: Vec<usize> = bits(a_mask).collect();
    let b: Vec<usize> = bits(b_mask).collect();
    if a.len() < 2 || b.len() < 2 || a.len() * b.len() != n {
        return None;
    }
    // every vertex meets exactly one vertex of A through its E2-layer and one
    // vertex of B through its E1-layer
    let mut coords = Vec::with_capacity(n);
    let mut taken = vec![false; n];
    let a_pos: BTreeMap<usize, usize> = a.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let b_pos: BTreeMap<usize, usize> = b.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    for v in 0..n {
        let l1 = comp(&r1, v);
        let l2 = comp(&r2, v);
        if (l2 & a_mask).count_ones() != 1 || (l1 & b_mask).count_ones() != 1 {
            return None;
        }
        let x = a_pos[&((l2 & a_mask).trailing_zeros() as usize)];
        let y = b_pos[&((l1 & b_mask).trailing_zeros() as usize)];
        let slot = x * b.len() + y;
        if taken[slot] {
            return None;
        }
        taken[slot] = true;
        coords.push((x, y));
    }
    // adjacency must be exactly that of G[A] □ G[B]
    for u in 0..n {
        for w in u + 1..n {
            let (cu, cw) = (coords[u], coords[w]);
            let expected = (cu.0 == cw.0 && g.has_edge(b[cu.1], b[cw.1])) || (cu.1 == cw.1 && g.has_edge(a[cu.0], a[cw.0]));
            if expected != g.has_edge(u, w) {
                return None;
            }
        }
    }
    Some((a, b))
}

fn split_once(g: &Graph) -> Result<Option<(Graph, Graph)>> {
    let classes = square_classes(g);
    let c = classes.len();
    if c < 2 {
        return Ok(None);
    }
    if c > MAX_EDGE_CLASSES {
        return Err(Error::CapExceeded { requested: c, cap: MAX_EDGE_CLASSES });
    }
    // class 0 always on the first side; smaller first sides first
    let mut masks: Vec<u32> = (0..1u32 << (c - 1)).map(|m| (m << 1) | 1).filter(|&m| m != (1u32 << c) - 1).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for m in masks {
        let e1: Vec<Edge> = (0..c).filter(|i| m >> i & 1 == 1).flat_map(|i| classes[i].iter().copied()).collect();
        if let Some((a, b)) = try_split(g, &e1) {
            return Ok(Some((g.induced_subgraph(&a), g.induced_subgraph(&b))));
        }
    }
    Ok(None)
}

fn prime_list(g: &Graph, out: &mut Vec<Graph>) -> Result<()> {
    match split_once(g)? {
        Some((a, b)) => {
            prime_list(&a, out)?;
            prime_list(&b, out)
        }
        None => {
            out.push(g.clone());
            Ok(())
        }
    }
}

/// Prime factorization of a connected graph.
pub fn prime_factorization(g: &Graph) -> Result<Factorization> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.n() <= 1 {
        return Ok(Factorization { prime_factors: Vec::new(), certificate: Perm::identity(g.n()) });
    }
    let mut primes = Vec::new();
    prime_list(g, &mut primes)?;
    let mut grouped: BTreeMap<(usize, Vec<u8>), PrimeFactor> = BTreeMap::new();
    for p in primes {
        let cf = canon::graph_canonical_form(&p);
        let canonical = p.relabeled(cf.relabeling.images());
        grouped
            .entry((p.n(), cf.cert.clone()))
            .or_insert(PrimeFactor { graph: canonical, multiplicity: 0, cert: cf.cert })
            .multiplicity += 1;
    }
    let prime_factors: Vec<PrimeFactor> = grouped.into_values().collect();
    let expanded: Vec<Graph> =
        prime_factors.iter().flat_map(|f| std::iter::repeat_n(f.graph.clone(), f.multiplicity)).collect();
    let product = cartesian_product_many(&expanded)?;
    let certificate = canon::find_isomorphism(&product.graph, g).expect("reassembled product is isomorphic to the input");
    Ok(Factorization { prime_factors, certificate })
}

/// No prime factor in common.
pub fn relatively_prime(g: &Graph, h: &Graph) -> Result<bool> {
    let fg = prime_factorization(g)?;
    let fh = prime_factorization(h)?;
    Ok(!fg.prime_factors.iter().any(|a| fh.prime_factors.iter().any(|b| a.cert == b.cert)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    InH,
    NotInH,
    Unknown,
}

#[derive(Debug, Clone, Serialize)]
pub struct Prediction {
    pub verdict: Verdict,
    /// Theorem or catalogue entry behind a definite verdict.
    pub reason: Option<String>,
    pub detail: String,
}

impl Prediction {
    fn new(verdict: Verdict, reason: &str, detail: impl Into<String>) -> Self {
        Prediction { verdict, reason: Some(reason.to_string()), detail: detail.into() }
    }

    fn unknown(detail: impl Into<String>) -> Self {
        Prediction { verdict: Verdict::Unknown, reason: None, detail: detail.into() }
    }
}

/// Family metadata that unlocks the Cayley graph theorems.
#[derive(Debug, Clone)]
pub struct CayleyHint {
    pub group: AbelianGroup,
    pub gens: GeneratingSet,
}

fn is_cycle(g: &Graph) -> bool {
    g.n() >= 3 && g.regular_degree() == Some(2) && g.is_connected()
}

fn is_complete(g: &Graph) -> bool {
    g.n() >= 1 && g.regular_degree() == Some(g.n() - 1)
}

fn is_balanced_complete_bipartite(g: &Graph) -> bool {
    let n = g.n();
    n >= 2 && n.is_multiple_of(2) && g.regular_degree() == Some(n / 2) && g.is_bipartite()
}

fn isomorphic_to(g: &Graph, h: Result<Graph>) -> bool {
    h.map(|h| canon::is_isomorphic(g, &h)).unwrap_or(false)
}

/// Catalogue name of a familiar graph.
pub fn family_tag(g: &Graph) -> Option<String> {
    let n = g.n();
    if is_complete(g) {
        return Some(format!("K{n}"));
    }
    if is_cycle(g) {
        return Some(format!("C{n}"));
    }
    if is_balanced_complete_bipartite(g) {
        return Some(format!("K{},{}", n / 2, n / 2));
    }
    if n >= 6 && n.is_multiple_of(2) && g.regular_degree() == Some(3) {
        let k = n / 2;
        if isomorphic_to(g, crate::construct::prism(k).map(|p| p.graph)) {
            return Some(if k == 4 { "C4xK2 (cube)".to_string() } else { format!("C{k}xK2 (prism)") });
        }
    }
    None
}

/// Members of the class known independently of any theorem's "only if"
/// direction: complete graphs, cycles, balanced complete bipartite graphs,
/// the cube and odd prisms.
fn catalogue_member(g: &Graph) -> Option<String> {
    let n = g.n();
    if n < 3 || !g.is_connected() {
        return None;
    }
    if is_complete(g) || is_cycle(g) || is_balanced_complete_bipartite(g) {
        return family_tag(g);
    }
    if n.is_multiple_of(2) && g.regular_degree() == Some(3) {
        let k = n / 2;
        if (k == 4 || k % 2 == 1) && isomorphic_to(g, crate::construct::prism(k).map(|p| p.graph)) {
            return family_tag(g);
        }
    }
    None
}

fn hamiltonian_product(factors: &[&Graph]) -> bool {
    if factors.iter().all(|f| find_ham_cycle(f).is_some()) {
        // products of Hamiltonian graphs are Hamiltonian
        return true;
    }
    let owned: Vec<Graph> = factors.iter().map(|&f| f.clone()).collect();
    cartesian_product_many(&owned).map(|p| find_ham_cycle(&p.graph).is_some()).unwrap_or(false)
}

fn product_rules(f: &Factorization) -> Option<Prediction> {
    if f.factor_count() < 2 {
        return None;
    }
    let primes = &f.prime_factors;
    let name = |p: &PrimeFactor| p.tag().unwrap_or_else(|| format!("prime on {} vertices", p.graph.n()));
    let d = primes.len();
    // two relatively prime Hamiltonian parts
    if d >= 2 {
        for mask in 1u32..(1u32 << (d - 1)) {
            // prime 0 always in the second part
            let mask = mask << 1;
            let (mut p1, mut p2) = (Vec::new(), Vec::new());
            for (i, p) in primes.iter().enumerate() {
                let side = if mask >> i & 1 == 1 { &mut p1 } else { &mut p2 };
                for _ in 0..p.multiplicity {
                    side.push(&p.graph);
                }
            }
            if p1.is_empty() || p2.is_empty() {
                continue;
            }
            if hamiltonian_product(&p1) && hamiltonian_product(&p2) {
                return Some(Prediction::new(
                    Verdict::NotInH,
                    "product of relatively prime Hamiltonian graphs",
                    format!("factors with {} and {} vertices", p1.iter().map(|g| g.n()).product::<usize>(), p2.iter().map(|g| g.n()).product::<usize>()),
                ));
            }
        }
    }
    // power of a Hamiltonian prime
    if d == 1 && primes[0].multiplicity >= 2 && find_ham_cycle(&primes[0].graph).is_some() {
        return Some(Prediction::new(
            Verdict::NotInH,
            "power of a Hamiltonian prime graph",
            format!("{}^{}", name(&primes[0]), primes[0].multiplicity),
        ));
    }
    // G □ K2 with G Hamiltonian
    let k2 = primes.iter().position(|p| p.graph.n() == 2)?;
    let mut rest: Vec<Graph> = Vec::new();
    for (i, p) in primes.iter().enumerate() {
        let m = if i == k2 { p.multiplicity - 1 } else { p.multiplicity };
        rest.extend(std::iter::repeat_n(p.graph.clone(), m));
    }
    let g = cartesian_product_many(&rest).ok()?.graph;
    find_ham_cycle(&g)?;
    let member = (is_cycle(&g) && g.n() % 2 == 1) || (is_cycle(&g) && g.n() == 4);
    let verdict = if member { Verdict::InH } else { Verdict::NotInH };
    Some(Prediction::new(verdict, "product of a Hamiltonian graph with K2", format!("G has {} vertices", g.n())))
}

fn cayley_rules(g: &Graph, hint: &CayleyHint) -> Option<Prediction> {
    let cay = cayley_graph(&hint.group, &hint.gens).ok()?;
    if !canon::is_isomorphic(&cay, g) {
        return Some(Prediction::unknown("the Cayley hint does not describe this graph"));
    }
    let n = g.n();
    if n >= 3 && n % 2 == 1 {
        return Some(Prediction::new(Verdict::NotInH, "odd-order abelian Cayley graph theorem", "not complete and not a cycle"));
    }
    if n >= 4 && n.is_multiple_of(2) {
        let s = hint.gens.elems();
        let redundant_free = s.iter().find(|x| {
            let minus = hint.group.neg(x);
            let rest: Vec<_> = s.iter().filter(|y| *y != *x && **y != minus).cloned().collect();
            !hint.group.generates(&rest)
        });
        return Some(match redundant_free {
            Some(x) => Prediction::new(
                Verdict::NotInH,
                "even-order abelian Cayley graph theorem",
                format!("S without ±{} does not generate", hint.group.format_elem(x)),
            ),
            None => Prediction::unknown("even order and every S \\ {s,-s} generates"),
        });
    }
    None
}

/// Predicts membership from the catalogue, product theorems and, with a
/// hint, the abelian Cayley graph theorems. `Unknown` whenever no
/// hypothesis could be checked.
pub fn classify_by_theorems(g: &Graph, hint: Option<&CayleyHint>) -> Prediction {
    if let Some(tag) = catalogue_member(g) {
        return Prediction::new(Verdict::InH, "catalogue", tag);
    }
    if g.n() < 3 || !g.is_connected() || (0..g.n()).any(|v| g.degree(v) < 2) {
        return Prediction::new(Verdict::NotInH, "not Hamiltonian", "disconnected or a vertex of degree below 2");
    }
    if let Ok(f) = prime_factorization(g) {
        if let Some(p) = product_rules(&f) {
            return p;
        }
    }
    if let Some(hint) = hint {
        if let Some(p) = cayley_rules(g, hint) {
            return p;
        }
    }
    Prediction::unknown("no theorem applies")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{cartesian_product, complete_bipartite, complete_graph, cycle_graph, prism};

    fn factor_sizes(g: &Graph) -> Vec<(usize, usize)> {
        prime_factorization(g).unwrap().prime_factors.iter().map(|f| (f.graph.n(), f.multiplicity)).collect()
    }

    #[test]
    fn small_factorizations() {
        assert_eq!(factor_sizes(&cycle_graph(4).unwrap()), vec![(2, 2)]);
        assert_eq!(factor_sizes(&cycle_graph(6).unwrap()), vec![(6, 1)]);
        let k3k3 = cartesian_product(&complete_graph(3).unwrap(), &complete_graph(3).unwrap()).unwrap();
        assert_eq!(factor_sizes(&k3k3.graph), vec![(3, 2)]);
        let mixed = cartesian_product(&prism(3).unwrap().graph, &cycle_graph(5).unwrap()).unwrap();
        assert_eq!(factor_sizes(&mixed.graph), vec![(2, 1), (3, 1), (5, 1)]);
        assert_eq!(factor_sizes(&complete_bipartite(3, 3).unwrap()), vec![(6, 1)]);
        let p = Graph::from_pairs(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(prime_factorization(&p).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn certificate_is_an_isomorphism() {
        let g = cartesian_product(&cycle_graph(3).unwrap(), &cycle_graph(4).unwrap()).unwrap().graph;
        let f = prime_factorization(&g).unwrap();
        let prod = cartesian_product_many(&f.expanded()).unwrap().graph;
        for e in prod.edges() {
            assert!(g.has_edge(f.certificate.apply(e.0), f.certificate.apply(e.1)));
        }
        assert_eq!(prod.edge_count(), g.edge_count());
    }

    #[test]
    fn relative_primeness() {
        assert!(relatively_prime(&cycle_graph(3).unwrap(), &cycle_graph(5).unwrap()).unwrap());
        assert!(!relatively_prime(&cycle_graph(4).unwrap(), &complete_graph(2).unwrap()).unwrap());
        let a = prism(3).unwrap().graph;
        let b = cartesian_product(&complete_graph(3).unwrap(), &complete_graph(3).unwrap()).unwrap().graph;
        assert!(!relatively_prime(&a, &b).unwrap());
    }

    #[test]
    fn predictions() {
        assert_eq!(classify_by_theorems(&complete_graph(7).unwrap(), None).verdict, Verdict::InH);
        let c5c5 = cartesian_product(&cycle_graph(5).unwrap(), &cycle_graph(5).unwrap()).unwrap().graph;
        let p = classify_by_theorems(&c5c5, None);
        assert_eq!(p.verdict, Verdict::NotInH);
        assert_eq!(p.reason.as_deref(), Some("power of a Hamiltonian prime graph"));
        let petersen = Graph::from_pairs(
            10,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9), (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)],
        )
        .unwrap();
        assert_eq!(classify_by_theorems(&petersen, None).verdict, Verdict::Unknown);
        assert_eq!(classify_by_theorems(&prism(6).unwrap().graph, None).verdict, Verdict::NotInH);
        assert_eq!(classify_by_theorems(&prism(7).unwrap().graph, None).verdict, Verdict::InH);
    }

    #[test]
    fn cayley_hints() {
        let z9 = AbelianGroup::cyclic(9).unwrap();
        let s: Vec<_> = [1, 8, 3, 6].iter().map(|&x| z9.elem_mod(&[x]).unwrap()).collect();
        let hint = CayleyHint { group: z9.clone(), gens: GeneratingSet::new(&z9, s).unwrap() };
        let g = cayley_graph(&hint.group, &hint.gens).unwrap();
        assert_eq!(classify_by_theorems(&g, Some(&hint)).verdict, Verdict::NotInH);
        // K4 = Cay(Z4, {1,2,3}) satisfies the even-order hypothesis but is caught by the catalogue
        let z4 = AbelianGroup::cyclic(4).unwrap();
        let s: Vec<_> = (1..4).map(|x| z4.elem_mod(&[x]).unwrap()).collect();
        let hint = CayleyHint { group: z4.clone(), gens: GeneratingSet::new(&z4, s).unwrap() };
        assert_eq!(classify_by_theorems(&complete_graph(4).unwrap(), Some(&hint)).verdict, Verdict::InH);
    }
}
