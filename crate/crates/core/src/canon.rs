//! Automorphism groups, canonical forms and isomorphism of vertex- and
//! edge-colored graphs.
//!
//! The search is a plain individualization-refinement tree:
//!
//! * refinement splits cells by the per-edge-color count of neighbors in every
//!   current cell, until the partition is equitable;
//! * the target cell is the first smallest non-singleton cell;
//! * a leaf is scored by the invariant trace along its path followed by the
//!   relabeled adjacency rows; the canonical leaf is the maximum;
//! * subtrees are pruned by orbits of automorphisms already found that fix the
//!   current path, and by invariant comparison against the first and best
//!   leaves. A leaf equivalent to the first leaf sends the search back to the
//!   common ancestor of the two.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{bit, bits, Edge, Graph, Row};
use crate::group::PermGroup;
use crate::perm::Perm;

/// A graph with dense vertex and edge color indices.
#[derive(Debug, Clone)]
pub struct ColoredGraph {
    graph: Graph,
    vcolor: Vec<u32>,
    /// One adjacency layer per edge color.
    layers: Vec<Vec<Row>>,
}

impl ColoredGraph {
    pub fn new(graph: Graph) -> Self {
        let n = graph.n();
        let layers = vec![graph.rows().to_vec()];
        ColoredGraph { graph, vcolor: vec![0; n], layers }
    }

    pub fn with_vertex_colors(mut self, vcolor: Vec<u32>) -> Result<Self> {
        if vcolor.len() != self.graph.n() {
            return Err(Error::VertexOutOfRange { vertex: vcolor.len(), n: self.graph.n() });
        }
        self.vcolor = vcolor;
        Ok(self)
    }

    /// Assigns colors to edges; unlisted edges keep color 0.
    pub fn with_edge_colors(mut self, colors: &BTreeMap<Edge, u32>) -> Result<Self> {
        let n = self.graph.n();
        let max = colors.values().copied().max().unwrap_or(0) as usize;
        let mut layers = vec![vec![0 as Row; n]; max + 1];
        layers[0] = self.graph.rows().to_vec();
        for (&e, &c) in colors {
            let e = Edge::new(e.0, e.1);
            if !self.graph.has_edge(e.0, e.1) {
                return Err(Error::EdgeNotPresent(e.0, e.1));
            }
            if c == 0 {
                continue;
            }
            let c = c as usize;
            layers[0][e.0] &= !bit(e.1);
            layers[0][e.1] &= !bit(e.0);
            layers[c][e.0] |= bit(e.1);
            layers[c][e.1] |= bit(e.0);
        }
        self.layers = layers;
        Ok(self)
    }

    /// Marks `edges` with color 1.
    pub fn with_marked_edges(self, edges: &[Edge]) -> Result<Self> {
        let colors: BTreeMap<Edge, u32> = edges.iter().map(|&e| (Edge::new(e.0, e.1), 1)).collect();
        self.with_edge_colors(&colors)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_colors(&self) -> &[u32] {
        &self.vcolor
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Whether `p` preserves adjacency, every edge color and every vertex color.
    pub fn is_automorphism(&self, p: &Perm) -> bool {
        let n = self.n();
        if p.degree() != n {
            return false;
        }
        if (0..n).any(|v| self.vcolor[v] != self.vcolor[p.apply(v)]) {
            return false;
        }
        self.layers.iter().all(|layer| {
            (0..n).all(|u| {
                let mut r: Row = 0;
                for w in bits(layer[u]) {
                    r |= bit(p.apply(w));
                }
                r == layer[p.apply(u)]
            })
        })
    }
}

/// Canonical labeling and certificate.
///
/// `relabeling` sends each vertex to its canonical position. `cert` is:
/// `n` (u16 LE), number of edge colors (u8), vertex colors in canonical order
/// (u32 LE each), then for each edge color the canonical adjacency matrix,
/// row-major, each row packed most significant bit first into `ceil(n/8)` bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub relabeling: Perm,
    pub cert: Vec<u8>,
}

impl CanonicalForm {
    pub fn cert_hex(&self) -> String {
        hex::encode(&self.cert)
    }
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    let mut h = h;
    for b in x.to_le_bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

struct Leaf {
    path: Vec<usize>,
    trace: Vec<u64>,
    /// `lab[i]` is the vertex at canonical position `i`.
    lab: Vec<usize>,
    rows: Vec<Row>,
}

struct Search<'a> {
    cg: &'a ColoredGraph,
    canon: bool,
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Perm>,
}

impl<'a> Search<'a> {
    fn new(cg: &'a ColoredGraph, canon: bool) -> Self {
        Search { cg, canon, first: None, best: None, autos: Vec::new() }
    }

    fn initial_partition(&self) -> Vec<Vec<usize>> {
        let mut by_color: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for v in 0..self.cg.n() {
            by_color.entry(self.cg.vcolor[v]).or_default().push(v);
        }
        by_color.into_values().collect()
    }

    /// Refines to an equitable partition; returns an invariant hash of the
    /// refinement.
    fn refine(&self, cells: &mut Vec<Vec<usize>>) -> u64 {
        let mut h = FNV_OFFSET;
        let ncol = self.cg.layers.len();
        loop {
            let masks: Vec<Row> = cells
                .iter()
                .map(|c| c.iter().fold(0 as Row, |m, &v| m | bit(v)))
                .collect();
            let mut split_any = false;
            let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len() + 4);
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u16>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let mut sig = Vec::with_capacity(ncol * masks.len());
                        for layer in &self.cg.layers {
                            let row = layer[v];
                            for &m in &masks {
                                sig.push((row & m).count_ones() as u16);
                            }
                        }
                        (sig, v)
                    })
                    .collect();
                keyed.sort();
                let before = next.len();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                        h = mix(h, (i - start) as u64);
                        for &c in &keyed[start].0 {
                            h = mix(h, c as u64);
                        }
                        start = i;
                    }
                }
                split_any |= next.len() - before > 1;
            }
            *cells = next;
            if !split_any {
                break;
            }
        }
        for c in cells.iter() {
            h = mix(h, c.len() as u64);
        }
        h
    }

    fn leaf_rows(&self, lab: &[usize]) -> Vec<Row> {
        let n = lab.len();
        let mut pos = vec![0usize; n];
        for (i, &v) in lab.iter().enumerate() {
            pos[v] = i;
        }
        let mut rows = Vec::with_capacity(n * self.cg.layers.len());
        for layer in &self.cg.layers {
            for &v in lab {
                let mut r: Row = 0;
                for w in bits(layer[v]) {
                    r |= bit(pos[w]);
                }
                rows.push(r);
            }
        }
        rows
    }

    /// Union-find orbit representatives under automorphisms fixing `path`.
    fn orbit_roots(&self, path: &[usize]) -> Vec<usize> {
        let n = self.cg.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for g in &self.autos {
            if path.iter().any(|&v| g.apply(v) != v) {
                continue;
            }
            for x in 0..n {
                let (a, b) = (find(&mut parent, x), find(&mut parent, g.apply(x)));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        (0..n).map(|x| find(&mut parent, x)).collect()
    }

    fn prune(&self, trace: &[u64]) -> bool {
        let d = trace.len();
        let Some(first) = &self.first else { return false };
        let matches_first = first.trace.len() >= d && first.trace[..d] == *trace;
        if matches_first {
            return false;
        }
        if !self.canon {
            return true;
        }
        let best = self.best.as_ref().unwrap();
        let k = d.min(best.trace.len());
        trace[..k] < best.trace[..k]
    }

    fn record_automorphism(&mut self, from: &[usize], to: &[usize]) {
        let n = from.len();
        let mut img = vec![0usize; n];
        for i in 0..n {
            img[from[i]] = to[i];
        }
        let p = Perm::from_images_unchecked(img);
        debug_assert!(self.cg.is_automorphism(&p));
        if !p.is_identity() {
            self.autos.push(p);
        }
    }

    fn leaf(&mut self, cells: &[Vec<usize>], path: &[usize], trace: &[u64]) -> Option<usize> {
        let lab: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let rows = self.leaf_rows(&lab);
        let leaf = Leaf { path: path.to_vec(), trace: trace.to_vec(), lab, rows };
        let Some(first) = &self.first else {
            if self.canon {
                self.best = Some(Leaf {
                    path: leaf.path.clone(),
                    trace: leaf.trace.clone(),
                    lab: leaf.lab.clone(),
                    rows: leaf.rows.clone(),
                });
            }
            self.first = Some(leaf);
            return None;
        };
        if first.rows == leaf.rows {
            let common = first.path.iter().zip(&leaf.path).take_while(|(a, b)| a == b).count();
            let from = first.lab.clone();
            self.record_automorphism(&from, &leaf.lab);
            return Some(common);
        }
        if self.canon {
            let best = self.best.as_ref().unwrap();
            match (leaf.trace.as_slice(), &leaf.rows).cmp(&(best.trace.as_slice(), &best.rows)) {
                Ordering::Greater => self.best = Some(leaf),
                Ordering::Equal => {
                    let from = best.lab.clone();
                    self.record_automorphism(&from, &leaf.lab);
                }
                Ordering::Less => {}
            }
        }
        None
    }

    fn dfs(&mut self, cells: Vec<Vec<usize>>, path: &mut Vec<usize>, trace: &mut Vec<u64>) -> Option<usize> {
        let n = self.cg.n();
        if cells.len() == n {
            return self.leaf(&cells, path, trace);
        }
        let level = path.len();
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i)
            .unwrap();
        let mut candidates = cells[target].clone();
        candidates.sort_unstable();
        let mut explored: Vec<usize> = Vec::new();
        let mut autos_seen = usize::MAX;
        let mut roots: Vec<usize> = Vec::new();
        for v in candidates {
            if !explored.is_empty() {
                if autos_seen != self.autos.len() {
                    roots = self.orbit_roots(path);
                    autos_seen = self.autos.len();
                }
                if explored.iter().any(|&u| roots[u] == roots[v]) {
                    continue;
                }
            }
            explored.push(v);
            let mut child: Vec<Vec<usize>> = Vec::with_capacity(cells.len() + 1);
            for (i, c) in cells.iter().enumerate() {
                if i == target {
                    child.push(vec![v]);
                    child.push(c.iter().copied().filter(|&x| x != v).collect());
                } else {
                    child.push(c.clone());
                }
            }
            let h = self.refine(&mut child);
            path.push(v);
            trace.push(h);
            let jump = if self.prune(trace) { None } else { self.dfs(child, path, trace) };
            path.pop();
            trace.pop();
            if let Some(j) = jump {
                if j < level {
                    return Some(j);
                }
            }
        }
        None
    }

    fn run(&mut self) {
        let mut cells = self.initial_partition();
        let h = self.refine(&mut cells);
        let mut path = Vec::new();
        let mut trace = vec![h];
        // the root trace entry is shared by every leaf
        let _ = self.dfs(cells, &mut path, &mut trace);
        if let Some(f) = self.first.as_mut() {
            f.trace.remove(0);
        }
        if let Some(b) = self.best.as_mut() {
            b.trace.remove(0);
        }
    }

    fn group(&self) -> PermGroup {
        let gens: Vec<Perm> = self.autos.clone();
        assert!(gens.iter().all(|g| self.cg.is_automorphism(g)), "invalid automorphism emitted");
        PermGroup::new(self.cg.n(), gens).expect("degrees agree")
    }

    fn canonical_form(&self) -> CanonicalForm {
        let n = self.cg.n();
        let best = self.best.as_ref().unwrap();
        let mut pos = vec![0usize; n];
        for (i, &v) in best.lab.iter().enumerate() {
            pos[v] = i;
        }
        let mut cert = Vec::new();
        cert.extend_from_slice(&(n as u16).to_le_bytes());
        cert.push(self.cg.layers.len() as u8);
        for &v in &best.lab {
            cert.extend_from_slice(&self.cg.vcolor[v].to_le_bytes());
        }
        let row_bytes = n.div_ceil(8);
        for row in &best.rows {
            let mut bytes = vec![0u8; row_bytes];
            for j in bits(*row) {
                bytes[j / 8] |= 0x80 >> (j % 8);
            }
            cert.extend_from_slice(&bytes);
        }
        CanonicalForm { relabeling: Perm::from_images_unchecked(pos), cert }
    }
}

fn empty_form(cg: &ColoredGraph) -> CanonicalForm {
    let cert = vec![0, 0, cg.layers.len() as u8];
    CanonicalForm { relabeling: Perm::identity(0), cert }
}

/// Generators of the full color-preserving automorphism group.
pub fn automorphisms(cg: &ColoredGraph) -> PermGroup {
    if cg.n() == 0 {
        return PermGroup::trivial(0);
    }
    let mut s = Search::new(cg, false);
    s.run();
    s.group()
}

/// Canonical form together with the automorphism group found on the way.
pub fn canonical_form_and_group(cg: &ColoredGraph) -> (CanonicalForm, PermGroup) {
    if cg.n() == 0 {
        return (empty_form(cg), PermGroup::trivial(0));
    }
    let mut s = Search::new(cg, true);
    s.run();
    (s.canonical_form(), s.group())
}

pub fn canonical_form(cg: &ColoredGraph) -> CanonicalForm {
    canonical_form_and_group(cg).0
}

pub fn graph_canonical_form(g: &Graph) -> CanonicalForm {
    canonical_form(&ColoredGraph::new(g.clone()))
}

pub fn graph_automorphisms(g: &Graph) -> PermGroup {
    automorphisms(&ColoredGraph::new(g.clone()))
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n()
        && g.edge_count() == h.edge_count()
        && g.degree_sequence() == h.degree_sequence()
        && graph_canonical_form(g).cert == graph_canonical_form(h).cert
}

/// An isomorphism `g -> h` as an image array, if one exists.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Perm> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return None;
    }
    let cg = graph_canonical_form(g);
    let ch = graph_canonical_form(h);
    if cg.cert != ch.cert {
        return None;
    }
    // g -> canonical -> h
    let iso = ch.relabeling.inverse().compose_unchecked(&cg.relabeling);
    debug_assert!((0..g.n()).all(|u| g.neighbors(u).all(|w| h.has_edge(iso.apply(u), iso.apply(w)))));
    Some(iso)
}

/// Automorphisms of `g` that map the edge set `edges` onto itself.
pub fn stabilizer_of_edge_set(g: &Graph, edges: &[Edge]) -> Result<PermGroup> {
    let cg = ColoredGraph::new(g.clone()).with_marked_edges(edges)?;
    Ok(automorphisms(&cg))
}

/// Partition of the edges into orbits under `group`, ordered by first edge.
pub fn edge_orbits_under(g: &Graph, group: &PermGroup) -> Vec<Vec<Edge>> {
    let edges: Vec<Edge> = g.edges().collect();
    let index: BTreeMap<Edge, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut parent: Vec<usize> = (0..edges.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for gen in group.generators() {
        for (i, &e) in edges.iter().enumerate() {
            let j = index[&gen.apply_edge(e)];
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<Edge>> = BTreeMap::new();
    for (i, &e) in edges.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(e);
    }
    groups.into_values().collect()
}

pub fn edge_orbits(g: &Graph) -> Vec<Vec<Edge>> {
    edge_orbits_under(g, &graph_automorphisms(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_pairs(n, &e).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push((i, j));
            }
        }
        Graph::from_pairs(n, &e).unwrap()
    }

    fn k33() -> Graph {
        let mut e = Vec::new();
        for i in 0..3 {
            for j in 3..6 {
                e.push((i, j));
            }
        }
        Graph::from_pairs(6, &e).unwrap()
    }

    fn order(g: &Graph) -> BigUint {
        graph_automorphisms(g).order()
    }

    #[test]
    fn classic_orders() {
        assert_eq!(order(&complete(5)), BigUint::from(120u32));
        assert_eq!(order(&cycle(8)), BigUint::from(16u32));
        assert_eq!(order(&k33()), BigUint::from(72u32));
        assert_eq!(order(&complete(8).without_edges(&cycle(8).edges().collect::<Vec<_>>())), BigUint::from(16u32));
        let fact16: BigUint = (1..=16u32).map(BigUint::from).product();
        assert_eq!(order(&complete(16)), fact16);
    }

    #[test]
    fn canonical_group_agrees_with_automorphism_search() {
        for g in [complete(6), cycle(9), k33()] {
            let (_, grp) = canonical_form_and_group(&ColoredGraph::new(g.clone()));
            assert_eq!(grp.order(), order(&g));
        }
    }

    #[test]
    fn marked_cycle_stabilizers() {
        let k4 = complete(4);
        let ham = [Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(0, 3)];
        assert_eq!(stabilizer_of_edge_set(&k4, &ham).unwrap().order(), BigUint::from(8u32));
        let c7 = cycle(7);
        let all: Vec<Edge> = c7.edges().collect();
        assert_eq!(stabilizer_of_edge_set(&c7, &all).unwrap().order(), BigUint::from(14u32));
        let h6 = [Edge(0, 3), Edge(3, 1), Edge(1, 4), Edge(4, 2), Edge(2, 5), Edge(5, 0)];
        let h6: Vec<Edge> = h6.iter().map(|e| Edge::new(e.0, e.1)).collect();
        assert_eq!(stabilizer_of_edge_set(&k33(), &h6).unwrap().order(), BigUint::from(12u32));
        assert_eq!(stabilizer_of_edge_set(&c7, &[Edge(0, 2)]).unwrap_err(), Error::EdgeNotPresent(0, 2));
    }

    #[test]
    fn isomorphism_checks() {
        assert!(!is_isomorphic(&cycle(6), &k33()));
        let g = cycle(7);
        let perm = [3, 6, 0, 2, 5, 1, 4];
        let h = g.relabeled(&perm);
        assert!(is_isomorphic(&g, &h));
        let iso = find_isomorphism(&g, &h).unwrap();
        for e in g.edges() {
            assert!(h.has_edge(iso.apply(e.0), iso.apply(e.1)));
        }
        assert!(find_isomorphism(&cycle(6), &k33()).is_none());
    }

    #[test]
    fn vertex_colors_restrict_the_group() {
        let cg = ColoredGraph::new(cycle(6)).with_vertex_colors(vec![1, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(automorphisms(&cg).order(), BigUint::from(2u32));
    }

    #[test]
    fn edge_orbit_partition() {
        assert_eq!(edge_orbits(&complete(5)).len(), 1);
        // path on 4 vertices: middle edge and the two end edges
        let p4 = Graph::from_pairs(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(edge_orbits(&p4), vec![vec![Edge(0, 1), Edge(2, 3)], vec![Edge(1, 2)]]);
    }

    #[test]
    fn edgeless_and_tiny_graphs() {
        assert_eq!(order(&Graph::empty(0).unwrap()), BigUint::from(1u32));
        assert_eq!(order(&Graph::empty(1).unwrap()), BigUint::from(1u32));
        assert_eq!(order(&Graph::empty(4).unwrap()), BigUint::from(24u32));
        assert!(is_isomorphic(&Graph::empty(0).unwrap(), &Graph::empty(0).unwrap()));
    }
}
