//! Simple undirected graphs on at most [`MAX_VERTICES`] vertices.
//!
//! Adjacency is stored as one bit row per vertex. The row width is 64 bits by
//! default; the `wide` feature switches to 128-bit rows.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[cfg(not(feature = "wide"))]
pub type Row = u64;
#[cfg(feature = "wide")]
pub type Row = u128;

/// Largest vertex count representable with the configured row width.
pub const MAX_VERTICES: usize = Row::BITS as usize;

#[inline]
pub(crate) fn bit(v: usize) -> Row {
    (1 as Row) << v
}

/// Mask with the low `n` bits set.
#[inline]
pub(crate) fn full_mask(n: usize) -> Row {
    if n >= MAX_VERTICES {
        Row::MAX
    } else {
        bit(n) - 1
    }
}

/// Iterator over the set bits of a row, lowest first.
#[derive(Clone, Copy)]
pub struct Bits(Row);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

#[inline]
pub fn bits(row: Row) -> Bits {
    Bits(row)
}

/// Unordered vertex pair, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge(pub usize, pub usize);

impl Edge {
    /// Normalizes the endpoint order. Does not check `u != v`.
    #[inline]
    pub fn new(u: usize, v: usize) -> Self {
        if u < v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    #[inline]
    pub fn u(&self) -> usize {
        self.0
    }

    #[inline]
    pub fn v(&self) -> usize {
        self.1
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// A finite simple graph with optional opaque per-vertex labels.
///
/// Equality compares vertex count and adjacency only; labels are metadata.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    adj: Vec<Row>,
    labels: Option<Vec<Vec<u8>>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, e) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "])")
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::CapExceeded { requested: n, cap: MAX_VERTICES });
        }
        Ok(Graph { n, adj: vec![0; n], labels: None })
    }

    pub fn from_edge_list(n: usize, edges: &[Edge]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for e in edges {
            g.add_edge(e.0, e.1)?;
        }
        Ok(g)
    }

    /// Convenience wrapper over [`Graph::from_edge_list`] for tuple slices.
    pub fn from_pairs(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows. Rows must be symmetric and loop-free.
    pub(crate) fn from_rows(n: usize, adj: Vec<Row>) -> Self {
        debug_assert_eq!(adj.len(), n);
        Graph { n, adj, labels: None }
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
        Ok(())
    }

    pub fn with_labels(mut self, labels: Vec<Vec<u8>>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::VertexOutOfRange { vertex: labels.len(), n: self.n });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[Vec<u8>]> {
        self.labels.as_deref()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, v: usize) -> Row {
        self.adj[v]
    }

    pub fn rows(&self) -> &[Row] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> Bits {
        bits(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |u| {
            bits(self.adj[u] & !full_mask(u + 1)).map(move |v| Edge(u, v))
        })
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    /// `Some(d)` if every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = if self.n == 0 { 0 } else { self.degree(0) };
        (0..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    /// Vertices reachable from `start` within the vertex mask `allowed`.
    pub(crate) fn component_within(&self, start: usize, allowed: Row) -> Row {
        let mut seen = bit(start);
        let mut frontier = bit(start);
        while frontier != 0 {
            let mut next: Row = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            next &= allowed & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        self.component_within(0, full_mask(self.n)) == full_mask(self.n)
    }

    /// Connected components as vertex masks, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Row> {
        let mut left = full_mask(self.n);
        let mut out = Vec::new();
        while left != 0 {
            let v = left.trailing_zeros() as usize;
            let c = self.component_within(v, left);
            out.push(c);
            left &= !c;
        }
        out
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// A 2-coloring (`true`/`false` per vertex) if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                let su = side[u].unwrap();
                for w in self.neighbors(u) {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            q.push_back(w);
                        }
                        Some(sw) if sw == su => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap_or(false)).collect())
    }

    /// BFS distance from `s` to `t` avoiding the edge `skip`, if reachable.
    fn distance_avoiding(&self, s: usize, t: usize, skip: Edge) -> Option<usize> {
        let mut seen = bit(s);
        let mut frontier = bit(s);
        let mut d = 0;
        while frontier != 0 {
            if frontier & bit(t) != 0 {
                return Some(d);
            }
            let mut next: Row = 0;
            for v in bits(frontier) {
                let mut nb = self.adj[v];
                if v == skip.0 {
                    nb &= !bit(skip.1);
                } else if v == skip.1 {
                    nb &= !bit(skip.0);
                }
                next |= nb;
            }
            next &= !seen;
            seen |= next;
            frontier = next;
            d += 1;
        }
        None
    }

    /// Length of the shortest cycle through `e`, or `None` for a bridge.
    pub fn shortest_cycle_through_edge(&self, e: Edge) -> Result<Option<usize>> {
        let e = Edge::new(e.0, e.1);
        if !self.has_edge(e.0, e.1) {
            return Err(Error::EdgeNotPresent(e.0, e.1));
        }
        Ok(self.distance_avoiding(e.0, e.1, e).map(|d| d + 1))
    }

    /// Shortest cycle length overall, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        self.edges()
            .filter_map(|e| self.distance_avoiding(e.0, e.1, e).map(|d| d + 1))
            .min()
    }

    /// Subgraph induced by `verts`; vertex `i` of the result is `verts[i]`.
    pub fn induced_subgraph(&self, verts: &[usize]) -> Graph {
        let k = verts.len();
        let mut adj = vec![0 as Row; k];
        for i in 0..k {
            for j in 0..k {
                if self.has_edge(verts[i], verts[j]) {
                    adj[i] |= bit(j);
                }
            }
        }
        Graph::from_rows(k, adj)
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![0 as Row; self.n];
        for u in 0..self.n {
            let mut r: Row = 0;
            for w in self.neighbors(u) {
                r |= bit(perm[w]);
            }
            adj[perm[u]] = r;
        }
        let labels = self.labels.as_ref().map(|ls| {
            let mut out = vec![Vec::new(); self.n];
            for (v, l) in ls.iter().enumerate() {
                out[perm[v]] = l.clone();
            }
            out
        });
        Graph { n: self.n, adj, labels }
    }

    pub fn complement(&self) -> Graph {
        let all = full_mask(self.n);
        let adj = (0..self.n).map(|v| all & !self.adj[v] & !bit(v)).collect();
        Graph::from_rows(self.n, adj)
    }

    /// Graph with the given edges removed (edges not present are ignored).
    pub fn without_edges(&self, edges: &[Edge]) -> Graph {
        let mut adj = self.adj.clone();
        for e in edges {
            adj[e.0] &= !bit(e.1);
            adj[e.1] &= !bit(e.0);
        }
        Graph::from_rows(self.n, adj)
    }

    /// Whether `perm` (image array) maps the edge set onto itself.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        if perm.len() != self.n {
            return false;
        }
        (0..self.n).all(|u| {
            let mut r: Row = 0;
            for w in self.neighbors(u) {
                r |= bit(perm[w]);
            }
            r == self.adj[perm[u]]
        })
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self.edges().map(|e| [e.0, e.1]).collect(),
            labels: self.labels.as_ref().map(|ls| {
                ls.iter().map(|l| String::from_utf8_lossy(l).into_owned()).collect()
            }),
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<Graph> {
        let mut g = Graph::empty(j.n)?;
        for &[u, v] in &j.edges {
            g.add_edge(u, v)?;
        }
        if let Some(ls) = &j.labels {
            g = g.with_labels(ls.iter().map(|s| s.as_bytes().to_vec()).collect())?;
        }
        Ok(g)
    }
}

/// Human-readable edge-list form: `{"n": 3, "edges": [[0,1],[1,2]], "labels": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}
