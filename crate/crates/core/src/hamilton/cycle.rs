use std::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bit, bits, full_mask, Edge, Graph, Row};
use crate::perm::Perm;

pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

/// A Hamiltonian cycle as a normalized vertex sequence plus its edge set.
///
/// The sequence starts at vertex 0 and its second vertex is the smaller of
/// the two neighbors of 0 on the cycle. Serializes as the sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(into = "Vec<usize>")]
pub struct HamCycle {
    seq: Vec<usize>,
    edges: Vec<Edge>,
}

impl From<HamCycle> for Vec<usize> {
    fn from(c: HamCycle) -> Self {
        c.seq
    }
}

fn normalize(seq: &[usize]) -> Vec<usize> {
    let n = seq.len();
    let start = (0..n).min_by_key(|&i| seq[i]).unwrap_or(0);
    let mut out: Vec<usize> = (0..n).map(|i| seq[(start + i) % n]).collect();
    if n > 2 && out[1] > out[n - 1] {
        out[1..].reverse();
    }
    out
}

fn cycle_edges(seq: &[usize]) -> Vec<Edge> {
    let n = seq.len();
    let mut e: Vec<Edge> = (0..n).map(|i| Edge::new(seq[i], seq[(i + 1) % n])).collect();
    e.sort_unstable();
    e
}

impl HamCycle {
    /// Validates that `seq` is a Hamiltonian cycle of `g`, then normalizes.
    pub fn new(g: &Graph, seq: &[usize]) -> Result<Self> {
        let n = g.n();
        if n < 3 || seq.len() != n {
            return Err(Error::NotACycleOfG);
        }
        let mut seen: Row = 0;
        for &v in seq {
            if v >= n || seen & bit(v) != 0 {
                return Err(Error::NotACycleOfG);
            }
            seen |= bit(v);
        }
        if (0..n).any(|i| !g.has_edge(seq[i], seq[(i + 1) % n])) {
            return Err(Error::NotACycleOfG);
        }
        Ok(HamCycle::from_seq_unchecked(seq))
    }

    pub(crate) fn from_seq_unchecked(seq: &[usize]) -> Self {
        let seq = normalize(seq);
        let edges = cycle_edges(&seq);
        HamCycle { seq, edges }
    }

    pub fn seq(&self) -> &[usize] {
        &self.seq
    }

    /// Sorted edge set.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// Image under a vertex permutation.
    pub fn image(&self, p: &Perm) -> HamCycle {
        let seq: Vec<usize> = self.seq.iter().map(|&v| p.apply(v)).collect();
        HamCycle::from_seq_unchecked(&seq)
    }

    pub fn is_cycle_of(&self, g: &Graph) -> bool {
        HamCycle::new(g, &self.seq).is_ok()
    }
}

struct Dfs<'a, F, O> {
    g: &'a Graph,
    path: Vec<usize>,
    unvisited: Row,
    /// Vertices allowed as the last vertex (neighbors of 0 above the second).
    closers: Row,
    visit: &'a mut F,
    order: &'a mut O,
    nodes: u64,
    node_budget: u64,
}

impl<F: FnMut(&[usize]) -> ControlFlow<()>, O: FnMut(&mut Vec<usize>)> Dfs<'_, F, O> {
    fn feasible(&self, cur: usize) -> bool {
        let g = self.g;
        let ends = self.unvisited | bit(cur) | bit(0);
        if self.unvisited & self.closers == 0 {
            return false;
        }
        for w in bits(self.unvisited) {
            if (g.row(w) & ends).count_ones() < 2 {
                return false;
            }
        }
        // the rest of the path lives in unvisited ∪ {cur, 0}
        g.component_within(cur, ends) == ends
    }

    fn run(&mut self, cur: usize) -> ControlFlow<()> {
        self.nodes += 1;
        if self.nodes > self.node_budget {
            return ControlFlow::Break(());
        }
        if self.unvisited == 0 {
            if self.closers & bit(cur) != 0 {
                return (self.visit)(&self.path);
            }
            return ControlFlow::Continue(());
        }
        if !self.feasible(cur) {
            return ControlFlow::Continue(());
        }
        let mut next: Vec<usize> = bits(self.g.row(cur) & self.unvisited).collect();
        (self.order)(&mut next);
        for w in next {
            if self.unvisited.count_ones() > 1 && self.closers & self.unvisited == bit(w) {
                // w is the only possible last vertex
                continue;
            }
            self.unvisited &= !bit(w);
            self.path.push(w);
            let r = self.run(w);
            self.path.pop();
            self.unvisited |= bit(w);
            r?;
        }
        ControlFlow::Continue(())
    }
}

fn drive(
    g: &Graph,
    node_budget: u64,
    mut order: impl FnMut(&mut Vec<usize>),
    mut visit: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let n = g.n();
    if n < 3 || !g.is_connected() || (0..n).any(|v| g.degree(v) < 2) {
        return ControlFlow::Continue(());
    }
    let mut seconds: Vec<usize> = g.neighbors(0).collect();
    order(&mut seconds);
    let mut nodes = 0;
    for s in seconds {
        let closers = g.row(0) & !full_mask(s + 1);
        if closers == 0 {
            continue;
        }
        let mut dfs = Dfs {
            g,
            path: vec![0, s],
            unvisited: full_mask(n) & !bit(0) & !bit(s),
            closers,
            visit: &mut visit,
            order: &mut order,
            nodes,
            node_budget,
        };
        let r = dfs.run(s);
        nodes = dfs.nodes;
        r?;
    }
    ControlFlow::Continue(())
}

/// Calls `visit` once per Hamiltonian cycle, with the normalized sequence.
/// Stops early when `visit` breaks.
pub fn for_each_ham_cycle(g: &Graph, visit: impl FnMut(&[usize]) -> ControlFlow<()>) -> ControlFlow<()> {
    drive(g, u64::MAX, |_| {}, visit)
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    pub cycles: Vec<HamCycle>,
    /// The cap was reached; more cycles may exist.
    pub truncated: bool,
}

/// Collects up to `cap` cycles.
pub fn enumerate_ham_cycles(g: &Graph, cap: usize) -> Enumeration {
    let mut cycles = Vec::new();
    let mut truncated = false;
    let _ = for_each_ham_cycle(g, |seq| {
        if cycles.len() == cap {
            truncated = true;
            return ControlFlow::Break(());
        }
        cycles.push(HamCycle::from_seq_unchecked(seq));
        ControlFlow::Continue(())
    });
    Enumeration { cycles, truncated }
}

pub fn find_ham_cycle(g: &Graph) -> Option<HamCycle> {
    let mut found = None;
    let _ = for_each_ham_cycle(g, |seq| {
        found = Some(HamCycle::from_seq_unchecked(seq));
        ControlFlow::Break(())
    });
    found
}

/// Depth-first search with shuffled branching order; gives up after
/// `node_budget` search nodes.
pub fn random_ham_cycle<R: Rng + ?Sized>(g: &Graph, rng: &mut R, node_budget: u64) -> Option<HamCycle> {
    let mut found = None;
    let _ = drive(g, node_budget, |v: &mut Vec<usize>| v.shuffle(rng), |seq| {
        found = Some(HamCycle::from_seq_unchecked(seq));
        ControlFlow::Break(())
    });
    found
}

/// A Hamiltonian cycle `P, φ(P), ..., φ^{m-1}(P)` for a fixed-point-free
/// automorphism `phi` whose orbits all have the same size `m`. Rotating such
/// a cycle by `n/m` positions is `phi`.
pub fn semiregular_ham_cycle(g: &Graph, phi: &Perm, node_budget: u64) -> Option<HamCycle> {
    let n = g.n();
    if n < 3 || phi.degree() != n || !g.is_automorphism(phi.images()) {
        return None;
    }
    let mut orbit_id = vec![usize::MAX; n];
    let mut m = 0;
    let mut q = 0;
    for v in 0..n {
        if orbit_id[v] != usize::MAX {
            continue;
        }
        let mut size = 0;
        let mut x = v;
        while orbit_id[x] == usize::MAX {
            orbit_id[x] = q;
            x = phi.apply(x);
            size += 1;
        }
        if m == 0 {
            m = size;
        } else if m != size {
            return None;
        }
        q += 1;
    }
    if m < 2 {
        return None;
    }
    let target = phi.apply(0);
    let mut path = vec![0usize];
    let mut used = vec![false; q];
    used[orbit_id[0]] = true;
    let mut nodes = 0u64;
    fn go(
        g: &Graph,
        orbit_id: &[usize],
        used: &mut [bool],
        path: &mut Vec<usize>,
        q: usize,
        target: usize,
        nodes: &mut u64,
        budget: u64,
    ) -> bool {
        *nodes += 1;
        if *nodes > budget {
            return false;
        }
        let cur = *path.last().unwrap();
        if path.len() == q {
            return g.has_edge(cur, target);
        }
        for w in g.neighbors(cur) {
            if !used[orbit_id[w]] {
                used[orbit_id[w]] = true;
                path.push(w);
                if go(g, orbit_id, used, path, q, target, nodes, budget) {
                    return true;
                }
                path.pop();
                used[orbit_id[w]] = false;
            }
        }
        false
    }
    if !go(g, &orbit_id, &mut used, &mut path, q, target, &mut nodes, node_budget) {
        return None;
    }
    let mut seq = Vec::with_capacity(n);
    let mut block = path;
    for _ in 0..m {
        seq.extend_from_slice(&block);
        block = block.iter().map(|&v| phi.apply(v)).collect();
    }
    HamCycle::new(g, &seq).ok()
}
