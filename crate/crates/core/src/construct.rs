//! Graph families and structured views: cycles, complete and complete
//! bipartite graphs, Cartesian products, prisms, abelian Cayley graphs,
//! truncations, regular gadgets, cycle complements and group-induced layers.

use serde::Serialize;

use crate::abelian::{AbelianGroup, GeneratingSet, GroupElem};
use crate::canon;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, MAX_VERTICES};
use crate::hamilton::{self, HamCycle};
use crate::perm::Perm;

fn check_cap(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::CapExceeded { requested: n, cap: MAX_VERTICES })
    } else {
        Ok(())
    }
}

pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::TooSmall { what: "cycle", got: n, min: 3 });
    }
    check_cap(n)?;
    let e: Vec<Edge> = (0..n).map(|i| Edge::new(i, (i + 1) % n)).collect();
    Graph::from_edge_list(n, &e)
}

pub fn path_graph(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::TooSmall { what: "path", got: n, min: 1 });
    }
    check_cap(n)?;
    let e: Vec<Edge> = (1..n).map(|i| Edge(i - 1, i)).collect();
    Graph::from_edge_list(n, &e)
}

pub fn complete_graph(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::TooSmall { what: "complete graph", got: n, min: 1 });
    }
    check_cap(n)?;
    let mut e = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            e.push(Edge(i, j));
        }
    }
    Graph::from_edge_list(n, &e)
}

/// Parts `0..m` and `m..m+m2`.
pub fn complete_bipartite(m: usize, m2: usize) -> Result<Graph> {
    if m < 1 || m2 < 1 {
        return Err(Error::TooSmall { what: "bipartite part", got: m.min(m2), min: 1 });
    }
    check_cap(m + m2)?;
    let mut e = Vec::with_capacity(m * m2);
    for i in 0..m {
        for j in 0..m2 {
            e.push(Edge(i, m + j));
        }
    }
    Graph::from_edge_list(m + m2, &e)
}

/// A Cartesian product with its coordinate structure.
///
/// Vertices are numbered row-major over the factor coordinates, the first
/// factor being most significant. `direction_classes[i]` holds the edges that
/// change coordinate `i`.
#[derive(Debug, Clone)]
pub struct ProductView {
    pub graph: Graph,
    pub factors: Vec<Graph>,
    pub direction_classes: Vec<Vec<Edge>>,
}

impl ProductView {
    pub fn coords(&self, mut v: usize) -> Vec<usize> {
        let mut c = vec![0; self.factors.len()];
        for i in (0..self.factors.len()).rev() {
            let m = self.factors[i].n();
            c[i] = v % m;
            v /= m;
        }
        c
    }

    pub fn vertex(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.factors).fold(0, |acc, (&x, f)| acc * f.n() + x)
    }

    /// Index of the coordinate an edge changes.
    pub fn direction_of(&self, e: Edge) -> Option<usize> {
        let (a, b) = (self.coords(e.0), self.coords(e.1));
        let diff: Vec<usize> = (0..a.len()).filter(|&i| a[i] != b[i]).collect();
        match diff.as_slice() {
            [i] if self.factors[*i].has_edge(a[*i], b[*i]) => Some(*i),
            _ => None,
        }
    }
}

/// `G_1 □ G_2 □ ... □ G_r`.
pub fn cartesian_product_many(factors: &[Graph]) -> Result<ProductView> {
    if factors.is_empty() || factors.iter().any(|f| f.n() == 0) {
        return Err(Error::TooSmall { what: "product factor", got: 0, min: 1 });
    }
    let n = factors.iter().try_fold(1usize, |acc, f| acc.checked_mul(f.n())).unwrap_or(usize::MAX);
    check_cap(n)?;
    let mut view = ProductView {
        graph: Graph::empty(n)?,
        factors: factors.to_vec(),
        direction_classes: vec![Vec::new(); factors.len()],
    };
    let mut g = Graph::empty(n)?;
    for v in 0..n {
        let c = view.coords(v);
        for (i, f) in factors.iter().enumerate() {
            for w in f.neighbors(c[i]) {
                if w > c[i] {
                    let mut d = c.clone();
                    d[i] = w;
                    let u = view.vertex(&d);
                    g.add_edge(v, u)?;
                    view.direction_classes[i].push(Edge::new(v, u));
                }
            }
        }
    }
    for class in &mut view.direction_classes {
        class.sort_unstable();
    }
    view.graph = g;
    Ok(view)
}

pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<ProductView> {
    cartesian_product_many(&[g.clone(), h.clone()])
}

/// `C_k □ K_2`; vertex `2i` is the outer `v_i`, vertex `2i+1` the inner `u_i`.
pub fn prism(k: usize) -> Result<ProductView> {
    if k < 3 {
        return Err(Error::TooSmall { what: "prism", got: k, min: 3 });
    }
    let mut pv = cartesian_product(&cycle_graph(k)?, &complete_graph(2)?)?;
    let labels = (0..2 * k)
        .map(|v| format!("{}{}", if v % 2 == 0 { 'v' } else { 'u' }, v / 2).into_bytes())
        .collect();
    pv.graph = pv.graph.with_labels(labels)?;
    Ok(pv)
}

/// Cayley graph on an arbitrary subset of group elements (a subgroup in
/// practice), vertices in lexicographic order of `elems`.
fn cayley_on(group: &AbelianGroup, elems: &[GroupElem], s: &[GroupElem]) -> Result<Graph> {
    check_cap(elems.len())?;
    let mut sorted = elems.to_vec();
    sorted.sort();
    let pos: std::collections::HashMap<&GroupElem, usize> = sorted.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut g = Graph::empty(sorted.len())?;
    for (i, x) in sorted.iter().enumerate() {
        for t in s {
            if let Some(&j) = pos.get(&group.add(x, t)) {
                if j != i {
                    g.add_edge(i, j)?;
                }
            }
        }
    }
    let labels = sorted.iter().map(|x| group.format_elem(x).into_bytes()).collect();
    g.with_labels(labels)
}

/// `Cay(Γ, S)`: vertex `i` is the `i`-th element in lexicographic residue
/// order and carries it as its label.
pub fn cayley_graph(group: &AbelianGroup, s: &GeneratingSet) -> Result<Graph> {
    let elems: Vec<GroupElem> = group.elements().collect();
    cayley_on(group, &elems, s.elems())
}

#[derive(Debug, Clone)]
pub struct OrderSplit {
    pub p: usize,
    /// Elements whose order is a power of `p`.
    pub s_p: Vec<GroupElem>,
    /// Elements of order coprime to `p`.
    pub s_rest: Vec<GroupElem>,
    pub factor_p: Graph,
    pub factor_rest: Graph,
    pub product: ProductView,
    /// Isomorphism from `product.graph` onto the Cayley graph: `(a, b) -> a + b`.
    pub iso: Perm,
}

fn is_power_of(mut x: usize, p: usize) -> bool {
    while x.is_multiple_of(p) {
        x /= p;
    }
    x == 1
}

/// Splits `S` by element orders at the prime `p` and certifies
/// `Cay(Γ,S) ≅ Cay(<S_p>,S_p) □ Cay(<S'_p>,S'_p)`.
pub fn split_by_orders(group: &AbelianGroup, s: &GeneratingSet, p: usize) -> Result<OrderSplit> {
    if p < 2 || (2..p).any(|d| p.is_multiple_of(d)) {
        return Err(Error::NotApplicable(format!("{p} is not prime")));
    }
    let mut s_p = Vec::new();
    let mut s_rest = Vec::new();
    for x in s.elems() {
        let o = group.elem_order(x);
        if is_power_of(o, p) {
            s_p.push(x.clone());
        } else if !o.is_multiple_of(p) {
            s_rest.push(x.clone());
        } else {
            return Err(Error::NotApplicable(format!(
                "{} has order {o}, mixing {p} with a coprime part",
                group.format_elem(x)
            )));
        }
    }
    if s_p.is_empty() || s_rest.is_empty() {
        return Err(Error::NotApplicable(format!("the split at {p} has an empty side")));
    }
    let sub_p = group.subgroup_elements(&s_p);
    let sub_rest = group.subgroup_elements(&s_rest);
    let factor_p = cayley_on(group, &sub_p, &s_p)?;
    let factor_rest = cayley_on(group, &sub_rest, &s_rest)?;
    let product = cartesian_product(&factor_p, &factor_rest)?;
    let cay = cayley_graph(group, s)?;
    let mut img = vec![0; cay.n()];
    for (i, a) in sub_p.iter().enumerate() {
        for (j, b) in sub_rest.iter().enumerate() {
            img[product.vertex(&[i, j])] = group.index(&group.add(a, b));
        }
    }
    let iso = Perm::from_images(img).map_err(|_| Error::NotApplicable("the subgroups do not form a direct product".into()))?;
    let certified = product.graph.edges().all(|e| cay.has_edge(iso.apply(e.0), iso.apply(e.1)))
        && product.graph.edge_count() == cay.edge_count()
        && canon::is_isomorphic(&product.graph, &cay);
    if !certified {
        return Err(Error::NotApplicable("order split does not yield a product".into()));
    }
    Ok(OrderSplit { p, s_p, s_rest, factor_p, factor_rest, product, iso })
}

/// Replaces each vertex of a cubic graph by a triangle. Vertex `3v + i` is
/// `v`'s corner facing its `i`-th neighbor in ascending order.
pub fn truncation(g: &Graph) -> Result<Graph> {
    if g.regular_degree() != Some(3) {
        return Err(Error::NotCubic);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    check_cap(3 * n)?;
    let nbrs: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut t = Graph::empty(3 * n)?;
    for v in 0..n {
        t.add_edge(3 * v, 3 * v + 1)?;
        t.add_edge(3 * v, 3 * v + 2)?;
        t.add_edge(3 * v + 1, 3 * v + 2)?;
        for (i, &x) in nbrs[v].iter().enumerate() {
            if x > v {
                let j = nbrs[x].iter().position(|&y| y == v).expect("symmetric adjacency");
                t.add_edge(3 * v + i, 3 * x + j)?;
            }
        }
    }
    Ok(t)
}

/// `n` copies of `K_{d+1}` minus an edge, threaded onto a cycle. Copy `i`
/// occupies `i(d+1)..(i+1)(d+1)`; its local vertices 0 and 1 lose their
/// mutual edge, and local 1 of copy `i` joins local 0 of copy `i+1`.
pub fn regular_gadget(d: usize, n: usize) -> Result<Graph> {
    if d < 2 {
        return Err(Error::TooSmall { what: "gadget degree", got: d, min: 2 });
    }
    if n < 3 {
        return Err(Error::TooSmall { what: "gadget count", got: n, min: 3 });
    }
    let size = d + 1;
    check_cap(n.saturating_mul(size))?;
    let mut g = Graph::empty(n * size)?;
    for i in 0..n {
        let base = i * size;
        for a in 0..size {
            for b in a + 1..size {
                if (a, b) != (0, 1) {
                    g.add_edge(base + a, base + b)?;
                }
            }
        }
        g.add_edge(base + 1, ((i + 1) % n) * size)?;
    }
    Ok(g)
}

/// `K_n \ C_n`.
pub fn complement_of_cycle(n: usize) -> Result<Graph> {
    if n < 5 {
        return Err(Error::TooSmall { what: "cycle complement", got: n, min: 5 });
    }
    Ok(cycle_graph(n)?.complement())
}

/// A `K`-`l`-layer structure. `layers[j][i]` is matched to `layers[j+1][i]`,
/// and `i -> layers[j][i]` embeds `k_graph` onto layer `j`.
#[derive(Debug, Clone, Serialize)]
pub struct LayeredView {
    #[serde(skip)]
    pub graph: Graph,
    pub layers: Vec<Vec<usize>>,
    #[serde(skip)]
    pub k_graph: Graph,
    /// A Hamiltonian cycle of `k_graph`.
    pub k_cycle: HamCycle,
}

impl LayeredView {
    /// Validates the matchings, the layer isomorphisms and Hamiltonicity of
    /// the first layer.
    pub fn new(graph: Graph, layers: Vec<Vec<usize>>) -> Result<Self> {
        let n = graph.n();
        let k = layers.first().map(Vec::len).unwrap_or(0);
        let mut seen = vec![false; n];
        for layer in &layers {
            if layer.len() != k {
                return Err(Error::NotApplicable("layers differ in size".into()));
            }
            for &v in layer {
                if v >= n || seen[v] {
                    return Err(Error::NotApplicable("layers do not partition the vertices".into()));
                }
                seen[v] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::NotApplicable("layers do not partition the vertices".into()));
        }
        let k_graph = graph.induced_subgraph(&layers[0]);
        for w in layers.windows(2) {
            if (0..k).any(|i| !graph.has_edge(w[0][i], w[1][i])) {
                return Err(Error::NotApplicable("missing matching edge".into()));
            }
            if graph.induced_subgraph(&w[1]) != k_graph {
                return Err(Error::NotApplicable("matching is not a layer isomorphism".into()));
            }
        }
        let k_cycle = hamilton::find_ham_cycle(&k_graph)
            .ok_or_else(|| Error::NotApplicable("layer graph is not Hamiltonian".into()))?;
        Ok(LayeredView { graph, layers, k_graph, k_cycle })
    }

    pub fn k(&self) -> usize {
        self.k_graph.n()
    }

    pub fn l(&self) -> usize {
        self.layers.len()
    }
}

/// Layers from the cosets of `Δ = <S'>`, ordered along a Hamiltonian path
/// of `Cay(Γ/Δ, S \ S')` that starts at `Δ`.
pub fn group_induced_layers(group: &AbelianGroup, s: &GeneratingSet, s_sub: &[GroupElem]) -> Result<LayeredView> {
    let mut sub: Vec<GroupElem> = s_sub.to_vec();
    sub.sort();
    sub.dedup();
    if sub.iter().any(|x| !s.elems().contains(x)) {
        return Err(Error::NotApplicable("S' is not a subset of S".into()));
    }
    let delta = group.subgroup_mask(&sub);
    let dsize = delta.iter().filter(|&&b| b).count();
    if dsize < 3 {
        return Err(Error::NotApplicable(format!("<S'> has order {dsize} < 3")));
    }
    if s.elems().iter().any(|x| delta[group.index(x)] != sub.contains(x)) {
        return Err(Error::NotApplicable("<S'> ∩ S differs from S'".into()));
    }
    let graph = cayley_graph(group, s)?;
    let order = group.order();
    let delta_elems: Vec<GroupElem> = (0..order).filter(|&i| delta[i]).map(|i| group.elem_at(i)).collect();
    // coset id of every element
    let mut coset = vec![usize::MAX; order];
    let mut reps = Vec::new();
    for i in 0..order {
        if coset[i] == usize::MAX {
            let x = group.elem_at(i);
            for d in &delta_elems {
                coset[group.index(&group.add(&x, d))] = reps.len();
            }
            reps.push(x);
        }
    }
    let l = reps.len();
    let outer: Vec<&GroupElem> = s.elems().iter().filter(|x| !sub.contains(x)).collect();
    let step = |c: usize, t: &GroupElem| coset[group.index(&group.add(&reps[c], t))];
    // Hamiltonian path of the quotient by backtracking
    let mut path = vec![0usize];
    let mut steps: Vec<usize> = Vec::new();
    let mut used = vec![false; l];
    used[0] = true;
    fn extend(
        path: &mut Vec<usize>,
        steps: &mut Vec<usize>,
        used: &mut [bool],
        outer_len: usize,
        step: &dyn Fn(usize, usize) -> usize,
    ) -> bool {
        if path.len() == used.len() {
            return true;
        }
        let c = *path.last().unwrap();
        for t in 0..outer_len {
            let d = step(c, t);
            if !used[d] {
                used[d] = true;
                path.push(d);
                steps.push(t);
                if extend(path, steps, used, outer_len, step) {
                    return true;
                }
                used[d] = false;
                path.pop();
                steps.pop();
            }
        }
        false
    }
    let step_idx = |c: usize, t: usize| step(c, outer[t]);
    if !extend(&mut path, &mut steps, &mut used, outer.len(), &step_idx) {
        return Err(Error::NotApplicable("quotient Cayley graph has no Hamiltonian path".into()));
    }
    let mut layers: Vec<Vec<usize>> = vec![delta_elems.iter().map(|x| group.index(x)).collect()];
    for &t in &steps {
        let prev = layers.last().unwrap();
        let next = prev.iter().map(|&v| group.index(&group.add(&group.elem_at(v), outer[t]))).collect();
        layers.push(next);
    }
    LayeredView::new(graph, layers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn z(n: usize) -> AbelianGroup {
        AbelianGroup::cyclic(n).unwrap()
    }

    fn gens(g: &AbelianGroup, xs: &[&[i64]]) -> GeneratingSet {
        let elems = xs.iter().map(|x| g.elem_mod(x).unwrap()).collect();
        GeneratingSet::new(g, elems).unwrap()
    }

    #[test]
    fn basic_families() {
        let c5 = cycle_graph(5).unwrap();
        assert_eq!((c5.n(), c5.edge_count(), c5.regular_degree()), (5, 5, Some(2)));
        assert_eq!(complete_graph(6).unwrap().edge_count(), 15);
        let k44 = complete_bipartite(4, 4).unwrap();
        assert_eq!(k44.edge_count(), 16);
        assert!(k44.is_bipartite());
        assert_eq!(cycle_graph(2).unwrap_err(), Error::TooSmall { what: "cycle", got: 2, min: 3 });
    }

    #[test]
    fn products() {
        let k2 = complete_graph(2).unwrap();
        assert!(canon::is_isomorphic(&cartesian_product(&k2, &k2).unwrap().graph, &cycle_graph(4).unwrap()));
        let cube = cartesian_product(&cycle_graph(4).unwrap(), &k2).unwrap();
        assert_eq!((cube.graph.n(), cube.graph.edge_count()), (8, 12));
        let c3c5 = cartesian_product(&cycle_graph(3).unwrap(), &cycle_graph(5).unwrap()).unwrap();
        assert_eq!(c3c5.graph.regular_degree(), Some(4));
        assert_eq!(c3c5.direction_classes[0].len(), 15);
        assert_eq!(c3c5.direction_classes[1].len(), 15);
        for (i, class) in c3c5.direction_classes.iter().enumerate() {
            for &e in class {
                assert_eq!(c3c5.direction_of(e), Some(i));
            }
        }
        // dropping one class leaves disjoint copies of the other factor
        let copies = c3c5.graph.without_edges(&c3c5.direction_classes[1]);
        assert_eq!(copies.components().len(), 5);
    }

    #[test]
    fn prisms() {
        assert_eq!(prism(3).unwrap().graph.edge_count(), 9);
        let cube = cartesian_product(&cycle_graph(4).unwrap(), &complete_graph(2).unwrap()).unwrap();
        assert!(canon::is_isomorphic(&prism(4).unwrap().graph, &cube.graph));
        let p7 = prism(7).unwrap();
        assert_eq!(p7.graph.labels().unwrap()[3], b"u1".to_vec());
        assert!(p7.graph.has_edge(0, 1) && p7.graph.has_edge(0, 2) && p7.graph.has_edge(1, 13));
    }

    #[test]
    fn cayley_graphs() {
        let z6 = z(6);
        assert!(canon::is_isomorphic(&cayley_graph(&z6, &gens(&z6, &[&[1], &[5]])).unwrap(), &cycle_graph(6).unwrap()));
        let z5 = z(5);
        let k5 = cayley_graph(&z5, &gens(&z5, &[&[1], &[2], &[3], &[4]])).unwrap();
        assert_eq!(k5, complete_graph(5).unwrap());
        let g = AbelianGroup::new(vec![5, 2]).unwrap();
        let cay = cayley_graph(&g, &gens(&g, &[&[1, 0], &[-1, 0], &[0, 1]])).unwrap();
        assert!(canon::is_isomorphic(&cay, &prism(5).unwrap().graph));
        assert_eq!(cay.labels().unwrap()[3], b"(1,1)".to_vec());
    }

    #[test]
    fn order_splits() {
        let z15 = z(15);
        let split = split_by_orders(&z15, &gens(&z15, &[&[3], &[12], &[5], &[10]]), 3).unwrap();
        assert_eq!(split.s_p, vec![z15.elem(vec![5]).unwrap(), z15.elem(vec![10]).unwrap()]);
        assert!(canon::is_isomorphic(&split.factor_p, &cycle_graph(3).unwrap()));
        assert!(canon::is_isomorphic(&split.factor_rest, &cycle_graph(5).unwrap()));
        let z6 = z(6);
        assert!(matches!(split_by_orders(&z6, &gens(&z6, &[&[1], &[5]]), 3), Err(Error::NotApplicable(_))));
        let g = AbelianGroup::new(vec![9, 2]).unwrap();
        let split = split_by_orders(&g, &gens(&g, &[&[1, 0], &[-1, 0], &[0, 1]]), 3).unwrap();
        assert!(canon::is_isomorphic(&split.factor_p, &cycle_graph(9).unwrap()));
        assert!(canon::is_isomorphic(&split.factor_rest, &complete_graph(2).unwrap()));
    }

    #[test]
    fn truncations() {
        let t = truncation(&complete_graph(4).unwrap()).unwrap();
        assert_eq!((t.n(), t.edge_count(), t.regular_degree()), (12, 18, Some(3)));
        let t33 = truncation(&complete_bipartite(3, 3).unwrap()).unwrap();
        assert_eq!((t33.n(), t33.regular_degree()), (18, Some(3)));
        assert_eq!(truncation(&cycle_graph(5).unwrap()), Err(Error::NotCubic));
        let tp = truncation(&prism(3).unwrap().graph).unwrap();
        assert_eq!(tp.n(), 18);
        // 3-connected: no one or two vertices disconnect it
        for a in 0..18 {
            for b in a + 1..18 {
                let keep: Vec<usize> = (0..18).filter(|&v| v != a && v != b).collect();
                assert!(tp.induced_subgraph(&keep).is_connected());
            }
        }
    }

    #[test]
    fn gadgets() {
        let g = regular_gadget(3, 5).unwrap();
        assert_eq!((g.n(), g.regular_degree()), (20, Some(3)));
        assert!(canon::is_isomorphic(&regular_gadget(2, 3).unwrap(), &cycle_graph(9).unwrap()));
        let g = regular_gadget(4, 3).unwrap();
        assert_eq!((g.n(), g.regular_degree()), (15, Some(4)));
        assert!(regular_gadget(1, 3).is_err());
    }

    #[test]
    fn cycle_complements() {
        assert!(canon::is_isomorphic(&complement_of_cycle(5).unwrap(), &cycle_graph(5).unwrap()));
        let g8 = complement_of_cycle(8).unwrap();
        assert_eq!(g8.regular_degree(), Some(5));
        assert_eq!(canon::graph_automorphisms(&g8).order(), BigUint::from(16u32));
        assert_eq!(complement_of_cycle(7).unwrap().edge_count(), 14);
    }

    #[test]
    fn layers() {
        let z15 = z(15);
        let s = gens(&z15, &[&[1], &[14]]);
        assert!(matches!(group_induced_layers(&z15, &s, &[]), Err(Error::NotApplicable(_))));
        let g = AbelianGroup::new(vec![5, 5]).unwrap();
        let s = gens(&g, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        let sub = vec![g.elem(vec![1, 0]).unwrap(), g.elem(vec![4, 0]).unwrap()];
        let lv = group_induced_layers(&g, &s, &sub).unwrap();
        assert_eq!((lv.l(), lv.k()), (5, 5));
        assert!(canon::is_isomorphic(&lv.k_graph, &cycle_graph(5).unwrap()));
    }

    #[cfg(feature = "wide")]
    #[test]
    fn layers_of_z3_to_the_fourth() {
        let g = AbelianGroup::new(vec![3; 4]).unwrap();
        let units: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| i64::from(i == j)).collect()).collect();
        let s = GeneratingSet::symmetric_closure(&g, units.iter().map(|u| g.elem_mod(u).unwrap()).collect()).unwrap();
        let sub: Vec<GroupElem> = s.elems().iter().filter(|x| x.residues[2] == 0 && x.residues[3] == 0).cloned().collect();
        assert_eq!(sub.len(), 4);
        let lv = group_induced_layers(&g, &s, &sub).unwrap();
        assert_eq!((lv.l(), lv.k()), (9, 9));
        assert_eq!(lv.graph.n(), 81);
        let z3sq = AbelianGroup::new(vec![3, 3]).unwrap();
        let k = cayley_graph(&z3sq, &gens(&z3sq, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]])).unwrap();
        assert!(canon::is_isomorphic(&lv.k_graph, &k));
    }
}
