//! Permutation groups given by generators, backed by a deterministic
//! Schreier–Sims stabilizer chain.

use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigUint;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Edge;
use crate::perm::Perm;

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    /// Strong generators fixing every earlier base point.
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    /// `transversal[b]` maps `base` to `b`.
    transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(n: usize, base: usize) -> Self {
        let mut transversal = vec![None; n];
        transversal[base] = Some(Perm::identity(n));
        Level { base, gens: Vec::new(), orbit: vec![base], transversal }
    }

    fn rebuild_orbit(&mut self) {
        let n = self.transversal.len();
        self.transversal.iter_mut().for_each(|t| *t = None);
        self.transversal[self.base] = Some(Perm::identity(n));
        self.orbit.clear();
        self.orbit.push(self.base);
        let mut i = 0;
        while i < self.orbit.len() {
            let b = self.orbit[i];
            let ub = self.transversal[b].clone().unwrap();
            for s in &self.gens {
                let c = s.apply(b);
                if self.transversal[c].is_none() {
                    self.transversal[c] = Some(s.compose_unchecked(&ub));
                    self.orbit.push(c);
                }
            }
            i += 1;
        }
    }
}

/// Base and strong generating set.
#[derive(Debug, Clone)]
pub struct StabChain {
    n: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(n: usize, gens: &[Perm]) -> Self {
        let mut chain = StabChain { n, levels: Vec::new() };
        for g in gens {
            let (h, j) = chain.sift(g.clone(), 0);
            if !h.is_identity() {
                chain.add_strong_generator(h, 0, j);
                for l in (0..=j).rev() {
                    chain.complete_level(l);
                }
            }
        }
        chain
    }

    /// Strips `g` through the levels starting at `from`; returns the residue and
    /// the level where stripping stopped (`levels.len()` if it passed them all).
    fn sift(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for i in from..self.levels.len() {
            let lv = &self.levels[i];
            match &lv.transversal[g.apply(lv.base)] {
                None => return (g, i),
                Some(u) => g = u.inverse().compose_unchecked(&g),
            }
        }
        let depth = self.levels.len();
        (g, depth)
    }

    fn add_strong_generator(&mut self, h: Perm, from: usize, to: usize) {
        if to == self.levels.len() {
            let b = h.support().next().expect("nontrivial residue");
            self.levels.push(Level::new(self.n, b));
        }
        for l in from..=to {
            self.levels[l].gens.push(h.clone());
        }
        for l in from..=to {
            self.levels[l].rebuild_orbit();
        }
    }

    /// Makes level `i` complete, assuming every deeper level already is.
    fn complete_level(&mut self, i: usize) {
        let orbit = self.levels[i].orbit.clone();
        let gens = self.levels[i].gens.clone();
        for &b in &orbit {
            for s in &gens {
                let lv = &self.levels[i];
                let ub = lv.transversal[b].as_ref().unwrap();
                let usb = lv.transversal[s.apply(b)].as_ref().unwrap();
                let sg = usb.inverse().compose_unchecked(&s.compose_unchecked(ub));
                if sg.is_identity() {
                    continue;
                }
                let (h, j) = self.sift(sg, i + 1);
                if !h.is_identity() {
                    self.add_strong_generator(h, i + 1, j);
                    for l in (i + 1..=j).rev() {
                        self.complete_level(l);
                    }
                }
            }
        }
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> &[Perm] {
        self.levels.first().map(|l| l.gens.as_slice()).unwrap_or(&[])
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| acc * l.orbit.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.n && self.sift(g.clone(), 0).0.is_identity()
    }

    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Perm {
        let mut g = Perm::identity(self.n);
        for lv in self.levels.iter().rev() {
            let b = lv.orbit[rng.gen_range(0..lv.orbit.len())];
            g = lv.transversal[b].as_ref().unwrap().compose_unchecked(&g);
        }
        g
    }

    fn for_each_element(&self, level: usize, acc: &Perm, f: &mut dyn FnMut(&Perm)) {
        if level == self.levels.len() {
            f(acc);
            return;
        }
        let lv = &self.levels[level];
        for &b in &lv.orbit {
            let next = acc.compose_unchecked(lv.transversal[b].as_ref().unwrap());
            self.for_each_element(level + 1, &next, f);
        }
    }
}

/// A permutation group on `0..n` given by generators.
#[derive(Debug)]
pub struct PermGroup {
    n: usize,
    gens: Vec<Perm>,
    chain: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermGroup { n: self.n, gens: self.gens.clone(), chain }
    }
}

/// Outcome of an orbit computation that may stop early.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Orbit<T> {
    Complete(Vec<T>),
    CapExceeded { cap: usize },
}

pub const DEFAULT_ORBIT_CAP: usize = 10_000_000;

impl PermGroup {
    pub fn new(n: usize, gens: Vec<Perm>) -> Result<Self> {
        for g in &gens {
            if g.degree() != n {
                return Err(Error::DegreeMismatch(n, g.degree()));
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(PermGroup { n, gens, chain: OnceLock::new() })
    }

    pub fn trivial(n: usize) -> Self {
        PermGroup { n, gens: Vec::new(), chain: OnceLock::new() }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    /// The stabilizer chain, built on first use and checked by sifting every
    /// input generator.
    pub fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| {
            let c = StabChain::new(self.n, &self.gens);
            assert!(
                self.gens.iter().all(|g| c.contains(g)),
                "stabilizer chain failed to contain its generators"
            );
            c
        })
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.chain().contains(g)
    }

    /// Uniformly random group element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Perm {
        self.chain().random_element(rng)
    }

    /// Visits every group element. Only sensible for small groups.
    pub fn for_each_element(&self, mut f: impl FnMut(&Perm)) {
        self.chain().for_each_element(0, &Perm::identity(self.n), &mut f);
    }

    /// Orbit partition of the points, each orbit sorted, ordered by minimum.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for g in &self.gens {
            for x in 0..self.n {
                let (a, b) = (find(&mut parent, x), find(&mut parent, g.apply(x)));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut index = vec![usize::MAX; self.n];
        for x in 0..self.n {
            let r = find(&mut parent, x);
            if index[r] == usize::MAX {
                index[r] = out.len();
                out.push(Vec::new());
            }
            out[index[r]].push(x);
        }
        out
    }

    /// Orbit of an edge set under the group, by breadth-first closure over the
    /// generators. Each element is a sorted edge list; the seed comes first.
    pub fn orbit_of_edge_set(&self, seed: &[Edge], cap: usize) -> Result<Orbit<Vec<Edge>>> {
        let mut start = seed.to_vec();
        for e in &mut start {
            if e.0 >= self.n || e.1 >= self.n {
                return Err(Error::VertexOutOfRange { vertex: e.0.max(e.1), n: self.n });
            }
            *e = Edge::new(e.0, e.1);
        }
        start.sort_unstable();
        start.dedup();
        let mut seen: HashSet<Vec<Edge>> = HashSet::from([start.clone()]);
        let mut order = vec![start.clone()];
        let mut queue = VecDeque::from([start]);
        while let Some(cur) = queue.pop_front() {
            for g in &self.gens {
                let img = g.apply_to_edge_set(&cur)?;
                if seen.insert(img.clone()) {
                    if seen.len() > cap {
                        return Ok(Orbit::CapExceeded { cap });
                    }
                    order.push(img.clone());
                    queue.push_back(img);
                }
            }
        }
        Ok(Orbit::Complete(order))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn dihedral(n: usize) -> PermGroup {
        let rot = Perm::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap();
        let refl = Perm::from_images((0..n).map(|i| (n - i) % n).collect()).unwrap();
        PermGroup::new(n, vec![rot, refl]).unwrap()
    }

    #[test]
    fn dihedral_and_symmetric_orders() {
        assert_eq!(dihedral(7).order(), BigUint::from(14u32));
        let transpositions: Vec<Perm> =
            (0..4).map(|i| Perm::from_cycles(5, &[&[i, i + 1]]).unwrap()).collect();
        assert_eq!(PermGroup::new(5, transpositions).unwrap().order(), BigUint::from(120u32));
        for n in 3..=16 {
            assert_eq!(dihedral(n).order(), BigUint::from(2 * n));
        }
    }

    #[test]
    fn large_symmetric_group_order() {
        let n = 20;
        let cyc = Perm::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap();
        let tr = Perm::from_cycles(n, &[&[0, 1]]).unwrap();
        let g = PermGroup::new(n, vec![cyc, tr]).unwrap();
        let fact: BigUint = (1..=n as u32).map(BigUint::from).product();
        assert_eq!(g.order(), fact);
    }

    #[test]
    fn membership() {
        let d5 = dihedral(5);
        assert!(d5.contains(&Perm::from_images(vec![2, 3, 4, 0, 1]).unwrap()));
        assert!(!d5.contains(&Perm::from_cycles(5, &[&[0, 1]]).unwrap()));
        assert!(PermGroup::trivial(4).contains(&Perm::identity(4)));
        assert_eq!(PermGroup::trivial(4).order(), BigUint::from(1u32));
    }

    #[test]
    fn element_enumeration_matches_order() {
        let g = dihedral(6);
        let mut all = HashSet::new();
        g.for_each_element(|p| {
            all.insert(p.clone());
        });
        assert_eq!(all.len(), 12);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            assert!(all.contains(&g.random_element(&mut rng)));
        }
    }

    #[test]
    fn point_orbits() {
        let g = PermGroup::new(6, vec![Perm::from_cycles(6, &[&[0, 2], &[3, 5]]).unwrap()]).unwrap();
        assert_eq!(g.orbits(), vec![vec![0, 2], vec![1], vec![3, 5], vec![4]]);
    }

    #[test]
    fn edge_set_orbits() {
        let c5: Vec<Edge> = (0..5).map(|i| Edge::new(i, (i + 1) % 5)).collect();
        match dihedral(5).orbit_of_edge_set(&c5, 100).unwrap() {
            Orbit::Complete(o) => assert_eq!(o.len(), 1),
            other => panic!("{other:?}"),
        }
        let seed = vec![Edge(0, 1)];
        match PermGroup::trivial(5).orbit_of_edge_set(&seed, 100).unwrap() {
            Orbit::Complete(o) => assert_eq!(o, vec![seed.clone()]),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            dihedral(5).orbit_of_edge_set(&seed, 2).unwrap(),
            Orbit::CapExceeded { cap: 2 }
        );
    }

    #[test]
    fn orbit_size_divides_order() {
        let g = dihedral(8);
        let seeds = [vec![Edge(0, 1), Edge(2, 3)], vec![Edge(0, 4)], vec![Edge(1, 2), Edge(2, 5)]];
        for s in seeds {
            if let Orbit::Complete(o) = g.orbit_of_edge_set(&s, 1000).unwrap() {
                assert_eq!(16 % o.len(), 0);
                for x in &o {
                    for gen in g.generators() {
                        assert!(o.contains(&gen.apply_to_edge_set(x).unwrap()));
                    }
                }
            }
        }
    }
}
