use serde::Serialize;

use super::cycle::{find_ham_cycle, HamCycle};
use crate::construct::{LayeredView, ProductView};
use crate::error::{Error, Result};

/// Parameters of a zigzag cycle in a layered graph with an odd number
/// `l >= 5` of layers: `a` has `(l-3)/2` entries in `0..=k-2`. `c_k` is a
/// Hamiltonian cycle of the layer graph, in layer-0 positions; the view's
/// own cycle is used when absent.
#[derive(Debug, Clone, Serialize)]
pub struct ZigzagSpec {
    pub a: Vec<usize>,
    pub c_k: Option<HamCycle>,
}

impl ZigzagSpec {
    pub fn new(a: Vec<usize>) -> Self {
        ZigzagSpec { a, c_k: None }
    }
}

/// The zigzag cycle and `μ`, the length of its segment from `v_{0,k-2}` to
/// `v_{l-1,k-1}` through `v_{1,0}`. `μ` is measured on the built cycle and
/// checked against `2k - 1 + 2 Σ (a_i + 1)`.
pub fn zigzag_cycle(lv: &LayeredView, spec: &ZigzagSpec) -> Result<(HamCycle, usize)> {
    let (k, l) = (lv.k(), lv.l());
    if l % 2 == 0 {
        return Err(Error::LayersNotOdd(l));
    }
    if l < 5 {
        return Err(Error::SpecOutOfRange(format!("zigzag cycles need at least 5 layers, got {l}")));
    }
    let pairs = (l - 3) / 2;
    if spec.a.len() != pairs {
        return Err(Error::SpecOutOfRange(format!("expected {pairs} entries in a, got {}", spec.a.len())));
    }
    if let Some(&bad) = spec.a.iter().find(|&&x| x + 2 > k) {
        return Err(Error::SpecOutOfRange(format!("a entry {bad} exceeds k-2 = {}", k - 2)));
    }
    let c_k = match &spec.c_k {
        Some(c) => {
            if !c.is_cycle_of(&lv.k_graph) {
                return Err(Error::NotACycleOfG);
            }
            c.clone()
        }
        None => lv.k_cycle.clone(),
    };
    let order = c_k.seq();
    let v = |j: usize, i: usize| lv.layers[j][order[i]];

    let mut seq = vec![v(0, k - 2)];
    seq.extend((0..=k - 2).rev().map(|i| v(1, i)));
    for (t, &a) in spec.a.iter().enumerate() {
        let j = 2 * (t + 1);
        seq.extend((0..=a).map(|i| v(j, i)));
        seq.extend((0..=a).rev().map(|i| v(j + 1, i)));
    }
    seq.extend((0..k).map(|i| v(l - 1, i)));
    for (t, &a) in spec.a.iter().enumerate().rev() {
        let j = 2 * (t + 1);
        seq.extend((a + 1..k).rev().map(|i| v(j + 1, i)));
        seq.extend((a + 1..k).map(|i| v(j, i)));
    }
    seq.push(v(1, k - 1));
    seq.push(v(0, k - 1));
    seq.extend((0..k - 2).map(|i| v(0, i)));

    let cycle = HamCycle::new(&lv.graph, &seq)?;

    // measure the arc between the endpoints that contains v_{1,0}
    let s = cycle.seq();
    let n = s.len();
    let pos = |x: usize| s.iter().position(|&y| y == x).expect("vertex on cycle");
    let (p, q, mid) = (pos(v(0, k - 2)), pos(v(l - 1, k - 1)), pos(v(1, 0)));
    let forward = (q + n - p) % n;
    let mid_forward = (mid + n - p) % n;
    let mu = if mid_forward < forward { forward } else { n - forward };

    let closed = 2 * k - 1 + 2 * spec.a.iter().map(|a| a + 1).sum::<usize>();
    assert_eq!(mu, closed, "zigzag segment length disagrees with the closed form");
    Ok((cycle, mu))
}

#[derive(Debug, Clone, Serialize)]
pub struct BoustrophedonCycles {
    /// Snakes through the copies of the first factor.
    pub c: HamCycle,
    /// The same construction with the factors' roles swapped.
    pub c_hat: HamCycle,
    /// Edges of each cycle that change the second coordinate.
    pub eh_counts: (usize, usize),
}

/// Snake over columns `0..=k-2` row by row, then up column `k-1`.
/// `at(col, row)` names the vertex.
fn snake(k: usize, l: usize, at: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    let mut seq = Vec::with_capacity(k * l);
    for (step, r) in (0..l).rev().enumerate() {
        // odd l: the top row runs left to right and closes over the wrap edge;
        // even l: it runs right to left and closes next to column k-1
        let left_to_right = (step % 2 == 0) == (l % 2 == 1);
        if left_to_right {
            seq.extend((0..k - 1).map(|c| at(c, r)));
        } else {
            seq.extend((0..k - 1).rev().map(|c| at(c, r)));
        }
    }
    seq.extend((0..l).map(|r| at(k - 1, r)));
    seq
}

/// The two witness cycles of a two-factor product built from Hamiltonian
/// cycles of the factors.
pub fn boustrophedon_cycles(pv: &ProductView) -> Result<BoustrophedonCycles> {
    if pv.factors.len() != 2 {
        return Err(Error::NotApplicable(format!("expected 2 factors, got {}", pv.factors.len())));
    }
    let cg = find_ham_cycle(&pv.factors[0]).ok_or(Error::FactorNotHamiltonian)?;
    let ch = find_ham_cycle(&pv.factors[1]).ok_or(Error::FactorNotHamiltonian)?;
    let (k, l) = (cg.len(), ch.len());
    let (gs, hs) = (cg.seq(), ch.seq());
    let c = snake(k, l, |col, row| pv.vertex(&[gs[col], hs[row]]));
    let c_hat = snake(l, k, |col, row| pv.vertex(&[gs[row], hs[col]]));
    let c = HamCycle::new(&pv.graph, &c)?;
    let c_hat = HamCycle::new(&pv.graph, &c_hat)?;
    let eh = |cy: &HamCycle| cy.edges().iter().filter(|&&e| pv.direction_of(e) == Some(1)).count();
    let eh_counts = (eh(&c), eh(&c_hat));
    Ok(BoustrophedonCycles { c, c_hat, eh_counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{AbelianGroup, GeneratingSet};
    use crate::construct::{cartesian_product, cycle_graph, group_induced_layers};

    fn grid_layers(k: usize, l: usize) -> LayeredView {
        let g = AbelianGroup::new(vec![l, k]).unwrap();
        let s: Vec<_> = [[1, 0], [-1, 0], [0, 1], [0, -1]].iter().map(|x| g.elem_mod(x).unwrap()).collect();
        let s = GeneratingSet::new(&g, s).unwrap();
        let sub = vec![g.elem_mod(&[0, 1]).unwrap(), g.elem_mod(&[0, -1]).unwrap()];
        group_induced_layers(&g, &s, &sub).unwrap()
    }

    #[test]
    fn figure_parameters() {
        let lv = grid_layers(6, 7);
        let (c, mu) = zigzag_cycle(&lv, &ZigzagSpec::new(vec![3, 2])).unwrap();
        assert_eq!(mu, 25);
        assert!(c.is_cycle_of(&lv.graph));
    }

    #[test]
    fn extreme_parameters() {
        let (k, l) = (5, 9);
        let lv = grid_layers(k, l);
        let (_, lo) = zigzag_cycle(&lv, &ZigzagSpec::new(vec![0; 3])).unwrap();
        assert_eq!(lo, 2 * k - 1 + (l - 3));
        let (_, hi) = zigzag_cycle(&lv, &ZigzagSpec::new(vec![k - 2; 3])).unwrap();
        assert_eq!(hi, 2 * k - 1 + (l - 3) * (k - 1));
    }

    #[test]
    fn zigzag_errors() {
        let lv = grid_layers(5, 5);
        assert!(matches!(zigzag_cycle(&lv, &ZigzagSpec::new(vec![4])), Err(Error::SpecOutOfRange(_))));
        assert!(matches!(zigzag_cycle(&lv, &ZigzagSpec::new(vec![])), Err(Error::SpecOutOfRange(_))));
        let even = grid_layers(5, 6);
        assert_eq!(zigzag_cycle(&even, &ZigzagSpec::new(vec![0])).unwrap_err(), Error::LayersNotOdd(6));
    }

    #[test]
    fn boustrophedon_counts() {
        for (k, l) in [(5, 4), (3, 3), (4, 7)] {
            let pv = cartesian_product(&cycle_graph(k).unwrap(), &cycle_graph(l).unwrap()).unwrap();
            let b = boustrophedon_cycles(&pv).unwrap();
            assert_eq!(b.eh_counts, (2 * (l - 1), 2 * (l - 1) + (k - 2) * (l - 2)));
        }
        let pv = cartesian_product(&cycle_graph(4).unwrap(), &crate::construct::path_graph(3).unwrap()).unwrap();
        assert_eq!(boustrophedon_cycles(&pv).unwrap_err(), Error::FactorNotHamiltonian);
    }
}
