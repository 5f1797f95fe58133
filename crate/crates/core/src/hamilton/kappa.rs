use std::ops::ControlFlow;

use serde::Serialize;

use super::cycle::{for_each_ham_cycle, HamCycle};
use crate::error::{Error, Result};
use crate::graph::Graph;

fn rotation_is_automorphism(g: &Graph, seq: &[usize], step: usize) -> bool {
    let n = seq.len();
    let mut img = vec![0usize; n];
    for i in 0..n {
        img[seq[i]] = seq[(i + step) % n];
    }
    g.is_automorphism(&img)
}

fn kappa_of_seq(g: &Graph, seq: &[usize]) -> usize {
    let n = seq.len();
    let mut divisors: Vec<usize> = (1..=n).filter(|k| n.is_multiple_of(*k)).collect();
    divisors.reverse();
    divisors.into_iter().find(|&k| k == 1 || rotation_is_automorphism(g, seq, n / k)).unwrap_or(1)
}

/// Hamilton compression of a cycle: the largest `k | n` such that rotating the
/// cycle by `n/k` positions is an automorphism of `g`.
pub fn kappa_of_cycle(g: &Graph, c: &HamCycle) -> Result<usize> {
    if !c.is_cycle_of(g) {
        return Err(Error::NotACycleOfG);
    }
    Ok(kappa_of_seq(g, c.seq()))
}

pub(crate) fn kappa_unchecked(g: &Graph, c: &HamCycle) -> usize {
    kappa_of_seq(g, c.seq())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Kappa {
    pub value: usize,
    /// False when the enumeration cap was hit before a cycle with `κ = n`
    /// turned up; `value` is then a lower bound.
    pub exact: bool,
    pub witness: HamCycle,
}

/// Maximum of [`kappa_of_cycle`] over the enumerated cycles.
pub fn kappa_of_graph(g: &Graph, cap: usize) -> Result<Kappa> {
    let n = g.n();
    let mut best: Option<(usize, HamCycle)> = None;
    let mut seen = 0usize;
    let mut exact = true;
    let _ = for_each_ham_cycle(g, |seq| {
        if seen == cap {
            exact = false;
            return ControlFlow::Break(());
        }
        seen += 1;
        let k = kappa_of_seq(g, seq);
        if best.as_ref().is_none_or(|(b, _)| k > *b) {
            best = Some((k, HamCycle::from_seq_unchecked(seq)));
        }
        if k == n {
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    let (value, witness) = best.ok_or(Error::NotHamiltonian)?;
    Ok(Kappa { value, exact: exact || value == n, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{complete_graph, cycle_graph, prism};

    #[test]
    fn cycles_and_complete_graphs() {
        let c9 = cycle_graph(9).unwrap();
        assert_eq!(kappa_of_graph(&c9, 100).unwrap().value, 9);
        let k4 = complete_graph(4).unwrap();
        for c in super::super::enumerate_ham_cycles(&k4, 10).cycles {
            assert_eq!(kappa_of_cycle(&k4, &c).unwrap(), 4);
        }
        assert_eq!(kappa_of_graph(&k4, 10).unwrap().value, 4);
    }

    #[test]
    fn prism_seven_has_kappa_two() {
        let p = prism(7).unwrap().graph;
        let k = kappa_of_graph(&p, 1000).unwrap();
        assert_eq!((k.value, k.exact), (2, true));
    }

    #[test]
    fn errors() {
        let k4 = complete_graph(4).unwrap();
        let c = HamCycle::from_seq_unchecked(&[0, 1, 2, 3, 4]);
        assert_eq!(kappa_of_cycle(&k4, &c), Err(Error::NotACycleOfG));
        let p = crate::construct::path_graph(4).unwrap();
        assert_eq!(kappa_of_graph(&p, 10), Err(Error::NotHamiltonian));
    }
}
