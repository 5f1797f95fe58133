//! Finite abelian groups as products of cyclic groups, their elements, and
//! inverse-closed generating sets.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `Z_{m_1} x ... x Z_{m_r}`. The moduli need not form a divisibility chain;
/// [`AbelianGroup::invariant_factors`] gives the normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    moduli: Vec<usize>,
}

/// Residue tuple, one entry per cyclic factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElem {
    pub residues: Vec<usize>,
}

/// Largest group order accepted; Cayley graphs are capped far below this.
pub const MAX_GROUP_ORDER: usize = 1 << 20;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn prime_powers(mut m: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

impl AbelianGroup {
    pub fn new(moduli: Vec<usize>) -> Result<Self> {
        if let Some(&m) = moduli.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidGroup(format!("cyclic factor Z{m}")));
        }
        let mut order: usize = 1;
        for &m in &moduli {
            order = order
                .checked_mul(m)
                .filter(|&o| o <= MAX_GROUP_ORDER)
                .ok_or_else(|| Error::InvalidGroup(format!("order exceeds {MAX_GROUP_ORDER}")))?;
        }
        Ok(AbelianGroup { moduli })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        AbelianGroup::new(vec![n])
    }

    pub fn trivial() -> Self {
        AbelianGroup { moduli: Vec::new() }
    }

    /// Requires `d_1 | d_2 | ... | d_r`.
    pub fn from_invariant_factors(d: Vec<usize>) -> Result<Self> {
        if d.windows(2).any(|w| w[0] == 0 || w[1] % w[0] != 0) {
            return Err(Error::InvalidGroup(format!("{d:?} is not a divisibility chain")));
        }
        AbelianGroup::new(d)
    }

    pub fn moduli(&self) -> &[usize] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().product()
    }

    /// Invariant factors `d_1 | ... | d_r`, each at least 2.
    pub fn invariant_factors(&self) -> Vec<usize> {
        let mut by_prime: std::collections::BTreeMap<usize, Vec<u32>> = Default::default();
        for &m in &self.moduli {
            for (p, e) in prime_powers(m) {
                by_prime.entry(p).or_default().push(e);
            }
        }
        let r = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut d = vec![1usize; r];
        for (p, mut es) in by_prime {
            es.sort_unstable_by(|a, b| b.cmp(a));
            for (i, e) in es.into_iter().enumerate() {
                // the largest exponent goes into the last factor
                d[r - 1 - i] *= p.pow(e);
            }
        }
        d
    }

    pub fn is_isomorphic_to(&self, other: &AbelianGroup) -> bool {
        self.invariant_factors() == other.invariant_factors()
    }

    pub fn zero(&self) -> GroupElem {
        GroupElem { residues: vec![0; self.rank()] }
    }

    pub fn elem(&self, residues: Vec<usize>) -> Result<GroupElem> {
        if residues.len() != self.rank() || residues.iter().zip(&self.moduli).any(|(&x, &m)| x >= m) {
            return Err(Error::InvalidGroup(format!("{residues:?} is not an element of {self}")));
        }
        Ok(GroupElem { residues })
    }

    /// Reduces arbitrary integers into the group.
    pub fn elem_mod(&self, values: &[i64]) -> Result<GroupElem> {
        if values.len() != self.rank() {
            return Err(Error::InvalidGroup(format!("{values:?} has the wrong rank for {self}")));
        }
        let residues = values.iter().zip(&self.moduli).map(|(&x, &m)| x.rem_euclid(m as i64) as usize).collect();
        Ok(GroupElem { residues })
    }

    /// Position in lexicographic residue order.
    pub fn index(&self, x: &GroupElem) -> usize {
        x.residues.iter().zip(&self.moduli).fold(0, |acc, (&r, &m)| acc * m + r)
    }

    pub fn elem_at(&self, mut index: usize) -> GroupElem {
        let mut residues = vec![0; self.rank()];
        for i in (0..self.rank()).rev() {
            residues[i] = index % self.moduli[i];
            index /= self.moduli[i];
        }
        GroupElem { residues }
    }

    /// All elements in lexicographic residue order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElem> + '_ {
        (0..self.order()).map(|i| self.elem_at(i))
    }

    pub fn add(&self, x: &GroupElem, y: &GroupElem) -> GroupElem {
        let residues = x.residues.iter().zip(&y.residues).zip(&self.moduli).map(|((&a, &b), &m)| (a + b) % m).collect();
        GroupElem { residues }
    }

    pub fn neg(&self, x: &GroupElem) -> GroupElem {
        let residues = x.residues.iter().zip(&self.moduli).map(|(&a, &m)| (m - a) % m).collect();
        GroupElem { residues }
    }

    pub fn sub(&self, x: &GroupElem, y: &GroupElem) -> GroupElem {
        self.add(x, &self.neg(y))
    }

    pub fn elem_order(&self, x: &GroupElem) -> usize {
        x.residues.iter().zip(&self.moduli).fold(1, |acc, (&a, &m)| lcm(acc, m / gcd(a, m)))
    }

    /// Membership mask of `<gens>`, indexed by [`AbelianGroup::index`].
    pub fn subgroup_mask(&self, gens: &[GroupElem]) -> Vec<bool> {
        let mut seen = vec![false; self.order()];
        let zero = self.zero();
        seen[self.index(&zero)] = true;
        let mut stack = vec![zero];
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = self.add(&x, g);
                let i = self.index(&y);
                if !seen[i] {
                    seen[i] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    pub fn subgroup_elements(&self, gens: &[GroupElem]) -> Vec<GroupElem> {
        self.subgroup_mask(gens)
            .into_iter()
            .enumerate()
            .filter(|(_, b)| *b)
            .map(|(i, _)| self.elem_at(i))
            .collect()
    }

    pub fn generates(&self, gens: &[GroupElem]) -> bool {
        self.subgroup_mask(gens).into_iter().all(|b| b)
    }

    pub fn format_elem(&self, x: &GroupElem) -> String {
        if self.rank() == 1 {
            x.residues[0].to_string()
        } else {
            let parts: Vec<String> = x.residues.iter().map(|r| r.to_string()).collect();
            format!("({})", parts.join(","))
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moduli.is_empty() {
            return write!(f, "Z1");
        }
        let parts: Vec<String> = self.moduli.iter().map(|m| format!("Z{m}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Inverse-closed generating set without the identity, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratingSet {
    elems: Vec<GroupElem>,
}

impl GeneratingSet {
    pub fn new(group: &AbelianGroup, elems: Vec<GroupElem>) -> Result<Self> {
        let mut elems = elems;
        for x in &elems {
            group.elem(x.residues.clone())?;
        }
        elems.sort();
        elems.dedup();
        let zero = group.zero();
        if elems.contains(&zero) {
            return Err(Error::ContainsIdentity);
        }
        if elems.iter().any(|x| elems.binary_search(&group.neg(x)).is_err()) {
            return Err(Error::NotInverseClosed);
        }
        if !group.generates(&elems) {
            return Err(Error::NotGenerating);
        }
        Ok(GeneratingSet { elems })
    }

    /// Adds the missing inverses before validating.
    pub fn symmetric_closure(group: &AbelianGroup, elems: Vec<GroupElem>) -> Result<Self> {
        let mut all = elems.clone();
        all.extend(elems.iter().map(|x| group.neg(x)));
        GeneratingSet::new(group, all)
    }

    pub(crate) fn new_unchecked(mut elems: Vec<GroupElem>) -> Self {
        elems.sort();
        elems.dedup();
        GeneratingSet { elems }
    }

    pub fn elems(&self) -> &[GroupElem] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn format(&self, group: &AbelianGroup) -> String {
        let parts: Vec<String> = self.elems.iter().map(|x| group.format_elem(x)).collect();
        parts.join(",")
    }
}
