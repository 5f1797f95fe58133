//! Vertex permutations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Edge;

/// A bijection on `0..n`; `img[i]` is the image of `i`.
///
/// Serializes as its JSON image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct Perm {
    img: Vec<usize>,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.img)
    }
}

impl TryFrom<Vec<usize>> for Perm {
    type Error = Error;

    fn try_from(img: Vec<usize>) -> Result<Self> {
        Perm::from_images(img)
    }
}

impl From<Perm> for Vec<usize> {
    fn from(p: Perm) -> Self {
        p.img
    }
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { img: (0..n).collect() }
    }

    pub fn from_images(img: Vec<usize>) -> Result<Self> {
        let n = img.len();
        let mut seen = vec![false; n];
        for &x in &img {
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation(format!("{img:?}")));
            }
            seen[x] = true;
        }
        Ok(Perm { img })
    }

    /// Builds from disjoint cycles on `0..n`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut img: Vec<usize> = (0..n).collect();
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                if x >= n {
                    return Err(Error::NotAPermutation(format!("{cycles:?}")));
                }
                img[x] = c[(i + 1) % c.len()];
            }
        }
        Perm::from_images(img)
    }

    pub(crate) fn from_images_unchecked(img: Vec<usize>) -> Self {
        debug_assert!(Perm::from_images(img.clone()).is_ok());
        Perm { img }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.img.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.img[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.img
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Perm) -> Perm {
        Perm { img: other.img.iter().map(|&x| self.img[x]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.img.len()];
        for (i, &x) in self.img.iter().enumerate() {
            inv[x] = i;
        }
        Perm { img: inv }
    }

    pub fn pow(&self, mut k: u64) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            k >>= 1;
        }
        acc
    }

    #[inline]
    pub fn apply_edge(&self, e: Edge) -> Edge {
        Edge::new(self.img[e.0], self.img[e.1])
    }

    /// Image of an edge set, sorted.
    pub fn apply_to_edge_set(&self, edges: &[Edge]) -> Result<Vec<Edge>> {
        let mut out = Vec::with_capacity(edges.len());
        for &e in edges {
            if e.0 >= self.degree() || e.1 >= self.degree() {
                return Err(Error::DegreeMismatch(self.degree(), e.0.max(e.1) + 1));
            }
            out.push(self.apply_edge(e));
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Points moved by the permutation.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.img.iter().enumerate().filter(|(i, x)| i != *x).map(|(i, _)| i)
    }
}
