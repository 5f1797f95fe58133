//! Family expressions naming constructible graphs.
//!
//! ```text
//! fam   = "(" fam ")"
//!       | "cycle" N | "complete" N | "bipartite" N N | "prism" N
//!       | "product" fam fam | "trunc" fam
//!       | "cayley" group "gens=" elems
//!       | "gadget" N N | "comp-cycle" N
//! group = cyc { "x" cyc }          cyc  = "Z" N [ "^" N ]
//! elems = elem { "," elem }        elem = int | "(" int { "," int } ")"
//! int   = [ "-" ] digits
//! ```
//!
//! Cayley generators are closed under inverses before validation, so
//! `cayley Z5 gens=1` and `cayley Z5 gens=1,4` name the same graph.

use std::fmt;

use serde::Serialize;

use crate::abelian::{AbelianGroup, GeneratingSet};
use crate::construct::{self, ProductView};
use crate::error::{Error, Result};
use crate::factor::CayleyHint;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "family")]
pub enum Family {
    Cycle { n: usize },
    Complete { n: usize },
    Bipartite { m: usize, m2: usize },
    Prism { k: usize },
    Product { left: Box<Family>, right: Box<Family> },
    Trunc { inner: Box<Family> },
    Cayley { moduli: Vec<usize>, gens: Vec<Vec<i64>> },
    Gadget { d: usize, n: usize },
    CompCycle { n: usize },
}

/// A built family with whatever structure its construction exposes.
#[derive(Debug, Clone)]
pub struct Built {
    pub graph: Graph,
    pub cayley: Option<CayleyHint>,
    pub product: Option<ProductView>,
}

impl Built {
    fn plain(graph: Graph) -> Self {
        Built { graph, cayley: None, product: None }
    }
}

impl Family {
    pub fn build(&self) -> Result<Built> {
        Ok(match self {
            Family::Cycle { n } => Built::plain(construct::cycle_graph(*n)?),
            Family::Complete { n } => Built::plain(construct::complete_graph(*n)?),
            Family::Bipartite { m, m2 } => Built::plain(construct::complete_bipartite(*m, *m2)?),
            Family::Prism { k } => {
                let pv = construct::prism(*k)?;
                Built { graph: pv.graph.clone(), cayley: None, product: Some(pv) }
            }
            Family::Product { left, right } => {
                let pv = construct::cartesian_product(&left.build()?.graph, &right.build()?.graph)?;
                Built { graph: pv.graph.clone(), cayley: None, product: Some(pv) }
            }
            Family::Trunc { inner } => Built::plain(construct::truncation(&inner.build()?.graph)?),
            Family::Cayley { moduli, gens } => {
                let group = AbelianGroup::new(moduli.clone())?;
                let elems = gens.iter().map(|x| group.elem_mod(x)).collect::<Result<Vec<_>>>()?;
                let gens = GeneratingSet::symmetric_closure(&group, elems)?;
                let graph = construct::cayley_graph(&group, &gens)?;
                Built { graph, cayley: Some(CayleyHint { group, gens }), product: None }
            }
            Family::Gadget { d, n } => Built::plain(construct::regular_gadget(*d, *n)?),
            Family::CompCycle { n } => Built::plain(construct::complement_of_cycle(*n)?),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cycle { n } => write!(f, "cycle {n}"),
            Family::Complete { n } => write!(f, "complete {n}"),
            Family::Bipartite { m, m2 } => write!(f, "bipartite {m} {m2}"),
            Family::Prism { k } => write!(f, "prism {k}"),
            Family::Product { left, right } => write!(f, "product ({left}) ({right})"),
            Family::Trunc { inner } => write!(f, "trunc ({inner})"),
            Family::Cayley { moduli, gens } => {
                let group: Vec<String> = moduli.iter().map(|m| format!("Z{m}")).collect();
                let gens: Vec<String> = gens
                    .iter()
                    .map(|x| match x.as_slice() {
                        [v] => v.to_string(),
                        _ => format!("({})", x.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")),
                    })
                    .collect();
                write!(f, "cayley {} gens={}", group.join("x"), gens.join(","))
            }
            Family::Gadget { d, n } => write!(f, "gadget {d} {n}"),
            Family::CompCycle { n } => write!(f, "comp-cycle {n}"),
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn word(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_lowercase() || c == b'-') {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a family name");
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).expect("ascii"))
    }

    fn digits(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
        text.parse().or_else(|_| {
            self.pos = start;
            self.err("number too large")
        })
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        self.digits()
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let neg = self.eat(b'-');
        let v = self.digits()? as i64;
        Ok(if neg { -v } else { v })
    }

    fn family(&mut self) -> Result<Family> {
        self.skip_ws();
        if self.eat(b'(') {
            let f = self.family()?;
            self.skip_ws();
            self.expect(b')')?;
            return Ok(f);
        }
        let start = self.pos;
        let name = self.word()?;
        Ok(match name {
            "cycle" => Family::Cycle { n: self.number()? },
            "complete" => Family::Complete { n: self.number()? },
            "bipartite" => Family::Bipartite { m: self.number()?, m2: self.number()? },
            "prism" => Family::Prism { k: self.number()? },
            "product" => Family::Product { left: Box::new(self.family()?), right: Box::new(self.family()?) },
            "trunc" => Family::Trunc { inner: Box::new(self.family()?) },
            "cayley" => {
                let moduli = self.group()?;
                self.skip_ws();
                let key = self.pos;
                if self.word().ok() != Some("gens") || !self.eat(b'=') {
                    self.pos = key;
                    return self.err("expected 'gens='");
                }
                let gens = self.elems(moduli.len())?;
                Family::Cayley { moduli, gens }
            }
            "gadget" => Family::Gadget { d: self.number()?, n: self.number()? },
            "comp-cycle" => Family::CompCycle { n: self.number()? },
            other => {
                self.pos = start;
                return self.err(format!("unknown family '{other}'"));
            }
        })
    }

    fn group(&mut self) -> Result<Vec<usize>> {
        self.skip_ws();
        let mut moduli = Vec::new();
        loop {
            self.expect(b'Z')?;
            let m = self.digits()?;
            let e = if self.eat(b'^') { self.digits()? } else { 1 };
            moduli.extend(std::iter::repeat_n(m, e));
            if !self.eat(b'x') {
                break;
            }
        }
        Ok(moduli)
    }

    fn elems(&mut self, rank: usize) -> Result<Vec<Vec<i64>>> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let start = self.pos;
            let x = if self.eat(b'(') {
                let mut x = vec![self.int()?];
                while self.eat(b',') {
                    x.push(self.int()?);
                }
                self.expect(b')')?;
                x
            } else {
                vec![self.int()?]
            };
            if x.len() != rank {
                self.pos = start;
                return self.err(format!("element has {} coordinates, group has rank {rank}", x.len()));
            }
            out.push(x);
            if !self.eat(b',') {
                break;
            }
        }
        Ok(out)
    }
}

/// Parses a whole family expression.
pub fn parse_family(text: &str) -> Result<Family> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let f = p.family()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return p.err("unexpected trailing input");
    }
    Ok(f)
}
