//! graph6 encoding, as used by nauty/geng and most graph tooling.
//!
//! Layout: `N(n)` followed by the upper triangle of the adjacency matrix in
//! column order (x(0,1), x(0,2), x(1,2), x(0,3), ...), packed six bits per byte
//! with 63 added to every byte.

use crate::error::{Error, Result};
use crate::graph::Graph;

const BIAS: u8 = 63;
const HEADER: &[u8] = b">>graph6<<";

fn encode_n(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    } else {
        out.extend_from_slice(&[126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
}

pub fn encode(g: &Graph) -> Vec<u8> {
    let n = g.n();
    let mut out = Vec::with_capacity(2 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    encode_n(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    out
}

pub fn encode_string(g: &Graph) -> String {
    // every byte is in 63..=126
    String::from_utf8(encode(g)).expect("graph6 is ASCII")
}

fn sextet(b: u8) -> Result<usize> {
    if (BIAS..=126).contains(&b) {
        Ok((b - BIAS) as usize)
    } else {
        Err(Error::MalformedHeader)
    }
}

fn decode_n(bytes: &[u8]) -> Result<(usize, usize)> {
    match bytes {
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::MalformedHeader);
            }
            let mut n = 0;
            for &b in &rest[..6] {
                n = (n << 6) | sextet(b)?;
            }
            Ok((n, 8))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::MalformedHeader);
            }
            let mut n = 0;
            for &b in &rest[..3] {
                n = (n << 6) | sextet(b)?;
            }
            Ok((n, 4))
        }
        [b, ..] => Ok((sextet(*b)?, 1)),
        [] => Err(Error::MalformedHeader),
    }
}

/// Decodes one graph6 record. An optional `>>graph6<<` prefix and a single
/// trailing newline are accepted.
pub fn decode(bytes: &[u8]) -> Result<Graph> {
    let mut bytes = bytes.strip_prefix(HEADER).unwrap_or(bytes);
    if let Some(b) = bytes.strip_suffix(b"\n") {
        bytes = b.strip_suffix(b"\r").unwrap_or(b);
    }
    let (n, used) = decode_n(bytes)?;
    let body = &bytes[used..];
    let need = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if body.len() < need {
        return Err(Error::MalformedHeader);
    }
    if body.len() > need {
        return Err(Error::TrailingGarbage);
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = sextet(body[k / 6])?;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    for &b in body {
        sextet(b)?;
    }
    Ok(g)
}

pub fn decode_str(s: &str) -> Result<Graph> {
    decode(s.as_bytes())
}
