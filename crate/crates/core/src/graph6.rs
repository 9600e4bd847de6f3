//! graph6 encoding and decoding.
//!
//! The format packs the upper triangle of the adjacency matrix column by
//! column, six bits per printable character, each character offset by 63.
//! Vertex counts up to 62 fit in a single leading byte; 63 and 64 use the
//! `~` long form with an 18-bit count.

use crate::graph::{Graph, MAX_VERTICES};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("byte {offset}: character {byte:#04x} outside graph6 range 63..=126")]
    CharOutOfRange { offset: usize, byte: u8 },
    #[error("byte {offset}: truncated code, expected {expected} data characters")]
    Truncated { offset: usize, expected: usize },
    #[error("byte {offset}: trailing characters beyond the encoded graph")]
    TrailingData { offset: usize },
    #[error("byte {offset}: nonzero padding bits")]
    TrailingBits { offset: usize },
    #[error("empty input")]
    Empty,
    #[error("vertex count {n} exceeds capacity {MAX_VERTICES}")]
    TooLarge { n: usize },
}

fn sextet(bytes: &[u8], offset: usize) -> Result<u64, Graph6Error> {
    let b = *bytes.get(offset).ok_or(Graph6Error::Truncated {
        offset,
        expected: 1,
    })?;
    if !(63..=126).contains(&b) {
        return Err(Graph6Error::CharOutOfRange { offset, byte: b });
    }
    Ok((b - 63) as u64)
}

/// Decodes a graph6 code. Errors name the offending byte offset.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let (n, mut pos) = if bytes[0] == b'~' {
        // long form: three sextets after '~' (we never need the 8-byte form)
        if bytes.len() >= 2 && bytes[1] == b'~' {
            return Err(Graph6Error::TooLarge { n: usize::MAX });
        }
        let hi = sextet(bytes, 1)?;
        let mid = sextet(bytes, 2)?;
        let lo = sextet(bytes, 3)?;
        (((hi << 12) | (mid << 6) | lo) as usize, 4)
    } else {
        (sextet(bytes, 0)? as usize, 1)
    };
    if n > MAX_VERTICES {
        return Err(Graph6Error::TooLarge { n });
    }

    let nbits = n * n.saturating_sub(1) / 2;
    let nchars = nbits.div_ceil(6);
    if bytes.len() < pos + nchars {
        return Err(Graph6Error::Truncated {
            offset: bytes.len(),
            expected: pos + nchars - bytes.len(),
        });
    }
    if bytes.len() > pos + nchars {
        return Err(Graph6Error::TrailingData {
            offset: pos + nchars,
        });
    }

    let mut g = Graph::new(n);
    let mut bit = 0usize;
    for _ in 0..nchars {
        let s = sextet(bytes, pos)?;
        for shift in (0..6).rev() {
            if (s >> shift) & 1 == 1 {
                if bit >= nbits {
                    return Err(Graph6Error::TrailingBits { offset: pos });
                }
                let (u, v) = bit_to_pair(bit);
                g.add_edge(u, v);
            }
            bit += 1;
            if bit >= nbits && shift > 0 {
                // remaining bits of this character are padding; must be zero
                if s & ((1 << shift) - 1) != 0 {
                    return Err(Graph6Error::TrailingBits { offset: pos });
                }
                break;
            }
        }
        pos += 1;
    }
    Ok(g)
}

// Upper-triangle bit index -> (row, column), column-major: columns v = 1..n,
// rows u = 0..v.
fn bit_to_pair(bit: usize) -> (usize, usize) {
    let mut v = 1usize;
    let mut acc = 0usize;
    while acc + v <= bit {
        acc += v;
        v += 1;
    }
    (bit - acc, v)
}

/// Encodes a graph as graph6.
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(b'~');
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut cur = 0u8;
    let mut filled = 0u8;
    for v in 1..n {
        for u in 0..v {
            cur <<= 1;
            if g.has_edge(u, v) {
                cur |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(cur + 63);
                cur = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((cur << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}
