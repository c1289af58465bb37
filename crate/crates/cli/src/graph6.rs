// SPDX-License-Identifier: Apache-2.0

//! graph6 encoding of undirected simple graphs.
//!
//! The order is written as `N(n)`: one byte `n + 63` for `n < 63`, `126`
//! followed by three 6-bit groups for `n < 258048`, and `126 126` followed
//! by six groups above that. The upper triangle of the adjacency matrix is
//! then packed column by column, six bits per byte, each byte offset by 63.

use amalgadim::Graph;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {0:#x} outside the graph6 range")]
    BadByte(u8),
    #[error("expected {expected} data bytes, found {found}")]
    Length { expected: usize, found: usize },
    #[error("order {0} too large for graph6")]
    TooLarge(usize),
    #[error(transparent)]
    Graph(#[from] amalgadim::GraphError),
}

const HEADER: &str = ">>graph6<<";

fn push_groups(out: &mut Vec<u8>, value: usize, groups: usize) {
    for i in (0..groups).rev() {
        out.push(((value >> (6 * i)) & 0x3f) as u8 + 63);
    }
}

pub fn encode(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.order();
    let mut out = Vec::new();
    match n {
        0..=62 => out.push(n as u8 + 63),
        63..=258_047 => {
            out.push(126);
            push_groups(&mut out, n, 3);
        }
        _ if n < 1 << 36 => {
            out.extend([126, 126]);
            push_groups(&mut out, n, 6);
        }
        _ => return Err(Graph6Error::TooLarge(n)),
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

fn sextet(b: u8) -> Result<usize, Graph6Error> {
    if (63..=126).contains(&b) {
        Ok(usize::from(b - 63))
    } else {
        Err(Graph6Error::BadByte(b))
    }
}

pub fn decode(s: &str) -> Result<Graph, Graph6Error> {
    let s = s.trim();
    let bytes = s.strip_prefix(HEADER).unwrap_or(s).as_bytes();
    let (&first, _) = bytes.split_first().ok_or(Graph6Error::Empty)?;
    let read = |from: usize, groups: usize| -> Result<usize, Graph6Error> {
        let chunk = bytes.get(from..from + groups).ok_or(Graph6Error::Length {
            expected: from + groups,
            found: bytes.len(),
        })?;
        chunk.iter().try_fold(0, |acc, &b| Ok((acc << 6) | sextet(b)?))
    };
    let (n, start) = if first != 126 {
        (sextet(first)?, 1)
    } else if bytes.get(1) == Some(&126) {
        (read(2, 6)?, 8)
    } else {
        (read(1, 3)?, 4)
    };
    let data = &bytes[start..];
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if data.len() != expected {
        return Err(Graph6Error::Length {
            expected,
            found: data.len(),
        });
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = sextet(data[k / 6])?;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edge_list(n, &edges)?)
}
