//! graph6 encoding: a size header followed by the upper triangle of the
//! adjacency matrix in column order, packed six bits per printable byte.

use crate::error::Graph6Error;
use crate::graph::{Graph, MAX_VERTICES};

const BIAS: u8 = 63;
const OPTIONAL_HEADER: &str = ">>graph6<<";

fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Encodes `g` as a graph6 line without the trailing newline.
pub fn emit(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + body_len(n));
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else {
        out.push(126);
        out.extend([(n >> 12) as u8 & 63, (n >> 6) as u8 & 63, n as u8 & 63].map(|b| b + BIAS));
    }
    let mut chunk = 0u8;
    let mut filled = 0;
    for j in 1..n {
        let row = g.neighbors(j);
        for i in 0..j {
            chunk = chunk << 1 | (row >> i & 1) as u8;
            filled += 1;
            if filled == 6 {
                out.push(chunk + BIAS);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((chunk << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

fn decode_byte(offset: usize, byte: u8) -> Result<u8, Graph6Error> {
    if (63..=126).contains(&byte) {
        Ok(byte - BIAS)
    } else {
        Err(Graph6Error::InvalidByte { offset, byte })
    }
}

/// Parses one graph6 line. A single trailing newline (or CRLF) and the
/// optional `>>graph6<<` prefix are accepted.
pub fn parse(line: &str) -> Result<Graph, Graph6Error> {
    let line = line.strip_suffix('\n').unwrap_or(line);
    let line = line.strip_suffix('\r').unwrap_or(line);
    let line = line.strip_prefix(OPTIONAL_HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let (n, header) = if bytes[0] != 126 {
        (decode_byte(0, bytes[0])? as usize, 1)
    } else if bytes.get(1) == Some(&126) {
        // Eight-byte form: only used for n >= 258048.
        if bytes.len() < 8 {
            return Err(Graph6Error::MalformedHeader);
        }
        let mut n = 0usize;
        for (i, &b) in bytes[2..8].iter().enumerate() {
            n = n << 6 | decode_byte(2 + i, b)? as usize;
        }
        return Err(if n <= 258047 { Graph6Error::MalformedHeader } else { Graph6Error::TooManyVertices(n) });
    } else {
        if bytes.len() < 4 {
            return Err(Graph6Error::MalformedHeader);
        }
        let mut n = 0usize;
        for (i, &b) in bytes[1..4].iter().enumerate() {
            n = n << 6 | decode_byte(1 + i, b)? as usize;
        }
        if n <= 62 {
            return Err(Graph6Error::MalformedHeader);
        }
        (n, 4)
    };
    if n == 0 {
        return Err(Graph6Error::NoVertices);
    }
    if n > MAX_VERTICES {
        return Err(Graph6Error::TooManyVertices(n));
    }
    let body = &bytes[header..];
    let expected = body_len(n);
    if body.len() < expected {
        return Err(Graph6Error::Truncated { expected, found: body.len() });
    }
    if body.len() > expected {
        return Err(Graph6Error::TrailingData { extra: body.len() - expected });
    }
    let mut g = Graph::empty(n).expect("n checked against cap");
    let mut bit = 0usize;
    let mut j = 1usize;
    let mut i = 0usize;
    let total = n * (n - 1) / 2;
    for (k, &b) in body.iter().enumerate() {
        let v = decode_byte(header + k, b)?;
        for shift in (0..6).rev() {
            let set = v >> shift & 1 == 1;
            if bit >= total {
                if set {
                    return Err(Graph6Error::NonzeroPadding);
                }
                continue;
            }
            if set {
                g.add_edge(i, j);
            }
            bit += 1;
            i += 1;
            if i == j {
                j += 1;
                i = 0;
            }
        }
    }
    Ok(g)
}
