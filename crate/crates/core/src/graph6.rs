//! The graph6 interchange format, bit-exact per the de-facto standard.
//!
//! One printable line per graph: a vertex count (byte `n + 63` for
//! `n <= 62`, or `126` followed by three 6-bit digits for larger `n`),
//! then the upper triangle of the adjacency matrix in column-major order,
//! packed big-endian six bits per byte, each offset by 63. Only the
//! plain format is supported — no `>>graph6<<` header, no sparse6 — and
//! `n` is capped at 64.

use crate::graph::{Graph, MAX_VERTICES};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Graph6Error {
    #[error("empty graph6 line")]
    Empty,
    #[error("graph6 byte {0:#x} outside the printable range 63..=126")]
    CharOutOfRange(u8),
    #[error("graph on {0} vertices exceeds the {MAX_VERTICES}-vertex cap")]
    TooManyVertices(usize),
    #[error("graph6 line has {got} payload bytes, expected {want}")]
    BadLength { want: usize, got: usize },
    #[error("sparse6 and header-prefixed input are not supported")]
    UnsupportedFormat,
}

fn payload_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Parses one graph6 line (without trailing newline).
pub fn parse_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    if bytes[0] == b':' || bytes[0] == b'>' {
        return Err(Graph6Error::UnsupportedFormat);
    }
    for &b in bytes {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::CharOutOfRange(b));
        }
    }

    let (n, body) = if bytes[0] == 126 {
        // Extended form: 126 then three 6-bit digits, high bits first.
        if bytes.len() < 4 {
            return Err(Graph6Error::BadLength { want: 4, got: bytes.len() });
        }
        if bytes[1] == 126 {
            // The 8-byte form encodes n >= 258048, far beyond the cap.
            return Err(Graph6Error::TooManyVertices(usize::MAX));
        }
        let n = ((bytes[1] as usize - 63) << 12)
            | ((bytes[2] as usize - 63) << 6)
            | (bytes[3] as usize - 63);
        (n, &bytes[4..])
    } else {
        (bytes[0] as usize - 63, &bytes[1..])
    };

    if n > MAX_VERTICES {
        return Err(Graph6Error::TooManyVertices(n));
    }
    let want = payload_len(n);
    if body.len() != want {
        return Err(Graph6Error::BadLength { want, got: body.len() });
    }

    let mut g = Graph::empty(n);
    let mut bit = 0usize;
    for col in 1..n {
        for row in 0..col {
            let byte = body[bit / 6] - 63;
            if (byte >> (5 - bit % 6)) & 1 == 1 {
                g.add_edge_mut(row, col);
            }
            bit += 1;
        }
    }
    Ok(g)
}

/// Encodes a graph as one graph6 line (no trailing newline).
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut acc = 0u8;
    let mut used = 0u8;
    for col in 1..n {
        for row in 0..col {
            acc = (acc << 1) | u8::from(g.has_edge(row, col));
            used += 1;
            if used == 6 {
                out.push(acc + 63);
                acc = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        out.push((acc << (6 - used)) + 63);
    }
    String::from_utf8(out).unwrap()
}
