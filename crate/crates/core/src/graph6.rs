//! graph6 codec.
//!
//! Bit `k` of the body is the upper-triangle entry `{j, i}`, `j < i`, taken
//! column by column (`k = i*(i-1)/2 + j`), packed big-endian into 6-bit
//! groups, each offset by 63. Orders up to 62 use a single header byte;
//! orders up to 258047 use the `~` + 3-byte form.

use thiserror::Error;

use crate::graph::Graph;

const BIAS: u8 = 63;
const SMALL_ORDER_MAX: usize = 62;
const MEDIUM_ORDER_MAX: usize = 258_047;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("malformed header")]
    BadHeader,
    #[error("order {0} is not supported")]
    UnsupportedOrder(usize),
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range")]
    BadByte { byte: u8, offset: usize },
    #[error("body too short: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing garbage after {expected} body bytes")]
    TrailingGarbage { expected: usize },
    #[error("padding bit set beyond the adjacency triangle")]
    PaddingBitSet,
}

fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Parses one graph6 string. A leading `>>graph6<<` marker and surrounding
/// ASCII whitespace are ignored.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (offset, &byte) in bytes.iter().enumerate() {
        if !(BIAS..=126).contains(&byte) {
            return Err(Graph6Error::BadByte { byte, offset });
        }
    }
    let (n, body) = if bytes[0] != b'~' {
        ((bytes[0] - BIAS) as usize, &bytes[1..])
    } else {
        if bytes.get(1) == Some(&b'~') {
            // 6-byte orders exceed anything this crate can hold usefully
            return Err(Graph6Error::BadHeader);
        }
        if bytes.len() < 4 {
            return Err(Graph6Error::BadHeader);
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize);
        if n <= SMALL_ORDER_MAX {
            return Err(Graph6Error::BadHeader);
        }
        (n, &bytes[4..])
    };
    if n == 0 {
        return Err(Graph6Error::UnsupportedOrder(0));
    }
    let expected = body_len(n);
    if body.len() < expected {
        return Err(Graph6Error::Truncated {
            expected,
            found: body.len(),
        });
    }
    if body.len() > expected {
        return Err(Graph6Error::TrailingGarbage { expected });
    }

    let mut adjacency = vec![Vec::new(); n];
    let total_bits = n * (n - 1) / 2;
    let bit = |k: usize| (body[k / 6] - BIAS) >> (5 - k % 6) & 1 == 1;
    let mut k = 0;
    for i in 1..n {
        for j in 0..i {
            if bit(k) {
                adjacency[j].push(i);
                adjacency[i].push(j);
            }
            k += 1;
        }
    }
    if (total_bits..expected * 6).any(bit) {
        return Err(Graph6Error::PaddingBitSet);
    }
    // columns are visited in increasing i, so lists for j < i grow sorted;
    // lists for i receive j ascending too
    for nbrs in &mut adjacency {
        nbrs.sort_unstable();
    }
    Ok(Graph::from_sorted_adjacency(adjacency))
}

/// Serialises a graph to graph6 (no header marker, no newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    assert!(
        n <= MEDIUM_ORDER_MAX,
        "graph6 writer supports orders up to {MEDIUM_ORDER_MAX}"
    );
    let mut out = Vec::with_capacity(4 + body_len(n));
    if n <= SMALL_ORDER_MAX {
        out.push(n as u8 + BIAS);
    } else {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
    let mut chunk = 0u8;
    let mut filled = 0;
    for i in 1..n {
        let nbrs = g.neighbors(i);
        for j in 0..i {
            chunk = chunk << 1 | u8::from(nbrs.binary_search(&j).is_ok());
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
    String::from_utf8(out).expect("graph6 is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_strings() {
        assert_eq!(to_graph6(&Graph::path(2)), "A_");
        assert_eq!(to_graph6(&Graph::path(1)), "@");
        assert_eq!(to_graph6(&Graph::complete(4)), "C~");
        // petgraph's fixture: edges a-c, a-e, b-d, d-e on five vertices
        let g = Graph::from_edge_list(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(parse_graph6("DQc").unwrap(), g);
    }

    #[test]
    fn medium_order_header() {
        let g = Graph::path(70);
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn tolerates_marker_and_whitespace() {
        assert_eq!(parse_graph6(">>graph6<<A_\n").unwrap(), Graph::path(2));
    }

    #[test]
    fn rejects_malformed_input() {
        assert_eq!(parse_graph6(""), Err(Graph6Error::Empty));
        assert_eq!(parse_graph6("A"), Err(Graph6Error::Truncated { expected: 1, found: 0 }));
        assert_eq!(parse_graph6("A__"), Err(Graph6Error::TrailingGarbage { expected: 1 }));
        // K2 has one triangle bit; 'o' = 63 + 0b110000 sets a padding bit
        assert_eq!(parse_graph6("Ao"), Err(Graph6Error::PaddingBitSet));
        assert!(matches!(parse_graph6("A\u{7f}"), Err(Graph6Error::BadByte { .. })));
        assert_eq!(parse_graph6("?"), Err(Graph6Error::UnsupportedOrder(0)));
        assert_eq!(parse_graph6("~??"), Err(Graph6Error::BadHeader));
    }
}
