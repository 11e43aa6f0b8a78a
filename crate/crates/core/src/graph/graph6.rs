//! The graph6 encoding of undirected graphs.
//!
//! Layout: an order header `N(n)` followed by the upper triangle of the
//! adjacency matrix, column by column (`(0,1), (0,2), (1,2), (0,3), ...`),
//! packed big-endian into 6-bit groups, each offset by 63.

use super::Graph;
use crate::error::{Error, Result};

const BIAS: u8 = 63;

fn err(msg: impl Into<String>) -> Error {
    Error::Graph6(msg.into())
}

fn encode_order(n: usize, out: &mut String) {
    if n <= 62 {
        out.push((n as u8 + BIAS) as char);
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + BIAS) as char);
        }
    } else {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + BIAS) as char);
        }
    }
}

fn decode_order(bytes: &[u8]) -> Result<(usize, &[u8])> {
    let six = |b: &[u8]| -> Result<usize> {
        b.iter().try_fold(0usize, |acc, &c| {
            if !(BIAS..=126).contains(&c) {
                return Err(err(format!("invalid byte 0x{c:02x} in header")));
            }
            Ok(acc << 6 | (c - BIAS) as usize)
        })
    };
    match bytes {
        [] => Err(err("empty input")),
        [126, 126, rest @ ..] if rest.len() >= 6 => Ok((six(&rest[..6])?, &rest[6..])),
        [126, 126, ..] => Err(err("truncated 8-byte header")),
        [126, rest @ ..] if rest.len() >= 3 => Ok((six(&rest[..3])?, &rest[3..])),
        [126, ..] => Err(err("truncated 4-byte header")),
        [c, rest @ ..] if (BIAS..126).contains(c) => Ok(((c - BIAS) as usize, rest)),
        [c, ..] => Err(err(format!("invalid header byte 0x{c:02x}"))),
    }
}

/// Decodes a single graph6 line (an optional `>>graph6<<` prefix and
/// surrounding whitespace are ignored). The result must be connected.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.trim();
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let (n, body) = decode_order(line.as_bytes())?;
    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    if body.len() != need {
        return Err(err(format!(
            "length mismatch: order {n} needs {need} data bytes, found {}",
            body.len()
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let c = body[k / 6];
            if !(BIAS..=126).contains(&c) {
                return Err(err(format!("invalid data byte 0x{c:02x}")));
            }
            if (c - BIAS) >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j, None));
            }
            k += 1;
        }
    }
    // padding bits must be zero
    if let Some(&last) = body.last() {
        let used = pairs - (need - 1) * 6;
        if (last - BIAS) & ((1u8 << (6 - used)) - 1) != 0 {
            return Err(err("nonzero padding bits"));
        }
    }
    Graph::build(n, edges, None)
}

/// Encodes the graph as indexed (no canonical relabeling).
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::new();
    encode_order(n, &mut out);
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.is_adjacent(i, j) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push((acc + BIAS) as char);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push(((acc << (6 - k % 6)) + BIAS) as char);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_known_encodings() {
        // 'w' - 63 = 0b111000: all three pairs present
        assert_eq!(
            parse_graph6("Bw").unwrap(),
            Graph::complete(3).unwrap().without_labels()
        );
        // 'g' - 63 = 0b101000: pairs (0,1) and (1,2)
        let p3 = parse_graph6("Bg").unwrap();
        assert_eq!(p3.edges(), vec![(0, 1), (1, 2)]);
        let k4 = parse_graph6("C~").unwrap();
        assert_eq!(k4.edge_count(), 6);
        assert_eq!(emit_graph6(&Graph::path(3).unwrap()), "Bg");
        assert_eq!(emit_graph6(&Graph::complete(4).unwrap()), "C~");
    }

    #[test]
    fn petgraph_reference_string() {
        // 5 vertices, edges a-c, a-e, b-d, d-e
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(emit_graph6(&g), "DQc");
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_graph6("C"), Err(Error::Graph6(_))));
        assert!(matches!(parse_graph6("C~~"), Err(Error::Graph6(_))));
        assert!(matches!(parse_graph6(""), Err(Error::Graph6(_))));
        assert!(matches!(parse_graph6("\x10w"), Err(Error::Graph6(_))));
        assert!(matches!(parse_graph6("Bx"), Err(Error::Graph6(_))));
        assert!(matches!(
            parse_graph6("C?"),
            Err(Error::Disconnected { .. })
        ));
        assert!(matches!(
            parse_graph6("@"),
            Err(Error::TooFewVertices { n: 1 })
        ));
    }

    #[test]
    fn long_header_round_trip() {
        let g = Graph::path(70).unwrap();
        let s = emit_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap().edges(), g.edges());
        assert_eq!(
            parse_graph6(&format!(">>graph6<<{s}\n")).unwrap().order(),
            70
        );
    }
}
