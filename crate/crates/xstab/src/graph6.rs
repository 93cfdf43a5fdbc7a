//! graph6 text codec for undirected simple graphs.
//!
//! The format packs the upper triangle of the adjacency matrix in column
//! order, six bits per byte, each byte offset by 63 so output stays
//! printable. Decoding is strict: every defect is reported with the byte
//! offset at which it was found.

use crate::error::{Error, Result};
use crate::graph::Graph;

const OFFSET: u8 = 63;
const HEADER: &str = ">>graph6<<";

fn parse_err(offset: usize, msg: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        msg: msg.into(),
    }
}

/// Encodes `g` as a canonical-length graph6 line (no header, no newline).
pub fn encode(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut bytes = Vec::new();

    // Size field: shortest of the 1-, 4-, or 8-byte forms.
    if n <= 62 {
        bytes.push(OFFSET + n as u8);
    } else if n <= 258_047 {
        bytes.push(126);
        for shift in [12, 6, 0] {
            bytes.push(OFFSET + ((n >> shift) & 63) as u8);
        }
    } else {
        assert!(n <= 68_719_476_735, "graph6 cannot express n > 2^36 - 1");
        bytes.push(126);
        bytes.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            bytes.push(OFFSET + ((n >> shift) & 63) as u8);
        }
    }

    // Upper triangle, column major: (0,1), (0,2), (1,2), (0,3), ...
    let mut group = 0u8;
    let mut filled = 0u8;
    for j in 1..n {
        for i in 0..j {
            group = (group << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                bytes.push(OFFSET + group);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push(OFFSET + (group << (6 - filled)));
    }

    String::from_utf8(bytes).expect("graph6 bytes are printable ASCII")
}

/// Decodes one graph6 line. A leading `>>graph6<<` header is accepted.
pub fn decode(line: &str) -> Result<Graph> {
    let (base, payload) = match line.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest),
        None => (0, line),
    };
    let bytes = payload.as_bytes();
    if bytes.is_empty() {
        return Err(parse_err(base, "empty input"));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(OFFSET..=126).contains(&b) {
            return Err(parse_err(base + i, format!("byte {b:#04x} outside graph6 range")));
        }
    }

    // Size field.
    let (n, body_start) = if bytes[0] != 126 {
        ((bytes[0] - OFFSET) as usize, 1)
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(parse_err(base + bytes.len(), "truncated size field"));
        }
        let mut n = 0usize;
        for &b in &bytes[1..4] {
            n = (n << 6) | (b - OFFSET) as usize;
        }
        if n <= 62 {
            return Err(parse_err(base + 1, "non-canonical size: fits in one byte"));
        }
        (n, 4)
    } else {
        if bytes.len() < 8 {
            return Err(parse_err(base + bytes.len(), "truncated size field"));
        }
        let mut n = 0usize;
        for &b in &bytes[2..8] {
            n = (n << 6) | (b - OFFSET) as usize;
        }
        if n <= 258_047 {
            return Err(parse_err(base + 2, "non-canonical size: fits in four bytes"));
        }
        (n, 8)
    };

    let bit_count = n * n.saturating_sub(1) / 2;
    let body_len = bit_count.div_ceil(6);
    let have = bytes.len() - body_start;
    if have < body_len {
        return Err(parse_err(base + bytes.len(), "truncated adjacency data"));
    }
    if have > body_len {
        return Err(parse_err(base + body_start + body_len, "trailing data after adjacency bits"));
    }

    let mut g = Graph::empty(n);
    let mut bit = 0usize;
    'cols: for j in 1..n {
        for i in 0..j {
            let byte = bytes[body_start + bit / 6];
            let within = bit % 6;
            if (byte - OFFSET) >> (5 - within) & 1 == 1 {
                g.add_edge(i, j);
            }
            bit += 1;
            if bit == bit_count {
                break 'cols;
            }
        }
    }

    // Padding bits must be zero.
    if bit_count % 6 != 0 {
        let last = bytes[bytes.len() - 1] - OFFSET;
        let pad = 6 - (bit_count % 6);
        if last & ((1 << pad) - 1) != 0 {
            return Err(parse_err(base + bytes.len() - 1, "nonzero padding bits"));
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_vertex_is_at_sign() {
        assert_eq!(encode(&Graph::empty(1)), "@");
        let g = decode("@").unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn complete_four_is_c_tilde() {
        assert_eq!(encode(&Graph::complete(4)), "C~");
        assert_eq!(decode("C~").unwrap(), Graph::complete(4));
    }

    #[test]
    fn header_is_accepted() {
        assert_eq!(decode(">>graph6<<C~").unwrap(), Graph::complete(4));
    }

    #[test]
    fn empty_graph_on_zero_vertices() {
        let s = encode(&Graph::empty(0));
        assert_eq!(s, "?");
        assert_eq!(decode(&s).unwrap().vertex_count(), 0);
    }

    #[test]
    fn wide_size_field_roundtrip() {
        for n in [63, 64, 100] {
            let g = Graph::cycle(n);
            let s = encode(&g);
            assert!(s.starts_with('~'));
            assert_eq!(decode(&s).unwrap(), g);
        }
    }

    #[test]
    fn errors_name_byte_offsets() {
        // Byte below the printable range, at offset 1.
        let e = decode("C 123").unwrap_err();
        assert!(matches!(e, Error::Graph6 { offset: 1, .. }), "{e}");

        // Truncated body: offset is the input length.
        let e = decode("C").unwrap_err();
        assert!(matches!(e, Error::Graph6 { offset: 1, .. }), "{e}");

        // Trailing data after a complete graph body.
        let e = decode("C~~").unwrap_err();
        assert!(matches!(e, Error::Graph6 { offset: 2, .. }), "{e}");

        // Nonzero padding: K_2 is "A_" (bit 1, pad 00000); "A~" has pad bits set.
        let e = decode("A~").unwrap_err();
        assert!(matches!(e, Error::Graph6 { offset: 1, .. }), "{e}");

        // Non-canonical long size field for a small n.
        let e = decode("~??B??").unwrap_err();
        assert!(matches!(e, Error::Graph6 { offset: 1, .. }), "{e}");

        // Offsets account for the optional header.
        let e = decode(">>graph6<<C").unwrap_err();
        assert!(matches!(e, Error::Graph6 { offset: 11, .. }), "{e}");
    }

    proptest! {
        #[test]
        fn roundtrip_random_graphs(n in 0usize..40, seed in any::<u64>()) {
            let mut g = Graph::empty(n);
            let mut state = seed | 1;
            for u in 0..n {
                for v in (u + 1)..n {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    if state >> 63 == 1 {
                        g.add_edge(u, v);
                    }
                }
            }
            let s = encode(&g);
            prop_assert_eq!(decode(&s).unwrap(), g);
        }
    }
}
