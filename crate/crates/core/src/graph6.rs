//! The graph6 text format, without the optional `>>graph6<<` header.
//!
//! The upper triangle of the adjacency matrix is read column by column
//! (`(0,1), (0,2), (1,2), (0,3), ...`), packed big-endian into 6-bit groups,
//! and each group is offset by 63 into printable ASCII.

use thiserror::Error;

use crate::graph::{Graph, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("invalid graph6 character {0:?}")]
    InvalidChar(char),
    #[error("graph6 header declares {0} vertices, at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("graph6 body has {found} characters, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("nonzero padding bits in the last graph6 character")]
    Padding,
}

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::new();
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + 63) as char);
        }
    }
    let mut chunk = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            chunk = chunk << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((chunk + 63) as char);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((chunk << (6 - filled)) + 63) as char);
    }
    out
}

pub fn decode(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let mut values = Vec::with_capacity(bytes.len());
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            let c = text[i..].chars().next().unwrap_or('\u{fffd}');
            return Err(Graph6Error::InvalidChar(c));
        }
        values.push(b - 63);
    }
    let (n, body) = if values[0] != 63 {
        (values[0] as usize, &values[1..])
    } else {
        if values.len() < 4 || values[1] == 63 {
            // 8-byte headers (n >= 2^18) are far beyond the vertex cap
            return Err(Graph6Error::TooManyVertices(1 << 18));
        }
        let n = values[1..4]
            .iter()
            .fold(0usize, |acc, &v| acc << 6 | v as usize);
        (n, &values[4..])
    };
    if n > MAX_VERTICES {
        return Err(Graph6Error::TooManyVertices(n));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Graph6Error::Length {
            expected,
            found: body.len(),
        });
    }
    let padding = expected * 6 - bits;
    if padding > 0 && body[expected - 1] & ((1 << padding) - 1) != 0 {
        return Err(Graph6Error::Padding);
    }
    let mut adj = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if body[k / 6] >> (5 - k % 6) & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            k += 1;
        }
    }
    Ok(Graph::from_rows_unchecked(adj))
}

#[cfg(test)]
mod tests {
    use super::*;

    // Expected strings produced by networkx.to_graph6_bytes(header=False).
    #[test]
    fn known_encodings() {
        assert_eq!(encode(&Graph::complete(2).unwrap()), "A_");
        assert_eq!(encode(&Graph::empty(1).unwrap()), "@");
        assert_eq!(encode(&Graph::empty(0).unwrap()), "?");
        assert_eq!(encode(&Graph::path(4).unwrap()), "Ch");
        assert_eq!(encode(&Graph::cycle(5).unwrap()), "Dhc");
        assert_eq!(encode(&Graph::cycle(8).unwrap()), "GhCGKC");
        assert_eq!(encode(&Graph::complete_bipartite(3, 3).unwrap()), "EFz_");
    }

    #[test]
    fn long_header() {
        let k63 = encode(&Graph::complete(63).unwrap());
        assert_eq!(&k63[..6], "~??~~~");
        assert_eq!(k63.len(), 330);

        let g = Graph::from_edge_list(64, &[(0, 63)]).unwrap();
        let s = encode(&g);
        assert_eq!(s.len(), 340);
        let odd: Vec<(usize, char)> = s.char_indices().filter(|&(_, c)| c != '?').collect();
        assert_eq!(odd, vec![(0, '~'), (2, '@'), (329, 'C')]);
        assert_eq!(decode(&s).unwrap(), g);
    }

    #[test]
    fn decode_known() {
        assert_eq!(decode("A_").unwrap(), Graph::complete(2).unwrap());
        assert_eq!(decode("Ch").unwrap(), Graph::path(4).unwrap());
        assert_eq!(decode("?").unwrap().n(), 0);
    }

    #[test]
    fn decode_errors() {
        assert_eq!(decode(""), Err(Graph6Error::Empty));
        assert_eq!(decode("A "), Err(Graph6Error::InvalidChar(' ')));
        assert_eq!(
            decode("A"),
            Err(Graph6Error::Length {
                expected: 1,
                found: 0
            })
        );
        assert_eq!(
            decode("A__"),
            Err(Graph6Error::Length {
                expected: 1,
                found: 2
            })
        );
        // K2 has one data bit; the low five bits are padding
        assert_eq!(decode("A`"), Err(Graph6Error::Padding));
        assert_eq!(decode("~?@@"), Err(Graph6Error::TooManyVertices(65)));
        assert_eq!(
            decode("~~??????"),
            Err(Graph6Error::TooManyVertices(1 << 18))
        );
        assert!(matches!(decode("Aé"), Err(Graph6Error::InvalidChar(_))));
    }
}
