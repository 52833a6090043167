//! graph6 encoding.
//!
//! Order prefix: one byte `n + 63` for `n <= 62`, otherwise `126` followed by
//! `n` as three big-endian 6-bit groups (each `+ 63`). The body packs the
//! upper triangle column by column (`x(0,1), x(0,2), x(1,2), x(0,3), ...`)
//! six bits per byte, most significant bit first, zero padded.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};

pub const HEADER: &str = ">>graph6<<";

const BIAS: u8 = 63;
const SHORT_ORDER_MAX: usize = 62;
const MEDIUM_ORDER_MAX: usize = 258_047;

fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Bit index of the pair `i < j` in the body.
#[inline]
pub(crate) fn pair_bit(i: usize, j: usize) -> usize {
    j * (j - 1) / 2 + i
}

/// Unbiased body bits for `n` vertices and the given `(i, j)` pairs, `i < j`.
pub(crate) fn raw_body<I>(n: usize, pairs: I) -> Vec<u8>
where
    I: IntoIterator<Item = (usize, usize)>,
{
    let mut body = vec![0u8; body_len(n)];
    for (i, j) in pairs {
        let bit = pair_bit(i, j);
        body[bit / 6] |= 1 << (5 - bit % 6);
    }
    body
}

pub(crate) fn encode_raw(n: usize, raw: &[u8]) -> String {
    let mut out = Vec::with_capacity(raw.len() + 4);
    if n <= SHORT_ORDER_MAX {
        out.push(n as u8 + BIAS);
    } else {
        debug_assert!(n <= MEDIUM_ORDER_MAX);
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
    out.extend(raw.iter().map(|b| b + BIAS));
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

pub fn encode_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > MAX_ORDER {
        return Err(Error::Capacity {
            order: n,
            max: MAX_ORDER,
        });
    }
    let raw = raw_body(n, g.edges().map(|p| (p.u(), p.v())));
    Ok(encode_raw(n, &raw))
}

fn parse_err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        reason: reason.into(),
    }
}

/// Decodes one graph6 line. A leading `>>graph6<<` header and a trailing
/// newline are accepted.
pub fn decode_graph6(text: &str) -> Result<Graph> {
    decode_bytes(text.as_bytes())
}

pub fn decode_bytes(input: &[u8]) -> Result<Graph> {
    let mut start = 0;
    if input.starts_with(HEADER.as_bytes()) {
        start = HEADER.len();
    }
    let mut end = input.len();
    if end > start && input[end - 1] == b'\n' {
        end -= 1;
        if end > start && input[end - 1] == b'\r' {
            end -= 1;
        }
    }
    let bytes = &input[start..end];
    let at = |i: usize| start + i;

    for (i, &b) in bytes.iter().enumerate() {
        if !(BIAS..=126).contains(&b) {
            return Err(parse_err(at(i), format!("byte {b} outside 63..=126")));
        }
    }
    let (n, header_len) = match bytes {
        [] => return Err(parse_err(at(0), "missing order")),
        [126, 126, ..] => return Err(parse_err(at(0), "order above supported maximum")),
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(parse_err(at(bytes.len()), "truncated order"));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize);
            (n, 4)
        }
        [b, ..] => ((b - BIAS) as usize, 1),
    };
    if n > MAX_ORDER {
        return Err(Error::Capacity {
            order: n,
            max: MAX_ORDER,
        });
    }
    let body = &bytes[header_len..];
    let want = body_len(n);
    if body.len() != want {
        let offset = at(header_len + body.len().min(want));
        return Err(parse_err(
            offset,
            format!(
                "expected {want} body bytes for order {n}, found {}",
                body.len()
            ),
        ));
    }

    let total_bits = n * n.saturating_sub(1) / 2;
    if let Some(&last) = body.last() {
        let used = total_bits - 6 * (want - 1);
        let pad_mask = (1u8 << (6 - used)) - 1;
        if (last - BIAS) & pad_mask != 0 {
            return Err(parse_err(at(header_len + want - 1), "nonzero padding bits"));
        }
    }

    let mut edges = Vec::new();
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[bit / 6] - BIAS;
            if byte >> (5 - bit % 6) & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    Graph::from_edges(n, edges)
}
