//! Text formats: graph6, a plain edge list, and the set-family listing.

use crate::error::{Error, Result, MAX_ORDER};
use crate::family::SetFamily;
use crate::graph::{Graph, VertexSet};

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Encodes `g` in graph6.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(2 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ascii")
}

/// Decodes one graph6 string (an optional `>>graph6<<` header is accepted).
pub fn from_graph6(s: &str) -> Result<Graph> {
    let s = s.trim();
    let s = s.strip_prefix(GRAPH6_HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse("empty graph6 string".into()));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse(format!("invalid graph6 byte 0x{b:02x}")));
    }
    let (n, body) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            return Err(Error::Parse("graph6 order exceeds 258047".into()));
        }
        if bytes.len() < 4 {
            return Err(Error::Parse("truncated graph6 size field".into()));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        (n, &bytes[4..])
    } else {
        ((bytes[0] - 63) as usize, &bytes[1..])
    };
    if n > MAX_ORDER {
        return Err(Error::OrderTooLarge { order: n, max: MAX_ORDER });
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Parse(format!(
            "graph6 body has {} bytes, expected {expected} for order {n}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if nbits % 6 != 0 {
        let pad = 6 - nbits % 6;
        if (body[expected - 1] - 63) & ((1 << pad) - 1) != 0 {
            return Err(Error::Parse("nonzero graph6 padding bits".into()));
        }
    }
    Ok(g)
}

/// `"n m"` followed by `m` lines `"u v"`, 0-indexed.
pub fn to_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut s = format!("{} {}\n", g.order(), edges.len());
    for (u, v) in edges {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

pub fn from_edge_list(s: &str) -> Result<Graph> {
    let mut lines = s
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Parse("missing edge-list header".into()))?;
    let [n, m] = parse_ints::<2>(header)?;
    let mut g = Graph::empty(n)?;
    let mut seen = 0;
    for line in lines {
        let [u, v] = parse_ints::<2>(line)?;
        g.add_edge(u, v).map_err(|e| Error::Parse(format!("edge '{line}': {e}")))?;
        seen += 1;
    }
    if seen != m {
        return Err(Error::Parse(format!("header announces {m} edges, found {seen}")));
    }
    Ok(g)
}

/// Parses either format: an edge list when the first line has two integers,
/// graph6 otherwise.
pub fn parse_graph(s: &str) -> Result<Graph> {
    let first = s.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
    if parse_ints::<2>(first).is_ok() {
        from_edge_list(s)
    } else {
        from_graph6(first)
    }
}

fn parse_ints<const K: usize>(line: &str) -> Result<[usize; K]> {
    let mut out = [0usize; K];
    let mut it = line.split_whitespace();
    for slot in out.iter_mut() {
        let tok = it.next().ok_or_else(|| Error::Parse(format!("expected {K} integers in '{line}'")))?;
        *slot = tok
            .parse()
            .map_err(|_| Error::Parse(format!("not a non-negative integer: '{tok}'")))?;
    }
    if it.next().is_some() {
        return Err(Error::Parse(format!("expected {K} integers in '{line}'")));
    }
    Ok(out)
}

/// Header `"groundSize r m"`, then one sorted edge per line.
pub fn family_to_text(f: &SetFamily) -> String {
    let mut s = format!("{} {} {}\n", f.ground_size(), f.uniformity(), f.len());
    for e in f.edges() {
        let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    s
}

pub fn family_from_text(s: &str) -> Result<SetFamily> {
    let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("missing family header".into()))?;
    let [ground, r, m] = parse_ints::<3>(header)?;
    let mut edges = Vec::with_capacity(m);
    for line in lines {
        let ids: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad vertex id '{t}'"))))
            .collect::<Result<_>>()?;
        if ids.len() != r {
            return Err(Error::Parse(format!("edge '{line}' does not have {r} members")));
        }
        if ids.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse(format!("edge '{line}' is not strictly increasing")));
        }
        if let Some(&v) = ids.iter().find(|&&v| v >= ground || v >= MAX_ORDER) {
            return Err(Error::Parse(format!("vertex {v} outside ground set of size {ground}")));
        }
        edges.push(VertexSet::from_slice(&ids));
    }
    if edges.len() != m {
        return Err(Error::Parse(format!("header announces {m} edges, found {}", edges.len())));
    }
    SetFamily::new(ground, r, edges).map_err(|e| Error::Parse(e.to_string()))
}
