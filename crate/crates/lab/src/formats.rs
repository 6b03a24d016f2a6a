//! Edge-list and graph6 text formats.
//!
//! Edge lists hold one edge per line as two 0-based vertex indices; `#`
//! starts a comment and blank lines are skipped. A comment of the exact
//! form `# order N` fixes the vertex count, which is how trailing isolated
//! vertices survive a round trip. Without it the order is one more than
//! the largest index seen.

use std::fmt::Write as _;

use sgthresh_core::{Graph, MAX_ORDER};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

fn fail<T>(line: usize, reason: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        reason: reason.into(),
    })
}

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Parses either format; graph6 is recognized by its header or by a first
/// data line made only of the printable bytes 63..=126, which no edge-list
/// line can be.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let first = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .find(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some((line, l)) if l.starts_with(GRAPH6_HEADER) || l.bytes().all(|b| (63..=126).contains(&b)) => {
            parse_graph6(l.strip_prefix(GRAPH6_HEADER).unwrap_or(l)).map_err(|mut e| {
                e.line = line;
                e
            })
        }
        _ => parse_edge_list(text),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut edges = Vec::new();
    let mut declared = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let (data, comment) = match raw.split_once('#') {
            Some((d, c)) => (d, Some(c)),
            None => (raw, None),
        };
        if let Some(c) = comment {
            let words: Vec<&str> = c.split_whitespace().collect();
            if let ["order", n] = words[..] {
                match n.parse::<usize>() {
                    Ok(n) if n <= MAX_ORDER => declared = Some((n, line)),
                    _ => return fail(line, format!("bad order directive {n:?} (at most {MAX_ORDER})")),
                }
            }
        }
        let fields: Vec<&str> = data.split_whitespace().collect();
        match fields[..] {
            [] => continue,
            [a, b] => {
                let parse = |s: &str| {
                    s.parse::<usize>().map_err(|_| ParseError {
                        line,
                        reason: format!("vertex {s:?} is not a nonnegative integer"),
                    })
                };
                let (u, v) = (parse(a)?, parse(b)?);
                if u >= MAX_ORDER || v >= MAX_ORDER {
                    return fail(line, format!("vertex index {} is not below {MAX_ORDER}", u.max(v)));
                }
                if u == v {
                    return fail(line, format!("self-loop at vertex {u}"));
                }
                edges.push((u.min(v), u.max(v), line));
            }
            _ => return fail(line, format!("expected two vertex indices, found {}", fields.len())),
        }
    }
    let needed = edges.iter().map(|&(_, v, _)| v + 1).max().unwrap_or(1);
    let order = match declared {
        Some((n, line)) if n < needed => return fail(line, format!("order {n} is below the largest vertex index")),
        Some((n, _)) => n,
        None => needed,
    };
    let mut g = Graph::empty(order).map_err(|e| ParseError {
        line: 0,
        reason: e.to_string(),
    })?;
    for (u, v, line) in edges {
        if g.has_edge(u, v) {
            return fail(line, format!("duplicate edge {u} {v}"));
        }
        g.add_edge(u, v).map_err(|e| ParseError {
            line,
            reason: e.to_string(),
        })?;
    }
    Ok(g)
}

/// Decodes one graph6 string (header already stripped).
pub fn parse_graph6(s: &str) -> Result<Graph, ParseError> {
    let bytes = s.as_bytes();
    if bytes.iter().any(|b| !(63..=126).contains(b)) {
        return fail(1, "graph6 data outside the printable range 63..=126");
    }
    let (n, body) = match bytes {
        [126, 126, ..] => return fail(1, format!("graph6 order above {MAX_ORDER}")),
        [126, a, b, c, rest @ ..] => {
            let n = ((*a as usize - 63) << 12) | ((*b as usize - 63) << 6) | (*c as usize - 63);
            (n, rest)
        }
        [first, rest @ ..] if *first != 126 => (*first as usize - 63, rest),
        _ => return fail(1, "truncated graph6 header"),
    };
    if n > MAX_ORDER {
        return fail(1, format!("graph6 order {n} above {MAX_ORDER}"));
    }
    let pairs = n * n.saturating_sub(1) / 2;
    if body.len() != pairs.div_ceil(6) {
        return fail(
            1,
            format!("graph6 body has {} bytes, expected {}", body.len(), pairs.div_ceil(6)),
        );
    }
    let mut g = Graph::empty(n.max(1)).map_err(|e| ParseError {
        line: 1,
        reason: e.to_string(),
    })?;
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(u, v).expect("distinct in-range vertices");
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Edge list with an order directive; `parse_edge_list` inverts it.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("# order {}\n", g.order());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.extend([126, 63, (n >> 6) as u8 + 63, (n & 63) as u8 + 63]);
    }
    let mut acc = 0u8;
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | g.has_edge(u, v) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((acc << (6 - k % 6)) + 63);
    }
    String::from_utf8(out).expect("printable ascii")
}
