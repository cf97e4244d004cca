//! Text formats: `rooted-hg M r` hypergraphs, `graph N` edge lists, and
//! `family n` bitmask lists. Blank lines and `#` comments are ignored on
//! parse; writers emit canonical order so a parse/serialize round trip is
//! byte-identical.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::RootedHypergraph;
use crate::unionfree::SetFamily;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_fields<const K: usize>(line: usize, text: &str) -> Result<[u64; K]> {
    let mut out = [0u64; K];
    let mut parts = text.split_whitespace();
    for slot in out.iter_mut() {
        let tok = parts.next().ok_or_else(|| Error::Parse {
            line,
            msg: format!("expected {K} fields, got fewer"),
        })?;
        *slot = tok.parse().map_err(|_| Error::Parse {
            line,
            msg: format!("not an integer: {tok}"),
        })?;
    }
    if parts.next().is_some() {
        return Err(Error::Parse {
            line,
            msg: format!("expected exactly {K} fields"),
        });
    }
    Ok(out)
}

/// One edge per line, `u v w h`, after a `rooted-hg M r` header.
pub fn write_hypergraph(h: &RootedHypergraph) -> String {
    let mut out = format!("rooted-hg {} {}\n", h.universe(), h.rootedness());
    for e in h.edges() {
        out.push_str(&format!(
            "{} {} {} {}\n",
            e.triple[0], e.triple[1], e.triple[2], e.head
        ));
    }
    out
}

pub fn parse_hypergraph(text: &str) -> Result<RootedHypergraph> {
    let mut lines = content_lines(text);
    let (line_no, header) = lines.next().ok_or_else(|| Error::Parse {
        line: 0,
        msg: "missing header".into(),
    })?;
    let rest = header.strip_prefix("rooted-hg").ok_or_else(|| Error::Parse {
        line: line_no,
        msg: "header must start with 'rooted-hg'".into(),
    })?;
    let [m, r] = parse_fields::<2>(line_no, rest)?;
    if m > u32::MAX as u64 {
        return Err(Error::Parse {
            line: line_no,
            msg: format!("vertex count {m} too large"),
        });
    }
    let mut triples = Vec::new();
    for (line_no, l) in lines {
        let [u, v, w, head] = parse_fields::<4>(line_no, l)?;
        for x in [u, v, w, head] {
            if x > u32::MAX as u64 {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("vertex id {x} too large"),
                });
            }
        }
        triples.push((u as u32, v as u32, w as u32, head as u32));
    }
    RootedHypergraph::build(m as u32, &triples, r as u32)
}

/// `graph N` header then one `u v` line per edge copy, canonical order.
/// Addresses dense-id graphs: ids must lie below `N`.
pub fn write_graph(g: &Graph) -> String {
    let n = g.vertices().max().map_or(0, |v| v as u64 + 1);
    let mut out = format!("graph {n}\n");
    for (u, v, mult) in g.edges() {
        for _ in 0..mult {
            out.push_str(&format!("{u} {v}\n"));
        }
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (line_no, header) = lines.next().ok_or_else(|| Error::Parse {
        line: 0,
        msg: "missing header".into(),
    })?;
    let rest = header.strip_prefix("graph").ok_or_else(|| Error::Parse {
        line: line_no,
        msg: "header must start with 'graph'".into(),
    })?;
    let [n] = parse_fields::<1>(line_no, rest)?;
    let mut g = Graph::with_vertices(0..n as u32);
    for (line_no, l) in lines {
        let [u, v] = parse_fields::<2>(line_no, l)?;
        if u >= n || v >= n {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("edge ({u}, {v}) outside [0, {n})"),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("self-loop at {u}"),
            });
        }
        g.add_edge(u as u32, v as u32);
    }
    Ok(g)
}

/// `family n` header then one bitmask per line, base-10 or `0b` binary.
pub fn write_family(f: &SetFamily) -> String {
    let mut out = format!("family {}\n", f.n());
    for m in f.masks() {
        out.push_str(&format!("{m}\n"));
    }
    out
}

pub fn parse_family(text: &str) -> Result<SetFamily> {
    let mut lines = content_lines(text);
    let (line_no, header) = lines.next().ok_or_else(|| Error::Parse {
        line: 0,
        msg: "missing header".into(),
    })?;
    let rest = header.strip_prefix("family").ok_or_else(|| Error::Parse {
        line: line_no,
        msg: "header must start with 'family'".into(),
    })?;
    let [n] = parse_fields::<1>(line_no, rest)?;
    let mut fam = SetFamily::new(n as u32)?;
    for (line_no, l) in lines {
        let mask = if let Some(bin) = l.strip_prefix("0b") {
            u32::from_str_radix(bin, 2).map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("not a binary mask: {l}"),
            })?
        } else {
            l.parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("not a mask: {l}"),
            })?
        };
        fam.insert(mask).map_err(|e| Error::Parse {
            line: line_no,
            msg: e.to_string(),
        })?;
    }
    Ok(fam)
}
