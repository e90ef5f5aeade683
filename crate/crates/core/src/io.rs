//! Plain-text formats for graphs, colourings, sequences and partitions.
//!
//! ```text
//! graph:      p edge <n> <m>        then m lines   e <u> <v>
//! colouring:  <v> <c>               one per vertex
//! sequence:   s <n> <k> <len>       then len lines <v> <c>   (c = new colour)
//! partition:  <part_index> <v>      part indices start at 0
//! ```
//!
//! Vertices are labelled `1..=n`. Blank lines and lines starting with `c ` or
//! `#` are ignored on input. Every parse error carries a 1-based line number.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Colour, Colouring, Graph, Vertex, VertexSet};
use crate::moves::{Move, Sequence};

/// Non-comment lines with their 1-based numbers, split on whitespace.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let t = l.trim();
        if t.is_empty() || t.starts_with('#') || t == "c" || t.starts_with("c ") {
            None
        } else {
            Some((i + 1, t.split_whitespace().collect()))
        }
    })
}

fn num<T: FromStr>(line: usize, tok: &str, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("expected {what}, found `{tok}`")))
}

fn expect_fields(line: usize, f: &[&str], n: usize, shape: &str) -> Result<()> {
    if f.len() != n {
        return Err(Error::parse(line, format!("expected `{shape}`")));
    }
    Ok(())
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut it = lines(text);
    let (hl, h) = it
        .next()
        .ok_or_else(|| Error::parse(1, "missing `p edge n m` header"))?;
    if h.len() != 4 || h[0] != "p" || h[1] != "edge" {
        return Err(Error::parse(hl, "expected `p edge n m`"));
    }
    let n: u32 = num(hl, h[2], "vertex count")?;
    let m: usize = num(hl, h[3], "edge count")?;
    let mut g = Graph::with_vertices(1..=n);
    let mut last = hl;
    for (ln, f) in it {
        last = ln;
        if f.first() != Some(&"e") {
            return Err(Error::parse(ln, "expected `e u v`"));
        }
        expect_fields(ln, &f, 3, "e u v")?;
        let u: Vertex = num(ln, f[1], "vertex")?;
        let v: Vertex = num(ln, f[2], "vertex")?;
        for x in [u, v] {
            if x == 0 || x > n {
                return Err(Error::parse(ln, format!("unknown vertex {x} (labels are 1..={n})")));
            }
        }
        if u == v {
            return Err(Error::parse(ln, format!("self-loop on {u}")));
        }
        if !g.add_edge(u, v)? {
            return Err(Error::parse(ln, format!("duplicate edge {u}-{v}")));
        }
    }
    if g.m() != m {
        return Err(Error::parse(
            last,
            format!("header declares {m} edges, found {}", g.m()),
        ));
    }
    Ok(g)
}

fn check_labels(g: &Graph) -> Result<()> {
    if g.vertices().zip(1..).any(|(v, i)| v != i) {
        return Err(Error::InvalidParameter("graph labels are not 1..=n".into()));
    }
    Ok(())
}

pub fn emit_graph(g: &Graph) -> Result<String> {
    check_labels(g)?;
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    Ok(out)
}

/// Parses a colouring with colours `1..=palette`.
pub fn parse_colouring(text: &str, palette: Colour) -> Result<Colouring> {
    let mut pairs = BTreeMap::new();
    for (ln, f) in lines(text) {
        expect_fields(ln, &f, 2, "v c")?;
        let v: Vertex = num(ln, f[0], "vertex")?;
        let c: Colour = num(ln, f[1], "colour")?;
        if c == 0 || c > palette {
            return Err(Error::parse(
                ln,
                format!("colour {c} of vertex {v} is outside 1..={palette}"),
            ));
        }
        if pairs.insert(v, c).is_some() {
            return Err(Error::parse(ln, format!("vertex {v} coloured twice")));
        }
    }
    Colouring::new(palette, pairs)
}

/// [`parse_colouring`], then checks the result colours exactly the vertices
/// of `g`.
pub fn parse_colouring_for(g: &Graph, text: &str, palette: Colour) -> Result<Colouring> {
    let c = parse_colouring(text, palette)?;
    if let Some((v, _)) = c.iter().find(|&(v, _)| !g.contains(v)) {
        return Err(Error::UnknownVertex(v));
    }
    c.check_total_on(g)?;
    Ok(c)
}

pub fn emit_colouring(c: &Colouring) -> String {
    let mut out = String::new();
    for (v, x) in c.iter() {
        writeln!(out, "{v} {x}").unwrap();
    }
    out
}

/// Parses a sequence starting from `start`. Only target colours are stored,
/// so each move's old colour is replayed from `start`; properness is left to
/// the verifier.
pub fn parse_sequence(text: &str, start: &Colouring) -> Result<Sequence> {
    let mut it = lines(text);
    let (hl, h) = it.next().ok_or_else(|| Error::parse(1, "missing `s n k len` header"))?;
    if h.len() != 4 || h[0] != "s" {
        return Err(Error::parse(hl, "expected `s n k len`"));
    }
    let n: usize = num(hl, h[1], "vertex count")?;
    let k: Colour = num(hl, h[2], "palette size")?;
    let len: usize = num(hl, h[3], "sequence length")?;
    if n != start.len() {
        return Err(Error::parse(
            hl,
            format!("header has {n} vertices, start colouring has {}", start.len()),
        ));
    }
    let start = start
        .with_palette(k)
        .map_err(|e| Error::parse(hl, format!("start colouring does not fit palette {k}: {e}")))?;
    let mut cur = start.clone();
    let mut moves = Vec::with_capacity(len);
    let mut last = hl;
    for (ln, f) in it {
        last = ln;
        expect_fields(ln, &f, 2, "v c")?;
        let v: Vertex = num(ln, f[0], "vertex")?;
        let to: Colour = num(ln, f[1], "colour")?;
        let from = cur
            .get(v)
            .ok_or_else(|| Error::parse(ln, format!("unknown vertex {v}")))?;
        if to == 0 || to > k {
            return Err(Error::parse(ln, format!("colour {to} is outside 1..={k}")));
        }
        let m = Move::new(v, from, to).map_err(|e| Error::parse(ln, e.to_string()))?;
        cur.set(v, to);
        moves.push(m);
    }
    if moves.len() != len {
        return Err(Error::parse(
            last,
            format!("header declares {len} moves, found {}", moves.len()),
        ));
    }
    Ok(Sequence::from_moves(start, moves))
}

pub fn emit_sequence(s: &Sequence) -> String {
    let mut out = format!("s {} {} {}\n", s.start().len(), s.palette(), s.len());
    for m in s.moves() {
        writeln!(out, "{} {}", m.vertex(), m.to()).unwrap();
    }
    out
}

/// Parts indexed from 0; missing indices give empty parts.
pub fn parse_partition(text: &str) -> Result<Vec<VertexSet>> {
    let mut parts: Vec<VertexSet> = Vec::new();
    let mut seen = VertexSet::new();
    for (ln, f) in lines(text) {
        expect_fields(ln, &f, 2, "part_index v")?;
        let i: usize = num(ln, f[0], "part index")?;
        let v: Vertex = num(ln, f[1], "vertex")?;
        if !seen.insert(v) {
            return Err(Error::parse(ln, format!("vertex {v} listed twice")));
        }
        if parts.len() <= i {
            parts.resize_with(i + 1, VertexSet::new);
        }
        parts[i].insert(v);
    }
    Ok(parts)
}

pub fn emit_partition(parts: &[VertexSet]) -> String {
    let mut out = String::new();
    for (i, p) in parts.iter().enumerate() {
        for v in p {
            writeln!(out, "{i} {v}").unwrap();
        }
    }
    out
}
