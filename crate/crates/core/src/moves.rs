//! Single-vertex recolouring steps, sequences of them, and the verifier every
//! algorithm's output passes through.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Colour, Colouring, Graph, Vertex};

/// Recolour `vertex` from `from` to `to`. `from != to` always holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    vertex: Vertex,
    from: Colour,
    to: Colour,
}

impl Move {
    pub fn new(vertex: Vertex, from: Colour, to: Colour) -> Result<Self> {
        if from == to {
            return Err(Error::NoOpMove(vertex));
        }
        Ok(Move { vertex, from, to })
    }

    pub fn vertex(&self) -> Vertex {
        self.vertex
    }

    pub fn from(&self) -> Colour {
        self.from
    }

    pub fn to(&self) -> Colour {
        self.to
    }

    pub fn reversed(&self) -> Move {
        Move {
            vertex: self.vertex,
            from: self.to,
            to: self.from,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {}", self.vertex, self.from, self.to)
    }
}

/// Applies `m` to `c`, rejecting stale or improper moves.
pub fn apply_move(g: &Graph, c: &Colouring, m: Move) -> Result<Colouring> {
    let mut next = c.clone();
    apply_in_place(g, &mut next, m)?;
    Ok(next)
}

pub(crate) fn apply_in_place(g: &Graph, c: &mut Colouring, m: Move) -> Result<()> {
    let nb = g.try_neighbours(m.vertex)?;
    let cur = c.get(m.vertex).ok_or(Error::Uncoloured(m.vertex))?;
    if cur != m.from {
        return Err(Error::StaleFromColour {
            vertex: m.vertex,
            expected: m.from,
            found: cur,
        });
    }
    if m.to == 0 || m.to > c.palette() {
        return Err(Error::ColourOutOfRange {
            vertex: m.vertex,
            colour: m.to,
            palette: c.palette(),
        });
    }
    if let Some(&u) = nb.iter().find(|&&u| c.get(u) == Some(m.to)) {
        return Err(Error::ImproperResult {
            vertex: m.vertex,
            neighbour: u,
            colour: m.to,
        });
    }
    c.set(m.vertex, m.to);
    Ok(())
}

/// A start colouring and the moves applied to it, in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sequence {
    start: Colouring,
    moves: Vec<Move>,
}

impl Sequence {
    pub fn empty(start: Colouring) -> Self {
        Sequence {
            start,
            moves: Vec::new(),
        }
    }

    /// Builds a sequence without replaying it; run [`verify_sequence`] to
    /// check it against a graph.
    pub fn from_moves(start: Colouring, moves: Vec<Move>) -> Self {
        Sequence { start, moves }
    }

    pub fn start(&self) -> &Colouring {
        &self.start
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn into_moves(self) -> Vec<Move> {
        self.moves
    }

    pub fn palette(&self) -> Colour {
        self.start.palette()
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Colouring after all moves, trusting each move's target colour.
    pub fn end(&self) -> Colouring {
        let mut c = self.start.clone();
        for m in &self.moves {
            c.set(m.vertex, m.to);
        }
        c
    }

    /// The same moves under a larger (or equal) palette.
    pub fn with_palette(&self, palette: Colour) -> Result<Self> {
        if self.moves.iter().any(|m| m.to > palette) {
            return Err(Error::InvalidParameter(format!(
                "sequence uses colours above {palette}"
            )));
        }
        Ok(Sequence {
            start: self.start.with_palette(palette)?,
            moves: self.moves.clone(),
        })
    }

    /// Number of moves touching each vertex.
    pub fn move_counts(&self) -> std::collections::BTreeMap<Vertex, usize> {
        let mut out = std::collections::BTreeMap::new();
        for m in &self.moves {
            *out.entry(m.vertex).or_insert(0) += 1;
        }
        out
    }

    /// Merges runs of consecutive moves on one vertex into a single move,
    /// dropping runs that return the vertex to its colour. Every colouring of
    /// the result also occurs in `self`.
    pub fn coalesce(&self) -> Sequence {
        let mut out: Vec<Move> = Vec::with_capacity(self.moves.len());
        for &m in &self.moves {
            match out.last() {
                Some(last) if last.vertex == m.vertex => {
                    let merged_from = last.from;
                    out.pop();
                    if merged_from != m.to {
                        out.push(Move {
                            vertex: m.vertex,
                            from: merged_from,
                            to: m.to,
                        });
                    }
                }
                _ => out.push(m),
            }
        }
        Sequence {
            start: self.start.clone(),
            moves: out,
        }
    }
}

/// `s` walked backwards: starts at `s.end()` and undoes each move.
pub fn reverse(s: &Sequence) -> Sequence {
    Sequence {
        start: s.end(),
        moves: s.moves.iter().rev().map(Move::reversed).collect(),
    }
}

/// `a` followed by `b`; `b` must start where `a` ends, under the same palette.
pub fn concat(a: &Sequence, b: &Sequence) -> Result<Sequence> {
    if a.palette() != b.palette() || a.end() != b.start {
        return Err(Error::EndpointMismatch);
    }
    let mut moves = a.moves.clone();
    moves.extend_from_slice(&b.moves);
    Ok(Sequence {
        start: a.start.clone(),
        moves,
    })
}

/// Where and why verification stopped. `index` is `None` when the start or
/// end colouring is at fault rather than a move.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyFailure {
    pub index: Option<usize>,
    pub error: Error,
}

impl fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            Some(i) => write!(f, "move {i}: {}", self.error),
            None => write!(f, "{}", self.error),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub moves_checked: usize,
    pub end: Colouring,
    pub failure: Option<VerifyFailure>,
}

impl VerifyReport {
    pub fn is_ok(&self) -> bool {
        self.failure.is_none()
    }

    pub fn into_result(self) -> Result<Colouring> {
        match self.failure {
            None => Ok(self.end),
            Some(f) => Err(f.error),
        }
    }
}

/// Replays `s` on `g`, checking the start colouring, every move, and, if
/// given, the final colouring.
pub fn verify_sequence(g: &Graph, s: &Sequence, expected_end: Option<&Colouring>) -> VerifyReport {
    let mut cur = s.start.clone();
    let fail = |index, error, cur: Colouring, checked| VerifyReport {
        moves_checked: checked,
        end: cur,
        failure: Some(VerifyFailure { index, error }),
    };
    if let Err(e) = s.start.check_proper(g) {
        return fail(None, e, cur, 0);
    }
    if s.start.max_colour() > s.palette() {
        // unreachable through Colouring::new, kept for deserialized values
        return fail(None, Error::Internal("start exceeds palette".into()), cur, 0);
    }
    for (i, &m) in s.moves.iter().enumerate() {
        if m.from == m.to {
            return fail(Some(i), Error::NoOpMove(m.vertex), cur, i);
        }
        if let Err(e) = apply_in_place(g, &mut cur, m) {
            return fail(Some(i), e, cur, i);
        }
    }
    if let Some(want) = expected_end {
        if let Some(v) = g.vertices().find(|&v| cur.get(v) != want.get(v)) {
            let msg = format!(
                "final colouring differs at vertex {v}: got {}, expected {}",
                cur[v],
                want.get(v).map_or("none".to_string(), |c| c.to_string())
            );
            let n = s.moves.len();
            return fail(None, Error::Certificate(msg), cur, n);
        }
    }
    VerifyReport {
        moves_checked: s.moves.len(),
        end: cur,
        failure: None,
    }
}

/// Mutable replay state used by the algorithms: every recolouring is checked
/// on the spot and recorded.
#[derive(Debug, Clone)]
pub(crate) struct Tracker<'g> {
    g: &'g Graph,
    start: Colouring,
    cur: Colouring,
    moves: Vec<Move>,
}

impl<'g> Tracker<'g> {
    pub fn new(g: &'g Graph, start: Colouring) -> Self {
        Tracker {
            g,
            cur: start.clone(),
            start,
            moves: Vec::new(),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn colour(&self, v: Vertex) -> Colour {
        self.cur[v]
    }

    pub fn current(&self) -> &Colouring {
        &self.cur
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn moves_since(&self, mark: usize) -> &[Move] {
        &self.moves[mark..]
    }

    pub fn recolour(&mut self, v: Vertex, to: Colour) -> Result<()> {
        let m = Move::new(v, self.cur[v], to)?;
        apply_in_place(self.g, &mut self.cur, m)?;
        self.moves.push(m);
        Ok(())
    }

    /// Colours in `1..=palette` absent from `v`'s neighbours, ascending.
    pub fn free_colours(&self, v: Vertex, palette: Colour) -> Vec<Colour> {
        let nb = self.g.neighbours(v);
        (1..=palette)
            .filter(|&c| nb.iter().all(|&u| self.cur[u] != c))
            .collect()
    }

    pub fn finish(self) -> Sequence {
        Sequence {
            start: self.start,
            moves: self.moves,
        }
    }
}
