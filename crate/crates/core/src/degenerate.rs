//! Removing the top colour from a `(k+2)`-colouring of a `k`-degenerate graph.
//!
//! [`recolour_vertex`] is the recursive procedure that recolours one vertex
//! `v_h` of a fixed ordering `σ` while touching only vertices after it:
//!
//! 1. if some colour is absent from `v_h` and all its neighbours, take the
//!    smallest such colour;
//! 2. if `deg(v_h) = k + 1`, recolour the latest neighbour first and take the
//!    colour it vacated;
//! 3. otherwise pick the smallest colour `c` missing from `v_h` and its
//!    (at most `k`) earlier neighbours, recolour every later neighbour that
//!    holds `c` at the moment it is scanned, then take `c`.
//!
//! The recursion is driven by an explicit stack since chains can be as deep
//! as the graph is long.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{back_degrees, Colour, Colouring, DegeneracyOrder, Graph, Vertex};
use crate::moves::{Sequence, Tracker};

const LOG_EPS: f64 = 1e-9;

/// Vertices of degree at least `k + 2`, in `σ` order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HighDegreeProfile {
    pub vertices: Vec<Vertex>,
    pub positions: Vec<usize>,
    pub degrees: Vec<usize>,
}

impl HighDegreeProfile {
    pub fn new(g: &Graph, k: usize, sigma: &DegeneracyOrder) -> Self {
        let mut p = HighDegreeProfile {
            vertices: Vec::new(),
            positions: Vec::new(),
            degrees: Vec::new(),
        };
        for (i, &v) in sigma.order.iter().enumerate() {
            let d = g.degree(v);
            if d >= k + 2 {
                p.vertices.push(v);
                p.positions.push(i);
                p.degrees.push(d);
            }
        }
        p
    }

    /// `log2 ∏ deg(u_j)` over the high-degree vertices at position `≥ h`.
    pub fn log2_product_from(&self, h: usize) -> f64 {
        self.positions
            .iter()
            .zip(&self.degrees)
            .filter(|(&p, _)| p >= h)
            .map(|(_, &d)| (d as f64).log2())
            .sum()
    }

    pub fn log2_product(&self) -> f64 {
        self.log2_product_from(0)
    }
}

/// What one top-level [`recolour_vertex`] call did.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecolourCall {
    pub target: Vertex,
    pub position: usize,
    pub moves: usize,
    /// Times the target itself changed colour; always 1.
    pub target_moves: usize,
    /// Largest number of moves on any single later vertex.
    pub max_later_moves: usize,
    /// `log2` of the per-vertex bound for later vertices.
    pub log2_later_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegenerateReport {
    pub n: usize,
    pub k: usize,
    pub length: usize,
    pub calls: Vec<RecolourCall>,
    /// `log2(4 n² ∏ deg(u_i))`.
    pub log2_length_bound: f64,
    pub profile: HighDegreeProfile,
}

/// Replay state for [`recolour_vertex`]: the graph, the ordering and the
/// colouring built so far.
pub struct RecolourState<'g> {
    k: usize,
    order: Vec<Vertex>,
    pos: BTreeMap<Vertex, usize>,
    profile: HighDegreeProfile,
    tracker: Tracker<'g>,
}

enum Frame {
    Enter(usize),
    Take {
        h: usize,
        c: Colour,
    },
    Scan {
        h: usize,
        c: Colour,
        later: Vec<usize>,
        next: usize,
    },
}

impl<'g> RecolourState<'g> {
    /// Checks `σ` against `g` and `k`, and `α` for properness under palette
    /// `k + 2`.
    pub fn new(g: &'g Graph, k: usize, alpha: &Colouring, sigma: &DegeneracyOrder) -> Result<Self> {
        let sigma = DegeneracyOrder::from_order(g, sigma.order.clone())?;
        if sigma.width > k {
            let width = back_degrees(g, &sigma.order).into_iter().max().unwrap_or(0);
            return Err(Error::WidthExceeded { width, k });
        }
        let alpha = alpha.with_palette(k as Colour + 2)?;
        alpha.check_proper(g)?;
        Ok(RecolourState {
            k,
            pos: sigma.positions(),
            profile: HighDegreeProfile::new(g, k, &sigma),
            order: sigma.order,
            tracker: Tracker::new(g, alpha),
        })
    }

    pub fn current(&self) -> &Colouring {
        self.tracker.current()
    }

    pub fn profile(&self) -> &HighDegreeProfile {
        &self.profile
    }

    fn palette(&self) -> Colour {
        self.k as Colour + 2
    }

    fn run(&mut self, h: usize) -> Result<()> {
        let g = self.tracker.graph();
        let mut stack = vec![Frame::Enter(h)];
        while let Some(frame) = stack.pop() {
            match frame {
                Frame::Enter(h) => {
                    let v = self.order[h];
                    let mut used = BTreeSet::from([self.tracker.colour(v)]);
                    used.extend(g.neighbours(v).iter().map(|&u| self.tracker.colour(u)));
                    if let Some(c) = (1..=self.palette()).find(|c| !used.contains(c)) {
                        self.tracker.recolour(v, c)?;
                        continue;
                    }
                    let deg = g.degree(v);
                    if deg == self.k + 1 {
                        let i = g.neighbours(v).iter().map(|u| self.pos[u]).max().unwrap();
                        debug_assert!(i > h);
                        let c = self.tracker.colour(self.order[i]);
                        stack.push(Frame::Take { h, c });
                        stack.push(Frame::Enter(i));
                    } else if deg >= self.k + 2 {
                        let mut blocked = BTreeSet::from([self.tracker.colour(v)]);
                        let mut later = Vec::new();
                        for &u in g.neighbours(v) {
                            let pu = self.pos[&u];
                            if pu < h {
                                blocked.insert(self.tracker.colour(u));
                            } else {
                                later.push(pu);
                            }
                        }
                        later.sort_unstable();
                        let c = (1..=self.palette())
                            .find(|c| !blocked.contains(c))
                            .ok_or(Error::NoFreeColour(v))?;
                        stack.push(Frame::Scan { h, c, later, next: 0 });
                    } else {
                        return Err(Error::Internal(format!(
                            "vertex {v} of degree {deg} has no free colour"
                        )));
                    }
                }
                Frame::Take { h, c } => self.tracker.recolour(self.order[h], c)?,
                Frame::Scan { h, c, later, next } => {
                    let hit = (next..later.len()).find(|&j| self.tracker.colour(self.order[later[j]]) == c);
                    match hit {
                        Some(j) => {
                            let i = later[j];
                            stack.push(Frame::Scan {
                                h,
                                c,
                                later,
                                next: j + 1,
                            });
                            stack.push(Frame::Enter(i));
                        }
                        None => self.tracker.recolour(self.order[h], c)?,
                    }
                }
            }
        }
        Ok(())
    }
}

/// Recolours `σ[h]` once, touching only vertices after it, and checks the
/// three guarantees on the moves emitted.
pub fn recolour_vertex(state: &mut RecolourState<'_>, h: usize) -> Result<RecolourCall> {
    if h >= state.order.len() {
        return Err(Error::InvalidParameter(format!("position {h} out of range")));
    }
    let mark = state.tracker.len();
    let target = state.order[h];
    let before = state.tracker.colour(target);
    state.run(h)?;

    let mut counts: BTreeMap<Vertex, usize> = BTreeMap::new();
    for m in state.tracker.moves_since(mark) {
        *counts.entry(m.vertex()).or_insert(0) += 1;
    }
    let target_moves = counts.get(&target).copied().unwrap_or(0);
    if target_moves != 1 || state.tracker.colour(target) == before {
        return Err(Error::Certificate(format!(
            "target {target} moved {target_moves} times"
        )));
    }
    if let Some((&v, _)) = counts.iter().find(|(v, _)| state.pos[v] < h) {
        return Err(Error::Certificate(format!(
            "vertex {v} earlier than {target} was recoloured"
        )));
    }
    let log2_later_bound = state.profile.log2_product_from(h);
    let max_later_moves = counts
        .iter()
        .filter(|(&v, _)| v != target)
        .map(|(_, &c)| c)
        .max()
        .unwrap_or(0);
    if max_later_moves > 0 && (max_later_moves as f64).log2() > log2_later_bound + LOG_EPS {
        return Err(Error::Certificate(format!(
            "a later vertex moved {max_later_moves} times, above 2^{log2_later_bound:.3}"
        )));
    }
    Ok(RecolourCall {
        target,
        position: h,
        moves: state.tracker.len() - mark,
        target_moves,
        max_later_moves,
        log2_later_bound,
    })
}

/// Takes `α` to a colouring without colour `k + 2`, calling
/// [`recolour_vertex`] on the earliest vertex of that colour until none is
/// left.
pub fn reduce_one_colour_degenerate(
    g: &Graph,
    k: usize,
    alpha: &Colouring,
    sigma: &DegeneracyOrder,
) -> Result<Sequence> {
    reduce_one_colour_degenerate_with_report(g, k, alpha, sigma).map(|(s, _)| s)
}

pub fn reduce_one_colour_degenerate_with_report(
    g: &Graph,
    k: usize,
    alpha: &Colouring,
    sigma: &DegeneracyOrder,
) -> Result<(Sequence, DegenerateReport)> {
    let mut state = RecolourState::new(g, k, alpha, sigma)?;
    let top = state.palette();
    let mut calls = Vec::new();
    loop {
        let next = state.order.iter().position(|&v| state.tracker.colour(v) == top);
        match next {
            Some(h) => calls.push(recolour_vertex(&mut state, h)?),
            None => break,
        }
        if calls.len() > g.n() {
            return Err(Error::Internal("more top-level calls than vertices".into()));
        }
    }
    let n = g.n();
    let length = state.tracker.len();
    let log2_length_bound = 2.0 + 2.0 * (n.max(1) as f64).log2() + state.profile.log2_product();
    if length > 0 && (length as f64).log2() > log2_length_bound + LOG_EPS {
        return Err(Error::Certificate(format!(
            "{length} moves exceed 4 n^2 prod deg(u_i) = 2^{log2_length_bound:.3}"
        )));
    }
    let report = DegenerateReport {
        n,
        k,
        length,
        calls,
        log2_length_bound,
        profile: state.profile.clone(),
    };
    Ok((state.tracker.finish(), report))
}
