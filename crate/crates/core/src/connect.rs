//! Joining two `k`-colourings of a `d`-degenerate graph when `k ≥ 2d + 1`.
//!
//! Peel-and-shield: remove a vertex `v` of degree at most `d` (the last vertex
//! of a fresh degeneracy ordering), connect the restrictions on `G - v`, then
//! replay that sequence on `G`. Whenever a neighbour is about to move onto
//! `v`'s colour, `v` first steps to the smallest colour not used by itself,
//! its neighbours, or the incoming colour; at most `d + 2` colours are
//! excluded, so one is always left. Finally `v` takes its target colour.

use std::collections::BTreeMap;

use log::warn;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{degeneracy_ordering, induced_subgraph, Colour, Colouring, Graph, Vertex, VertexSet};
use crate::moves::{Move, Sequence, Tracker};

/// Soft `C·n²` move budget plus an absolute cap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectBudget {
    factor: f64,
    hard_cap: usize,
}

impl ConnectBudget {
    pub fn new(factor: f64, hard_cap: usize) -> Result<Self> {
        if factor.is_nan() || factor < 1.0 {
            return Err(Error::InvalidParameter(format!("budget factor {factor} is below 1")));
        }
        Ok(ConnectBudget { factor, hard_cap })
    }

    pub fn factor(&self) -> f64 {
        self.factor
    }

    pub fn hard_cap(&self) -> usize {
        self.hard_cap
    }

    pub fn soft_bound(&self, n: usize) -> f64 {
        self.factor * (n * n) as f64
    }
}

impl Default for ConnectBudget {
    fn default() -> Self {
        ConnectBudget {
            factor: 50.0,
            hard_cap: 50_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConnectReport {
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub length: usize,
    pub shield_moves: usize,
    pub soft_bound: f64,
    pub within_soft_bound: bool,
    pub max_moves_per_vertex: usize,
    pub moves_per_vertex: BTreeMap<Vertex, usize>,
}

/// Sequence from `α` to `β`, both proper `k`-colourings of the
/// `d`-degenerate graph `g`, under the default budget.
pub fn connect_colourings(g: &Graph, d: usize, k: usize, alpha: &Colouring, beta: &Colouring) -> Result<Sequence> {
    connect_colourings_with(g, d, k, alpha, beta, &ConnectBudget::default()).map(|(s, _)| s)
}

pub fn connect_colourings_with(
    g: &Graph,
    d: usize,
    k: usize,
    alpha: &Colouring,
    beta: &Colouring,
    budget: &ConnectBudget,
) -> Result<(Sequence, ConnectReport)> {
    if d == 0 && g.m() > 0 {
        return Err(Error::NotDegenerateEnough {
            width: degeneracy_ordering(g).width,
            k: d,
        });
    }
    let d = d.max(1);
    if k < 2 * d + 1 {
        return Err(Error::PaletteTooSmall { k, min: 2 * d + 1 });
    }
    let width = degeneracy_ordering(g).width;
    if width > d {
        return Err(Error::NotDegenerateEnough { width, k: d });
    }
    let palette = k as Colour;
    let alpha = alpha.with_palette(palette)?;
    let beta = beta.with_palette(palette)?;
    alpha.check_proper(g)?;
    beta.check_proper(g)?;

    // peel[0] is removed first, so it is added back last
    let mut peel = Vec::with_capacity(g.n());
    let mut rest = g.clone();
    while let Some(&v) = degeneracy_ordering(&rest).order.last() {
        peel.push(v);
        rest.remove_vertex(v);
    }

    let mut placed = VertexSet::new();
    let mut moves: Vec<Move> = Vec::new();
    let mut shield_moves = 0;
    for (step, &v) in peel.iter().rev().enumerate() {
        placed.insert(v);
        let h = induced_subgraph(g, &placed)?;
        let mut tr = Tracker::new(&h, alpha.restrict(&placed));
        let nb = h.neighbours(v);
        for m in &moves {
            let to = m.to();
            if nb.contains(&m.vertex()) && tr.colour(v) == to {
                let cur = tr.colour(v);
                let c = (1..=palette)
                    .find(|&c| c != cur && c != to && nb.iter().all(|&u| tr.colour(u) != c))
                    .ok_or_else(|| Error::Internal(format!("no shield colour for vertex {v}")))?;
                tr.recolour(v, c)?;
                shield_moves += 1;
            }
            tr.recolour(m.vertex(), to)?;
        }
        if tr.colour(v) != beta[v] {
            tr.recolour(v, beta[v])?;
        }
        moves = tr.finish().into_moves();
        if moves.len() > budget.hard_cap {
            return Err(Error::HardCapExceeded {
                moves: moves.len(),
                cap: budget.hard_cap,
                placed: step + 1,
                n: g.n(),
            });
        }
    }

    let seq = Sequence::from_moves(alpha, moves);
    let n = g.n();
    let soft_bound = budget.soft_bound(n);
    let within_soft_bound = seq.len() as f64 <= soft_bound;
    if !within_soft_bound {
        warn!(
            "connect used {} moves on {n} vertices, above the soft bound {soft_bound}",
            seq.len()
        );
    }
    let moves_per_vertex = seq.move_counts();
    let report = ConnectReport {
        n,
        d,
        k,
        length: seq.len(),
        shield_moves,
        soft_bound,
        within_soft_bound,
        max_moves_per_vertex: moves_per_vertex.values().copied().max().unwrap_or(0),
        moves_per_vertex,
    };
    Ok((seq, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::verify_sequence;

    #[test]
    fn path_swap() {
        let g = Graph::from_edges(3, &[(1, 2), (2, 3)]).unwrap();
        let a = Colouring::from_slice(&g, 3, &[1, 2, 1]).unwrap();
        let b = Colouring::from_slice(&g, 3, &[2, 1, 2]).unwrap();
        let s = connect_colourings(&g, 1, 3, &a, &b).unwrap();
        assert!(verify_sequence(&g, &s, Some(&b)).is_ok());
        assert!(s.len() >= 4);
    }

    #[test]
    fn equal_endpoints_give_empty_sequence() {
        let g = Graph::from_edges(3, &[(1, 2), (2, 3)]).unwrap();
        let a = Colouring::from_slice(&g, 3, &[1, 2, 1]).unwrap();
        assert!(connect_colourings(&g, 1, 3, &a, &a).unwrap().is_empty());
    }

    #[test]
    fn cycle_four() {
        let g = Graph::from_edges(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        let a = Colouring::from_slice(&g, 5, &[1, 2, 1, 2]).unwrap();
        let b = Colouring::from_slice(&g, 5, &[3, 4, 3, 4]).unwrap();
        let (s, rep) = connect_colourings_with(&g, 2, 5, &a, &b, &ConnectBudget::default()).unwrap();
        assert!(verify_sequence(&g, &s, Some(&b)).is_ok());
        assert!(s.len() >= 4);
        assert!(rep.within_soft_bound);
    }

    #[test]
    fn preconditions() {
        let g = Graph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let a = Colouring::from_slice(&g, 5, &[1, 2, 3]).unwrap();
        assert_eq!(
            connect_colourings(&g, 2, 4, &a, &a),
            Err(Error::PaletteTooSmall { k: 4, min: 5 })
        );
        assert_eq!(
            connect_colourings(&g, 1, 5, &a, &a),
            Err(Error::NotDegenerateEnough { width: 2, k: 1 })
        );
    }

    #[test]
    fn hard_cap_aborts() {
        let g = Graph::from_edges(3, &[(1, 2), (2, 3)]).unwrap();
        let a = Colouring::from_slice(&g, 3, &[1, 2, 1]).unwrap();
        let b = Colouring::from_slice(&g, 3, &[2, 1, 2]).unwrap();
        let budget = ConnectBudget::new(1.0, 1).unwrap();
        assert!(matches!(
            connect_colourings_with(&g, 1, 3, &a, &b, &budget),
            Err(Error::HardCapExceeded { cap: 1, .. })
        ));
        assert!(ConnectBudget::new(0.5, 10).is_err());
    }
}
