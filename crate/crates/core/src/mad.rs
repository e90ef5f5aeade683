//! Removing colour `k + 2` from graphs of maximum average degree below
//! `k + 1`.
//!
//! If few vertices have degree at most `k`, the degree-sum argument bounds the
//! product of the high degrees by `k^O(k² √n)` and the degenerate reduction is
//! used directly. Otherwise an independent set `S` of low-degree vertices of
//! size at least `⌈2√n⌉` is peeled off, `G - S` is solved recursively, and the
//! resulting sequence is replayed on `G` with vertices of `S` stepping aside
//! whenever a neighbour moves onto their colour.

use serde::Serialize;

use crate::degenerate::reduce_one_colour_degenerate;
use crate::error::{Error, Result};
use crate::graph::{degeneracy_ordering, delete_vertices, greedy_colouring, Colour, Colouring, Graph, VertexSet};
use crate::moves::{Sequence, Tracker};

/// Parameters of the reduction: the degree bound `k` and the two `√n`
/// thresholds derived from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MadReduceConfig {
    k: usize,
}

impl MadReduceConfig {
    pub fn new(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::PaletteTooSmall { k, min: 2 });
        }
        Ok(MadReduceConfig { k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `⌈(k+1)·2·√n⌉`: at most this many degree-`≤ k` vertices means base case.
    pub fn low_degree_threshold(&self, n: usize) -> usize {
        ((self.k + 1) as f64 * 2.0 * (n as f64).sqrt()).ceil() as usize
    }

    /// `⌈2·√n⌉`: minimum size of a peeled independent set.
    pub fn peel_set_size(&self, n: usize) -> usize {
        (2.0 * (n as f64).sqrt()).ceil() as usize
    }
}

/// Degree-sum inequalities checked on one connected component in the base
/// case. `s` counts degree `≥ k+2` vertices, `t` degree `≤ k` vertices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BaseComponentCheck {
    pub h: usize,
    pub s: usize,
    pub t: usize,
    pub high_degree_sum: usize,
    /// `k(k+1)·2√h`
    pub s_bound: f64,
    /// `4k(k+1)²√h`
    pub degree_sum_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MadLevel {
    Base {
        n: usize,
        low_degree: usize,
        threshold: usize,
        components: Vec<BaseComponentCheck>,
        moves: usize,
    },
    Peel {
        n: usize,
        low_degree: usize,
        threshold: usize,
        peeled: usize,
        required: usize,
        reactions: usize,
        final_moves: usize,
    },
    Done {
        n: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MadReport {
    pub k: usize,
    pub n: usize,
    pub length: usize,
    /// Outermost level first.
    pub levels: Vec<MadLevel>,
    pub asserts_passed: usize,
    pub max_moves_per_vertex: usize,
    /// `log_k(max moves per vertex) / (k² √n)`, informational.
    pub fitted_c: f64,
}

/// Takes a proper `(k+2)`-colouring `α` of `g` to one avoiding colour `k + 2`.
///
/// `mad(g) < k + 1` is assumed, not checked; a violation surfaces as a
/// [`Error::Certificate`] from the base-case inequalities or the ordering
/// width.
pub fn reduce_one_colour_mad(g: &Graph, k: usize, alpha: &Colouring) -> Result<Sequence> {
    reduce_one_colour_mad_with_report(g, k, alpha).map(|(s, _)| s)
}

pub fn reduce_one_colour_mad_with_report(g: &Graph, k: usize, alpha: &Colouring) -> Result<(Sequence, MadReport)> {
    let cfg = MadReduceConfig::new(k)?;
    let alpha = alpha.with_palette(k as Colour + 2)?;
    alpha.check_proper(g)?;
    let mut levels = Vec::new();
    let mut asserts = 0;
    let seq = reduce(g, cfg, &alpha, &mut levels, &mut asserts)?;
    let max_moves_per_vertex = seq.move_counts().values().copied().max().unwrap_or(0);
    let fitted_c = if max_moves_per_vertex > 1 && g.n() > 0 {
        (max_moves_per_vertex as f64).ln() / (k as f64).ln() / ((k * k) as f64 * (g.n() as f64).sqrt())
    } else {
        0.0
    };
    let report = MadReport {
        k,
        n: g.n(),
        length: seq.len(),
        levels,
        asserts_passed: asserts,
        max_moves_per_vertex,
        fitted_c,
    };
    Ok((seq, report))
}

fn certificate(msg: String) -> Error {
    Error::Certificate(format!("{msg} (is mad(G) < k + 1?)"))
}

fn reduce(
    g: &Graph,
    cfg: MadReduceConfig,
    alpha: &Colouring,
    levels: &mut Vec<MadLevel>,
    asserts: &mut usize,
) -> Result<Sequence> {
    let k = cfg.k;
    let top = k as Colour + 2;
    let n = g.n();
    if !alpha.uses(top) {
        levels.push(MadLevel::Done { n });
        return Ok(Sequence::empty(alpha.clone()));
    }
    let low: VertexSet = g.vertices().filter(|&v| g.degree(v) <= k).collect();
    let threshold = cfg.low_degree_threshold(n);
    let sigma = degeneracy_ordering(g);
    if sigma.width > k {
        return Err(certificate(format!("degeneracy {} exceeds k = {k}", sigma.width)));
    }

    if low.len() <= threshold {
        let components = base_case_checks(g, k)?;
        *asserts += 3 * components.len();
        let seq = reduce_one_colour_degenerate(g, k, alpha, &sigma)?;
        levels.push(MadLevel::Base {
            n,
            low_degree: low.len(),
            threshold,
            components,
            moves: seq.len(),
        });
        return Ok(seq);
    }

    // Largest colour class of a greedy (k+1)-colouring restricted to the
    // low-degree vertices; smallest colour on ties.
    let greedy = greedy_colouring(g, &sigma);
    let peel: VertexSet = (1..=k as Colour + 1)
        .map(|c| low.iter().copied().filter(|&v| greedy[v] == c).collect::<VertexSet>())
        .fold(
            VertexSet::new(),
            |best, cls| if cls.len() > best.len() { cls } else { best },
        );
    let required = cfg.peel_set_size(n);
    if peel.len() < required {
        return Err(certificate(format!(
            "peeled set has {} < {required} vertices",
            peel.len()
        )));
    }
    *asserts += 1;
    let level_idx = levels.len();
    levels.push(MadLevel::Peel {
        n,
        low_degree: low.len(),
        threshold,
        peeled: peel.len(),
        required,
        reactions: 0,
        final_moves: 0,
    });

    let rest = delete_vertices(g, &peel)?;
    let keep = rest.vertex_set();
    let sub = reduce(&rest, cfg, &alpha.restrict(&keep), levels, asserts)?;

    let mut tr = Tracker::new(g, alpha.clone());
    let mut reactions = 0;
    for m in sub.moves() {
        let (w, to) = (m.vertex(), m.to());
        for &u in g.neighbours(w) {
            if !peel.contains(&u) || tr.colour(u) != to {
                continue;
            }
            let free = tr.free_colours(u, top);
            if free.len() < 2 {
                return Err(Error::Internal(format!(
                    "peeled vertex {u} has {} free colours",
                    free.len()
                )));
            }
            let c = free.into_iter().find(|&c| c != to).unwrap();
            tr.recolour(u, c)?;
            reactions += 1;
        }
        tr.recolour(w, to)?;
    }
    let mut final_moves = 0;
    for &u in &peel {
        if tr.colour(u) == top {
            let c = *tr.free_colours(u, top - 1).first().ok_or(Error::NoFreeColour(u))?;
            tr.recolour(u, c)?;
            final_moves += 1;
        }
    }
    if let MadLevel::Peel {
        reactions: r,
        final_moves: f,
        ..
    } = &mut levels[level_idx]
    {
        *r = reactions;
        *f = final_moves;
    }
    Ok(tr.finish())
}

/// Evaluates the base-case inequalities per connected component.
fn base_case_checks(g: &Graph, k: usize) -> Result<Vec<BaseComponentCheck>> {
    let kf = k as f64;
    let mut out = Vec::new();
    for comp in g.components() {
        let h = comp.len();
        let (mut s, mut t, mut high_degree_sum) = (0, 0, 0);
        for &v in &comp {
            let d = g.degree(v);
            if d >= k + 2 {
                s += 1;
                high_degree_sum += d;
            } else if d <= k {
                t += 1;
            }
        }
        let root = (h as f64).sqrt();
        let chk = BaseComponentCheck {
            h,
            s,
            t,
            high_degree_sum,
            s_bound: kf * (kf + 1.0) * 2.0 * root,
            degree_sum_bound: 4.0 * kf * (kf + 1.0).powi(2) * root,
        };
        if s >= k * t {
            return Err(certificate(format!(
                "component of size {h}: s = {s} >= k t = {}",
                k * t
            )));
        }
        if s as f64 >= chk.s_bound {
            return Err(certificate(format!(
                "component of size {h}: s = {s} >= k(k+1)2 sqrt(h) = {:.2}",
                chk.s_bound
            )));
        }
        if high_degree_sum as f64 >= chk.degree_sum_bound {
            return Err(certificate(format!(
                "component of size {h}: high degree sum {high_degree_sum} >= {:.2}",
                chk.degree_sum_bound
            )));
        }
        out.push(chk);
    }
    Ok(out)
}
