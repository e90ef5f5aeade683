//! Taking a 6-colouring of a planar graph to a 5-colouring, with colour 7
//! available as scratch space.
//!
//! Each level picks a special independent set `I` of low-degree vertices,
//! deletes it (identifying a same-coloured neighbour pair around every
//! degree-6 member so the rest stays planar), solves the smaller graph, and
//! lifts the answer back: identified classes move together, members of `I`
//! step aside when a neighbour moves onto their colour, and any member of
//! `I` still on colour 6 is freed by Kempe swaps.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{
    greedy_maximal_independent_subset, is_independent, kempe_component, Colour, Colouring, Graph, MergeMap, Vertex,
    VertexSet,
};
use crate::moves::{Move, Sequence, Tracker};

/// Scratch colour used only inside swaps and reactions.
pub const BUFFER: Colour = 7;
const TARGET_PALETTE: Colour = 5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpecialSetReport {
    pub h: usize,
    pub low_degree: VertexSet,
    pub chosen: VertexSet,
    pub low_ratio: f64,
    pub chosen_ratio: f64,
}

/// Independent set of degree-`≤ 6` vertices holding at least `h/49` of the
/// graph. Fails with a certificate error when the degree counts rule out
/// planarity.
pub fn special_independent_set(g: &Graph) -> Result<(VertexSet, SpecialSetReport)> {
    if g.is_empty() {
        return Err(Error::InvalidParameter("special set of an empty graph".into()));
    }
    let h = g.n();
    let low: VertexSet = g.vertices().filter(|&v| g.degree(v) <= 6).collect();
    if 7 * low.len() < h {
        return Err(Error::Certificate(format!(
            "only {} of {h} vertices have degree <= 6; graph is not planar",
            low.len()
        )));
    }
    let chosen = greedy_maximal_independent_subset(g, &low)?;
    if 49 * chosen.len() < h {
        return Err(Error::Certificate(format!(
            "special set has {} < {h}/49 vertices",
            chosen.len()
        )));
    }
    let report = SpecialSetReport {
        h,
        low_ratio: low.len() as f64 / h as f64,
        chosen_ratio: chosen.len() as f64 / h as f64,
        low_degree: low,
        chosen: chosen.clone(),
    };
    Ok((chosen, report))
}

/// Result of deleting a special set and identifying pairs around it.
#[derive(Debug, Clone, PartialEq)]
pub struct Contraction {
    pub graph: Graph,
    pub colouring: Colouring,
    pub merge: MergeMap,
    pub deleted: VertexSet,
    /// `(deleted vertex, kept representative, absorbed representative)`.
    pub identifications: Vec<(Vertex, Vertex, Vertex)>,
}

/// Deletes every vertex of `special` in ascending order; a vertex that still
/// has degree 6 when reached first has its lexicographically smallest
/// same-coloured neighbour pair identified.
pub fn contract_special_set(g: &Graph, gamma: &Colouring, special: &VertexSet) -> Result<Contraction> {
    gamma.check_proper(g)?;
    if gamma.max_colour() > 6 {
        return Err(Error::InvalidParameter("colouring uses colours above 6".into()));
    }
    if !is_independent(g, special) {
        return Err(Error::InvalidParameter("special set is not independent".into()));
    }
    let mut h = g.clone();
    let mut merge = MergeMap::new(g.vertices());
    let mut identifications = Vec::new();
    for &v in special {
        let deg = h.try_neighbours(v)?.len();
        if deg > 6 {
            return Err(Error::InvalidParameter(format!("special vertex {v} has degree {deg}")));
        }
        if deg == 6 {
            let nb: Vec<Vertex> = h.neighbours(v).iter().copied().collect();
            let pair = nb
                .iter()
                .enumerate()
                .find_map(|(a, &x)| nb[a + 1..].iter().find(|&&y| gamma[x] == gamma[y]).map(|&y| (x, y)));
            let (x, y) =
                pair.ok_or_else(|| Error::Internal(format!("no same-coloured neighbour pair at vertex {v}")))?;
            debug_assert!(!h.has_edge(x, y));
            h.merge_into(x, y);
            merge.union(x, y);
            identifications.push((v, x, y));
        }
        h.remove_vertex(v);
    }
    let colouring = gamma.restrict(&h.vertex_set());
    Ok(Contraction {
        graph: h,
        colouring,
        merge,
        deleted: special.clone(),
        identifications,
    })
}

/// Lifts `seq_star` (a sequence on the contracted graph) back to `g`,
/// starting from `current`. Returns a sequence with palette 7.
pub fn replay_on_expansion(
    g: &Graph,
    seq_star: &Sequence,
    merge: &MergeMap,
    special: &VertexSet,
    current: &Colouring,
) -> Result<Sequence> {
    let start = current.with_palette(BUFFER)?;
    start.check_proper(g)?;
    let mut tr = Tracker::new(g, start);
    replay(&mut tr, seq_star.moves(), merge, special)?;
    Ok(tr.finish())
}

fn replay(tr: &mut Tracker<'_>, moves: &[Move], merge: &MergeMap, special: &VertexSet) -> Result<usize> {
    let g = tr.graph();
    let classes = merge.classes();
    let mut reactions = 0;
    for m in moves {
        let members = classes
            .get(&m.vertex())
            .ok_or_else(|| Error::Internal(format!("{} is not a class representative", m.vertex())))?;
        let to = m.to();
        for &x in members {
            if tr.colour(x) != m.from() {
                return Err(Error::Internal(format!(
                    "class of {} is not monochromatic at {x}",
                    m.vertex()
                )));
            }
            for &u in g.neighbours(x) {
                if special.contains(&u) && tr.colour(u) == to {
                    let c = tr
                        .free_colours(u, BUFFER)
                        .into_iter()
                        .find(|&c| c != to)
                        .ok_or(Error::NoFreeColour(u))?;
                    tr.recolour(u, c)?;
                    reactions += 1;
                }
            }
            tr.recolour(x, to)?;
        }
    }
    Ok(reactions)
}

/// What one Kempe fix did.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KempeOutcome {
    pub vertex: Vertex,
    /// `None` when a colour in 1..=5 was already free.
    pub pair: Option<(Colour, Colour)>,
    pub swaps: usize,
    pub moves: usize,
}

/// Moves `v` off colour 6 onto a colour in 1..=5, swapping Kempe chains
/// (through colour 7) when every such colour is present around `v`.
pub fn kempe_fix_vertex(g: &Graph, c: &Colouring, v: Vertex) -> Result<Sequence> {
    let start = c.with_palette(BUFFER)?;
    start.check_proper(g)?;
    if start.get(v) != Some(6) {
        return Err(Error::InvalidParameter(format!("vertex {v} is not coloured 6")));
    }
    if start.uses(BUFFER) {
        return Err(Error::InvalidParameter("colour 7 is in use".into()));
    }
    let mut tr = Tracker::new(g, start);
    kempe_fix(&mut tr, v)?;
    Ok(tr.finish())
}

fn kempe_fix(tr: &mut Tracker<'_>, v: Vertex) -> Result<KempeOutcome> {
    let g = tr.graph();
    let mark = tr.len();
    let nb_colours: Vec<Colour> = g.neighbours(v).iter().map(|&u| tr.colour(u)).collect();
    if let Some(c) = (1..=TARGET_PALETTE).find(|c| !nb_colours.contains(c)) {
        tr.recolour(v, c)?;
        return Ok(KempeOutcome {
            vertex: v,
            pair: None,
            swaps: 0,
            moves: 1,
        });
    }
    for i in 1..=TARGET_PALETTE {
        for j in i + 1..=TARGET_PALETTE {
            let with =
                |c: Colour| -> VertexSet { g.neighbours(v).iter().copied().filter(|&u| tr.colour(u) == c).collect() };
            let (nb_i, nb_j) = (with(i), with(j));
            let mut comps: Vec<VertexSet> = Vec::new();
            let mut ok = true;
            for &x in &nb_i {
                if comps.iter().any(|c| c.contains(&x)) {
                    continue;
                }
                let comp = kempe_component(g, tr.current(), x, i, j)?;
                if comp.iter().any(|y| nb_j.contains(y)) {
                    ok = false;
                    break;
                }
                comps.push(comp);
            }
            if !ok {
                continue;
            }
            for comp in &comps {
                swap(tr, comp, i, j)?;
            }
            tr.recolour(v, i)?;
            return Ok(KempeOutcome {
                vertex: v,
                pair: Some((i, j)),
                swaps: comps.len(),
                moves: tr.len() - mark,
            });
        }
    }
    Err(Error::KempeExhausted(v))
}

/// Exchanges colours `i` and `j` on `comp`: `j`-vertices park on 7, the
/// `i`-vertices take `j`, and the parked vertices take `i`.
fn swap(tr: &mut Tracker<'_>, comp: &VertexSet, i: Colour, j: Colour) -> Result<()> {
    let parked: Vec<Vertex> = comp.iter().copied().filter(|&x| tr.colour(x) == j).collect();
    let moving: Vec<Vertex> = comp.iter().copied().filter(|&x| tr.colour(x) == i).collect();
    for &x in &parked {
        tr.recolour(x, BUFFER)?;
    }
    for &x in &moving {
        tr.recolour(x, j)?;
    }
    for &x in &parked {
        tr.recolour(x, i)?;
    }
    if tr.current().uses(BUFFER) {
        return Err(Error::Internal("colour 7 left in use after a swap".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlanarLevel {
    pub special: SpecialSetReport,
    pub identifications: usize,
    pub reactions: usize,
    pub cleanup_moves: usize,
    pub kempe_fixes: Vec<KempeOutcome>,
    pub moves: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlanarReport {
    pub n: usize,
    pub length: usize,
    /// Outermost level first.
    pub levels: Vec<PlanarLevel>,
    /// Swap boundaries at which colour 7 was confirmed unused.
    pub swap_boundaries_checked: usize,
}

/// Takes a proper colouring with colours in 1..=6 to one in 1..=5; colour 7
/// appears only transiently. The returned sequence has palette 7.
pub fn reduce_planar_6_to_5(g: &Graph, gamma: &Colouring) -> Result<Sequence> {
    reduce_planar_6_to_5_with_report(g, gamma).map(|(s, _)| s)
}

pub fn reduce_planar_6_to_5_with_report(g: &Graph, gamma: &Colouring) -> Result<(Sequence, PlanarReport)> {
    if gamma.max_colour() > 6 {
        return Err(Error::InvalidParameter("colouring uses colours above 6".into()));
    }
    let gamma = gamma.with_palette(BUFFER)?;
    gamma.check_proper(g)?;
    let mut levels = Vec::new();
    let seq = reduce(g, &gamma, &mut levels)?;
    let end = seq.end();
    if end.max_colour() > TARGET_PALETTE {
        return Err(Error::Internal("final colouring uses colours above 5".into()));
    }
    let swap_boundaries_checked = levels.iter().flat_map(|l| &l.kempe_fixes).map(|k| k.swaps).sum();
    let report = PlanarReport {
        n: g.n(),
        length: seq.len(),
        levels,
        swap_boundaries_checked,
    };
    Ok((seq, report))
}

fn reduce(g: &Graph, gamma: &Colouring, levels: &mut Vec<PlanarLevel>) -> Result<Sequence> {
    if g.is_empty() || gamma.max_colour() <= TARGET_PALETTE {
        return Ok(Sequence::empty(gamma.clone()));
    }
    let (special, report) = special_independent_set(g)?;
    let contraction = contract_special_set(g, gamma, &special)?;
    let level_idx = levels.len();
    levels.push(PlanarLevel {
        special: report,
        identifications: contraction.identifications.len(),
        reactions: 0,
        cleanup_moves: 0,
        kempe_fixes: Vec::new(),
        moves: 0,
    });
    let sub = reduce(&contraction.graph, &contraction.colouring, levels)?;

    let mut tr = Tracker::new(g, gamma.clone());
    let reactions = replay(&mut tr, sub.moves(), &contraction.merge, &special)?;

    let mut cleanup_moves = 0;
    for &u in &special {
        if tr.colour(u) == BUFFER {
            let c = *tr.free_colours(u, 6).first().ok_or(Error::NoFreeColour(u))?;
            tr.recolour(u, c)?;
            cleanup_moves += 1;
        }
    }

    let mut fixes = Vec::new();
    while let Some(&u) = special.iter().find(|&&u| tr.colour(u) == 6) {
        if fixes.len() >= special.len() {
            return Err(Error::Certificate(format!(
                "more than |I| = {} Kempe fixes needed",
                special.len()
            )));
        }
        let before = tr.current().class(6).len();
        fixes.push(kempe_fix(&mut tr, u)?);
        let after = tr.current().class(6).len();
        if after >= before || tr.current().uses(BUFFER) {
            return Err(Error::Internal(format!("Kempe fix at {u} did not reduce colour 6")));
        }
    }

    let level = &mut levels[level_idx];
    level.reactions = reactions;
    level.cleanup_moves = cleanup_moves;
    level.kempe_fixes = fixes;
    level.moves = tr.len();
    Ok(tr.finish())
}
