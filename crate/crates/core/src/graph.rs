//! Graphs with stable integer labels, colourings, degeneracy orderings and the
//! small set of structural operations the reductions are built from.
//!
//! All tie-breaks are by ascending label (or ascending colour), so every
//! operation is a deterministic function of its inputs.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = u32;
pub type Colour = u32;
pub type VertexSet = BTreeSet<Vertex>;

/// Simple undirected graph. Labels survive vertex deletion unchanged.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<Vertex, VertexSet>,
    m: usize,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on `1..=n` with the given edges.
    pub fn from_edges(n: u32, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Graph::with_vertices(1..=n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn with_vertices(vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let mut g = Graph::new();
        for v in vertices {
            g.add_vertex(v);
        }
        g
    }

    /// Returns false if the vertex was already present.
    pub fn add_vertex(&mut self, v: Vertex) -> bool {
        if self.adj.contains_key(&v) {
            return false;
        }
        self.adj.insert(v, VertexSet::new());
        true
    }

    /// Adds the edge `uv`; returns false if it already existed.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        if u == v {
            return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
        }
        if !self.contains(u) {
            return Err(Error::UnknownVertex(u));
        }
        if !self.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
        let fresh = self.adj.get_mut(&u).unwrap().insert(v);
        self.adj.get_mut(&v).unwrap().insert(u);
        if fresh {
            self.m += 1;
        }
        Ok(fresh)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    /// Vertices in ascending label order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.adj.keys().copied().collect()
    }

    /// Neighbourhood of `v`.
    ///
    /// Panics if `v` is not a vertex; use [`Graph::try_neighbours`] for
    /// untrusted labels.
    pub fn neighbours(&self, v: Vertex) -> &VertexSet {
        self.adj
            .get(&v)
            .unwrap_or_else(|| panic!("vertex {v} is not in the graph"))
    }

    pub fn try_neighbours(&self, v: Vertex) -> Result<&VertexSet> {
        self.adj.get(&v).ok_or(Error::UnknownVertex(v))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbours(v).len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.values().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(&u).is_some_and(|nb| nb.contains(&v))
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, nb)| nb.range(u + 1..).map(move |&v| (u, v)))
    }

    pub(crate) fn remove_vertex(&mut self, v: Vertex) {
        if let Some(nb) = self.adj.remove(&v) {
            self.m -= nb.len();
            for u in nb {
                self.adj.get_mut(&u).unwrap().remove(&v);
            }
        }
    }

    /// Merges `y` into `x` in place. The caller guarantees both exist, are
    /// distinct and non-adjacent.
    pub(crate) fn merge_into(&mut self, x: Vertex, y: Vertex) {
        let nb_y = self.adj.remove(&y).unwrap();
        self.m -= nb_y.len();
        for u in nb_y {
            self.adj.get_mut(&u).unwrap().remove(&y);
            // add_edge cannot fail: x != u because x and y are non-adjacent
            self.add_edge(x, u).unwrap();
        }
    }

    /// Connected components, each as a sorted vertex set, ordered by their
    /// smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen.contains(&s) {
                continue;
            }
            let mut comp = VertexSet::new();
            let mut queue = VecDeque::from([s]);
            seen.insert(s);
            while let Some(u) = queue.pop_front() {
                comp.insert(u);
                for &w in self.neighbours(u) {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    fn check_subset(&self, s: &VertexSet) -> Result<()> {
        match s.iter().find(|&&v| !self.contains(v)) {
            Some(&v) => Err(Error::UnknownVertex(v)),
            None => Ok(()),
        }
    }
}

/// Total assignment of colours `1..=palette` to vertices. Properness is a
/// separate check, see [`is_proper`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Colouring {
    palette: Colour,
    map: BTreeMap<Vertex, Colour>,
}

impl Colouring {
    pub fn new(palette: Colour, pairs: impl IntoIterator<Item = (Vertex, Colour)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (v, c) in pairs {
            if c == 0 || c > palette {
                return Err(Error::ColourOutOfRange {
                    vertex: v,
                    colour: c,
                    palette,
                });
            }
            map.insert(v, c);
        }
        Ok(Colouring { palette, map })
    }

    /// Colours `colours[i]` on the `i`-th vertex of `g` in ascending order.
    pub fn from_slice(g: &Graph, palette: Colour, colours: &[Colour]) -> Result<Self> {
        if colours.len() != g.n() {
            return Err(Error::InvalidParameter(format!(
                "{} colours given for {} vertices",
                colours.len(),
                g.n()
            )));
        }
        Colouring::new(palette, g.vertices().zip(colours.iter().copied()))
    }

    pub fn palette(&self) -> Colour {
        self.palette
    }

    /// Same assignment under a different palette size.
    pub fn with_palette(&self, palette: Colour) -> Result<Self> {
        Colouring::new(palette, self.iter())
    }

    pub fn get(&self, v: Vertex) -> Option<Colour> {
        self.map.get(&v).copied()
    }

    pub(crate) fn set(&mut self, v: Vertex, c: Colour) {
        self.map.insert(v, c);
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Colour)> + '_ {
        self.map.iter().map(|(&v, &c)| (v, c))
    }

    /// Colours in ascending vertex order.
    pub fn values(&self) -> Vec<Colour> {
        self.map.values().copied().collect()
    }

    pub fn max_colour(&self) -> Colour {
        self.map.values().copied().max().unwrap_or(0)
    }

    pub fn uses(&self, c: Colour) -> bool {
        self.map.values().any(|&x| x == c)
    }

    pub fn class(&self, c: Colour) -> VertexSet {
        self.iter().filter(|&(_, x)| x == c).map(|(v, _)| v).collect()
    }

    pub fn restrict(&self, keep: &VertexSet) -> Colouring {
        Colouring {
            palette: self.palette,
            map: self
                .map
                .iter()
                .filter(|(v, _)| keep.contains(v))
                .map(|(&v, &c)| (v, c))
                .collect(),
        }
    }

    /// Checks that exactly the vertices of `g` are coloured.
    pub fn check_total_on(&self, g: &Graph) -> Result<()> {
        if let Some(v) = g.vertices().find(|v| !self.map.contains_key(v)) {
            return Err(Error::Uncoloured(v));
        }
        if let Some(&v) = self.map.keys().find(|&&v| !g.contains(v)) {
            return Err(Error::UnknownVertex(v));
        }
        Ok(())
    }

    /// Checks totality and properness on `g`.
    pub fn check_proper(&self, g: &Graph) -> Result<()> {
        self.check_total_on(g)?;
        match first_conflict(g, self) {
            Some((u, v)) => Err(Error::NotProper(u, v)),
            None => Ok(()),
        }
    }
}

impl Index<Vertex> for Colouring {
    type Output = Colour;

    fn index(&self, v: Vertex) -> &Colour {
        self.map.get(&v).unwrap_or_else(|| panic!("vertex {v} is not coloured"))
    }
}

/// Vertex ordering with its maximum back-degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegeneracyOrder {
    pub order: Vec<Vertex>,
    pub width: usize,
}

impl DegeneracyOrder {
    /// Wraps an arbitrary ordering of `g`, computing its width.
    pub fn from_order(g: &Graph, order: Vec<Vertex>) -> Result<Self> {
        let vs: VertexSet = order.iter().copied().collect();
        if vs.len() != order.len() || vs.len() != g.n() {
            return Err(Error::InvalidParameter(
                "ordering is not a permutation of the vertex set".into(),
            ));
        }
        g.check_subset(&vs)?;
        let width = back_degrees(g, &order).into_iter().max().unwrap_or(0);
        Ok(DegeneracyOrder { order, width })
    }

    pub fn positions(&self) -> BTreeMap<Vertex, usize> {
        self.order.iter().enumerate().map(|(i, &v)| (v, i)).collect()
    }
}

/// Back-degree of each vertex of `order`: neighbours appearing earlier.
pub fn back_degrees(g: &Graph, order: &[Vertex]) -> Vec<usize> {
    let mut placed = VertexSet::new();
    order
        .iter()
        .map(|&v| {
            let d = g.neighbours(v).iter().filter(|u| placed.contains(u)).count();
            placed.insert(v);
            d
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PartKind {
    Independent,
    Degenerate(usize),
}

/// Labelled partition of a vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexPartition {
    pub parts: Vec<VertexSet>,
    pub kinds: Vec<PartKind>,
}

impl VertexPartition {
    pub fn part_of(&self, v: Vertex) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(&v))
    }

    /// Parts are pairwise disjoint and cover exactly `V(g)`.
    pub fn check_covers(&self, g: &Graph) -> Result<()> {
        let mut seen = VertexSet::new();
        for p in &self.parts {
            for &v in p {
                if !g.contains(v) {
                    return Err(Error::UnknownVertex(v));
                }
                if !seen.insert(v) {
                    return Err(Error::Certificate(format!("vertex {v} lies in two parts")));
                }
            }
        }
        if seen.len() != g.n() {
            let missing = g.vertices().find(|v| !seen.contains(v)).unwrap();
            return Err(Error::Certificate(format!("vertex {missing} lies in no part")));
        }
        Ok(())
    }
}

/// Union-find over original labels; the representative of a class is its
/// smallest label.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MergeMap {
    parent: BTreeMap<Vertex, Vertex>,
}

impl MergeMap {
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Self {
        MergeMap {
            parent: vertices.into_iter().map(|v| (v, v)).collect(),
        }
    }

    pub fn find(&self, v: Vertex) -> Vertex {
        let mut r = v;
        while let Some(&p) = self.parent.get(&r) {
            if p == r {
                break;
            }
            r = p;
        }
        r
    }

    /// Unions the classes of `x` and `y`, returning the new representative.
    pub fn union(&mut self, x: Vertex, y: Vertex) -> Vertex {
        let (rx, ry) = (self.find(x), self.find(y));
        let (lo, hi) = if rx <= ry { (rx, ry) } else { (ry, rx) };
        self.parent.insert(hi, lo);
        self.parent.entry(lo).or_insert(lo);
        lo
    }

    /// Classes keyed by representative, members ascending.
    pub fn classes(&self) -> BTreeMap<Vertex, Vec<Vertex>> {
        let mut out: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        for &v in self.parent.keys() {
            out.entry(self.find(v)).or_default().push(v);
        }
        out
    }

    pub fn is_trivial(&self) -> bool {
        self.parent.iter().all(|(v, p)| v == p)
    }
}

/// Minimum-width ordering by repeatedly peeling a minimum-degree vertex
/// (smallest label on ties) and reversing the peel order.
pub fn degeneracy_ordering(g: &Graph) -> DegeneracyOrder {
    let mut deg: BTreeMap<Vertex, usize> = g.vertices().map(|v| (v, g.degree(v))).collect();
    let mut queue: BTreeSet<(usize, Vertex)> = deg.iter().map(|(&v, &d)| (d, v)).collect();
    let mut peeled = Vec::with_capacity(g.n());
    let mut width = 0;
    while let Some((d, v)) = queue.pop_first() {
        width = width.max(d);
        deg.remove(&v);
        peeled.push(v);
        for &u in g.neighbours(v) {
            if let Some(du) = deg.get_mut(&u) {
                queue.remove(&(*du, u));
                *du -= 1;
                queue.insert((*du, u));
            }
        }
    }
    peeled.reverse();
    DegeneracyOrder { order: peeled, width }
}

/// Colours along `ord`, each vertex taking the smallest colour missing from
/// its already-coloured neighbours. The palette is `ord.width + 1`.
pub fn greedy_colouring(g: &Graph, ord: &DegeneracyOrder) -> Colouring {
    let mut map = BTreeMap::new();
    for &v in &ord.order {
        let used: BTreeSet<Colour> = g.neighbours(v).iter().filter_map(|u| map.get(u).copied()).collect();
        let c = (1..).find(|c| !used.contains(c)).unwrap();
        map.insert(v, c);
    }
    let palette = map.values().copied().max().unwrap_or(0).max(ord.width as Colour + 1);
    Colouring { palette, map }
}

fn first_conflict(g: &Graph, c: &Colouring) -> Option<(Vertex, Vertex)> {
    g.edges().find(|&(u, v)| c.get(u) == c.get(v))
}

/// True iff `c` colours every vertex of `g` and no edge is monochromatic.
pub fn is_proper(g: &Graph, c: &Colouring) -> bool {
    g.vertices().all(|v| c.get(v).is_some()) && first_conflict(g, c).is_none()
}

/// Identifies non-adjacent `x` and `y` into `min(x, y)`.
pub fn identify_vertices(g: &Graph, x: Vertex, y: Vertex) -> Result<(Graph, MergeMap)> {
    if !g.contains(x) {
        return Err(Error::UnknownVertex(x));
    }
    if !g.contains(y) {
        return Err(Error::UnknownVertex(y));
    }
    if x == y {
        return Err(Error::SelfIdentification(x));
    }
    if g.has_edge(x, y) {
        return Err(Error::AdjacentPair(x, y));
    }
    let (keep, gone) = (x.min(y), x.max(y));
    let mut h = g.clone();
    h.merge_into(keep, gone);
    let mut mm = MergeMap::new(g.vertices());
    mm.union(keep, gone);
    Ok((h, mm))
}

/// The `(i, j)`-Kempe component containing `v`.
pub fn kempe_component(g: &Graph, c: &Colouring, v: Vertex, i: Colour, j: Colour) -> Result<VertexSet> {
    if !g.contains(v) {
        return Err(Error::UnknownVertex(v));
    }
    let cv = c.get(v).ok_or(Error::Uncoloured(v))?;
    if cv != i && cv != j {
        return Err(Error::BadSeedColour {
            vertex: v,
            colour: cv,
            i,
            j,
        });
    }
    let mut comp = VertexSet::from([v]);
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbours(u) {
            let cw = c.get(w);
            if (cw == Some(i) || cw == Some(j)) && comp.insert(w) {
                queue.push_back(w);
            }
        }
    }
    Ok(comp)
}

/// Scans `s` in ascending order, keeping each vertex with no kept neighbour.
pub fn greedy_maximal_independent_subset(g: &Graph, s: &VertexSet) -> Result<VertexSet> {
    g.check_subset(s)?;
    let mut out = VertexSet::new();
    for &v in s {
        if g.neighbours(v).iter().all(|u| !out.contains(u)) {
            out.insert(v);
        }
    }
    Ok(out)
}

pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> Result<Graph> {
    g.check_subset(s)?;
    let mut h = Graph::with_vertices(s.iter().copied());
    for &v in s {
        for &u in g.neighbours(v).range(v + 1..) {
            if s.contains(&u) {
                h.add_edge(v, u)?;
            }
        }
    }
    Ok(h)
}

pub fn delete_vertices(g: &Graph, s: &VertexSet) -> Result<Graph> {
    g.check_subset(s)?;
    let mut h = g.clone();
    for &v in s {
        h.remove_vertex(v);
    }
    Ok(h)
}

pub fn is_independent(g: &Graph, s: &VertexSet) -> bool {
    s.iter().all(|&v| g.neighbours(v).iter().all(|u| !s.contains(u)))
}
