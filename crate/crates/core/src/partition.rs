//! Certified vertex partitions: an independent set plus a degenerate rest.
//!
//! Every partition returned here is re-certified from scratch before it is
//! handed out: independence by an edge scan, degeneracy by recomputing the
//! peel width of the induced subgraph.

use std::collections::{BTreeMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{
    degeneracy_ordering, induced_subgraph, is_independent, DegeneracyOrder, Graph, PartKind, Vertex, VertexPartition,
    VertexSet,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionCertificate {
    pub part: VertexSet,
    pub kind: PartKind,
    /// Ordering of the induced subgraph with width at most `d`, for
    /// degenerate parts.
    pub witness: Option<DegeneracyOrder>,
}

/// How a partition was found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionMethod {
    Bipartite,
    DegeneracyGreedy,
    Randomized { attempt: usize },
    Backtracking { nodes: u64 },
    Supplied,
    Composite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertifiedPartition {
    pub partition: VertexPartition,
    pub certificates: Vec<PartitionCertificate>,
    pub method: PartitionMethod,
}

impl CertifiedPartition {
    pub fn part(&self, i: usize) -> &VertexSet {
        &self.partition.parts[i]
    }
}

/// Checks one part of `g` against its claimed kind.
pub fn certify_part(g: &Graph, part: &VertexSet, kind: PartKind) -> Result<PartitionCertificate> {
    match kind {
        PartKind::Independent => {
            induced_subgraph(g, part)?;
            if !is_independent(g, part) {
                return Err(Error::Certificate("part is not independent".into()));
            }
            Ok(PartitionCertificate {
                part: part.clone(),
                kind,
                witness: None,
            })
        }
        PartKind::Degenerate(d) => {
            let h = induced_subgraph(g, part)?;
            let ord = degeneracy_ordering(&h);
            if ord.width > d {
                return Err(Error::Certificate(format!(
                    "part has degeneracy {}, more than {d}",
                    ord.width
                )));
            }
            Ok(PartitionCertificate {
                part: part.clone(),
                kind,
                witness: Some(ord),
            })
        }
    }
}

/// Re-certifies every part of `p` and checks that the parts cover `g`
/// exactly once.
pub fn certify_partition(g: &Graph, p: &VertexPartition) -> Result<Vec<PartitionCertificate>> {
    if p.parts.len() != p.kinds.len() {
        return Err(Error::InvalidParameter("parts and kinds differ in length".into()));
    }
    p.check_covers(g)?;
    p.parts
        .iter()
        .zip(&p.kinds)
        .map(|(part, &kind)| certify_part(g, part, kind))
        .collect()
}

fn certified(g: &Graph, partition: VertexPartition, method: PartitionMethod) -> Result<CertifiedPartition> {
    let certificates = certify_partition(g, &partition)?;
    Ok(CertifiedPartition {
        partition,
        certificates,
        method,
    })
}

/// Splits a `k`-degenerate graph into an independent set `I` and a
/// `(k-1)`-degenerate rest `F`: scanning a degeneracy ordering, a vertex
/// joins `I` unless an earlier neighbour already has, so every vertex of `F`
/// loses at least one back-neighbour to `I`.
pub fn mihok_wood_partition(g: &Graph, k: usize) -> Result<CertifiedPartition> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    let ord = degeneracy_ordering(g);
    if ord.width > k {
        return Err(Error::NotDegenerateEnough { width: ord.width, k });
    }
    let mut indep = VertexSet::new();
    for &v in &ord.order {
        if g.neighbours(v).iter().all(|u| !indep.contains(u)) {
            indep.insert(v);
        }
    }
    let rest: VertexSet = g.vertices().filter(|v| !indep.contains(v)).collect();
    let partition = VertexPartition {
        parts: vec![indep, rest],
        kinds: vec![PartKind::Independent, PartKind::Degenerate(k - 1)],
    };
    certified(g, partition, PartitionMethod::DegeneracyGreedy)
        .map_err(|e| Error::Internal(format!("degeneracy greedy partition failed to certify: {e}")))
}

/// Search settings for [`thomassen_partition`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionSearchConfig {
    pub seed: u64,
    pub random_attempts: usize,
    /// Cap on backtracking nodes.
    pub node_cap: u64,
}

impl Default for PartitionSearchConfig {
    fn default() -> Self {
        PartitionSearchConfig {
            seed: 0,
            random_attempts: 2_000,
            node_cap: 2_000_000,
        }
    }
}

/// Partition of a planar graph into an independent set and a 3-degenerate
/// rest, found by the first strategy that succeeds: bipartition, the
/// degeneracy greedy (when the graph is 4-degenerate), seeded random maximal
/// independent sets, then exhaustive backtracking up to `cfg.node_cap`.
pub fn thomassen_partition(g: &Graph, cfg: &PartitionSearchConfig) -> Result<CertifiedPartition> {
    let kinds = vec![PartKind::Independent, PartKind::Degenerate(3)];
    if let Some(side) = bipartition(g) {
        let rest = g.vertices().filter(|v| !side.contains(v)).collect();
        let p = VertexPartition {
            parts: vec![side, rest],
            kinds,
        };
        return certified(g, p, PartitionMethod::Bipartite);
    }
    if degeneracy_ordering(g).width <= 4 {
        let mut mw = mihok_wood_partition(g, 4)?;
        debug_assert_eq!(mw.partition.kinds, kinds);
        mw.method = PartitionMethod::DegeneracyGreedy;
        return Ok(mw);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for attempt in 0..cfg.random_attempts {
        let indep = weighted_random_mis(g, &mut rng);
        let rest: VertexSet = g.vertices().filter(|v| !indep.contains(v)).collect();
        if degeneracy_ordering(&induced_subgraph(g, &rest)?).width <= 3 {
            let p = VertexPartition {
                parts: vec![indep, rest],
                kinds,
            };
            return certified(g, p, PartitionMethod::Randomized { attempt });
        }
    }

    let mut search = Backtrack::new(g, cfg.node_cap);
    if search.run(0)? {
        let indep: VertexSet = search
            .order
            .iter()
            .copied()
            .filter(|v| search.in_set[v] == Some(true))
            .collect();
        let rest: VertexSet = g.vertices().filter(|v| !indep.contains(v)).collect();
        let p = VertexPartition {
            parts: vec![indep, rest],
            kinds,
        };
        return certified(g, p, PartitionMethod::Backtracking { nodes: search.nodes });
    }
    Err(Error::SearchExhausted { explored: search.nodes })
}

/// Certifies a caller-supplied `(I, D)` split.
pub fn certify_supplied_partition(g: &Graph, indep: VertexSet, rest: VertexSet) -> Result<CertifiedPartition> {
    let p = VertexPartition {
        parts: vec![indep, rest],
        kinds: vec![PartKind::Independent, PartKind::Degenerate(3)],
    };
    certified(g, p, PartitionMethod::Supplied)
}

/// `V = I1 ∪ I2 ∪ A` with `I1`, `I2` independent and `G[A]` 2-degenerate.
pub fn corollary_partition(g: &Graph, cfg: &PartitionSearchConfig) -> Result<CertifiedPartition> {
    let first = thomassen_partition(g, cfg)?;
    corollary_from(g, first)
}

/// Completes an `(I, D)` split into `(I1, I2, A)` by splitting `G[D]`.
pub fn corollary_from(g: &Graph, first: CertifiedPartition) -> Result<CertifiedPartition> {
    let i1 = first.part(0).clone();
    let d = induced_subgraph(g, first.part(1))?;
    let second = mihok_wood_partition(&d, 3)?;
    let p = VertexPartition {
        parts: vec![i1, second.part(0).clone(), second.part(1).clone()],
        kinds: vec![PartKind::Independent, PartKind::Independent, PartKind::Degenerate(2)],
    };
    certified(g, p, PartitionMethod::Composite)
}

/// The side containing each component's smallest label, if `g` is bipartite.
fn bipartition(g: &Graph) -> Option<VertexSet> {
    let mut side: BTreeMap<Vertex, bool> = BTreeMap::new();
    for s in g.vertices() {
        if side.contains_key(&s) {
            continue;
        }
        side.insert(s, true);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let su = side[&u];
            for &w in g.neighbours(u) {
                match side.get(&w) {
                    Some(&sw) if sw == su => return None,
                    Some(_) => {}
                    None => {
                        side.insert(w, !su);
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    Some(side.into_iter().filter(|&(_, s)| s).map(|(v, _)| v).collect())
}

/// Greedy maximal independent set along a random order that favours
/// high-degree vertices (weighted sampling with weight `deg + 1`).
fn weighted_random_mis(g: &Graph, rng: &mut ChaCha8Rng) -> VertexSet {
    let mut keyed: Vec<(f64, Vertex)> = g
        .vertices()
        .map(|v| {
            let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
            (u.ln() / (g.degree(v) + 1) as f64, v)
        })
        .collect();
    keyed.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut out = VertexSet::new();
    for (_, v) in keyed {
        if g.neighbours(v).iter().all(|u| !out.contains(u)) {
            out.insert(v);
        }
    }
    out
}

/// Depth-first search over in/out assignments, highest degree first. A
/// branch dies once the vertices forced out of `I` (assigned out, or
/// blocked by a neighbour in `I`) contain a subgraph of minimum degree 4.
struct Backtrack<'g> {
    g: &'g Graph,
    order: Vec<Vertex>,
    in_set: BTreeMap<Vertex, Option<bool>>,
    nodes: u64,
    cap: u64,
}

impl<'g> Backtrack<'g> {
    fn new(g: &'g Graph, cap: u64) -> Self {
        let mut order: Vec<Vertex> = g.vertices().collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        Backtrack {
            g,
            order,
            in_set: g.vertices().map(|v| (v, None)).collect(),
            nodes: 0,
            cap,
        }
    }

    fn blocked(&self, v: Vertex) -> bool {
        self.g.neighbours(v).iter().any(|u| self.in_set[u] == Some(true))
    }

    fn forced_out_has_four_core(&self) -> bool {
        let forced: VertexSet = self
            .g
            .vertices()
            .filter(|&v| match self.in_set[&v] {
                Some(b) => !b,
                None => self.blocked(v),
            })
            .collect();
        let mut deg: BTreeMap<Vertex, usize> = forced
            .iter()
            .map(|&v| (v, self.g.neighbours(v).iter().filter(|u| forced.contains(u)).count()))
            .collect();
        let mut queue: Vec<Vertex> = deg.iter().filter(|(_, &d)| d < 4).map(|(&v, _)| v).collect();
        while let Some(v) = queue.pop() {
            if deg.remove(&v).is_none() {
                continue;
            }
            for u in self.g.neighbours(v) {
                if let Some(du) = deg.get_mut(u) {
                    *du -= 1;
                    if *du == 3 {
                        queue.push(*u);
                    }
                }
            }
        }
        !deg.is_empty()
    }

    fn run(&mut self, idx: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::SearchExhausted { explored: self.nodes });
        }
        if self.forced_out_has_four_core() {
            return Ok(false);
        }
        if idx == self.order.len() {
            return Ok(true);
        }
        let v = self.order[idx];
        if !self.blocked(v) {
            self.in_set.insert(v, Some(true));
            if self.run(idx + 1)? {
                return Ok(true);
            }
        }
        self.in_set.insert(v, Some(false));
        if self.run(idx + 1)? {
            return Ok(true);
        }
        self.in_set.insert(v, None);
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: u32) -> Graph {
        let mut g = Graph::with_vertices(1..=n);
        for u in 1..=n {
            for v in u + 1..=n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    fn icosahedron() -> Graph {
        // top 1, upper ring 2..=6, lower ring 7..=11, bottom 12
        let mut g = Graph::with_vertices(1..=12);
        for i in 0..5u32 {
            let (a, b) = (2 + i, 2 + (i + 1) % 5);
            let (c, d) = (7 + i, 7 + (i + 1) % 5);
            g.add_edge(1, a).unwrap();
            g.add_edge(a, b).unwrap();
            g.add_edge(12, c).unwrap();
            g.add_edge(c, d).unwrap();
            g.add_edge(a, c).unwrap();
            g.add_edge(b, c).unwrap();
        }
        g
    }

    #[test]
    fn mihok_wood_on_k4_and_path() {
        let p = mihok_wood_partition(&complete(4), 3).unwrap();
        assert_eq!(p.part(0).len(), 1);
        assert_eq!(p.certificates[1].witness.as_ref().unwrap().width, 2);

        let path = Graph::from_edges(5, &[(1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let p = mihok_wood_partition(&path, 1).unwrap();
        assert!(is_independent(&path, p.part(0)));
        assert_eq!(p.certificates[1].witness.as_ref().unwrap().width, 0);

        assert_eq!(
            mihok_wood_partition(&complete(4), 2).unwrap_err(),
            Error::NotDegenerateEnough { width: 3, k: 2 }
        );
    }

    #[test]
    fn bipartite_graphs_split_by_side() {
        let c6 = Graph::from_edges(6, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)]).unwrap();
        let p = thomassen_partition(&c6, &Default::default()).unwrap();
        assert_eq!(p.method, PartitionMethod::Bipartite);
        assert_eq!(p.part(0), &VertexSet::from([1, 3, 5]));
    }

    #[test]
    fn icosahedron_needs_search() {
        let g = icosahedron();
        assert_eq!(degeneracy_ordering(&g).width, 5);
        let p = thomassen_partition(&g, &Default::default()).unwrap();
        assert!(matches!(p.method, PartitionMethod::Randomized { .. }));

        let cfg = PartitionSearchConfig {
            random_attempts: 0,
            ..Default::default()
        };
        let p = thomassen_partition(&g, &cfg).unwrap();
        assert!(matches!(p.method, PartitionMethod::Backtracking { .. }));
        certify_partition(&g, &p.partition).unwrap();
    }

    #[test]
    fn search_cap_is_reported() {
        // K7 is not planar: no independent set leaves a 3-degenerate rest.
        let cfg = PartitionSearchConfig {
            random_attempts: 5,
            node_cap: 1_000,
            seed: 1,
        };
        assert!(matches!(
            thomassen_partition(&complete(7), &cfg),
            Err(Error::SearchExhausted { .. }) | Err(Error::NotDegenerateEnough { .. })
        ));
    }

    #[test]
    fn corollary_on_small_graphs() {
        let p = corollary_partition(&complete(4), &Default::default()).unwrap();
        assert_eq!(p.part(0).len(), 1);
        assert_eq!(p.part(1).len(), 1);
        assert_eq!(p.part(2).len(), 2);

        let single = Graph::with_vertices([3]);
        let p = corollary_partition(&single, &Default::default()).unwrap();
        assert_eq!(p.part(0), &VertexSet::from([3]));
        assert!(p.part(1).is_empty() && p.part(2).is_empty());
    }

    #[test]
    fn supplied_partitions_are_checked() {
        let g = complete(4);
        assert!(certify_supplied_partition(&g, VertexSet::from([1]), VertexSet::from([2, 3, 4])).is_ok());
        assert!(matches!(
            certify_supplied_partition(&g, VertexSet::from([1, 2]), VertexSet::from([3, 4])),
            Err(Error::Certificate(_))
        ));
        assert!(matches!(
            certify_supplied_partition(&g, VertexSet::from([1]), VertexSet::from([2, 3])),
            Err(Error::Certificate(_))
        ));
    }
}
