//! Brute-force search over the reconfiguration graph `R_k(G)`.
//!
//! Only meant for small instances: every state is a proper colouring encoded
//! as a radix-`k` integer over the ascending vertex order, and an instance is
//! refused as soon as `k^n` exceeds [`StateSpaceLimits::max_states`].

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Colour, Colouring, Graph, Vertex};
use crate::moves::{Move, Sequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateSpaceLimits {
    /// Largest `k^n` accepted. Memory use grows linearly with the number of
    /// proper colourings actually reached, which is at most this.
    pub max_states: u64,
}

impl Default for StateSpaceLimits {
    fn default() -> Self {
        StateSpaceLimits { max_states: 5_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentSummary {
    pub connected: bool,
    /// `None` when `R_k(G)` is disconnected or empty.
    pub diameter: Option<usize>,
    pub proper_colourings: usize,
    pub components: usize,
    pub largest_component: usize,
    pub frozen: usize,
}

/// Dense view of the graph used while searching.
struct Space {
    vertices: Vec<Vertex>,
    nbrs: Vec<Vec<usize>>,
    k: Colour,
    pow: Vec<u64>,
}

impl Space {
    fn new(g: &Graph, k: usize, limits: Option<&StateSpaceLimits>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("palette must be at least 1".into()));
        }
        let n = g.n();
        let bound = (k as f64).powi(n as i32);
        if let Some(limits) = limits.filter(|l| bound > l.max_states as f64) {
            return Err(Error::TooLarge {
                bound,
                cap: limits.max_states,
            });
        }
        let vertices: Vec<Vertex> = g.vertices().collect();
        let index: HashMap<Vertex, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let nbrs = vertices
            .iter()
            .map(|&v| g.neighbours(v).iter().map(|u| index[u]).collect())
            .collect();
        let mut pow = Vec::with_capacity(n);
        let mut p = 1u64;
        for _ in 0..n {
            pow.push(p);
            p = p.saturating_mul(k as u64);
        }
        Ok(Space {
            vertices,
            nbrs,
            k: k as Colour,
            pow,
        })
    }

    fn encode(&self, c: &Colouring) -> u64 {
        self.vertices
            .iter()
            .zip(&self.pow)
            .map(|(&v, &p)| (c[v] - 1) as u64 * p)
            .sum()
    }

    fn digits(&self, mut s: u64) -> Vec<Colour> {
        let k = self.k as u64;
        (0..self.vertices.len())
            .map(|_| {
                let d = (s % k) as Colour + 1;
                s /= k;
                d
            })
            .collect()
    }

    fn decode(&self, s: u64) -> Colouring {
        let pairs = self.vertices.iter().copied().zip(self.digits(s));
        Colouring::new(self.k, pairs).expect("digits lie in the palette")
    }

    /// Valid single-vertex recolourings, ascending by (vertex, colour), as
    /// `(vertex index, new colour)`.
    fn moves_from(&self, digits: &[Colour]) -> Vec<(usize, Colour)> {
        let mut out = Vec::new();
        for (i, nb) in self.nbrs.iter().enumerate() {
            for c in 1..=self.k {
                if c != digits[i] && nb.iter().all(|&j| digits[j] != c) {
                    out.push((i, c));
                }
            }
        }
        out
    }

    fn successors(&self, s: u64) -> Vec<u64> {
        let digits = self.digits(s);
        self.moves_from(&digits)
            .into_iter()
            .map(|(i, c)| s - (digits[i] - 1) as u64 * self.pow[i] + (c - 1) as u64 * self.pow[i])
            .collect()
    }

    fn is_proper(&self, digits: &[Colour]) -> bool {
        self.nbrs
            .iter()
            .enumerate()
            .all(|(i, nb)| nb.iter().all(|&j| digits[i] != digits[j]))
    }
}

/// All valid single-vertex recolourings of `c` within palette `k`, in
/// ascending (vertex, colour) order.
pub fn single_moves(g: &Graph, k: usize, c: &Colouring) -> Result<Vec<Move>> {
    c.check_total_on(g)?;
    let space = Space::new(g, k, None)?;
    let c = c.with_palette(k as Colour)?;
    let digits: Vec<Colour> = space.vertices.iter().map(|&v| c[v]).collect();
    space
        .moves_from(&digits)
        .into_iter()
        .map(|(i, to)| Move::new(space.vertices[i], digits[i], to))
        .collect()
}

/// A shortest sequence from `α` to `β` in `R_k(G)`, or `None` if `β` is
/// unreachable.
pub fn shortest_sequence(g: &Graph, k: usize, alpha: &Colouring, beta: &Colouring) -> Result<Option<Sequence>> {
    shortest_sequence_with(g, k, alpha, beta, &StateSpaceLimits::default())
}

pub fn shortest_sequence_with(
    g: &Graph,
    k: usize,
    alpha: &Colouring,
    beta: &Colouring,
    limits: &StateSpaceLimits,
) -> Result<Option<Sequence>> {
    let space = Space::new(g, k, Some(limits))?;
    let alpha = alpha.with_palette(k as Colour)?;
    let beta = beta.with_palette(k as Colour)?;
    alpha.check_proper(g)?;
    beta.check_proper(g)?;
    let (src, dst) = (space.encode(&alpha), space.encode(&beta));

    // first discovery wins, so parents follow the ascending move order
    let mut parent: HashMap<u64, u64> = HashMap::new();
    parent.insert(src, src);
    let mut queue = VecDeque::from([src]);
    let mut found = src == dst;
    while let Some(s) = queue.pop_front() {
        if found {
            break;
        }
        for t in space.successors(s) {
            if parent.contains_key(&t) {
                continue;
            }
            parent.insert(t, s);
            if t == dst {
                found = true;
                break;
            }
            queue.push_back(t);
        }
    }
    if !found {
        return Ok(None);
    }

    let mut path = vec![dst];
    while let Some(&last) = path.last() {
        let p = parent[&last];
        if p == last {
            break;
        }
        path.push(p);
    }
    path.reverse();
    let moves = path
        .windows(2)
        .map(|w| {
            let (a, b) = (space.digits(w[0]), space.digits(w[1]));
            let i = (0..a.len()).find(|&i| a[i] != b[i]).expect("consecutive states differ");
            Move::new(space.vertices[i], a[i], b[i])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(Sequence::from_moves(space.decode(src), moves)))
}

/// Connectivity and diameter of `R_k(G)`.
pub fn component_and_diameter(g: &Graph, k: usize) -> Result<ComponentSummary> {
    component_and_diameter_with(g, k, &StateSpaceLimits::default())
}

pub fn component_and_diameter_with(g: &Graph, k: usize, limits: &StateSpaceLimits) -> Result<ComponentSummary> {
    let space = Space::new(g, k, Some(limits))?;
    let total = space.pow.last().map_or(1, |&p| p * k as u64);

    let states: Vec<u64> = (0..total).filter(|&s| space.is_proper(&space.digits(s))).collect();
    let index: HashMap<u64, usize> = states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let adj: Vec<Vec<usize>> = states
        .iter()
        .map(|&s| space.successors(s).into_iter().map(|t| index[&t]).collect())
        .collect();

    let n = states.len();
    let mut comp = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        comp[start] = id;
        let mut stack = vec![start];
        let mut size = 0;
        while let Some(x) = stack.pop() {
            size += 1;
            for &y in &adj[x] {
                if comp[y] == usize::MAX {
                    comp[y] = id;
                    stack.push(y);
                }
            }
        }
        sizes.push(size);
    }

    let connected = sizes.len() == 1;
    let diameter = connected.then(|| {
        let mut best = 0;
        let mut dist = vec![usize::MAX; n];
        for start in 0..n {
            dist.fill(usize::MAX);
            dist[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                best = best.max(dist[x]);
                for &y in &adj[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
        }
        best
    });

    Ok(ComponentSummary {
        connected,
        diameter,
        proper_colourings: n,
        components: sizes.len(),
        largest_component: sizes.iter().copied().max().unwrap_or(0),
        frozen: adj.iter().filter(|a| a.is_empty()).count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::verify_sequence;

    fn path3() -> Graph {
        Graph::from_edges(3, &[(1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn p3_geodesic() {
        let g = path3();
        let a = Colouring::from_slice(&g, 3, &[1, 2, 1]).unwrap();
        let b = Colouring::from_slice(&g, 3, &[2, 1, 2]).unwrap();
        let s = shortest_sequence(&g, 3, &a, &b).unwrap().unwrap();
        assert_eq!(s.len(), 4);
        assert!(verify_sequence(&g, &s, Some(&b)).is_ok());
        assert!(shortest_sequence(&g, 3, &a, &a).unwrap().unwrap().is_empty());
    }

    #[test]
    fn frozen_triangle() {
        let g = Graph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let a = Colouring::from_slice(&g, 3, &[1, 2, 3]).unwrap();
        let b = Colouring::from_slice(&g, 3, &[2, 1, 3]).unwrap();
        assert_eq!(shortest_sequence(&g, 3, &a, &b).unwrap(), None);
        let sum = component_and_diameter(&g, 3).unwrap();
        assert!(!sum.connected);
        assert_eq!(sum.diameter, None);
        assert_eq!((sum.proper_colourings, sum.components, sum.frozen), (6, 6, 6));
    }

    #[test]
    fn small_diameters() {
        let k2 = Graph::from_edges(2, &[(1, 2)]).unwrap();
        let sum = component_and_diameter(&k2, 3).unwrap();
        assert!(sum.connected);
        assert_eq!(sum.diameter, Some(3));
        assert_eq!(sum.proper_colourings, 6);

        let k1 = Graph::from_edges(1, &[]).unwrap();
        assert_eq!(component_and_diameter(&k1, 2).unwrap().diameter, Some(1));
    }

    #[test]
    fn swap_on_edge_with_seven_colours() {
        let g = Graph::from_edges(2, &[(1, 2)]).unwrap();
        let a = Colouring::from_slice(&g, 7, &[1, 2]).unwrap();
        let b = Colouring::from_slice(&g, 7, &[2, 1]).unwrap();
        let s = shortest_sequence(&g, 7, &a, &b).unwrap().unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.moves()[0], Move::new(1, 1, 3).unwrap());
    }

    #[test]
    fn refuses_large_instances() {
        let g = Graph::from_edges(10, &[]).unwrap();
        assert!(matches!(component_and_diameter(&g, 7), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn single_moves_listing() {
        let g = path3();
        let c = Colouring::from_slice(&g, 3, &[1, 2, 1]).unwrap();
        let got: Vec<(Vertex, Colour)> = single_moves(&g, 3, &c)
            .unwrap()
            .iter()
            .map(|m| (m.vertex(), m.to()))
            .collect();
        assert_eq!(got, vec![(1, 3), (2, 3), (3, 3)]);
    }
}
