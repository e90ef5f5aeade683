//! Deterministic graph families and random colourings.
//!
//! Labels always run `1..=n`. Random choices use ChaCha8 seeded from the
//! caller, so the same parameters give the same graph on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{degeneracy_ordering, Colour, Colouring, Graph, Vertex};

pub const FAMILIES: &[&str] = &[
    "path",
    "cycle",
    "grid",
    "wheel",
    "complete",
    "star",
    "octahedron",
    "icosahedron",
    "apollonian",
    "degenerate",
];

fn build(n: u32, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Graph {
    let mut g = Graph::with_vertices(1..=n);
    for (u, v) in edges {
        g.add_edge(u, v).expect("generated edge is valid");
    }
    g
}

pub fn path(n: u32) -> Graph {
    build(n, (1..n).map(|i| (i, i + 1)))
}

pub fn cycle(n: u32) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle needs at least 3 vertices, got {n}"
        )));
    }
    Ok(build(n, (1..=n).map(|i| (i, i % n + 1))))
}

/// `rows × cols` grid, labelled row by row.
pub fn grid(rows: u32, cols: u32) -> Graph {
    let id = |r: u32, c: u32| r * cols + c + 1;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    build(rows * cols, edges)
}

/// Hub `1` joined to the cycle `2..=rim+1`.
pub fn wheel(rim: u32) -> Result<Graph> {
    if rim < 3 {
        return Err(Error::InvalidParameter(format!(
            "wheel needs a rim of at least 3, got {rim}"
        )));
    }
    let spokes = (0..rim).map(|i| (1, i + 2));
    let rim_edges = (0..rim).map(|i| (i + 2, (i + 1) % rim + 2));
    Ok(build(rim + 1, spokes.chain(rim_edges)))
}

pub fn complete(n: u32) -> Graph {
    build(n, (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))))
}

/// Centre `1` with `leaves` pendant vertices.
pub fn star(leaves: u32) -> Graph {
    build(leaves + 1, (2..=leaves + 1).map(|v| (1, v)))
}

/// `K_6` minus the perfect matching `{u, 7 - u}`.
pub fn octahedron() -> Graph {
    build(
        6,
        (1..=6u32).flat_map(|u| (u + 1..=6).filter(move |&v| u + v != 7).map(move |v| (u, v))),
    )
}

/// Top `1`, upper ring `2..=6`, lower ring `7..=11`, bottom `12`.
pub fn icosahedron() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5u32 {
        let (a, b) = (2 + i, 2 + (i + 1) % 5);
        let (c, d) = (7 + i, 7 + (i + 1) % 5);
        edges.extend([(1, a), (a, b), (12, c), (c, d), (a, c), (b, c)]);
    }
    build(12, edges)
}

/// Random Apollonian network: start from the triangle `1 2 3` and `steps`
/// times stack a new vertex into a uniformly chosen inner face.
pub fn apollonian(steps: u32, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = vec![(1, 2), (2, 3), (1, 3)];
    let mut faces: Vec<[Vertex; 3]> = vec![[1, 2, 3]];
    for v in 4..4 + steps {
        let i = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(i);
        edges.extend([(a, v), (b, v), (c, v)]);
        faces.extend([[a, b, v], [b, c, v], [a, c, v]]);
    }
    build(3 + steps, edges)
}

/// Each vertex `i` joins `min(i - 1, k)` distinct random earlier vertices,
/// so the result is `k`-degenerate.
pub fn random_degenerate(n: u32, k: u32, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 2..=n {
        let earlier: Vec<Vertex> = (1..v).collect();
        let take = (k as usize).min(earlier.len());
        for &u in earlier.choose_multiple(&mut rng, take) {
            edges.push((u, v));
        }
    }
    build(n, edges)
}

/// Builds a named family. `params` are the family's integer arguments in
/// order (`grid rows cols`, `apollonian steps`, `degenerate n k`, ...).
pub fn generate_family(name: &str, params: &[u32], seed: u64) -> Result<Graph> {
    let arg = |i: usize| {
        params
            .get(i)
            .copied()
            .ok_or_else(|| Error::InvalidParameter(format!("{name} needs at least {} parameter(s)", i + 1)))
    };
    match name {
        "path" => Ok(path(arg(0)?)),
        "cycle" => cycle(arg(0)?),
        "grid" => Ok(grid(arg(0)?, arg(1)?)),
        "wheel" => wheel(arg(0)?),
        "complete" => Ok(complete(arg(0)?)),
        "star" => Ok(star(arg(0)?)),
        "octahedron" => Ok(octahedron()),
        "icosahedron" => Ok(icosahedron()),
        "apollonian" => Ok(apollonian(arg(0)?, seed)),
        "degenerate" => Ok(random_degenerate(arg(0)?, arg(1)?, seed)),
        _ => Err(Error::UnknownFamily(name.to_string())),
    }
}

/// Random proper colouring with colours `1..=palette`: vertices are coloured
/// along a degeneracy ordering, each with a uniformly chosen free colour.
pub fn random_proper_colouring(g: &Graph, palette: Colour, seed: u64) -> Result<Colouring> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = Colouring::new(palette, [])?;
    for v in degeneracy_ordering(g).order {
        let free: Vec<Colour> = (1..=palette)
            .filter(|&x| g.neighbours(v).iter().all(|&u| c.get(u) != Some(x)))
            .collect();
        let &x = free.choose(&mut rng).ok_or(Error::NoFreeColour(v))?;
        c.set(v, x);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        let g = grid(3, 3);
        assert_eq!((g.n(), g.m()), (9, 12));
        let w = wheel(5).unwrap();
        assert_eq!((w.n(), w.m()), (6, 10));
        let a = apollonian(10, 1);
        assert_eq!((a.n(), a.m()), (13, 3 * 13 - 6));
        assert_eq!(octahedron().m(), 12);
        let ico = icosahedron();
        assert_eq!(ico.m(), 30);
        assert!(ico.vertices().all(|v| ico.degree(v) == 5));
        assert_eq!(cycle(5).unwrap().m(), 5);
        assert_eq!(star(4).m(), 4);
        assert_eq!(complete(5).m(), 10);
    }

    #[test]
    fn seeded_generators_repeat() {
        assert_eq!(apollonian(40, 7), apollonian(40, 7));
        assert_ne!(apollonian(40, 7), apollonian(40, 8));
        let g = random_degenerate(30, 3, 5);
        assert_eq!(g, random_degenerate(30, 3, 5));
        assert!(degeneracy_ordering(&g).width <= 3);
    }

    #[test]
    fn named_families() {
        assert_eq!(generate_family("grid", &[2, 4], 0).unwrap(), grid(2, 4));
        assert_eq!(
            generate_family("hypercube", &[3], 0),
            Err(Error::UnknownFamily("hypercube".into()))
        );
        assert!(matches!(
            generate_family("grid", &[2], 0),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn random_colourings_are_proper() {
        let g = apollonian(60, 3);
        let c = random_proper_colouring(&g, 7, 11).unwrap();
        c.check_proper(&g).unwrap();
        assert_eq!(c, random_proper_colouring(&g, 7, 11).unwrap());
        assert!(random_proper_colouring(&complete(4), 3, 0).is_err());
    }
}
