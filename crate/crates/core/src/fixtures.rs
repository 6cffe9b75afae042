//! Graphs used throughout the examples and tests.
//!
//! Labels follow the figures they come from: `C4` uses `a, b, c, d = 1, 2, 3, 4`
//! in cyclic order, and `G1`, `G2`, `G3` use the printed vertex numbers.

use crate::graph::Graph;

fn from_one_based(n: usize, edges: &[(usize, usize)]) -> Graph {
    let edges: Vec<_> = edges.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
    Graph::from_edges(n, &edges).expect("fixture graphs are valid")
}

pub const G1_EDGES: &[(usize, usize)] = &[
    (1, 2),
    (2, 3),
    (3, 4),
    (4, 5),
    (1, 5),
    (2, 5),
    (2, 6),
    (3, 6),
    (4, 6),
    (5, 6),
];

/// The house graph: a 5-cycle with the chord 2-5.
pub const G2_EDGES: &[(usize, usize)] = &[(1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (2, 5)];

pub const G3_EDGES: &[(usize, usize)] = &[
    (1, 2),
    (2, 3),
    (3, 4),
    (4, 5),
    (1, 5),
    (1, 6),
    (3, 6),
    (4, 6),
];

pub fn g1() -> Graph {
    from_one_based(6, G1_EDGES)
}

pub fn g2() -> Graph {
    from_one_based(5, G2_EDGES)
}

pub fn g3() -> Graph {
    from_one_based(6, G3_EDGES)
}

pub fn c4() -> Graph {
    cycle(4)
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Path on `n` vertices.
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Star `K_{1,leaves}` with centre 0.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    Graph::from_edges(leaves + 1, &edges).unwrap()
}

/// Wheel: hub 0 joined to every vertex of the cycle `1, ..., rim`.
pub fn wheel(rim: usize) -> Graph {
    assert!(rim >= 3);
    let mut edges: Vec<_> = (1..=rim).map(|i| (0, i)).collect();
    edges.extend((1..=rim).map(|i| (i, i % rim + 1)));
    Graph::from_edges(rim + 1, &edges).unwrap()
}

/// A certificate for `G1`: the chosen middle vertex for every pair at
/// distance 2, as triples `(a, b, c)`.
pub const G1_F1: &[[usize; 3]] = &[
    [1, 2, 3],
    [1, 5, 4],
    [1, 2, 6],
    [2, 6, 4],
    [3, 2, 1],
    [3, 6, 5],
    [4, 5, 1],
    [4, 6, 2],
    [5, 6, 3],
    [6, 2, 1],
];

/// The matching quadruples `(α, β, γ, δ)` of the same certificate.
pub const G1_F2: &[[usize; 4]] = &[
    [2, 1, 2, 3],
    [5, 1, 2, 3],
    [2, 1, 5, 4],
    [5, 1, 5, 4],
    [2, 1, 2, 6],
    [5, 1, 2, 6],
    [1, 2, 5, 4],
    [3, 2, 6, 4],
    [5, 2, 6, 4],
    [6, 2, 6, 4],
    [2, 3, 2, 1],
    [4, 3, 2, 1],
    [6, 3, 2, 1],
    [2, 3, 6, 5],
    [4, 3, 6, 5],
    [6, 3, 6, 5],
    [3, 4, 5, 1],
    [5, 4, 5, 1],
    [6, 4, 5, 1],
    [3, 4, 6, 2],
    [5, 4, 6, 2],
    [6, 4, 6, 2],
    [1, 5, 2, 3],
    [2, 5, 6, 3],
    [4, 5, 6, 3],
    [6, 5, 6, 3],
    [2, 6, 2, 1],
    [3, 6, 2, 1],
    [4, 6, 5, 1],
    [5, 6, 5, 1],
];
