//! Small named graphs used by tests, examples and the CLI.

use crate::graph::Graph;

/// Three parallel edges between two vertices.
pub fn theta() -> Graph {
    Graph::from_edges(2, &[(0, 1), (0, 1), (0, 1)])
}

pub fn k4() -> Graph {
    Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
}

pub fn k33() -> Graph {
    let mut e = Vec::new();
    for a in 0..3 {
        for b in 3..6 {
            e.push((a, b));
        }
    }
    Graph::from_edges(6, &e)
}

/// Two triangles `0 1 2` and `3 4 5` joined by the matching `i -- i+3`.
pub fn prism() -> Graph {
    Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
}

/// Outer 5-circuit `0..5`, spokes `i -- i+5`, inner pentagram.
pub fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
    }
    for i in 0..5 {
        e.push((i, i + 5));
    }
    for i in 0..5 {
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &e)
}

/// The prism over a `k`-circuit (circular ladder), `k >= 2`.
pub fn circular_ladder(k: usize) -> Graph {
    let mut e = Vec::new();
    for i in 0..k {
        e.push((i, (i + 1) % k));
    }
    for i in 0..k {
        e.push((k + i, k + (i + 1) % k));
    }
    for i in 0..k {
        e.push((i, k + i));
    }
    Graph::from_edges(2 * k, &e)
}

/// Möbius ladder on `2k` vertices: a `2k`-circuit plus its long diagonals.
pub fn mobius_ladder(k: usize) -> Graph {
    let n = 2 * k;
    let mut e = Vec::new();
    for i in 0..n {
        e.push((i, (i + 1) % n));
    }
    for i in 0..k {
        e.push((i, i + k));
    }
    Graph::from_edges(n, &e)
}

/// Two copies of K4 minus an edge, joined by two edges: bridgeless but
/// with a cycle-separating 2-edge-cut.
pub fn double_diamond() -> Graph {
    Graph::from_edges(
        8,
        &[
            (0, 1),
            (0, 2),
            (1, 2),
            (1, 3),
            (2, 3),
            (4, 5),
            (4, 6),
            (5, 6),
            (5, 7),
            (6, 7),
            (0, 4),
            (3, 7),
        ],
    )
}
