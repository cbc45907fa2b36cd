//! Small named graphs used throughout the tests and the CLI.

use crate::graph::MultiGraph;

fn build(n: usize, edges: Vec<(usize, usize)>) -> MultiGraph {
    MultiGraph::new(n, edges).expect("named graphs are well formed")
}

/// The circuit `0-1-...-(n-1)-0`.
pub fn cycle(n: usize) -> MultiGraph {
    build(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
}

/// The path on `n` vertices (`n - 1` edges).
pub fn path(n: usize) -> MultiGraph {
    build(n, (1..n).map(|i| (i - 1, i)).collect())
}

pub fn complete(n: usize) -> MultiGraph {
    let mut e = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            e.push((i, j));
        }
    }
    build(n, e)
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> MultiGraph {
    let mut e = Vec::new();
    for i in 0..a {
        for j in 0..b {
            e.push((i, a + j));
        }
    }
    build(a + b, e)
}

/// Outer 5-cycle `0..5`, spokes `i - (i+5)`, inner pentagram on `5..10`.
pub fn petersen() -> MultiGraph {
    let mut e: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    e.extend((0..5).map(|i| (i, i + 5)));
    e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
    build(10, e)
}

/// The 3-cube `Q3` on bit-string vertices `0..8`.
pub fn cube() -> MultiGraph {
    let mut e = Vec::new();
    for v in 0..8usize {
        for bit in 0..3 {
            let w = v ^ (1 << bit);
            if v < w {
                e.push((v, w));
            }
        }
    }
    build(8, e)
}

/// `K4` with every edge subdivided once (vertices `0..4` original,
/// `4..10` subdivision vertices).
pub fn subdivided_k4() -> MultiGraph {
    let mut e = Vec::new();
    let mut next = 4;
    for i in 0..4 {
        for j in i + 1..4 {
            e.push((i, next));
            e.push((next, j));
            next += 1;
        }
    }
    build(10, e)
}

/// Two vertices joined by `k` parallel edges.
pub fn dipole(k: usize) -> MultiGraph {
    build(2, vec![(0, 1); k])
}

/// Looks a graph up by name: `triangle`, `k4`, `k33`, `petersen`, `cube`,
/// `cN` (cycle), `pN` (path), `kN` (complete).
pub fn by_name(name: &str) -> Option<MultiGraph> {
    match name {
        "triangle" => Some(cycle(3)),
        "k4" => Some(complete(4)),
        "k33" => Some(complete_bipartite(3, 3)),
        "petersen" => Some(petersen()),
        "cube" => Some(cube()),
        "subdivided-k4" => Some(subdivided_k4()),
        _ => {
            let (kind, num) = name.split_at(1);
            let n: usize = num.parse().ok()?;
            match kind {
                "c" if n >= 2 => Some(cycle(n)),
                "p" if n >= 1 => Some(path(n)),
                "k" if n >= 1 => Some(complete(n)),
                _ => None,
            }
        }
    }
}
