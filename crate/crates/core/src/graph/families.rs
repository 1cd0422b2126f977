//! Standard graph families. Vertices are labeled `0 … n−1` unless noted.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::Graph;

fn labeled(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
    let labels = labeled(n);
    let mut g = Graph::new();
    for l in &labels {
        g.add_vertex(l);
    }
    for (u, v) in edges {
        g.add_edge(&labels[u], &labels[v]).expect("family edges are simple");
    }
    g
}

/// Cycle on `n ≥ 3` vertices.
pub fn ring(n: usize) -> Graph {
    build(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Graph {
    build(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|i| (i - 1, i)))
}

/// Hub `hub` joined to leaves `l1 … lk`.
pub fn star(leaves: usize) -> Graph {
    let mut g = Graph::new();
    g.add_vertex("hub");
    for i in 1..=leaves {
        g.add_edge("hub", &format!("l{i}")).expect("star edges are simple");
    }
    g
}

/// The Petersen graph: outer 5-cycle `0…4`, inner pentagram `5…9`, spokes `i — i+5`.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    build(10, outer.chain(spokes).chain(inner))
}

/// `rows × cols` grid; vertex `r*cols + c` sits at row `r`, column `c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    build(rows * cols, edges)
}

/// Complete binary tree of the given depth in heap order (root `0`).
pub fn balanced_binary_tree(depth: u32) -> Graph {
    let n = (1usize << (depth + 1)) - 1;
    build(n, (1..n).map(|i| ((i - 1) / 2, i)))
}
