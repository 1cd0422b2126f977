use alloc::vec;
use alloc::vec::Vec;

use super::{Graph, WeightedGraph};
use crate::{Error, Result};

/// Largest vertex count accepted by the exhaustive spanning-tree routines.
pub const ENUMERATION_LIMIT: usize = 9;

/// Relative slack used when deciding that two tree weights are equal.
const WEIGHT_TIE_TOLERANCE: f64 = 1e-9;

#[derive(Clone)]
struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

fn check_enumerable(g: &Graph) -> Result<()> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::InvalidGraph("no vertices".into()));
    }
    if n > ENUMERATION_LIMIT {
        return Err(Error::TooLarge { vertices: n, limit: ENUMERATION_LIMIT });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Calls `visit` with the edge ids of every spanning tree of `g`.
///
/// Trees arrive in lexicographic order of their sorted edge-id lists.
pub fn for_each_spanning_tree<F>(g: &Graph, mut visit: F) -> Result<()>
where
    F: FnMut(&[usize]),
{
    check_enumerable(g)?;
    let mut chosen = Vec::with_capacity(g.vertex_count() - 1);
    extend(g, 0, &mut chosen, DisjointSet::new(g.vertex_count()), &mut visit);
    Ok(())
}

fn extend<F: FnMut(&[usize])>(
    g: &Graph,
    next: usize,
    chosen: &mut Vec<usize>,
    sets: DisjointSet,
    visit: &mut F,
) {
    let needed = g.vertex_count() - 1 - chosen.len();
    if needed == 0 {
        visit(chosen);
        return;
    }
    if g.edge_count() - next < needed {
        return;
    }
    let (u, v) = g.edges()[next];
    let mut with = sets.clone();
    if with.union(u, v) {
        chosen.push(next);
        extend(g, next + 1, chosen, with, visit);
        chosen.pop();
    }
    extend(g, next + 1, chosen, sets, visit);
}

/// All spanning trees of a connected graph with at most
/// [`ENUMERATION_LIMIT`] vertices.
pub fn enumerate_spanning_trees(g: &Graph) -> Result<Vec<Graph>> {
    let mut trees = Vec::new();
    for_each_spanning_tree(g, |edges| trees.push(g.edge_subgraph(edges)))?;
    debug_assert_eq!(Some(trees.len() as u128), kirchhoff_tree_count(g));
    Ok(trees)
}

/// Number of spanning trees from the matrix-tree theorem: the determinant
/// of the Laplacian with one row and column removed (exact Bareiss
/// elimination). `None` if an intermediate value overflows.
pub fn kirchhoff_tree_count(g: &Graph) -> Option<u128> {
    let n = g.vertex_count();
    if n == 0 {
        return Some(0);
    }
    let size = n - 1;
    let mut m = vec![vec![0i128; size]; size];
    for &(u, v) in g.edges() {
        for (a, b) in [(u, v), (v, u)] {
            if a < size {
                m[a][a] += 1;
                if b < size {
                    m[a][b] -= 1;
                }
            }
        }
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..size {
        if m[k][k] == 0 {
            let Some(pivot) = (k + 1..size).find(|&r| m[r][k] != 0) else {
                return Some(0);
            };
            m.swap(k, pivot);
            sign = -sign;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = m[i][j].checked_mul(m[k][k])?.checked_sub(m[i][k].checked_mul(m[k][j])?)?;
                m[i][j] = num / prev;
            }
        }
        prev = m[k][k];
    }
    let det = if size == 0 { 1 } else { sign * m[size - 1][size - 1] };
    u128::try_from(det).ok()
}

fn tree_entropy(n: usize, edges: &[(usize, usize)], ids: &[usize]) -> f64 {
    let mut degree = vec![0u32; n];
    for &e in ids {
        let (u, v) = edges[e];
        degree[u] += 1;
        degree[v] += 1;
    }
    let total = f64::from(2 * ids.len() as u32);
    degree
        .iter()
        .filter(|&&d| d > 0)
        .map(|&d| {
            let p = f64::from(d) / total;
            -p * libm::log2(p)
        })
        .sum::<f64>()
        .max(0.0)
}

/// Smallest and largest graph entropy over a family of spanning trees.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyExtrema {
    pub min: f64,
    pub max: f64,
    pub argmin: Graph,
    pub argmax: Graph,
    /// Trees the extrema were taken over.
    pub trees: usize,
}

struct Tracker {
    min: (f64, Vec<usize>),
    max: (f64, Vec<usize>),
    trees: usize,
}

impl Tracker {
    fn new() -> Self {
        Self { min: (f64::INFINITY, Vec::new()), max: (f64::NEG_INFINITY, Vec::new()), trees: 0 }
    }

    fn offer(&mut self, h: f64, ids: &[usize]) {
        self.trees += 1;
        if h < self.min.0 {
            self.min = (h, ids.to_vec());
        }
        if h > self.max.0 {
            self.max = (h, ids.to_vec());
        }
    }

    fn finish(self, g: &Graph) -> EntropyExtrema {
        EntropyExtrema {
            min: self.min.0,
            max: self.max.0,
            argmin: g.edge_subgraph(&self.min.1),
            argmax: g.edge_subgraph(&self.max.1),
            trees: self.trees,
        }
    }
}

/// Entropy extrema over every spanning tree; ties keep the first tree in
/// enumeration order.
///
/// A single-vertex graph has one empty spanning tree, whose entropy is
/// reported as 0.
pub fn spanning_tree_entropy_extrema(g: &Graph) -> Result<EntropyExtrema> {
    let mut tracker = Tracker::new();
    for_each_spanning_tree(g, |ids| tracker.offer(tree_entropy(g.vertex_count(), g.edges(), ids), ids))?;
    Ok(tracker.finish(g))
}

fn tree_weight(g: &WeightedGraph, ids: &[usize]) -> f64 {
    ids.iter().map(|&e| g.weight(e)).sum()
}

fn same_weight(a: f64, b: f64) -> bool {
    (a - b).abs() <= WEIGHT_TIE_TOLERANCE * a.abs().max(b.abs()).max(1.0)
}

/// Entropy extrema over the minimum-weight spanning trees only.
pub fn mst_entropy_extrema(g: &WeightedGraph) -> Result<EntropyExtrema> {
    let graph = g.graph();
    let mut best = f64::INFINITY;
    for_each_spanning_tree(graph, |ids| best = best.min(tree_weight(g, ids)))?;
    let mut tracker = Tracker::new();
    for_each_spanning_tree(graph, |ids| {
        if same_weight(tree_weight(g, ids), best) {
            tracker.offer(tree_entropy(graph.vertex_count(), graph.edges(), ids), ids);
        }
    })?;
    Ok(tracker.finish(graph))
}

/// Kruskal's algorithm. Edges are considered by weight, then by the
/// lexicographically smaller endpoint id, then the larger one.
pub fn minimum_spanning_tree(g: &WeightedGraph) -> Result<WeightedGraph> {
    let graph = g.graph();
    if graph.vertex_count() == 0 {
        return Err(Error::InvalidGraph("no vertices".into()));
    }
    let key = |e: usize| {
        let (u, v) = graph.edges()[e];
        let (a, b) = (graph.label(u), graph.label(v));
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    };
    let mut order: Vec<usize> = (0..graph.edge_count()).collect();
    order.sort_by(|&x, &y| g.weight(x).total_cmp(&g.weight(y)).then_with(|| key(x).cmp(&key(y))));

    let mut sets = DisjointSet::new(graph.vertex_count());
    let mut chosen = Vec::with_capacity(graph.vertex_count() - 1);
    for e in order {
        let (u, v) = graph.edges()[e];
        if sets.union(u, v) {
            chosen.push(e);
            if chosen.len() + 1 == graph.vertex_count() {
                break;
            }
        }
    }
    if chosen.len() + 1 != graph.vertex_count() {
        return Err(Error::Disconnected);
    }
    chosen.sort_unstable();
    Ok(g.edge_subgraph(&chosen))
}
