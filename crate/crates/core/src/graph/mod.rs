//! Graph model, degree-distribution entropies and spanning trees.
//!
//! Vertices carry string ids and keep insertion order; that order is the
//! vertex index used throughout (`0..vertex_count()`). Edges are unordered,
//! without self-loops or multi-edges, and also keep insertion order.

mod entropy;
pub mod families;
mod spanning;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

pub use entropy::{
    conditional_graph_entropy, degree_pmf, graph_entropy, graph_kl_divergence,
    graph_mutual_information, in_out_degree_pmfs, is_regular, tsallis_graph_entropy, Correspondence,
};
pub use spanning::{
    enumerate_spanning_trees, for_each_spanning_tree, kirchhoff_tree_count, minimum_spanning_tree,
    mst_entropy_extrema, spanning_tree_entropy_extrema, EntropyExtrema, ENUMERATION_LIMIT,
};

use crate::{Error, Result};

/// Simple undirected graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from an edge list, creating vertices on first sight.
    pub fn from_edges<I, S>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut g = Self::new();
        for (a, b) in edges {
            g.add_edge(a.as_ref(), b.as_ref())?;
        }
        Ok(g)
    }

    /// Returns the index of `label`, inserting it if absent.
    pub fn add_vertex(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.into());
        self.index.insert(label.into(), i);
        self.adjacency.push(Vec::new());
        i
    }

    /// Adds the edge `{a, b}` and returns its index.
    pub fn add_edge(&mut self, a: &str, b: &str) -> Result<usize> {
        if a == b {
            return Err(Error::InvalidGraph(format!("self-loop at `{a}`")));
        }
        let u = self.add_vertex(a);
        let v = self.add_vertex(b);
        self.connect(u, v)
    }

    fn connect(&mut self, u: usize, v: usize) -> Result<usize> {
        if self.adjacency[u].contains(&v) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge `{}`-`{}`",
                self.labels[u], self.labels[v]
            )));
        }
        self.adjacency[u].push(v);
        self.adjacency[v].push(u);
        self.edges.push((u.min(v), u.max(v)));
        Ok(self.edges.len() - 1)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label).ok_or_else(|| Error::UnknownVertex(label.into()))
    }

    /// Edges as `(min index, max index)` pairs in insertion order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency.get(u).is_some_and(|n| n.contains(&v))
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.iter().position(|&e| e == key)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    pub fn is_tree(&self) -> bool {
        self.vertex_count() > 0 && self.edge_count() + 1 == self.vertex_count() && self.is_connected()
    }

    /// Same vertices, keeping only the listed edges.
    pub fn edge_subgraph(&self, edge_ids: &[usize]) -> Graph {
        let mut g = Graph::new();
        for label in &self.labels {
            g.add_vertex(label);
        }
        for &e in edge_ids {
            let (u, v) = self.edges[e];
            g.connect(u, v).expect("subset of a simple graph is simple");
        }
        g
    }
}

/// Undirected graph with a finite nonnegative weight per edge.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct WeightedGraph {
    graph: Graph,
    weights: Vec<f64>,
}

impl WeightedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges<I, S>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, S, f64)>,
        S: AsRef<str>,
    {
        let mut g = Self::new();
        for (a, b, w) in edges {
            g.add_edge(a.as_ref(), b.as_ref(), w)?;
        }
        Ok(g)
    }

    /// Gives every edge of `graph` the same weight.
    pub fn uniform(graph: Graph, weight: f64) -> Result<Self> {
        check_weight(weight)?;
        let weights = vec![weight; graph.edge_count()];
        Ok(Self { graph, weights })
    }

    pub fn add_vertex(&mut self, label: &str) -> usize {
        self.graph.add_vertex(label)
    }

    pub fn add_edge(&mut self, a: &str, b: &str, weight: f64) -> Result<usize> {
        check_weight(weight)?;
        let e = self.graph.add_edge(a, b)?;
        self.weights.push(weight);
        Ok(e)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, edge: usize) -> f64 {
        self.weights[edge]
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Same vertices, keeping only the listed edges and their weights.
    pub fn edge_subgraph(&self, edge_ids: &[usize]) -> WeightedGraph {
        WeightedGraph {
            graph: self.graph.edge_subgraph(edge_ids),
            weights: edge_ids.iter().map(|&e| self.weights[e]).collect(),
        }
    }
}

fn check_weight(weight: f64) -> Result<()> {
    if weight.is_finite() && weight >= 0.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange { name: "edge weight", value: weight })
    }
}

/// Directed graph without self-loops or repeated arcs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DiGraph {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    arcs: Vec<(usize, usize)>,
}

impl DiGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_arcs<I, S>(arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut g = Self::new();
        for (a, b) in arcs {
            g.add_arc(a.as_ref(), b.as_ref())?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.into());
        self.index.insert(label.into(), i);
        i
    }

    pub fn add_arc(&mut self, from: &str, to: &str) -> Result<usize> {
        if from == to {
            return Err(Error::InvalidGraph(format!("self-loop at `{from}`")));
        }
        let u = self.add_vertex(from);
        let v = self.add_vertex(to);
        if self.arcs.contains(&(u, v)) {
            return Err(Error::InvalidGraph(format!("duplicate arc `{from}` -> `{to}`")));
        }
        self.arcs.push((u, v));
        Ok(self.arcs.len() - 1)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }
}

/// A color label for every vertex of a graph, indexed like the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexColoring {
    colors: Vec<String>,
}

impl VertexColoring {
    /// Builds a total coloring of `graph` from `(vertex, color)` pairs.
    pub fn new<I, A, B>(graph: &Graph, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: Into<String>,
    {
        let mut colors: Vec<Option<String>> = vec![None; graph.vertex_count()];
        for (v, c) in pairs {
            let i = graph.require(v.as_ref())?;
            colors[i] = Some(c.into());
        }
        let colors = colors
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.ok_or_else(|| Error::PartialColoring(graph.label(i).into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { colors })
    }

    pub fn color(&self, v: usize) -> &str {
        &self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_multi_edges() {
        let mut g = Graph::new();
        assert!(g.add_edge("a", "a").is_err());
        g.add_edge("a", "b").unwrap();
        assert!(g.add_edge("b", "a").is_err());
        let mut d = DiGraph::new();
        d.add_arc("a", "b").unwrap();
        d.add_arc("b", "a").unwrap();
        assert!(d.add_arc("a", "b").is_err());
    }

    #[test]
    fn weights_must_be_finite_and_nonnegative() {
        let mut g = WeightedGraph::new();
        assert!(g.add_edge("a", "b", -1.0).is_err());
        assert!(g.add_edge("a", "b", f64::NAN).is_err());
        assert!(g.add_edge("a", "b", 0.0).is_ok());
    }

    #[test]
    fn coloring_must_be_total() {
        let g = Graph::from_edges([("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(
            VertexColoring::new(&g, [("a", "x"), ("b", "y")]),
            Err(Error::PartialColoring("c".into()))
        );
        assert_eq!(
            VertexColoring::new(&g, [("zz", "x")]),
            Err(Error::UnknownVertex("zz".into()))
        );
    }

    #[test]
    fn connectivity() {
        let mut g = Graph::from_edges([("a", "b")]).unwrap();
        assert!(g.is_connected() && g.is_tree());
        g.add_vertex("c");
        assert!(!g.is_connected());
    }
}
