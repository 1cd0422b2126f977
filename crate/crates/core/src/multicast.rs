//! Multicast planning on weighted connected graphs.
//!
//! The pipeline takes the minimum spanning tree of the graph, roots it at
//! the chosen source, keeps at most `D` children per node (lightest edges
//! first) to obtain an embedded D-ary tree, and places the receivers at the
//! Huffman codewords of their importance. The plan is optimal twice over:
//! the tree has minimal total weight and, within the embedded tree, the
//! importance-weighted hop depth is minimal among prefix-free placements.
//!
//! Multicast traffic is assumed to stay on tree edges.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{for_each_spanning_tree, minimum_spanning_tree, WeightedGraph};
use crate::hierarchy::{verify_paths, SecurityReport};
use crate::source_coding::{huffman_code, Codeword};
use crate::{Error, Pmf, Result};

/// Largest graph for which the audit re-derives the MST weight by enumeration.
pub const AUDIT_ENUMERATION_LIMIT: usize = 8;

/// A rooted tree inside a spanning tree where every node keeps at most `D`
/// children. Child `k` (in weight, then id, order) is reached by digit `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedDaryTree {
    arity: u64,
    root: usize,
    labels: Vec<String>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    depth: Vec<Option<u32>>,
    pruned: Vec<usize>,
}

impl EmbeddedDaryTree {
    pub fn arity(&self) -> u64 {
        self.arity
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    /// Retained children of `v`, digit order.
    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// Depth of a retained vertex; `None` if pruned.
    pub fn depth(&self, v: usize) -> Option<u32> {
        self.depth[v]
    }

    pub fn is_retained(&self, v: usize) -> bool {
        self.depth[v].is_some()
    }

    /// Vertices cut off by the child limit, in vertex order.
    pub fn pruned(&self) -> &[usize] {
        &self.pruned
    }

    pub fn retained_count(&self) -> usize {
        self.depth.iter().filter(|d| d.is_some()).count()
    }

    /// The vertex a digit path leads to, if the embedded tree has it.
    pub fn vertex_at(&self, path: &Codeword) -> Option<usize> {
        path.digits()
            .iter()
            .try_fold(self.root, |v, &d| self.children[v].get(d as usize).copied())
    }

    /// Vertices from the root down to `v` (inclusive).
    pub fn path_to(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut at = v;
        while let Some(p) = self.parent[at] {
            path.push(p);
            at = p;
        }
        path.reverse();
        path
    }
}

/// Roots `spanning_tree` at `root` and keeps, per node, the `arity`
/// lightest child edges (ties by child id). Everything below a dropped
/// child is pruned.
pub fn embed_dary_tree(spanning_tree: &WeightedGraph, root: &str, arity: u64) -> Result<EmbeddedDaryTree> {
    if arity < 2 {
        return Err(Error::InvalidAlphabet(arity));
    }
    let g = spanning_tree.graph();
    let root = g.require(root)?;
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    let n = g.vertex_count();
    let keep = usize::try_from(arity).unwrap_or(usize::MAX);

    let mut weighted: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let w = spanning_tree.weight(e);
        weighted[u].push((v, w));
        weighted[v].push((u, w));
    }

    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    let mut depth = vec![None; n];
    let mut visited = vec![false; n];
    depth[root] = Some(0);
    visited[root] = true;
    let mut queue = VecDeque::from([root]);
    let mut dropped = Vec::new();
    while let Some(u) = queue.pop_front() {
        let mut below: Vec<(usize, f64)> = weighted[u].iter().copied().filter(|&(v, _)| !visited[v]).collect();
        below.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| g.label(a.0).cmp(g.label(b.0))));
        for (rank, &(v, _)) in below.iter().enumerate() {
            visited[v] = true;
            if rank < keep {
                parent[v] = Some(u);
                children[u].push(v);
                depth[v] = Some(depth[u].unwrap_or(0) + 1);
                queue.push_back(v);
            } else {
                dropped.push(v);
            }
        }
    }
    // Everything reachable from a dropped child without passing a retained
    // vertex is pruned.
    while let Some(v) = dropped.pop() {
        for &(w, _) in &weighted[v] {
            if !visited[w] {
                visited[w] = true;
                dropped.push(w);
            }
        }
    }
    let pruned = (0..n).filter(|&v| depth[v].is_none()).collect();
    Ok(EmbeddedDaryTree {
        arity,
        root,
        labels: g.labels().to_vec(),
        parent,
        children,
        depth,
        pruned,
    })
}

/// One receiver of a multicast plan.
#[derive(Debug, Clone, PartialEq)]
pub struct Placement {
    pub label: String,
    pub probability: f64,
    pub codeword: Codeword,
    pub vertex: String,
    /// Vertex ids from the root to `vertex` along tree edges.
    pub vertex_path: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MulticastPlan {
    pub root: String,
    pub arity: u64,
    pub mst: WeightedGraph,
    pub mst_weight: f64,
    pub embedded: EmbeddedDaryTree,
    pub placements: Vec<Placement>,
    /// `Σ p_i · hops_i`.
    pub expected_depth: f64,
    pub kraft_sum: f64,
    pub security: SecurityReport,
}

/// Minimum spanning tree, embedded D-ary tree, then Huffman placement.
///
/// Fails with [`Error::CapacityExceeded`] when a codeword addresses a node
/// the embedded tree does not have.
pub fn plan_multicast(g: &WeightedGraph, root: &str, importance: &Pmf, arity: u64) -> Result<MulticastPlan> {
    g.graph().require(root)?;
    if !g.graph().is_connected() {
        return Err(Error::Disconnected);
    }
    let mst = minimum_spanning_tree(g)?;
    let embedded = embed_dary_tree(&mst, root, arity)?;
    let code = huffman_code(importance, arity)?;

    let mut placements = Vec::with_capacity(code.assignments().len());
    for ((label, word), p) in code.assignments().iter().zip(importance.probabilities()) {
        let v = embedded.vertex_at(word).ok_or_else(|| Error::CapacityExceeded {
            label: label.clone(),
            path: format!("{word}"),
        })?;
        placements.push(Placement {
            label: label.clone(),
            probability: p,
            codeword: word.clone(),
            vertex: embedded.label(v).into(),
            vertex_path: embedded.path_to(v).into_iter().map(|u| embedded.label(u).into()).collect(),
        });
    }
    let expected_depth = placements.iter().map(|p| p.probability * p.codeword.len() as f64).sum();
    let security = verify_paths(code.assignments());
    Ok(MulticastPlan {
        root: root.into(),
        arity,
        mst_weight: mst.total_weight(),
        kraft_sum: code.kraft_sum(),
        mst,
        embedded,
        placements,
        expected_depth,
        security,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum CheckOutcome {
    Pass,
    Fail(String),
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditCheck {
    pub name: &'static str,
    pub outcome: CheckOutcome,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub checks: Vec<AuditCheck>,
}

impl AuditReport {
    /// True when no check failed (skipped checks do not count against it).
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| !matches!(c.outcome, CheckOutcome::Fail(_)))
    }

    pub fn outcome(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name).map(|c| &c.outcome)
    }
}

fn check(name: &'static str, result: core::result::Result<(), String>) -> AuditCheck {
    AuditCheck { name, outcome: result.map_or_else(CheckOutcome::Fail, |()| CheckOutcome::Pass) }
}

/// Re-verifies a plan against the graph it was built from.
pub fn plan_cost_audit(plan: &MulticastPlan, g: &WeightedGraph) -> AuditReport {
    let mut checks = Vec::new();
    let graph = g.graph();
    let tree = plan.mst.graph();

    checks.push(check("mst-spans-graph", {
        let mut problem = None;
        if tree.vertex_count() != graph.vertex_count() || !tree.is_tree() {
            problem = Some(String::from("tree does not span the graph"));
        }
        for (e, &(u, v)) in tree.edges().iter().enumerate() {
            let (a, b) = (tree.label(u), tree.label(v));
            let found = graph
                .index_of(a)
                .zip(graph.index_of(b))
                .and_then(|(x, y)| graph.edge_index(x, y))
                .map(|ge| g.weight(ge));
            if found != Some(plan.mst.weight(e)) {
                problem = Some(format!("tree edge {a}-{b} is not a graph edge of the same weight"));
                break;
            }
        }
        problem.map_or(Ok(()), Err)
    }));

    let weight = plan.mst.total_weight();
    checks.push(if graph.vertex_count() > AUDIT_ENUMERATION_LIMIT {
        AuditCheck {
            name: "mst-weight-minimal",
            outcome: CheckOutcome::Skipped(format!(
                "{} vertices exceeds the enumeration limit of {AUDIT_ENUMERATION_LIMIT}",
                graph.vertex_count()
            )),
        }
    } else {
        let mut best = f64::INFINITY;
        let enumerated = for_each_spanning_tree(graph, |ids| {
            best = best.min(ids.iter().map(|&e| g.weight(e)).sum());
        });
        check(
            "mst-weight-minimal",
            match enumerated {
                Err(e) => Err(format!("{e}")),
                Ok(()) if (weight - best).abs() > 1e-9 * best.abs().max(1.0) => {
                    Err(format!("tree weight {weight} but enumeration minimum {best}"))
                }
                Ok(()) if (plan.mst_weight - weight).abs() > 1e-9 * weight.abs().max(1.0) => {
                    Err(format!("reported weight {} but tree weighs {weight}", plan.mst_weight))
                }
                Ok(()) => Ok(()),
            },
        )
    });

    let words: Vec<(String, Codeword)> =
        plan.placements.iter().map(|p| (p.label.clone(), p.codeword.clone())).collect();
    checks.push(check(
        "prefix-free",
        if verify_paths(&words).is_secure() { Ok(()) } else { Err("nested leader paths".into()) },
    ));

    checks.push(check("path-containment", {
        let mut problem = Ok(());
        for p in &plan.placements {
            let path = &p.vertex_path;
            let ends_ok = path.first() == Some(&plan.root) && path.last() == Some(&p.vertex);
            let hops_ok = path.len() == p.codeword.len() + 1;
            let edges_ok = path.windows(2).all(|w| {
                match (tree.index_of(&w[0]), tree.index_of(&w[1])) {
                    (Some(a), Some(b)) => tree.has_edge(a, b),
                    _ => false,
                }
            });
            let walk_ok = plan
                .embedded
                .vertex_at(&p.codeword)
                .is_some_and(|v| plan.embedded.label(v) == p.vertex);
            if !(ends_ok && hops_ok && edges_ok && walk_ok) {
                problem = Err(format!("path of `{}` does not follow the tree", p.label));
                break;
            }
        }
        problem
    }));

    checks.push(check("expected-depth", {
        let recomputed: f64 = plan.placements.iter().map(|p| p.probability * p.codeword.len() as f64).sum();
        if (recomputed - plan.expected_depth).abs() <= 1e-12 {
            Ok(())
        } else {
            Err(format!("reported {} but placements give {recomputed}", plan.expected_depth))
        }
    }));

    AuditReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{balanced_binary_tree, path};
    use alloc::string::ToString;

    fn labels(t: &EmbeddedDaryTree, vs: &[usize]) -> Vec<String> {
        vs.iter().map(|&v| t.label(v).to_string()).collect()
    }

    #[test]
    fn path_keeps_everything() {
        let g = WeightedGraph::uniform(path(5), 1.0).unwrap();
        let t = embed_dary_tree(&g, "0", 2).unwrap();
        assert!(t.pruned().is_empty());
        assert_eq!(t.depth(4), Some(4));
    }

    #[test]
    fn star_keeps_lightest_children() {
        let g = WeightedGraph::from_edges([("h", "a", 3.0), ("h", "b", 1.0), ("h", "c", 4.0), ("h", "d", 2.0)])
            .unwrap();
        let t = embed_dary_tree(&g, "h", 2).unwrap();
        assert_eq!(labels(&t, t.children(t.root())), ["b", "d"]);
        assert_eq!(labels(&t, t.pruned()), ["a", "c"]);
    }

    #[test]
    fn pruning_removes_whole_subtrees() {
        let g = WeightedGraph::from_edges([
            ("r", "a", 1.0),
            ("r", "b", 2.0),
            ("r", "c", 3.0),
            ("c", "c1", 1.0),
            ("c1", "c2", 1.0),
        ])
        .unwrap();
        let t = embed_dary_tree(&g, "r", 2).unwrap();
        assert_eq!(labels(&t, t.pruned()), ["c", "c1", "c2"]);
    }

    #[test]
    fn balanced_tree_is_identity() {
        let g = WeightedGraph::uniform(balanced_binary_tree(3), 1.0).unwrap();
        let t = embed_dary_tree(&g, "0", 2).unwrap();
        assert!(t.pruned().is_empty());
        assert_eq!(t.retained_count(), 15);
    }

    #[test]
    fn embedding_rejects_non_trees() {
        let g = WeightedGraph::from_edges([("a", "b", 1.0), ("b", "c", 1.0), ("c", "a", 1.0)]).unwrap();
        assert_eq!(embed_dary_tree(&g, "a", 2), Err(Error::NotATree));
        assert_eq!(embed_dary_tree(&g, "zz", 2), Err(Error::UnknownVertex("zz".into())));
    }

    #[test]
    fn plan_on_balanced_tree() {
        let g = WeightedGraph::uniform(balanced_binary_tree(2), 1.0).unwrap();
        let pmf = Pmf::new([("A", 0.5), ("B", 0.25), ("C", 0.25)]).unwrap();
        let plan = plan_multicast(&g, "0", &pmf, 2).unwrap();
        let words: Vec<String> = plan.placements.iter().map(|p| p.codeword.to_string()).collect();
        assert_eq!(words, ["0", "10", "11"]);
        assert_eq!(plan.expected_depth, 1.5);
        assert_eq!(plan.mst_weight, 6.0);
        assert_eq!(plan.placements[1].vertex_path, ["0", "2", "5"]);
        assert!(plan.security.is_secure());
        assert!(plan_cost_audit(&plan, &g).passed());
    }

    #[test]
    fn single_leader_sits_next_to_root() {
        let g = WeightedGraph::from_edges([("r", "x", 2.0), ("r", "y", 1.0), ("x", "y", 1.0)]).unwrap();
        let plan = plan_multicast(&g, "r", &Pmf::new([("A", 1.0)]).unwrap(), 2).unwrap();
        assert_eq!(plan.placements[0].vertex, "y");
        assert_eq!(plan.placements[0].vertex_path.len(), 2);
        assert!(plan.security.is_secure());
    }

    #[test]
    fn triangle_lacks_capacity() {
        let g = WeightedGraph::from_edges([("A", "B", 1.0), ("B", "C", 2.0), ("C", "A", 3.0)]).unwrap();
        let pmf = Pmf::new([("X", 0.5), ("Y", 0.5)]).unwrap();
        assert!(matches!(plan_multicast(&g, "A", &pmf, 2), Err(Error::CapacityExceeded { .. })));
    }

    #[test]
    fn audit_catches_tampering() {
        let g = WeightedGraph::from_edges([("A", "B", 1.0), ("B", "C", 2.0), ("C", "A", 3.0), ("A", "D", 1.5)])
            .unwrap();
        let pmf = Pmf::new([("X", 0.5), ("Y", 0.5)]).unwrap();
        let mut plan = plan_multicast(&g, "A", &pmf, 2).unwrap();
        let audit = plan_cost_audit(&plan, &g);
        assert!(audit.passed(), "{audit:?}");

        plan.placements[0].vertex_path = vec!["A".into(), "C".into()];
        let audit = plan_cost_audit(&plan, &g);
        assert!(matches!(audit.outcome("path-containment"), Some(CheckOutcome::Fail(_))));
        assert_eq!(audit.outcome("prefix-free"), Some(&CheckOutcome::Pass));
    }
}
