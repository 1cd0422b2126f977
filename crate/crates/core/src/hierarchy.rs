//! D-ary leader hierarchies.
//!
//! The network is a complete D-ary tree whose root is the global leader.
//! Local leaders sit at nodes addressed by digit paths; placing them at the
//! codewords of a Huffman code makes every leader path prefix-free (no
//! leader overhears traffic meant for a deeper one) and minimizes the
//! importance-weighted mean depth.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::source_coding::{huffman_code, kraft_sum_of, shannon_entropy, Codeword};
use crate::{Error, Pmf, Result};

fn power(base: u64, exp: u32) -> Result<u128> {
    u128::from(base).checked_pow(exp).ok_or(Error::Overflow)
}

fn check_arity(arity: u64) -> Result<()> {
    if arity < 2 {
        Err(Error::InvalidAlphabet(arity))
    } else {
        Ok(())
    }
}

/// Complete D-ary tree of bounded depth; nodes are digit paths from the root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DaryTree {
    arity: u64,
    max_depth: u32,
}

impl DaryTree {
    pub fn new(arity: u64, max_depth: u32) -> Result<Self> {
        check_arity(arity)?;
        Ok(Self { arity, max_depth })
    }

    pub fn arity(&self) -> u64 {
        self.arity
    }

    pub fn max_depth(&self) -> u32 {
        self.max_depth
    }

    pub fn nodes_at_depth(&self, depth: u32) -> Result<u128> {
        if depth > self.max_depth {
            return Ok(0);
        }
        power(self.arity, depth)
    }

    /// `(D^{n_max+1} − 1) / (D − 1)`, root included.
    pub fn total_nodes(&self) -> Result<u128> {
        total_nodes(self.arity, self.max_depth)
    }

    pub fn contains(&self, path: &Codeword) -> bool {
        path.len() <= self.max_depth as usize && path.digits().iter().all(|&d| u64::from(d) < self.arity)
    }
}

/// Node count of a complete D-ary tree of depth `max_depth`, root included.
///
/// The expression `D^{n_max+1} − 1` agrees with this only for `D = 2`.
pub fn total_nodes(arity: u64, max_depth: u32) -> Result<u128> {
    check_arity(arity)?;
    let top = power(arity, max_depth.checked_add(1).ok_or(Error::Overflow)?)?;
    Ok((top - 1) / (u128::from(arity) - 1))
}

fn check_level_count(count: u64, depth: u32, arity: u64) -> Result<()> {
    check_arity(arity)?;
    let capacity = power(arity, depth)?;
    if u128::from(count) > capacity {
        return Err(Error::CountOutOfRange {
            name: "leaders at depth",
            value: count,
            max: u64::try_from(capacity).unwrap_or(u64::MAX),
        });
    }
    Ok(())
}

/// Chance that a uniformly chosen node at `depth` is a leader: `s_j / D^j`.
pub fn node_selection_probability(count: u64, depth: u32, arity: u64) -> Result<f64> {
    check_level_count(count, depth, arity)?;
    Ok(count as f64 / power(arity, depth)? as f64)
}

/// Chance that a uniformly chosen node of the whole tree is a leader at `depth`.
pub fn level_leader_probability(count: u64, depth: u32, arity: u64, max_depth: u32) -> Result<f64> {
    if depth == 0 || depth > max_depth {
        return Err(Error::CountOutOfRange { name: "depth", value: u64::from(depth), max: u64::from(max_depth) });
    }
    check_level_count(count, depth, arity)?;
    Ok(count as f64 / total_nodes(arity, max_depth)? as f64)
}

/// Leader counts per depth: `counts()[j − 1]` leaders at depth `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelLeaderCounts {
    counts: Vec<u64>,
}

impl LevelLeaderCounts {
    pub fn new(counts: Vec<u64>, arity: u64) -> Result<Self> {
        for (j, &s) in counts.iter().enumerate() {
            check_level_count(s, j as u32 + 1, arity)?;
        }
        Ok(Self { counts })
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Chance that a uniformly chosen node is a local leader at any depth.
pub fn local_leader_probability(counts: &LevelLeaderCounts, arity: u64, max_depth: u32) -> Result<f64> {
    if counts.counts.len() > max_depth as usize {
        return Err(Error::CountOutOfRange {
            name: "levels",
            value: counts.counts.len() as u64,
            max: u64::from(max_depth),
        });
    }
    let counts = LevelLeaderCounts::new(counts.counts.clone(), arity)?;
    Ok(counts.total() as f64 / total_nodes(arity, max_depth)? as f64)
}

/// Leaders placed at digit paths of a D-ary tree, with their importance.
#[derive(Debug, Clone, PartialEq)]
pub struct LeaderAssignment {
    tree: DaryTree,
    leaders: Vec<(String, Codeword)>,
    importance: Pmf,
}

impl LeaderAssignment {
    /// Validates labels, digits and depths; prefix-freeness is left to
    /// [`verify_secure`] so that insecure placements can be reported.
    pub fn new(arity: u64, leaders: Vec<(String, Codeword)>, importance: Pmf) -> Result<Self> {
        check_arity(arity)?;
        if leaders.len() != importance.len() {
            return Err(Error::InvalidPlacement(format!(
                "{} leaders placed for {} importance entries",
                leaders.len(),
                importance.len()
            )));
        }
        for (label, path) in &leaders {
            if importance.get(label).is_none() {
                return Err(Error::MissingLabel(label.clone()));
            }
            if path.is_empty() {
                return Err(Error::InvalidPlacement(format!("`{label}` placed at the root")));
            }
            if path.digits().iter().any(|&d| u64::from(d) >= arity) {
                return Err(Error::InvalidPlacement(format!("`{label}` path {path} uses a digit ≥ {arity}")));
            }
        }
        let max_depth = leaders.iter().map(|(_, p)| p.len() as u32).max().unwrap_or(0);
        Ok(Self { tree: DaryTree::new(arity, max_depth)?, leaders, importance })
    }

    pub fn tree(&self) -> &DaryTree {
        &self.tree
    }

    pub fn leaders(&self) -> &[(String, Codeword)] {
        &self.leaders
    }

    pub fn importance(&self) -> &Pmf {
        &self.importance
    }

    pub fn path(&self, label: &str) -> Option<&Codeword> {
        self.leaders.iter().find(|(l, _)| l == label).map(|(_, p)| p)
    }

    /// `Σ p_i · depth_i`.
    pub fn expected_depth(&self) -> f64 {
        self.leaders
            .iter()
            .map(|(l, p)| self.importance.get(l).unwrap_or(0.0) * p.len() as f64)
            .sum()
    }

    pub fn kraft_sum(&self) -> f64 {
        kraft_sum_of(self.tree.arity, self.leaders.iter().map(|(_, p)| p.len() as u32))
    }

    /// Entropy of the importance pmf in base D: the lower bound on the
    /// expected depth of any prefix-free placement.
    pub fn entropy_bound(&self) -> f64 {
        shannon_entropy(&self.importance, self.tree.arity as f64).unwrap_or(0.0)
    }

    pub fn level_counts(&self) -> LevelLeaderCounts {
        let mut counts = vec![0u64; self.tree.max_depth as usize];
        for (_, p) in &self.leaders {
            counts[p.len() - 1] += 1;
        }
        LevelLeaderCounts { counts }
    }
}

/// Places each leader at its Huffman codeword, so more important leaders
/// sit closer to the root and no leader path is a prefix of another.
pub fn assign_leaders(importance: &Pmf, arity: u64) -> Result<LeaderAssignment> {
    let code = huffman_code(importance, arity)?;
    LeaderAssignment::new(arity, code.assignments().to_vec(), importance.clone())
}

/// Two leaders whose paths nest: `ancestor`'s path is a prefix of (or equal
/// to) `descendant`'s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub ancestor: String,
    pub descendant: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecurityReport {
    /// No leader path is a prefix of another (pairwise comparison).
    pub prefix_free: bool,
    /// No leader lies on the root path of another (walk of every root path).
    pub no_leader_on_root_path: bool,
    pub violations: Vec<Violation>,
}

impl SecurityReport {
    pub fn is_secure(&self) -> bool {
        self.prefix_free && self.no_leader_on_root_path
    }
}

pub fn verify_secure(assignment: &LeaderAssignment) -> SecurityReport {
    verify_paths(&assignment.leaders)
}

/// Security check over arbitrary labeled paths.
pub fn verify_paths(leaders: &[(String, Codeword)]) -> SecurityReport {
    let mut violations = Vec::new();
    for (i, (a, pa)) in leaders.iter().enumerate() {
        for (b, pb) in &leaders[i + 1..] {
            if pa.is_prefix_of(pb) {
                violations.push(Violation { ancestor: a.clone(), descendant: b.clone() });
            } else if pb.is_prefix_of(pa) {
                violations.push(Violation { ancestor: b.clone(), descendant: a.clone() });
            }
        }
    }

    let occupied: BTreeSet<&[u32]> = leaders.iter().map(|(_, p)| p.digits()).collect();
    let duplicates = occupied.len() != leaders.len();
    let on_path = leaders.iter().any(|(_, p)| {
        let d = p.digits();
        (0..d.len()).any(|k| occupied.contains(&d[..k]))
    });

    SecurityReport {
        prefix_free: violations.is_empty(),
        no_leader_on_root_path: !on_path && !duplicates,
        violations,
    }
}

fn check_link_failure(q: f64, depth: u32) -> Result<()> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::OutOfRange { name: "link failure probability", value: q });
    }
    if depth == 0 {
        return Err(Error::CountOutOfRange { name: "depth", value: 0, max: u64::from(u32::MAX) });
    }
    Ok(())
}

/// Chance that every one of `depth` independent links works: `(1 − q)^depth`.
pub fn path_reliability(q: f64, depth: u32) -> Result<f64> {
    check_link_failure(q, depth)?;
    Ok(libm::pow(1.0 - q, f64::from(depth)))
}

/// Chance that the first `depth − 1` links work and the last one fails.
pub fn last_link_failure_probability(q: f64, depth: u32) -> Result<f64> {
    check_link_failure(q, depth)?;
    Ok(libm::pow(1.0 - q, f64::from(depth - 1)) * q)
}

/// Outcome distribution of a root-to-leader path of `depth` links:
/// element `k` is the chance that link `k + 1` is the first to fail; the
/// last element is the chance that all links work.
pub fn path_outcome_distribution(q: f64, depth: u32) -> Result<Vec<f64>> {
    check_link_failure(q, depth)?;
    let mut dist: Vec<f64> = (1..=depth).map(|k| last_link_failure_probability(q, k)).collect::<Result<_>>()?;
    dist.push(path_reliability(q, depth)?);
    Ok(dist)
}
