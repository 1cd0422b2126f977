use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{DiGraph, Graph, VertexColoring};
use crate::source_coding::shannon_entropy;
use crate::{Error, Pmf, Result};

/// `p_v = deg(v) / Σ deg`, one entry per vertex in vertex order.
pub fn degree_pmf(g: &Graph) -> Result<Pmf> {
    if g.edge_count() == 0 {
        return Err(Error::EdgelessGraph);
    }
    Pmf::from_counts(g.labels().iter().zip(g.degrees()).map(|(l, d)| (l.as_str(), d as u64)))
}

/// Shannon entropy of the degree pmf, in bits.
pub fn graph_entropy(g: &Graph) -> Result<f64> {
    shannon_entropy(&degree_pmf(g)?, 2.0)
}

/// `(1 − Σ p_v^q) / (q − 1)` over the degree pmf.
pub fn tsallis_graph_entropy(g: &Graph, q: f64) -> Result<f64> {
    if !q.is_finite() {
        return Err(Error::OutOfRange { name: "Tsallis index", value: q });
    }
    if q == 1.0 {
        return Err(Error::TsallisIndexOne);
    }
    let pmf = degree_pmf(g)?;
    let power_sum: f64 = pmf.probabilities().filter(|&p| p > 0.0).map(|p| libm::pow(p, q)).sum();
    Ok((1.0 - power_sum) / (q - 1.0))
}

fn entropy_bits(ps: impl IntoIterator<Item = f64>) -> f64 {
    ps.into_iter()
        .filter(|&p| p > 0.0)
        .map(|p| -p * libm::log2(p))
        .sum::<f64>()
        .max(0.0)
}

fn check_coloring(g: &Graph, c: &VertexColoring) -> Result<()> {
    if c.len() != g.vertex_count() {
        return Err(Error::PartialColoring(format!(
            "coloring covers {} of {} vertices",
            c.len(),
            g.vertex_count()
        )));
    }
    Ok(())
}

/// `H(V | C) = Σ_c P(c) · H(V | C = c)` where `P(c)` is the degree-pmf mass
/// of color class `c`, in bits.
pub fn conditional_graph_entropy(g: &Graph, c: &VertexColoring) -> Result<f64> {
    check_coloring(g, c)?;
    let pmf = degree_pmf(g)?;
    let mut classes: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    for (v, p) in pmf.probabilities().enumerate() {
        classes.entry(c.color(v)).or_default().push(p);
    }
    let h = classes
        .values()
        .map(|ps| {
            let mass: f64 = ps.iter().sum();
            if mass > 0.0 {
                mass * entropy_bits(ps.iter().map(|p| p / mass))
            } else {
                0.0
            }
        })
        .sum::<f64>();
    Ok(h.max(0.0))
}

/// `H(V) − H(V | C)` in bits.
pub fn graph_mutual_information(g: &Graph, c: &VertexColoring) -> Result<f64> {
    Ok(graph_entropy(g)? - conditional_graph_entropy(g, c)?)
}

/// A bijection from the vertices of one graph onto those of another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correspondence {
    image: Vec<usize>,
}

impl Correspondence {
    /// Matches vertices by id; both graphs must have the same id set.
    pub fn identity(from: &Graph, to: &Graph) -> Result<Self> {
        Self::from_pairs(from, to, from.labels().iter().map(|l| (l.as_str(), l.as_str())))
    }

    pub fn from_pairs<'a, I>(from: &Graph, to: &Graph, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        if from.vertex_count() != to.vertex_count() {
            return Err(Error::VertexCountMismatch { left: from.vertex_count(), right: to.vertex_count() });
        }
        let mut image = vec![usize::MAX; from.vertex_count()];
        let mut hit = vec![false; to.vertex_count()];
        for (a, b) in pairs {
            let u = from.require(a)?;
            let v = to.require(b)?;
            if image[u] != usize::MAX {
                return Err(Error::InvalidCorrespondence(format!("`{a}` is mapped twice")));
            }
            if hit[v] {
                return Err(Error::InvalidCorrespondence(format!("`{b}` is hit twice")));
            }
            image[u] = v;
            hit[v] = true;
        }
        if let Some(u) = image.iter().position(|&v| v == usize::MAX) {
            return Err(Error::InvalidCorrespondence(format!("`{}` is not mapped", from.label(u))));
        }
        Ok(Self { image })
    }

    pub fn image(&self, v: usize) -> usize {
        self.image[v]
    }
}

/// `D(p1 ‖ p2) = Σ_v p1(v) log2(p1(v) / p2(corr(v)))` between degree pmfs.
pub fn graph_kl_divergence(g1: &Graph, g2: &Graph, correspondence: &Correspondence) -> Result<f64> {
    if g1.vertex_count() != g2.vertex_count() {
        return Err(Error::VertexCountMismatch { left: g1.vertex_count(), right: g2.vertex_count() });
    }
    if correspondence.image.len() != g1.vertex_count() {
        return Err(Error::InvalidCorrespondence("size differs from the graphs".into()));
    }
    let p1 = degree_pmf(g1)?;
    let p2: Vec<f64> = degree_pmf(g2)?.probabilities().collect();
    let mut d = 0.0;
    for (v, p) in p1.probabilities().enumerate() {
        let w = correspondence.image(v);
        let q = p2[w];
        if p == 0.0 {
            continue;
        }
        if q == 0.0 {
            return Err(Error::InfiniteDivergence(g2.label(w).into()));
        }
        d += p * libm::log2(p / q);
    }
    Ok(d.max(0.0))
}

/// In-degree and out-degree pmfs, each normalized by the arc count.
pub fn in_out_degree_pmfs(g: &DiGraph) -> Result<(Pmf, Pmf)> {
    if g.arcs().is_empty() {
        return Err(Error::EdgelessGraph);
    }
    let mut indeg = vec![0u64; g.vertex_count()];
    let mut outdeg = vec![0u64; g.vertex_count()];
    for &(u, v) in g.arcs() {
        outdeg[u] += 1;
        indeg[v] += 1;
    }
    let labels = g.labels();
    let in_pmf = Pmf::from_counts(labels.iter().map(|l| l.as_str()).zip(indeg))?;
    let out_pmf = Pmf::from_counts(labels.iter().map(|l| l.as_str()).zip(outdeg))?;
    Ok((in_pmf, out_pmf))
}

/// The common degree when every vertex has the same degree.
pub fn is_regular(g: &Graph) -> Option<usize> {
    let degrees = g.degrees();
    let first = *degrees.first()?;
    degrees.iter().all(|&d| d == first).then_some(first)
}
