//! Line-oriented input formats. `#` starts a comment; blank lines are
//! skipped; fields are whitespace-separated.

use prefixnet_core::fusion::Interval;
use prefixnet_core::graph::{DiGraph, Graph, WeightedGraph};
use prefixnet_core::Pmf;

use crate::error::CliError;

/// A named input: where it came from and its bytes.
#[derive(Debug, Clone)]
pub struct Source {
    pub name: String,
    pub text: String,
}

impl Source {
    pub fn new(name: impl Into<String>, text: impl Into<String>) -> Self {
        Self { name: name.into(), text: text.into() }
    }

    /// Non-empty, comment-stripped lines with 1-based line numbers.
    fn lines(&self) -> impl Iterator<Item = (usize, Vec<&str>)> {
        self.text.lines().enumerate().filter_map(|(i, line)| {
            let body = line.split('#').next().unwrap_or("");
            let fields: Vec<&str> = body.split_whitespace().collect();
            (!fields.is_empty()).then_some((i + 1, fields))
        })
    }

    fn err(&self, line: usize, message: impl Into<String>) -> CliError {
        CliError::Format { path: self.name.clone(), line, message: message.into() }
    }

    fn number(&self, line: usize, field: &str, what: &str) -> Result<f64, CliError> {
        let x: f64 = field.parse().map_err(|_| self.err(line, format!("{what} `{field}` is not a number")))?;
        if !x.is_finite() {
            return Err(self.err(line, format!("{what} `{field}` is not finite")));
        }
        Ok(x)
    }

    fn arity(&self, line: usize, fields: &[&str], n: usize, shape: &str) -> Result<(), CliError> {
        if fields.len() == n {
            Ok(())
        } else {
            Err(self.err(line, format!("expected `{shape}`, found {} field(s)", fields.len())))
        }
    }
}

/// `label probability` lines.
pub fn parse_pmf(src: &Source) -> Result<Pmf, CliError> {
    let mut entries = Vec::new();
    let mut last = 0;
    for (line, fields) in src.lines() {
        src.arity(line, &fields, 2, "label probability")?;
        entries.push((fields[0].to_string(), src.number(line, fields[1], "probability")?));
        last = line;
    }
    Pmf::new(entries).map_err(|e| src.err(last, e.to_string()))
}

/// One positive integer per line.
pub fn parse_lengths(src: &Source) -> Result<Vec<u32>, CliError> {
    src.lines()
        .map(|(line, fields)| {
            src.arity(line, &fields, 1, "length")?;
            match fields[0].parse::<u32>() {
                Ok(l) if l >= 1 => Ok(l),
                _ => Err(src.err(line, format!("length `{}` is not a positive integer", fields[0]))),
            }
        })
        .collect()
}

enum EdgeLine<'a> {
    Vertex(&'a str),
    Edge(&'a str, &'a str, Option<f64>),
}

fn edge_lines<'a>(src: &'a Source) -> impl Iterator<Item = Result<(usize, EdgeLine<'a>), CliError>> + 'a {
    src.lines().map(move |(line, fields)| match fields.as_slice() {
        ["vertex", v] => Ok((line, EdgeLine::Vertex(v))),
        [a, b] => Ok((line, EdgeLine::Edge(a, b, None))),
        [a, b, w] => Ok((line, EdgeLine::Edge(a, b, Some(src.number(line, w, "weight")?)))),
        _ => Err(src.err(line, "expected `u v`, `u v w` or `vertex u`")),
    })
}

/// Edge list; weights, when present, are ignored.
pub fn parse_graph(src: &Source) -> Result<Graph, CliError> {
    let mut g = Graph::new();
    for item in edge_lines(src) {
        match item? {
            (_, EdgeLine::Vertex(v)) => {
                g.add_vertex(v);
            }
            (line, EdgeLine::Edge(a, b, _)) => {
                g.add_edge(a, b).map_err(|e| src.err(line, e.to_string()))?;
            }
        }
    }
    Ok(g)
}

/// Edge list where every edge carries a weight.
pub fn parse_weighted_graph(src: &Source) -> Result<WeightedGraph, CliError> {
    let mut g = WeightedGraph::new();
    for item in edge_lines(src) {
        match item? {
            (_, EdgeLine::Vertex(v)) => {
                g.add_vertex(v);
            }
            (line, EdgeLine::Edge(_, _, None)) => return Err(src.err(line, "edge has no weight")),
            (line, EdgeLine::Edge(a, b, Some(w))) => {
                g.add_edge(a, b, w).map_err(|e| src.err(line, e.to_string()))?;
            }
        }
    }
    Ok(g)
}

/// Arc list: `u v` is the arc u → v.
pub fn parse_digraph(src: &Source) -> Result<DiGraph, CliError> {
    let mut g = DiGraph::new();
    for item in edge_lines(src) {
        match item? {
            (_, EdgeLine::Vertex(v)) => {
                g.add_vertex(v);
            }
            (line, EdgeLine::Edge(a, b, _)) => {
                g.add_arc(a, b).map_err(|e| src.err(line, e.to_string()))?;
            }
        }
    }
    Ok(g)
}

/// Two-token lines, e.g. `vertex color` or `u v` correspondences.
pub fn parse_pairs(src: &Source, shape: &str) -> Result<Vec<(String, String)>, CliError> {
    src.lines()
        .map(|(line, fields)| {
            src.arity(line, &fields, 2, shape)?;
            Ok((fields[0].to_string(), fields[1].to_string()))
        })
        .collect()
}

/// `vertex x y` lines.
pub fn parse_positions(src: &Source) -> Result<Vec<(String, f64, f64)>, CliError> {
    let mut out: Vec<(String, f64, f64)> = Vec::new();
    for (line, fields) in src.lines() {
        src.arity(line, &fields, 3, "vertex x y")?;
        if out.iter().any(|(v, _, _)| v == fields[0]) {
            return Err(src.err(line, format!("duplicate position for `{}`", fields[0])));
        }
        out.push((fields[0].to_string(), src.number(line, fields[1], "x")?, src.number(line, fields[2], "y")?));
    }
    Ok(out)
}

/// `lo hi` lines.
pub fn parse_intervals(src: &Source) -> Result<Vec<Interval>, CliError> {
    src.lines()
        .map(|(line, fields)| {
            src.arity(line, &fields, 2, "lo hi")?;
            let lo = src.number(line, fields[0], "lo")?;
            let hi = src.number(line, fields[1], "hi")?;
            Interval::new(lo, hi).map_err(|e| src.err(line, e.to_string()))
        })
        .collect()
}
