use std::io::Read;

use serde_json::{json, Value};

use prefixnet_core::fusion::{
    agreement_regions, fusion_compare, m_function, n_function, overlap_function, s_function, Fused, IntervalSet,
    SFused,
};
use prefixnet_core::gossip::{
    assign_levels, simulate_gossip_with_log, sweep_levels, GossipConfig, LeveledNetwork, SweepGrid,
};
use prefixnet_core::graph::{
    conditional_graph_entropy, degree_pmf, graph_entropy, graph_kl_divergence, graph_mutual_information,
    in_out_degree_pmfs, is_regular, minimum_spanning_tree, mst_entropy_extrema, spanning_tree_entropy_extrema,
    tsallis_graph_entropy, Correspondence, Graph, VertexColoring,
};
use prefixnet_core::hierarchy::{
    assign_leaders, last_link_failure_probability, local_leader_probability, path_outcome_distribution,
    path_reliability, verify_secure,
};
use prefixnet_core::multicast::{plan_cost_audit, plan_multicast, CheckOutcome};
use prefixnet_core::source_coding::{
    arithmetic_progression_satisfies_kraft, code_from_lengths, consecutive_lengths_sum, expected_length,
    huffman_code, kraft_sum, satisfies_kraft, shannon_entropy, CodeLengthSet, KRAFT_TOLERANCE,
};
use prefixnet_core::Error;

use crate::cli::{Cli, Command, FusionFunction};
use crate::error::CliError;
use crate::formats::{self, Source};
use crate::output::{num, InputDigest, Lines, Report, RunManifest};

type Res<T> = Result<T, CliError>;

/// Reads named inputs, recording their digests.
struct Inputs<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
    digests: Vec<InputDigest>,
}

impl Inputs<'_> {
    fn load(&mut self, role: &str, path: &str) -> Res<Source> {
        let bytes = if path == "-" {
            if self.stdin_used {
                return Err(CliError::Invalid("standard input can feed only one file argument".into()));
            }
            self.stdin_used = true;
            let mut buf = Vec::new();
            self.stdin
                .read_to_end(&mut buf)
                .map_err(|e| CliError::Io { path: "<stdin>".into(), message: e.to_string() })?;
            buf
        } else {
            std::fs::read(path).map_err(|e| CliError::Io { path: path.into(), message: e.to_string() })?
        };
        self.digests.push(InputDigest::new(role, path, &bytes));
        let text = String::from_utf8(bytes)
            .map_err(|_| CliError::Io { path: path.into(), message: "not valid UTF-8".into() })?;
        Ok(Source::new(if path == "-" { "<stdin>" } else { path }, text))
    }
}

fn subcommand_name(c: &Command) -> &'static str {
    match c {
        Command::Kraft(_) => "kraft",
        Command::Huffman(_) => "huffman",
        Command::CodeFromLengths(_) => "code-from-lengths",
        Command::Entropy(_) => "entropy",
        Command::GraphEntropy(_) => "graph-entropy",
        Command::Kl(_) => "kl",
        Command::Mst(_) => "mst",
        Command::SpanEntropy(_) => "span-entropy",
        Command::AssignLeaders(_) => "assign-leaders",
        Command::PlanMulticast(_) => "plan-multicast",
        Command::Reliability(_) => "reliability",
        Command::Levels(_) => "levels",
        Command::Sectors(_) => "sectors",
        Command::Gossip(_) => "gossip",
        Command::Fuse(_) => "fuse",
    }
}

pub fn execute(cli: &Cli, flags: Vec<String>, stdin: &mut dyn Read) -> Res<String> {
    let mut inputs = Inputs { stdin, stdin_used: false, digests: Vec::new() };
    let mut seed = None;
    let (report, as_json) = match &cli.command {
        Command::Kraft(a) => (kraft(a, &mut inputs)?, a.common.json),
        Command::Huffman(a) => (huffman(a.d, &a.pmf, &mut inputs)?, a.common.json),
        Command::CodeFromLengths(a) => {
            let lengths = lengths_arg(a.lengths.as_ref(), a.lengths_file.as_deref(), &mut inputs)?;
            (code_lengths(lengths, a.d)?, a.common.json)
        }
        Command::Entropy(a) => (entropy(a, &mut inputs)?, a.common.json),
        Command::GraphEntropy(a) => (graph_entropy_cmd(a, &mut inputs)?, a.common.json),
        Command::Kl(a) => (kl(a, &mut inputs)?, a.common.json),
        Command::Mst(a) => (mst(a, &mut inputs)?, a.common.json),
        Command::SpanEntropy(a) => (span_entropy(a, &mut inputs)?, a.common.json),
        Command::AssignLeaders(a) => (leaders(a.d, &a.pmf, &mut inputs)?, a.common.json),
        Command::PlanMulticast(a) => (plan(a, &mut inputs)?, a.common.json),
        Command::Reliability(a) => (reliability(a)?, a.common.json),
        Command::Levels(a) => (levels(a, &mut inputs)?, a.common.json),
        Command::Sectors(a) => (sectors(a, &mut inputs)?, a.common.json),
        Command::Gossip(a) => {
            seed = Some(a.seed);
            (gossip(a, &mut inputs)?, a.common.json)
        }
        Command::Fuse(a) => (fuse(a, &mut inputs)?, a.common.json),
    };
    let manifest = RunManifest {
        tool: "prefixnet",
        version: env!("CARGO_PKG_VERSION"),
        subcommand: subcommand_name(&cli.command).into(),
        flags,
        inputs: inputs.digests,
        seed,
    };
    Ok(report.render(&manifest, as_json))
}

fn status(ok: bool) -> &'static str {
    if ok {
        "SATISFIED"
    } else {
        "VIOLATED"
    }
}

fn lengths_arg(inline: Option<&Vec<u32>>, file: Option<&str>, inputs: &mut Inputs) -> Res<Vec<u32>> {
    match (inline, file) {
        (Some(l), _) => Ok(l.clone()),
        (None, Some(path)) => formats::parse_lengths(&inputs.load("lengths", path)?),
        (None, None) => Err(CliError::Invalid("no lengths given".into())),
    }
}

fn kraft(a: &crate::cli::KraftArgs, inputs: &mut Inputs) -> Res<Report> {
    let d = a.d;
    for &larger in &a.larger {
        if larger <= d {
            return Err(Error::AlphabetNotLarger { base: d, other: larger }.into());
        }
    }
    let mut t = Lines::default();
    t.kv("alphabet_size", d);
    let (form, sum, mut doc): (&str, f64, Value);
    let larger: Vec<(u64, f64)>;
    if let Some(parts) = &a.consecutive {
        let [n1, m] = parts[..] else {
            return Err(CliError::Invalid("--consecutive takes n1,M".into()));
        };
        form = "consecutive";
        sum = consecutive_lengths_sum(n1, m, d)?;
        larger = a.larger.iter().map(|&x| Ok((x, consecutive_lengths_sum(n1, m, x)?))).collect::<Res<_>>()?;
        t.kv("form", format!("consecutive n1={n1} M={m}"));
        doc = json!({"form": form, "n1": n1, "M": m});
    } else if let Some(parts) = &a.progression {
        let [n1, step, m] = parts[..] else {
            return Err(CliError::Invalid("--progression takes n1,step,M".into()));
        };
        form = "progression";
        sum = arithmetic_progression_satisfies_kraft(n1, step, m, d)?.0;
        larger = a
            .larger
            .iter()
            .map(|&x| Ok((x, arithmetic_progression_satisfies_kraft(n1, step, m, x)?.0)))
            .collect::<Res<_>>()?;
        t.kv("form", format!("progression n1={n1} step={step} M={m}"));
        doc = json!({"form": form, "n1": n1, "step": step, "M": m});
    } else {
        let lengths = lengths_arg(a.lengths.as_ref(), a.lengths_file.as_deref(), inputs)?;
        let set = CodeLengthSet::new(lengths.clone(), d)?;
        form = "explicit";
        sum = kraft_sum(&set);
        larger = a.larger.iter().map(|&x| Ok((x, kraft_sum(&set.with_alphabet(x)?)))).collect::<Res<_>>()?;
        t.kv("lengths", lengths.iter().map(u32::to_string).collect::<Vec<_>>().join(","));
        doc = json!({"form": form, "lengths": lengths});
    }
    let ok = sum <= 1.0 + KRAFT_TOLERANCE;
    t.kv("sum", num(sum)).line(status(ok));
    for &(x, s) in &larger {
        t.line(format!("larger {x} {} {}", num(s), status(s <= 1.0 + KRAFT_TOLERANCE)));
    }
    doc["alphabet_size"] = json!(d);
    doc["sum"] = json!(sum);
    doc["satisfied"] = json!(ok);
    doc["larger"] = larger
        .iter()
        .map(|&(x, s)| json!({"alphabet_size": x, "sum": s, "satisfied": s <= 1.0 + KRAFT_TOLERANCE}))
        .collect();
    Ok(Report { text: t.finish(), json: doc })
}

fn huffman(d: u64, pmf_path: &str, inputs: &mut Inputs) -> Res<Report> {
    let pmf = formats::parse_pmf(&inputs.load("pmf", pmf_path)?)?;
    let code = huffman_code(&pmf, d)?;
    let l = expected_length(&code, &pmf)?;
    let h = shannon_entropy(&pmf, d as f64)?;
    let mut t = Lines::default();
    let mut rows = Vec::new();
    for ((label, word), (_, p)) in code.assignments().iter().zip(pmf.entries()) {
        t.line(format!("{label} {word} {} {}", word.len(), num(*p)));
        rows.push(json!({"label": label, "codeword": word.to_string(), "length": word.len(), "probability": p}));
    }
    t.kv("expected_length", num(l)).kv("entropy", num(h)).kv("kraft_sum", num(code.kraft_sum()));
    Ok(Report {
        text: t.finish(),
        json: json!({"alphabet_size": d, "code": rows, "expected_length": l, "entropy": h, "kraft_sum": code.kraft_sum()}),
    })
}

fn code_lengths(lengths: Vec<u32>, d: u64) -> Res<Report> {
    let set = CodeLengthSet::new(lengths, d)?;
    let code = code_from_lengths(&set)?;
    let mut t = Lines::default();
    let mut rows = Vec::new();
    for (label, word) in code.assignments() {
        t.line(format!("{label} {word} {}", word.len()));
        rows.push(json!({"index": label, "codeword": word.to_string(), "length": word.len()}));
    }
    t.kv("kraft_sum", num(code.kraft_sum())).line(status(satisfies_kraft(&set)));
    Ok(Report {
        text: t.finish(),
        json: json!({"alphabet_size": d, "code": rows, "kraft_sum": code.kraft_sum(), "satisfied": true}),
    })
}

fn entropy(a: &crate::cli::EntropyArgs, inputs: &mut Inputs) -> Res<Report> {
    let pmf = formats::parse_pmf(&inputs.load("pmf", &a.pmf)?)?;
    let h = shannon_entropy(&pmf, a.base)?;
    let mut t = Lines::default();
    t.kv("symbols", pmf.len()).kv("base", num(a.base)).kv("entropy", num(h));
    Ok(Report { text: t.finish(), json: json!({"symbols": pmf.len(), "base": a.base, "entropy": h}) })
}

fn graph_entropy_cmd(a: &crate::cli::GraphEntropyArgs, inputs: &mut Inputs) -> Res<Report> {
    let src = inputs.load("graph", &a.graph)?;
    let mut t = Lines::default();
    if a.directed {
        let g = formats::parse_digraph(&src)?;
        let (pin, pout) = in_out_degree_pmfs(&g)?;
        let (hin, hout) = (shannon_entropy(&pin, 2.0)?, shannon_entropy(&pout, 2.0)?);
        t.kv("vertices", g.vertex_count()).kv("arcs", g.arcs().len());
        let mut rows = Vec::new();
        for ((l, p), (_, q)) in pin.entries().iter().zip(pout.entries()) {
            t.line(format!("pmf {l} {} {}", num(*p), num(*q)));
            rows.push(json!({"vertex": l, "in": p, "out": q}));
        }
        t.kv("in_entropy", num(hin)).kv("out_entropy", num(hout));
        return Ok(Report {
            text: t.finish(),
            json: json!({"vertices": g.vertex_count(), "arcs": g.arcs().len(), "pmf": rows,
                         "in_entropy": hin, "out_entropy": hout}),
        });
    }
    let g = formats::parse_graph(&src)?;
    let pmf = degree_pmf(&g)?;
    let h = graph_entropy(&g)?;
    let top = (g.vertex_count() as f64).log2();
    let regular = is_regular(&g);
    t.kv("vertices", g.vertex_count()).kv("edges", g.edge_count());
    let mut rows = Vec::new();
    for (v, (l, p)) in pmf.entries().iter().enumerate() {
        t.line(format!("pmf {l} {} {}", g.degree(v), num(*p)));
        rows.push(json!({"vertex": l, "degree": g.degree(v), "probability": p}));
    }
    t.kv("entropy", num(h)).kv("max_entropy", num(top));
    t.kv("regular", regular.map_or("no".to_string(), |d| d.to_string()));
    let mut doc = json!({"vertices": g.vertex_count(), "edges": g.edge_count(), "pmf": rows,
                         "entropy": h, "max_entropy": top, "regular_degree": regular});
    if let Some(q) = a.tsallis {
        let ts = tsallis_graph_entropy(&g, q)?;
        t.line(format!("tsallis {} {}", num(q), num(ts)));
        doc["tsallis"] = json!({"q": q, "entropy": ts});
    }
    if let Some(path) = &a.coloring {
        let pairs = formats::parse_pairs(&inputs.load("coloring", path)?, "vertex color")?;
        let c = VertexColoring::new(&g, pairs.iter().map(|(v, c)| (v.as_str(), c.as_str())))?;
        let (hc, mi) = (conditional_graph_entropy(&g, &c)?, graph_mutual_information(&g, &c)?);
        t.kv("conditional_entropy", num(hc)).kv("mutual_information", num(mi));
        doc["conditional_entropy"] = json!(hc);
        doc["mutual_information"] = json!(mi);
    }
    Ok(Report { text: t.finish(), json: doc })
}

fn kl(a: &crate::cli::KlArgs, inputs: &mut Inputs) -> Res<Report> {
    let g1 = formats::parse_graph(&inputs.load("graph", &a.graph)?)?;
    let g2 = formats::parse_graph(&inputs.load("other", &a.other)?)?;
    let corr = match &a.correspondence {
        Some(path) => {
            let pairs = formats::parse_pairs(&inputs.load("correspondence", path)?, "u v")?;
            Correspondence::from_pairs(&g1, &g2, pairs.iter().map(|(u, v)| (u.as_str(), v.as_str())))?
        }
        None => Correspondence::identity(&g1, &g2)?,
    };
    let d = graph_kl_divergence(&g1, &g2, &corr)?;
    let mut t = Lines::default();
    t.kv("divergence", num(d));
    Ok(Report { text: t.finish(), json: json!({"divergence": d}) })
}

fn edge_rows(g: &Graph, weights: Option<&[f64]>, tag: &str, t: &mut Lines) -> Vec<Value> {
    g.edges()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| {
            let (a, b) = (g.label(u), g.label(v));
            match weights {
                Some(w) => {
                    t.line(format!("{tag} {a} {b} {}", num(w[e])));
                    json!({"u": a, "v": b, "weight": w[e]})
                }
                None => {
                    t.line(format!("{tag} {a} {b}"));
                    json!({"u": a, "v": b})
                }
            }
        })
        .collect()
}

fn mst(a: &crate::cli::MstArgs, inputs: &mut Inputs) -> Res<Report> {
    let g = formats::parse_weighted_graph(&inputs.load("graph", &a.graph)?)?;
    let tree = minimum_spanning_tree(&g)?;
    let mut t = Lines::default();
    let edges = edge_rows(tree.graph(), Some(tree.weights()), "edge", &mut t);
    let h = if tree.graph().edge_count() > 0 { graph_entropy(tree.graph())? } else { 0.0 };
    t.kv("total_weight", num(tree.total_weight())).kv("entropy", num(h));
    let mut doc = json!({"edges": edges, "total_weight": tree.total_weight(), "entropy": h});
    if a.entropy_extrema {
        let ex = mst_entropy_extrema(&g)?;
        t.kv("minimum_trees", ex.trees).kv("min_entropy", num(ex.min)).kv("max_entropy", num(ex.max));
        doc["extrema"] = json!({"trees": ex.trees, "min_entropy": ex.min, "max_entropy": ex.max});
    }
    Ok(Report { text: t.finish(), json: doc })
}

fn span_entropy(a: &crate::cli::SpanEntropyArgs, inputs: &mut Inputs) -> Res<Report> {
    let g = formats::parse_graph(&inputs.load("graph", &a.graph)?)?;
    let ex = spanning_tree_entropy_extrema(&g)?;
    let mut t = Lines::default();
    t.kv("trees", ex.trees).kv("min_entropy", num(ex.min)).kv("max_entropy", num(ex.max));
    let argmin = edge_rows(&ex.argmin, None, "argmin", &mut t);
    let argmax = edge_rows(&ex.argmax, None, "argmax", &mut t);
    Ok(Report {
        text: t.finish(),
        json: json!({"trees": ex.trees, "min_entropy": ex.min, "max_entropy": ex.max,
                     "argmin": argmin, "argmax": argmax}),
    })
}

fn leaders(d: u64, pmf_path: &str, inputs: &mut Inputs) -> Res<Report> {
    let pmf = formats::parse_pmf(&inputs.load("pmf", pmf_path)?)?;
    let a = assign_leaders(&pmf, d)?;
    let report = verify_secure(&a);
    let mut t = Lines::default();
    let mut rows = Vec::new();
    for ((label, path), (_, p)) in a.leaders().iter().zip(pmf.entries()) {
        t.line(format!("{label} {path} {} {}", path.len(), num(*p)));
        rows.push(json!({"label": label, "path": path.to_string(), "depth": path.len(), "probability": p}));
    }
    let counts = a.level_counts();
    let max_depth = a.tree().max_depth();
    let local = local_leader_probability(&counts, d, max_depth)?;
    t.kv("expected_depth", num(a.expected_depth()))
        .kv("entropy_bound", num(a.entropy_bound()))
        .kv("kraft_sum", num(a.kraft_sum()))
        .kv("max_depth", max_depth)
        .kv("level_counts", counts.counts().iter().map(u64::to_string).collect::<Vec<_>>().join(","))
        .kv("local_leader_probability", num(local))
        .kv("secure", if report.is_secure() { "yes" } else { "no" });
    Ok(Report {
        text: t.finish(),
        json: json!({"alphabet_size": d, "leaders": rows, "expected_depth": a.expected_depth(),
                     "entropy_bound": a.entropy_bound(), "kraft_sum": a.kraft_sum(), "max_depth": max_depth,
                     "level_counts": counts.counts(), "local_leader_probability": local,
                     "secure": report.is_secure()}),
    })
}

fn plan(a: &crate::cli::PlanArgs, inputs: &mut Inputs) -> Res<Report> {
    let g = formats::parse_weighted_graph(&inputs.load("graph", &a.graph)?)?;
    let pmf = formats::parse_pmf(&inputs.load("pmf", &a.pmf)?)?;
    let p = plan_multicast(&g, &a.root, &pmf, a.d)?;
    let mut t = Lines::default();
    t.kv("root", &p.root)
        .kv("D", p.arity)
        .kv("mst_weight", num(p.mst_weight))
        .kv("expected_depth", num(p.expected_depth))
        .kv("kraft_sum", num(p.kraft_sum))
        .kv("secure", if p.security.is_secure() { "yes" } else { "no" });
    let pruned: Vec<&str> = p.embedded.pruned().iter().map(|&v| p.embedded.label(v)).collect();
    t.kv("pruned", if pruned.is_empty() { "-".to_string() } else { pruned.join(",") });
    let mut rows = Vec::new();
    for pl in &p.placements {
        t.line(format!("{} {} {}", pl.label, pl.codeword, pl.vertex_path.join(",")));
        rows.push(json!({"label": pl.label, "path": pl.codeword.to_string(), "vertex": pl.vertex,
                         "vertex_path": pl.vertex_path, "probability": pl.probability}));
    }
    let mut doc = json!({"root": p.root, "D": p.arity, "mst_weight": p.mst_weight,
                         "expected_depth": p.expected_depth, "kraft_sum": p.kraft_sum,
                         "secure": p.security.is_secure(), "pruned": pruned, "placements": rows});
    if a.audit {
        let audit = plan_cost_audit(&p, &g);
        let mut checks = Vec::new();
        for c in &audit.checks {
            let (word, detail) = match &c.outcome {
                CheckOutcome::Pass => ("PASS", String::new()),
                CheckOutcome::Fail(d) => ("FAIL", d.clone()),
                CheckOutcome::Skipped(d) => ("SKIPPED", d.clone()),
            };
            t.line(format!("check {} {word}{}", c.name, if detail.is_empty() { String::new() } else { format!(" {detail}") }));
            checks.push(json!({"name": c.name, "outcome": word, "detail": detail}));
        }
        doc["audit"] = json!({"passed": audit.passed(), "checks": checks});
    }
    Ok(Report { text: t.finish(), json: doc })
}

fn reliability(a: &crate::cli::ReliabilityArgs) -> Res<Report> {
    let r = path_reliability(a.q, a.depth)?;
    let last = last_link_failure_probability(a.q, a.depth)?;
    let mut t = Lines::default();
    t.kv("q", num(a.q)).kv("depth", a.depth).kv("reliability", num(r)).kv("last_link_failure", num(last));
    let mut doc = json!({"q": a.q, "depth": a.depth, "reliability": r, "last_link_failure": last});
    if a.distribution {
        let dist = path_outcome_distribution(a.q, a.depth)?;
        let (ok, first) = dist.split_last().expect("distribution has an all-ok entry");
        let rows: Vec<Value> = first
            .iter()
            .enumerate()
            .map(|(k, p)| {
                t.line(format!("first_failure {} {}", k + 1, num(*p)));
                json!({"link": k + 1, "probability": p})
            })
            .collect();
        t.kv("all_links_ok", num(*ok));
        doc["distribution"] = json!({"first_failure": rows, "all_links_ok": ok});
    }
    Ok(Report { text: t.finish(), json: doc })
}

fn leveled(graph: &str, bs: &str, inputs: &mut Inputs) -> Res<LeveledNetwork> {
    let g = formats::parse_graph(&inputs.load("graph", graph)?)?;
    Ok(assign_levels(&g, bs)?)
}

fn levels(a: &crate::cli::LevelsArgs, inputs: &mut Inputs) -> Res<Report> {
    let net = leveled(&a.graph, &a.bs, inputs)?;
    let mut t = Lines::default();
    let mut rows = Vec::new();
    for (v, l) in net.graph().labels().iter().zip(net.levels()) {
        t.line(format!("{v} {l}"));
        rows.push(json!({"vertex": v, "level": l}));
    }
    t.kv("max_level", net.max_level());
    Ok(Report { text: t.finish(), json: json!({"base_station": a.bs, "levels": rows, "max_level": net.max_level()}) })
}

fn sectors(a: &crate::cli::SectorsArgs, inputs: &mut Inputs) -> Res<Report> {
    let net = leveled(&a.graph, &a.bs, inputs)?;
    let positions = formats::parse_positions(&inputs.load("positions", &a.positions)?)?;
    let net = net.with_sectors(&positions, a.k)?;
    let sectors = net.sectors().unwrap_or_default();
    let mut t = Lines::default();
    let mut rows = Vec::new();
    for ((v, l), s) in net.graph().labels().iter().zip(net.levels()).zip(sectors) {
        t.line(format!("{v} {l} {s}"));
        rows.push(json!({"vertex": v, "level": l, "sector": s}));
    }
    Ok(Report { text: t.finish(), json: json!({"base_station": a.bs, "sectors": a.k, "locations": rows}) })
}

fn gossip(a: &crate::cli::GossipArgs, inputs: &mut Inputs) -> Res<Report> {
    let net = leveled(&a.graph, &a.bs, inputs)?;
    let source = match &a.source {
        Some(s) => s.clone(),
        None => {
            let v = (0..net.levels().len())
                .max_by_key(|&v| (net.level(v), std::cmp::Reverse(v)))
                .expect("graph has a vertex");
            net.graph().label(v).to_string()
        }
    };
    let cfg = GossipConfig {
        level_probabilities: a.levels_probs.clone(),
        link_failure: a.q,
        trials: a.trials,
        seed: a.seed,
        allow_nonmonotone: a.allow_nonmonotone,
    };
    let summary = |r: &prefixnet_core::gossip::SimResult| {
        json!({"delivery_ratio": r.delivery_ratio, "delivered": r.delivered, "trials": r.trials,
               "mean_transmissions": r.mean_transmissions, "mean_hops": r.mean_hops})
    };
    let hops = |h: Option<f64>| h.map_or("none".to_string(), num);
    let mut t = Lines::default();
    let grid = match (a.sweep_level, a.sweep_q, &a.values) {
        (Some(level), _, Some(values)) => Some(SweepGrid::LevelProbability { level, values: values.clone() }),
        (None, true, Some(values)) => Some(SweepGrid::LinkFailure { values: values.clone() }),
        _ => None,
    };
    if let Some(grid) = grid {
        let points = sweep_levels(&net, &cfg, &grid, &source)?;
        let parameter = match grid {
            SweepGrid::LevelProbability { level, .. } => format!("P{level}"),
            SweepGrid::LinkFailure { .. } => "q".into(),
        };
        t.kv("source", &source).kv("parameter", &parameter);
        let mut rows = Vec::new();
        for p in &points {
            let r = &p.result;
            t.line(format!(
                "sweep {} delivery_ratio={} delivered={} trials={} mean_transmissions={} mean_hops={}",
                num(p.value),
                num(r.delivery_ratio),
                r.delivered,
                r.trials,
                num(r.mean_transmissions),
                hops(r.mean_hops)
            ));
            let mut row = summary(r);
            row["value"] = json!(p.value);
            rows.push(row);
        }
        return Ok(Report {
            text: t.finish(),
            json: json!({"source": source, "seed": a.seed, "parameter": parameter, "sweep": rows}),
        });
    }
    let (r, log) = simulate_gossip_with_log(&net, &cfg, &source)?;
    t.line(format!(
        "source={source} delivery_ratio={} delivered={} trials={} mean_transmissions={} mean_hops={} seed={}",
        num(r.delivery_ratio),
        r.delivered,
        r.trials,
        num(r.mean_transmissions),
        hops(r.mean_hops),
        r.seed
    ));
    let mut doc = summary(&r);
    doc["source"] = json!(source);
    doc["seed"] = json!(r.seed);
    if a.log {
        let mut rows = Vec::new();
        for (i, o) in log.iter().enumerate() {
            let h = o.hops.map_or("-".to_string(), |h| h.to_string());
            t.line(format!("trial {i} {} {} {h}", u8::from(o.delivered), o.transmissions));
            rows.push(json!({"trial": i, "delivered": o.delivered, "transmissions": o.transmissions, "hops": o.hops}));
        }
        doc["log"] = json!(rows);
    }
    Ok(Report { text: t.finish(), json: doc })
}

fn fused_text(name: &str, f: Fused, t: &mut Lines) -> Value {
    match f {
        Fused::Interval(i) => {
            t.line(format!("{name} {} {}", num(i.lo()), num(i.hi())));
            json!({"lo": i.lo(), "hi": i.hi(), "width": i.width()})
        }
        Fused::Empty => {
            t.line(format!("{name} empty"));
            Value::Null
        }
    }
}

fn s_text(f: SFused, t: &mut Lines) -> Value {
    match f {
        SFused::Interval(i) => {
            t.line(format!("s {} {}", num(i.lo()), num(i.hi())));
            json!({"lo": i.lo(), "hi": i.hi(), "width": i.width(), "consistent": true})
        }
        SFused::Inconsistent { a, b } => {
            t.line(format!("s inconsistent {} {}", num(a), num(b)));
            json!({"lo": a, "hi": b, "consistent": false})
        }
    }
}

fn fuse(a: &crate::cli::FuseArgs, inputs: &mut Inputs) -> Res<Report> {
    let intervals = formats::parse_intervals(&inputs.load("intervals", &a.intervals)?)?;
    if a.at.is_some() && a.function != FusionFunction::Omega {
        return Err(CliError::Invalid("--at applies to --function omega".into()));
    }
    let mut t = Lines::default();
    if a.function == FusionFunction::Omega {
        let omega = overlap_function(&intervals);
        let mut rows = Vec::new();
        for (i, (b, right)) in omega.right_limits().into_iter().enumerate() {
            t.line(format!("{} {right}", num(b)));
            rows.push(json!({"breakpoint": b, "count": right, "count_at_point": omega.point_values()[i]}));
        }
        let mut doc = json!({"breakpoints": rows, "integral": omega.integral()});
        if let Some(x) = a.at {
            let v = omega.value_at(x);
            t.kv("at", format!("{} {v}", num(x)));
            doc["at"] = json!({"x": x, "count": v});
        }
        return Ok(Report { text: t.finish(), json: doc });
    }
    let set = IntervalSet::new(intervals, a.f)?;
    let doc = match a.function {
        FusionFunction::M => {
            let m = fused_text("m", m_function(&set), &mut t);
            let regions: Vec<Value> = agreement_regions(&set)
                .iter()
                .map(|r| {
                    t.line(format!("region {} {}", num(r.lo()), num(r.hi())));
                    json!({"lo": r.lo(), "hi": r.hi()})
                })
                .collect();
            json!({"m": m, "regions": regions})
        }
        FusionFunction::N => json!({"n": fused_text("n", n_function(&set), &mut t)}),
        FusionFunction::S => json!({"s": s_text(s_function(&set), &mut t)}),
        FusionFunction::Compare | FusionFunction::Omega => {
            let r = fusion_compare(&set);
            let m = fused_text("m", r.m, &mut t);
            let n = fused_text("n", r.n, &mut t);
            let s = s_text(r.s, &mut t);
            let w = |x: Option<f64>| x.map_or("-".to_string(), num);
            let yn = |x: Option<bool>| x.map_or("-", |b| if b { "yes" } else { "no" });
            t.line(format!("widths {} {} {}", w(r.m_width), w(r.n_width), w(r.s_width)))
                .kv("m_equals_n", if r.m_equals_n { "yes" } else { "no" })
                .kv("m_within_s", yn(r.m_within_s))
                .kv("s_within_m", yn(r.s_within_m))
                .kv("narrowest", if r.narrowest.is_empty() { "-".to_string() } else { r.narrowest.join(",") });
            json!({"m": m, "n": n, "s": s, "m_equals_n": r.m_equals_n, "m_within_s": r.m_within_s,
                   "s_within_m": r.s_within_m, "narrowest": r.narrowest})
        }
    };
    Ok(Report { text: t.finish(), json: doc })
}
