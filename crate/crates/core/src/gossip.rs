//! Leveling, sectoring and level-controlled gossip.
//!
//! Levels are BFS hop counts from the base station. In level-controlled
//! gossip a node at level `j` broadcasts with probability `P_j`, the
//! probabilities decreasing outward, and a receiver keeps a message only
//! when the sender sits at a strictly higher level. Messages therefore flow
//! toward the base station one level per hop.
//!
//! # Random stream
//!
//! Every random decision is read from a fixed position of a ChaCha8 stream,
//! so a draw depends only on `(seed, trial, node, slot)`:
//!
//! * the generator is `ChaCha8Rng::seed_from_u64(seed)` with
//!   `set_stream(trial)`;
//! * the draw for `(node, slot)` is the `u64` at word position
//!   `2 · (node · (|V| + 1) + slot)`, mapped to `[0, 1)` as
//!   `(x >> 11) · 2^−53`;
//! * slot 0 is the node's broadcast decision (broadcast iff `u < P_level`),
//!   slot `1 + k` is the link to its `k`-th neighbor in adjacency order
//!   (delivered iff `u ≥ q`).
//!
//! Draws do not depend on the configuration, which makes runs that share a
//! seed use common random numbers: raising any `P_j` or lowering `q` can
//! only add deliveries, trial by trial.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::graph::Graph;
use crate::{Error, Result};

/// A graph annotated with hop levels (and optionally sectors) relative to a
/// base station.
#[derive(Debug, Clone, PartialEq)]
pub struct LeveledNetwork {
    graph: Graph,
    base_station: usize,
    levels: Vec<u32>,
    sectors: Option<Vec<u32>>,
}

impl LeveledNetwork {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn base_station(&self) -> usize {
        self.base_station
    }

    pub fn level(&self, v: usize) -> u32 {
        self.levels[v]
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn max_level(&self) -> u32 {
        self.levels.iter().copied().max().unwrap_or(0)
    }

    pub fn sectors(&self) -> Option<&[u32]> {
        self.sectors.as_deref()
    }

    /// Attaches sector ids computed from plane positions; every vertex
    /// needs a position.
    pub fn with_sectors(mut self, positions: &[(String, f64, f64)], sector_count: u32) -> Result<Self> {
        let bs = self.graph.label(self.base_station);
        let assigned = assign_sectors(positions, bs, sector_count)?;
        let mut sectors = vec![None; self.graph.vertex_count()];
        for (label, s) in assigned {
            if let Some(v) = self.graph.index_of(&label) {
                sectors[v] = Some(s);
            }
        }
        let sectors = sectors
            .into_iter()
            .enumerate()
            .map(|(v, s)| {
                s.ok_or_else(|| Error::UnknownVertex(format!("no position for `{}`", self.graph.label(v))))
            })
            .collect::<Result<Vec<_>>>()?;
        self.sectors = Some(sectors);
        Ok(self)
    }
}

/// BFS levels from `base_station`.
pub fn assign_levels(g: &Graph, base_station: &str) -> Result<LeveledNetwork> {
    let bs = g.require(base_station)?;
    let mut levels = vec![u32::MAX; g.vertex_count()];
    levels[bs] = 0;
    let mut queue = VecDeque::from([bs]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if levels[w] == u32::MAX {
                levels[w] = levels[u] + 1;
                queue.push_back(w);
            }
        }
    }
    if levels.contains(&u32::MAX) {
        return Err(Error::Disconnected);
    }
    Ok(LeveledNetwork { graph: g.clone(), base_station: bs, levels, sectors: None })
}

/// Equiangular sector of every positioned vertex around the base station:
/// `⌊θ / (360° / K)⌋` with `θ ∈ [0°, 360°)` measured counterclockwise from
/// the positive x axis. Bands are half-open; angles within 1e-9 of a band
/// boundary count as on it. The base station itself is sector 0.
pub fn assign_sectors(
    positions: &[(String, f64, f64)],
    base_station: &str,
    sector_count: u32,
) -> Result<Vec<(String, u32)>> {
    if sector_count == 0 {
        return Err(Error::CountOutOfRange { name: "sector count", value: 0, max: u64::from(u32::MAX) });
    }
    let &(_, bx, by) = positions
        .iter()
        .find(|(l, _, _)| l == base_station)
        .ok_or_else(|| Error::UnknownVertex(format!("no position for base station `{base_station}`")))?;
    positions
        .iter()
        .map(|(label, x, y)| {
            if !(x.is_finite() && y.is_finite()) {
                return Err(Error::OutOfRange { name: "position", value: if x.is_finite() { *y } else { *x } });
            }
            if label == base_station {
                return Ok((label.clone(), 0));
            }
            Ok((label.clone(), sector_of(x - bx, y - by, sector_count)))
        })
        .collect()
}

fn sector_of(dx: f64, dy: f64, sector_count: u32) -> u32 {
    let mut theta = libm::atan2(dy, dx).to_degrees();
    if theta < 0.0 {
        theta += 360.0;
    }
    let band = theta * f64::from(sector_count) / 360.0;
    let nearest = libm::round(band);
    let index = if (band - nearest).abs() <= 1e-9 { nearest } else { libm::floor(band) };
    (index as u32) % sector_count
}

/// Parameters of a gossip simulation.
#[derive(Debug, Clone, PartialEq)]
pub struct GossipConfig {
    /// `P_1, P_2, …`: broadcast probability at each level.
    pub level_probabilities: Vec<f64>,
    /// Independent per-link failure probability `q`.
    pub link_failure: f64,
    pub trials: u64,
    pub seed: u64,
    /// Accept probabilities that do not strictly decrease with level.
    pub allow_nonmonotone: bool,
}

impl GossipConfig {
    pub fn validate(&self) -> Result<()> {
        if self.level_probabilities.is_empty() {
            return Err(Error::InvalidConfig("no level probabilities".into()));
        }
        for (j, &p) in self.level_probabilities.iter().enumerate() {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidConfig(format!("P_{} = {p} is not a probability", j + 1)));
            }
        }
        if !(0.0..=1.0).contains(&self.link_failure) {
            return Err(Error::InvalidConfig(format!("q = {} is not a probability", self.link_failure)));
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be positive".into()));
        }
        if !self.allow_nonmonotone {
            if let Some(j) = self.level_probabilities.windows(2).position(|w| w[0] <= w[1]) {
                return Err(Error::InvalidConfig(format!(
                    "P_{} = {} is not greater than P_{} = {} (strictly decreasing probabilities required)",
                    j + 1,
                    self.level_probabilities[j],
                    j + 2,
                    self.level_probabilities[j + 1]
                )));
            }
        }
        Ok(())
    }
}

/// What happened in a single trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialOutcome {
    pub delivered: bool,
    /// Broadcasts made (one per transmitting node).
    pub transmissions: u32,
    /// Hops of the first copy to reach the base station.
    pub hops: Option<u32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    pub trials: u64,
    pub delivered: u64,
    pub delivery_ratio: f64,
    pub mean_transmissions: f64,
    /// Mean over delivered trials; `None` when nothing was delivered.
    pub mean_hops: Option<f64>,
    pub seed: u64,
    pub nonmonotone: bool,
}

struct Stream {
    rng: ChaCha8Rng,
    stride: u128,
}

impl Stream {
    fn new(seed: u64, trial: u64, vertices: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        Self { rng, stride: vertices as u128 + 1 }
    }

    fn uniform(&mut self, node: usize, slot: usize) -> f64 {
        self.rng.set_word_pos(2 * (node as u128 * self.stride + slot as u128));
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

struct Prepared<'a> {
    net: &'a LeveledNetwork,
    source: usize,
    by_level: Vec<Vec<usize>>,
}

fn prepare<'a>(net: &'a LeveledNetwork, cfg: &GossipConfig, event_source: &str) -> Result<Prepared<'a>> {
    cfg.validate()?;
    let source = net.graph.require(event_source)?;
    if source == net.base_station {
        return Err(Error::InvalidConfig("the event source is the base station".into()));
    }
    let needed = net.levels[source] as usize;
    if cfg.level_probabilities.len() < needed {
        return Err(Error::InvalidConfig(format!(
            "source sits at level {needed} but only {} level probabilities are given",
            cfg.level_probabilities.len()
        )));
    }
    let mut by_level = vec![Vec::new(); needed + 1];
    for (v, &l) in net.levels.iter().enumerate() {
        if (l as usize) <= needed {
            by_level[l as usize].push(v);
        }
    }
    Ok(Prepared { net, source, by_level })
}

fn trial(prep: &Prepared<'_>, cfg: &GossipConfig, index: u64) -> TrialOutcome {
    let net = prep.net;
    let g = &net.graph;
    let mut stream = Stream::new(cfg.seed, index, g.vertex_count());
    let mut hops: Vec<Option<u32>> = vec![None; g.vertex_count()];
    hops[prep.source] = Some(0);
    let mut transmissions = 0;
    for level in (1..prep.by_level.len()).rev() {
        let p = cfg.level_probabilities[level - 1];
        for &u in &prep.by_level[level] {
            let Some(h) = hops[u] else { continue };
            if stream.uniform(u, 0) >= p {
                continue;
            }
            transmissions += 1;
            for (k, &w) in g.neighbors(u).iter().enumerate() {
                if net.levels[w] < net.levels[u] && stream.uniform(u, 1 + k) >= cfg.link_failure && hops[w].is_none() {
                    hops[w] = Some(h + 1);
                }
            }
        }
    }
    let at_bs = hops[net.base_station];
    TrialOutcome { delivered: at_bs.is_some(), transmissions, hops: at_bs }
}

/// Runs one trial of the simulation (same stream as [`simulate_gossip`]).
pub fn run_trial(net: &LeveledNetwork, cfg: &GossipConfig, event_source: &str, index: u64) -> Result<TrialOutcome> {
    Ok(trial(&prepare(net, cfg, event_source)?, cfg, index))
}

fn summarize(cfg: &GossipConfig, outcomes: impl Iterator<Item = TrialOutcome>) -> SimResult {
    let (mut delivered, mut sends, mut hops) = (0u64, 0u64, 0u64);
    for o in outcomes {
        sends += u64::from(o.transmissions);
        if let Some(h) = o.hops {
            delivered += 1;
            hops += u64::from(h);
        }
    }
    let trials = cfg.trials as f64;
    SimResult {
        trials: cfg.trials,
        delivered,
        delivery_ratio: delivered as f64 / trials,
        mean_transmissions: sends as f64 / trials,
        mean_hops: (delivered > 0).then(|| hops as f64 / delivered as f64),
        seed: cfg.seed,
        nonmonotone: cfg.allow_nonmonotone,
    }
}

/// Monte Carlo estimate of delivery to the base station for an event
/// detected at `event_source`.
pub fn simulate_gossip(net: &LeveledNetwork, cfg: &GossipConfig, event_source: &str) -> Result<SimResult> {
    let prep = prepare(net, cfg, event_source)?;
    Ok(summarize(cfg, (0..cfg.trials).map(|i| trial(&prep, cfg, i))))
}

/// [`simulate_gossip`] plus the per-trial outcomes.
pub fn simulate_gossip_with_log(
    net: &LeveledNetwork,
    cfg: &GossipConfig,
    event_source: &str,
) -> Result<(SimResult, Vec<TrialOutcome>)> {
    let prep = prepare(net, cfg, event_source)?;
    let log: Vec<TrialOutcome> = (0..cfg.trials).map(|i| trial(&prep, cfg, i)).collect();
    Ok((summarize(cfg, log.iter().copied()), log))
}

/// The parameter varied by a sweep.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepGrid {
    /// Values for `P_level` (1-based level).
    LevelProbability { level: usize, values: Vec<f64> },
    LinkFailure { values: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub value: f64,
    pub config: GossipConfig,
    pub result: SimResult,
}

type Setter<'a> = dyn Fn(&mut GossipConfig, f64) + 'a;

/// One simulation per grid value, all sharing the base seed.
pub fn sweep_levels(
    net: &LeveledNetwork,
    base: &GossipConfig,
    grid: &SweepGrid,
    event_source: &str,
) -> Result<Vec<SweepPoint>> {
    let (values, apply): (&[f64], &Setter) = match grid {
        SweepGrid::LevelProbability { level, values } => {
            if *level == 0 || *level > base.level_probabilities.len() {
                return Err(Error::InvalidConfig(format!("no level {level} to sweep")));
            }
            (values, &|cfg: &mut GossipConfig, v: f64| cfg.level_probabilities[*level - 1] = v)
        }
        SweepGrid::LinkFailure { values } => (values, &|cfg: &mut GossipConfig, v: f64| cfg.link_failure = v),
    };
    if values.is_empty() {
        return Err(Error::InvalidConfig("empty sweep grid".into()));
    }
    values
        .iter()
        .map(|&value| {
            let mut config = base.clone();
            apply(&mut config, value);
            let result = simulate_gossip(net, &config, event_source)?;
            Ok(SweepPoint { value, config, result })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{grid, star};
    use alloc::string::ToString;

    fn line() -> Graph {
        Graph::from_edges([("BS", "A"), ("A", "B")]).unwrap()
    }

    fn cfg(ps: &[f64], q: f64, trials: u64) -> GossipConfig {
        GossipConfig { level_probabilities: ps.to_vec(), link_failure: q, trials, seed: 7, allow_nonmonotone: false }
    }

    #[test]
    fn levels_are_hop_counts() {
        let net = assign_levels(&line(), "BS").unwrap();
        assert_eq!(net.levels(), &[0, 1, 2]);
        let s = assign_levels(&star(4), "hub").unwrap();
        assert!(s.levels()[1..].iter().all(|&l| l == 1));
        let g = grid(3, 3);
        let net = assign_levels(&g, "0").unwrap();
        for v in 0..9 {
            assert_eq!(net.level(v) as usize, v / 3 + v % 3);
        }
    }

    #[test]
    fn level_errors() {
        let mut g = line();
        assert_eq!(assign_levels(&g, "X"), Err(Error::UnknownVertex("X".into())));
        g.add_vertex("island");
        assert_eq!(assign_levels(&g, "BS"), Err(Error::Disconnected));
    }

    fn sector(x: f64, y: f64, k: u32) -> u32 {
        let pos = vec![("bs".to_string(), 0.0, 0.0), ("v".to_string(), x, y)];
        assign_sectors(&pos, "bs", k).unwrap()[1].1
    }

    #[test]
    fn sector_examples() {
        assert_eq!(sector(1.0, 1.0, 4), 0);
        assert_eq!(sector(-1.0, 0.0, 4), 2);
        assert_eq!(sector(0.0, 1.0, 4), 1);
        assert_eq!(sector(1.0, -1e-3, 4), 3);
        assert_eq!(sector(1.0, -1e-14, 4), 0);
        assert_eq!(sector(1.0, -1.0, 8), 7);
        assert_eq!(sector(-1.0, 1.0, 1), 0);
    }

    #[test]
    fn sectors_need_positions() {
        let net = assign_levels(&line(), "BS").unwrap();
        let partial = vec![("BS".to_string(), 0.0, 0.0), ("A".to_string(), 1.0, 0.0)];
        assert!(net.clone().with_sectors(&partial, 4).is_err());
        let full = vec![
            ("BS".to_string(), 0.0, 0.0),
            ("A".to_string(), 1.0, 0.0),
            ("B".to_string(), 0.0, -2.0),
        ];
        assert_eq!(net.with_sectors(&full, 4).unwrap().sectors(), Some(&[0, 0, 3][..]));
    }

    #[test]
    fn config_validation() {
        assert!(cfg(&[1.0, 0.5], 0.0, 10).validate().is_ok());
        assert!(cfg(&[0.5, 0.5], 0.0, 10).validate().is_err());
        assert!(cfg(&[1.0, 1.5], 0.0, 10).validate().is_err());
        assert!(cfg(&[1.0], 2.0, 10).validate().is_err());
        assert!(cfg(&[1.0], 0.0, 0).validate().is_err());
        let mut c = cfg(&[0.5, 0.5], 0.0, 10);
        c.allow_nonmonotone = true;
        assert!(c.validate().is_ok());
    }

    #[test]
    fn flooding_always_delivers() {
        let net = assign_levels(&grid(3, 3), "0").unwrap();
        let mut c = cfg(&[1.0; 4], 0.0, 50);
        c.allow_nonmonotone = true;
        let r = simulate_gossip(&net, &c, "8").unwrap();
        assert_eq!(r.delivery_ratio, 1.0);
        assert_eq!(r.mean_hops, Some(4.0));
    }

    #[test]
    fn dead_links_never_deliver() {
        let net = assign_levels(&line(), "BS").unwrap();
        let r = simulate_gossip(&net, &cfg(&[1.0, 0.5], 1.0, 200), "B").unwrap();
        assert_eq!(r.delivery_ratio, 0.0);
        assert_eq!(r.mean_hops, None);
    }

    #[test]
    fn silent_source_never_delivers() {
        let net = assign_levels(&line(), "BS").unwrap();
        let r = simulate_gossip(&net, &cfg(&[1.0, 0.0], 0.0, 200), "B").unwrap();
        assert_eq!((r.delivery_ratio, r.mean_transmissions), (0.0, 0.0));
    }

    #[test]
    fn source_errors() {
        let net = assign_levels(&line(), "BS").unwrap();
        assert!(simulate_gossip(&net, &cfg(&[1.0], 0.0, 10), "B").is_err());
        assert!(simulate_gossip(&net, &cfg(&[1.0, 0.5], 0.0, 10), "BS").is_err());
        assert!(simulate_gossip(&net, &cfg(&[1.0, 0.5], 0.0, 10), "nope").is_err());
    }

    #[test]
    fn same_seed_same_result() {
        let net = assign_levels(&grid(3, 4), "0").unwrap();
        let c = cfg(&[0.9, 0.8, 0.7, 0.6, 0.5], 0.2, 500);
        let a = simulate_gossip_with_log(&net, &c, "11").unwrap();
        let b = simulate_gossip_with_log(&net, &c, "11").unwrap();
        assert_eq!(a, b);
        assert_eq!(run_trial(&net, &c, "11", 17).unwrap(), a.1[17]);
    }

    #[test]
    fn sweep_single_point_matches_simulation() {
        let net = assign_levels(&line(), "BS").unwrap();
        let base = cfg(&[1.0, 0.5], 0.1, 300);
        let rows = sweep_levels(&net, &base, &SweepGrid::LinkFailure { values: vec![0.1] }, "B").unwrap();
        assert_eq!(rows[0].result, simulate_gossip(&net, &base, "B").unwrap());
        assert!(sweep_levels(&net, &base, &SweepGrid::LevelProbability { level: 3, values: vec![0.1] }, "B").is_err());
    }
}
