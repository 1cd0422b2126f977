//! Fault-tolerant fusion of closed sensor intervals.
//!
//! `n` sensors each report a closed interval and at most `f` of them may
//! miss the true value. Four fusion rules are provided:
//!
//! * [`m_function`]: smallest interval covering every intersection of
//!   `n − f` of the inputs;
//! * [`overlap_function`]: the step function `Ω(x)`, the number of inputs
//!   containing `x`;
//! * [`n_function`]: envelope of `{x : Ω(x) ≥ n − f}`;
//! * [`s_function`]: `[a, b]` from the `(f+1)`-th largest left endpoint and
//!   the `(f+1)`-th smallest right endpoint.
//!
//! Intervals are closed, so touching endpoints overlap, and point intervals
//! are allowed.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidInterval(format!("[{lo}, {hi}] has a non-finite endpoint")));
        }
        if lo > hi {
            return Err(Error::InvalidInterval(format!("[{lo}, {hi}] has lo > hi")));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: f64) -> Result<Self> {
        Self::new(x, x)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersection(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Sensor readings with a fault bound `0 ≤ f < n`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
    fault_bound: usize,
}

impl IntervalSet {
    pub fn new(intervals: Vec<Interval>, fault_bound: usize) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::InvalidInterval("no intervals".into()));
        }
        if fault_bound >= intervals.len() {
            return Err(Error::CountOutOfRange {
                name: "fault bound",
                value: fault_bound as u64,
                max: intervals.len() as u64 - 1,
            });
        }
        Ok(Self { intervals, fault_bound })
    }

    /// Builds from `(lo, hi)` pairs.
    pub fn from_pairs(pairs: &[(f64, f64)], fault_bound: usize) -> Result<Self> {
        let intervals = pairs.iter().map(|&(lo, hi)| Interval::new(lo, hi)).collect::<Result<Vec<_>>>()?;
        Self::new(intervals, fault_bound)
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn fault_bound(&self) -> usize {
        self.fault_bound
    }

    /// `n − f`: how many intervals must agree.
    pub fn quorum(&self) -> usize {
        self.intervals.len() - self.fault_bound
    }
}

/// Result of the M and N functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Fused {
    Interval(Interval),
    Empty,
}

impl Fused {
    pub fn interval(&self) -> Option<Interval> {
        match self {
            Fused::Interval(i) => Some(*i),
            Fused::Empty => None,
        }
    }
}

/// Result of the S function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SFused {
    Interval(Interval),
    /// `a > b`: more than `f` faults, or malformed input.
    Inconsistent { a: f64, b: f64 },
}

impl SFused {
    pub fn interval(&self) -> Option<Interval> {
        match self {
            SFused::Interval(i) => Some(*i),
            SFused::Inconsistent { .. } => None,
        }
    }
}

/// Maximal closed intervals on which at least `n − f` inputs overlap, in
/// increasing order. Their union is the union of all `(n − f)`-fold
/// intersections.
pub fn agreement_regions(set: &IntervalSet) -> Vec<Interval> {
    // (x, is_end, input index): starts sort before ends at equal x.
    let mut events: Vec<(f64, bool, usize)> = Vec::with_capacity(2 * set.len());
    for (i, iv) in set.intervals.iter().enumerate() {
        events.push((iv.lo, false, i));
        events.push((iv.hi, true, i));
    }
    events.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let quorum = set.quorum();
    let mut regions = Vec::new();
    let mut depth = 0usize;
    let mut open_at = 0.0;
    for (x, is_end, _) in events {
        if is_end {
            if depth == quorum {
                regions.push(Interval { lo: open_at, hi: x });
            }
            depth -= 1;
        } else {
            depth += 1;
            if depth == quorum {
                open_at = x;
            }
        }
    }
    regions
}

/// Marzullo's M function: the envelope of the agreement regions.
pub fn m_function(set: &IntervalSet) -> Fused {
    let regions = agreement_regions(set);
    match (regions.first(), regions.last()) {
        (Some(first), Some(last)) => Fused::Interval(first.hull(last)),
        _ => Fused::Empty,
    }
}

/// The overlap count `Ω` as a step function.
///
/// `breakpoints` are the distinct endpoints in increasing order;
/// `point_values[i] = Ω(breakpoints[i])` and `segment_values[i]` is the
/// constant value on the open gap `(breakpoints[i], breakpoints[i+1])`.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapFunction {
    los: Vec<f64>,
    his: Vec<f64>,
    breakpoints: Vec<f64>,
    point_values: Vec<usize>,
    segment_values: Vec<usize>,
}

impl OverlapFunction {
    pub fn new(intervals: &[Interval]) -> Self {
        let mut los: Vec<f64> = intervals.iter().map(|i| i.lo).collect();
        let mut his: Vec<f64> = intervals.iter().map(|i| i.hi).collect();
        los.sort_by(f64::total_cmp);
        his.sort_by(f64::total_cmp);
        let mut breakpoints: Vec<f64> = los.iter().chain(his.iter()).copied().collect();
        breakpoints.sort_by(f64::total_cmp);
        breakpoints.dedup();
        let mut this = Self { los, his, breakpoints, point_values: Vec::new(), segment_values: Vec::new() };
        this.point_values = this.breakpoints.iter().map(|&b| this.value_at(b)).collect();
        this.segment_values = this
            .breakpoints
            .windows(2)
            .map(|w| this.started_by(w[0]) - this.ended_by(w[0]))
            .collect();
        this
    }

    fn started_by(&self, x: f64) -> usize {
        self.los.partition_point(|&l| l <= x)
    }

    fn ended_by(&self, x: f64) -> usize {
        self.his.partition_point(|&h| h <= x)
    }

    /// `Ω(x) = |{i : lo_i ≤ x ≤ hi_i}|`.
    pub fn value_at(&self, x: f64) -> usize {
        self.started_by(x) - self.his.partition_point(|&h| h < x)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn point_values(&self) -> &[usize] {
        &self.point_values
    }

    pub fn segment_values(&self) -> &[usize] {
        &self.segment_values
    }

    /// `(b, Ω(b⁺))` pairs: the value taken just right of each breakpoint.
    pub fn right_limits(&self) -> Vec<(f64, usize)> {
        self.breakpoints
            .iter()
            .enumerate()
            .map(|(i, &b)| (b, self.segment_values.get(i).copied().unwrap_or(0)))
            .collect()
    }

    /// `∫ Ω(x) dx` over the real line.
    pub fn integral(&self) -> f64 {
        self.breakpoints
            .windows(2)
            .zip(&self.segment_values)
            .map(|(w, &v)| (w[1] - w[0]) * v as f64)
            .sum()
    }

    /// Smallest closed interval covering `{x : Ω(x) ≥ threshold}`.
    pub fn envelope_at_least(&self, threshold: usize) -> Option<Interval> {
        let k = self.breakpoints.len();
        let first = (0..k).find_map(|i| {
            if self.point_values[i] >= threshold || self.segment_values.get(i).is_some_and(|&v| v >= threshold) {
                Some(self.breakpoints[i])
            } else {
                None
            }
        })?;
        let last = (0..k).rev().find_map(|i| {
            if self.point_values[i] >= threshold || (i > 0 && self.segment_values[i - 1] >= threshold) {
                Some(self.breakpoints[i])
            } else {
                None
            }
        })?;
        Some(Interval { lo: first, hi: last })
    }
}

pub fn overlap_function(intervals: &[Interval]) -> OverlapFunction {
    OverlapFunction::new(intervals)
}

/// The N function: envelope of the region where `Ω ≥ n − f`.
pub fn n_function(set: &IntervalSet) -> Fused {
    match overlap_function(&set.intervals).envelope_at_least(set.quorum()) {
        Some(i) => Fused::Interval(i),
        None => Fused::Empty,
    }
}

/// The S function: `a` is the `(f+1)`-th largest left endpoint, `b` the
/// `(f+1)`-th smallest right endpoint.
pub fn s_function(set: &IntervalSet) -> SFused {
    let f = set.fault_bound;
    let mut los: Vec<f64> = set.intervals.iter().map(|i| i.lo).collect();
    let mut his: Vec<f64> = set.intervals.iter().map(|i| i.hi).collect();
    los.sort_by(|x, y| y.total_cmp(x));
    his.sort_by(f64::total_cmp);
    let (a, b) = (los[f], his[f]);
    if a <= b {
        SFused::Interval(Interval { lo: a, hi: b })
    } else {
        SFused::Inconsistent { a, b }
    }
}

/// M, N and S evaluated on the same input.
#[derive(Debug, Clone, PartialEq)]
pub struct FusionReport {
    pub m: Fused,
    pub n: Fused,
    pub s: SFused,
    pub m_width: Option<f64>,
    pub n_width: Option<f64>,
    pub s_width: Option<f64>,
    pub m_equals_n: bool,
    /// `None` when either side has no interval.
    pub m_within_s: Option<bool>,
    pub s_within_m: Option<bool>,
    /// Which of M, N, S is narrowest (ties listed in that order).
    pub narrowest: Vec<&'static str>,
}

pub fn fusion_compare(set: &IntervalSet) -> FusionReport {
    let m = m_function(set);
    let n = n_function(set);
    let s = s_function(set);
    let (mi, ni, si) = (m.interval(), n.interval(), s.interval());
    let both = |x: Option<Interval>, y: Option<Interval>| x.zip(y).map(|(x, y)| y.contains_interval(&x));
    let widths = [("M", mi.map(|i| i.width())), ("N", ni.map(|i| i.width())), ("S", si.map(|i| i.width()))];
    let best = widths
        .iter()
        .filter_map(|(_, w)| *w)
        .min_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    let narrowest = widths
        .iter()
        .filter(|(_, w)| best.is_some() && *w == best)
        .map(|(name, _)| *name)
        .collect();
    FusionReport {
        m,
        n,
        s,
        m_width: widths[0].1,
        n_width: widths[1].1,
        s_width: widths[2].1,
        m_equals_n: m == n,
        m_within_s: both(mi, si),
        s_within_m: both(si, mi),
        narrowest,
    }
}
