//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use prefixnet_core::fusion::Interval;
use prefixnet_core::graph::WeightedGraph;
use rand::rngs::StdRng;
use rand::Rng;

/// All strings over `0..d` of length `len`, lexicographic.
fn strings(d: u32, len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s| {
                (0..d).map(move |c| {
                    let mut t = s.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
    }
    out
}

fn nested(a: &[u32], b: &[u32]) -> bool {
    let k = a.len().min(b.len());
    a[..k] == b[..k]
}

/// Builds an explicit prefix-free word list for `lengths` by taking, shortest
/// first, the lexicographically first string compatible with all earlier
/// picks. `None` when some length finds no free string.
pub fn realize_lengths(lengths: &[u32], d: u32) -> Option<Vec<Vec<u32>>> {
    let mut order: Vec<usize> = (0..lengths.len()).collect();
    order.sort_by_key(|&i| (lengths[i], i));
    let mut chosen: Vec<Option<Vec<u32>>> = vec![None; lengths.len()];
    let mut taken: Vec<Vec<u32>> = Vec::new();
    for i in order {
        let word = strings(d, lengths[i] as usize).into_iter().find(|s| taken.iter().all(|t| !nested(t, s)))?;
        taken.push(word.clone());
        chosen[i] = Some(word);
    }
    let words: Vec<Vec<u32>> = chosen.into_iter().map(Option::unwrap).collect();
    for i in 0..words.len() {
        for j in 0..words.len() {
            if i != j && nested(&words[i], &words[j]) {
                return None;
            }
        }
    }
    Some(words)
}

/// Every length vector in `[1, n]^n` that some prefix code realizes. Longer
/// words never help: an optimal code on `n` symbols has depth below `n`.
pub fn feasible_length_vectors(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut all = vec![Vec::new()];
    for _ in 0..n {
        all = all
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                (1..=n as u32).map(move |l| {
                    let mut w = v.clone();
                    w.push(l);
                    w
                })
            })
            .collect();
    }
    all.into_iter().filter(|v| realize_lengths(v, d).is_some()).collect()
}

pub fn best_expected_length(probs: &[f64], feasible: &[Vec<u32>]) -> f64 {
    feasible
        .iter()
        .map(|v| v.iter().zip(probs).map(|(&l, &p)| p * f64::from(l)).sum::<f64>())
        .fold(f64::INFINITY, f64::min)
}

/// Kraft check in exact integer arithmetic (lengths ≤ 60, d ≤ 10 kept small
/// enough by callers).
pub fn kraft_exact(lengths: &[u32], d: u64) -> bool {
    let top = *lengths.iter().max().unwrap_or(&0);
    let scale = (d as u128).pow(top);
    let sum: u128 = lengths.iter().map(|&l| (d as u128).pow(top - l)).sum();
    sum <= scale
}

/// Compositions of `total` into `parts` nonnegative (or positive) integers.
pub fn compositions(total: u32, parts: usize, positive: bool) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let min = u32::from(positive);
    let mut out = Vec::new();
    for first in min..=total {
        for mut rest in compositions(total - first, parts - 1, positive) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn entropy(probs: &[f64], base: f64) -> f64 {
    -probs.iter().filter(|&&p| p > 0.0).map(|&p| p * p.log(base)).sum::<f64>()
}

/// Random connected weighted graph on `n` vertices labeled `v0…`: a random
/// attachment tree plus each remaining pair with probability `extra`.
pub fn random_connected(rng: &mut StdRng, n: usize, extra: f64, max_weight: u32) -> WeightedGraph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    for a in 0..n {
        for b in a + 1..n {
            if !edges.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a)) && rng.gen_bool(extra) {
                edges.push((a, b));
            }
        }
    }
    let mut g = WeightedGraph::new();
    for v in 0..n {
        g.add_vertex(&format!("v{v}"));
    }
    for (a, b) in edges {
        let w = f64::from(rng.gen_range(1..=max_weight));
        g.add_edge(&format!("v{a}"), &format!("v{b}"), w).unwrap();
    }
    g
}

/// Minimum spanning-tree weight by trying every (n−1)-edge subset that
/// stays acyclic.
pub fn brute_mst_weight(g: &WeightedGraph) -> f64 {
    let n = g.graph().vertex_count();
    let edges = g.graph().edges().to_vec();
    let weights = g.weights().to_vec();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        r
    }
    fn go(
        i: usize,
        need: usize,
        parent: Vec<usize>,
        acc: f64,
        edges: &[(usize, usize)],
        weights: &[f64],
        best: &mut f64,
    ) {
        if need == 0 {
            *best = best.min(acc);
            return;
        }
        if edges.len() - i < need {
            return;
        }
        let (a, b) = edges[i];
        let mut p = parent.clone();
        let (ra, rb) = (find(&mut p, a), find(&mut p, b));
        if ra != rb {
            p[ra] = rb;
            go(i + 1, need - 1, p, acc + weights[i], edges, weights, best);
        }
        go(i + 1, need, parent, acc, edges, weights, best);
    }
    let mut best = f64::INFINITY;
    go(0, n - 1, (0..n).collect(), 0.0, &edges, &weights, &mut best);
    best
}

/// Number of spanning trees by the same subset search.
pub fn brute_tree_count(n: usize, edges: &[(usize, usize)]) -> u64 {
    fn find(p: &[usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        r
    }
    fn go(i: usize, need: usize, parent: Vec<usize>, edges: &[(usize, usize)]) -> u64 {
        if need == 0 {
            return 1;
        }
        if edges.len() - i < need {
            return 0;
        }
        let (a, b) = edges[i];
        let (ra, rb) = (find(&parent, a), find(&parent, b));
        let mut total = go(i + 1, need, parent.clone(), edges);
        if ra != rb {
            let mut p = parent;
            p[ra] = rb;
            total += go(i + 1, need - 1, p, edges);
        }
        total
    }
    if n == 0 {
        return 0;
    }
    go(0, n - 1, (0..n).collect(), edges)
}

/// M-function oracle: hull of every nonempty (n−f)-fold intersection.
pub fn brute_m(intervals: &[Interval], f: usize) -> Option<(f64, f64)> {
    let n = intervals.len();
    let k = n - f;
    let mut hull: Option<(f64, f64)> = None;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        for (i, iv) in intervals.iter().enumerate() {
            if mask >> i & 1 == 1 {
                lo = lo.max(iv.lo());
                hi = hi.min(iv.hi());
            }
        }
        if lo <= hi {
            hull = Some(hull.map_or((lo, hi), |(a, b)| (a.min(lo), b.max(hi))));
        }
    }
    hull
}

/// N-function oracle: extreme endpoints covered by at least n−f intervals.
pub fn brute_n(intervals: &[Interval], f: usize) -> Option<(f64, f64)> {
    let need = intervals.len() - f;
    let count = |x: f64| intervals.iter().filter(|i| i.lo() <= x && x <= i.hi()).count();
    let good: Vec<f64> = intervals
        .iter()
        .flat_map(|i| [i.lo(), i.hi()])
        .filter(|&x| count(x) >= need)
        .collect();
    let lo = good.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = good.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (lo <= hi).then_some((lo, hi))
}

/// S-function oracle by counting: `a` is the largest left endpoint with at
/// least f+1 left endpoints ≥ it; `b` the smallest right endpoint with at
/// least f+1 right endpoints ≤ it.
pub fn brute_s(intervals: &[Interval], f: usize) -> (f64, f64) {
    let los: Vec<f64> = intervals.iter().map(|i| i.lo()).collect();
    let his: Vec<f64> = intervals.iter().map(|i| i.hi()).collect();
    let a = los
        .iter()
        .copied()
        .filter(|&x| los.iter().filter(|&&y| y >= x).count() > f)
        .fold(f64::NEG_INFINITY, f64::max);
    let b = his
        .iter()
        .copied()
        .filter(|&x| his.iter().filter(|&&y| y <= x).count() > f)
        .fold(f64::INFINITY, f64::min);
    (a, b)
}

/// Random intervals with endpoints on a quarter grid in `[0, span]`, so ties
/// and touching endpoints are common.
pub fn random_intervals(rng: &mut StdRng, n: usize, span: u32) -> Vec<Interval> {
    (0..n)
        .map(|_| {
            let a = f64::from(rng.gen_range(0..=4 * span)) / 4.0;
            let b = f64::from(rng.gen_range(0..=4 * span)) / 4.0;
            Interval::new(a.min(b), a.max(b)).unwrap()
        })
        .collect()
}
