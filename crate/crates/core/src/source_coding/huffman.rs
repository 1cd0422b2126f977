use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::{Ordering, Reverse};

use super::{canonical_codewords, CodeLengthSet, PrefixCode};
use crate::{Error, Pmf, Result};

/// Queue entry: lower probability first, then the earlier-created node.
#[derive(Debug, Clone, Copy)]
struct Entry {
    prob: f64,
    created: usize,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.prob
            .total_cmp(&other.prob)
            .then(self.created.cmp(&other.created))
    }
}

/// Optimal D-ary codeword lengths for `pmf`, in pmf order.
///
/// For `D > 2` the alphabet is padded with zero-probability dummy symbols
/// until the symbol count is `1 (mod D − 1)`, so every merge takes exactly
/// `D` nodes. Dummies are created before the real symbols and are dropped
/// from the result. A single symbol gets length 1.
pub fn huffman_lengths(pmf: &Pmf, alphabet_size: u64) -> Result<Vec<u32>> {
    if alphabet_size < 2 {
        return Err(Error::InvalidAlphabet(alphabet_size));
    }
    let n = pmf.len();
    if n == 0 {
        return Err(Error::InvalidPmf("no entries".into()));
    }
    if n == 1 {
        return Ok(vec![1]);
    }
    let arity = usize::try_from(alphabet_size).unwrap_or(usize::MAX).min(n.max(2));
    let dummies = if arity == 2 { 0 } else { (arity - 1 - (n - 1) % (arity - 1)) % (arity - 1) };

    // parent[i] for every node ever created; leaves first (dummies, then symbols).
    let mut parent: Vec<usize> = Vec::new();
    let mut heap = BinaryHeap::new();
    for _ in 0..dummies {
        heap.push(Reverse(Entry { prob: 0.0, created: parent.len() }));
        parent.push(usize::MAX);
    }
    for p in pmf.probabilities() {
        heap.push(Reverse(Entry { prob: p, created: parent.len() }));
        parent.push(usize::MAX);
    }
    while heap.len() > 1 {
        let id = parent.len();
        parent.push(usize::MAX);
        let mut prob = 0.0;
        for _ in 0..arity.min(heap.len()) {
            let Reverse(child) = heap.pop().expect("heap holds more than one node");
            parent[child.created] = id;
            prob += child.prob;
        }
        heap.push(Reverse(Entry { prob, created: id }));
    }

    // Parents are always created after their children, so a reverse sweep
    // settles every depth before it is read.
    let mut depth = vec![0u32; parent.len()];
    for id in (0..parent.len()).rev() {
        if parent[id] != usize::MAX {
            depth[id] = depth[parent[id]] + 1;
        }
    }
    Ok(depth[dummies..dummies + n].to_vec())
}

/// Huffman code for `pmf`: optimal lengths, then canonical digits with ties
/// in pmf order.
pub fn huffman_code(pmf: &Pmf, alphabet_size: u64) -> Result<PrefixCode> {
    let lengths = CodeLengthSet::new(huffman_lengths(pmf, alphabet_size)?, alphabet_size)?;
    let words = canonical_codewords(&lengths)?;
    PrefixCode::from_assignments(
        alphabet_size,
        pmf.labels().map(Into::into).zip(words).collect(),
    )
}
