//! Kraft-inequality machinery, D-ary Huffman codes and canonical prefix codes.
//!
//! A codeword doubles as a path in a D-ary tree: digit `k` selects the
//! `k`-th child. Prefix-freeness of a code is therefore the same thing as
//! no leader sitting on the root path of another leader.

mod canonical;
mod huffman;
mod kraft;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use canonical::{canonical_codewords, code_from_lengths};
pub use huffman::{huffman_code, huffman_lengths};
pub use kraft::{
    arithmetic_progression_satisfies_kraft, consecutive_lengths_sum, kraft_alphabet_monotonicity,
    kraft_sum, kraft_sum_of, satisfies_kraft, KRAFT_TOLERANCE,
};

use crate::{Error, Pmf, Result};

/// Codeword lengths together with the channel alphabet size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeLengthSet {
    lengths: Vec<u32>,
    alphabet_size: u64,
}

impl CodeLengthSet {
    pub fn new(lengths: Vec<u32>, alphabet_size: u64) -> Result<Self> {
        if alphabet_size < 2 {
            return Err(Error::InvalidAlphabet(alphabet_size));
        }
        if lengths.contains(&0) {
            return Err(Error::ZeroLength);
        }
        Ok(Self { lengths, alphabet_size })
    }

    pub fn lengths(&self) -> &[u32] {
        &self.lengths
    }

    pub fn alphabet_size(&self) -> u64 {
        self.alphabet_size
    }

    /// The same lengths over another alphabet.
    pub fn with_alphabet(&self, alphabet_size: u64) -> Result<Self> {
        Self::new(self.lengths.clone(), alphabet_size)
    }
}

/// A string of D-ary digits; also a root-to-node path in a D-ary tree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Codeword {
    digits: Vec<u32>,
}

impl Codeword {
    pub fn new(digits: Vec<u32>) -> Self {
        Self { digits }
    }

    /// Parses a digit string such as `"102"`; digits above 9 use `a`..`z`.
    pub fn parse(text: &str, alphabet_size: u64) -> Result<Self> {
        let mut digits = Vec::with_capacity(text.len());
        for ch in text.chars() {
            let d = ch
                .to_digit(36)
                .filter(|&d| u64::from(d) < alphabet_size)
                .ok_or_else(|| Error::InvalidPlacement(alloc::format!("bad digit `{ch}` in `{text}`")))?;
            digits.push(d);
        }
        Ok(Self { digits })
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn is_prefix_of(&self, other: &Codeword) -> bool {
        other.digits.starts_with(&self.digits)
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.digits.iter().all(|&d| d < 36) {
            for &d in &self.digits {
                let ch = char::from_digit(d, 36).unwrap_or('?');
                write!(f, "{ch}")?;
            }
            Ok(())
        } else {
            for (i, d) in self.digits.iter().enumerate() {
                if i > 0 {
                    f.write_str(".")?;
                }
                write!(f, "{d}")?;
            }
            Ok(())
        }
    }
}

/// Labeled codewords over an alphabet of size `D`, in symbol order.
#[derive(Debug, Clone, PartialEq)]
pub struct PrefixCode {
    alphabet_size: u64,
    assignments: Vec<(String, Codeword)>,
}

impl PrefixCode {
    /// Wraps assignments without checking prefix-freeness; see [`PrefixCode::is_prefix_free`].
    pub fn from_assignments(alphabet_size: u64, assignments: Vec<(String, Codeword)>) -> Result<Self> {
        if alphabet_size < 2 {
            return Err(Error::InvalidAlphabet(alphabet_size));
        }
        if assignments
            .iter()
            .any(|(_, w)| w.digits.iter().any(|&d| u64::from(d) >= alphabet_size))
        {
            return Err(Error::InvalidPlacement("digit outside the alphabet".into()));
        }
        Ok(Self { alphabet_size, assignments })
    }

    pub fn alphabet_size(&self) -> u64 {
        self.alphabet_size
    }

    pub fn assignments(&self) -> &[(String, Codeword)] {
        &self.assignments
    }

    pub fn get(&self, label: &str) -> Option<&Codeword> {
        self.assignments.iter().find(|(l, _)| l == label).map(|(_, w)| w)
    }

    pub fn lengths(&self) -> Vec<u32> {
        self.assignments.iter().map(|(_, w)| w.len() as u32).collect()
    }

    pub fn kraft_sum(&self) -> f64 {
        kraft_sum_of(self.alphabet_size, self.assignments.iter().map(|(_, w)| w.len() as u32))
    }

    /// Pairwise check: no codeword is a prefix of (or equal to) another.
    pub fn is_prefix_free(&self) -> bool {
        let words = &self.assignments;
        words.iter().enumerate().all(|(i, (_, a))| {
            words[i + 1..]
                .iter()
                .all(|(_, b)| !a.is_prefix_of(b) && !b.is_prefix_of(a))
        })
    }
}

/// `Σ p_i · len_i` over the labels of `pmf`.
pub fn expected_length(code: &PrefixCode, pmf: &Pmf) -> Result<f64> {
    pmf.entries().iter().try_fold(0.0, |acc, (label, p)| {
        let word = code.get(label).ok_or_else(|| Error::MissingLabel(label.clone()))?;
        Ok(acc + p * word.len() as f64)
    })
}

/// Shannon entropy `−Σ p log_base p` with `0 · log 0 = 0`.
pub fn shannon_entropy(pmf: &Pmf, base: f64) -> Result<f64> {
    if !(base.is_finite() && base > 1.0) {
        return Err(Error::OutOfRange { name: "entropy base", value: base });
    }
    let bits: f64 = pmf
        .probabilities()
        .filter(|&p| p > 0.0)
        .map(|p| -p * libm::log2(p))
        .sum();
    Ok((bits / libm::log2(base)).max(0.0))
}
