use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use super::{kraft_sum, CodeLengthSet, Codeword, PrefixCode, KRAFT_TOLERANCE};
use crate::{Error, Result};

/// Canonical codewords for `lengths`, returned in input order.
///
/// Symbols are visited by ascending length (ties in input order) and receive
/// numerically increasing codewords; when the length grows the running value
/// is extended with trailing zero digits.
pub fn canonical_codewords(lengths: &CodeLengthSet) -> Result<Vec<Codeword>> {
    let sum = kraft_sum(lengths);
    if sum > 1.0 + KRAFT_TOLERANCE {
        return Err(Error::KraftViolation { sum });
    }
    let d = u32::try_from(lengths.alphabet_size()).map_err(|_| Error::Overflow)?;
    let lens = lengths.lengths();
    let mut order: Vec<usize> = (0..lens.len()).collect();
    order.sort_by_key(|&i| (lens[i], i));

    let mut out = vec![Codeword::default(); lens.len()];
    let mut current: Vec<u32> = Vec::new();
    for (rank, &i) in order.iter().enumerate() {
        if rank > 0 && !increment(&mut current, d) {
            // Only reachable when the float Kraft check rounded a true excess away.
            return Err(Error::KraftViolation { sum });
        }
        current.resize(lens[i] as usize, 0);
        out[i] = Codeword::new(current.clone());
    }
    Ok(out)
}

/// Adds one in base `d`; returns false on carry out of the leading digit.
fn increment(digits: &mut [u32], d: u32) -> bool {
    for digit in digits.iter_mut().rev() {
        *digit += 1;
        if *digit < d {
            return true;
        }
        *digit = 0;
    }
    false
}

/// Canonical prefix code for a length set. Symbols are labeled by their
/// zero-based position in the input.
pub fn code_from_lengths(lengths: &CodeLengthSet) -> Result<PrefixCode> {
    let words = canonical_codewords(lengths)?;
    PrefixCode::from_assignments(
        lengths.alphabet_size(),
        words.into_iter().enumerate().map(|(i, w)| (i.to_string(), w)).collect(),
    )
}
