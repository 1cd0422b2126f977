use super::CodeLengthSet;
use crate::{Error, Result};

/// Slack allowed when comparing a Kraft sum against 1.
pub const KRAFT_TOLERANCE: f64 = 1e-12;

fn inverse_power(alphabet_size: u64, exponent: f64) -> f64 {
    libm::pow(alphabet_size as f64, -exponent)
}

/// `Σ D^{−n}` over an arbitrary iterator of lengths.
pub fn kraft_sum_of(alphabet_size: u64, lengths: impl IntoIterator<Item = u32>) -> f64 {
    lengths
        .into_iter()
        .map(|n| inverse_power(alphabet_size, f64::from(n)))
        .sum()
}

/// `Σ D^{−n_i}` over the length set.
pub fn kraft_sum(lengths: &CodeLengthSet) -> f64 {
    kraft_sum_of(lengths.alphabet_size(), lengths.lengths().iter().copied())
}

pub fn satisfies_kraft(lengths: &CodeLengthSet) -> bool {
    kraft_sum(lengths) <= 1.0 + KRAFT_TOLERANCE
}

/// Closed form of the Kraft sum over `n1, n1 + 1, …, n1 + m − 1`:
/// `D^{−n1} (D^{−m} − 1) / (D^{−1} − 1)`.
pub fn consecutive_lengths_sum(n1: u32, m: u32, alphabet_size: u64) -> Result<f64> {
    check_progression(n1, 1, m, alphabet_size)?;
    let d = alphabet_size as f64;
    let head = inverse_power(alphabet_size, f64::from(n1));
    Ok(head * (libm::pow(d, -f64::from(m)) - 1.0) / (1.0 / d - 1.0))
}

/// Kraft sum of the arithmetic progression `n1, n1 + step, …` with `m`
/// terms, evaluated as a geometric series, and whether it is at most 1.
pub fn arithmetic_progression_satisfies_kraft(
    n1: u32,
    step: u32,
    m: u32,
    alphabet_size: u64,
) -> Result<(f64, bool)> {
    check_progression(n1, step, m, alphabet_size)?;
    let ratio = inverse_power(alphabet_size, f64::from(step));
    let head = inverse_power(alphabet_size, f64::from(n1));
    let sum = head * (1.0 - libm::pow(ratio, f64::from(m))) / (1.0 - ratio);
    Ok((sum, sum <= 1.0 + KRAFT_TOLERANCE))
}

fn check_progression(n1: u32, step: u32, m: u32, alphabet_size: u64) -> Result<()> {
    if alphabet_size < 2 {
        return Err(Error::InvalidAlphabet(alphabet_size));
    }
    if n1 == 0 {
        return Err(Error::ZeroLength);
    }
    if step == 0 {
        return Err(Error::CountOutOfRange { name: "step", value: 0, max: u64::from(u32::MAX) });
    }
    if m == 0 {
        return Err(Error::CountOutOfRange { name: "M", value: 0, max: u64::from(u32::MAX) });
    }
    Ok(())
}

/// Re-checks Kraft for the same lengths over a strictly larger alphabet.
///
/// Fails when the lengths do not satisfy Kraft at their own alphabet, since
/// the monotonicity statement then has no premise.
pub fn kraft_alphabet_monotonicity(lengths: &CodeLengthSet, larger_alphabet: u64) -> Result<bool> {
    let base = lengths.alphabet_size();
    if larger_alphabet <= base {
        return Err(Error::AlphabetNotLarger { base, other: larger_alphabet });
    }
    let sum = kraft_sum(lengths);
    if sum > 1.0 + KRAFT_TOLERANCE {
        return Err(Error::BaseKraftViolated { sum });
    }
    Ok(satisfies_kraft(&lengths.with_alphabet(larger_alphabet)?))
}
