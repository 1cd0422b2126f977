use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Allowed deviation of a probability total from 1.
pub const PMF_TOLERANCE: f64 = 1e-9;

/// A labeled probability mass function.
///
/// Entries keep their input order; labels are unique and the weights sum to
/// one within [`PMF_TOLERANCE`]. Inputs outside the tolerance are rejected,
/// never renormalized.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    entries: Vec<(String, f64)>,
}

impl Pmf {
    pub fn new<I, S>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        let entries: Vec<(String, f64)> = entries.into_iter().map(|(l, p)| (l.into(), p)).collect();
        if entries.is_empty() {
            return Err(Error::InvalidPmf("no entries".into()));
        }
        let mut seen = BTreeSet::new();
        let mut total = 0.0;
        for (label, p) in &entries {
            if !p.is_finite() || *p < 0.0 {
                return Err(Error::InvalidPmf(format!("probability of `{label}` is {p}")));
            }
            if !seen.insert(label.as_str()) {
                return Err(Error::InvalidPmf(format!("duplicate label `{label}`")));
            }
            total += p;
        }
        if (total - 1.0).abs() > PMF_TOLERANCE {
            return Err(Error::InvalidPmf(format!("probabilities sum to {total}, not 1")));
        }
        Ok(Self { entries })
    }

    /// Normalizes nonnegative integer weights by their total.
    pub fn from_counts<I, S>(counts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, u64)>,
        S: Into<String>,
    {
        let counts: Vec<(String, u64)> = counts.into_iter().map(|(l, c)| (l.into(), c)).collect();
        let total: u64 = counts.iter().map(|(_, c)| *c).sum();
        if total == 0 {
            return Err(Error::InvalidPmf("total weight is zero".into()));
        }
        let t = total as f64;
        Self::new(counts.into_iter().map(|(l, c)| (l, c as f64 / t)))
    }

    pub fn uniform<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let p = 1.0 / labels.len() as f64;
        Self::new(labels.into_iter().map(|l| (l, p)))
    }

    pub fn entries(&self) -> &[(String, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(l, _)| l.as_str())
    }

    pub fn probabilities(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.iter().map(|(_, p)| *p)
    }

    pub fn get(&self, label: &str) -> Option<f64> {
        self.entries.iter().find(|(l, _)| l == label).map(|(_, p)| *p)
    }
}
