//! Ranked binary lists and the X/L parameters of the test.

use crate::error::{Error, Result};

/// A ranked binary list `v = (v_1, ..., v_N)`, top element first.
///
/// Positions are 1-based throughout the public API, matching the usual
/// `k_(n)` notation: `ones_above(n)` is the number of 1's among the first `n`
/// elements and `is_one(n)` reports `v_n`. The backing vector is 0-based, so
/// `v_n` lives at index `n - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankedList {
    v: Vec<bool>,
    prefix: Vec<usize>,
}

impl RankedList {
    pub fn new(v: Vec<bool>) -> Self {
        let mut prefix = Vec::with_capacity(v.len() + 1);
        prefix.push(0);
        let mut k = 0;
        for &x in &v {
            k += x as usize;
            prefix.push(k);
        }
        RankedList { v, prefix }
    }

    /// Build from integer labels, each of which must be 0 or 1.
    pub fn from_labels<T>(labels: &[T]) -> Result<Self>
    where
        T: Copy + Into<i64>,
    {
        let v = labels
            .iter()
            .enumerate()
            .map(|(i, &x)| match x.into() {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(Error::domain(format!(
                    "element {} is {other}, expected 0 or 1",
                    i + 1
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RankedList::new(v))
    }

    /// Build a list of length `len` with 1's at the given 1-based ranks.
    pub fn from_ranks(len: usize, ranks: &[usize]) -> Result<Self> {
        let mut v = vec![false; len];
        for &r in ranks {
            if r == 0 || r > len {
                return Err(Error::domain(format!("rank {r} outside 1..={len}")));
            }
            if v[r - 1] {
                return Err(Error::domain(format!("rank {r} given twice")));
            }
            v[r - 1] = true;
        }
        Ok(RankedList::new(v))
    }

    /// `N`
    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }

    /// `K`
    pub fn ones(&self) -> usize {
        self.prefix[self.v.len()]
    }

    /// `W`
    pub fn zeros(&self) -> usize {
        self.len() - self.ones()
    }

    /// `k_(n)` for `n` in `0..=N`.
    pub fn ones_above(&self, n: usize) -> usize {
        self.prefix[n]
    }

    /// `v_n` for `n` in `1..=N`.
    pub fn is_one(&self, n: usize) -> bool {
        self.v[n - 1]
    }

    /// All `k_(n)`, `n = 0..=N`.
    pub fn prefix_counts(&self) -> &[usize] {
        &self.prefix
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.v
    }

    /// The same list read bottom-to-top, for testing enrichment at the bottom.
    pub fn inverted(&self) -> Self {
        RankedList::new(self.v.iter().rev().copied().collect())
    }
}

/// `X` (minimum number of 1's above a permitted cutoff) and `L` (largest
/// permitted cutoff). `X = 0, L = N` gives the plain mHG test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TestParams {
    pub min_ones: usize,
    pub max_cutoff: usize,
}

impl TestParams {
    pub fn new(min_ones: usize, max_cutoff: usize) -> Self {
        TestParams {
            min_ones,
            max_cutoff,
        }
    }

    /// Unrestricted parameters for a list of length `len`.
    pub fn mhg(len: usize) -> Self {
        TestParams::new(0, len)
    }

    pub fn validate(&self, len: usize) -> Result<()> {
        if self.max_cutoff > len {
            return Err(Error::domain(format!(
                "L={} exceeds list length N={len}",
                self.max_cutoff
            )));
        }
        Ok(())
    }

    /// Whether cutoff `n` with `k` 1's above it may be tested.
    pub fn permits(&self, n: usize, k: usize) -> bool {
        n <= self.max_cutoff && k >= self.min_ones
    }
}
