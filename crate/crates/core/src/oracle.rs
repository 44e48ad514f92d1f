//! Brute-force reference results for small lists.
//!
//! Nothing here uses the recurrences: tails come from [`tail_sf`] (direct
//! log-factorial PMF) and p-values from enumerating every list with the same
//! `N` and `K`. Cost grows as `C(N, K)`, so enumeration is capped.

use crate::error::{Error, Result};
use crate::kernel::{tail_sf, HGParams};
use crate::list::{RankedList, TestParams};
use crate::pvalue::{Configuration, MEMBERSHIP_RTOL};

/// Largest universe [`brute_pvalue`] will enumerate.
pub const UNIVERSE_CAP: u64 = 1_000_000;

/// `C(n, k)` exactly, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Every ranked list of length `N` with exactly `K` ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ListUniverse {
    len: usize,
    ones: usize,
}

impl ListUniverse {
    pub fn new(len: usize, ones: usize) -> Result<Self> {
        if ones > len {
            return Err(Error::domain(format!("K={ones} exceeds N={len}")));
        }
        let size = binomial(len, ones);
        if size > UNIVERSE_CAP {
            return Err(Error::TooLarge {
                n: len,
                k: ones,
                cap: UNIVERSE_CAP,
            });
        }
        Ok(ListUniverse { len, ones })
    }

    pub fn cardinality(&self) -> u64 {
        binomial(self.len, self.ones)
    }

    /// Lists in lexicographic order of their 1-positions.
    pub fn iter(&self) -> UniverseIter {
        UniverseIter {
            len: self.len,
            positions: Some((0..self.ones).collect()),
        }
    }
}

pub struct UniverseIter {
    len: usize,
    positions: Option<Vec<usize>>,
}

impl Iterator for UniverseIter {
    type Item = RankedList;

    fn next(&mut self) -> Option<RankedList> {
        let pos = self.positions.as_mut()?;
        let mut v = vec![false; self.len];
        for &p in pos.iter() {
            v[p] = true;
        }
        let out = RankedList::new(v);

        // advance to the next combination
        let k = pos.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.positions = None;
                break;
            }
            i -= 1;
            if pos[i] < self.len - k + i {
                pos[i] += 1;
                for j in i + 1..k {
                    pos[j] = pos[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Directly evaluated `p_(k,n)` for every legal `(k, n)` of one `(N, K)`.
#[derive(Debug, Clone)]
pub struct TailTable {
    successes: usize,
    tails: Vec<f64>,
}

impl TailTable {
    pub fn new(population: usize, successes: usize) -> Result<Self> {
        let mut tails = vec![f64::NAN; (population + 1) * (successes + 1)];
        for n in 0..=population {
            let top = HGParams::new(population, successes, n, n.min(successes))?;
            for k in top.min_observed()..=top.max_observed() {
                tails[n * (successes + 1) + k] =
                    tail_sf(&HGParams::new(population, successes, n, k)?)?;
            }
        }
        Ok(TailTable { successes, tails })
    }

    pub fn get(&self, ones: usize, cutoff: usize) -> f64 {
        self.tails[cutoff * (self.successes + 1) + ones]
    }
}

fn naive_with(list: &RankedList, params: TestParams, tails: &TailTable) -> f64 {
    (1..=params.max_cutoff)
        .filter(|&n| list.ones_above(n) >= params.min_ones)
        .map(|n| tails.get(list.ones_above(n), n))
        .fold(1.0, f64::min)
}

/// Minimum of the directly evaluated tail over every permitted cutoff.
pub fn naive_statistic(list: &RankedList, params: TestParams) -> Result<f64> {
    params.validate(list.len())?;
    let tails = TailTable::new(list.len(), list.ones())?;
    Ok(naive_with(list, params, &tails))
}

/// Naive statistics of every list in a universe, for repeated p-value lookups.
#[derive(Debug, Clone)]
pub struct NullDistribution {
    sorted: Vec<f64>,
}

impl NullDistribution {
    pub fn enumerate(universe: &ListUniverse, params: TestParams) -> Result<Self> {
        params.validate(universe.len)?;
        let tails = TailTable::new(universe.len, universe.ones)?;
        let mut sorted: Vec<f64> = universe
            .iter()
            .map(|l| naive_with(&l, params, &tails))
            .collect();
        sorted.sort_by(f64::total_cmp);
        Ok(NullDistribution { sorted })
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    /// Fraction of lists whose statistic is at least as good as `statistic`.
    pub fn pvalue(&self, statistic: f64) -> f64 {
        let limit = statistic * (1.0 + MEMBERSHIP_RTOL);
        let hits = self.sorted.partition_point(|&s| s <= limit);
        hits as f64 / self.sorted.len() as f64
    }
}

/// Exact p-value of `list` by enumerating all `C(N, K)` lists.
pub fn brute_pvalue(list: &RankedList, params: TestParams) -> Result<f64> {
    let universe = ListUniverse::new(list.len(), list.ones())?;
    let s = naive_statistic(list, params)?;
    if s >= 1.0 {
        return Ok(1.0);
    }
    Ok(NullDistribution::enumerate(&universe, params)?.pvalue(s))
}

/// The configurations `(k_(n), n - k_(n))` visited by `list`, `n = 0..=N`.
pub fn lattice_path(list: &RankedList) -> Vec<Configuration> {
    (0..=list.len())
        .map(|n| Configuration::new(list.ones_above(n), n - list.ones_above(n)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v_ex() -> RankedList {
        RankedList::from_labels(&[1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0]).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(20, 5), 15504);
        assert_eq!(binomial(60, 10), 75_394_027_566);
        assert_eq!(binomial(100, 20), u64::MAX);
        assert_eq!(binomial(5, 7), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn universe_enumeration() {
        let u = ListUniverse::new(20, 5).unwrap();
        assert_eq!(u.cardinality(), 15504);
        let lists: Vec<_> = u.iter().collect();
        assert_eq!(lists.len(), 15504);
        assert!(lists.iter().all(|l| l.ones() == 5 && l.len() == 20));
        assert_eq!(lists[0].prefix_counts()[5], 5);
        assert_eq!(ListUniverse::new(4, 0).unwrap().iter().count(), 1);
        assert_eq!(ListUniverse::new(4, 4).unwrap().iter().count(), 1);
        assert_eq!(ListUniverse::new(0, 0).unwrap().iter().count(), 1);
    }

    #[test]
    fn universe_cap() {
        assert!(matches!(
            ListUniverse::new(100, 20),
            Err(Error::TooLarge { .. })
        ));
        assert!(brute_pvalue(&RankedList::from_ranks(40, &[1, 2, 3, 4, 5, 6, 7, 8]).unwrap(), TestParams::mhg(40)).is_err());
    }

    #[test]
    fn worked_example() {
        let s = naive_statistic(&v_ex(), TestParams::mhg(20)).unwrap();
        assert!((s - 0.014).abs() < 5e-4);
        let p = brute_pvalue(&v_ex(), TestParams::mhg(20)).unwrap();
        assert!((p - 0.024).abs() < 5e-4);
    }

    #[test]
    fn trivial_lists() {
        let zeros = RankedList::new(vec![false; 6]);
        assert_eq!(naive_statistic(&zeros, TestParams::mhg(6)).unwrap(), 1.0);
        assert_eq!(brute_pvalue(&zeros, TestParams::mhg(6)).unwrap(), 1.0);
        let bottom = RankedList::from_labels(&[0, 0, 0, 1, 1]).unwrap();
        assert_eq!(brute_pvalue(&bottom, TestParams::mhg(5)).unwrap(), 1.0);
    }

    #[test]
    fn path_shape() {
        let path = lattice_path(&v_ex());
        assert_eq!(path.len(), 21);
        assert_eq!(path[0], Configuration::new(0, 0));
        assert_eq!(path[6], Configuration::new(4, 2));
        assert_eq!(path[20], Configuration::new(5, 15));
    }
}
