//! Fold enrichment and the psi-thresholded enrichment score.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::list::{RankedList, TestParams};
use crate::pvalue::MEMBERSHIP_RTOL;
use crate::statistic::{compute_statistic, hg_pvalues};

/// `e_(n) = k_(n) / (K n / N)`, observed over expected 1's above cutoff `n`.
pub fn fold_enrichment(list: &RankedList, cutoff: usize) -> Result<f64> {
    if cutoff == 0 || cutoff > list.len() {
        return Err(Error::domain(format!(
            "cutoff {cutoff} outside 1..={}",
            list.len()
        )));
    }
    if list.ones() == 0 {
        return Err(Error::domain("fold enrichment undefined for a list without 1's"));
    }
    // both products are exact integers, so equal ratios give equal floats
    let observed = list.ones_above(cutoff) as f64 * list.len() as f64;
    Ok(observed / (list.ones() as f64 * cutoff as f64))
}

/// Compare `e_(a)` with `e_(b)` exactly: `k_a / a` vs `k_b / b`.
fn cmp_fold(list: &RankedList, a: usize, b: usize) -> Ordering {
    let lhs = list.ones_above(a) as u128 * b as u128;
    let rhs = list.ones_above(b) as u128 * a as u128;
    lhs.cmp(&rhs)
}

/// Result of [`enrichment_score`].
#[derive(Debug, Clone, PartialEq)]
pub struct EnrichmentReport {
    pub psi: f64,
    /// Permitted cutoffs with `p^HG_(n) <= psi`, ascending.
    pub candidate_cutoffs: Vec<usize>,
    /// Largest fold enrichment over the candidates; `None` when there are none.
    pub score: Option<f64>,
    /// Smallest candidate cutoff attaining `score`.
    pub score_cutoff: Option<usize>,
    /// `e_(n)` for `n = 1..=N` at index `n - 1`.
    pub fold: Vec<f64>,
}

/// The XL-mHG enrichment score `max { e_(n) : k_(n) >= X, n <= L, p^HG_(n) <= psi }`.
///
/// `psi` must lie in `(0, 1]` and must not be below the list's statistic for
/// the same `params`.
pub fn enrichment_score(list: &RankedList, params: TestParams, psi: f64) -> Result<EnrichmentReport> {
    if !(psi > 0.0 && psi <= 1.0) {
        return Err(Error::domain(format!("psi={psi} outside (0, 1]")));
    }
    if list.ones() == 0 {
        return Err(Error::domain("enrichment score undefined for a list without 1's"));
    }
    let stat = compute_statistic(list, params)?;
    let limit = psi * (1.0 + MEMBERSHIP_RTOL);
    if limit < stat.statistic {
        return Err(Error::domain(format!(
            "psi={psi} is below the statistic {}",
            stat.statistic
        )));
    }

    let hg = hg_pvalues(list);
    let candidate_cutoffs: Vec<usize> = (1..=params.max_cutoff)
        .filter(|&n| list.ones_above(n) >= params.min_ones && hg[n - 1] <= limit)
        .collect();
    let score_cutoff = candidate_cutoffs
        .iter()
        .copied()
        .reduce(|best, n| match cmp_fold(list, n, best) {
            Ordering::Greater => n,
            _ => best,
        });
    let fold = (1..=list.len())
        .map(|n| fold_enrichment(list, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(EnrichmentReport {
        psi,
        score: score_cutoff.map(|n| fold[n - 1]),
        score_cutoff,
        candidate_cutoffs,
        fold,
    })
}
