//! The XL-mHG test statistic.
//!
//! `s = min { p^HG_(n) : n <= L, k_(n) >= X }`, or 1 when no cutoff is
//! permitted. The plain mHG statistic is the `X = 0, L = N` case.
//!
//! The PMF at every cutoff, `f(k_(n); N, K, n)`, comes from one pass down the
//! list (a step in n on a 0, a joint step on a 1). Each tail `p^HG_(n)` is then
//! accumulated upward from that value by steps in k. Minima never occur at
//! 0-elements, and a 1 followed by another 1 is beaten by its successor, so
//! tails are only evaluated at the last 1 of each run.

use crate::error::{Error, Result};
use crate::kernel::{factor, PmfChain};
use crate::list::{RankedList, TestParams};
use crate::scaled::ScaledProb;

/// Outcome of [`compute_statistic`].
#[derive(Debug, Clone, PartialEq)]
pub struct StatResult {
    /// `s`, in `(0, 1]`. May flush to 0.0 for astronomically small values;
    /// `statistic_ext` keeps the full range.
    pub statistic: f64,
    pub statistic_ext: ScaledProb,
    /// Smallest cutoff achieving the minimum; 0 when `s = 1`.
    pub cutoff: usize,
    /// `k_(cutoff)`
    pub k_at_cutoff: usize,
    /// `p^HG_(n)` for `n = 1..=N` at index `n - 1`, when requested.
    pub hg_pvalues: Option<Vec<f64>>,
}

/// `f(k_(n); N, K, n)` for `n = 0..=N`, in linear space exactly as the
/// recurrences produce it. Values that underflow are flagged through the
/// `log` facade and come back as 0.0.
pub fn pmf_along_list(list: &RankedList) -> Vec<f64> {
    let mut chain = PmfChain::origin(list.len(), list.ones()).expect("K <= N by construction");
    let mut out = Vec::with_capacity(list.len() + 1);
    out.push(chain.value());
    for &one in list.as_slice() {
        let f = if one { chain.inc_kn() } else { chain.inc_n() };
        out.push(f.expect("list path stays inside the legal region"));
    }
    out
}

/// Same as [`pmf_along_list`] with an extended exponent, so nothing underflows.
pub(crate) fn pmf_along_list_ext(list: &RankedList) -> Vec<ScaledProb> {
    let (pop, succ) = (list.len(), list.ones());
    let mut f = ScaledProb::ONE;
    let mut k = 0;
    let mut out = Vec::with_capacity(pop + 1);
    out.push(f);
    // The element at slice index n is v_(n+1): it moves the cutoff from n to n+1.
    for (n, &one) in list.as_slice().iter().enumerate() {
        if one {
            f = f.scale(factor::inc_kn(pop, succ, n, k));
            k += 1;
        } else {
            f = f.scale(factor::inc_n(pop, succ, n, k));
        }
        out.push(f);
    }
    out
}

fn check_tail_args(k: usize, pop: usize, succ: usize, n: usize) -> Result<()> {
    if succ > pop || n > pop {
        return Err(Error::domain(format!("invalid N={pop}, K={succ}, n={n}")));
    }
    let lo = n.saturating_sub(pop - succ);
    if k < lo || k > n.min(succ) {
        return Err(Error::domain(format!(
            "k={k} outside [{lo}, {}]",
            n.min(succ)
        )));
    }
    Ok(())
}

/// `p^HG_(n) = sum_{i=k}^{min(n,K)} f(i; N, K, n)` given `f = f(k; N, K, n)`,
/// accumulated by steps in k.
pub fn hgp_from_pmf(f: f64, k: usize, pop: usize, succ: usize, n: usize) -> Result<f64> {
    check_tail_args(k, pop, succ, n)?;
    Ok(hgp_from_pmf_ext(ScaledProb::from_f64(f), k, pop, succ, n).to_f64())
}

pub(crate) fn hgp_from_pmf_ext(
    f: ScaledProb,
    k: usize,
    pop: usize,
    succ: usize,
    n: usize,
) -> ScaledProb {
    // the whole distribution: certain, not approximately certain
    if k <= n.saturating_sub(pop - succ) {
        return ScaledProb::ONE;
    }
    let top = n.min(succ);
    let mut term = f;
    let mut total = f;
    for i in k..top {
        term = term.scale(factor::inc_k(pop, succ, n, i));
        total = total + term;
    }
    if total > ScaledProb::ONE {
        ScaledProb::ONE
    } else {
        total
    }
}

/// The XL-mHG statistic with the achieving cutoff.
pub fn compute_statistic(list: &RankedList, params: TestParams) -> Result<StatResult> {
    run(list, params, false)
}

/// As [`compute_statistic`], also reporting `p^HG_(n)` at every cutoff.
pub fn compute_statistic_reporting(list: &RankedList, params: TestParams) -> Result<StatResult> {
    run(list, params, true)
}

/// `p^HG_(n)` for `n = 1..=N`.
pub fn hg_pvalues(list: &RankedList) -> Vec<f64> {
    let (pop, succ) = (list.len(), list.ones());
    let pmf = pmf_along_list_ext(list);
    (1..=pop)
        .map(|n| hgp_from_pmf_ext(pmf[n], list.ones_above(n), pop, succ, n).to_f64())
        .collect()
}

fn run(list: &RankedList, params: TestParams, report: bool) -> Result<StatResult> {
    params.validate(list.len())?;
    let (pop, succ) = (list.len(), list.ones());
    let pmf = pmf_along_list_ext(list);
    let last = params.max_cutoff;

    let mut best = ScaledProb::ONE;
    let mut cutoff = 0;
    let mut k_at_cutoff = 0;
    for (n, &f) in pmf.iter().enumerate().take(last + 1).skip(1) {
        if !list.is_one(n) {
            continue;
        }
        let k = list.ones_above(n);
        if k < params.min_ones {
            continue;
        }
        if n < last && list.is_one(n + 1) {
            continue;
        }
        let p = hgp_from_pmf_ext(f, k, pop, succ, n);
        if p < best {
            best = p;
            cutoff = n;
            k_at_cutoff = k;
        }
    }

    let hg_pvalues = report.then(|| {
        (1..=pop)
            .map(|n| hgp_from_pmf_ext(pmf[n], list.ones_above(n), pop, succ, n).to_f64())
            .collect()
    });

    Ok(StatResult {
        statistic: best.to_f64(),
        statistic_ext: best,
        cutoff,
        k_at_cutoff,
        hg_pvalues,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{pmf_direct, tail_sf, HGParams};
    use approx::assert_relative_eq;

    fn v_ex() -> RankedList {
        RankedList::from_labels(&[1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0]).unwrap()
    }

    #[test]
    fn pmf_along_all_zeros() {
        let l = RankedList::new(vec![false; 9]);
        assert!(pmf_along_list(&l).iter().all(|&f| f == 1.0));
    }

    #[test]
    fn pmf_along_matches_direct() {
        let l = v_ex();
        let f = pmf_along_list(&l);
        for n in 0..=20 {
            let direct = pmf_direct(&HGParams::new(20, 5, n, l.ones_above(n)).unwrap()).unwrap();
            assert_relative_eq!(f[n], direct, max_relative = 1e-10);
        }
        let l = RankedList::from_labels(&[1, 1, 0, 0]).unwrap();
        assert_relative_eq!(pmf_along_list(&l)[2], 1.0 / 6.0, max_relative = 1e-14);
    }

    #[test]
    fn hgp_examples() {
        let f = pmf_direct(&HGParams::new(20, 5, 5, 3).unwrap()).unwrap();
        assert!((hgp_from_pmf(f, 3, 20, 5, 5).unwrap() - 0.073).abs() < 5e-4);
        let f = pmf_direct(&HGParams::new(20, 5, 7, 5).unwrap()).unwrap();
        assert_eq!(hgp_from_pmf(f, 5, 20, 5, 7).unwrap(), f);
        assert!(hgp_from_pmf(0.1, 6, 20, 5, 7).is_err());
    }

    #[test]
    fn hgp_matches_tail_sf() {
        for pop in 1..=30 {
            for succ in 0..=pop {
                for n in 0..=pop {
                    let p = HGParams::new(pop, succ, n, n.min(succ)).unwrap();
                    for k in p.min_observed()..=p.max_observed() {
                        let hp = HGParams::new(pop, succ, n, k).unwrap();
                        let f = pmf_direct(&hp).unwrap();
                        let got = hgp_from_pmf(f, k, pop, succ, n).unwrap();
                        assert_relative_eq!(got, tail_sf(&hp).unwrap(), max_relative = 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn worked_example_statistic() {
        let r = compute_statistic(&v_ex(), TestParams::mhg(20)).unwrap();
        assert!((r.statistic - 0.014).abs() < 5e-4);
        assert_eq!((r.cutoff, r.k_at_cutoff), (6, 4));
        assert!(r.hg_pvalues.is_none());

        let r = compute_statistic(&v_ex(), TestParams::new(3, 5)).unwrap();
        assert!((r.statistic - 0.032).abs() < 5e-4);
        assert_eq!((r.cutoff, r.k_at_cutoff), (4, 3));
    }

    #[test]
    fn reported_pvalues() {
        let r = compute_statistic_reporting(&v_ex(), TestParams::mhg(20)).unwrap();
        let hg = r.hg_pvalues.unwrap();
        assert_eq!(hg.len(), 20);
        assert!((hg[3] - 0.032).abs() < 5e-4);
        assert!((hg[4] - 0.073).abs() < 5e-4);
        assert_eq!(hg[5], r.statistic);
        assert_eq!(hg, hg_pvalues(&v_ex()));
    }

    #[test]
    fn degenerate_lists() {
        let bottom = RankedList::from_labels(&[0, 0, 0, 0, 0, 0, 1, 1, 1]).unwrap();
        let r = compute_statistic(&bottom, TestParams::mhg(9)).unwrap();
        assert_eq!((r.statistic, r.cutoff, r.k_at_cutoff), (1.0, 0, 0));

        let r = compute_statistic(&v_ex(), TestParams::new(6, 20)).unwrap();
        assert_eq!((r.statistic, r.cutoff), (1.0, 0));

        let r = compute_statistic(&v_ex(), TestParams::new(0, 0)).unwrap();
        assert_eq!((r.statistic, r.cutoff), (1.0, 0));

        let empty = RankedList::new(vec![]);
        assert_eq!(compute_statistic(&empty, TestParams::mhg(0)).unwrap().statistic, 1.0);

        assert!(compute_statistic(&v_ex(), TestParams::new(0, 21)).is_err());
    }

    #[test]
    fn inverting_reveals_bottom_enrichment() {
        let bottom = RankedList::from_labels(&[0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 1]).unwrap();
        assert!(compute_statistic(&bottom, TestParams::mhg(11)).unwrap().statistic > 0.99);
        let top = compute_statistic(&bottom.inverted(), TestParams::mhg(11)).unwrap();
        assert!(top.statistic < 0.05);
        assert_eq!(top.cutoff, 4);
    }

    #[test]
    fn no_underflow_on_long_lists() {
        let mut v = vec![true; 500];
        v.resize(10_000, false);
        let l = RankedList::new(v);
        assert_eq!(*pmf_along_list(&l).last().unwrap(), 0.0);
        let r = compute_statistic(&l, TestParams::mhg(10_000)).unwrap();
        assert_eq!(r.cutoff, 500);
        // 1 / C(10000, 500)
        let expected =
            crate::kernel::ln_pmf_direct(&HGParams::new(10_000, 500, 500, 500).unwrap()).unwrap();
        assert_relative_eq!(r.statistic_ext.ln(), expected, max_relative = 1e-10);
        assert_eq!(r.statistic, 0.0);
    }
}
