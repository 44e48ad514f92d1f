//! Exact XL-mHG p-values by lattice path counting.
//!
//! A list with `K` ones and `W` zeros is a monotone path from `(0, 0)` to
//! `(K, W)` on the configuration grid, where cell `(k, w)` means "k ones and w
//! zeros above cutoff `n = k + w`". Under the null all `C(N, K)` paths are
//! equally likely. A random list reaches a statistic at least as good as the
//! observed `s` exactly when its path touches the rejection region
//!
//! ```text
//! R_{X,L} = { (k, w) : p_(k,w) <= s, k >= X, k + w <= L }
//! ```
//!
//! with `p_(k,w) = S(k - 1; N, K, k + w)`. The region is found one
//! anti-diagonal at a time: start from the most enriched cell
//! `k* = min(n, K)` and walk down in `k` while the accumulated tail stays
//! within `s`. The path fractions `m_(k,w)` that avoid the region obey
//!
//! ```text
//! m_(k,w) = m_(k-1,w) (K-k+1)/(N-n+1) + m_(k,w-1) (W-w+1)/(N-n+1)
//! ```
//!
//! and are zero inside the region.

use crate::error::{Error, Result};
use crate::kernel::{factor, tail_sf, HGParams};
use crate::list::TestParams;
use crate::scaled::ScaledProb;

/// Relative slack applied to `s` when testing region membership. The region
/// scan and the statistic use different recurrence chains; without slack the
/// achieving configuration itself can fall out of the region by one ulp.
pub const MEMBERSHIP_RTOL: f64 = 1e-12;

/// `min(1, K s)`, an upper bound on the exact mHG p-value. A statistic of 1
/// is attained by every list, so its bound is 1 even when `K = 0`.
pub fn lipson_bound(statistic: f64, successes: usize) -> f64 {
    if statistic >= 1.0 {
        return 1.0;
    }
    (successes as f64 * statistic).min(1.0)
}

/// A hypergeometric configuration: `ones` 1's and `zeros` 0's above the cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub ones: usize,
    pub zeros: usize,
}

impl Configuration {
    pub fn new(ones: usize, zeros: usize) -> Self {
        Configuration { ones, zeros }
    }

    /// `n = k + w`
    pub fn cutoff(&self) -> usize {
        self.ones + self.zeros
    }

    /// `p_(k,w)` evaluated directly.
    pub fn tail_pvalue(&self, successes: usize, failures: usize) -> Result<f64> {
        tail_sf(&HGParams::new(
            successes + failures,
            successes,
            self.cutoff(),
            self.ones,
        )?)
    }
}

/// Membership of every configuration in `R_{X,L}` on the `(K+1) x (W+1)` grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionMask {
    successes: usize,
    failures: usize,
    cells: Vec<bool>,
}

impl RegionMask {
    /// A grid with nothing marked.
    pub fn empty(successes: usize, failures: usize) -> Self {
        RegionMask {
            successes,
            failures,
            cells: vec![false; (successes + 1) * (failures + 1)],
        }
    }

    /// `(K + 1, W + 1)`
    pub fn dims(&self) -> (usize, usize) {
        (self.successes + 1, self.failures + 1)
    }

    fn index(&self, ones: usize, zeros: usize) -> usize {
        assert!(ones <= self.successes && zeros <= self.failures);
        ones * (self.failures + 1) + zeros
    }

    pub fn contains(&self, ones: usize, zeros: usize) -> bool {
        self.cells[self.index(ones, zeros)]
    }

    pub fn set(&mut self, ones: usize, zeros: usize, marked: bool) {
        let i = self.index(ones, zeros);
        self.cells[i] = marked;
    }

    /// Number of marked configurations.
    pub fn count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    pub fn marked(&self) -> impl Iterator<Item = Configuration> + '_ {
        let cols = self.failures + 1;
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(move |(i, _)| Configuration::new(i / cols, i % cols))
    }
}

/// Fractions `m_(k,w)` of paths through each configuration that avoid the
/// region, on the full grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PathTable {
    successes: usize,
    failures: usize,
    m: Vec<f64>,
}

impl PathTable {
    pub fn get(&self, ones: usize, zeros: usize) -> f64 {
        assert!(ones <= self.successes && zeros <= self.failures);
        self.m[ones * (self.failures + 1) + zeros]
    }

    /// `m_(K,W)`, the fraction of all paths that never touch the region.
    pub fn surviving(&self) -> f64 {
        self.get(self.successes, self.failures)
    }

    /// `1 - m_(K,W)`, clamped to `[0, 1]`.
    pub fn pvalue(&self) -> f64 {
        (1.0 - self.surviving()).clamp(0.0, 1.0)
    }
}

/// Fill the path table for an arbitrary mask, diagonal by diagonal.
pub fn path_table(mask: &RegionMask) -> PathTable {
    let (succ, fail) = (mask.successes, mask.failures);
    let pop = succ + fail;
    let cols = fail + 1;
    let mut m = vec![0.0; (succ + 1) * cols];
    m[0] = if mask.contains(0, 0) { 0.0 } else { 1.0 };
    for n in 1..=pop {
        let denom = (pop - n + 1) as f64;
        let hi = n.min(succ);
        let lo = n.saturating_sub(fail);
        for k in (lo..=hi).rev() {
            let w = n - k;
            let idx = k * cols + w;
            if mask.cells[idx] {
                m[idx] = 0.0;
                continue;
            }
            let mut v = 0.0;
            if w > 0 {
                v += m[idx - 1] * ((fail - w + 1) as f64 / denom);
            }
            if k > 0 {
                v += m[idx - cols] * ((succ - k + 1) as f64 / denom);
            }
            m[idx] = v;
        }
    }
    PathTable {
        successes: succ,
        failures: fail,
        m,
    }
}

/// Walks the anti-diagonals `n = 1, 2, ...` and reports, for each, the lowest
/// `k` that lies in the region. Marked cells on a diagonal always form the run
/// `lowest..=min(n, K)` because `p_(k, n-k)` grows as `k` decreases.
struct RegionScan {
    pop: usize,
    succ: usize,
    fail: usize,
    min_ones: usize,
    threshold: ScaledProb,
    n: usize,
    /// `f(k*; N, K, n)` at the current diagonal
    start: ScaledProb,
}

impl RegionScan {
    fn new(statistic: ScaledProb, succ: usize, fail: usize, min_ones: usize) -> Self {
        RegionScan {
            pop: succ + fail,
            succ,
            fail,
            min_ones,
            threshold: statistic.scale(1.0 + MEMBERSHIP_RTOL),
            n: 0,
            start: ScaledProb::ONE,
        }
    }

    /// Advance to the next diagonal and return its lowest marked `k`.
    fn next_diagonal(&mut self) -> Option<usize> {
        self.n += 1;
        let (pop, succ, n) = (self.pop, self.succ, self.n);
        debug_assert!(n <= pop);
        let top = if n <= succ {
            self.start = self.start.scale(factor::diag(pop, succ, n));
            n
        } else {
            self.start = self.start.scale(factor::k_eq_succ(succ, n));
            succ
        };
        let bottom = n.saturating_sub(self.fail).max(self.min_ones);

        let mut lowest = None;
        let mut k = top;
        let mut term = self.start;
        let mut tail = self.start;
        while k >= bottom {
            // k = n - W covers the whole distribution
            let p = if k == n.saturating_sub(self.fail) {
                ScaledProb::ONE
            } else {
                tail
            };
            if p > self.threshold {
                break;
            }
            lowest = Some(k);
            if k == 0 || k == bottom {
                break;
            }
            term = term.scale(factor::dec_k(pop, succ, n, k));
            tail = tail + term;
            k -= 1;
        }
        lowest
    }
}

fn check_statistic(statistic: ScaledProb, open_upper: bool) -> Result<()> {
    if statistic.is_zero() {
        return Err(Error::domain("statistic must be positive"));
    }
    if open_upper && statistic >= ScaledProb::ONE {
        return Err(Error::domain("statistic must be below 1"));
    }
    Ok(())
}

fn scaled_statistic(statistic: f64) -> Result<ScaledProb> {
    if statistic.is_nan() || statistic <= 0.0 || statistic.is_infinite() {
        return Err(Error::domain(format!("statistic {statistic} is not in (0, 1]")));
    }
    Ok(ScaledProb::from_f64(statistic.min(1.0)))
}

/// Mark `R_{X,L}` for statistic `s` in `(0, 1)`.
pub fn build_region(
    statistic: f64,
    successes: usize,
    failures: usize,
    params: TestParams,
) -> Result<RegionMask> {
    if statistic >= 1.0 {
        return Err(Error::domain("statistic must be below 1"));
    }
    build_region_ext(scaled_statistic(statistic)?, successes, failures, params)
}

/// [`build_region`] for a statistic with extended range.
pub fn build_region_ext(
    statistic: ScaledProb,
    successes: usize,
    failures: usize,
    params: TestParams,
) -> Result<RegionMask> {
    check_statistic(statistic, true)?;
    params.validate(successes + failures)?;
    let mut mask = RegionMask::empty(successes, failures);
    let mut scan = RegionScan::new(statistic, successes, failures, params.min_ones);
    for n in 1..=params.max_cutoff {
        if let Some(lo) = scan.next_diagonal() {
            for k in lo..=n.min(successes) {
                mask.set(k, n - k, true);
            }
        }
    }
    Ok(mask)
}

/// Exact XL-mHG p-value `Pr(S_0 <= s)` for a list with `K` ones and `W` zeros.
pub fn pvalue_dp(statistic: f64, successes: usize, failures: usize, params: TestParams) -> Result<f64> {
    if statistic >= 1.0 {
        params.validate(successes + failures)?;
        return Ok(1.0);
    }
    pvalue_dp_ext(scaled_statistic(statistic)?, successes, failures, params)
}

/// [`pvalue_dp`] for a statistic with extended range.
///
/// Runs the region scan and the path recurrence together, one anti-diagonal
/// at a time, keeping a single column of `m` values (`O(K)` memory). The
/// p-value is accumulated as the path mass that first enters the region,
/// which equals `1 - m_(K,W)` but keeps full relative precision when the
/// p-value is tiny.
pub fn pvalue_dp_ext(
    statistic: ScaledProb,
    successes: usize,
    failures: usize,
    params: TestParams,
) -> Result<f64> {
    check_statistic(statistic, false)?;
    let pop = successes + failures;
    params.validate(pop)?;
    if statistic >= ScaledProb::ONE {
        return Ok(1.0);
    }
    if pop == 0 {
        return Err(Error::domain("empty list"));
    }
    let (succ, fail) = (successes, failures);
    let mut scan = RegionScan::new(statistic, succ, fail, params.min_ones);
    // m[k] holds m_(k, n-k) for the current diagonal n
    let mut m = vec![0.0f64; succ + 1];
    m[0] = 1.0;
    let mut hit = 0.0f64;
    for n in 1..=pop {
        let lowest_marked = if n <= params.max_cutoff {
            scan.next_diagonal()
        } else {
            None
        };
        let denom = (pop - n + 1) as f64;
        let hi = n.min(succ);
        let lo = n.saturating_sub(fail);
        for k in (lo..=hi).rev() {
            let w = n - k;
            let mut v = 0.0;
            if w > 0 {
                v += m[k] * ((fail - w + 1) as f64 / denom);
            }
            if k > 0 {
                v += m[k - 1] * ((succ - k + 1) as f64 / denom);
            }
            if lowest_marked.is_some_and(|low| k >= low) {
                hit += v;
                m[k] = 0.0;
            } else {
                m[k] = v;
            }
        }
    }
    Ok(hit.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::list::RankedList;
    use crate::statistic::compute_statistic;

    fn v_ex() -> RankedList {
        RankedList::from_labels(&[1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0]).unwrap()
    }

    #[test]
    fn worked_example_pvalue() {
        let s = compute_statistic(&v_ex(), TestParams::mhg(20)).unwrap().statistic;
        let p = pvalue_dp(s, 5, 15, TestParams::mhg(20)).unwrap();
        assert!((p - 0.024).abs() < 5e-4, "p = {p}");
        assert!(p <= lipson_bound(s, 5));
        assert!((lipson_bound(s, 5) - 0.07).abs() < 5e-3);

        let mask = build_region(s, 5, 15, TestParams::mhg(20)).unwrap();
        assert!(mask.contains(4, 2));
        let table = path_table(&mask);
        assert!((table.pvalue() - p).abs() < 1e-12);
    }

    #[test]
    fn xl_region_respects_limits() {
        let params = TestParams::new(3, 5);
        let s = compute_statistic(&v_ex(), params).unwrap().statistic;
        let mask = build_region(s, 5, 15, params).unwrap();
        assert!(mask.count() > 0);
        for c in mask.marked() {
            assert!(c.ones >= 3 && c.cutoff() <= 5);
            assert!(c.tail_pvalue(5, 15).unwrap() <= s * (1.0 + 1e-12));
        }
        // achieving configuration at n = 4: (k, w) = (3, 1)
        assert!(mask.contains(3, 1));
    }

    #[test]
    fn trivial_statistic() {
        assert_eq!(pvalue_dp(1.0, 5, 15, TestParams::mhg(20)).unwrap(), 1.0);
        assert!(pvalue_dp(0.0, 5, 15, TestParams::mhg(20)).is_err());
        assert!(pvalue_dp(-0.1, 5, 15, TestParams::mhg(20)).is_err());
        assert!(pvalue_dp(f64::NAN, 5, 15, TestParams::mhg(20)).is_err());
        assert!(pvalue_dp(0.1, 5, 15, TestParams::mhg(21)).is_err());
        assert!(build_region(1.0, 5, 15, TestParams::mhg(20)).is_err());
        assert!(build_region(0.0, 5, 15, TestParams::mhg(20)).is_err());
    }

    #[test]
    fn lipson_edge_cases() {
        assert_eq!(lipson_bound(0.3, 0), 0.0);
        assert_eq!(lipson_bound(0.3, 5), 1.0);
    }

    #[test]
    fn grid_dimensions() {
        let mask = RegionMask::empty(20, 80);
        assert_eq!(mask.dims(), (21, 81));
        assert_eq!(mask.dims().0 * mask.dims().1, 1701);
    }

    #[test]
    fn empty_region_keeps_all_paths() {
        for &(k, w) in &[(0, 1), (1, 0), (3, 7), (20, 80), (50, 150)] {
            let t = path_table(&RegionMask::empty(k, w));
            assert!((t.surviving() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn streaming_matches_full_table() {
        let l = RankedList::from_ranks(200, &[1, 3, 4, 9, 15, 22, 40, 41, 77, 120, 180]).unwrap();
        for params in [TestParams::mhg(200), TestParams::new(4, 60), TestParams::new(0, 30)] {
            let s = compute_statistic(&l, params).unwrap().statistic;
            let full = path_table(&build_region(s, 11, 189, params).unwrap()).pvalue();
            let streamed = pvalue_dp(s, 11, 189, params).unwrap();
            assert!((full - streamed).abs() < 1e-12, "{full} vs {streamed}");
        }
    }

    #[test]
    fn long_list_underflow_is_handled() {
        let ranks: Vec<usize> = (1..=500).map(|i| i * 15).collect();
        let l = RankedList::from_ranks(10_000, &ranks).unwrap();
        let r = compute_statistic(&l, TestParams::mhg(10_000)).unwrap();
        let p = pvalue_dp_ext(r.statistic_ext, 500, 9_500, TestParams::mhg(10_000)).unwrap();
        assert!(r.statistic > 0.0 && r.statistic < 1e-20, "s = {}", r.statistic);
        assert!(p >= r.statistic, "p = {p}");
        assert!(p <= lipson_bound(r.statistic, 500));
    }
}
