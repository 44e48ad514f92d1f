//! Hypergeometric PMF and upper tail.
//!
//! Two routes are provided. [`pmf_direct`] and [`tail_sf`] evaluate the
//! closed form through log-factorials and are used as the reference. The
//! `step_*` functions advance a known PMF value to a neighbouring `(k, n)`
//! by one exact rational factor; the test engines are built on these.
//!
//! Notation: `N` population size, `K` number of 1's, `n` sample size (the
//! cutoff), `k` number of 1's in the sample, `W = N - K`.

use statrs::function::factorial::ln_factorial;

use crate::error::{Error, Result};

/// Parameters of a single hypergeometric mass point `f(k; N, K, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HGParams {
    /// `N`
    pub population: usize,
    /// `K`
    pub successes: usize,
    /// `n`
    pub draws: usize,
    /// `k`
    pub observed: usize,
}

impl HGParams {
    pub fn new(population: usize, successes: usize, draws: usize, observed: usize) -> Result<Self> {
        let p = HGParams {
            population,
            successes,
            draws,
            observed,
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        if self.successes > self.population {
            return Err(Error::domain(format!(
                "K={} exceeds N={}",
                self.successes, self.population
            )));
        }
        if self.draws > self.population {
            return Err(Error::domain(format!(
                "n={} exceeds N={}",
                self.draws, self.population
            )));
        }
        if self.observed < self.min_observed() || self.observed > self.max_observed() {
            return Err(Error::domain(format!(
                "k={} outside [{}, {}] for N={}, K={}, n={}",
                self.observed,
                self.min_observed(),
                self.max_observed(),
                self.population,
                self.successes,
                self.draws
            )));
        }
        Ok(())
    }

    /// `W = N - K`
    pub fn failures(&self) -> usize {
        self.population - self.successes
    }

    /// Smallest attainable `k`, `max(0, n - W)`.
    pub fn min_observed(&self) -> usize {
        self.draws.saturating_sub(self.failures())
    }

    /// Largest attainable `k`, `min(n, K)`.
    pub fn max_observed(&self) -> usize {
        self.draws.min(self.successes)
    }

    fn with(&self, draws: usize, observed: usize) -> Result<Self> {
        HGParams::new(self.population, self.successes, draws, observed)
    }
}

fn ln_choose(n: usize, k: usize) -> f64 {
    ln_factorial(n as u64) - ln_factorial(k as u64) - ln_factorial((n - k) as u64)
}

/// `ln f(k; N, K, n)` via log-factorials.
pub fn ln_pmf_direct(p: &HGParams) -> Result<f64> {
    p.validate()?;
    Ok(ln_choose(p.successes, p.observed) + ln_choose(p.failures(), p.draws - p.observed)
        - ln_choose(p.population, p.draws))
}

/// `f(k; N, K, n) = C(K,k) C(N-K,n-k) / C(N,n)`, evaluated in log space.
pub fn pmf_direct(p: &HGParams) -> Result<f64> {
    let ln = ln_pmf_direct(p)?;
    Ok(ln.exp().min(1.0))
}

/// Upper tail `Pr(X >= k) = S(k - 1; N, K, n)`.
///
/// Terms are summed from `min(n, K)` downward so the smallest terms are added
/// first. Returns exactly 1.0 when `k` is the smallest attainable value.
pub fn tail_sf(p: &HGParams) -> Result<f64> {
    p.validate()?;
    if p.observed <= p.min_observed() {
        return Ok(1.0);
    }
    let mut total = 0.0;
    for i in (p.observed..=p.max_observed()).rev() {
        total += pmf_direct(&p.with(p.draws, i)?)?;
    }
    Ok(total.min(1.0))
}

/// Raw recurrence factors. Arguments are the `(N, K, n, k)` of the source
/// mass point; no range checks.
pub(crate) mod factor {
    /// Step in k: `f(k+1; n) / f(k; n)`.
    #[inline]
    pub fn inc_k(pop: usize, succ: usize, n: usize, k: usize) -> f64 {
        ((n - k) as f64 * (succ - k) as f64)
            / ((k + 1) as f64 * (pop - succ + k + 1 - n) as f64)
    }

    /// Step in n: `f(k; n+1) / f(k; n)`.
    #[inline]
    pub fn inc_n(pop: usize, succ: usize, n: usize, k: usize) -> f64 {
        ((n + 1) as f64 * (pop - succ + k - n) as f64) / ((pop - n) as f64 * (n - k + 1) as f64)
    }

    /// Joint step in k and n: `f(k+1; n+1) / f(k; n)`.
    #[inline]
    pub fn inc_kn(pop: usize, succ: usize, n: usize, k: usize) -> f64 {
        ((n + 1) as f64 * (succ - k) as f64) / ((pop - n) as f64 * (k + 1) as f64)
    }

    /// Diagonal step: `f(n; n) / f(n-1; n-1)`, with `n` the target sample size.
    #[inline]
    pub fn diag(pop: usize, succ: usize, n: usize) -> f64 {
        (succ - n + 1) as f64 / (pop - n + 1) as f64
    }

    /// Step along `k = K`: `f(K; n) / f(K; n-1)`, with `n` the target sample size.
    #[inline]
    pub fn k_eq_succ(succ: usize, n: usize) -> f64 {
        n as f64 / (n - succ) as f64
    }

    /// Step down in k: `f(k-1; n) / f(k; n)`.
    #[inline]
    pub fn dec_k(pop: usize, succ: usize, n: usize, k: usize) -> f64 {
        (k as f64 * (pop - succ + k - n) as f64) / ((n - k + 1) as f64 * (succ - k + 1) as f64)
    }
}

/// `f(k+1; N, K, n)` from `f = f(k; N, K, n)`.
pub fn step_inc_k(f: f64, p: &HGParams) -> Result<f64> {
    next_inc_k(p)?;
    Ok(f * factor::inc_k(p.population, p.successes, p.draws, p.observed))
}

/// `f(k; N, K, n+1)` from `f = f(k; N, K, n)`.
pub fn step_inc_n(f: f64, p: &HGParams) -> Result<f64> {
    next_inc_n(p)?;
    Ok(f * factor::inc_n(p.population, p.successes, p.draws, p.observed))
}

/// `f(k+1; N, K, n+1)` from `f = f(k; N, K, n)`.
pub fn step_inc_kn(f: f64, p: &HGParams) -> Result<f64> {
    next_inc_kn(p)?;
    Ok(f * factor::inc_kn(p.population, p.successes, p.draws, p.observed))
}

/// `f(n; N, K, n)` from `f = f(n-1; N, K, n-1)`. `p` describes the source, so
/// `p.observed == p.draws` and the target `n = p.draws + 1` must not exceed `K`.
pub fn step_diag(f: f64, p: &HGParams) -> Result<f64> {
    let next = next_diag(p)?;
    Ok(f * factor::diag(p.population, p.successes, next.draws))
}

/// `f(K; N, K, n)` from `f = f(K; N, K, n-1)`. `p` describes the source, so
/// `p.observed == K` and the target `n = p.draws + 1` must exceed `K`.
#[allow(non_snake_case)]
pub fn step_k_eq_K(f: f64, p: &HGParams) -> Result<f64> {
    let next = next_k_eq_succ(p)?;
    Ok(f * factor::k_eq_succ(p.successes, next.draws))
}

/// `f(k-1; N, K, n)` from `f = f(k; N, K, n)`.
pub fn step_dec_k(f: f64, p: &HGParams) -> Result<f64> {
    next_dec_k(p)?;
    Ok(f * factor::dec_k(p.population, p.successes, p.draws, p.observed))
}

fn next_inc_k(p: &HGParams) -> Result<HGParams> {
    p.validate()?;
    if p.observed + 1 > p.max_observed() {
        return Err(Error::domain(format!(
            "k+1={} exceeds min(n, K)={}",
            p.observed + 1,
            p.max_observed()
        )));
    }
    p.with(p.draws, p.observed + 1)
}

fn next_inc_n(p: &HGParams) -> Result<HGParams> {
    p.validate()?;
    if p.draws + 1 > p.population {
        return Err(Error::domain("n+1 exceeds N"));
    }
    p.with(p.draws + 1, p.observed)
}

fn next_inc_kn(p: &HGParams) -> Result<HGParams> {
    p.validate()?;
    if p.draws + 1 > p.population || p.observed + 1 > p.successes {
        return Err(Error::domain("(k+1, n+1) outside the legal region"));
    }
    p.with(p.draws + 1, p.observed + 1)
}

fn next_diag(p: &HGParams) -> Result<HGParams> {
    p.validate()?;
    if p.observed != p.draws {
        return Err(Error::domain("diagonal step requires k = n"));
    }
    if p.draws + 1 > p.successes {
        return Err(Error::domain("diagonal step requires target n <= K"));
    }
    p.with(p.draws + 1, p.draws + 1)
}

fn next_k_eq_succ(p: &HGParams) -> Result<HGParams> {
    p.validate()?;
    if p.observed != p.successes {
        return Err(Error::domain("step along k = K requires k = K"));
    }
    if p.draws + 1 > p.population {
        return Err(Error::domain("n+1 exceeds N"));
    }
    if p.draws < p.successes {
        return Err(Error::domain("step along k = K requires target n > K"));
    }
    p.with(p.draws + 1, p.observed)
}

fn next_dec_k(p: &HGParams) -> Result<HGParams> {
    p.validate()?;
    if p.observed == 0 || p.observed - 1 < p.min_observed() {
        return Err(Error::domain(format!(
            "k-1 below max(0, n-W)={}",
            p.min_observed()
        )));
    }
    p.with(p.draws, p.observed - 1)
}

/// Walks a linear-space PMF value across the `(k, n)` lattice with the
/// recurrence identities, tracking the current state and flagging underflow.
///
/// Every legal mass point has a strictly positive PMF, so a zero input to a
/// step can only be the result of underflow. Such steps are logged and
/// remembered in [`PmfChain::underflowed`], never rejected.
#[derive(Debug, Clone)]
pub struct PmfChain {
    state: HGParams,
    value: f64,
    underflow: bool,
}

impl PmfChain {
    /// Start at `f(0; N, K, 0) = 1`.
    pub fn origin(population: usize, successes: usize) -> Result<Self> {
        Ok(PmfChain {
            state: HGParams::new(population, successes, 0, 0)?,
            value: 1.0,
            underflow: false,
        })
    }

    /// Start at an arbitrary mass point, seeded from [`pmf_direct`].
    pub fn at(state: HGParams) -> Result<Self> {
        Ok(PmfChain {
            value: pmf_direct(&state)?,
            state,
            underflow: false,
        })
    }

    pub fn state(&self) -> HGParams {
        self.state
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn underflowed(&self) -> bool {
        self.underflow
    }

    fn advance(&mut self, value: f64, next: HGParams) -> f64 {
        if self.value == 0.0 && !self.underflow {
            log::warn!(
                "hypergeometric recurrence underflowed before reaching {:?}",
                next
            );
            self.underflow = true;
        }
        self.value = value;
        self.state = next;
        value
    }

    pub fn inc_k(&mut self) -> Result<f64> {
        let next = next_inc_k(&self.state)?;
        let v = step_inc_k(self.value, &self.state)?;
        Ok(self.advance(v, next))
    }

    pub fn inc_n(&mut self) -> Result<f64> {
        let next = next_inc_n(&self.state)?;
        let v = step_inc_n(self.value, &self.state)?;
        Ok(self.advance(v, next))
    }

    pub fn inc_kn(&mut self) -> Result<f64> {
        let next = next_inc_kn(&self.state)?;
        let v = step_inc_kn(self.value, &self.state)?;
        Ok(self.advance(v, next))
    }

    pub fn diag(&mut self) -> Result<f64> {
        let next = next_diag(&self.state)?;
        let v = step_diag(self.value, &self.state)?;
        Ok(self.advance(v, next))
    }

    pub fn k_eq_succ(&mut self) -> Result<f64> {
        let next = next_k_eq_succ(&self.state)?;
        let v = step_k_eq_K(self.value, &self.state)?;
        Ok(self.advance(v, next))
    }

    pub fn dec_k(&mut self) -> Result<f64> {
        let next = next_dec_k(&self.state)?;
        let v = step_dec_k(self.value, &self.state)?;
        Ok(self.advance(v, next))
    }
}
