//! Monte-Carlo power scenarios: weak broad enrichment and top-window outliers.
//!
//! Every replicate draws its list from its own ChaCha8 stream (seeded with the
//! run seed, stream number = replicate index), so a replicate's list depends
//! only on the seed, the scenario and its index. Changing `X`, `L` or `alpha`
//! reuses the exact same lists.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::{format_number, serialize_sig};
use crate::list::{RankedList, TestParams};
use crate::xlmhg_test;

/// Recorded in every summary so runs can be replicated elsewhere.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng (rand_chacha 0.3), seed_from_u64(seed), stream = replicate index";

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "XLMHG_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    /// `fold`-fold enrichment of 1's in the top half of the list.
    Scenario1,
    /// `outliers` 1's in the top `window` ranks, the rest uniform.
    Scenario2,
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "scenario1" | "1" => Ok(Scenario::Scenario1),
            "scenario2" | "2" => Ok(Scenario::Scenario2),
            other => Err(Error::Config(format!(
                "unknown scenario '{other}', expected scenario1 or scenario2"
            ))),
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scenario::Scenario1 => "scenario1",
            Scenario::Scenario2 => "scenario2",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSpec {
    pub kind: Scenario,
    /// `N`
    pub len: usize,
    /// `K`
    pub ones: usize,
    pub fold: f64,
    pub outliers: usize,
    pub window: usize,
    pub replicates: usize,
    pub seed: u64,
    pub params: TestParams,
    pub alpha: f64,
}

impl ScenarioSpec {
    /// N=10,000, K=500, 1.5-fold enrichment in the first 5,000 ranks.
    pub fn scenario1(replicates: usize, seed: u64) -> Self {
        ScenarioSpec {
            kind: Scenario::Scenario1,
            len: 10_000,
            ones: 500,
            fold: 1.5,
            outliers: 0,
            window: 20,
            replicates,
            seed,
            params: TestParams::mhg(10_000),
            alpha: 0.01,
        }
    }

    /// N=1,000, K=100 with `outliers` 1's among the top 20 ranks.
    pub fn scenario2(outliers: usize, replicates: usize, seed: u64) -> Self {
        ScenarioSpec {
            kind: Scenario::Scenario2,
            len: 1_000,
            ones: 100,
            fold: 1.0,
            outliers,
            window: 20,
            replicates,
            seed,
            params: TestParams::mhg(1_000),
            alpha: 0.01,
        }
    }

    pub fn with_params(mut self, params: TestParams) -> Self {
        self.params = params;
        self
    }

    fn top_half(&self) -> usize {
        self.len / 2
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        if self.replicates == 0 {
            return fail("replicates must be at least 1".into());
        }
        if self.ones > self.len {
            return fail(format!("K={} exceeds N={}", self.ones, self.len));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return fail(format!("alpha={} outside (0, 1]", self.alpha));
        }
        if self.params.max_cutoff > self.len {
            return fail(format!("L={} exceeds N={}", self.params.max_cutoff, self.len));
        }
        match self.kind {
            Scenario::Scenario1 => {
                if !(self.fold.is_finite() && self.fold > 0.0) {
                    return fail(format!("fold={} must be positive", self.fold));
                }
                let top = self.top_half() as f64;
                let expected_top = self.fold * self.ones as f64 * top / self.len.max(1) as f64;
                if expected_top > top || expected_top > self.ones as f64 {
                    return fail(format!(
                        "expected top-half count {expected_top} exceeds its capacity {}",
                        top.min(self.ones as f64)
                    ));
                }
                let expected_bottom = self.ones as f64 - expected_top;
                if expected_bottom > (self.len - self.top_half()) as f64 {
                    return fail(format!(
                        "expected bottom-half count {expected_bottom} exceeds its capacity {}",
                        self.len - self.top_half()
                    ));
                }
            }
            Scenario::Scenario2 => {
                if self.window > self.len {
                    return fail(format!("window={} exceeds N={}", self.window, self.len));
                }
                if self.outliers > self.ones {
                    return fail(format!("outliers={} exceeds K={}", self.outliers, self.ones));
                }
                if self.outliers > self.window {
                    return fail(format!(
                        "outliers={} exceeds window={}",
                        self.outliers, self.window
                    ));
                }
            }
        }
        Ok(())
    }

    /// The list of replicate `index`; independent of `params` and `alpha`.
    pub fn generate(&self, index: usize) -> RankedList {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        let mut v = vec![false; self.len];
        match self.kind {
            Scenario::Scenario1 => {
                let top = self.top_half();
                let bottom = self.len - top;
                let prob = (self.fold * top as f64 / self.len as f64).min(1.0);
                let drawn = Binomial::new(self.ones as u64, prob)
                    .expect("probability validated")
                    .sample(&mut rng) as usize;
                // keep both halves within capacity
                let in_top = drawn.clamp(self.ones.saturating_sub(bottom), top.min(self.ones));
                for i in sample(&mut rng, top, in_top) {
                    v[i] = true;
                }
                for i in sample(&mut rng, bottom, self.ones - in_top) {
                    v[top + i] = true;
                }
            }
            Scenario::Scenario2 => {
                for i in sample(&mut rng, self.window, self.outliers) {
                    v[i] = true;
                }
                let free: Vec<usize> = (0..self.len).filter(|&i| !v[i]).collect();
                for i in sample(&mut rng, free.len(), self.ones - self.outliers) {
                    v[free[i]] = true;
                }
            }
        }
        RankedList::new(v)
    }
}

/// One scored replicate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplicateResult {
    pub replicate: usize,
    #[serde(serialize_with = "serialize_sig")]
    pub statistic: f64,
    pub cutoff: usize,
    #[serde(serialize_with = "serialize_sig")]
    pub pvalue: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Quantiles {
    #[serde(serialize_with = "serialize_sig")]
    pub q05: f64,
    #[serde(serialize_with = "serialize_sig")]
    pub q25: f64,
    #[serde(serialize_with = "serialize_sig")]
    pub q50: f64,
    #[serde(serialize_with = "serialize_sig")]
    pub q75: f64,
    #[serde(serialize_with = "serialize_sig")]
    pub q95: f64,
}

/// Distribution summary of one simulation run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationSummary {
    pub scenario: Scenario,
    #[serde(rename = "N")]
    pub len: usize,
    #[serde(rename = "K")]
    pub ones: usize,
    #[serde(rename = "X")]
    pub min_ones: usize,
    #[serde(rename = "L")]
    pub max_cutoff: usize,
    #[serde(serialize_with = "serialize_sig")]
    pub fold: f64,
    pub outliers: usize,
    pub window: usize,
    pub replicates: usize,
    pub seed: u64,
    pub rng: &'static str,
    #[serde(serialize_with = "serialize_sig")]
    pub alpha: f64,
    pub significant: usize,
    #[serde(serialize_with = "serialize_sig")]
    pub fraction_significant: f64,
    pub pvalue_quantiles: Quantiles,
    pub statistic_quantiles: Quantiles,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationOutput {
    pub replicates: Vec<ReplicateResult>,
    pub summary: SimulationSummary,
}

/// Linear-interpolation quantile of sorted data.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

fn quantiles(values: impl Iterator<Item = f64>) -> Quantiles {
    let mut sorted: Vec<f64> = values.collect();
    sorted.sort_by(f64::total_cmp);
    Quantiles {
        q05: quantile(&sorted, 0.05),
        q25: quantile(&sorted, 0.25),
        q50: quantile(&sorted, 0.50),
        q75: quantile(&sorted, 0.75),
        q95: quantile(&sorted, 0.95),
    }
}

fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

/// Generate and score every replicate, merged in replicate order.
pub fn simulate(spec: &ScenarioSpec) -> Result<SimulationOutput> {
    spec.validate()?;
    let score = |i: usize| -> Result<ReplicateResult> {
        let list = spec.generate(i);
        let r = xlmhg_test(&list, spec.params)?;
        Ok(ReplicateResult {
            replicate: i,
            statistic: r.stat.statistic,
            cutoff: r.stat.cutoff,
            pvalue: r.pvalue,
        })
    };
    let run = || -> Result<Vec<ReplicateResult>> {
        (0..spec.replicates).into_par_iter().map(score).collect()
    };
    let replicates = match thread_cap() {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?
            .install(run)?,
        None => run()?,
    };

    let significant = replicates.iter().filter(|r| r.pvalue <= spec.alpha).count();
    let summary = SimulationSummary {
        scenario: spec.kind,
        len: spec.len,
        ones: spec.ones,
        min_ones: spec.params.min_ones,
        max_cutoff: spec.params.max_cutoff,
        fold: spec.fold,
        outliers: spec.outliers,
        window: spec.window,
        replicates: spec.replicates,
        seed: spec.seed,
        rng: RNG_ALGORITHM,
        alpha: spec.alpha,
        significant,
        fraction_significant: significant as f64 / spec.replicates as f64,
        pvalue_quantiles: quantiles(replicates.iter().map(|r| r.pvalue)),
        statistic_quantiles: quantiles(replicates.iter().map(|r| r.statistic)),
    };
    Ok(SimulationOutput {
        replicates,
        summary,
    })
}

/// Per-replicate CSV with header `replicate,statistic,cutoff,pvalue`.
pub fn write_csv<W: Write>(rows: &[ReplicateResult], mut out: W) -> std::io::Result<()> {
    writeln!(out, "replicate,statistic,cutoff,pvalue")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{}",
            r.replicate,
            format_number(r.statistic),
            r.cutoff,
            format_number(r.pvalue)
        )?;
    }
    Ok(())
}

/// Partial scenario settings from a config document or command-line flags.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SpecOverrides {
    pub kind: Option<Scenario>,
    pub len: Option<usize>,
    pub ones: Option<usize>,
    pub fold: Option<f64>,
    pub outliers: Option<usize>,
    pub window: Option<usize>,
    pub replicates: Option<usize>,
    pub seed: Option<u64>,
    pub alpha: Option<f64>,
    /// `X`, possibly a percentage of `K`
    pub x: Option<String>,
    /// `L`, possibly a percentage of `N`
    pub l: Option<String>,
}

impl SpecOverrides {
    /// Parse a flat `key = value` document; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut o = SpecOverrides::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at = format!("line {}", i + 1);
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(&at, format!("expected key=value, got '{line}'")))?;
            let (key, value) = (key.trim().to_ascii_lowercase(), value.trim());
            let bad = |what: &str| Error::parse(&at, format!("{key}: invalid {what} '{value}'"));
            match key.as_str() {
                "kind" | "scenario" => o.kind = Some(value.parse()?),
                "n" => o.len = Some(value.parse().map_err(|_| bad("integer"))?),
                "k" => o.ones = Some(value.parse().map_err(|_| bad("integer"))?),
                "fold" => o.fold = Some(value.parse().map_err(|_| bad("number"))?),
                "outliers" => o.outliers = Some(value.parse().map_err(|_| bad("integer"))?),
                "window" => o.window = Some(value.parse().map_err(|_| bad("integer"))?),
                "replicates" => o.replicates = Some(value.parse().map_err(|_| bad("integer"))?),
                "seed" => o.seed = Some(value.parse().map_err(|_| bad("integer"))?),
                "alpha" => o.alpha = Some(value.parse().map_err(|_| bad("number"))?),
                "x" => o.x = Some(value.to_string()),
                "l" => o.l = Some(value.to_string()),
                _ => return Err(Error::parse(&at, format!("unknown key '{key}'"))),
            }
        }
        Ok(o)
    }

    /// Fields set in `other` take precedence.
    pub fn merge(self, other: SpecOverrides) -> Self {
        SpecOverrides {
            kind: other.kind.or(self.kind),
            len: other.len.or(self.len),
            ones: other.ones.or(self.ones),
            fold: other.fold.or(self.fold),
            outliers: other.outliers.or(self.outliers),
            window: other.window.or(self.window),
            replicates: other.replicates.or(self.replicates),
            seed: other.seed.or(self.seed),
            alpha: other.alpha.or(self.alpha),
            x: other.x.or(self.x),
            l: other.l.or(self.l),
        }
    }

    /// Start from the scenario's preset and apply every set field. Unset `X`
    /// and `L` give the plain mHG test.
    pub fn build(self) -> Result<ScenarioSpec> {
        let kind = self
            .kind
            .ok_or_else(|| Error::Config("no scenario given (scenario1 or scenario2)".into()))?;
        let mut spec = match kind {
            Scenario::Scenario1 => ScenarioSpec::scenario1(1000, 0),
            Scenario::Scenario2 => ScenarioSpec::scenario2(0, 1000, 0),
        };
        spec.len = self.len.unwrap_or(spec.len);
        spec.ones = self.ones.unwrap_or(spec.ones);
        spec.fold = self.fold.unwrap_or(spec.fold);
        spec.outliers = self.outliers.unwrap_or(spec.outliers);
        spec.window = self.window.unwrap_or(spec.window);
        spec.replicates = self.replicates.unwrap_or(spec.replicates);
        spec.seed = self.seed.unwrap_or(spec.seed);
        spec.alpha = self.alpha.unwrap_or(spec.alpha);
        let min_ones = match self.x {
            Some(v) => crate::input::parse_count(&v, spec.ones, "x")?,
            None => 0,
        };
        let max_cutoff = match self.l {
            Some(v) => crate::input::parse_count(&v, spec.len, "l")?,
            None => spec.len,
        };
        spec.params = TestParams::new(min_ones, max_cutoff);
        spec.validate()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scenario2_places_outliers() {
        let spec = ScenarioSpec::scenario2(6, 3, 7);
        for i in 0..3 {
            let l = spec.generate(i);
            assert_eq!((l.len(), l.ones()), (1000, 100));
            assert!(l.ones_above(20) >= 6);
        }
        assert_eq!(spec.generate(1), spec.generate(1));
        assert_ne!(spec.generate(0), spec.generate(1));
    }

    #[test]
    fn scenario1_enriches_top_half() {
        let spec = ScenarioSpec::scenario1(1, 3);
        let l = spec.generate(0);
        assert_eq!(l.ones(), 500);
        let top = l.ones_above(5000);
        assert!((300..=450).contains(&top), "{top}");
    }

    #[test]
    fn config_errors() {
        let mut spec = ScenarioSpec::scenario1(10, 1);
        spec.fold = 2.5;
        assert!(matches!(spec.validate(), Err(Error::Config(_))));
        let mut spec = ScenarioSpec::scenario2(30, 10, 1);
        assert!(spec.validate().is_err());
        spec.outliers = 6;
        spec.replicates = 0;
        assert!(spec.validate().is_err());
        spec.replicates = 1;
        spec.window = 2000;
        assert!(spec.validate().is_err());
    }

    #[test]
    fn quantile_interpolates() {
        let v = [0.0, 1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile(&v, 0.5), 2.0);
        assert_eq!(quantile(&v, 0.05), 0.2);
        assert_eq!(quantile(&[7.0], 0.95), 7.0);
    }

    #[test]
    fn simulate_is_deterministic() {
        let mut spec = ScenarioSpec::scenario2(6, 8, 11);
        spec.len = 200;
        spec.ones = 20;
        spec.params = TestParams::mhg(200);
        let a = simulate(&spec).unwrap();
        let b = simulate(&spec).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.replicates.len(), 8);
        assert!(a.replicates.iter().enumerate().all(|(i, r)| r.replicate == i));
    }

    #[test]
    fn config_parsing() {
        let text = "scenario = scenario2\n# comment\nN=1000\nK=100\noutliers=6\nreplicates=5\nseed=9\nX=15%\n";
        let spec = SpecOverrides::parse(text).unwrap().build().unwrap();
        assert_eq!(spec.kind, Scenario::Scenario2);
        assert_eq!((spec.len, spec.ones, spec.outliers, spec.replicates, spec.seed), (1000, 100, 6, 5, 9));
        assert_eq!(spec.params, TestParams::new(15, 1000));

        let flags = SpecOverrides {
            seed: Some(3),
            l: Some("25%".into()),
            ..Default::default()
        };
        let spec = SpecOverrides::parse(text).unwrap().merge(flags).build().unwrap();
        assert_eq!((spec.seed, spec.params.max_cutoff), (3, 250));

        assert!(matches!(SpecOverrides::parse("N=abc"), Err(Error::Parse { .. })));
        assert!(SpecOverrides::parse("bogus=1").is_err());
        assert!(matches!(SpecOverrides::default().build(), Err(Error::Config(_))));
    }
}
