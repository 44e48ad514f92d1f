//! The machine-readable report of one test and its per-cutoff table.

use std::io::Write;

use serde::Serialize;

use crate::enrichment::{enrichment_score, fold_enrichment};
use crate::error::{Error, Result};
use crate::format::{format_number, serialize_sig, serialize_sig_opt};
use crate::list::{RankedList, TestParams};
use crate::pvalue::{lipson_bound, pvalue_dp_ext, MEMBERSHIP_RTOL};
use crate::statistic::compute_statistic_reporting;

/// Default enrichment-score threshold.
pub const DEFAULT_PSI: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestReport {
    #[serde(rename = "N")]
    pub len: usize,
    #[serde(rename = "K")]
    pub ones: usize,
    #[serde(rename = "X")]
    pub min_ones: usize,
    #[serde(rename = "L")]
    pub max_cutoff: usize,
    #[serde(serialize_with = "serialize_sig")]
    pub statistic: f64,
    pub cutoff: usize,
    pub k_at_cutoff: usize,
    /// `None` with `bound_only`.
    #[serde(serialize_with = "serialize_sig_opt")]
    pub pvalue: Option<f64>,
    #[serde(serialize_with = "serialize_sig")]
    pub lipson_bound: f64,
    /// `None` when `psi` is below the statistic or no cutoff qualifies.
    #[serde(serialize_with = "serialize_sig_opt")]
    pub escore: Option<f64>,
    pub escore_cutoff: Option<usize>,
    #[serde(serialize_with = "serialize_sig")]
    pub psi: f64,
}

/// One row of the per-cutoff table.
#[derive(Debug, Clone, PartialEq)]
pub struct CutoffRow {
    pub n: usize,
    pub k_n: usize,
    pub hg_pvalue: f64,
    pub fold_enrichment: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FullReport {
    pub report: TestReport,
    pub cutoffs: Vec<CutoffRow>,
}

/// Statistic, p-value (unless `bound_only`), Lipson bound and enrichment score.
pub fn run_test(list: &RankedList, params: TestParams, psi: f64, bound_only: bool) -> Result<FullReport> {
    if !(psi > 0.0 && psi <= 1.0) {
        return Err(Error::domain(format!("psi={psi} outside (0, 1]")));
    }
    let stat = compute_statistic_reporting(list, params)?;
    let pvalue = if bound_only {
        None
    } else {
        Some(pvalue_dp_ext(stat.statistic_ext, list.ones(), list.zeros(), params)?)
    };
    let usable_psi = list.ones() > 0 && psi * (1.0 + MEMBERSHIP_RTOL) >= stat.statistic;
    let (escore, escore_cutoff) = if usable_psi {
        let e = enrichment_score(list, params, psi)?;
        (e.score, e.score_cutoff)
    } else {
        (None, None)
    };

    let hg = stat.hg_pvalues.as_deref().unwrap_or(&[]);
    let cutoffs = (1..=list.len())
        .map(|n| {
            Ok(CutoffRow {
                n,
                k_n: list.ones_above(n),
                hg_pvalue: hg[n - 1],
                fold_enrichment: if list.ones() == 0 {
                    f64::NAN
                } else {
                    fold_enrichment(list, n)?
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(FullReport {
        report: TestReport {
            len: list.len(),
            ones: list.ones(),
            min_ones: params.min_ones,
            max_cutoff: params.max_cutoff,
            statistic: stat.statistic,
            cutoff: stat.cutoff,
            k_at_cutoff: stat.k_at_cutoff,
            pvalue,
            lipson_bound: lipson_bound(stat.statistic, list.ones()),
            escore,
            escore_cutoff,
            psi,
        },
        cutoffs,
    })
}

impl TestReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Header row plus one data row; absent values are empty fields.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let opt = |x: Option<f64>| x.map(format_number).unwrap_or_default();
        writeln!(
            out,
            "N,K,X,L,statistic,cutoff,k_at_cutoff,pvalue,lipson_bound,escore,escore_cutoff,psi"
        )?;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.len,
            self.ones,
            self.min_ones,
            self.max_cutoff,
            format_number(self.statistic),
            self.cutoff,
            self.k_at_cutoff,
            opt(self.pvalue),
            format_number(self.lipson_bound),
            opt(self.escore),
            self.escore_cutoff.map(|n| n.to_string()).unwrap_or_default(),
            format_number(self.psi)
        )
    }
}

/// CSV with header `n,k_n,hg_pvalue,fold_enrichment`.
pub fn write_cutoffs_csv<W: Write>(rows: &[CutoffRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "n,k_n,hg_pvalue,fold_enrichment")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{}",
            r.n,
            r.k_n,
            format_number(r.hg_pvalue),
            format_number(r.fold_enrichment)
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v_ex() -> RankedList {
        RankedList::from_labels(&[1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0]).unwrap()
    }

    #[test]
    fn worked_example_report() {
        let full = run_test(&v_ex(), TestParams::mhg(20), DEFAULT_PSI, false).unwrap();
        let r = &full.report;
        assert_eq!((r.len, r.ones, r.cutoff, r.k_at_cutoff), (20, 5, 6, 4));
        assert!((r.pvalue.unwrap() - 0.024).abs() < 5e-4);
        assert!((r.lipson_bound - 0.07).abs() < 5e-3);
        assert_eq!((r.escore, r.escore_cutoff), (Some(3.0), Some(4)));
        assert_eq!(full.cutoffs.len(), 20);
        assert_eq!(full.cutoffs[0].fold_enrichment, 4.0);

        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["cutoff"], 6);
        assert_eq!(json["psi"], 0.05);
    }

    #[test]
    fn bound_only_and_small_psi() {
        let full = run_test(&v_ex(), TestParams::mhg(20), 0.001, true).unwrap();
        assert_eq!(full.report.pvalue, None);
        assert_eq!(full.report.escore, None);
        let json: serde_json::Value = serde_json::from_str(&full.report.to_json()).unwrap();
        assert!(json["pvalue"].is_null() && json["escore"].is_null());
        assert!(run_test(&v_ex(), TestParams::mhg(20), 0.0, false).is_err());
    }

    #[test]
    fn csv_layouts() {
        let full = run_test(&v_ex(), TestParams::mhg(20), DEFAULT_PSI, true).unwrap();
        let mut buf = Vec::new();
        full.report.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[1].split(',').nth(7), Some(""));

        let mut buf = Vec::new();
        write_cutoffs_csv(&full.cutoffs, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 21);
        assert!(text.lines().nth(1).unwrap().starts_with("1,1,0.25,4.0"));
    }
}
