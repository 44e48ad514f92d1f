// Statistic, exact p-value and Lipson bound of a 20-element list, with the
// per-cutoff hypergeometric p-values behind them.

use xlmhg::statistic::compute_statistic_reporting;
use xlmhg::{fold_enrichment, xlmhg_test, RankedList, TestParams};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let v = RankedList::from_labels(&[1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0])?;
    let params = TestParams::mhg(v.len());

    let stat = compute_statistic_reporting(&v, params)?;
    println!("  n  k_n  p^HG_(n)  e_(n)");
    for (i, p) in stat.hg_pvalues.as_deref().unwrap_or(&[]).iter().enumerate() {
        let n = i + 1;
        println!("{n:3} {:4}  {p:.4}    {:.2}", v.ones_above(n), fold_enrichment(&v, n)?);
    }

    let r = xlmhg_test(&v, params)?;
    println!(
        "s = {:.4} at n = {} (k = {}), exact p = {:.4}, bound K*s = {:.4}",
        r.stat.statistic, r.stat.cutoff, r.stat.k_at_cutoff, r.pvalue, r.lipson_bound
    );
    assert_eq!(r.stat.cutoff, 6);
    assert!(r.stat.statistic <= r.pvalue && r.pvalue <= r.lipson_bound);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
