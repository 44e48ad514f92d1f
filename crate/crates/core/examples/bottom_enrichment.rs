// The test only looks for enrichment at the top. Inverting the list tests
// the bottom instead.

use xlmhg::{xlmhg_test, RankedList, TestParams};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut labels = vec![0u8; 30];
    for r in [24, 26, 27, 28, 30] {
        labels[r - 1] = 1;
    }
    let v = RankedList::from_labels(&labels)?;

    let top = xlmhg_test(&v, TestParams::mhg(v.len()))?;
    let bottom = xlmhg_test(&v.inverted(), TestParams::mhg(v.len()))?;
    println!("top:    s = {:.4}, p = {:.4}", top.stat.statistic, top.pvalue);
    println!(
        "bottom: s = {:.2e}, p = {:.2e} (last {} ranks)",
        bottom.stat.statistic, bottom.pvalue, bottom.stat.cutoff
    );
    assert!(bottom.pvalue < 0.01 && top.pvalue > 0.5);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
