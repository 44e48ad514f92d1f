// Build a ranked list from scored items and a membership set, then produce
// the same JSON report as `xlmhg test --input scores.tsv --membership set.txt`.

use xlmhg::input::{check_mixed, labeled_list, parse_membership, parse_scores};
use xlmhg::report::{run_test, DEFAULT_PSI};
use xlmhg::TestParams;

const SCORES: &str = "gene\tscore
ACTB\t0.12
MYC\t9.1
TP53\t7.4
EGFR\t8.8
GAPDH\t0.4
KRAS\t6.0
BRCA1\t2.2
CDK4\t5.1
RPL13\t0.9
PTEN\t1.3
";

const MEMBERS: &str = "MYC\nEGFR\nCDK4\nKRAS\n";

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let doc = labeled_list(parse_scores(SCORES)?, &parse_membership(MEMBERS));
    check_mixed(&doc.list, "scores")?;
    println!("ranked: {}", doc.ids.join(" "));

    let full = run_test(&doc.list, TestParams::mhg(doc.list.len()), DEFAULT_PSI, false)?;
    println!("{}", full.report.to_json());
    assert_eq!(full.report.cutoff, 5);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
