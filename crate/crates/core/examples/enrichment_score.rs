// The enrichment score: the largest fold enrichment among cutoffs whose
// hypergeometric p-value is at most psi.

use xlmhg::{compute_statistic, enrichment_score, RankedList, TestParams};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let v = RankedList::from_labels(&[1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0])?;
    let params = TestParams::mhg(v.len());
    let s = compute_statistic(&v, params)?.statistic;

    for psi in [s, 0.02, 0.04, 0.1, 0.3, 1.0] {
        let r = enrichment_score(&v, params, psi)?;
        println!(
            "psi = {psi:.4}: {} candidate cutoffs, score {:?} at n = {:?}",
            r.candidate_cutoffs.len(),
            r.score,
            r.score_cutoff
        );
    }

    // psi below the statistic leaves no cutoff to score
    assert!(enrichment_score(&v, params, s / 2.0).is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
