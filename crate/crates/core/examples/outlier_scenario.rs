// Six 1's among the top 20 of 1,000 ranks make the plain mHG test
// significant in most replicates. Requiring X=15 1's above any tested
// cutoff stops those outliers from driving the result.

use xlmhg::simulation::{simulate, ScenarioSpec};
use xlmhg::TestParams;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let replicates = 100;
    let spec = ScenarioSpec::scenario2(6, replicates, 7);
    for params in [TestParams::new(0, 1000), TestParams::new(15, 1000)] {
        let out = simulate(&spec.clone().with_params(params))?;
        let q = &out.summary.pvalue_quantiles;
        println!(
            "X={:2}: {:.2} of {replicates} replicates with p <= 0.01; p quantiles 5/50/95% {:.1e} {:.1e} {:.1e}",
            params.min_ones, out.summary.fraction_significant, q.q05, q.q50, q.q95
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
