// The exact p-value against the Lipson bound K*s as the list grows, and the
// brute-force oracle agreeing with the exact value on a small list.

use xlmhg::oracle::brute_pvalue;
use xlmhg::{xlmhg_test, RankedList, TestParams};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("    N    K  s          exact p    K*s");
    for scale in [1, 5, 25, 125] {
        // the same enrichment pattern, stretched
        let len = 40 * scale;
        let ranks: Vec<usize> = [1, 3, 4, 7, 12, 20, 33]
            .iter()
            .flat_map(|&r| (0..scale).map(move |j| (r - 1) * scale + j + 1))
            .collect();
        let v = RankedList::from_ranks(len, &ranks)?;
        let r = xlmhg_test(&v, TestParams::mhg(len))?;
        println!(
            "{len:5} {:4}  {:.3e}  {:.3e}  {:.3e}",
            v.ones(),
            r.stat.statistic,
            r.pvalue,
            r.lipson_bound
        );
    }

    let small = RankedList::from_labels(&[1, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0])?;
    let exact = xlmhg_test(&small, TestParams::mhg(14))?.pvalue;
    let brute = brute_pvalue(&small, TestParams::mhg(14))?;
    println!("N=14: dynamic programming {exact:.12}, enumeration {brute:.12}");
    assert!((exact - brute).abs() < 1e-12);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
