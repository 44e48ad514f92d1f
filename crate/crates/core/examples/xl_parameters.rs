// How X (minimum 1's above a cutoff) and L (largest cutoff) change the test.
// X and L can also be given as percentages of K and N.

use xlmhg::input::parse_count;
use xlmhg::{xlmhg_test, RankedList, TestParams};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let v = RankedList::from_labels(&[1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0])?;

    println!("  X   L   s        cutoff  p");
    for (x, l) in [(0, 20), (0, 5), (3, 5), (4, 20), (5, 20), (6, 20)] {
        let r = xlmhg_test(&v, TestParams::new(x, l))?;
        println!(
            "{x:3} {l:3}   {:.5}  {:6}  {:.5}",
            r.stat.statistic, r.stat.cutoff, r.pvalue
        );
    }

    // 50% of K=5 rounds half-up to 3; 25% of N=20 is 5
    let x = parse_count("50%", v.ones(), "x")?;
    let l = parse_count("25%", v.len(), "l")?;
    let r = xlmhg_test(&v, TestParams::new(x, l))?;
    println!("X=50% -> {x}, L=25% -> {l}: s = {:.5}, p = {:.5}", r.stat.statistic, r.pvalue);
    assert_eq!((x, l, r.stat.cutoff), (3, 5, 4));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
