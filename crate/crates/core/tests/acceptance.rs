//! Prints one PASS/FAIL line per acceptance criterion and exits nonzero if
//! any fails. Every criterion is an exact comparison.

use spechtvar::checks::run_check;

const SEED: u64 = 2024;

fn main() {
    let mut failed = 0;
    for id in 1..=8 {
        let r = run_check(id, SEED);
        println!("{r}");
        failed += usize::from(!r.passed);
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
