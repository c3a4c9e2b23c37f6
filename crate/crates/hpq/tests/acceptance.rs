//! Acceptance suite: runs every criterion at its pinned tolerance and
//! prints one pass/fail line per criterion before asserting.

use std::time::Instant;

use hpq::verify::{acceptance, VerifyOptions};

#[test]
fn acceptance_criteria() {
    let opts = VerifyOptions::default(); // seed 42, N = 100000
    let start = Instant::now();
    let results = acceptance::all(&opts);
    let mut failed = 0;
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!("[{}] {} — {}", status, r.name, r.detail);
        if !r.passed {
            failed += 1;
        }
    }
    println!(
        "acceptance: {}/{} criteria passed in {:.1?}",
        results.len() - failed,
        results.len(),
        start.elapsed()
    );
    assert_eq!(failed, 0, "{} acceptance criteria failed", failed);
}
