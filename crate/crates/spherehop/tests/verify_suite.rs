//! Every registered invariant suite must pass on a fresh build.

use spherehop::verify;

#[test]
fn all_invariant_suites_pass() {
    let results = verify::run_all(None);
    assert_eq!(results.len(), verify::check_names().len());
    let mut failed = Vec::new();
    for r in &results {
        println!(
            "{} {} (max residual {:.3e}, tolerance {:.1e})",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.max_residual,
            r.tolerance
        );
        if !r.passed {
            failed.push(r.name.clone());
        }
    }
    assert!(failed.is_empty(), "failing suites: {failed:?}");
}
