//! Prints one PASS/FAIL line per acceptance criterion and fails if any fails.
//!
//! Lines go straight to the process stdout so they show up without `--nocapture`.

use std::io::Write;

use hopfknot::verify::{run_suite, Level};

#[test]
fn acceptance_criteria() {
    let reports = run_suite(Level::Full);
    let mut text = String::from("\n");
    for r in &reports {
        text.push_str(&format!("{r}\n"));
    }
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes()).unwrap();
    out.flush().unwrap();
    let failed: Vec<u8> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
