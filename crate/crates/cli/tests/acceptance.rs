//! End-to-end acceptance battery: the eleven library criteria over the
//! generated corpora, plus the report-determinism check on the binary
//! itself.  Prints one verdict line per criterion.

use std::io::Write;
use std::process::Command;

use stonework::suite::run_suite;

#[test]
fn acceptance() {
    let report = run_suite(42).expect("battery runs");
    let mut lines = Vec::new();
    for c in &report.criteria {
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        lines.push(format!("{:>2} {verdict}  {} — {}", c.id, c.title, c.detail));
    }

    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_stonework"))
            .args(["suite", "--seed=42", "--format=json"])
            .output()
            .expect("suite invocation runs");
        assert!(
            out.status.success(),
            "suite exited with {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        );
        out.stdout
    };
    let identical = run() == run();
    let verdict = if identical { "PASS" } else { "FAIL" };
    lines.push(format!(
        "12 {verdict}  repeated `suite --seed=42 --format=json` reports are byte-identical — 2 runs compared"
    ));

    // Straight to the process stderr so the verdict lines survive the
    // harness's output capture.
    let mut stderr = std::io::stderr().lock();
    for l in &lines {
        writeln!(stderr, "{l}").ok();
    }
    drop(stderr);
    assert!(
        report.passed() && identical,
        "acceptance failures:\n{}",
        lines.join("\n")
    );
}
