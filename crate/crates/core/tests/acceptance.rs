//! Acceptance suite: one line per criterion, exact arithmetic throughout.
//!
//! A criterion line reads PASS or FAIL. Failing checks listed in `KNOWN_DEVIATIONS` are
//! printed as failures but do not make the harness exit nonzero; each has a worked
//! explanation in the decisions ledger kept with the project.

use std::process::ExitCode;
use std::time::Instant;

use qgsmash::suites;

const SEED: u64 = 7;

/// Every comparison is an exact rational or integer equality.
const TOLERANCE: &str = "exact";

/// (suite, description, time limit in seconds)
const CRITERIA: [(&str, &str, f64); 8] = [
    ("idempotents-d2d3", "Schur idempotent tables for d = 2, 3", 30.0),
    ("qg-shapes", "Q_G shapes for the worked settings", 60.0),
    ("fixtures-iso", "printed R_c families match the computed functor", 120.0),
    ("schofield-semantics", "c(M,N) vanishes exactly when Hom(M,N) is nonzero", 120.0),
    ("propositions", "transformation law of the tensor semi-invariants", 300.0),
    ("span-reciprocity", "dimension of SI and reciprocity on K_3", 180.0),
    ("adjunction", "c(M, R_c N) = c(T_c M, N)", 120.0),
    ("foundations", "Euler form, Young symmetrizers, characters, LR and Kronecker", 60.0),
];

/// Check labels whose failure is a reproduced disagreement with a printed claim.
const KNOWN_DEVIATIONS: [(&str, &str); 2] = [
    ("span-reciprocity", "dim SI at [1, 2]"),
    ("span-reciprocity", "T_c of a generic (1,2)-module"),
];

fn known(suite: &str, label: &str) -> bool {
    KNOWN_DEVIATIONS.iter().any(|(s, prefix)| *s == suite && label.starts_with(prefix))
}

fn main() -> ExitCode {
    let mut unexpected = 0;
    for (i, (suite, what, limit)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let result = suites::run(suite, SEED);
        let secs = start.elapsed().as_secs_f64();
        let timing = format!("{secs:.1}s of {limit:.0}s, tolerance {TOLERANCE}");
        match result {
            Ok(report) => {
                let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed).collect();
                let surprising = failed.iter().filter(|c| !known(suite, &c.label)).count();
                let in_time = secs <= *limit;
                let verdict = if failed.is_empty() && in_time { "PASS" } else { "FAIL" };
                let mut extra = String::new();
                if !failed.is_empty() {
                    let labels: Vec<_> = failed.iter().map(|c| c.label.as_str()).collect();
                    extra = format!("; failed: {}", labels.join(" | "));
                    if surprising == 0 {
                        extra.push_str(" (known deviations)");
                    }
                }
                if !in_time {
                    extra.push_str("; over the time limit");
                }
                println!(
                    "criterion {} {suite}: {verdict} ({what}; {}/{} checks; {timing}{extra})",
                    i + 1,
                    report.checks.len() - failed.len(),
                    report.checks.len()
                );
                for c in &failed {
                    println!("    {}: {}", c.label, c.detail);
                }
                for n in &report.notes {
                    println!("    note: {n}");
                }
                unexpected += surprising + usize::from(!in_time);
            }
            Err(e) => {
                println!("criterion {} {suite}: FAIL ({what}; error: {e}; {timing})", i + 1);
                unexpected += 1;
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected failure(s)");
        ExitCode::FAILURE
    }
}
