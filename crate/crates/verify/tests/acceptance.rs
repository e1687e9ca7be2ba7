//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use pathguard_verify::*;

const SHOWN: usize = 3;

fn report(k: usize, o: &Outcome) {
    let status = if o.pass { "PASS" } else { "FAIL" };
    println!("criterion {k}: {status} - {}", o.detail);
    for f in o.failures.iter().take(SHOWN) {
        println!("    {f}");
    }
    if o.failures.len() > SHOWN {
        println!("    ... {} more", o.failures.len() - SHOWN);
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let corpus = build_corpus();

    let c2 = coverage(&corpus);
    let c3 = counting(&corpus);
    let c4 = cut_cases();
    let c5 = shadow_necessity(&corpus);
    let c6 = corridors(&corpus);
    let c7 = refinement(&corpus);
    let c9 = structure(&corpus);
    let c8 = linear_time();
    let c1 = optimality(&corpus, start.elapsed());

    let all = [c1, c2, c3, c4, c5, c6, c7, c8, c9];
    for (k, o) in all.iter().enumerate() {
        report(k + 1, o);
    }
    let passed = all.iter().filter(|o| o.pass).count();
    println!(
        "acceptance: {passed}/{} criteria passed in {:.1}s",
        all.len(),
        start.elapsed().as_secs_f64()
    );
    if passed == all.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
