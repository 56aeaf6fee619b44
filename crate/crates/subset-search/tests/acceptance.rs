//! One line per acceptance criterion; exits nonzero if any fails.
//!
//! `cargo test --test acceptance -- 3 7` runs only criteria 3 and 7.

use std::process::ExitCode;

use subset_search::acceptance::{run, CRITERIA};
use subset_search::generate::DEFAULT_SEED;

fn main() -> ExitCode {
    let chosen: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut ok = true;
    for (n, _) in CRITERIA.iter().filter(|(n, _)| chosen.is_empty() || chosen.contains(n)) {
        let outcome = run(*n, DEFAULT_SEED);
        println!("{outcome} [{:.1}s]", outcome.elapsed.as_secs_f64());
        ok &= outcome.passed();
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
