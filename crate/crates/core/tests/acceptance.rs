//! Runs every acceptance suite and prints one line per criterion.

use std::process::ExitCode;

use postlat::verify::{run_suite, Suite};

fn main() -> ExitCode {
    let mut failed = 0;
    for suite in Suite::ALL {
        let outcome = run_suite(suite);
        println!("{outcome}");
        if !outcome.passed {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", Suite::ALL.len() - failed, Suite::ALL.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
