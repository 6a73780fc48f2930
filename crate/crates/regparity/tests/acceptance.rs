//! Runs without the libtest harness so the per-criterion lines always print.

use std::process::ExitCode;

use regparity::repq::DEFAULT_SEED;
use regparity::selftest::run_all;

fn main() -> ExitCode {
    let outcomes = run_all(DEFAULT_SEED);
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.passed).map(|o| o.criterion).collect();
    if outcomes.len() == 10 && failed.is_empty() {
        println!("acceptance: 10/10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?} of {}", outcomes.len());
        ExitCode::FAILURE
    }
}
