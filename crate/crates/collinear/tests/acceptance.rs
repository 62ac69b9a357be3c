//! Runs every acceptance criterion with its budget and prints one line per
//! criterion. Exits nonzero if any criterion fails.

use collinear::fixtures::FixtureSource;
use collinear::verify::{self, Ctx, DEFAULT_SEED};

fn main() {
    let ctx = Ctx::new(DEFAULT_SEED, FixtureSource::embedded());
    println!("acceptance: {} criteria, seed {DEFAULT_SEED}", verify::SUITES.len());
    let summary = verify::run(&ctx, &[], |o| println!("{}", o.line())).expect("all suites are known");
    let failed = summary.suites.iter().filter(|s| !s.passed).count();
    println!("acceptance: {} passed, {failed} failed", summary.suites.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
