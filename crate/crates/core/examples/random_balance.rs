//! Seeded sampling of Poisson brackets on R^3 and the balanced-flow check.
//!
//! `cargo run --example random_balance -- <seed> <count>`

use tetraflow::analysis::random_balance_suite;
use tetraflow::sampling::DEFAULT_SEED;

fn main() -> tetraflow::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed = args
        .next()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED);
    let count = args.next().and_then(|s| s.parse().ok()).unwrap_or(20);
    let report = random_balance_suite(seed, count, 4)?;
    println!(
        "seed {seed}: {}/{} samples with [[P, Q(P)]] = 0",
        report.samples - report.failures.len(),
        report.samples
    );
    if !report.passed() {
        std::process::exit(1);
    }
    Ok(())
}
