//! Runs the full verification suite on one configuration and prints a line per check.
//!
//! cargo run --release --example verification_suite -- 5 2 2 4

use std::time::Instant;

use qci::ffield::Field;
use qci::qalgebra::AlgebraSpec;
use qci::verify::{run_suite, Status, SuiteConfig};

fn main() -> qci::Result<()> {
    let args: Vec<u32> = std::env::args()
        .skip(1)
        .map(|s| s.parse().expect("integer arguments: p a c q"))
        .collect();
    let [p, a, c, q] = match args.as_slice() {
        [p, a, c, q] => [*p, *a, *c, *q],
        _ => [5, 2, 2, 4],
    };
    let field = Field::prime(p)?;
    let q = field.from_int(q as i64);
    let alg = AlgebraSpec::new(field, a as usize, c as usize, q)?;
    let mut cfg = SuiteConfig::new(&alg);
    cfg.random_modules = 2;

    let start = Instant::now();
    let report = run_suite(&cfg, None)?;
    for check in &report.checks {
        let tag = match check.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Inconclusive => "inconclusive",
        };
        println!("{:<14} {:<24} {:<12} {:?}ms", check.name, check.module, tag, check.millis);
        for w in check.witnesses.iter().take(3) {
            println!("    {}", w);
        }
    }
    let s = &report.summary;
    println!(
        "{} pass, {} fail, {} inconclusive in {:.1}s",
        s.pass,
        s.fail,
        s.inconclusive,
        start.elapsed().as_secs_f64()
    );
    std::process::exit(report.exit_code());
}
