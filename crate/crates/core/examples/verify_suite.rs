//! Every check at three seeded points, as the `verify` subcommand runs it.
//!
//!     cargo run --release --example verify_suite -- 3 4

use qtoda::verification::{run_suite, Check, SuiteConfig};

fn main() -> qtoda::error::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<u32>().expect("integer argument"));
    let n = args.next().unwrap_or(3) as usize;
    let order = args.next().unwrap_or(4);
    let cfg = SuiteConfig {
        n,
        order,
        points: 3,
        seed: 42,
        checks: Check::ALL.to_vec(),
        q: None,
        s: None,
    };
    let reports = run_suite(&cfg)?;
    for r in &reports {
        let status = if r.pass { "pass" } else { "FAIL" };
        println!(
            "{status}  {:<12} seed {:<3} {}",
            r.check,
            r.seed.unwrap_or_default(),
            r.params
        );
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    println!("{} reports, {failed} failed", reports.len());
    std::process::exit(i32::from(failed > 0));
}
