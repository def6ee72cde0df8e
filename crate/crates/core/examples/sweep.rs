//! Running a verification suite programmatically.
//!
//!     cargo run --release --example sweep -- [suite] [threads]

use bianchi::sweep::{run_sweep, Status, Suite, SweepConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let suite: Suite = args.next().as_deref().unwrap_or("all").parse()?;
    let parallelism = args.next().map(|s| s.parse()).transpose()?.unwrap_or(4);
    let report = run_sweep(&SweepConfig { suite, parallelism, ..SweepConfig::default() })?;

    for it in report.items.iter().filter(|i| i.status != Status::Pass) {
        println!("{:<16} d={:<4} {:<28} {}  {}", it.suite, it.d, it.item, it.status, it.detail);
    }
    let s = &report.summary;
    println!("{suite}: {} pass, {} fail, {} skip", s.pass, s.fail, s.skip);
    Ok(())
}
