//! PSL(2, O_d/2) in the three splitting cases of 2, with its square and
//! derived subgroups.
//!
//!     cargo run --example power_subgroups_mod_two

use bianchi::certify::verify_lemma_6_1;
use bianchi::resring::Limits;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for d in [-3, -11, -7, -15, -1, -2, -5, -6] {
        let r = verify_lemma_6_1(d, Limits::default())?;
        println!(
            "d={d:<4} 2 {:<9} |G|={:<3} [G:G^2]={} [G:G']={}  {}",
            r.branch,
            r.order,
            r.square_index,
            r.derived_index,
            if r.holds { "ok" } else { "FAILED" }
        );
    }

    let r = verify_lemma_6_1(-1, Limits::default())?;
    println!("\nramified case, d = -1:");
    for c in r.checks {
        println!("  [{}] {}", if c.holds { "x" } else { " " }, c.name);
    }
    Ok(())
}
