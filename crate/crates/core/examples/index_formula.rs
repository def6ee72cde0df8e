//! Closed-form |SL(2, O/I)| against a brute-force count.
//!
//!     cargo run --release --example index_formula

use bianchi::ideals::ideals_up_to;
use bianchi::indexcalc::index_formula;
use bianchi::quadring::make_ring;
use bianchi::resring::Limits;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ring = make_ring(-2)?;
    println!("{:<16} {:>6} {:>10} {:>10}", "ideal", "norm", "formula", "count");
    for ideal in ideals_up_to(&ring, 2, 24) {
        let r = index_formula(&ring, &ideal, Limits::default())?;
        let oracle = r.oracle.map_or("-".to_string(), |o| o.to_string());
        let flag = if r.matches { "" } else { "  <-- mismatch" };
        println!("{:<16} {:>6} {:>10} {:>10}{flag}", ideal.generators_string(), ideal.norm(), r.closed_form, oracle);
    }

    // beyond the enumeration cap only the formula is available
    let big = bianchi::ideals::Ideal::rational(1001)?;
    println!("|SL(2, O/(1001))| = {}", index_formula(&ring, &big, Limits::default())?.closed_form);
    Ok(())
}
