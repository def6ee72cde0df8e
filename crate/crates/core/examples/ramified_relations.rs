//! The layer G(pi)/G(q) for a ramified prime q = pi^2, q >= 5: conjugation
//! relations under S and T, and the index-q check on PSL(2, O/(q)).
//!
//!     cargo run --release --example ramified_relations

use bianchi::certify::verify_appendix_a;
use bianchi::resring::Limits;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (d, q) in [(-5, 5), (5, 5), (-10, 5), (-7, 7)] {
        let r = verify_appendix_a(d, q, Limits::default())?;
        println!(
            "d={d:<3} q={q} x={:<6} |layer|={} exponent q={} |PSL|={} [G:G']={} no index-q quotient={}",
            r.x, r.layer_order, r.layer_exponent_q, r.psl_order, r.derived_index, r.no_index_q_quotient
        );
        for c in &r.relations {
            println!("    {:<20} {}", c.name, c.holds);
        }
    }
    if let Err(e) = verify_appendix_a(-1, 5, Limits::default()) {
        println!("d=-1 q=5: {e}");
    }
    Ok(())
}
