//! Normal closure of the m-th powers of the translations in SL(2, O/(mn))
//! against the principal congruence kernel mod m.
//!
//!     cargo run --release --example wohlfahrt_closure

use bianchi::indexcalc::verify_wohlfahrt_closure;
use bianchi::quadring::make_ring;
use bianchi::resring::Limits;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // (3, 3) needs about half a million elements
    let limits = Limits { group_elements: 600_000, ..Limits::default() };
    for d in [-1, -2, -3] {
        let ring = make_ring(d)?;
        for (m, n) in [(1, 3), (2, 2), (2, 3), (3, 2), (3, 3)] {
            let r = verify_wohlfahrt_closure(&ring, m, n, limits)?;
            println!(
                "d={d:<3} m={m} n={n}  |SL(2, O/{})|={:<7} closure={:<6} kernel={:<6} equal={}",
                m * n,
                r.ambient_order,
                r.closure_order,
                r.kernel_order,
                r.equal
            );
        }
    }
    Ok(())
}
