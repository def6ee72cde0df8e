//! Layers of the congruence filtration: ker(SL(2, O/P^{m+1}) -> SL(2, O/P^m)).
//!
//!     cargo run --release --example filtration

use bianchi::ideals::split_type;
use bianchi::indexcalc::verify_filtration;
use bianchi::quadring::make_ring;
use bianchi::resring::Limits;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for d in [-1, -2, -7] {
        let ring = make_ring(d)?;
        for p in [2, 3] {
            for prime in split_type(&ring, p)?.primes() {
                for m in 1..=2 {
                    let r = verify_filtration(&ring, prime, m, Limits::default())?;
                    println!(
                        "d={d:<3} P={:<12} m={m}  |kernel|={:<4} N(P)^3={:<4} elementary abelian={} generated={}",
                        prime.generators_string(),
                        r.kernel_order,
                        r.expected,
                        r.elementary_abelian,
                        r.witnesses_generate
                    );
                }
            }
        }
    }

    let ring = make_ring(-1)?;
    let r = verify_filtration(&ring, split_type(&ring, 2)?.primes()[0], 1, Limits::default())?;
    for w in &r.witnesses {
        println!("x = {}:\n  {}\n  {}\n  {}", w.x, w.upper, w.lower, w.mixed);
    }
    Ok(())
}
