//! Ideals in Hermite normal form, prime splitting and factorisation.
//!
//!     cargo run --example ideal_factorization

use bianchi::ideals::{factor_ideal, parse_ideal, split_type, DEFAULT_FACTOR_BOUND};
use bianchi::quadring::make_ring;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ring = make_ring(-5)?;
    for p in [2, 3, 5, 7, 11] {
        let st = split_type(&ring, p)?;
        let primes: Vec<String> = st.primes().iter().map(|p| p.generators_string()).collect();
        println!("{p:>3} {:<9} {}", st.name(), primes.join("  "));
    }

    // (6) = (2, 1+w)^2 (3, 1+w)(3, 2+w) in Z[sqrt(-5)], though 6 = 2*3 = (1+w)(1-w)
    for s in ["(6)", "(1+w)", "(2, 1+w)", "hnf:14,3,1"] {
        let ideal = parse_ideal(&ring, s)?;
        let f = factor_ideal(&ring, &ideal, DEFAULT_FACTOR_BOUND)?;
        let parts: Vec<String> =
            f.factors.iter().map(|pp| format!("{}^{}", pp.prime.generators_string(), pp.exponent)).collect();
        println!("{s:<11} = {}   [{ideal}, norm {}]", parts.join(" "), ideal.norm());
    }
    Ok(())
}
