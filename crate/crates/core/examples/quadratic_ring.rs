//! Arithmetic in O_d: the basis {1, w}, products, conjugates and norms.
//!
//!     cargo run --example quadratic_ring

use bianchi::quadring::{make_ring, QuadInt};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for d in [-1, -3, -5, 2] {
        let ring = make_ring(d)?;
        let x: QuadInt = "2+3*w".parse()?;
        let y: QuadInt = "1-w".parse()?;
        println!("{ring}");
        println!("  ({x})({y}) = {}", ring.mul(&x, &y));
        println!("  conj({x}) = {},  N({x}) = {}", ring.conj(&x), ring.norm(&x));
        println!("  w^5 = {}", ring.pow(&ring.w(), 5));
    }

    // non-squarefree d is rejected with the offending square
    if let Err(e) = make_ring(-12) {
        println!("make_ring(-12): {e}");
    }
    Ok(())
}
