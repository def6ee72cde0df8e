//! Finite rings O/I: canonical residues, units, and reduction between moduli.
//!
//!     cargo run --example quotient_rings

use bianchi::ideals::parse_ideal;
use bianchi::quadring::make_ring;
use bianchi::resring::{quotient_ring, Limits};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ring = make_ring(-1)?;
    let six = quotient_ring(&ring, &parse_ideal(&ring, "(6)")?, Limits::default())?;
    let two = quotient_ring(&ring, &parse_ideal(&ring, "(2)")?, Limits::default())?;
    println!("|Z[i]/(6)| = {}, units: {}", six.size(), six.units().len());

    let x = six.reduce(&"7+13*w".parse()?);
    println!("7+13w reduces to {}", six.format_residue(x));
    match six.residue_inverse(x) {
        Some(inv) => println!("inverse: {}", six.format_short(inv)),
        None => println!("not a unit"),
    }

    // Z[i]/(6) -> Z[i]/(2)
    let map = six.reduction_map(&two)?;
    let fibres: Vec<usize> = two.elements().map(|r| map.iter().filter(|&&m| m == r).count()).collect();
    println!("fibre sizes of O/(6) -> O/(2): {fibres:?}");
    Ok(())
}
