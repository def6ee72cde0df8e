//! Class numbers of imaginary quadratic fields from reduced binary forms.
//!
//!     cargo run --example class_numbers

use bianchi::certify::class_number;
use bianchi::sweep::squarefree_range;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut by_h: std::collections::BTreeMap<u64, Vec<i64>> = Default::default();
    for d in squarefree_range(-430, -1) {
        by_h.entry(class_number(d)?).or_default().push(d);
    }
    for h in 1..=3 {
        let mut ds = by_h.get(&h).cloned().unwrap_or_default();
        ds.reverse();
        println!("h = {h}: {} fields, {:?}{}", ds.len(), &ds[..ds.len().min(12)], if ds.len() > 12 { " ..." } else { "" });
    }
    let max = by_h.keys().max().copied().unwrap_or(0);
    println!("largest class number for |d| <= 430: {max} at d = {:?}", by_h[&max]);
    Ok(())
}
