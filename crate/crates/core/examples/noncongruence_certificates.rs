//! Certificates for normal non-congruence subgroups of prime index, and the
//! congruence status of B_d^2 and B_d'.
//!
//!     cargo run --example noncongruence_certificates

use bianchi::certify::{certify_noncongruence, power_subgroup_status, AbelianGroup, SubgroupDescriptor};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (d, q) in [(-2, 5), (-2, 3), (-2, 2), (-1, 5), (-19, 7), (-6, 11)] {
        let c = certify_noncongruence(d, q, &SubgroupDescriptor::Bianchi)?;
        println!("B_{d}, q = {q}: {}", c.verdict);
        for h in &c.hypotheses {
            println!("    {:<14} {:<5} {}", h.name, h.checked, h.witness);
        }
    }

    // a hypothetical level-2 subgroup of index 4 with infinite abelianization
    let s = SubgroupDescriptor::Custom { index: 4, level: 2, abelianization: AbelianGroup::new(1, &[2]) };
    let c = certify_noncongruence(-2, 5, &s)?;
    println!("\nS (index 4, level 2) in B_-2, q = 5: {} {:?}", c.verdict, c.conclusion);

    println!();
    for d in [-3, -11, -7, -23, -6] {
        for item in power_subgroup_status(d, None)?.items {
            println!("{:<10} {:<60} ({})", item.subgroup, item.verdict.to_string(), item.rule);
        }
    }
    Ok(())
}
