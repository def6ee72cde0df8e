//! Enumerating SL(2, O/I), its PSL image, and a few structural fingerprints.
//!
//!     cargo run --release --example sl2_enumeration

use std::sync::Arc;

use bianchi::ideals::parse_ideal;
use bianchi::matgroup::{psl_quotient, sl2_enumerate, structure_probe};
use bianchi::quadring::make_ring;
use bianchi::resring::{quotient_ring, Limits};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (d, s) in [(-1, "(1+w)"), (-3, "(2)"), (-7, "(2)"), (-1, "(2)"), (-5, "(5, w)"), (-2, "(3)")] {
        let ring = make_ring(d)?;
        let q = Arc::new(quotient_ring(&ring, &parse_ideal(&ring, s)?, Limits::default())?);
        let sl = sl2_enumerate(&q)?;
        let psl = psl_quotient(&sl)?;
        let probe = structure_probe(&psl)?;
        println!(
            "d={d:<3} I={s:<8} |SL|={:<6} |PSL|={:<6} centre={} [G:G']={} exponent={:?} gens={}",
            sl.order(),
            psl.order(),
            probe.center_order,
            probe.derived_index,
            probe.exponent,
            sl.generators().len()
        );
    }
    Ok(())
}
