//! The unit group of Q split into three subsemigroups by the exponents of 2
//! and 3, and the finite fields where no such split exists.

use coverlab::covers::minimal_subsemigroup_cover;
use coverlab::groups::DEFAULT_BOUND;
use coverlab::witnesses::{parse_rational, semigroup_membership, unit_exponents, GaloisField};

fn main() -> coverlab::Result<()> {
    for s in ["2", "3", "6", "12", "-5/18", "7"] {
        let q = parse_rational(s)?;
        let e = unit_exponents(&q)?;
        let parts = semigroup_membership(&q)?;
        println!("{s:>6}: exponents ({}, {}) -> {:?}", e.e1, e.e2, parts);
    }

    for q in [4, 5, 7, 8, 9] {
        let field = GaloisField::new(q)?;
        let (units, generator) = field.unit_group()?;
        let cover = minimal_subsemigroup_cover(&units, DEFAULT_BOUND)?;
        println!(
            "U(F_{q}) = {units} generated by element #{generator}: cover {}",
            if cover.is_some() { "found" } else { "impossible" }
        );
    }
    Ok(())
}
