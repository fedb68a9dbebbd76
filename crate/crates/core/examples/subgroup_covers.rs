//! Smallest covers of finite abelian groups by proper subgroups.

use coverlab::covers::{construct_subgroup_cover, minimal_subgroup_cover};
use coverlab::groups::{abelian_groups_of_order, DEFAULT_BOUND};

fn main() -> coverlab::Result<()> {
    for n in [8, 9, 12, 16, 25] {
        for g in abelian_groups_of_order(n) {
            let minimal = minimal_subgroup_cover(&g, DEFAULT_BOUND)?;
            let built = construct_subgroup_cover(&g, DEFAULT_BOUND)?;
            match minimal {
                None => println!("{g:<12} cyclic, no cover"),
                Some(parts) => println!(
                    "{g:<12} sigma = {}, construction uses {} parts",
                    parts.len(),
                    built.map_or(0, |b| b.len())
                ),
            }
        }
    }
    Ok(())
}
