//! Intersections of cosets and proper unions of cosets in C_2 ⊕ C_4.

use coverlab::covers::{verify_proper_union, CoverMode, CoverPart, CoverProblem};
use coverlab::groups::{coset_intersect, Coset, FiniteAbelianGroup, Subgroup};

fn main() -> coverlab::Result<()> {
    let g = FiniteAbelianGroup::new(vec![2, 4])?;
    let bound = 64;
    let a = Subgroup::generated_by(&g, &[g.element(&[1, 0])?], bound)?;
    let b = Subgroup::generated_by(&g, &[g.element(&[0, 2])?], bound)?;

    let x = Coset::new(a.clone(), &g.element(&[0, 1])?)?;
    let y = Coset::new(b.clone(), &g.element(&[1, 1])?)?;
    match coset_intersect(&x, &y)? {
        Some(c) => println!("({x:?}) ∩ ({y:?}) = {c:?}"),
        None => println!("({x:?}) and ({y:?}) are disjoint"),
    }

    // The four cosets of <(1,0)> partition the group.
    let parts = (0..4)
        .map(|k| Ok(CoverPart::Coset(Coset::new(a.clone(), &g.element(&[0, k])?)?)))
        .collect::<coverlab::Result<Vec<_>>>()?;
    let report = verify_proper_union(&CoverProblem::new(g, CoverMode::Cosets, parts)?, bound)?;
    println!(
        "cosets of <(1,0)>: covered={} proper={}",
        report.covered, report.proper
    );
    Ok(())
}
