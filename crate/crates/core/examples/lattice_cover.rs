//! Z² as a proper union of three index-2 sublattices, checked exactly.

use coverlab::lattices::{hnf, ivec, verify_lattice_cover_exact, LatticeCoset, LatticeCover};

fn main() -> coverlab::Result<()> {
    let gens: [[[i64; 2]; 2]; 3] = [[[1, 0], [1, 2]], [[0, 1], [2, 1]], [[1, 1], [-1, 1]]];
    let mut cosets = Vec::new();
    for rows in gens {
        let lattice = hnf(2, &rows.iter().map(|r| ivec(r)).collect::<Vec<_>>())?;
        println!("basis {:?}, index {:?}", lattice.basis(), lattice.index());
        cosets.push(LatticeCoset::new(lattice, &ivec(&[0, 0]))?);
    }
    let cover = LatticeCover::new(2, cosets)?;

    let report = verify_lattice_cover_exact(&cover)?;
    println!("covered={} proper={}", report.covered, report.proper);
    for (part, w) in &report.missing_after_removal {
        println!("  only part {part} contains {w:?}");
    }

    for drop in 0..3 {
        let smaller = verify_lattice_cover_exact(&cover.without(drop))?;
        println!(
            "without part {drop}: covered={} witness={:?}",
            smaller.covered, smaller.uncovered_witness
        );
    }
    Ok(())
}
