//! A coset cover of Zⁿ always has a finite-index member; families of
//! infinite-index cosets are refuted by a point they miss.

use coverlab::lattices::{hnf, ivec, neumann_certificate, LatticeCoset, LatticeCover, NeumannOutcome};

fn coset(rows: &[&[i64]], shift: &[i64]) -> coverlab::Result<LatticeCoset> {
    let basis: Vec<_> = rows.iter().map(|r| ivec(r)).collect();
    LatticeCoset::new(hnf(shift.len(), &basis)?, &ivec(shift))
}

fn main() -> coverlab::Result<()> {
    let families = [
        (
            "parity classes",
            LatticeCover::new(1, vec![coset(&[&[2]], &[0])?, coset(&[&[2]], &[1])?])?,
        ),
        (
            "three lines",
            LatticeCover::new(
                2,
                vec![
                    coset(&[&[1, 0]], &[0, 0])?,
                    coset(&[&[0, 1]], &[0, 0])?,
                    coset(&[&[1, 1]], &[0, 0])?,
                ],
            )?,
        ),
        (
            "shifted lines",
            LatticeCover::new(2, vec![coset(&[&[1, 2]], &[0, 1])?, coset(&[&[3, 1]], &[1, 0])?])?,
        ),
    ];
    for (name, cover) in &families {
        match neumann_certificate(cover, 4)? {
            NeumannOutcome::Certificate(c) => {
                println!("{name}: member {} has index {}", c.member_index, c.index_value)
            }
            NeumannOutcome::Refuted(w) => println!("{name}: misses {w:?}"),
            NeumannOutcome::Inconclusive => println!("{name}: inconclusive"),
        }
    }
    Ok(())
}
