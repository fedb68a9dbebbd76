//! Structural verdicts on infinite abelian groups given by descriptors.

use coverlab::descriptors::{CardinalTag, Exponent, GroupDescriptor, Predicate, TorsionSummand};

fn main() -> coverlab::Result<()> {
    let fin = CardinalTag::Finite;
    let examples = [
        (
            "C_2 ⊕ C_2",
            GroupDescriptor::new(fin(0), vec![], vec![TorsionSummand::new(2, 1, fin(2))])?,
        ),
        (
            "Q ⊕ C_2",
            GroupDescriptor::new(fin(1), vec![], vec![TorsionSummand::new(2, 1, fin(1))])?,
        ),
        (
            "C_3^∞ ⊕ C_9",
            GroupDescriptor::new(fin(0), vec![3], vec![TorsionSummand::new(3, 2, fin(1))])?,
        ),
        (
            "⊕ C_2^k, k unbounded",
            GroupDescriptor::new(
                fin(0),
                vec![],
                vec![TorsionSummand {
                    q: 2,
                    k: Exponent::Unbounded,
                    multiplicity: CardinalTag::CountablyInfinite,
                }],
            )?,
        ),
    ];
    let predicates = [
        Predicate::Artinian,
        Predicate::Theorem1,
        Predicate::Corollary1,
        Predicate::Theorem2,
        Predicate::Corollary2,
    ];
    for (name, d) in &examples {
        println!("{name}");
        for p in predicates {
            match p.evaluate(d, None) {
                Ok(v) => println!("  {:<12} {:<5} [{}]", v.statement, v.value, v.clause),
                Err(e) => println!("  {p:?}: {e}"),
            }
        }
    }
    Ok(())
}
