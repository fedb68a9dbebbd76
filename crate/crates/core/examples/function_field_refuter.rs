//! Finite coset families of F_5(τ²) inside F_5(τ) never cover the field.

use coverlab::witnesses::{
    refute_coset_cover, verify_refutation, CosetFamily, CosetMode, RationalFunction, RefutationOutcome,
    SubfieldSpec,
};

fn main() -> coverlab::Result<()> {
    let h = SubfieldSpec::new(5, 2)?;
    let f = |num: &[i64], den: &[i64]| RationalFunction::from_coeffs(5, num, den);
    let families = [
        (CosetMode::Additive, vec![f(&[0], &[1])?, f(&[0, 1], &[1])?]),
        (
            CosetMode::Additive,
            vec![f(&[0], &[1])?, f(&[0, 1], &[1])?, f(&[0, 0, 0, 1], &[1])?],
        ),
        (CosetMode::Multiplicative, vec![f(&[1], &[1])?, f(&[0, 1], &[1])?]),
        (
            CosetMode::Multiplicative,
            vec![f(&[1], &[1])?, f(&[0, 1], &[1])?, f(&[1, 1], &[1])?],
        ),
    ];
    for (mode, shifts) in families {
        let family = CosetFamily::new(h, mode, shifts)?;
        match refute_coset_cover(&family, 6)? {
            RefutationOutcome::Refuted(cert) => println!(
                "{mode} {:?}: {} is uncovered ({}, re-verified: {})",
                family.shifts(),
                cert.element(),
                cert.kind(),
                verify_refutation(&family, &cert)
            ),
            RefutationOutcome::Inconclusive => println!("{mode} {:?}: inconclusive", family.shifts()),
        }
    }
    Ok(())
}
