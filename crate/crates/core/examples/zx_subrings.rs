//! Z[x] is the union of {f(0) even}, {f(1) even} and {f(0) + f(1) even}.

use coverlab::witnesses::{zx_closure_check, zx_membership, IntPolynomial, ZxPart};

fn main() -> coverlab::Result<()> {
    let samples = [
        IntPolynomial::zero(),
        IntPolynomial::one(),
        IntPolynomial::x(),
        IntPolynomial::from_i64(&[1, 1]),
        IntPolynomial::from_i64(&[3, -2, 0, 7]),
    ];
    for f in &samples {
        println!("{f:?} lies in {:?}", zx_membership(f));
    }
    for part in ZxPart::ALL {
        let report = zx_closure_check(part, 1000, 42)?;
        println!(
            "{}: closed on {} sampled pairs: {}",
            part.name(),
            report.samples,
            report.violation.is_none()
        );
    }
    Ok(())
}
