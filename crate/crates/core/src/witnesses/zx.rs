//! The ring `Z[x]` as a union of three proper subrings:
//! `S1 = {f : f(0) even}`, `S2 = {f : f(1) even}`, `S3 = {f : f(0) + f(1) even}`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Degree bound of sampled polynomials.
pub const SAMPLE_DEGREE: usize = 8;
/// Coefficient bound of sampled polynomials.
pub const SAMPLE_COEFF: i64 = 9;

/// A polynomial in `Z[x]`, constant term first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn eval_at_zero(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?}",
            self.coeffs.iter().map(ToString::to_string).collect::<Vec<_>>()
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ZxPart {
    S1,
    S2,
    S3,
}

impl ZxPart {
    pub const ALL: [ZxPart; 3] = [ZxPart::S1, ZxPart::S2, ZxPart::S3];

    pub fn name(self) -> &'static str {
        match self {
            ZxPart::S1 => "S1",
            ZxPart::S2 => "S2",
            ZxPart::S3 => "S3",
        }
    }

    pub fn contains(self, f: &IntPolynomial) -> bool {
        let (a, b) = (f.eval_at_zero(), f.eval_at_one());
        match self {
            ZxPart::S1 => a.is_even(),
            ZxPart::S2 => b.is_even(),
            ZxPart::S3 => (a + b).is_even(),
        }
    }
}

/// The parts containing `f`, in order.
pub fn zx_membership(f: &IntPolynomial) -> Vec<ZxPart> {
    ZxPart::ALL.into_iter().filter(|s| s.contains(f)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Sum,
    Difference,
    Product,
}

impl RingOp {
    pub fn name(self) -> &'static str {
        match self {
            RingOp::Sum => "sum",
            RingOp::Difference => "difference",
            RingOp::Product => "product",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureViolation {
    pub op: RingOp,
    pub f: IntPolynomial,
    pub g: IntPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZxClosureReport {
    pub part: ZxPart,
    pub samples: u64,
    pub seed: u64,
    pub violation: Option<ClosureViolation>,
}

/// A uniform random polynomial of degree at most [`SAMPLE_DEGREE`] with
/// coefficients in `[-SAMPLE_COEFF, SAMPLE_COEFF]`.
pub fn random_polynomial<R: Rng>(rng: &mut R) -> IntPolynomial {
    let coeffs: Vec<i64> = (0..=SAMPLE_DEGREE)
        .map(|_| rng.random_range(-SAMPLE_COEFF..=SAMPLE_COEFF))
        .collect();
    IntPolynomial::from_i64(&coeffs)
}

/// A random polynomial lying in `part`, by rejection sampling.
pub fn random_member<R: Rng>(part: ZxPart, rng: &mut R) -> IntPolynomial {
    loop {
        let f = random_polynomial(rng);
        if part.contains(&f) {
            return f;
        }
    }
}

/// Samples `samples` pairs from `part` and checks that their sum,
/// difference and product stay inside it.
pub fn zx_closure_check(part: ZxPart, samples: u64, seed: u64) -> Result<ZxClosureReport> {
    if samples == 0 {
        return Err(Error::PreconditionFailed("samples must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violation = None;
    for _ in 0..samples {
        let f = random_member(part, &mut rng);
        let g = random_member(part, &mut rng);
        let results = [
            (RingOp::Sum, f.add(&g)),
            (RingOp::Difference, f.sub(&g)),
            (RingOp::Product, f.mul(&g)),
        ];
        if let Some((op, _)) = results.iter().find(|(_, h)| !part.contains(h)) {
            violation = Some(ClosureViolation { op: *op, f, g });
            break;
        }
    }
    Ok(ZxClosureReport {
        part,
        samples,
        seed,
        violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_examples() {
        assert_eq!(zx_membership(&IntPolynomial::zero()), ZxPart::ALL.to_vec());
        assert_eq!(zx_membership(&IntPolynomial::x()), vec![ZxPart::S1]);
        assert_eq!(zx_membership(&IntPolynomial::one()), vec![ZxPart::S3]);
        assert_eq!(zx_membership(&IntPolynomial::from_i64(&[1, 1])), vec![ZxPart::S2]);
    }

    #[test]
    fn arithmetic_and_evaluation() {
        let f = IntPolynomial::from_i64(&[1, 2]);
        let g = IntPolynomial::from_i64(&[-1, 0, 3]);
        assert_eq!(f.mul(&g), IntPolynomial::from_i64(&[-1, -2, 3, 6]));
        assert_eq!(f.sub(&f), IntPolynomial::zero());
        assert_eq!(g.eval_at_one(), BigInt::from(2));
        assert_eq!(IntPolynomial::from_i64(&[0, 0, 0]).degree(), None);
    }

    #[test]
    fn closure_holds_for_every_part() {
        for part in ZxPart::ALL {
            let report = zx_closure_check(part, 200, 7).unwrap();
            assert_eq!(report.violation, None);
        }
        assert!(zx_closure_check(ZxPart::S2, 0, 1).is_err());
    }
}
