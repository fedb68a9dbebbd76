//! Small finite fields `F_q = F_p[x]/(m)` and their unit groups.

use super::fpoly::{check_characteristic, FpPoly};
use crate::arith;
use crate::error::{Error, Result};
use crate::groups::FiniteAbelianGroup;

/// Largest field order that is enumerated.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// Elements are indexed by their coefficient vector read in base `p`,
/// constant term least significant; index 0 is zero and index 1 is one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisField {
    p: u64,
    degree: usize,
    modulus: FpPoly,
}

impl GaloisField {
    /// The field of order `q`, built from the first monic irreducible of the
    /// right degree in lexicographic order of coefficients.
    pub fn new(q: u64) -> Result<Self> {
        let factors = if q < 2 { Vec::new() } else { arith::factorize(q) };
        let &[(p, n)] = factors.as_slice() else {
            return Err(Error::InvalidInput(format!("{q} is not a prime power")));
        };
        check_characteristic(p)?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::BoundExceeded {
                order: q.to_string(),
                bound: MAX_FIELD_ORDER,
            });
        }
        let degree = n as usize;
        let modulus = (0..p.pow(n))
            .map(|low| {
                let mut coeffs = digits(low, p, degree);
                coeffs.push(1);
                FpPoly::from_reduced(p, coeffs)
            })
            .find(is_irreducible)
            .expect("irreducible polynomials exist in every degree");
        Ok(GaloisField { p, degree, modulus })
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.degree as u32)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    pub fn element(&self, index: u64) -> FpPoly {
        FpPoly::from_reduced(self.p, digits(index, self.p, self.degree))
    }

    pub fn index_of(&self, x: &FpPoly) -> u64 {
        x.coeffs().iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    /// Product of two elements given by index.
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let prod = self.element(a).mul(&self.element(b));
        self.index_of(&prod.div_rem(&self.modulus).1)
    }

    pub fn multiplicative_order(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let (mut x, mut k) = (a, 1);
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        Some(k)
    }

    /// The unit group together with a generator; the powers of the
    /// generator are checked to exhaust every nonzero element.
    pub fn unit_group(&self) -> Result<(FiniteAbelianGroup, u64)> {
        let units = self.order() - 1;
        let generator = (1..self.order())
            .find(|&a| self.multiplicative_order(a) == Some(units))
            .ok_or_else(|| Error::PreconditionFailed("no primitive element found".into()))?;
        let mut seen = vec![false; self.order() as usize];
        let mut x = 1;
        for _ in 0..units {
            seen[x as usize] = true;
            x = self.mul(x, generator);
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(Error::PreconditionFailed("powers miss a unit".into()));
        }
        Ok((FiniteAbelianGroup::cyclic(units)?, generator))
    }
}

fn digits(mut k: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(k % p);
        k /= p;
    }
    out
}

/// Trial division by every monic polynomial of degree at most half.
fn is_irreducible(f: &FpPoly) -> bool {
    let p = f.characteristic();
    let n = f.degree().unwrap_or(0);
    for d in 1..=n / 2 {
        for low in 0..p.pow(d as u32) {
            let mut coeffs = digits(low, p, d);
            coeffs.push(1);
            if f.div_rem(&FpPoly::from_reduced(p, coeffs)).1.is_zero() {
                return false;
            }
        }
    }
    n >= 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_in_gf8_and_gf9() {
        for q in [8, 9] {
            let f = GaloisField::new(q).unwrap();
            for a in 1..q {
                assert_eq!(f.mul(a, 1), a);
                assert_eq!((1..q).filter(|&b| f.mul(a, b) == 1).count(), 1);
            }
        }
    }

    #[test]
    fn unit_groups_are_cyclic() {
        for q in [4, 5, 7, 16, 27] {
            let (g, gen) = GaloisField::new(q).unwrap().unit_group().unwrap();
            assert!(g.is_cyclic());
            assert_eq!(g.invariant_factors(), &[q - 1][..]);
            assert!(gen >= 1);
        }
        assert!(GaloisField::new(12).is_err());
    }

    #[test]
    fn gf4_modulus() {
        assert_eq!(GaloisField::new(4).unwrap().modulus().coeffs(), &[1, 1, 1]);
    }
}
