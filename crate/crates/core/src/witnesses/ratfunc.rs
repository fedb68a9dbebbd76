use std::fmt;

use super::fpoly::{check_characteristic, FpPoly};
use crate::arith;
use crate::error::{Error, Result};

/// An element of `F_p(τ)` in reduced form: coprime numerator and monic
/// denominator. Zero is `0/1`.
///
/// Arithmetic between elements of different characteristic panics; the
/// checked entry points in this module validate characteristics first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: FpPoly,
    den: FpPoly,
}

impl RationalFunction {
    pub fn new(num: FpPoly, den: FpPoly) -> Result<Self> {
        if num.characteristic() != den.characteristic() {
            return Err(Error::CharacteristicMismatch {
                left: num.characteristic(),
                right: den.characteristic(),
            });
        }
        if den.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(Self::reduced(num, den))
    }

    /// From integer coefficient lists, constant term first.
    pub fn from_coeffs(p: u64, num: &[i64], den: &[i64]) -> Result<Self> {
        Self::new(FpPoly::new(p, num)?, FpPoly::new(p, den)?)
    }

    pub fn from_poly(num: FpPoly) -> Self {
        let p = num.characteristic();
        RationalFunction {
            num,
            den: FpPoly::constant(p, 1),
        }
    }

    pub fn zero(p: u64) -> Self {
        Self::from_poly(FpPoly::zero(p))
    }

    pub fn one(p: u64) -> Self {
        Self::from_poly(FpPoly::constant(p, 1))
    }

    /// The transcendental `τ`.
    pub fn tau(p: u64) -> Result<Self> {
        check_characteristic(p)?;
        Ok(Self::from_poly(FpPoly::monomial(p, 1)))
    }

    /// `τ^e` for any integer `e`.
    pub fn tau_pow(p: u64, e: i64) -> Result<Self> {
        check_characteristic(p)?;
        let m = FpPoly::monomial(p, e.unsigned_abs() as usize);
        Ok(if e >= 0 {
            Self::from_poly(m)
        } else {
            RationalFunction {
                num: FpPoly::constant(p, 1),
                den: m,
            }
        })
    }

    fn reduced(num: FpPoly, den: FpPoly) -> Self {
        let p = num.characteristic();
        if num.is_zero() {
            return Self::zero(p);
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let inv = arith::mod_inverse(den.leading(), p).expect("nonzero leading coefficient");
        RationalFunction {
            num: num.scale(inv),
            den: den.scale(inv),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.num.characteristic()
    }

    pub fn numerator(&self) -> &FpPoly {
        &self.num
    }

    pub fn denominator(&self) -> &FpPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// `deg num + deg den`, with the zero element at height 0.
    pub fn height(&self) -> usize {
        self.num.degree().unwrap_or(0) + self.den.degree().unwrap_or(0)
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(
            self.characteristic(),
            other.characteristic(),
            "rational functions of different characteristic"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_field(other);
        if self.den == other.den {
            return Self::reduced(self.num.add(&other.num), self.den.clone());
        }
        Self::reduced(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_field(other);
        Self::reduced(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Order of vanishing at `τ = root` (negative for poles); `None` for zero.
    pub fn valuation_at(&self, root: u64) -> Option<i64> {
        let top = self.num.root_multiplicity(root)? as i64;
        let bottom = self.den.root_multiplicity(root).unwrap_or(0) as i64;
        Some(top - bottom)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::from_coeffs(5, num, den).unwrap()
    }

    #[test]
    fn canonical_form() {
        // (2τ + 2) / (3τ² + 3τ) reduces to 4/τ
        let f = rf(&[2, 2], &[0, 3, 3]);
        assert_eq!(f.numerator().coeffs(), &[4]);
        assert_eq!(f.denominator().coeffs(), &[0, 1]);
        assert_eq!(rf(&[0], &[3, 1]), RationalFunction::zero(5));
        assert_eq!(
            RationalFunction::from_coeffs(5, &[1], &[0]),
            Err(Error::ZeroInput)
        );
    }

    #[test]
    fn field_operations() {
        let a = rf(&[1, 1], &[0, 1]);
        let b = rf(&[3], &[2, 0, 1]);
        assert_eq!(a.add(&b).sub(&b), a);
        assert_eq!(a.mul(&b).div(&b).unwrap(), a);
        assert_eq!(a.mul(&a.inv().unwrap()), RationalFunction::one(5));
        assert_eq!(a.sub(&a), RationalFunction::zero(5));
    }

    #[test]
    fn valuations() {
        let f = rf(&[1, 1], &[0, 0, 1]); // (τ+1)/τ²
        assert_eq!(f.valuation_at(0), Some(-2));
        assert_eq!(f.valuation_at(4), Some(1));
        assert_eq!(RationalFunction::zero(5).valuation_at(0), None);
        assert_eq!(
            RationalFunction::tau_pow(5, -3).unwrap().valuation_at(0),
            Some(-3)
        );
    }

    #[test]
    fn height_counts_both_parts() {
        assert_eq!(rf(&[1, 0, 0, 0, 1], &[0, 0, 1]).height(), 6);
        assert_eq!(RationalFunction::zero(5).height(), 0);
    }
}
