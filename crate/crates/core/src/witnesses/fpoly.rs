use std::fmt;

use crate::arith;
use crate::error::{Error, Result};

/// Largest supported characteristic; keeps coefficient products in `u64`.
pub const MAX_CHARACTERISTIC: u64 = 1 << 31;

/// A polynomial over the prime field `F_p`, coefficients low to high with no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: &[i64]) -> Result<Self> {
        check_characteristic(p)?;
        let coeffs = coeffs
            .iter()
            .map(|&c| (c as i128).rem_euclid(p as i128) as u64)
            .collect();
        Ok(Self::from_reduced(p, coeffs))
    }

    pub(crate) fn from_reduced(p: u64, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly {
            p,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::from_reduced(p, vec![c % p])
    }

    /// `x^d`.
    pub fn monomial(p: u64, d: usize) -> Self {
        let mut coeffs = vec![0; d + 1];
        coeffs[d] = 1;
        FpPoly { p, coeffs }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Exponents with nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| (self.coeff(i) + other.coeff(i)) % self.p)
            .collect();
        Self::from_reduced(self.p, coeffs)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|&c| (self.p - c) % self.p).collect();
        Self::from_reduced(self.p, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = (coeffs[i + j] + a * b) % self.p;
            }
        }
        Self::from_reduced(self.p, coeffs)
    }

    pub fn scale(&self, c: u64) -> Self {
        let coeffs = self.coeffs.iter().map(|&a| a * (c % self.p) % self.p).collect();
        Self::from_reduced(self.p, coeffs)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let inv = arith::mod_inverse(divisor.leading(), self.p).expect("nonzero in a prime field");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.coeffs.len().saturating_sub(d)];
        while rem.len() > d {
            let top = rem.len() - 1;
            let c = rem[top] * inv % self.p;
            if c != 0 {
                quot[top - d] = c;
                for (i, &b) in divisor.coeffs.iter().enumerate() {
                    let idx = top - d + i;
                    rem[idx] = (rem[idx] + self.p - c * b % self.p) % self.p;
                }
            }
            rem.pop();
        }
        (Self::from_reduced(self.p, quot), Self::from_reduced(self.p, rem))
    }

    /// Scales to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match arith::mod_inverse(self.leading(), self.p) {
            Some(inv) if !self.is_zero() => self.scale(inv),
            _ => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (acc * (x % self.p) + c) % self.p)
    }

    /// Multiplicity of `x - root` as a factor; `None` for the zero polynomial.
    pub fn root_multiplicity(&self, root: u64) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let linear = Self::from_reduced(self.p, vec![(self.p - root % self.p) % self.p, 1]);
        let mut f = self.clone();
        let mut m = 0;
        loop {
            let (q, r) = f.div_rem(&linear);
            if !r.is_zero() {
                return Some(m);
            }
            f = q;
            m += 1;
        }
    }

    fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }
}

pub(crate) fn check_characteristic(p: u64) -> Result<()> {
    if !arith::is_prime(p) || p >= MAX_CHARACTERISTIC {
        return Err(Error::InvalidInput(format!(
            "characteristic must be a prime below 2^31, got {p}"
        )));
    }
    Ok(())
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "τ".to_string(),
                (1, c) => format!("{c}τ"),
                (i, 1) => format!("τ^{i}"),
                (i, c) => format!("{c}τ^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
