//! Unit groups split into three subsemigroups by two exponent coordinates.
//!
//! For a unit `z` with exponents `(e1, e2)` on two distinguished free
//! generators, `M_i = {z : (e1, e2) ∈ L_i}` where
//! `L1 = ⟨(1,0),(1,2)⟩`, `L2 = ⟨(0,1),(2,1)⟩`, `L3 = ⟨(1,1),(-1,1)⟩`.
//! Over `Q` the generators are 2 and 3; over `F_p(τ)` they are `τ` and `τ+1`.

use std::ops::Add;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::ratfunc::RationalFunction;
use crate::error::{Error, Result};
use crate::lattices::{hnf, ivec, Lattice, LatticeCoset, LatticeCover};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct UnitExponentVector {
    pub e1: i64,
    pub e2: i64,
}

impl UnitExponentVector {
    pub fn new(e1: i64, e2: i64) -> Self {
        UnitExponentVector { e1, e2 }
    }

    pub fn to_vec(self) -> Vec<BigInt> {
        ivec(&[self.e1, self.e2])
    }
}

impl Add for UnitExponentVector {
    type Output = Self;

    fn add(self, other: Self) -> Self {
        UnitExponentVector::new(self.e1 + other.e1, self.e2 + other.e2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UnitPart {
    M1,
    M2,
    M3,
}

impl UnitPart {
    pub const ALL: [UnitPart; 3] = [UnitPart::M1, UnitPart::M2, UnitPart::M3];

    pub fn name(self) -> &'static str {
        match self {
            UnitPart::M1 => "M1",
            UnitPart::M2 => "M2",
            UnitPart::M3 => "M3",
        }
    }

    pub fn lattice(self) -> &'static Lattice {
        &exponent_lattices()[self as usize]
    }
}

/// `[L1, L2, L3]`.
pub fn exponent_lattices() -> &'static [Lattice; 3] {
    static LATTICES: OnceLock<[Lattice; 3]> = OnceLock::new();
    LATTICES.get_or_init(|| {
        let make = |rows: [[i64; 2]; 2]| {
            hnf(2, &rows.iter().map(|r| ivec(r)).collect::<Vec<_>>()).expect("valid generators")
        };
        [
            make([[1, 0], [1, 2]]),
            make([[0, 1], [2, 1]]),
            make([[1, 1], [-1, 1]]),
        ]
    })
}

/// The three exponent lattices as a cover of `Z²` with zero shifts.
pub fn exponent_lattice_cover() -> LatticeCover {
    let cosets = exponent_lattices()
        .iter()
        .map(|l| LatticeCoset::new(l.clone(), &ivec(&[0, 0])).expect("matching dimension"))
        .collect();
    LatticeCover::new(2, cosets).expect("matching dimension")
}

/// The parts whose lattice contains `v`.
pub fn exponent_membership(v: UnitExponentVector) -> Vec<UnitPart> {
    let v = v.to_vec();
    UnitPart::ALL
        .into_iter()
        .filter(|m| m.lattice().contains(&v).expect("dimension 2"))
        .collect()
}

fn valuation(n: &BigInt, p: u32) -> i64 {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Exponents of 2 and 3 in the factorization of a nonzero rational.
pub fn unit_exponents(q: &BigRational) -> Result<UnitExponentVector> {
    if q.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (n, d) = (q.numer(), q.denom());
    Ok(UnitExponentVector::new(
        valuation(n, 2) - valuation(d, 2),
        valuation(n, 3) - valuation(d, 3),
    ))
}

pub fn semigroup_membership(q: &BigRational) -> Result<Vec<UnitPart>> {
    Ok(exponent_membership(unit_exponents(q)?))
}

/// Orders of vanishing at `τ = 0` and `τ = -1`, i.e. the exponents of the
/// irreducibles `τ` and `τ + 1` in a nonzero element of `F_p(τ)`.
pub fn unit_exponents_fp(f: &RationalFunction) -> Result<UnitExponentVector> {
    let p = f.characteristic();
    match (f.valuation_at(0), f.valuation_at(p - 1)) {
        (Some(e1), Some(e2)) => Ok(UnitExponentVector::new(e1, e2)),
        _ => Err(Error::ZeroInput),
    }
}

pub fn semigroup_membership_fp(f: &RationalFunction) -> Result<Vec<UnitPart>> {
    Ok(exponent_membership(unit_exponents_fp(f)?))
}

/// Parses `"12"`, `"-2/3"` and the like.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidInput(format!("not a rational number: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}
