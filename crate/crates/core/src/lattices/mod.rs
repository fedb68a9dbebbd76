//! Sublattices of `Zⁿ` in Hermite normal form, their cosets, and exact or
//! bounded verification of lattice-coset covers.

mod cover;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

pub use cover::{
    neumann_certificate, refute_lattice_cover_search, verify_lattice_cover_exact, FiniteIndexCertificate,
    LatticeCover, NeumannOutcome, RESIDUE_LIMIT,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LatticeIndex {
    Finite(BigUint),
    Infinite,
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeIndex::Finite(m) => write!(f, "{m}"),
            LatticeIndex::Infinite => write!(f, "∞"),
        }
    }
}

/// A sublattice of `Zⁿ`, stored as its row-style Hermite normal form:
/// rows in echelon form, positive pivots, and every entry above a pivot
/// reduced into `[0, pivot)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient: usize,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.ambient
    }

    /// `|det|` of the basis when the lattice has full rank.
    pub fn index(&self) -> LatticeIndex {
        if !self.is_full_rank() {
            return LatticeIndex::Infinite;
        }
        let det: BigInt = self
            .basis
            .iter()
            .zip(&self.pivots)
            .map(|(row, &c)| row[c].clone())
            .product();
        LatticeIndex::Finite(det.magnitude().clone())
    }

    pub fn full(ambient: usize) -> Self {
        let rows: Vec<Vec<BigInt>> = (0..ambient)
            .map(|i| (0..ambient).map(|j| BigInt::from((i == j) as i32)).collect())
            .collect();
        hnf(ambient, &rows).expect("identity rows have the ambient dimension")
    }

    /// Membership by back-substitution against the echelon basis.
    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        self.check_dim(v)?;
        let mut w = v.to_vec();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            let (q, r) = w[c].div_rem(&row[c]);
            if !r.is_zero() {
                return Ok(false);
            }
            sub_multiple(&mut w, row, &q);
        }
        Ok(w.iter().all(Zero::is_zero))
    }

    /// Canonical representative of `v + L`: pivot coordinates reduced into
    /// `[0, pivot)`.
    pub fn reduce(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        self.check_dim(v)?;
        let mut w = v.to_vec();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            let q = w[c].div_floor(&row[c]);
            sub_multiple(&mut w, row, &q);
        }
        Ok(w)
    }

    fn check_dim(&self, v: &[BigInt]) -> Result<()> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Lattice(Z^{}, basis {:?}, index {})",
            self.ambient,
            self.basis,
            self.index()
        )
    }
}

/// Hermite normal form of the lattice spanned by `gens` inside `Z^ambient`.
pub fn hnf(ambient: usize, gens: &[Vec<BigInt>]) -> Result<Lattice> {
    if let Some(bad) = gens.iter().find(|g| g.len() != ambient) {
        return Err(Error::DimensionMismatch {
            expected: ambient,
            found: bad.len(),
        });
    }
    let mut a = IntMatrix::from_rows(ambient, gens);
    let m = a.rows();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ambient {
        if r == m {
            break;
        }
        for i in r + 1..m {
            if a[(i, col)].is_zero() {
                continue;
            }
            if a[(r, col)].is_zero() {
                a.swap_rows(r, i);
                continue;
            }
            let e = a[(r, col)].extended_gcd(&a[(i, col)]);
            let (x, y) = (a[(r, col)].clone() / &e.gcd, a[(i, col)].clone() / &e.gcd);
            a.combine_rows(r, i, &e.x, &e.y, &-y, &x);
        }
        if a[(r, col)].is_zero() {
            continue;
        }
        if a[(r, col)].is_negative() {
            a.negate_row(r);
        }
        for i in 0..r {
            let q = a[(i, col)].div_floor(&a[(r, col)]);
            a.add_row_multiple(i, r, &-q);
        }
        pivots.push(col);
        r += 1;
    }
    let basis = (0..r).map(|i| a.row(i).to_vec()).collect();
    Ok(Lattice {
        ambient,
        basis,
        pivots,
    })
}

/// A translate `shift + L`, with the shift in canonical reduced form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeCoset {
    lattice: Lattice,
    shift: Vec<BigInt>,
}

impl LatticeCoset {
    pub fn new(lattice: Lattice, shift: &[BigInt]) -> Result<Self> {
        let shift = lattice.reduce(shift)?;
        Ok(LatticeCoset { lattice, shift })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn shift(&self) -> &[BigInt] {
        &self.shift
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        self.lattice.check_dim(v)?;
        let d: Vec<BigInt> = v.iter().zip(&self.shift).map(|(a, b)| a - b).collect();
        self.lattice.contains(&d)
    }
}

fn sub_multiple(w: &mut [BigInt], row: &[BigInt], q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (x, r) in w.iter_mut().zip(row) {
        *x -= q * r;
    }
}

/// Shorthand for building integer vectors in tests and examples.
pub fn ivec(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(rows: &[&[i64]]) -> Lattice {
        let n = rows[0].len();
        hnf(n, &rows.iter().map(|r| ivec(r)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn first_exponent_lattice() {
        let l1 = lat(&[&[1, 0], &[1, 2]]);
        assert_eq!(l1.rank(), 2);
        assert_eq!(l1.index(), LatticeIndex::Finite(2u32.into()));
        assert_eq!(l1.basis(), &[ivec(&[1, 0]), ivec(&[0, 2])]);
        assert!(l1.contains(&ivec(&[0, 0])).unwrap());
        assert!(l1.contains(&ivec(&[1, 2])).unwrap());
        assert!(!l1.contains(&ivec(&[0, 1])).unwrap());
    }

    #[test]
    fn zero_lattice() {
        let z = lat(&[&[0, 0]]);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.index(), LatticeIndex::Infinite);
        assert!(z.contains(&ivec(&[0, 0])).unwrap());
        assert!(!z.contains(&ivec(&[1, 0])).unwrap());
    }

    #[test]
    fn even_sum_lattice_matches_parity() {
        let l = lat(&[&[2, 0], &[0, 2], &[1, 1]]);
        assert_eq!(l.index(), LatticeIndex::Finite(2u32.into()));
        for x in -4..=4 {
            for y in -4..=4 {
                assert_eq!(l.contains(&ivec(&[x, y])).unwrap(), (x + y) % 2 == 0, "({x},{y})");
            }
        }
    }

    #[test]
    fn dimension_errors() {
        assert!(matches!(
            hnf(2, &[ivec(&[1, 0, 0])]),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        ));
        let l = Lattice::full(2);
        assert!(l.contains(&ivec(&[1])).is_err());
    }

    #[test]
    fn coset_shift_canonical() {
        let l = lat(&[&[2, 0], &[0, 3]]);
        let a = LatticeCoset::new(l.clone(), &ivec(&[5, -1])).unwrap();
        let b = LatticeCoset::new(l, &ivec(&[1, 2])).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.shift(), &ivec(&[1, 2])[..]);
        assert!(a.contains(&ivec(&[-1, 5])).unwrap());
    }

    #[test]
    fn low_rank_coset() {
        let line = lat(&[&[1, 1]]);
        let c = LatticeCoset::new(line, &ivec(&[3, 0])).unwrap();
        assert_eq!(c.shift(), &ivec(&[0, -3])[..]);
        assert!(c.contains(&ivec(&[5, 2])).unwrap());
        assert!(!c.contains(&ivec(&[5, 3])).unwrap());
    }
}
