//! Finite abelian groups `Z/d₁ ⊕ … ⊕ Z/d_r` in invariant-factor form, with
//! element arithmetic, subgroup enumeration and coset algebra.
//!
//! Elements of an enumerable group are addressed by a mixed-radix index in
//! which the first coordinate is most significant, so index order coincides
//! with lexicographic order on coordinate tuples. Subgroups and cosets are
//! stored as bitsets over these indices.

mod snf;
mod subgroup;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};

use crate::arith;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

pub use snf::{smith_normal_form, SmithForm};
pub use subgroup::{coset_intersect, subgroups, Coset, Subgroup};

/// Largest group order for which operations enumerate elements.
pub const DEFAULT_BOUND: u64 = 1 << 12;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<u64>,
    order: BigUint,
}

impl FiniteAbelianGroup {
    /// Group with the given invariant factors; each must be at least 2 and
    /// divide the next.
    pub fn new(invariant_factors: Vec<u64>) -> Result<Self> {
        if let Some(&d) = invariant_factors.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidInput(format!("invariant factor {d} is below 2")));
        }
        if let Some(w) = invariant_factors.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidInput(format!(
                "invariant factors must form a divisor chain, but {} does not divide {}",
                w[0], w[1]
            )));
        }
        let order = invariant_factors.iter().map(|&d| BigUint::from(d)).product();
        Ok(FiniteAbelianGroup {
            invariant_factors,
            order,
        })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            invariant_factors: Vec::new(),
            order: BigUint::one(),
        }
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        match n {
            0 => Err(Error::InvalidInput("cyclic group of order 0".into())),
            1 => Ok(Self::trivial()),
            _ => Self::new(vec![n]),
        }
    }

    /// Canonical form of `Z/n₁ ⊕ … ⊕ Z/n_k` for arbitrary positive `nᵢ`,
    /// obtained from the Smith normal form of the diagonal relation matrix.
    pub fn from_cyclic_factors(factors: &[u64]) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::InvalidInput(
                "cyclic factor 0 gives an infinite group".into(),
            ));
        }
        let snf = smith_normal_form(&IntMatrix::diagonal(factors));
        let invariant = snf
            .diagonal_entries()
            .into_iter()
            .filter(|d| !d.is_one())
            .map(|d| {
                d.to_u64()
                    .ok_or_else(|| Error::InvalidInput(format!("invariant factor {d} overflows")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(invariant)
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }

    /// Order as a machine integer, provided it is within `bound`.
    pub fn enumerable_order(&self, bound: u64) -> Result<usize> {
        match self.order.to_u64() {
            Some(n) if n <= bound => Ok(n as usize),
            _ => Err(Error::BoundExceeded {
                order: self.order.to_string(),
                bound,
            }),
        }
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.rank()],
        }
    }

    /// Reduces arbitrary integer coordinates into the group.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: coords.len(),
            });
        }
        let coords = coords
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&c, &d)| (c as i128).rem_euclid(d as i128) as u64)
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn element_big(&self, coords: &[BigInt]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: coords.len(),
            });
        }
        let coords = coords
            .iter()
            .zip(&self.invariant_factors)
            .map(|(c, &d)| {
                let d = BigInt::from(d);
                ((c % &d + &d) % &d)
                    .to_u64()
                    .expect("residue below a u64 modulus")
            })
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.coords.len() == self.rank() && x.coords.iter().zip(&self.invariant_factors).all(|(&c, &d)| c < d)
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let coords = x
            .coords
            .iter()
            .zip(&y.coords)
            .zip(&self.invariant_factors)
            .map(|((&a, &b), &d)| ((a as u128 + b as u128) % d as u128) as u64)
            .collect();
        GroupElement { coords }
    }

    pub fn neg(&self, x: &GroupElement) -> GroupElement {
        let coords = x
            .coords
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&a, &d)| if a == 0 { 0 } else { d - a })
            .collect();
        GroupElement { coords }
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.add(x, &self.neg(y))
    }

    pub fn scale(&self, k: u64, x: &GroupElement) -> GroupElement {
        let coords = x
            .coords
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&a, &d)| ((a as u128 * k as u128) % d as u128) as u64)
            .collect();
        GroupElement { coords }
    }

    /// Additive order of `x`: the lcm over coordinates of `dᵢ / gcd(dᵢ, xᵢ)`.
    pub fn element_order(&self, x: &GroupElement) -> u64 {
        x.coords
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&a, &d)| d / arith::gcd(d, a))
            .fold(1, |acc, o| {
                arith::lcm(acc, o).expect("order divides the group exponent")
            })
    }

    /// Mixed-radix index with the first coordinate most significant.
    pub fn index_of(&self, x: &GroupElement) -> usize {
        x.coords
            .iter()
            .zip(&self.invariant_factors)
            .fold(0usize, |acc, (&c, &d)| acc * d as usize + c as usize)
    }

    pub fn element_at(&self, mut index: usize) -> GroupElement {
        let mut coords = vec![0u64; self.rank()];
        for (c, &d) in coords.iter_mut().zip(&self.invariant_factors).rev() {
            *c = (index % d as usize) as u64;
            index /= d as usize;
        }
        GroupElement { coords }
    }

    /// All elements in lexicographic order. Fails above `bound`.
    pub fn elements(&self, bound: u64) -> Result<impl Iterator<Item = GroupElement> + '_> {
        let n = self.enumerable_order(bound)?;
        Ok((0..n).map(move |i| self.element_at(i)))
    }

    /// Dimension of `G/pG` over the field with `p` elements.
    pub fn quotient_rank(&self, p: u64) -> Result<usize> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(self.invariant_factors.iter().filter(|&&d| d % p == 0).count())
    }

    /// Primes dividing the group order, increasing.
    pub fn prime_divisors(&self) -> Vec<u64> {
        self.invariant_factors
            .last()
            .map(|&d| arith::factorize(d).into_iter().map(|(p, _)| p).collect())
            .unwrap_or_default()
    }
}

impl fmt::Debug for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "C_1");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("C_{d}")).collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Every abelian group of order `n`, one per invariant-factor chain.
pub fn abelian_groups_of_order(n: u64) -> Vec<FiniteAbelianGroup> {
    // Picks factors from the largest down; each must divide the previous one.
    fn chains(rest: u64, cap: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 1 {
            out.push(acc.iter().rev().copied().collect());
            return;
        }
        for d in 2..=rest.min(cap) {
            if rest.is_multiple_of(d) && cap.is_multiple_of(d) {
                acc.push(d);
                chains(rest / d, d, acc, out);
                acc.pop();
            }
        }
    }
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    chains(n, n, &mut Vec::new(), &mut out);
    let mut groups: Vec<_> = out
        .into_iter()
        .map(|c| FiniteAbelianGroup::new(c).expect("generated chains are divisor chains"))
        .collect();
    groups.sort();
    groups
}

impl PartialOrd for FiniteAbelianGroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FiniteAbelianGroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.invariant_factors.cmp(&other.invariant_factors))
    }
}
