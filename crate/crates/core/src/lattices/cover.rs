use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::{LatticeCoset, LatticeIndex};
use crate::covers::CoverReport;
use crate::error::{Error, Result};

/// Largest residue box `Nⁿ` (or search box `(2R+1)ⁿ`) that is enumerated.
pub const RESIDUE_LIMIT: u64 = 1 << 22;

/// A finite family of lattice cosets in a common ambient `Zⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeCover {
    ambient: usize,
    cosets: Vec<LatticeCoset>,
}

impl LatticeCover {
    pub fn new(ambient: usize, cosets: Vec<LatticeCoset>) -> Result<Self> {
        if let Some(c) = cosets.iter().find(|c| c.lattice().ambient_dim() != ambient) {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                found: c.lattice().ambient_dim(),
            });
        }
        Ok(LatticeCover { ambient, cosets })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn cosets(&self) -> &[LatticeCoset] {
        &self.cosets
    }

    /// The same family with part `index` dropped.
    pub fn without(&self, index: usize) -> LatticeCover {
        let mut cosets = self.cosets.clone();
        cosets.remove(index);
        LatticeCover {
            ambient: self.ambient,
            cosets,
        }
    }

    /// Indices of the cosets containing `v`. Panics if `v` has the wrong length.
    pub fn parts_containing(&self, v: &[BigInt]) -> Vec<usize> {
        self.cosets
            .iter()
            .enumerate()
            .filter(|(_, c)| c.contains(v).expect("dimension checked at construction"))
            .map(|(i, _)| i)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteIndexCertificate {
    pub member_index: usize,
    pub index_value: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NeumannOutcome {
    Certificate(FiniteIndexCertificate),
    Refuted(Vec<BigInt>),
    Inconclusive,
}

/// Exact cover check for a family of finite-index cosets.
///
/// An index-`m` sublattice contains `mZⁿ`, so with `N` the lcm of the
/// indices every membership question depends only on the residue class
/// mod `N`. The residues `[0, N)ⁿ` are enumerated in lexicographic order and
/// witnesses are reported as those residue vectors.
pub fn verify_lattice_cover_exact(cover: &LatticeCover) -> Result<CoverReport<Vec<BigInt>>> {
    let mut modulus = BigUint::one();
    for (i, c) in cover.cosets.iter().enumerate() {
        match c.lattice().index() {
            LatticeIndex::Finite(m) => modulus = modulus.lcm(&m),
            LatticeIndex::Infinite => return Err(Error::InfiniteIndexMember { index: i }),
        }
    }
    let n = cover.ambient;
    let total = modulus
        .to_u64()
        .and_then(|m| m.checked_pow(n as u32))
        .filter(|&t| t <= RESIDUE_LIMIT)
        .ok_or_else(|| Error::BoundExceeded {
            order: format!("{modulus}^{n}"),
            bound: RESIDUE_LIMIT,
        })?;
    let m = modulus.to_u64().expect("checked above");

    let residues = (0..total).map(|mut k| {
        let mut v = vec![BigInt::default(); n];
        for x in v.iter_mut().rev() {
            *x = BigInt::from(k % m);
            k /= m;
        }
        v
    });
    Ok(CoverReport::from_memberships(
        cover.cosets.len(),
        residues.map(|v| {
            let parts = cover.parts_containing(&v);
            (v, parts)
        }),
    ))
}

/// A point of the box `[-R, R]ⁿ` lying in no coset, preferring small
/// `ℓ¹` norm and then positive directions; `None` when the box is covered.
pub fn refute_lattice_cover_search(cover: &LatticeCover, box_radius: u64) -> Result<Option<Vec<BigInt>>> {
    let n = cover.ambient;
    let side = 2 * box_radius + 1;
    let total = side
        .checked_pow(n as u32)
        .filter(|&t| t <= RESIDUE_LIMIT)
        .ok_or_else(|| Error::BoundExceeded {
            order: format!("{side}^{n}"),
            bound: RESIDUE_LIMIT,
        })?;
    let r = box_radius as i64;
    let best = (0..total)
        .map(|mut k| {
            let mut v = vec![0i64; n];
            for x in v.iter_mut().rev() {
                *x = (k % side) as i64 - r;
                k /= side;
            }
            v
        })
        .map(|v| v.into_iter().map(BigInt::from).collect::<Vec<_>>())
        .filter(|v| cover.parts_containing(v).is_empty())
        .min_by(|a, b| search_key(a).cmp(&search_key(b)));
    Ok(best)
}

fn search_key(v: &[BigInt]) -> (BigInt, std::cmp::Reverse<Vec<BigInt>>) {
    let norm = v.iter().map(|x| x.abs()).sum();
    (norm, std::cmp::Reverse(v.to_vec()))
}

/// Certificate that a member has finite index, or failing that a point the
/// family misses.
///
/// A finite family of cosets of infinite-index subgroups never covers the
/// group, so for such families a bounded search for an uncovered point is
/// attempted; `Inconclusive` means the box was too small.
pub fn neumann_certificate(cover: &LatticeCover, box_radius: u64) -> Result<NeumannOutcome> {
    for (i, c) in cover.cosets.iter().enumerate() {
        if let LatticeIndex::Finite(m) = c.lattice().index() {
            return Ok(NeumannOutcome::Certificate(FiniteIndexCertificate {
                member_index: i,
                index_value: m,
            }));
        }
    }
    Ok(match refute_lattice_cover_search(cover, box_radius)? {
        Some(w) => NeumannOutcome::Refuted(w),
        None => NeumannOutcome::Inconclusive,
    })
}
