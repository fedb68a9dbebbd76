//! Proper-union covers of finite abelian groups.
//!
//! A family `S₁, …, S_n` is a proper union of `S` when the parts cover `S`
//! and no part can be dropped. Reports carry a witness for every claim:
//! an uncovered element when the family falls short, and for each part an
//! element that only that part contains.

mod search;

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::groups::{Coset, FiniteAbelianGroup, GroupElement, Subgroup};

pub use search::{
    construct_subgroup_cover, maximal_subgroups, minimal_subgroup_cover, minimal_subsemigroup_cover,
    semigroup_closure, subsemigroups,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport<E> {
    pub covered: bool,
    pub proper: bool,
    /// Part index → an element lying in that part and in no other.
    pub missing_after_removal: BTreeMap<usize, E>,
    pub uncovered_witness: Option<E>,
}

impl<E> CoverReport<E> {
    /// Builds a report from `(element, parts containing it)` pairs. The first
    /// qualifying element in iteration order becomes each witness.
    pub fn from_memberships(
        part_count: usize,
        memberships: impl IntoIterator<Item = (E, Vec<usize>)>,
    ) -> Self {
        let mut missing_after_removal = BTreeMap::new();
        let mut uncovered_witness = None;
        for (x, parts) in memberships {
            match parts[..] {
                [] if uncovered_witness.is_none() => uncovered_witness = Some(x),
                [only] => {
                    missing_after_removal.entry(only).or_insert(x);
                }
                _ => {}
            }
            if uncovered_witness.is_some() && missing_after_removal.len() == part_count {
                break;
            }
        }
        let covered = uncovered_witness.is_none();
        let proper = covered && missing_after_removal.len() == part_count;
        CoverReport {
            covered,
            proper,
            missing_after_removal,
            uncovered_witness,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoverMode {
    Subgroups,
    Cosets,
    Subsemigroups,
}

impl CoverMode {
    pub fn name(self) -> &'static str {
        match self {
            CoverMode::Subgroups => "subgroups",
            CoverMode::Cosets => "cosets",
            CoverMode::Subsemigroups => "subsemigroups",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverPart {
    Subgroup(Subgroup),
    Coset(Coset),
}

impl CoverPart {
    fn group(&self) -> &FiniteAbelianGroup {
        match self {
            CoverPart::Subgroup(h) => h.group(),
            CoverPart::Coset(c) => c.group(),
        }
    }

    fn members(&self) -> FixedBitSet {
        match self {
            CoverPart::Subgroup(h) => h.members().clone(),
            CoverPart::Coset(c) => c.members(),
        }
    }
}

/// A candidate cover of a finite abelian group. Subsemigroup parts are
/// carried as subgroups: in a finite group the two notions coincide, and
/// [`semigroup_closure`] checks this for each part it builds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverProblem {
    group: FiniteAbelianGroup,
    mode: CoverMode,
    parts: Vec<CoverPart>,
}

impl CoverProblem {
    pub fn new(group: FiniteAbelianGroup, mode: CoverMode, parts: Vec<CoverPart>) -> Result<Self> {
        for (i, part) in parts.iter().enumerate() {
            if part.group() != &group {
                return Err(Error::ParentMismatch);
            }
            if mode != CoverMode::Cosets && matches!(part, CoverPart::Coset(_)) {
                return Err(Error::InvalidInput(format!(
                    "part {i} is a coset but the mode is {}",
                    mode.name()
                )));
            }
        }
        Ok(CoverProblem { group, mode, parts })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn mode(&self) -> CoverMode {
        self.mode
    }

    pub fn parts(&self) -> &[CoverPart] {
        &self.parts
    }
}

/// Decides whether the parts form a proper union of the group.
///
/// At least two parts are required, and none may be the whole group.
pub fn verify_proper_union(problem: &CoverProblem, bound: u64) -> Result<CoverReport<GroupElement>> {
    let g = &problem.group;
    let n = g.enumerable_order(bound)?;
    if problem.parts.len() < 2 {
        return Err(Error::TooFewParts(problem.parts.len()));
    }
    let masks: Vec<FixedBitSet> = problem.parts.iter().map(CoverPart::members).collect();
    if let Some(i) = masks.iter().position(|m| m.count_ones(..) == n) {
        return Err(Error::ImproperPart { index: i });
    }
    Ok(CoverReport::from_memberships(
        masks.len(),
        (0..n).map(|x| {
            let parts = masks
                .iter()
                .enumerate()
                .filter(|(_, m)| m.contains(x))
                .map(|(i, _)| i)
                .collect();
            (g.element_at(x), parts)
        }),
    ))
}
