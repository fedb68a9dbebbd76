use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::groups::{FiniteAbelianGroup, GroupElement, Subgroup};

/// Maximal subgroups: for each prime `p`, the kernels of the nonzero
/// functionals on `G/pG ≅ (Z/p)^r`, read off the invariant-factor
/// coordinates divisible by `p`. Functionals are taken up to scalars, so
/// each subgroup appears once.
pub fn maximal_subgroups(group: &FiniteAbelianGroup, bound: u64) -> Result<Vec<Subgroup>> {
    let n = group.enumerable_order(bound)?;
    let mut out = Vec::new();
    for p in group.prime_divisors() {
        let coords: Vec<usize> = group
            .invariant_factors()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d % p == 0)
            .map(|(i, _)| i)
            .collect();
        for functional in projective_points(p, coords.len()) {
            let mut members = FixedBitSet::with_capacity(n);
            for (idx, x) in group.elements(bound)?.enumerate() {
                let value: u64 = coords
                    .iter()
                    .zip(&functional)
                    .map(|(&i, &a)| a * (x.coords()[i] % p))
                    .sum();
                if value.is_multiple_of(p) {
                    members.insert(idx);
                }
            }
            out.push(Subgroup::from_members(group, members));
        }
    }
    Ok(out)
}

/// Nonzero vectors of `(Z/p)^r` whose first nonzero entry is 1.
fn projective_points(p: u64, r: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for lead in 0..r {
        let free = r - lead - 1;
        let count = p.pow(free as u32);
        for mut k in 0..count {
            let mut v = vec![0; r];
            v[lead] = 1;
            for x in v[lead + 1..].iter_mut().rev() {
                *x = k % p;
                k /= p;
            }
            out.push(v);
        }
    }
    out
}

/// Smallest family of proper subgroups whose union is `G`, or `None` when
/// `G` is cyclic (a generator lies in no proper subgroup).
///
/// Any cover by proper subgroups refines to one by maximal subgroups of the
/// same size, so only maximal subgroups are searched. A minimal cover is
/// automatically irredundant.
pub fn minimal_subgroup_cover(group: &FiniteAbelianGroup, bound: u64) -> Result<Option<Vec<Subgroup>>> {
    let n = group.enumerable_order(bound)?;
    let maximal = maximal_subgroups(group, bound)?;
    let masks: Vec<FixedBitSet> = maximal.iter().map(|h| h.members().clone()).collect();
    Ok(smallest_cover(n, &masks).map(|chosen| chosen.into_iter().map(|i| maximal[i].clone()).collect()))
}

/// Iterative deepening over cover size. Each level branches on the parts
/// containing the least uncovered element, which keeps the search complete.
fn smallest_cover(n: usize, parts: &[FixedBitSet]) -> Option<Vec<usize>> {
    let mut union = FixedBitSet::with_capacity(n);
    for p in parts {
        union.union_with(p);
    }
    if n == 0 || union.count_ones(..) < n {
        return None;
    }
    let largest = parts.iter().map(|p| p.count_ones(..)).max().unwrap_or(0);
    for k in 1..=parts.len() {
        let mut chosen = Vec::with_capacity(k);
        let covered = FixedBitSet::with_capacity(n);
        if extend_cover(n, parts, largest, k, &covered, &mut chosen) {
            chosen.sort_unstable();
            return Some(chosen);
        }
    }
    None
}

fn extend_cover(
    n: usize,
    parts: &[FixedBitSet],
    largest: usize,
    budget: usize,
    covered: &FixedBitSet,
    chosen: &mut Vec<usize>,
) -> bool {
    let done = covered.count_ones(..);
    if done == n {
        return true;
    }
    if budget == 0 || done + budget * largest < n {
        return false;
    }
    let target = covered.zeroes().next().expect("not yet covered");
    for (i, p) in parts.iter().enumerate() {
        if !p.contains(target) || chosen.contains(&i) {
            continue;
        }
        let mut next = covered.clone();
        next.union_with(p);
        chosen.push(i);
        if extend_cover(n, parts, largest, budget - 1, &next, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// The cover from a repeated `p`-summand: for the smallest prime `p` with
/// `dim G/pG ≥ 2`, the map `x ↦ (xᵢ mod p, xⱼ mod p)` onto `(Z/p)²` is
/// surjective, and the preimages of its `p + 1` lines form a proper union.
pub fn construct_subgroup_cover(group: &FiniteAbelianGroup, bound: u64) -> Result<Option<Vec<Subgroup>>> {
    let n = group.enumerable_order(bound)?;
    let Some(p) = group
        .prime_divisors()
        .into_iter()
        .find(|&p| group.quotient_rank(p).map(|r| r >= 2).unwrap_or(false))
    else {
        return Ok(None);
    };
    let coords: Vec<usize> = group
        .invariant_factors()
        .iter()
        .enumerate()
        .filter(|(_, &d)| d % p == 0)
        .map(|(i, _)| i)
        .collect();
    let (i, j) = (coords[coords.len() - 2], coords[coords.len() - 1]);
    let lines = projective_points(p, 2);
    let mut out = Vec::with_capacity(lines.len());
    for line in lines {
        let mut members = FixedBitSet::with_capacity(n);
        for (idx, x) in group.elements(bound)?.enumerate() {
            let c = x.coords();
            if (line[0] * (c[i] % p) + line[1] * (c[j] % p)) % p == 0 {
                members.insert(idx);
            }
        }
        out.push(Subgroup::from_members(group, members));
    }
    Ok(Some(out))
}

/// Closure of `elements` under addition alone.
///
/// In a commutative semigroup the closure of `T ∪ {g}` for closed `T` is
/// `T ∪ M ∪ (T + M)` with `M` the positive multiples of `g`.
pub fn semigroup_closure(
    group: &FiniteAbelianGroup,
    elements: &[GroupElement],
    bound: u64,
) -> Result<FixedBitSet> {
    let n = group.enumerable_order(bound)?;
    let mut closed = FixedBitSet::with_capacity(n);
    for g in elements {
        if !group.contains(g) {
            return Err(Error::InvalidInput(format!("{g} is not an element of {group}")));
        }
        closed = adjoin(group, &closed, g);
    }
    Ok(closed)
}

fn adjoin(group: &FiniteAbelianGroup, closed: &FixedBitSet, g: &GroupElement) -> FixedBitSet {
    let mut multiples = Vec::new();
    let mut seen = FixedBitSet::with_capacity(closed.len());
    let mut m = g.clone();
    while !seen.contains(group.index_of(&m)) {
        seen.insert(group.index_of(&m));
        multiples.push(m.clone());
        m = group.add(&m, g);
    }
    let mut out = closed.clone();
    out.union_with(&seen);
    for t in closed.ones().map(|i| group.element_at(i)) {
        for m in &multiples {
            out.insert(group.index_of(&group.add(&t, m)));
        }
    }
    out
}

/// All nonempty subsemigroups, each checked to be a subgroup (contains zero
/// and is closed under negation) before it is returned as one.
pub fn subsemigroups(group: &FiniteAbelianGroup, bound: u64) -> Result<Vec<Subgroup>> {
    let n = group.enumerable_order(bound)?;
    let empty = FixedBitSet::with_capacity(n);
    let elems: Vec<GroupElement> = group.elements(bound)?.collect();

    let mut all: HashSet<FixedBitSet> = HashSet::new();
    let mut frontier = Vec::new();
    for g in &elems {
        let s = adjoin(group, &empty, g);
        if all.insert(s.clone()) {
            frontier.push(s);
        }
    }
    while let Some(s) = frontier.pop() {
        for (idx, g) in elems.iter().enumerate() {
            if s.contains(idx) {
                continue;
            }
            let t = adjoin(group, &s, g);
            if all.insert(t.clone()) {
                frontier.push(t);
            }
        }
    }

    let mut sets: Vec<FixedBitSet> = all.into_iter().collect();
    sets.sort_by(|a, b| {
        a.count_ones(..)
            .cmp(&b.count_ones(..))
            .then_with(|| a.ones().cmp(b.ones()))
    });
    sets.into_iter()
        .map(|s| {
            let is_group = s.contains(0)
                && s.ones()
                    .all(|i| s.contains(group.index_of(&group.neg(&group.element_at(i)))));
            if is_group {
                Ok(Subgroup::from_members(group, s))
            } else {
                let members: Vec<String> = s.ones().map(|i| group.element_at(i).to_string()).collect();
                Err(Error::NotASubgroup(format!("{{{}}}", members.join(", "))))
            }
        })
        .collect()
}

/// Smallest proper union of `G`, viewed multiplicatively, by subsemigroups.
///
/// The parts are drawn from the full subsemigroup enumeration rather than
/// from the subgroup machinery, so agreement with
/// [`minimal_subgroup_cover`] is an observed fact, not an assumption.
pub fn minimal_subsemigroup_cover(group: &FiniteAbelianGroup, bound: u64) -> Result<Option<Vec<Subgroup>>> {
    let n = group.enumerable_order(bound)?;
    let proper: Vec<Subgroup> = subsemigroups(group, bound)?
        .into_iter()
        .filter(|s| s.order() < n)
        .collect();
    let maximal: Vec<Subgroup> = proper
        .iter()
        .filter(|s| {
            !proper
                .iter()
                .any(|t| t.order() > s.order() && s.is_subgroup_of(t))
        })
        .cloned()
        .collect();
    let masks: Vec<FixedBitSet> = maximal.iter().map(|h| h.members().clone()).collect();
    Ok(smallest_cover(n, &masks).map(|chosen| chosen.into_iter().map(|i| maximal[i].clone()).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::{verify_proper_union, CoverMode, CoverPart, CoverProblem};
    use crate::groups::{subgroups, DEFAULT_BOUND};

    fn group(factors: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(factors.to_vec()).unwrap()
    }

    fn assert_proper(g: &FiniteAbelianGroup, parts: &[Subgroup]) {
        let problem = CoverProblem::new(
            g.clone(),
            CoverMode::Subgroups,
            parts.iter().cloned().map(CoverPart::Subgroup).collect(),
        )
        .unwrap();
        let report = verify_proper_union(&problem, DEFAULT_BOUND).unwrap();
        assert!(report.covered && report.proper, "{g}: {parts:?}");
    }

    #[test]
    fn maximal_subgroups_match_prime_index_subgroups() {
        for factors in [&[2, 2][..], &[2, 4], &[6], &[3, 3], &[2, 6], &[2, 2, 2]] {
            let g = group(factors);
            let mut fast: Vec<_> = maximal_subgroups(&g, DEFAULT_BOUND).unwrap();
            let mut slow: Vec<_> = subgroups(&g, DEFAULT_BOUND)
                .unwrap()
                .into_iter()
                .filter(|h| crate::arith::is_prime(h.index() as u64))
                .collect();
            let key = |h: &Subgroup| h.members().ones().collect::<Vec<_>>();
            fast.sort_by_key(key);
            slow.sort_by_key(key);
            assert_eq!(fast, slow, "{g}");
        }
    }

    #[test]
    fn cyclic_groups_have_no_cover() {
        for n in [1u64, 2, 6, 12, 30, 360] {
            let g = FiniteAbelianGroup::cyclic(n).unwrap();
            assert_eq!(minimal_subgroup_cover(&g, DEFAULT_BOUND).unwrap(), None, "C_{n}");
        }
    }

    #[test]
    fn covering_numbers() {
        let k = |f: &[u64]| minimal_subgroup_cover(&group(f), DEFAULT_BOUND).unwrap().unwrap();
        assert_eq!(k(&[2, 2]).len(), 3);
        assert_eq!(k(&[3, 3]).len(), 4);
        assert_eq!(k(&[2, 2, 2]).len(), 3);
        assert_eq!(k(&[5, 5]).len(), 6);
        let cover = k(&[6, 6]);
        assert_eq!(cover.len(), 3);
        assert_proper(&group(&[6, 6]), &cover);
    }

    #[test]
    fn constructed_covers() {
        let g = group(&[2, 2]);
        let cover = construct_subgroup_cover(&g, DEFAULT_BOUND).unwrap().unwrap();
        assert_eq!(cover.len(), 3);
        assert!(cover.iter().all(|h| h.order() == 2));
        assert_proper(&g, &cover);

        let g = group(&[2, 4]);
        let cover = construct_subgroup_cover(&g, DEFAULT_BOUND).unwrap().unwrap();
        assert_eq!(cover.len(), 3);
        assert!(cover.iter().all(|h| h.index() == 2));
        assert_proper(&g, &cover);

        assert_eq!(
            construct_subgroup_cover(&group(&[15]), DEFAULT_BOUND).unwrap(),
            None
        );
        let g = group(&[3, 6]);
        let cover = construct_subgroup_cover(&g, DEFAULT_BOUND).unwrap().unwrap();
        assert_eq!(cover.len(), 4);
        assert_proper(&g, &cover);
    }

    #[test]
    fn semigroup_examples() {
        let c6 = FiniteAbelianGroup::cyclic(6).unwrap();
        assert_eq!(minimal_subsemigroup_cover(&c6, DEFAULT_BOUND).unwrap(), None);
        assert_eq!(
            minimal_subsemigroup_cover(&group(&[2, 2]), DEFAULT_BOUND)
                .unwrap()
                .map(|c| c.len()),
            Some(3)
        );
        assert_eq!(
            minimal_subsemigroup_cover(&FiniteAbelianGroup::trivial(), DEFAULT_BOUND).unwrap(),
            None
        );
    }

    #[test]
    fn subsemigroups_are_the_subgroups() {
        for factors in [&[4][..], &[2, 2], &[2, 4], &[3, 3], &[12], &[2, 6]] {
            let g = group(factors);
            assert_eq!(
                subsemigroups(&g, DEFAULT_BOUND).unwrap(),
                subgroups(&g, DEFAULT_BOUND).unwrap()
            );
        }
    }

    #[test]
    fn bound_guard() {
        let g = group(&[64, 128]);
        assert!(matches!(
            minimal_subgroup_cover(&g, DEFAULT_BOUND),
            Err(Error::BoundExceeded { .. })
        ));
        assert!(matches!(
            construct_subgroup_cover(&g, DEFAULT_BOUND),
            Err(Error::BoundExceeded { .. })
        ));
    }
}
