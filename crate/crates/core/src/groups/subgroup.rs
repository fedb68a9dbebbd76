use std::collections::HashSet;
use std::fmt;

use fixedbitset::FixedBitSet;

use super::{FiniteAbelianGroup, GroupElement};
use crate::arith;
use crate::error::{Error, Result};

/// A subgroup of an enumerable finite abelian group.
///
/// The member set is authoritative; `generators` is a minimum-size
/// generating list derived from it, so equal member sets always carry
/// equal generator lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    group: FiniteAbelianGroup,
    members: FixedBitSet,
    generators: Vec<GroupElement>,
}

impl Subgroup {
    pub fn generated_by(group: &FiniteAbelianGroup, generators: &[GroupElement], bound: u64) -> Result<Self> {
        let n = group.enumerable_order(bound)?;
        let mut members = singleton(n, 0);
        for g in generators {
            if !group.contains(g) {
                return Err(Error::InvalidInput(format!("{g} is not an element of {group}")));
            }
            members = join_element(group, &members, g);
        }
        Ok(Self::from_members(group, members))
    }

    pub fn trivial(group: &FiniteAbelianGroup, bound: u64) -> Result<Self> {
        Self::generated_by(group, &[], bound)
    }

    pub fn whole(group: &FiniteAbelianGroup, bound: u64) -> Result<Self> {
        let n = group.enumerable_order(bound)?;
        let mut members = FixedBitSet::with_capacity(n);
        members.insert_range(..);
        Ok(Self::from_members(group, members))
    }

    /// Subgroup with the given member set. Fails unless the set contains
    /// zero and is closed under addition (closure under negation follows in
    /// a finite group).
    pub fn from_elements(group: &FiniteAbelianGroup, elements: &[GroupElement], bound: u64) -> Result<Self> {
        let n = group.enumerable_order(bound)?;
        let mut members = FixedBitSet::with_capacity(n);
        for x in elements {
            if !group.contains(x) {
                return Err(Error::InvalidInput(format!("{x} is not an element of {group}")));
            }
            members.insert(group.index_of(x));
        }
        if !is_closed(group, &members) || !members.contains(0) {
            return Err(Error::InvalidInput("element set is not a subgroup".into()));
        }
        Ok(Self::from_members(group, members))
    }

    /// Trusted constructor: `members` must already be a subgroup.
    pub(crate) fn from_members(group: &FiniteAbelianGroup, members: FixedBitSet) -> Self {
        let generators = minimal_generators(group, &members);
        Subgroup {
            group: group.clone(),
            members,
            generators,
        }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn index(&self) -> usize {
        self.members.len() / self.order()
    }

    pub fn is_proper(&self) -> bool {
        self.order() < self.members.len()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.group.contains(x) && self.members.contains(self.group.index_of(x))
    }

    /// Members in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        self.members.ones().map(|i| self.group.element_at(i))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.group == other.group && self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup> {
        if self.group != other.group {
            return Err(Error::ParentMismatch);
        }
        let mut members = self.members.clone();
        members.intersect_with(&other.members);
        Ok(Self::from_members(&self.group, members))
    }

    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        if self.group != other.group {
            return Err(Error::ParentMismatch);
        }
        let mut members = self.members.clone();
        for g in &other.generators {
            members = join_element(&self.group, &members, g);
        }
        Ok(Self::from_members(&self.group, members))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "⟨{}⟩ (order {})", gens.join(", "), self.order())
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coset {
    subgroup: Subgroup,
    representative: GroupElement,
}

impl Coset {
    /// The coset `x + H`, stored with its lexicographically least member.
    pub fn new(subgroup: Subgroup, x: &GroupElement) -> Result<Self> {
        let group = &subgroup.group;
        if !group.contains(x) {
            return Err(Error::InvalidInput(format!("{x} is not an element of {group}")));
        }
        let least = subgroup
            .members
            .ones()
            .map(|h| group.index_of(&group.add(x, &group.element_at(h))))
            .min()
            .expect("subgroups contain zero");
        let representative = group.element_at(least);
        Ok(Coset {
            subgroup,
            representative,
        })
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn representative(&self) -> &GroupElement {
        &self.representative
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.subgroup.group
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        let g = self.group();
        g.contains(x) && self.subgroup.contains(&g.sub(x, &self.representative))
    }

    pub fn members(&self) -> FixedBitSet {
        let g = self.group();
        let mut out = FixedBitSet::with_capacity(self.subgroup.members.len());
        for h in self.subgroup.members.ones() {
            out.insert(g.index_of(&g.add(&self.representative, &g.element_at(h))));
        }
        out
    }

    pub fn len(&self) -> usize {
        self.subgroup.order()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Debug for Coset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}", self.representative, self.subgroup)
    }
}

/// `(r₁ + H₁) ∩ (r₂ + H₂)`: either empty or a coset of `H₁ ∩ H₂` through
/// any common point.
///
/// A common point exists iff `r₂ − r₁ ∈ H₁ + H₂`; it is found by running
/// over `h₁ ∈ H₁` until `r₁ + h₁ − r₂ ∈ H₂`.
pub fn coset_intersect(a: &Coset, b: &Coset) -> Result<Option<Coset>> {
    if a.group() != b.group() {
        return Err(Error::ParentMismatch);
    }
    let g = a.group();
    let common = a.subgroup.intersection(&b.subgroup)?;
    let shift = g.sub(&a.representative, &b.representative);
    for h in a.subgroup.elements() {
        if b.subgroup.contains(&g.add(&shift, &h)) {
            let point = g.add(&a.representative, &h);
            return Coset::new(common, &point).map(Some);
        }
    }
    Ok(None)
}

/// All subgroups of `group`, without duplicates, ordered by size and then
/// lexicographically by member list.
pub fn subgroups(group: &FiniteAbelianGroup, bound: u64) -> Result<Vec<Subgroup>> {
    let n = group.enumerable_order(bound)?;
    let trivial = singleton(n, 0);

    let mut cyclic: Vec<(FixedBitSet, GroupElement)> = Vec::new();
    let mut seen = HashSet::new();
    for x in group.elements(bound)? {
        let c = join_element(group, &trivial, &x);
        if seen.insert(c.clone()) {
            cyclic.push((c, x));
        }
    }

    // Every subgroup is reached by adjoining its cyclic subgroups one at a time.
    let mut all: HashSet<FixedBitSet> = HashSet::from([trivial.clone()]);
    let mut frontier = vec![trivial];
    while let Some(h) = frontier.pop() {
        for (c, g) in &cyclic {
            if c.is_subset(&h) {
                continue;
            }
            let j = join_element(group, &h, g);
            if all.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }

    let mut sets: Vec<FixedBitSet> = all.into_iter().collect();
    sets.sort_by(|a, b| {
        a.count_ones(..)
            .cmp(&b.count_ones(..))
            .then_with(|| a.ones().cmp(b.ones()))
    });
    Ok(sets
        .into_iter()
        .map(|m| Subgroup::from_members(group, m))
        .collect())
}

pub(crate) fn singleton(n: usize, index: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert(index);
    s
}

/// `H + ⟨g⟩` for a subgroup `H` given by its member set.
pub(crate) fn join_element(
    group: &FiniteAbelianGroup,
    members: &FixedBitSet,
    g: &GroupElement,
) -> FixedBitSet {
    let base: Vec<GroupElement> = members.ones().map(|i| group.element_at(i)).collect();
    let mut out = members.clone();
    let mut step = g.clone();
    while !members.contains(group.index_of(&step)) {
        for h in &base {
            out.insert(group.index_of(&group.add(&step, h)));
        }
        step = group.add(&step, g);
    }
    out
}

pub(crate) fn is_closed(group: &FiniteAbelianGroup, members: &FixedBitSet) -> bool {
    let elems: Vec<GroupElement> = members.ones().map(|i| group.element_at(i)).collect();
    elems.iter().all(|x| {
        elems
            .iter()
            .all(|y| members.contains(group.index_of(&group.add(x, y))))
    })
}

/// A generating list of minimum length.
///
/// A finite abelian `H` is generated by `x₁ … x_d` iff the images span
/// `H/pH` for every prime `p`, so the minimum is `d = maxₚ dim H/pH`. For each
/// prime a basis of `H/pH` is extracted greedily; the `i`-th generator is
/// the sum over primes of the `p`-primary parts of the `i`-th basis vectors.
fn minimal_generators(group: &FiniteAbelianGroup, members: &FixedBitSet) -> Vec<GroupElement> {
    let elems: Vec<GroupElement> = members.ones().map(|i| group.element_at(i)).collect();
    let order = elems.len() as u64;
    let mut per_prime: Vec<Vec<GroupElement>> = Vec::new();
    for (p, _) in arith::factorize(order) {
        let mut span = FixedBitSet::with_capacity(members.len());
        for x in &elems {
            span.insert(group.index_of(&group.scale(p, x)));
        }
        let mut basis = Vec::new();
        for x in &elems {
            if span.count_ones(..) as u64 == order {
                break;
            }
            if !span.contains(group.index_of(x)) {
                span = join_element(group, &span, x);
                basis.push(primary_part(group, x, p));
            }
        }
        per_prime.push(basis);
    }
    let d = per_prime.iter().map(Vec::len).max().unwrap_or(0);
    (0..d)
        .map(|i| {
            per_prime
                .iter()
                .filter_map(|b| b.get(i))
                .fold(group.zero(), |acc, x| group.add(&acc, x))
        })
        .collect()
}

fn primary_part(group: &FiniteAbelianGroup, x: &GroupElement, p: u64) -> GroupElement {
    let mut prime_power = 1u64;
    let mut rest = group.element_order(x);
    while rest.is_multiple_of(p) {
        rest /= p;
        prime_power *= p;
    }
    if prime_power == 1 {
        return group.zero();
    }
    // c ≡ 1 (mod p^a), c ≡ 0 (mod rest)
    let inv = arith::mod_inverse(rest % prime_power, prime_power).expect("coprime by construction");
    let c = (rest as u128 * inv as u128 % (rest as u128 * prime_power as u128)) as u64;
    group.scale(c, x)
}
