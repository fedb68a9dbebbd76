//! Symbolic additive groups of the shape
//! `⊕_𝔐 Q ⊕ ⊕_finite C_{p^∞} ⊕ ⊕_𝔑 C_{q^k}` and the predicates deciding
//! whether a ring with such an additive group is a proper union of
//! subgroups or of cosets.
//!
//! Every predicate returns a [`Verdict`] naming the single clause that
//! decided it. Cardinals are compared only as zero, finite or infinite.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::arith;
use crate::error::{Error, Result};
use crate::groups::FiniteAbelianGroup;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CardinalTag {
    Finite(u64),
    CountablyInfinite,
    Symbolic(String),
}

impl CardinalTag {
    pub fn is_zero(&self) -> bool {
        matches!(self, CardinalTag::Finite(0))
    }

    pub fn finite(&self) -> Option<u64> {
        match self {
            CardinalTag::Finite(n) => Some(*n),
            _ => None,
        }
    }
}

impl fmt::Display for CardinalTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardinalTag::Finite(n) => write!(f, "finite:{n}"),
            CardinalTag::CountablyInfinite => write!(f, "countable"),
            CardinalTag::Symbolic(name) => write!(f, "symbolic:{name}"),
        }
    }
}

impl FromStr for CardinalTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(n) = s.strip_prefix("finite:") {
            return n
                .parse()
                .map(CardinalTag::Finite)
                .map_err(|_| Error::InvalidInput(format!("bad finite cardinal {s:?}")));
        }
        if s == "countable" {
            return Ok(CardinalTag::CountablyInfinite);
        }
        match s.strip_prefix("symbolic:") {
            Some(name) if !name.is_empty() => Ok(CardinalTag::Symbolic(name.to_string())),
            _ => Err(Error::InvalidInput(format!(
                "cardinal must be finite:N, countable or symbolic:NAME, got {s:?}"
            ))),
        }
    }
}

/// Exponent `k` of a cyclic summand `C_{q^k}`. `Unbounded` stands for a
/// family whose exponents grow without bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Exponent {
    Finite(u32),
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorsionSummand {
    pub q: u64,
    pub k: Exponent,
    pub multiplicity: CardinalTag,
}

impl TorsionSummand {
    pub fn new(q: u64, k: u32, multiplicity: CardinalTag) -> Self {
        TorsionSummand {
            q,
            k: Exponent::Finite(k),
            multiplicity,
        }
    }

    fn label(&self) -> String {
        match self.k {
            Exponent::Finite(k) => format!("C_{}", BigUint::from(self.q).pow(k)),
            Exponent::Unbounded => format!("C_{}^k (k unbounded)", self.q),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupDescriptor {
    pub rational_rank: CardinalTag,
    pub prufer: Vec<u64>,
    pub bounded_torsion: Vec<TorsionSummand>,
}

impl GroupDescriptor {
    /// Builds a descriptor, dropping summands of multiplicity zero and
    /// sorting the rest by `(q, k)`.
    pub fn new(
        rational_rank: CardinalTag,
        prufer: Vec<u64>,
        bounded_torsion: Vec<TorsionSummand>,
    ) -> Result<Self> {
        let mut prufer = prufer;
        prufer.sort_unstable();
        let mut bounded_torsion: Vec<_> = bounded_torsion
            .into_iter()
            .filter(|s| !s.multiplicity.is_zero())
            .collect();
        bounded_torsion.sort_by_key(|s| (s.q, s.k));
        let d = GroupDescriptor {
            rational_rank,
            prufer,
            bounded_torsion,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn trivial() -> Self {
        GroupDescriptor {
            rational_rank: CardinalTag::Finite(0),
            prufer: Vec::new(),
            bounded_torsion: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(p) = self.prufer.iter().find(|&&p| !arith::is_prime(p)) {
            return Err(Error::PreconditionFailed(format!(
                "quasicyclic prime {p} is not prime"
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for s in &self.bounded_torsion {
            if !arith::is_prime(s.q) {
                return Err(Error::PreconditionFailed(format!("{} is not prime", s.q)));
            }
            if s.k == Exponent::Finite(0) {
                return Err(Error::PreconditionFailed(format!("exponent 0 for prime {}", s.q)));
            }
            if s.multiplicity.is_zero() {
                return Err(Error::PreconditionFailed(format!(
                    "{} has multiplicity 0",
                    s.label()
                )));
            }
            if !seen.insert((s.q, s.k)) {
                return Err(Error::PreconditionFailed(format!(
                    "{} is listed twice",
                    s.label()
                )));
            }
        }
        Ok(())
    }

    /// The concrete finite group, when there are no rational or
    /// quasicyclic summands and every multiplicity and exponent is finite.
    pub fn to_finite_group(&self) -> Option<Result<FiniteAbelianGroup>> {
        if !self.rational_rank.is_zero() || !self.prufer.is_empty() {
            return None;
        }
        let mut factors = Vec::new();
        for s in &self.bounded_torsion {
            let (Exponent::Finite(k), Some(m)) = (s.k, s.multiplicity.finite()) else {
                return None;
            };
            let Some(qk) = s.q.checked_pow(k) else {
                return Some(Err(Error::InvalidInput(format!("{} overflows", s.label()))));
            };
            factors.extend(std::iter::repeat_n(qk, m as usize));
        }
        Some(FiniteAbelianGroup::from_cyclic_factors(&factors))
    }

    /// Number of cyclic summands per prime in the bounded part; `None`
    /// stands for infinitely many.
    fn summands_per_prime(&self) -> BTreeMap<u64, Option<u64>> {
        let mut out: BTreeMap<u64, Option<u64>> = BTreeMap::new();
        for s in &self.bounded_torsion {
            let count = match (s.k, &s.multiplicity) {
                (Exponent::Finite(_), CardinalTag::Finite(m)) => Some(*m),
                _ => None,
            };
            let slot = out.entry(s.q).or_insert(Some(0));
            *slot = match (*slot, count) {
                (Some(a), Some(b)) => a.checked_add(b),
                _ => None,
            };
        }
        out
    }

    /// First prime carrying at least two cyclic summands.
    fn repeated_prime(&self) -> Option<(u64, String)> {
        self.summands_per_prime()
            .into_iter()
            .find(|(_, count)| count.is_none_or(|c| c >= 2))
            .map(|(q, _)| {
                let labels: Vec<String> = self
                    .bounded_torsion
                    .iter()
                    .filter(|s| s.q == q)
                    .map(|s| format!("{} ×{}", s.label(), s.multiplicity))
                    .collect();
                (q, labels.join(", "))
            })
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.rational_rank.is_zero() {
            parts.push(format!("Q ×{}", self.rational_rank));
        }
        parts.extend(self.prufer.iter().map(|p| format!("C_{p}^∞")));
        parts.extend(
            self.bounded_torsion
                .iter()
                .map(|s| format!("{} ×{}", s.label(), s.multiplicity)),
        );
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub value: bool,
    /// Statement the verdict instantiates, e.g. `"Theorem 1"`.
    pub statement: &'static str,
    /// Stable identifier of the deciding clause.
    pub clause: &'static str,
    pub reason: String,
}

impl Verdict {
    fn new(value: bool, statement: &'static str, clause: &'static str, reason: String) -> Self {
        Verdict {
            value,
            statement,
            clause,
            reason,
        }
    }
}

/// Whether `d` can be the additive group of an Artinian ring: all bounded
/// summand orders must divide one fixed `m` (and `m_bound`, when given).
pub fn is_artinian_additive(d: &GroupDescriptor, m_bound: Option<u64>) -> Result<Verdict> {
    const S: &str = "Lemma 2";
    d.validate()?;
    if let Some(s) = d.bounded_torsion.iter().find(|s| s.k == Exponent::Unbounded) {
        return Ok(Verdict::new(
            false,
            S,
            "unbounded-exponents",
            format!("{} has no common bound m", s.label()),
        ));
    }
    let orders: Vec<(String, BigUint)> = d
        .bounded_torsion
        .iter()
        .map(|s| match s.k {
            Exponent::Finite(k) => (s.label(), BigUint::from(s.q).pow(k)),
            Exponent::Unbounded => unreachable!("rejected above"),
        })
        .collect();
    if let Some(m) = m_bound {
        let m = BigUint::from(m);
        if let Some((label, _)) = orders.iter().find(|(_, o)| !m.is_multiple_of(o)) {
            return Ok(Verdict::new(
                false,
                S,
                "exceeds-m-bound",
                format!("the order of {label} does not divide m = {m}"),
            ));
        }
        return Ok(Verdict::new(
            true,
            S,
            "divides-m-bound",
            format!("every bounded summand order divides m = {m}"),
        ));
    }
    let m = orders.iter().fold(BigUint::one(), |acc, (_, o)| acc.lcm(o));
    Ok(Verdict::new(
        true,
        S,
        "bounded-torsion",
        format!("every bounded summand order divides m = {m}"),
    ))
}

fn require_artinian(d: &GroupDescriptor) -> Result<()> {
    let v = is_artinian_additive(d, None)?;
    if !v.value {
        return Err(Error::PreconditionFailed(format!(
            "not an Artinian additive group: {}",
            v.reason
        )));
    }
    Ok(())
}

/// An Artinian ring is not a proper union of additive subgroups iff its
/// additive group is divisible plus finite cyclic, i.e. no prime carries two
/// bounded cyclic summands.
pub fn theorem1_not_proper_union(d: &GroupDescriptor) -> Result<Verdict> {
    const S: &str = "Theorem 1";
    require_artinian(d)?;
    if let Some((q, summands)) = d.repeated_prime() {
        return Ok(Verdict::new(
            false,
            S,
            "repeated-prime-summand",
            format!(
                "prime {q} occurs in at least two cyclic summands ({summands}); the preimages \
                 of the {} lines of C_{q} ⊕ C_{q} form a proper union of subgroups",
                q + 1
            ),
        ));
    }
    let m: BigUint = d
        .bounded_torsion
        .iter()
        .map(|s| match s.k {
            Exponent::Finite(k) => BigUint::from(s.q).pow(k),
            Exponent::Unbounded => unreachable!("Artinian precondition"),
        })
        .product();
    Ok(Verdict::new(
        true,
        S,
        "divisible-plus-finite-cyclic",
        format!("divisible part plus finite cyclic C_{m}"),
    ))
}

/// An Artinian ring is not a proper union of cosets iff its additive group
/// is divisible.
pub fn corollary1_not_coset_union(d: &GroupDescriptor) -> Result<Verdict> {
    const S: &str = "Corollary 1";
    require_artinian(d)?;
    Ok(match d.bounded_torsion.first() {
        Some(s) => Verdict::new(
            false,
            S,
            "non-divisible-summand",
            format!(
                "{} is not divisible; the cosets of an index-{} subgroup partition the group",
                s.label(),
                s.q
            ),
        ),
        None => Verdict::new(true, S, "divisible", "the additive group is divisible".into()),
    })
}

/// Under the minimal condition for principal left ideals: not a proper union
/// of cosets iff the torsion part has no proper subgroup of finite index.
/// Within this grammar that means the bounded part is empty.
pub fn theorem2_not_coset_union(d: &GroupDescriptor) -> Result<Verdict> {
    const S: &str = "Theorem 2";
    d.validate()?;
    Ok(match d.bounded_torsion.first() {
        Some(s) => Verdict::new(
            false,
            S,
            "finite-index-subgroup",
            format!("{} gives the torsion part a subgroup of index {}", s.label(), s.q),
        ),
        None => Verdict::new(
            true,
            S,
            "no-finite-index-subgroup",
            "the torsion part is divisible and has no proper subgroup of finite index".into(),
        ),
    })
}

/// Under the minimal condition for principal left ideals: not a proper union
/// of subgroups iff every finite quotient of the torsion part is cyclic,
/// i.e. no prime carries two bounded cyclic summands.
pub fn corollary2_not_subgroup_union(d: &GroupDescriptor) -> Result<Verdict> {
    const S: &str = "Corollary 2";
    d.validate()?;
    Ok(match d.repeated_prime() {
        Some((q, summands)) => Verdict::new(
            false,
            S,
            "noncyclic-finite-quotient",
            format!("prime {q} occurs in at least two cyclic summands ({summands}), so C_{q} ⊕ C_{q} is a quotient"),
        ),
        None => Verdict::new(
            true,
            S,
            "finite-quotients-cyclic",
            "every finite quotient of the torsion part is cyclic".into(),
        ),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Predicate {
    Artinian,
    Theorem1,
    Corollary1,
    Theorem2,
    Corollary2,
}

impl Predicate {
    pub fn evaluate(self, d: &GroupDescriptor, m_bound: Option<u64>) -> Result<Verdict> {
        match self {
            Predicate::Artinian => is_artinian_additive(d, m_bound),
            Predicate::Theorem1 => theorem1_not_proper_union(d),
            Predicate::Corollary1 => corollary1_not_coset_union(d),
            Predicate::Theorem2 => theorem2_not_coset_union(d),
            Predicate::Corollary2 => corollary2_not_subgroup_union(d),
        }
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "artinian" => Predicate::Artinian,
            "theorem1" => Predicate::Theorem1,
            "corollary1" => Predicate::Corollary1,
            "theorem2" => Predicate::Theorem2,
            "corollary2" => Predicate::Corollary2,
            _ => return Err(Error::InvalidInput(format!("unknown predicate {s:?}"))),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(n: u64) -> CardinalTag {
        CardinalTag::Finite(n)
    }

    fn desc(rational: u64, prufer: &[u64], torsion: &[(u64, u32, u64)]) -> GroupDescriptor {
        GroupDescriptor::new(
            fin(rational),
            prufer.to_vec(),
            torsion
                .iter()
                .map(|&(q, k, m)| TorsionSummand::new(q, k, fin(m)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn cardinal_tags_parse() {
        assert_eq!("finite:3".parse::<CardinalTag>().unwrap(), fin(3));
        assert_eq!(
            "countable".parse::<CardinalTag>().unwrap(),
            CardinalTag::CountablyInfinite
        );
        assert_eq!(
            "symbolic:aleph1".parse::<CardinalTag>().unwrap(),
            CardinalTag::Symbolic("aleph1".into())
        );
        assert!("finite:x".parse::<CardinalTag>().is_err());
        assert!("many".parse::<CardinalTag>().is_err());
    }

    #[test]
    fn artinian_shape() {
        assert!(
            is_artinian_additive(&desc(1, &[2], &[(3, 2, 1)]), None)
                .unwrap()
                .value
        );
        let d = desc(0, &[], &[(2, 2, 1), (2, 3, 1)]);
        assert!(is_artinian_additive(&d, Some(8)).unwrap().value);
        let v = is_artinian_additive(&d, Some(4)).unwrap();
        assert!(!v.value);
        assert_eq!(v.clause, "exceeds-m-bound");
        let unbounded = GroupDescriptor::new(
            fin(0),
            vec![],
            vec![TorsionSummand {
                q: 2,
                k: Exponent::Unbounded,
                multiplicity: CardinalTag::CountablyInfinite,
            }],
        )
        .unwrap();
        assert!(!is_artinian_additive(&unbounded, None).unwrap().value);
        assert!(matches!(
            theorem1_not_proper_union(&unbounded),
            Err(Error::PreconditionFailed(_))
        ));
        assert!(!corollary2_not_subgroup_union(&unbounded).unwrap().value);
    }

    #[test]
    fn theorem1_examples() {
        assert!(theorem1_not_proper_union(&desc(1, &[], &[])).unwrap().value);
        assert!(
            theorem1_not_proper_union(&desc(1, &[2], &[(2, 1, 1), (3, 1, 1)]))
                .unwrap()
                .value
        );
        let v = theorem1_not_proper_union(&desc(0, &[], &[(2, 1, 2)])).unwrap();
        assert!(!v.value);
        assert_eq!(v.clause, "repeated-prime-summand");
        let symbolic = GroupDescriptor::new(
            fin(0),
            vec![],
            vec![TorsionSummand::new(5, 1, CardinalTag::Symbolic("N".into()))],
        )
        .unwrap();
        assert!(!theorem1_not_proper_union(&symbolic).unwrap().value);
    }

    #[test]
    fn corollary1_examples() {
        assert!(corollary1_not_coset_union(&desc(1, &[3], &[])).unwrap().value);
        assert!(
            !corollary1_not_coset_union(&desc(0, &[], &[(2, 1, 1)]))
                .unwrap()
                .value
        );
        assert!(
            !corollary1_not_coset_union(&desc(1, &[], &[(2, 2, 1)]))
                .unwrap()
                .value
        );
    }

    #[test]
    fn theorem2_examples() {
        assert!(theorem2_not_coset_union(&desc(0, &[2, 3], &[])).unwrap().value);
        assert!(
            !theorem2_not_coset_union(&desc(0, &[2], &[(5, 1, 1)]))
                .unwrap()
                .value
        );
        assert!(
            theorem2_not_coset_union(&GroupDescriptor::trivial())
                .unwrap()
                .value
        );
    }

    #[test]
    fn corollary2_examples() {
        assert!(
            corollary2_not_subgroup_union(&desc(0, &[2], &[(2, 2, 1), (3, 2, 1)]))
                .unwrap()
                .value
        );
        assert!(
            !corollary2_not_subgroup_union(&desc(0, &[], &[(2, 1, 1), (2, 2, 1)]))
                .unwrap()
                .value
        );
        assert!(
            corollary2_not_subgroup_union(&GroupDescriptor::trivial())
                .unwrap()
                .value
        );
    }

    #[test]
    fn invalid_descriptors() {
        let dup = GroupDescriptor {
            rational_rank: fin(0),
            prufer: vec![],
            bounded_torsion: vec![
                TorsionSummand::new(2, 1, fin(1)),
                TorsionSummand::new(2, 1, fin(1)),
            ],
        };
        assert!(matches!(
            theorem2_not_coset_union(&dup),
            Err(Error::PreconditionFailed(_))
        ));
        assert!(GroupDescriptor::new(fin(0), vec![4], vec![]).is_err());
        assert!(GroupDescriptor::new(fin(0), vec![], vec![TorsionSummand::new(6, 1, fin(1))]).is_err());
    }

    #[test]
    fn finite_group_conversion() {
        let g = desc(0, &[], &[(2, 2, 1), (3, 2, 1)])
            .to_finite_group()
            .unwrap()
            .unwrap();
        assert_eq!(g.invariant_factors(), &[36]);
        let g = desc(0, &[], &[(2, 1, 2), (2, 2, 1)])
            .to_finite_group()
            .unwrap()
            .unwrap();
        assert_eq!(g.invariant_factors(), &[2, 2, 4]);
        assert!(desc(1, &[], &[]).to_finite_group().is_none());
    }
}
