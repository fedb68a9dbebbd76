//! Finite coset families in `F_p(τ)` never cover the field.
//!
//! For the subfield `H = F_p(τ^k)` and shifts `a_1, …, a_s`, the family is
//! either the additive cosets `a_i + H` or the multiplicative cosets
//! `a_i·U(H)`. A refutation is an element lying in none of them.

use std::fmt;
use std::str::FromStr;

use super::fpoly::{check_characteristic, FpPoly};
use super::ratfunc::RationalFunction;
use crate::error::{Error, Result};

/// The subfield `F_p(τ^k)` of `F_p(τ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubfieldSpec {
    p: u64,
    k: usize,
}

impl SubfieldSpec {
    pub fn new(p: u64, k: usize) -> Result<Self> {
        check_characteristic(p)?;
        if k < 2 {
            return Err(Error::InvalidInput(format!(
                "subfield exponent must be at least 2, got {k}"
            )));
        }
        Ok(SubfieldSpec { p, k })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `g(τ^k)`.
    pub fn embed(&self, g: &RationalFunction) -> RationalFunction {
        let spread = |f: &FpPoly| {
            let mut coeffs = vec![0; f.coeffs().len().saturating_sub(1) * self.k + 1];
            for (i, &c) in f.coeffs().iter().enumerate() {
                coeffs[i * self.k] = c;
            }
            FpPoly::from_reduced(self.p, coeffs)
        };
        RationalFunction::new(spread(g.numerator()), spread(g.denominator()))
            .expect("substitution keeps the denominator nonzero")
    }

    fn contains(&self, f: &RationalFunction) -> bool {
        f.numerator().support().all(|e| e % self.k == 0) && f.denominator().support().all(|e| e % self.k == 0)
    }
}

/// Whether `f` lies in `F_p(τ^k)`. In reduced form this holds exactly when
/// every exponent in the numerator and denominator is a multiple of `k`.
pub fn rf_subfield_member(f: &RationalFunction, h: &SubfieldSpec) -> Result<bool> {
    if f.characteristic() != h.p {
        return Err(Error::CharacteristicMismatch {
            left: f.characteristic(),
            right: h.p,
        });
    }
    Ok(h.contains(f))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CosetMode {
    Additive,
    Multiplicative,
}

impl CosetMode {
    pub fn name(self) -> &'static str {
        match self {
            CosetMode::Additive => "additive",
            CosetMode::Multiplicative => "multiplicative",
        }
    }
}

impl FromStr for CosetMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "additive" => Ok(CosetMode::Additive),
            "multiplicative" => Ok(CosetMode::Multiplicative),
            _ => Err(Error::InvalidInput(format!("unknown coset mode {s:?}"))),
        }
    }
}

impl fmt::Display for CosetMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A validated coset family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetFamily {
    subfield: SubfieldSpec,
    mode: CosetMode,
    shifts: Vec<RationalFunction>,
}

impl CosetFamily {
    pub fn new(subfield: SubfieldSpec, mode: CosetMode, shifts: Vec<RationalFunction>) -> Result<Self> {
        for (i, a) in shifts.iter().enumerate() {
            if a.characteristic() != subfield.p {
                return Err(Error::CharacteristicMismatch {
                    left: a.characteristic(),
                    right: subfield.p,
                });
            }
            if mode == CosetMode::Multiplicative && a.is_zero() {
                return Err(Error::BadShift(format!("shift {i} is zero")));
            }
        }
        Ok(CosetFamily {
            subfield,
            mode,
            shifts,
        })
    }

    pub fn subfield(&self) -> &SubfieldSpec {
        &self.subfield
    }

    pub fn mode(&self) -> CosetMode {
        self.mode
    }

    pub fn shifts(&self) -> &[RationalFunction] {
        &self.shifts
    }

    /// Whether `x` lies in the coset with shift `a`.
    fn in_coset(&self, x: &RationalFunction, a: &RationalFunction) -> bool {
        match self.mode {
            CosetMode::Additive => self.subfield.contains(&x.sub(a)),
            CosetMode::Multiplicative => {
                !x.is_zero() && self.subfield.contains(&x.div(a).expect("nonzero shift"))
            }
        }
    }

    /// Index of the first coset containing `x`. Panics on a characteristic
    /// mismatch.
    pub fn coset_of(&self, x: &RationalFunction) -> Option<usize> {
        self.shifts.iter().position(|a| self.in_coset(x, a))
    }

    /// Whether the cosets of `a_i` and `a_j` force `a_i + a_j·λ` into
    /// pairwise distinct cosets as `λ` ranges over `H*`.
    fn spreads(&self, i: usize, j: usize) -> bool {
        let (ai, aj) = (&self.shifts[i], &self.shifts[j]);
        match self.mode {
            CosetMode::Additive => !self.subfield.contains(aj),
            CosetMode::Multiplicative => !self.subfield.contains(&aj.div(ai).expect("nonzero shift")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RefutationCertificate {
    /// An element outside every coset.
    UncoveredWitness { element: RationalFunction },
    /// The elements `a_i + a_j·λ` for `s + 1` distinct `λ ∈ H*` lie in
    /// pairwise distinct cosets, so with `s` cosets one of them is missed.
    /// `landing[m]` is the coset hit by the `m`-th element.
    Pigeonhole {
        i: usize,
        j: usize,
        lambdas: Vec<RationalFunction>,
        landing: Vec<Option<usize>>,
        uncovered: usize,
        element: RationalFunction,
    },
}

impl RefutationCertificate {
    /// The uncovered element the certificate exhibits.
    pub fn element(&self) -> &RationalFunction {
        match self {
            RefutationCertificate::UncoveredWitness { element }
            | RefutationCertificate::Pigeonhole { element, .. } => element,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            RefutationCertificate::UncoveredWitness { .. } => "uncovered_witness",
            RefutationCertificate::Pigeonhole { .. } => "pigeonhole",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RefutationOutcome {
    Refuted(RefutationCertificate),
    Inconclusive,
}

/// Every reduced element of `F_p(τ)` of height at most `max_height`:
/// by height, then denominator degree, then coefficients with the leading
/// one most significant.
pub fn candidates(p: u64, max_height: usize) -> impl Iterator<Item = RationalFunction> {
    (0..=max_height).flat_map(move |h| {
        (0..=h).flat_map(move |dd| {
            monic_polys(p, dd).flat_map(move |den| {
                polys_of_degree(p, h - dd, h == 0).filter_map(move |num| {
                    num.gcd(&den)
                        .is_one()
                        .then(|| RationalFunction::new(num, den.clone()).expect("nonzero denominator"))
                })
            })
        })
    })
}

fn monic_polys(p: u64, d: usize) -> impl Iterator<Item = FpPoly> {
    (0..p.pow(d as u32)).map(move |low| {
        let mut coeffs = low_digits(low, p, d);
        coeffs.push(1);
        FpPoly::from_reduced(p, coeffs)
    })
}

fn polys_of_degree(p: u64, d: usize, with_zero: bool) -> impl Iterator<Item = FpPoly> {
    let zero = with_zero.then(|| FpPoly::zero(p));
    let span = p.pow(d as u32);
    zero.into_iter().chain((0..(p - 1) * span).map(move |k| {
        let mut coeffs = low_digits(k % span, p, d);
        coeffs.push(1 + k / span);
        FpPoly::from_reduced(p, coeffs)
    }))
}

fn low_digits(mut k: u64, p: u64, len: usize) -> Vec<u64> {
    (0..len)
        .map(|_| {
            let d = k % p;
            k /= p;
            d
        })
        .collect()
}

/// Searches for an element outside every coset.
///
/// Candidates are tried in a fixed order: `τ^0, …, τ^b`, then
/// `τ^-1, …, τ^-b`, then every reduced element of height at most `b`
/// (see [`candidates`]), where `b = degree_bound`. If all of these are
/// covered, the pigeonhole construction is tried. `Inconclusive` means
/// neither produced a certificate.
pub fn refute_coset_cover(family: &CosetFamily, degree_bound: usize) -> Result<RefutationOutcome> {
    if degree_bound == 0 {
        return Err(Error::PreconditionFailed(
            "degree_bound must be at least 1".into(),
        ));
    }
    let p = family.subfield.p;
    let monomials = (0..=degree_bound as i64)
        .chain((1..=degree_bound as i64).map(|e| -e))
        .map(|e| RationalFunction::tau_pow(p, e).expect("checked characteristic"));
    let witness = monomials
        .chain(candidates(p, degree_bound))
        .filter(|x| family.mode == CosetMode::Additive || !x.is_zero())
        .find(|x| family.coset_of(x).is_none());
    if let Some(element) = witness {
        return Ok(RefutationOutcome::Refuted(
            RefutationCertificate::UncoveredWitness { element },
        ));
    }
    Ok(match pigeonhole(family) {
        Some(cert) => RefutationOutcome::Refuted(cert),
        None => RefutationOutcome::Inconclusive,
    })
}

/// The first `n` nonzero elements of `H`, images of [`candidates`].
fn subfield_units(h: &SubfieldSpec, n: usize) -> Vec<RationalFunction> {
    candidates(h.p, n)
        .filter(|g| !g.is_zero())
        .take(n)
        .map(|g| h.embed(&g))
        .collect()
}

fn pigeonhole(family: &CosetFamily) -> Option<RefutationCertificate> {
    let s = family.shifts.len();
    let (i, j) = (0..s)
        .flat_map(|i| (0..s).map(move |j| (i, j)))
        .find(|&(i, j)| family.spreads(i, j))?;
    let lambdas = subfield_units(&family.subfield, s + 1);
    let elements: Vec<RationalFunction> = lambdas
        .iter()
        .map(|l| family.shifts[i].add(&family.shifts[j].mul(l)))
        .collect();
    let landing: Vec<Option<usize>> = elements.iter().map(|x| family.coset_of(x)).collect();
    let uncovered = landing.iter().position(Option::is_none)?;
    Some(RefutationCertificate::Pigeonhole {
        i,
        j,
        lambdas,
        landing,
        uncovered,
        element: elements[uncovered].clone(),
    })
}

/// Rechecks a certificate against the family using only field arithmetic
/// and the subfield membership test.
pub fn verify_refutation(family: &CosetFamily, cert: &RefutationCertificate) -> bool {
    let outside_all = |x: &RationalFunction| {
        x.characteristic() == family.subfield.p
            && (family.mode == CosetMode::Additive || !x.is_zero())
            && family.shifts.iter().all(|a| !family.in_coset(x, a))
    };
    match cert {
        RefutationCertificate::UncoveredWitness { element } => outside_all(element),
        RefutationCertificate::Pigeonhole {
            i,
            j,
            lambdas,
            landing,
            uncovered,
            element,
        } => {
            let s = family.shifts.len();
            if *i >= s || *j >= s || lambdas.len() != s + 1 || landing.len() != s + 1 {
                return false;
            }
            if !family.spreads(*i, *j) {
                return false;
            }
            let lambdas_ok = lambdas.iter().enumerate().all(|(m, l)| {
                l.characteristic() == family.subfield.p
                    && !l.is_zero()
                    && family.subfield.contains(l)
                    && lambdas[..m].iter().all(|prev| prev != l)
            });
            if !lambdas_ok {
                return false;
            }
            let recomputed: Vec<RationalFunction> = lambdas
                .iter()
                .map(|l| family.shifts[*i].add(&family.shifts[*j].mul(l)))
                .collect();
            let hits: Vec<usize> = landing.iter().flatten().copied().collect();
            let distinct = hits.iter().enumerate().all(|(m, c)| !hits[..m].contains(c));
            let landings_ok = recomputed
                .iter()
                .zip(landing)
                .all(|(x, l)| l.is_none_or(|c| c < s && family.in_coset(x, &family.shifts[c])));
            distinct
                && landings_ok
                && *uncovered <= s
                && landing[*uncovered].is_none()
                && recomputed[*uncovered] == *element
                && outside_all(element)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::from_coeffs(5, num, den).unwrap()
    }

    fn h2() -> SubfieldSpec {
        SubfieldSpec::new(5, 2).unwrap()
    }

    fn refute(mode: CosetMode, shifts: Vec<RationalFunction>) -> RefutationCertificate {
        let family = CosetFamily::new(h2(), mode, shifts).unwrap();
        match refute_coset_cover(&family, 6).unwrap() {
            RefutationOutcome::Refuted(c) => {
                assert!(verify_refutation(&family, &c));
                c
            }
            RefutationOutcome::Inconclusive => panic!("inconclusive"),
        }
    }

    #[test]
    fn subfield_membership_examples() {
        let h = h2();
        assert!(rf_subfield_member(&rf(&[0, 0, 1], &[1]), &h).unwrap());
        assert!(!rf_subfield_member(&rf(&[0, 0, 0, 1], &[1]), &h).unwrap());
        assert!(rf_subfield_member(&rf(&[1, 0, 0, 0, 1], &[0, 0, 1]), &h).unwrap());
        let other = RationalFunction::from_coeffs(7, &[1], &[1]).unwrap();
        assert_eq!(
            rf_subfield_member(&other, &h),
            Err(Error::CharacteristicMismatch { left: 7, right: 5 })
        );
        assert!(SubfieldSpec::new(5, 1).is_err());
    }

    #[test]
    fn refuter_examples() {
        let tau = rf(&[0, 1], &[1]);
        let c = refute(CosetMode::Additive, vec![RationalFunction::zero(5), tau.clone()]);
        assert_eq!(c.element(), &rf(&[0, 0, 0, 1], &[1]));
        let c = refute(CosetMode::Additive, vec![RationalFunction::zero(5)]);
        assert_eq!(c.element(), &tau);
        let c = refute(CosetMode::Multiplicative, vec![RationalFunction::one(5), tau]);
        assert_eq!(c.element(), &rf(&[1, 1], &[1]));
    }

    #[test]
    fn zero_shift_is_rejected_multiplicatively() {
        assert!(matches!(
            CosetFamily::new(h2(), CosetMode::Multiplicative, vec![RationalFunction::zero(5)]),
            Err(Error::BadShift(_))
        ));
    }

    #[test]
    fn pigeonhole_certificates_verify() {
        let shifts = vec![rf(&[0, 1], &[1]), rf(&[1, 0, 1], &[1]), rf(&[0, 2], &[1, 1])];
        for mode in [CosetMode::Additive, CosetMode::Multiplicative] {
            let family = CosetFamily::new(h2(), mode, shifts.clone()).unwrap();
            let cert = pigeonhole(&family).expect("some pair spreads");
            assert!(verify_refutation(&family, &cert));
            if let RefutationCertificate::Pigeonhole { landing, .. } = &cert {
                assert_eq!(landing.len(), 4);
            }
            let forged = RefutationCertificate::UncoveredWitness {
                element: shifts[0].clone(),
            };
            assert!(!verify_refutation(&family, &forged));
        }
    }

    #[test]
    fn candidates_are_distinct_and_reduced() {
        let all: Vec<_> = candidates(3, 3).collect();
        let mut dedup = all.clone();
        dedup.sort_by_key(|f| format!("{f}"));
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
        assert!(all.iter().all(|f| f.height() <= 3));
        assert_eq!(all[0], RationalFunction::zero(3));
    }

    #[test]
    fn embedding_lands_in_subfield() {
        let h = h2();
        for g in candidates(5, 2) {
            assert!(h.contains(&h.embed(&g)));
        }
    }
}
