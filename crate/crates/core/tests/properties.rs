use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use coverlab::covers::{verify_proper_union, CoverMode, CoverPart, CoverProblem};
use coverlab::groups::{smith_normal_form, subgroups, FiniteAbelianGroup, Subgroup};
use coverlab::lattices::{hnf, ivec, LatticeIndex};
use coverlab::matrix::IntMatrix;
use coverlab::witnesses::{
    refute_coset_cover, rf_subfield_member, unit_exponents, verify_refutation, zx_membership, CosetFamily,
    CosetMode, IntPolynomial, RationalFunction, RefutationOutcome, SubfieldSpec,
};

fn minor_gcd(m: &[Vec<i64>], k: usize) -> BigInt {
    use itertools::Itertools;
    let (r, c) = (m.len(), m[0].len());
    let mut g = BigInt::zero();
    for rows in (0..r).combinations(k) {
        for cols in (0..c).combinations(k) {
            let sub: Vec<Vec<i64>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| m[i][j]).collect())
                .collect();
            g = g.gcd(&IntMatrix::from_rows(k, &sub).determinant());
        }
    }
    g
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=3, 1usize..=3)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

fn rf5() -> impl Strategy<Value = RationalFunction> {
    (
        prop::collection::vec(0i64..5, 0..=4),
        prop::collection::vec(0i64..5, 1..=4),
    )
        .prop_filter_map("zero denominator", |(n, d)| {
            RationalFunction::from_coeffs(5, &n, &d).ok()
        })
}

fn small_unit() -> impl Strategy<Value = BigRational> {
    (prop::collection::vec(-3i32..=3, 6), any::<bool>()).prop_map(|(exps, neg)| {
        let mut q = BigRational::one();
        for (p, e) in [2, 3, 5, 7, 11, 13].into_iter().zip(exps) {
            let base = BigRational::from_integer(BigInt::from(p));
            q *= if e >= 0 { base.pow(e) } else { base.recip().pow(-e) };
        }
        if neg {
            -q
        } else {
            q
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn smith_form_matches_minor_gcds(m in matrix()) {
        let a = IntMatrix::from_rows(m[0].len(), &m);
        let s = smith_normal_form(&a);
        prop_assert_eq!(&(&s.left * &a) * &s.right, s.diagonal.clone());
        prop_assert!(s.diagonal.is_diagonal());
        prop_assert_eq!(s.left.determinant().abs(), BigInt::one());
        prop_assert_eq!(s.right.determinant().abs(), BigInt::one());
        let d = s.diagonal_entries();
        let mut prefix = BigInt::one();
        for (k, x) in d.iter().enumerate() {
            prop_assert!(!x.is_negative());
            if k + 1 < d.len() && !x.is_zero() {
                prop_assert!((&d[k + 1] % x).is_zero());
            }
            prefix *= x;
            prop_assert_eq!(&prefix, &minor_gcd(&m, k + 1));
        }
    }

    #[test]
    fn hnf_is_idempotent_and_membership_is_exact(
        g in prop::collection::vec(prop::collection::vec(-6i64..=6, 2), 2),
        v in prop::collection::vec(-12i64..=12, 2),
    ) {
        let gens: Vec<_> = g.iter().map(|r| ivec(r)).collect();
        let l = hnf(2, &gens)?;
        let again = hnf(2, l.basis())?;
        prop_assert_eq!(again.basis(), l.basis());
        for r in &gens {
            prop_assert!(l.contains(r)?);
        }
        let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
        if det != 0 {
            // Cramer's rule: v = a·g0 + b·g1 with a, b integers.
            let a = v[0] * g[1][1] - v[1] * g[1][0];
            let b = g[0][0] * v[1] - g[0][1] * v[0];
            let member = a % det == 0 && b % det == 0;
            prop_assert_eq!(l.contains(&ivec(&v))?, member);
            prop_assert_eq!(l.index(), LatticeIndex::Finite(det.unsigned_abs().into()));
        }
    }

    #[test]
    fn zx_membership_is_never_empty(c in prop::collection::vec(-50i64..=50, 0..=9)) {
        prop_assert!(!zx_membership(&IntPolynomial::from_i64(&c)).is_empty());
    }

    #[test]
    fn unit_exponents_are_additive(q in small_unit(), r in small_unit()) {
        let (a, b) = (unit_exponents(&q)?, unit_exponents(&r)?);
        prop_assert_eq!(unit_exponents(&(&q * &r))?, a + b);
    }

    #[test]
    fn rational_functions_form_a_field(a in rf5(), b in rf5(), c in rf5()) {
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        if !b.is_zero() {
            prop_assert_eq!(a.div(&b)?.mul(&b), a);
        }
    }

    #[test]
    fn subfield_is_closed(g1 in rf5(), g2 in rf5(), k in 2usize..=3) {
        let h = SubfieldSpec::new(5, k)?;
        let (f1, f2) = (h.embed(&g1), h.embed(&g2));
        prop_assert!(rf_subfield_member(&f1, &h)?);
        prop_assert!(rf_subfield_member(&f1.add(&f2), &h)?);
        prop_assert!(rf_subfield_member(&f1.sub(&f2), &h)?);
        prop_assert!(rf_subfield_member(&f1.mul(&f2), &h)?);
        if !f1.is_zero() {
            prop_assert!(rf_subfield_member(&f1.inv()?, &h)?);
        }
    }

    #[test]
    fn refutations_reverify(shifts in prop::collection::vec(rf5(), 0..=4), multiplicative in any::<bool>()) {
        let mode = if multiplicative { CosetMode::Multiplicative } else { CosetMode::Additive };
        let shifts: Vec<_> = shifts.into_iter().filter(|s| !multiplicative || !s.is_zero()).collect();
        let family = CosetFamily::new(SubfieldSpec::new(5, 2)?, mode, shifts)?;
        match refute_coset_cover(&family, 4)? {
            RefutationOutcome::Refuted(cert) => prop_assert!(verify_refutation(&family, &cert)),
            RefutationOutcome::Inconclusive => prop_assert!(false, "inconclusive"),
        }
    }

    #[test]
    fn subgroup_orders_multiply(factors in prop::sample::select(vec![vec![12], vec![2, 4], vec![2, 6], vec![3, 6], vec![2, 2, 2], vec![4, 4]]),
                                i in 0usize..64, j in 0usize..64) {
        let g = FiniteAbelianGroup::new(factors)?;
        let all = subgroups(&g, 64)?;
        let (h, k) = (&all[i % all.len()], &all[j % all.len()]);
        let meet = h.intersection(k)?;
        let join = h.join(k)?;
        prop_assert_eq!(h.order() * k.order(), meet.order() * join.order());
        prop_assert!(meet.is_subgroup_of(h) && h.is_subgroup_of(&join));
    }

    #[test]
    fn proper_reports_carry_exclusive_witnesses(mask in 1u32..(1 << 10)) {
        let g = FiniteAbelianGroup::new(vec![2, 4])?;
        let proper: Vec<Subgroup> = subgroups(&g, 64)?.into_iter().filter(|h| h.is_proper()).collect();
        let parts: Vec<Subgroup> = proper.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, h)| h.clone()).collect();
        prop_assume!(parts.len() >= 2);
        let problem = CoverProblem::new(g.clone(), CoverMode::Subgroups, parts.iter().cloned().map(CoverPart::Subgroup).collect())?;
        let report = verify_proper_union(&problem, 64)?;
        let union: std::collections::BTreeSet<_> = parts.iter().flat_map(|h| h.elements().collect::<Vec<_>>()).collect();
        prop_assert_eq!(report.covered, union.len() == 8);
        if let Some(w) = &report.uncovered_witness {
            prop_assert!(parts.iter().all(|h| !h.contains(w)));
        }
        for (i, w) in &report.missing_after_removal {
            for (j, h) in parts.iter().enumerate() {
                prop_assert_eq!(h.contains(w), i == &j);
            }
        }
        if report.proper {
            prop_assert_eq!(report.missing_after_removal.len(), parts.len());
        }
    }
}
