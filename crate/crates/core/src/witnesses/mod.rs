//! Concrete instances: `Z[x]` as a union of three subrings, unit groups as
//! unions of three subsemigroups, and refutations of finite coset covers of
//! the rational function field `F_p(τ)`.

mod fpoly;
mod galois;
mod ratfunc;
mod refute;
mod units;
mod zx;

pub use fpoly::{FpPoly, MAX_CHARACTERISTIC};
pub use galois::{GaloisField, MAX_FIELD_ORDER};
pub use ratfunc::RationalFunction;
pub use refute::{
    candidates, refute_coset_cover, rf_subfield_member, verify_refutation, CosetFamily, CosetMode,
    RefutationCertificate, RefutationOutcome, SubfieldSpec,
};
pub use units::{
    exponent_lattice_cover, exponent_lattices, exponent_membership, parse_rational, semigroup_membership,
    semigroup_membership_fp, unit_exponents, unit_exponents_fp, UnitExponentVector, UnitPart,
};
pub use zx::{
    random_member, random_polynomial, zx_closure_check, zx_membership, ClosureViolation, IntPolynomial,
    RingOp, ZxClosureReport, ZxPart, SAMPLE_COEFF, SAMPLE_DEGREE,
};
