//! JSON encodings of problems and reports.
//!
//! Integers may be given as JSON numbers or as decimal strings; large values
//! are emitted as strings. Objects are emitted with sorted keys and never
//! contain floating point numbers. Unknown keys in inputs are rejected.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::covers::{semigroup_closure, CoverMode, CoverPart, CoverProblem, CoverReport};
use crate::descriptors::{CardinalTag, Exponent, GroupDescriptor, TorsionSummand};
use crate::error::{Error, Result};
use crate::groups::{Coset, FiniteAbelianGroup, GroupElement, Subgroup};
use crate::lattices::{hnf, LatticeCoset, LatticeCover, NeumannOutcome};
use crate::witnesses::{
    CosetFamily, CosetMode, FpPoly, IntPolynomial, RationalFunction, RefutationCertificate, SubfieldSpec,
};

fn schema_error(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn object<'a>(v: &'a Value, what: &str, allowed: &[&str]) -> Result<&'a Map<String, Value>> {
    let obj = v
        .as_object()
        .ok_or_else(|| schema_error(format!("{what} must be a JSON object")))?;
    if let Some(k) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(schema_error(format!("unexpected key {k:?} in {what}")));
    }
    Ok(obj)
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| schema_error(format!("{what} is missing {key:?}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a [Value]> {
    v.as_array()
        .map(Vec::as_slice)
        .ok_or_else(|| schema_error(format!("{what} must be an array")))
}

pub fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(schema_error(format!("{n} is not an integer")))
            }
        }
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| schema_error(format!("{s:?} is not an integer"))),
        other => Err(schema_error(format!("{other} is not an integer"))),
    }
}

fn parse_u64(v: &Value, what: &str) -> Result<u64> {
    parse_int(v)?
        .to_u64()
        .ok_or_else(|| schema_error(format!("{what} must be a non-negative 64-bit integer")))
}

fn parse_i64(v: &Value, what: &str) -> Result<i64> {
    parse_int(v)?
        .to_i64()
        .ok_or_else(|| schema_error(format!("{what} must fit in 64 bits")))
}

fn parse_int_vec(v: &Value, what: &str) -> Result<Vec<BigInt>> {
    array(v, what)?.iter().map(parse_int).collect()
}

fn parse_i64_vec(v: &Value, what: &str) -> Result<Vec<i64>> {
    array(v, what)?.iter().map(|x| parse_i64(x, what)).collect()
}

pub fn int_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(i) => json!(i),
        None => json!(x.to_string()),
    }
}

pub fn biguint_json(x: &BigUint) -> Value {
    match x.to_u64() {
        Some(i) => json!(i),
        None => json!(x.to_string()),
    }
}

pub fn int_vec_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

pub fn element_json(x: &GroupElement) -> Value {
    json!(x.coords())
}

pub fn parse_group(v: &Value) -> Result<FiniteAbelianGroup> {
    let obj = object(v, "group", &["invariant_factors"])?;
    let factors = array(field(obj, "invariant_factors", "group")?, "invariant_factors")?
        .iter()
        .map(|d| parse_u64(d, "invariant factor"))
        .collect::<Result<Vec<_>>>()?;
    FiniteAbelianGroup::new(factors)
}

pub fn group_json(g: &FiniteAbelianGroup) -> Value {
    json!({ "invariant_factors": g.invariant_factors() })
}

fn parse_elements(g: &FiniteAbelianGroup, v: &Value) -> Result<Vec<GroupElement>> {
    array(v, "generators")?
        .iter()
        .map(|x| g.element_big(&parse_int_vec(x, "group element")?))
        .collect()
}

pub fn parse_subgroup(g: &FiniteAbelianGroup, v: &Value, bound: u64) -> Result<Subgroup> {
    let obj = object(v, "subgroup", &["generators"])?;
    Subgroup::generated_by(
        g,
        &parse_elements(g, field(obj, "generators", "subgroup")?)?,
        bound,
    )
}

pub fn subgroup_json(h: &Subgroup) -> Value {
    json!({
        "generators": h.generators().iter().map(element_json).collect::<Vec<_>>(),
        "order": h.order(),
    })
}

pub fn parse_coset(g: &FiniteAbelianGroup, v: &Value, bound: u64) -> Result<Coset> {
    let obj = object(v, "coset", &["subgroup", "rep"])?;
    let h = parse_subgroup(g, field(obj, "subgroup", "coset")?, bound)?;
    let rep = g.element_big(&parse_int_vec(field(obj, "rep", "coset")?, "rep")?)?;
    Coset::new(h, &rep)
}

pub fn coset_json(c: &Coset) -> Value {
    json!({
        "subgroup": subgroup_json(c.subgroup()),
        "rep": element_json(c.representative()),
    })
}

fn parse_mode(v: &Value) -> Result<CoverMode> {
    match v.as_str() {
        Some("subgroups") => Ok(CoverMode::Subgroups),
        Some("cosets") => Ok(CoverMode::Cosets),
        Some("subsemigroups") => Ok(CoverMode::Subsemigroups),
        _ => Err(schema_error(format!(
            "mode must be subgroups, cosets or subsemigroups, got {v}"
        ))),
    }
}

/// In `subsemigroups` mode each part is the additive closure of its
/// generators, which must be nonempty.
pub fn parse_cover_problem(v: &Value, bound: u64) -> Result<CoverProblem> {
    let obj = object(v, "cover problem", &["group", "mode", "parts"])?;
    let g = parse_group(field(obj, "group", "cover problem")?)?;
    let mode = parse_mode(field(obj, "mode", "cover problem")?)?;
    let parts = array(field(obj, "parts", "cover problem")?, "parts")?
        .iter()
        .map(|p| -> Result<CoverPart> {
            Ok(match mode {
                CoverMode::Subgroups => CoverPart::Subgroup(parse_subgroup(&g, p, bound)?),
                CoverMode::Cosets => CoverPart::Coset(parse_coset(&g, p, bound)?),
                CoverMode::Subsemigroups => {
                    let obj = object(p, "subsemigroup", &["generators"])?;
                    let gens = parse_elements(&g, field(obj, "generators", "subsemigroup")?)?;
                    if gens.is_empty() {
                        return Err(schema_error("a subsemigroup part needs a generator"));
                    }
                    let members: Vec<GroupElement> = semigroup_closure(&g, &gens, bound)?
                        .ones()
                        .map(|i| g.element_at(i))
                        .collect();
                    let h = Subgroup::from_elements(&g, &members, bound)
                        .map_err(|_| Error::NotASubgroup(format!("{gens:?}")))?;
                    CoverPart::Subgroup(h)
                }
            })
        })
        .collect::<Result<Vec<_>>>()?;
    CoverProblem::new(g, mode, parts)
}

/// `{"covered", "proper", "witnesses", "uncovered_witness"}`; `witnesses`
/// maps each part index to an element only that part contains.
pub fn cover_report_json<E>(report: &CoverReport<E>, elem: impl Fn(&E) -> Value) -> Value {
    let witnesses: Map<String, Value> = report
        .missing_after_removal
        .iter()
        .map(|(i, x)| (i.to_string(), elem(x)))
        .collect();
    json!({
        "covered": report.covered,
        "proper": report.proper,
        "witnesses": witnesses,
        "uncovered_witness": report.uncovered_witness.as_ref().map(&elem),
    })
}

pub fn parse_lattice_cover(v: &Value) -> Result<LatticeCover> {
    let obj = object(v, "lattice cover", &["ambient", "cosets"])?;
    let ambient = parse_u64(field(obj, "ambient", "lattice cover")?, "ambient")? as usize;
    let cosets = array(field(obj, "cosets", "lattice cover")?, "cosets")?
        .iter()
        .map(|c| {
            let c = object(c, "lattice coset", &["basis", "shift"])?;
            let basis = array(field(c, "basis", "lattice coset")?, "basis")?
                .iter()
                .map(|row| parse_int_vec(row, "basis vector"))
                .collect::<Result<Vec<_>>>()?;
            let shift = match c.get("shift") {
                Some(s) => parse_int_vec(s, "shift")?,
                None => vec![BigInt::default(); ambient],
            };
            LatticeCoset::new(hnf(ambient, &basis)?, &shift)
        })
        .collect::<Result<Vec<_>>>()?;
    LatticeCover::new(ambient, cosets)
}

pub fn neumann_json(outcome: &NeumannOutcome) -> Value {
    match outcome {
        NeumannOutcome::Certificate(c) => json!({
            "kind": "finite_index",
            "member_index": c.member_index,
            "index": biguint_json(&c.index_value),
        }),
        NeumannOutcome::Refuted(w) => json!({ "kind": "refutation", "witness": int_vec_json(w) }),
        NeumannOutcome::Inconclusive => json!({ "kind": "inconclusive" }),
    }
}

fn parse_cardinal(v: &Value) -> Result<CardinalTag> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(_) => Ok(CardinalTag::Finite(parse_u64(v, "cardinal")?)),
        other => Err(schema_error(format!("{other} is not a cardinal"))),
    }
}

pub fn parse_descriptor(v: &Value) -> Result<GroupDescriptor> {
    let obj = object(v, "descriptor", &["rational_rank", "prufer", "bounded_torsion"])?;
    let rational_rank = match obj.get("rational_rank") {
        Some(r) => parse_cardinal(r)?,
        None => CardinalTag::Finite(0),
    };
    let prufer = match obj.get("prufer") {
        Some(p) => array(p, "prufer")?
            .iter()
            .map(|q| parse_u64(q, "prufer prime"))
            .collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    let empty = Vec::new();
    let torsion = match obj.get("bounded_torsion") {
        Some(t) => array(t, "bounded_torsion")?,
        None => &empty,
    };
    let bounded_torsion = torsion
        .iter()
        .map(|s| {
            let s = object(s, "torsion summand", &["q", "k", "mult"])?;
            let q = parse_u64(field(s, "q", "torsion summand")?, "q")?;
            let k = match field(s, "k", "torsion summand")? {
                Value::String(u) if u == "unbounded" => Exponent::Unbounded,
                k => Exponent::Finite(
                    parse_u64(k, "k")?
                        .try_into()
                        .map_err(|_| schema_error("k is too large"))?,
                ),
            };
            let multiplicity = match s.get("mult") {
                Some(m) => parse_cardinal(m)?,
                None => CardinalTag::Finite(1),
            };
            Ok(TorsionSummand { q, k, multiplicity })
        })
        .collect::<Result<Vec<_>>>()?;
    GroupDescriptor::new(rational_rank, prufer, bounded_torsion)
}

pub fn descriptor_json(d: &GroupDescriptor) -> Value {
    let torsion: Vec<Value> = d
        .bounded_torsion
        .iter()
        .map(|s| {
            let k = match s.k {
                Exponent::Finite(k) => json!(k),
                Exponent::Unbounded => json!("unbounded"),
            };
            json!({ "q": s.q, "k": k, "mult": s.multiplicity.to_string() })
        })
        .collect();
    json!({
        "rational_rank": d.rational_rank.to_string(),
        "prufer": d.prufer,
        "bounded_torsion": torsion,
    })
}

pub fn parse_polynomial(v: &Value) -> Result<IntPolynomial> {
    let obj = object(v, "polynomial", &["coeffs"])?;
    Ok(IntPolynomial::new(parse_int_vec(
        field(obj, "coeffs", "polynomial")?,
        "coeffs",
    )?))
}

pub fn polynomial_json(f: &IntPolynomial) -> Value {
    json!({ "coeffs": int_vec_json(f.coeffs()) })
}

/// `{"p", "num", "den"}`; `den` defaults to `[1]`, and `p` may be omitted
/// when a default characteristic is supplied.
pub fn parse_rational_function(v: &Value, default_p: Option<u64>) -> Result<RationalFunction> {
    let obj = object(v, "rational function", &["p", "num", "den"])?;
    let p = match (obj.get("p"), default_p) {
        (Some(p), _) => parse_u64(p, "p")?,
        (None, Some(p)) => p,
        (None, None) => return Err(schema_error("rational function is missing \"p\"")),
    };
    let num = parse_i64_vec(field(obj, "num", "rational function")?, "num")?;
    let den = match obj.get("den") {
        Some(d) => parse_i64_vec(d, "den")?,
        None => vec![1],
    };
    RationalFunction::new(FpPoly::new(p, &num)?, FpPoly::new(p, &den)?)
}

pub fn rational_function_json(f: &RationalFunction) -> Value {
    json!({
        "p": f.characteristic(),
        "num": f.numerator().coeffs(),
        "den": f.denominator().coeffs(),
    })
}

/// A refuter request: the coset family and the degree bound.
pub fn parse_refutation_request(v: &Value) -> Result<(CosetFamily, usize)> {
    let obj = object(
        v,
        "refuter request",
        &["p", "k", "mode", "shifts", "degree_bound"],
    )?;
    let p = parse_u64(field(obj, "p", "refuter request")?, "p")?;
    let k = parse_u64(field(obj, "k", "refuter request")?, "k")? as usize;
    let mode: CosetMode = field(obj, "mode", "refuter request")?
        .as_str()
        .ok_or_else(|| schema_error("mode must be a string"))?
        .parse()?;
    let shifts = array(field(obj, "shifts", "refuter request")?, "shifts")?
        .iter()
        .map(|s| parse_rational_function(s, Some(p)))
        .collect::<Result<Vec<_>>>()?;
    let degree_bound = match obj.get("degree_bound") {
        Some(d) => parse_u64(d, "degree_bound")? as usize,
        None => 6,
    };
    Ok((
        CosetFamily::new(SubfieldSpec::new(p, k)?, mode, shifts)?,
        degree_bound,
    ))
}

pub fn certificate_json(c: &RefutationCertificate) -> Value {
    match c {
        RefutationCertificate::UncoveredWitness { element } => json!({
            "kind": c.kind(),
            "element": rational_function_json(element),
        }),
        RefutationCertificate::Pigeonhole {
            i,
            j,
            lambdas,
            landing,
            uncovered,
            element,
        } => json!({
            "kind": c.kind(),
            "i": i,
            "j": j,
            "lambdas": lambdas.iter().map(rational_function_json).collect::<Vec<_>>(),
            "landing": landing,
            "uncovered": uncovered,
            "element": rational_function_json(element),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::DEFAULT_BOUND;

    #[test]
    fn group_round_trip() {
        let v = json!({"invariant_factors": [2, 4]});
        assert_eq!(group_json(&parse_group(&v).unwrap()), v);
        assert!(parse_group(&json!({"invariant_factors": [4, 2]})).is_err());
        assert!(parse_group(&json!({"factors": [2]})).is_err());
        assert!(parse_group(&json!({"invariant_factors": [2.5]})).is_err());
    }

    #[test]
    fn cover_problem_in_every_mode() {
        let g = json!({"invariant_factors": [2, 2]});
        let lines = json!([{"generators": [[1, 0]]}, {"generators": [[0, 1]]}, {"generators": [[1, 1]]}]);
        for mode in ["subgroups", "subsemigroups"] {
            let p = parse_cover_problem(&json!({"group": g, "mode": mode, "parts": lines}), DEFAULT_BOUND)
                .unwrap();
            assert_eq!(p.parts().len(), 3);
        }
        let cosets = json!([
            {"subgroup": {"generators": [[1, 0]]}, "rep": [0, 0]},
            {"subgroup": {"generators": [[1, 0]]}, "rep": [0, 1]},
        ]);
        let p = parse_cover_problem(
            &json!({"group": g, "mode": "cosets", "parts": cosets}),
            DEFAULT_BOUND,
        )
        .unwrap();
        assert_eq!(p.mode(), CoverMode::Cosets);
        assert!(parse_cover_problem(&json!({"group": g, "mode": "rings", "parts": []}), 64).is_err());
    }

    #[test]
    fn descriptor_defaults_and_round_trip() {
        let d =
            parse_descriptor(&json!({"bounded_torsion": [{"q": 2, "k": 1, "mult": "finite:2"}]})).unwrap();
        assert_eq!(d.rational_rank, CardinalTag::Finite(0));
        let v = descriptor_json(&d);
        assert_eq!(parse_descriptor(&v).unwrap(), d);
        let u =
            parse_descriptor(&json!({"bounded_torsion": [{"q": 3, "k": "unbounded", "mult": "countable"}]}))
                .unwrap();
        assert_eq!(u.bounded_torsion[0].k, Exponent::Unbounded);
    }

    #[test]
    fn big_integers_as_strings() {
        let big = "123456789012345678901234567890";
        assert_eq!(int_json(&parse_int(&json!(big)).unwrap()), json!(big));
        assert_eq!(int_json(&parse_int(&json!("-7")).unwrap()), json!(-7));
    }

    #[test]
    fn refutation_request() {
        let (family, bound) = parse_refutation_request(&json!({
            "p": 5, "k": 2, "mode": "additive",
            "shifts": [{"num": [0]}, {"p": 5, "num": [0, 1], "den": [1]}],
            "degree_bound": 6
        }))
        .unwrap();
        assert_eq!((family.shifts().len(), bound), (2, 6));
        let bad = parse_refutation_request(&json!({
            "p": 5, "k": 2, "mode": "multiplicative", "shifts": [{"num": [0]}]
        }));
        assert!(matches!(bad, Err(Error::BadShift(_))));
    }
}
