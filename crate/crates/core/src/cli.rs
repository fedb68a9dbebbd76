//! The `coverlab` command line.
//!
//! Exit codes: 0 verified (or predicate true), 1 refuted (or predicate
//! false), 2 inconclusive within the given bounds, 3 usage or input error,
//! 4 enumeration bound exceeded.

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::covers::{
    construct_subgroup_cover, minimal_subgroup_cover, minimal_subsemigroup_cover, verify_proper_union,
    CoverMode, CoverPart, CoverProblem,
};
use crate::descriptors::Predicate;
use crate::error::{Error, Result};
use crate::groups::{FiniteAbelianGroup, Subgroup, DEFAULT_BOUND};
use crate::lattices::{neumann_certificate, refute_lattice_cover_search, verify_lattice_cover_exact};
use crate::schema;
use crate::witnesses::{
    parse_rational, random_polynomial, refute_coset_cover, unit_exponents, verify_refutation,
    zx_closure_check, zx_membership, IntPolynomial, RefutationOutcome, UnitPart, ZxPart,
};

pub const EXIT_VERIFIED: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_BOUND: i32 = 4;

/// Version of the report layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Seed used by randomized suites when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser, Debug)]
#[command(
    name = "coverlab",
    version,
    about = "Exact checks for unions of subgroups, cosets and subsemigroups"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    /// Largest finite group that is enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    bound: u64,
    /// Include wall-clock time in the report (breaks byte-identical output).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GroupAction {
    Verify,
    Minimal,
    Construct,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SearchMode {
    Subgroups,
    Subsemigroups,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a structural predicate on a group descriptor.
    DescriptorCheck {
        #[arg(long, value_parser = ["artinian", "theorem1", "corollary1", "theorem2", "corollary2"])]
        predicate: String,
        /// Descriptor JSON file, or `-` for standard input.
        file: PathBuf,
        /// Upper bound `m` for the Artinian shape check.
        #[arg(long)]
        m_bound: Option<u64>,
    },
    /// Verify a cover of a finite abelian group, or search for one.
    GroupCover {
        #[arg(value_enum)]
        action: GroupAction,
        /// Cover problem JSON (`verify`) or group JSON (`minimal`, `construct`).
        file: PathBuf,
        /// Kind of parts used by `minimal`.
        #[arg(long, value_enum, default_value_t = SearchMode::Subgroups)]
        mode: SearchMode,
    },
    /// Decide whether lattice cosets cover Zⁿ.
    LatticeVerify {
        file: PathBuf,
        /// Radius of the search box used when some coset has infinite index.
        #[arg(long = "box", default_value_t = 4)]
        box_radius: u64,
    },
    /// Check the three-subring cover of Z[x] on random polynomials.
    ZxVerify {
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Classify nonzero rationals into the unit subsemigroups M1, M2, M3.
    UnitsClassify {
        /// Rationals such as `12` or `-2/3`. Everything after the first value
        /// is read as a value, so options go before it.
        #[arg(required = true, allow_hyphen_values = true)]
        values: Vec<String>,
    },
    /// Refute a finite coset cover of F_p(τ).
    FieldRefute { file: PathBuf },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::DescriptorCheck { .. } => "descriptor-check",
            Command::GroupCover { .. } => "group-cover",
            Command::LatticeVerify { .. } => "lattice-verify",
            Command::ZxVerify { .. } => "zx-verify",
            Command::UnitsClassify { .. } => "units-classify",
            Command::FieldRefute { .. } => "field-refute",
        }
    }
}

/// A verdict before it is wrapped into a report.
struct Outcome {
    exit: i32,
    statement: String,
    summary: String,
    seed: Option<u64>,
    result: Value,
}

/// Runs the command line with output on the process's stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut io::stdout().lock(), &mut io::stderr().lock())
}

/// Runs the command line, writing the report to `out` and diagnostics to
/// `err`. Returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_VERIFIED };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let start = Instant::now();
    let outcome = match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "coverlab: error: {e}");
            return exit_code_for(&e);
        }
    };
    let elapsed = cli.timing.then(|| start.elapsed().as_millis() as u64);
    let rendered = emit_report(cli.command.name(), &outcome, elapsed, cli.format);
    if out.write_all(rendered.as_bytes()).is_err() {
        return EXIT_INPUT;
    }
    outcome.exit
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::BoundExceeded { .. } => EXIT_BOUND,
        _ => EXIT_INPUT,
    }
}

fn emit_report(command: &str, o: &Outcome, elapsed_ms: Option<u64>, format: Format) -> String {
    match format {
        Format::Json => {
            let mut report = json!({
                "command": command,
                "exit_code": o.exit,
                "result": o.result,
                "schema_version": SCHEMA_VERSION,
                "seed": o.seed,
                "statement": o.statement,
                "summary": o.summary,
                "tool_version": env!("CARGO_PKG_VERSION"),
            });
            if let Some(ms) = elapsed_ms {
                report["elapsed_ms"] = json!(ms);
            }
            let mut s = serde_json::to_string_pretty(&report).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = format!("{}: {}\n", o.statement, o.summary);
            flatten("", &o.result, &mut s);
            if let Some(seed) = o.seed {
                s.push_str(&format!("seed: {seed}\n"));
            }
            if let Some(ms) = elapsed_ms {
                s.push_str(&format!("elapsed_ms: {ms}\n"));
            }
            s
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(xs) if xs.iter().any(|x| x.is_object()) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        _ => out.push_str(&format!("  {prefix}: {v}\n")),
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::InvalidInput(format!("reading standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("reading {}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("malformed JSON: {e}")))
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::DescriptorCheck {
            predicate,
            file,
            m_bound,
        } => descriptor_check(predicate, file, *m_bound),
        Command::GroupCover { action, file, mode } => match action {
            GroupAction::Verify => group_cover_verify(file, cli.bound),
            GroupAction::Minimal => group_cover_search(file, cli.bound, Some(*mode)),
            GroupAction::Construct => group_cover_search(file, cli.bound, None),
        },
        Command::LatticeVerify { file, box_radius } => lattice_verify(file, *box_radius),
        Command::ZxVerify { samples, seed } => zx_verify(*samples, *seed),
        Command::UnitsClassify { values } => units_classify(values),
        Command::FieldRefute { file } => field_refute(file),
    }
}

fn verdict_exit(ok: bool) -> i32 {
    if ok {
        EXIT_VERIFIED
    } else {
        EXIT_REFUTED
    }
}

fn descriptor_check(predicate: &str, file: &Path, m_bound: Option<u64>) -> Result<Outcome> {
    let d = schema::parse_descriptor(&read_json(file)?)?;
    let p: Predicate = predicate.parse()?;
    let v = p.evaluate(&d, m_bound)?;
    Ok(Outcome {
        exit: verdict_exit(v.value),
        statement: v.statement.to_string(),
        summary: format!("{} [{}] {}", v.value, v.clause, v.reason),
        seed: None,
        result: json!({
            "predicate": predicate,
            "value": v.value,
            "clause": v.clause,
            "reason": v.reason,
            "descriptor": schema::descriptor_json(&d),
        }),
    })
}

fn group_cover_verify(file: &Path, bound: u64) -> Result<Outcome> {
    let problem = schema::parse_cover_problem(&read_json(file)?, bound)?;
    let report = verify_proper_union(&problem, bound)?;
    let mut result = schema::cover_report_json(&report, schema::element_json);
    result["group"] = schema::group_json(problem.group());
    result["mode"] = json!(problem.mode().name());
    result["certificate"] = json!({});
    Ok(Outcome {
        exit: verdict_exit(report.proper),
        statement: "Theorem 1 (finite group cover)".into(),
        summary: cover_summary(report.covered, report.proper),
        seed: None,
        result,
    })
}

fn cover_summary(covered: bool, proper: bool) -> String {
    match (covered, proper) {
        (true, true) => "proper union".into(),
        (true, false) => "covered but redundant".into(),
        _ => "not covered".into(),
    }
}

/// `minimal` when `mode` is given, `construct` otherwise.
fn group_cover_search(file: &Path, bound: u64, mode: Option<SearchMode>) -> Result<Outcome> {
    let value = read_json(file)?;
    let g = schema::parse_group(&value)?;
    let (cover, mode_name) = match mode {
        Some(SearchMode::Subgroups) => (minimal_subgroup_cover(&g, bound)?, "subgroups"),
        Some(SearchMode::Subsemigroups) => (minimal_subsemigroup_cover(&g, bound)?, "subsemigroups"),
        None => (construct_subgroup_cover(&g, bound)?, "subgroups"),
    };
    let mut result = Map::new();
    result.insert("group".into(), schema::group_json(&g));
    result.insert("mode".into(), json!(mode_name));
    let exit = match &cover {
        Some(parts) => {
            let problem = CoverProblem::new(
                g.clone(),
                CoverMode::Subgroups,
                parts.iter().cloned().map(CoverPart::Subgroup).collect(),
            )?;
            let report = verify_proper_union(&problem, bound)?;
            let Value::Object(r) = schema::cover_report_json(&report, schema::element_json) else {
                unreachable!("reports are objects")
            };
            result.extend(r);
            result.insert("size".into(), json!(parts.len()));
            result.insert(
                "parts".into(),
                Value::Array(parts.iter().map(schema::subgroup_json).collect()),
            );
            result.insert("certificate".into(), json!({}));
            verdict_exit(report.proper)
        }
        None => {
            result.insert("covered".into(), json!(false));
            result.insert("proper".into(), json!(false));
            result.insert("size".into(), Value::Null);
            result.insert("parts".into(), json!([]));
            result.insert("witnesses".into(), json!({}));
            result.insert("uncovered_witness".into(), Value::Null);
            result.insert(
                "certificate".into(),
                json!({
                    "kind": "generator",
                    "element": schema::element_json(&cyclic_generator(&g)?),
                }),
            );
            EXIT_REFUTED
        }
    };
    let summary = match &cover {
        Some(parts) => format!("proper union of {} parts", parts.len()),
        None => "no cover: the group is cyclic and a generator lies in no proper part".into(),
    };
    Ok(Outcome {
        exit,
        statement: "Theorem 1 (finite group cover)".into(),
        summary,
        seed: None,
        result: Value::Object(result),
    })
}

/// A generator of a cyclic group, checked by the subgroup it generates.
fn cyclic_generator(g: &FiniteAbelianGroup) -> Result<crate::groups::GroupElement> {
    let x = if g.rank() == 0 { g.zero() } else { g.element(&[1])? };
    let h = Subgroup::generated_by(g, std::slice::from_ref(&x), DEFAULT_BOUND.max(1))?;
    if h.is_proper() {
        return Err(Error::PreconditionFailed(format!("{g} is not cyclic")));
    }
    Ok(x)
}

fn lattice_verify(file: &Path, box_radius: u64) -> Result<Outcome> {
    let cover = schema::parse_lattice_cover(&read_json(file)?)?;
    let certificate = schema::neumann_json(&neumann_certificate(&cover, box_radius)?);
    match verify_lattice_cover_exact(&cover) {
        Ok(report) => {
            let mut result = schema::cover_report_json(&report, |v| schema::int_vec_json(v));
            result["method"] = json!("residues");
            result["certificate"] = certificate;
            Ok(Outcome {
                exit: verdict_exit(report.proper),
                statement: "Theorem 4 (lattice cover)".into(),
                summary: cover_summary(report.covered, report.proper),
                seed: None,
                result,
            })
        }
        Err(Error::InfiniteIndexMember { .. }) => {
            let witness = refute_lattice_cover_search(&cover, box_radius)?;
            let (exit, summary) = match &witness {
                Some(_) => (EXIT_REFUTED, "not covered".to_string()),
                None => (
                    EXIT_INCONCLUSIVE,
                    format!("no uncovered point in the box of radius {box_radius}"),
                ),
            };
            let covered = if witness.is_some() {
                json!(false)
            } else {
                Value::Null
            };
            Ok(Outcome {
                exit,
                statement: "Lemma 1 (finite-index certificate)".into(),
                summary,
                seed: None,
                result: json!({
                    "method": "search",
                    "box_radius": box_radius,
                    "covered": covered,
                    "proper": if witness.is_some() { json!(false) } else { Value::Null },
                    "witnesses": {},
                    "uncovered_witness": witness.as_deref().map(schema::int_vec_json),
                    "certificate": certificate,
                }),
            })
        }
        Err(e) => Err(e),
    }
}

fn zx_verify(samples: u64, seed: u64) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut first_uncovered = None;
    let mut uncovered = 0u64;
    for _ in 0..samples {
        let f = random_polynomial(&mut rng);
        if zx_membership(&f).is_empty() {
            uncovered += 1;
            first_uncovered.get_or_insert(f);
        }
    }
    let mut closure = Map::new();
    let mut violations = 0;
    for part in ZxPart::ALL {
        let report = zx_closure_check(part, samples.max(1), seed)?;
        let v = report.violation.map(|c| {
            violations += 1;
            json!({
                "op": c.op.name(),
                "f": schema::polynomial_json(&c.f),
                "g": schema::polynomial_json(&c.g),
            })
        });
        closure.insert(part.name().into(), json!({ "violation": v }));
    }
    let witnesses = [
        (ZxPart::S1, IntPolynomial::x()),
        (ZxPart::S2, IntPolynomial::from_i64(&[1, 1])),
        (ZxPart::S3, IntPolynomial::one()),
    ];
    let mut unique = true;
    let mut witness_json = Map::new();
    for (part, f) in &witnesses {
        let parts = zx_membership(f);
        unique &= parts == [*part];
        witness_json.insert(
            part.name().into(),
            json!({
                "element": schema::polynomial_json(f),
                "parts": parts.iter().map(|p| p.name()).collect::<Vec<_>>(),
            }),
        );
    }
    let ok = uncovered == 0 && violations == 0 && unique;
    Ok(Outcome {
        exit: verdict_exit(ok),
        statement: "Remark (Z[x] as a union of three subrings)".into(),
        summary: if ok {
            "proper union of S1, S2, S3".into()
        } else {
            "check failed".into()
        },
        seed: Some(seed),
        result: json!({
            "samples": samples,
            "covered": uncovered == 0,
            "proper": unique,
            "uncovered_count": uncovered,
            "uncovered_witness": first_uncovered.as_ref().map(schema::polynomial_json),
            "closure": closure,
            "witnesses": witness_json,
        }),
    })
}

fn units_classify(values: &[String]) -> Result<Outcome> {
    let mut rows = Vec::with_capacity(values.len());
    let mut all_covered = true;
    for s in values {
        let q = parse_rational(s)?;
        let e = unit_exponents(&q)?;
        let parts: Vec<UnitPart> = crate::witnesses::exponent_membership(e);
        all_covered &= !parts.is_empty();
        rows.push(json!({
            "q": q.to_string(),
            "exponents": [e.e1, e.e2],
            "parts": parts.iter().map(|p| p.name()).collect::<Vec<_>>(),
        }));
    }
    Ok(Outcome {
        exit: verdict_exit(all_covered),
        statement: "Theorem 4 (unit subsemigroups)".into(),
        summary: format!("{} units classified", rows.len()),
        seed: None,
        result: json!({ "units": rows }),
    })
}

fn field_refute(file: &Path) -> Result<Outcome> {
    let (family, degree_bound) = schema::parse_refutation_request(&read_json(file)?)?;
    let outcome = refute_coset_cover(&family, degree_bound)?;
    let (exit, summary, result) = match &outcome {
        RefutationOutcome::Refuted(cert) => {
            let verified = verify_refutation(&family, cert);
            (
                EXIT_REFUTED,
                format!("not a cover: {} lies in no coset", cert.element()),
                json!({
                    "outcome": "refuted",
                    "covered": false,
                    "verified": verified,
                    "height": cert.element().height(),
                    "certificate": schema::certificate_json(cert),
                }),
            )
        }
        RefutationOutcome::Inconclusive => (
            EXIT_INCONCLUSIVE,
            format!("no certificate up to degree {degree_bound}"),
            json!({ "outcome": "inconclusive", "covered": Value::Null, "certificate": {} }),
        ),
    };
    Ok(Outcome {
        exit,
        statement: "Theorem 3 (coset covers of a field)".into(),
        summary,
        seed: None,
        result,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(
            std::iter::once("coverlab").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn unknown_subcommand_is_a_usage_error() {
        assert_eq!(run_capture(&["frobnicate"]).0, EXIT_INPUT);
        assert_eq!(run_capture(&[]).0, EXIT_INPUT);
    }

    #[test]
    fn units_classify_generators() {
        let (code, out) = run_capture(&["units-classify", "2", "3", "6", "-2/3"]);
        assert_eq!(code, EXIT_VERIFIED);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["units"][2]["parts"], json!(["M3"]));
        assert_eq!(v["result"]["units"][3]["exponents"], json!([1, -1]));
        assert_eq!(run_capture(&["units-classify", "0"]).0, EXIT_INPUT);
    }

    #[test]
    fn zx_verify_is_deterministic() {
        let a = run_capture(&["zx-verify", "--samples", "50", "--seed", "3"]);
        let b = run_capture(&["zx-verify", "--samples", "50", "--seed", "3"]);
        assert_eq!(a, b);
        assert_eq!(a.0, EXIT_VERIFIED);
    }

    #[test]
    fn text_format_names_the_statement() {
        let (_, out) = run_capture(&["--format", "text", "units-classify", "12"]);
        assert!(out.starts_with("Theorem 4 (unit subsemigroups): "));
        assert!(out.contains("units.0.exponents: [2,1]"));
    }
}
