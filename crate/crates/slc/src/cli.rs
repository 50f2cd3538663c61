//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use slc_core::algebra::parse_poly;
use slc_core::classifier::{
    check_conjecture_bounds, classify_mld_with, classify_slc_with, ClassifyOptions, Verdict,
};
use slc_core::frobenius::{fedder_is_fpure, lc_from_fpure};
use slc_core::jets::{mld_profile, DEFAULT_BUDGET};
use slc_core::{Error, Field, TriPoly};

use crate::codec::{
    BoundsJson, BoundsPayload, ErrorJson, FieldJson, FpureJson, OptionsJson, ProfileJson, Report,
    VerdictJson,
};
use crate::verify::verify_report;

const GRAMMAR: &str = "\
Polynomial grammar:
  expr   := ['+'|'-'] term (('+'|'-') term)*
  term   := factor ('*' factor)*
  factor := (number ['/' number] | 'x' | 'y' | 'z' | '(' expr ')') ['^' number]
Multiplication is explicit; whitespace is ignored.

Exit codes:
  0  verdict emitted (including slc false and mld -inf)
  1  verify found an inconsistency
  2  input error
  3  an irrational algebraic root is needed over Q
  4  computation budget exceeded (Groebner basis or Fedder expansion)";

#[derive(Parser, Debug)]
#[command(name = "slc", version, about = "Exact mld and semi-log canonicity of surface hypersurface singularities", after_help = GRAMMAR)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full verdict: mld, slc status (for non-units) and certificates.
    Classify(PolyArgs),
    /// Same as classify, restricted to germs in the maximal ideal.
    Slc(PolyArgs),
    /// The mld without the slc status.
    Mld(PolyArgs),
    /// Fedder's F-purity test for the input itself.
    Fpure(PolyArgs),
    /// Jet-scheme contact profile at levels 1..=m.
    JetProfile {
        #[command(flatten)]
        args: PolyArgs,
        #[arg(long, default_value_t = 3)]
        m: usize,
    },
    /// Classification plus the witness bookkeeping against the double-point bounds.
    Bounds(PolyArgs),
    /// Replays a report and exits 0 iff it is consistent.
    Verify {
        /// Report file, or `-` for standard input.
        report: PathBuf,
    },
}

#[derive(Args, Debug)]
struct PolyArgs {
    /// Characteristic: 0 for Q, otherwise a prime.
    #[arg(long = "char")]
    characteristic: u64,
    #[arg(long)]
    poly: String,
    /// Largest weight entry for the auxiliary witness search.
    #[arg(long, default_value_t = 8)]
    max_weight: u64,
    /// Forbid algebraic extensions over Q. This is always the behaviour over
    /// Q; the flag only makes it explicit.
    #[arg(long)]
    strict_q: bool,
    /// Compact JSON output (the default).
    #[arg(long, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON output.
    #[arg(long)]
    pretty: bool,
    /// Record wall-clock time in `timing_ms`.
    #[arg(long)]
    timing: bool,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NeedsAlgebraicExtension { .. } => 3,
        Error::OracleOverflow { .. } | Error::ComputationBudget { .. } => 4,
        _ => 2,
    }
}

pub(crate) fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::SyntaxError { .. } => "syntax_error",
        Error::CoefficientError { .. } => "coefficient_error",
        Error::NonLocalSubstitution { .. } => "non_local_substitution",
        Error::ZeroPolynomial => "zero_polynomial",
        Error::NotInMaximalIdeal => "not_in_maximal_ideal",
        Error::NeedsAlgebraicExtension { .. } => "needs_algebraic_extension",
        Error::CharZero => "char_zero",
        Error::OracleOverflow { .. } => "oracle_overflow",
        Error::ComputationBudget { .. } => "computation_budget",
        Error::NotPrime(_) => "not_prime",
        Error::InvalidInput(_) => "invalid_input",
    }
}

pub fn to_json(report: &Report, pretty: bool) -> String {
    let mut s = if pretty { serde_json::to_string_pretty(report) } else { serde_json::to_string(report) }
        .expect("reports serialize");
    s.push('\n');
    s
}

/// Runs one invocation; returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let (name, args, m) = match &cli.command {
        Command::Verify { report } => return run_verify(report, out, err),
        Command::Classify(a) => ("classify", a, 0),
        Command::Slc(a) => ("slc", a, 0),
        Command::Mld(a) => ("mld", a, 0),
        Command::Fpure(a) => ("fpure", a, 0),
        Command::Bounds(a) => ("bounds", a, 0),
        Command::JetProfile { args, m } => ("jet-profile", args, *m),
    };
    let start = Instant::now();
    let result = Field::with_characteristic(args.characteristic).and_then(|k| {
        let f = parse_poly(&args.poly, &k)?;
        compute(name, &f, args.max_weight, m).map(|(field, payload)| (k, field, payload))
    });
    let options = OptionsJson { characteristic: args.characteristic, max_weight: args.max_weight, m: (name == "jet-profile").then_some(m) };
    let timing_ms = args.timing.then(|| start.elapsed().as_millis() as u64);
    let (report, code) = match result {
        Ok((_, field, payload)) => (
            Report { input: args.poly.clone(), field: Some(field), command: name.into(), options, verdict: Some(payload), error: None, timing_ms },
            0,
        ),
        Err(e) => {
            let _ = writeln!(err, "slc {name}: {e}");
            let field = Field::with_characteristic(args.characteristic).ok().map(|k| FieldJson::encode(&k));
            let error = ErrorJson { kind: error_kind(&e).into(), message: e.to_string() };
            (Report { input: args.poly.clone(), field, command: name.into(), options, verdict: None, error: Some(error), timing_ms }, exit_code(&e))
        }
    };
    let _ = out.write_all(to_json(&report, args.pretty).as_bytes());
    code
}

fn verdict_payload(v: &Verdict) -> serde_json::Value {
    serde_json::to_value(VerdictJson::encode(v)).expect("verdicts serialize")
}

/// Runs a non-verify command on a parsed input; returns the payload and the
/// field it lives over.
pub(crate) fn compute(name: &str, f: &TriPoly, max_weight: u64, m: usize) -> Result<(FieldJson, serde_json::Value), Error> {
    let opts = ClassifyOptions { max_weight };
    let field_of = |v: &Verdict| FieldJson::encode(v.transformed.field());
    match name {
        "classify" => {
            let v = if f.in_maximal_ideal() { classify_slc_with(f, &opts)? } else { classify_mld_with(f, &opts)? };
            Ok((field_of(&v), verdict_payload(&v)))
        }
        "slc" => {
            let v = classify_slc_with(f, &opts)?;
            Ok((field_of(&v), verdict_payload(&v)))
        }
        "mld" => {
            let v = classify_mld_with(f, &opts)?;
            Ok((field_of(&v), verdict_payload(&v)))
        }
        "bounds" => {
            let v = classify_mld_with(f, &opts)?;
            let payload = BoundsPayload {
                classification: VerdictJson::encode(&v),
                bounds: check_conjecture_bounds(&v).as_ref().map(BoundsJson::encode),
            };
            Ok((field_of(&v), serde_json::to_value(payload).expect("reports serialize")))
        }
        "fpure" => {
            let c = fedder_is_fpure(f)?;
            let payload = FpureJson {
                is_fpure: c.is_fpure,
                p: c.p,
                witness_monomial: c.witness_monomial.map(|m| m.0),
                lc_certified: lc_from_fpure(&c),
            };
            Ok((FieldJson::encode(f.field()), serde_json::to_value(payload).expect("reports serialize")))
        }
        "jet-profile" => {
            let profile = mld_profile(f, m, DEFAULT_BUDGET)?;
            let mld = classify_mld_with(f, &opts).ok().map(|v| v.mld);
            let payload = ProfileJson::encode(&profile, mld);
            Ok((FieldJson::encode(f.field()), serde_json::to_value(payload).expect("reports serialize")))
        }
        _ => unreachable!("unknown command {name}"),
    }
}

fn run_verify(path: &PathBuf, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(path)
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "slc verify: cannot read {}: {e}", path.display());
            return 2;
        }
    };
    match verify_report(&text) {
        Ok(problems) if problems.is_empty() => {
            let _ = writeln!(out, "consistent");
            0
        }
        Ok(problems) => {
            for p in problems {
                let _ = writeln!(out, "inconsistent: {p}");
            }
            1
        }
        Err(e) => {
            let _ = writeln!(err, "slc verify: {e}");
            2
        }
    }
}
