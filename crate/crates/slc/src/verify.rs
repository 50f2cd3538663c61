//! Replay of a report: every payload is recomputed from the input, and
//! verdicts are additionally checked step by step against their certificates.

use slc_core::algebra::parse_poly;
use slc_core::classifier::{self, check_conjecture_bounds, locally_reduced, SlcStatus, Verdict};
use slc_core::Field;

use crate::cli::{compute, error_kind};
use crate::codec::{BoundsJson, BoundsPayload, DecodeError, Report, VerdictJson};

/// Problems found in a report; empty means consistent.
pub fn verify_report(text: &str) -> Result<Vec<String>, DecodeError> {
    let report: Report = serde_json::from_str(text).map_err(|e| DecodeError(e.to_string()))?;
    let k = match Field::with_characteristic(report.options.characteristic) {
        Ok(k) => k,
        Err(e) => return verify_error(&report, error_kind(&e)),
    };
    let f = match parse_poly(&report.input, &k) {
        Ok(f) => f,
        Err(e) => return verify_error(&report, error_kind(&e)),
    };
    let m = report.options.m.unwrap_or(0);
    if report.command == "jet-profile" && report.options.m.is_none() {
        return Err(DecodeError("jet-profile report without a level".into()));
    }
    if !matches!(report.command.as_str(), "classify" | "slc" | "mld" | "bounds" | "fpure" | "jet-profile") {
        return Err(DecodeError(format!("unknown command {}", report.command)));
    }
    let recomputed = compute(&report.command, &f, report.options.max_weight, m);
    let payload = match (&report.verdict, &report.error, recomputed) {
        (Some(p), None, Ok((field, q))) => {
            let mut bad = Vec::new();
            if report.field.as_ref() != Some(&field) {
                bad.push("field differs from the recomputed one".to_string());
            }
            if *p != q {
                bad.push("payload differs from the recomputed one".to_string());
            }
            (p.clone(), bad)
        }
        (None, Some(e), Err(r)) if e.kind == error_kind(&r) => return Ok(Vec::new()),
        (None, Some(e), Err(r)) => {
            return Ok(vec![format!("error {} recomputes as {}", e.kind, error_kind(&r))]);
        }
        (None, Some(e), Ok(_)) => return Ok(vec![format!("error {} does not reproduce", e.kind)]),
        (Some(_), None, Err(r)) => return Ok(vec![format!("recomputation fails: {r}")]),
        _ => return Err(DecodeError("a report carries exactly one of verdict and error".into())),
    };
    let (p, mut bad) = payload;
    let field = match &report.field {
        Some(fj) => fj.decode()?,
        None => return Err(DecodeError("verdict without a field".into())),
    };
    let as_err = |e: serde_json::Error| DecodeError(e.to_string());
    match report.command.as_str() {
        "classify" | "slc" | "mld" => {
            let v = serde_json::from_value::<VerdictJson>(p).map_err(as_err)?.decode(&f, &field)?;
            bad.extend(check_verdict(&report.command, &v));
        }
        "bounds" => {
            let b = serde_json::from_value::<BoundsPayload>(p).map_err(as_err)?;
            let v = b.classification.decode(&f, &field)?;
            bad.extend(check_verdict("mld", &v));
            if check_conjecture_bounds(&v).as_ref().map(BoundsJson::encode) != b.bounds {
                bad.push("bounds do not follow from the witness".to_string());
            }
        }
        _ => {}
    }
    Ok(bad)
}

fn check_verdict(command: &str, v: &Verdict) -> Vec<String> {
    let mut bad = classifier::verify(v);
    let wants_slc = command == "slc" || (command == "classify" && v.input.in_maximal_ideal());
    match (wants_slc, v.slc) {
        (false, None) => {}
        (false, Some(_)) => bad.push("slc status on a verdict that should not carry one".to_string()),
        (true, None) => bad.push("missing slc status".to_string()),
        (true, Some(s)) => {
            let expected = if !locally_reduced(&v.input) {
                SlcStatus::NotApplicable
            } else if v.mld.is_nonnegative() {
                SlcStatus::True
            } else {
                SlcStatus::False
            };
            if s != expected {
                bad.push(format!("slc status {} should be {}", s.name(), expected.name()));
            }
        }
    }
    bad
}

fn verify_error(report: &Report, kind: &str) -> Result<Vec<String>, DecodeError> {
    match &report.error {
        Some(e) if e.kind == kind => Ok(Vec::new()),
        Some(e) => Ok(vec![format!("error {} recomputes as {kind}", e.kind)]),
        None => Ok(vec![format!("the input fails with {kind}")]),
    }
}
