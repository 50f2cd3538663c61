use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

/// Golden reports: file stem and arguments after the program name.
const GOLDEN: &[(&str, &[&str])] = &[
    ("slc_char2_cusp_plus_xyz", &["slc", "--char", "2", "--poly", "x^2+y^3+x*y*z"]),
    ("mld_q_cusp", &["mld", "--char", "0", "--poly", "x^2+y^3"]),
    ("classify_e8_char7", &["classify", "--char", "7", "--poly", "x^2+y^3+z^5"]),
    ("classify_unit", &["classify", "--char", "0", "--poly", "1+x"]),
    ("classify_fermat_cubic", &["classify", "--char", "0", "--poly", "x^3+y^3+z^3"]),
    ("classify_extension_char5", &["classify", "--char", "5", "--poly", "x^2+y^3+z^6"]),
    ("slc_normal_crossing", &["slc", "--char", "5", "--poly", "x*y*z"]),
    ("slc_double_plane", &["slc", "--char", "0", "--poly", "x^2"]),
    ("slc_tacnode_cylinder", &["slc", "--char", "3", "--poly", "x^2+y^4"]),
    ("bounds_q_cusp", &["bounds", "--char", "0", "--poly", "x^2+y^3"]),
    ("fpure_char3", &["fpure", "--char", "3", "--poly", "x^2+y^2*z^2"]),
    ("jet_profile_xy", &["jet-profile", "--char", "7", "--poly", "x*y", "--m", "3"]),
    ("error_not_prime", &["mld", "--char", "4", "--poly", "x"]),
    ("error_irrational_root", &["mld", "--char", "0", "--poly", "x^2+y^3+z^6"]),
];

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("slc").chain(args.iter().copied());
    let code = slc::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn report(args: &[&str]) -> Value {
    serde_json::from_str(&run(args).1).unwrap()
}

#[test]
fn golden_reports_are_reproduced() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, args) in GOLDEN {
        let (_, out, _) = run(args);
        let path = golden_path(name);
        if update {
            std::fs::write(&path, &out).unwrap();
        }
        let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(out, expected, "{name} drifted; rerun with UPDATE_GOLDEN=1 after checking the diff");
    }
}

#[test]
fn golden_reports_verify() {
    for (name, _) in GOLDEN {
        let path = golden_path(name);
        let (code, out, err) = run(&["verify", path.to_str().unwrap()]);
        assert_eq!((code, out.as_str()), (0, "consistent\n"), "{name}: {err}");
    }
}

#[test]
fn verify_rejects_tampered_reports() {
    let mut r = report(&["slc", "--char", "2", "--poly", "x^2+y^3+x*y*z"]);
    r["verdict"]["mld"] = Value::from(1);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tampered.json");
    std::fs::write(&path, r.to_string()).unwrap();
    assert_eq!(run(&["verify", path.to_str().unwrap()]).0, 1);

    let mut r = report(&["mld", "--char", "0", "--poly", "x^2+y^3"]);
    r["verdict"]["witness"]["a"] = Value::from(0);
    std::fs::write(&path, r.to_string()).unwrap();
    assert_eq!(run(&["verify", path.to_str().unwrap()]).0, 1);

    let mut r = report(&["jet-profile", "--char", "7", "--poly", "x*y"]);
    r["verdict"]["entries"][0]["value"] = Value::from(5);
    std::fs::write(&path, r.to_string()).unwrap();
    assert_eq!(run(&["verify", path.to_str().unwrap()]).0, 1);

    std::fs::write(&path, "{\"input\": 3}").unwrap();
    assert_eq!(run(&["verify", path.to_str().unwrap()]).0, 2);
    assert_eq!(run(&["verify", dir.path().join("missing.json").to_str().unwrap()]).0, 2);
}

#[test]
fn documented_examples() {
    let r = report(&["slc", "--char", "2", "--poly", "x^2+y^3+x*y*z"]);
    assert_eq!(r["verdict"]["slc"], "true");
    assert_eq!(r["verdict"]["mld"], 0);
    assert_eq!(r["verdict"]["certificates"][0]["kind"], "fedder");

    let r = report(&["mld", "--char", "0", "--poly", "x^2+y^3"]);
    assert_eq!(r["verdict"]["mld"], "-inf");
    assert_eq!(r["verdict"]["witness"]["weight"], serde_json::json!([21, 14, 6]));
    assert_eq!(r["verdict"]["witness"]["a"], -1);

    let r = report(&["jet-profile", "--char", "7", "--poly", "x*y", "--m", "3"]);
    let pairs: Vec<(u64, i64)> = r["verdict"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["m"].as_u64().unwrap(), e["value"].as_i64().unwrap()))
        .collect();
    assert_eq!(pairs, [(1, 2), (2, 1), (3, 1)]);

    let r = report(&["bounds", "--char", "0", "--poly", "x^2+y^3"]);
    assert_eq!(r["verdict"]["bounds"]["k_e"], 40);
    assert_eq!(r["verdict"]["bounds"]["jet_level"], 41);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).0;
    assert_eq!(code(&["classify", "--char", "7", "--poly", "x^2+y^3+z^5"]), 0);
    assert_eq!(code(&["slc", "--char", "3", "--poly", "x^2+y^4"]), 0);
    assert_eq!(code(&["mld", "--char", "0", "--poly", "x^2+y^3"]), 0);
    assert_eq!(code(&["mld", "--char", "0", "--poly", "x^^2"]), 2);
    assert_eq!(code(&["mld", "--char", "3", "--poly", "x/3"]), 2);
    assert_eq!(code(&["mld", "--char", "6", "--poly", "x"]), 2);
    assert_eq!(code(&["mld", "--char", "3", "--poly", "0"]), 2);
    assert_eq!(code(&["slc", "--char", "3", "--poly", "1+x"]), 2);
    assert_eq!(code(&["fpure", "--char", "0", "--poly", "x^2"]), 2);
    assert_eq!(code(&["mld", "--poly", "x"]), 2);
    assert_eq!(code(&["mld", "--char", "0", "--poly", "x^2+y^4+2*z^4"]), 3);
    assert_eq!(code(&["fpure", "--char", "1009", "--poly", "x^2+y^3+z^5"]), 4);
}

#[test]
fn errors_go_to_both_streams() {
    let (code, out, err) = run(&["mld", "--char", "0", "--poly", "x^2+y^3+z^6"]);
    assert_eq!(code, 3);
    let r: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(r["error"]["kind"], "needs_algebraic_extension");
    assert!(r.get("verdict").is_none());
    assert!(err.contains(r["error"]["message"].as_str().unwrap()));
}

#[test]
fn help_lists_the_grammar() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("factor :=") && out.contains("Exit codes"));
}

#[test]
fn timing_is_opt_in() {
    let args = ["mld", "--char", "0", "--poly", "x^2+y^3"];
    assert!(report(&args)["timing_ms"].is_null());
    let mut timed = args.to_vec();
    timed.push("--timing");
    assert!(report(&timed)["timing_ms"].is_u64());
}

#[test]
fn pretty_output_is_the_same_report() {
    let args = ["classify", "--char", "5", "--poly", "x*y*z"];
    let mut pretty = args.to_vec();
    pretty.push("--pretty");
    assert_eq!(report(&args), report(&pretty));
}

#[test]
fn binary_output_is_deterministic() {
    let bin = env!("CARGO_BIN_EXE_slc");
    let args = ["classify", "--char", "5", "--poly", "x^2+y^3+z^6"];
    let a = Command::new(bin).args(args).output().unwrap();
    let b = Command::new(bin).args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let mut child = Command::new(bin)
        .args(["verify", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(&a.stdout).unwrap();
    let v = child.wait_with_output().unwrap();
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(v.stdout, b"consistent\n");
}
