use std::process::{Command, Output};

use qplane::report::{CrosscheckStatus, Report};

fn qplane(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qplane")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Report, String, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = qplane(&all);
    let text = String::from_utf8(out.stdout).unwrap();
    let report = Report::from_json(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (report, text, out.status.code().unwrap())
}

#[test]
fn verify_passes_on_every_preset() {
    for preset in ["calc2a", "calc2b", "calc3a", "calc3b", "outer"] {
        let (report, _, code) = json(&["verify", preset]);
        assert_eq!(code, 0, "{preset}");
        assert_eq!(report.passed, Some(true));
        assert!(!report.checks.is_empty());
    }
}

#[test]
fn verify_json_is_byte_identical_across_runs() {
    let (_, first, _) = json(&["verify", "calc3a", "--alpha", "2/3", "--q", "5/2"]);
    let (_, second, _) = json(&["verify", "calc3a", "--alpha", "2/3", "--q", "5/2"]);
    assert_eq!(first, second);
}

#[test]
fn json_reports_round_trip() {
    let commands: &[&[&str]] = &[
        &["list-presets"],
        &["eval", "x*dy", "--preset", "calc2b"],
        &["verify", "outer"],
        &["structure", "calc3b", "--alpha", "-3/7"],
        &["connection", "calc2b", "--solve"],
        &["limit", "outer"],
    ];
    for args in commands {
        let (report, text, code) = json(args);
        assert_eq!(code, 0, "{args:?}");
        let again = serde_json::to_string_pretty(&report).unwrap();
        assert_eq!(again.trim(), text.trim());
    }
}

#[test]
fn structure_of_calc3a_carries_d() {
    let (report, _, _) = json(&["structure", "calc3a", "--alpha", "1"]);
    let d = report.structure.unwrap().d.unwrap();
    assert_eq!(d["3,1,2"], "2*(q - 1)^-1");
    assert_eq!(d["3,2,1"], "2*q*(q - 1)^-1");
}

#[test]
fn limit_of_calc2b_has_the_stated_curvature() {
    let (report, text, _) = json(&["limit", "calc2b"]);
    assert!(text.contains("\"K\": \"x^-4 + x^-4*y^4\""));
    let limit = report.limit.unwrap();
    assert_eq!(limit.crosscheck.status, CrosscheckStatus::Match);
}

#[test]
fn connection_reports_properties_without_failing() {
    let (report, _, code) = json(&["connection", "calc3a"]);
    assert_eq!(code, 0);
    let checks = report.connection.unwrap().checks;
    assert!(checks.sigma);
    assert!(!checks.torsion_free);
    assert!(checks.torsion_free_with_offset);
}

#[test]
fn eval_print_parse_is_identity() {
    for input in ["y^-1*x^-1", "(x + q*y)^2", "x*dy - q*dy*x", "1/2*t1*t2 + t2*t1"] {
        let (report, _, _) = json(&["eval", input, "--preset", "calc2a"]);
        let printed = report.eval.unwrap().value;
        let (again, _, _) = json(&["eval", &printed, "--preset", "calc2a"]);
        assert_eq!(again.eval.unwrap().value, printed, "{input}");
    }
}

#[test]
fn exit_codes_distinguish_failures() {
    let code = |args: &[&str]| qplane(args).status.code().unwrap();
    assert_eq!(code(&["eval", "x*(y"]), 2);
    assert_eq!(code(&["eval", "t1"]), 2);
    assert_eq!(code(&["verify", "calc9"]), 3);
    assert_eq!(code(&["verify", "calc3a", "--alpha", "0"]), 3);
    assert_eq!(code(&["verify", "calc2a", "--alpha", "1"]), 3);
    assert_eq!(code(&["limit", "calc3b"]), 3);
    assert_eq!(code(&["verify", "calc2a", "--check", "wedge-relations"]), 0);
}

#[test]
fn text_and_json_carry_the_same_checks() {
    let text = String::from_utf8(qplane(&["verify", "calc2a"]).stdout).unwrap();
    let (report, _, _) = json(&["verify", "calc2a"]);
    for c in &report.checks {
        assert!(text.contains(&c.id), "{}", c.id);
    }
}
