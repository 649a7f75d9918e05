use std::path::{Path, PathBuf};
use std::process::Command;

use plhomeo::cli::{
    run, CheckOutput, ClassifyEntry, Command as Cmd, Format, RunConfig, TransnumOutput,
};
use plhomeo::semiconj::ClassificationReport;
use plhomeo::witness::{CaseTag, WitnessReport};
use serde::de::DeserializeOwned;
use serde::Serialize;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn bin(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_plhomeo"))
        .args(args)
        .output()
        .unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

fn json_config(command: Cmd, name: &str) -> RunConfig {
    let mut c = RunConfig::new(command, fixture(name));
    c.format = Format::Json;
    c
}

/// Parses emitted JSON and checks that re-rendering gives the same bytes.
fn round_trip<T: Serialize + DeserializeOwned>(stdout: &str) -> T {
    let value: T = serde_json::from_str(stdout).unwrap();
    let mut again = serde_json::to_string_pretty(&value).unwrap();
    again.push('\n');
    assert_eq!(again, stdout);
    value
}

#[test]
fn classify_fixture() {
    let (out, _, code) = bin(&["classify", fixture("maps.pl").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("shift: orientation-preserving, Fix=∅, type (+)"));
    assert!(out.contains("dilation: orientation-preserving, Fix={0}, type (-,+)"));
    assert!(out.contains("g1: orientation-preserving, Fix={0, 1}, type (+,+,+)"));
    let out = run(&json_config(Cmd::Classify, "maps.pl"));
    let entries: Vec<ClassifyEntry> = round_trip(&out.stdout);
    assert_eq!(entries.len(), 8);
    assert!(entries
        .iter()
        .filter(|e| e.type_signature.is_none())
        .all(|e| e.note.is_some()));
}

#[test]
fn classify_reports_positions() {
    let dir = std::env::temp_dir().join(format!("plhomeo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.pl");
    std::fs::write(
        &path,
        "affine a=1 b=1\npl left_slope=1 anchors=(0,1);(1,0) right_slope=1\n",
    )
    .unwrap();
    let (_, err, code) = bin(&["classify", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn check_exit_statuses() {
    let affine = fixture("affine.grp");
    let affine = affine.to_str().unwrap();
    assert_eq!(
        bin(&["check", affine, "--max-fixed", "1", "--radius", "4"]).2,
        0
    );
    assert_eq!(
        bin(&["check", affine, "--max-fixed", "0", "--radius", "1"]).2,
        1
    );
    assert_eq!(bin(&["check", affine, "--cap-elements", "5"]).2, 3);
    assert_eq!(bin(&["check", "/nonexistent.grp"]).2, 2);
    let (out, _, code) = bin(&[
        "check",
        fixture("thompson.grp").to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(code, 1);
    let v: CheckOutput = round_trip(&out);
    assert!(v.verdict.is_violated());
    assert!(v.verdict.witness.unwrap().fixed_set.has_interval());
}

#[test]
fn witness_requests() {
    for tag in CaseTag::ALL {
        let name = format!("witness/case_{tag}.grp");
        let out = run(&json_config(Cmd::Witness, &name));
        assert_eq!(out.code, 1, "{name}: {}", out.stderr);
        let report: WitnessReport = round_trip(&out.stdout);
        report.verify().unwrap();
        assert_eq!(report.path[0], tag);
        assert_eq!(
            report.path.len(),
            if tag.reduces_to().is_some() { 2 } else { 1 }
        );
    }
    let (out, _, code) = bin(&["witness", fixture("witness/case_4a.grp").to_str().unwrap()]);
    assert_eq!(code, 1);
    for name in ["s = ", "t = ", "z1 = ", "z2 = "] {
        assert!(out.contains(name), "{name} missing from\n{out}");
    }
    let (_, err, code) = bin(&[
        "witness",
        fixture("witness/degenerate.grp").to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("degenerate"), "{err}");
}

#[test]
fn transnum_chart() {
    let out = run(&json_config(Cmd::Transnum, "translations.grp"));
    assert_eq!(out.code, 0, "{}", out.stderr);
    let chart: TransnumOutput = round_trip(&out.stdout);
    assert_eq!(chart.reference, "s");
    assert!(chart.order_violation.is_none());
    let (_, err, code) = bin(&["transnum", fixture("g1.grp").to_str().unwrap()]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn theorem_a_fixtures() {
    let expect = [
        ("affine.grp", "affine_semiconjugate", 0),
        ("conjugated_affine.grp", "affine_semiconjugate", 0),
        ("g1.grp", "global_fixed_abelian", 0),
        ("thompson.grp", "violation", 1),
        ("translations.grp", "translation_semiconjugate", 0),
    ];
    for (name, verdict, code) in expect {
        let out = run(&json_config(Cmd::TheoremA, name));
        assert_eq!(out.code, code, "{name}");
        let report: ClassificationReport = round_trip(&out.stdout);
        assert_eq!(report.verdict.label(), verdict, "{name}");
        let (text, _, c) = bin(&["theorem-a", fixture(name).to_str().unwrap()]);
        assert_eq!(c, code);
        assert!(text.contains(&format!("verdict: {verdict}")));
        assert!(text.contains("radius") && text.contains(plhomeo::semiconj::DISCLAIMER));
    }
}

#[test]
fn flags_reach_the_pipeline() {
    let path = fixture("affine.grp");
    let (out, _, code) = bin(&[
        "theorem-a",
        path.to_str().unwrap(),
        "--radius",
        "2",
        "--window",
        "-5,5",
        "--resolution",
        "1/10",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let report: ClassificationReport = round_trip(&out);
    assert_eq!(report.config.radius, 2);
    assert_eq!(report.config.resolution.to_string(), "1/10");
    assert_eq!(
        bin(&["theorem-a", path.to_str().unwrap(), "--window", "3,1"]).2,
        2
    );
}
