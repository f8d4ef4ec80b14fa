use std::process::{Command, Output};

fn ssgenus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ssgenus"))
        .args(args)
        .env_remove("SSGENUS_THRESHOLD")
        .env_remove("SSGENUS_HEURISTIC")
        .env_remove("SSGENUS_FORMAT")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn genus_f4() {
    let o = ssgenus(&["genus", "F4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["triple"], serde_json::json!([2, 6, 6]));
    assert_eq!(v["genus"], "97");
    assert_eq!(v["exactness"], "exact");
    assert_eq!(v["paper"]["status"], "match");
}

#[test]
fn genus_s4_text() {
    let o = ssgenus(&["genus", "s4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("triple     (2,3,4)"));
    assert!(out.contains("genus      0\n"));
}

#[test]
fn redirect_note_for_d3() {
    let out = stdout(&ssgenus(&["genus", "D3"]));
    assert!(out.contains("note       D3 = S4"));
}

#[test]
fn exit_codes() {
    assert_eq!(ssgenus(&["genus", "B99"]).status.code(), Some(3));
    assert_eq!(ssgenus(&["genus", "Q7"]).status.code(), Some(2));
    assert_eq!(ssgenus(&["genus", "E8"]).status.code(), Some(3));
    assert_eq!(ssgenus(&["table", "--reproduce", "nope"]).status.code(), Some(2));
}

#[test]
fn env_overrides_flags() {
    let o = Command::new(env!("CARGO_BIN_EXE_ssgenus"))
        .args(["genus", "S5"])
        .env("SSGENUS_FORMAT", "csv")
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "n,family,triple,genus\n5,S,\"(2,4,5)\",4\n");
    let o = Command::new(env!("CARGO_BIN_EXE_ssgenus"))
        .args(["genus", "S5"])
        .env("SSGENUS_THRESHOLD", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_round_trip_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d5.json");
    let p = path.to_str().unwrap();
    let o = ssgenus(&["genus", "D5", "--witness-out", p]);
    assert_eq!(o.status.code(), Some(0));
    let o = ssgenus(&["verify", p]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "verified D5 (2,4,5) genus <= 49\n");

    // swap the two sign bits of y so it is no longer the witnessed element
    let mut w: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let y = w["y"].as_str().unwrap().to_string();
    let (cycles, bits) = y.split_once('|').unwrap();
    let bits: String = bits.trim().trim_end_matches(']').chars().rev().collect();
    let tampered = format!("{cycles}| {bits}]");
    assert_ne!(tampered, y);
    w["y"] = tampered.into();
    std::fs::write(&path, w.to_string()).unwrap();
    assert_eq!(ssgenus(&["verify", p]).status.code(), Some(5));

    std::fs::write(&path, "{\"format\": \"something-else\"}").unwrap();
    assert_eq!(ssgenus(&["verify", p]).status.code(), Some(2));
}

#[test]
fn table_standard_sporadic() {
    let o = ssgenus(&["table", "--reproduce", "sporadic", "--tier", "standard"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    for g in ["G2", "H3", "H4", "F4"] {
        assert!(
            out.lines().any(|l| l.starts_with(g) && l.ends_with("match")),
            "{g}\n{out}"
        );
    }
}

#[test]
fn table_standard_exceptional_is_deterministic() {
    let a = ssgenus(&["table", "--reproduce", "exceptional", "--format", "csv"]);
    let b = ssgenus(&["table", "--reproduce", "exceptional", "--format", "csv", "--jobs", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    assert!(out.contains("8,S,\"(2,4,7)\",2161\n"));
    assert!(out.contains("6,D,\"(2,5,6)\",1537\n"));
    assert_eq!(out.lines().count(), 1 + 13);
}

#[test]
fn empty_tier() {
    let o = ssgenus(&["table", "--reproduce", "sporadic", "--tier", "none", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o), serde_json::json!([]));
}

#[test]
fn lift_ten() {
    let o = ssgenus(&[
        "lift",
        "10",
        "2",
        "3",
        "10",
        "--heuristic",
        "--budget",
        "200000",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["group"], "D10");
    assert_eq!(v["triple"], serde_json::json!([2, 3, 10]));
    assert_eq!(v["method"], "lifted");
}

#[test]
fn spectrum_of_h3() {
    let out = stdout(&ssgenus(&["spectrum", "H3"]));
    assert!(out.contains("order    120\n"));
    assert!(out.contains("orders   1 2 3 5 6 10\n"));
}
