use std::path::PathBuf;
use std::process::{Command, Output};

fn twistgen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistgen")).args(args).env_remove("MCG_THREADS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(format!("{}-{name}", std::process::id()))
}

#[test]
fn verify_genus_five_matches_golden() {
    let out = scratch("g5.json");
    let o = twistgen(&["verify", "--genus", "5", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), golden("report_g5.json"));
    assert!(stderr(&o).contains("overall: Pass"));
}

#[test]
fn verify_genus_seven_matches_golden_and_fails_on_parity() {
    let o = twistgen(&["verify", "--genus", "7"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert_eq!(text, golden("report_g7.json"));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let failing: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] != "pass")
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["membership_table", "tau1_tau3_parity"]);
    assert_eq!(v["closure"]["z2"]["order"], 1_451_520);
    assert_eq!(v["overall"], "fail");
}

#[test]
fn report_is_independent_of_thread_settings() {
    let single = twistgen(&["--single-thread", "verify", "--genus", "5"]);
    let threaded = Command::new(env!("CARGO_BIN_EXE_twistgen"))
        .args(["verify", "--genus", "5"])
        .env("MCG_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(stdout(&single), golden("report_g5.json"));
    assert_eq!(stdout(&single), stdout(&threaded));
}

#[test]
fn verify_rejects_even_genus_and_warns_at_three() {
    let o = twistgen(&["verify", "--genus", "4"]);
    assert_eq!(o.status.code(), Some(64));
    assert!(stderr(&o).contains("odd genus required"));

    let o = twistgen(&["verify", "--genus", "3"]);
    assert!(stderr(&o).contains("warning:"));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["theorem_scope"], false);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn eval_reports_membership() {
    let o = twistgen(&["eval", "--genus", "5", "--word", "Y1"]);
    assert!(stdout(&o).contains("det_free: -1") && stdout(&o).contains("in T(N_g): false"));

    let o = twistgen(&["eval", "--genus", "5", "--word", "A1 A1'"]);
    assert!(stdout(&o).contains("identity: true") && stdout(&o).contains("in T(N_g): true"));

    let o = twistgen(&["eval", "--genus", "5", "--word", "SGM", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["det_free"], 1);
    assert_eq!(v["in_twist_subgroup"], true);
    assert_eq!(v["lift"].as_array().unwrap().len(), 5);
}

#[test]
fn eval_parse_error_is_a_usage_error() {
    let o = twistgen(&["eval", "--genus", "5", "--word", "A1 B0 Q"]);
    assert_eq!(o.status.code(), Some(64));
    assert!(stderr(&o).contains("unknown token `Q` at position 6"));
}

#[test]
fn closure_orders() {
    for gens in ["torsion", "omori"] {
        let o = twistgen(&["closure", "--genus", "5", "--gens", gens, "--rep", "z2"]);
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["order"], 720);
        assert_eq!(v["complete"], true);
    }
    let o = twistgen(&["closure", "--genus", "5", "--gens", "torsion", "--cap", "100"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn express_finds_short_words() {
    let o = twistgen(&["express", "--genus", "5", "--target", "SGM", "--depth", "6", "--gens", "omori"]);
    assert_eq!(stdout(&o).trim(), "SGM = A3' A4' A5' A1' (length 4)");
    let o = twistgen(&["express", "--genus", "5", "--target", "TAU1 B0", "--depth", "1"]);
    assert!(stdout(&o).contains("(length 1)"));
    let o = twistgen(&["express", "--genus", "5", "--target", "ID", "--depth", "1"]);
    assert_eq!(stdout(&o).trim(), "ID = ID (length 0)");
    let o = twistgen(&["express", "--genus", "5", "--target", "A1", "--depth", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn render_svg() {
    let out = scratch("model.svg");
    let o = twistgen(&["render", "--genus", "5", "--curves", "a1,b0", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(&out).unwrap();
    assert_eq!(svg.matches("url(#hatch)").count(), 5);
    assert_eq!(svg.matches("<g id=\"curve-").count(), 2);

    let o = twistgen(&["render", "--genus", "5", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!std::fs::read_to_string(&out).unwrap().contains("<polyline"));

    let o = twistgen(&["render", "--genus", "5", "--curves", "zz", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(64));
    assert!(stderr(&o).contains("unknown curve `zz`"));
}

#[test]
fn bad_arguments_exit_64() {
    assert_eq!(twistgen(&["verify"]).status.code(), Some(64));
    assert_eq!(twistgen(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(twistgen(&["--help"]).status.code(), Some(0));
}
