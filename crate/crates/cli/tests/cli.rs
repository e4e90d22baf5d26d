use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use trivzero::catalog;

fn rings_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../rings")
}

fn ring(name: &str) -> String {
    rings_dir().join(format!("{name}.ring")).display().to_string()
}

fn trivzero(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trivzero")).args(args).output().unwrap()
}

fn stdout_ok(args: &[&str]) -> String {
    let out = trivzero(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut args = args.to_vec();
    args.push("--json");
    serde_json::from_str(&stdout_ok(&args)).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

const RINGS: [&str; 6] = ["ex26", "ex36", "h4g3", "fqx2", "fqx3", "fqx4"];

/// Golden JSON documents; `UPDATE_GOLDEN=1` rewrites them.
#[test]
fn golden_documents() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut cases: Vec<(String, Vec<String>)> = Vec::new();
    for r in RINGS {
        let path = ring(r);
        for (cmd, extra) in [("zeta", vec!["-s", "3"]), ("gaps", vec![]), ("lpoly", vec![]), ("classgroup", vec![])] {
            let mut args = vec![cmd.to_string(), "--ring".into(), path.clone()];
            args.extend(extra.iter().map(|s| s.to_string()));
            cases.push((format!("{cmd}_{r}"), args));
        }
    }
    let extra: [(&str, &[&str]); 7] = [
        ("zeta_ex36_s2", &["zeta", "--ring", "RING:ex36", "-s", "2"]),
        ("zeta_h4g3_all_ideals", &["zeta", "--ring", "RING:h4g3", "-s", "4", "--all-ideals"]),
        ("check_hiper_ex26", &["check", "--ring", "RING:ex26", "-s", "7", "--theorem", "hiper"]),
        (
            "check_generalization_h4g3",
            &["check", "--ring", "RING:h4g3", "-s", "1", "--theorem", "generalization", "--fk-rule", "squarefree"],
        ),
        ("check_proposition", &["check", "--theorem", "proposition", "--n-range", "3..21"]),
        ("powsum_fqx2", &["powsum", "--ring", "RING:fqx2", "-k", "3", "-d", "2"]),
        ("semigroups_g5_q3", &["semigroups", "--genus", "5", "--q", "3", "--r-gap"]),
    ];
    for (name, args) in extra {
        let args = args.iter().map(|a| a.strip_prefix("RING:").map_or(a.to_string(), ring)).collect();
        cases.push((name.to_string(), args));
    }
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, args) in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let doc = serde_json::to_string_pretty(&json(&args)).unwrap() + "\n";
        let path = dir.join(format!("{name}.json"));
        if update {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &doc).unwrap();
        } else {
            let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
            assert_eq!(doc, want, "{name}");
        }
    }
}

#[test]
fn ex36_reproduction_text() {
    let out = stdout_ok(&["zeta", "--ring", &ring("ex36"), "-s", "2"]);
    assert!(out.contains("zeta(-2, X) = 1 + 2*X^2"), "{out}");
    assert!(out.contains("ord at X = 1: 1"));
    let doc = json(&["zeta", "--ring", &ring("ex36"), "-s", "2"]);
    assert_eq!(doc["polynomial"], "1 + 2*X^2");
    assert_eq!(doc["ord"], 1);
}

#[test]
fn gaps_of_ex26() {
    let doc = json(&["gaps", "--ring", &ring("ex26")]);
    assert_eq!(doc["gaps"], serde_json::json!([1, 3, 5]));
    assert_eq!(doc["genus"], 3);
    assert_eq!(doc["r_gap"][0]["q"], 2);
    assert_eq!(doc["r_gap"][0]["valid_r"], serde_json::json!([2, 3]));
}

#[test]
fn fqx2_json_has_coefficient_strings() {
    let doc = json(&["zeta", "--ring", &ring("fqx2"), "-s", "4"]);
    assert_eq!(doc["command"], "zeta");
    assert_eq!(doc["kind"], "principal");
    assert!(doc["coefficients"].as_array().unwrap().iter().all(Value::is_string));
}

#[test]
fn catalog_names_resolve_without_a_path() {
    assert_eq!(stdout_ok(&["lpoly", "--ring", "h4g3"]), stdout_ok(&["lpoly", "--ring", &ring("h4g3")]));
    assert_eq!(stdout_ok(&["lpoly", "--ring", "ex36.ring"]), stdout_ok(&["lpoly", "--ring", &ring("ex36")]));
}

#[test]
fn text_and_json_agree() {
    for r in RINGS {
        let path = ring(r);
        let doc = json(&["zeta", "--ring", &path, "-s", "3"]);
        let text = stdout_ok(&["zeta", "--ring", &path, "-s", "3"]);
        assert!(text.contains(&format!("= {}", doc["polynomial"].as_str().unwrap())), "{r}");
        assert!(text.contains(&format!("ord at X = 1: {}", doc["ord"])) || doc["ord"].is_null(), "{r}");

        let doc = json(&["classgroup", "--ring", &path]);
        let text = stdout_ok(&["classgroup", "--ring", &path]);
        assert!(text.starts_with(&format!("h = {}, exponent = {}", doc["h"], doc["exponent"])), "{r}");
        for class in doc["classes"].as_array().unwrap() {
            assert!(text.contains(class["ideal"].as_str().unwrap()));
        }

        let doc = json(&["lpoly", "--ring", &path]);
        let text = stdout_ok(&["lpoly", "--ring", &path]);
        assert!(text.contains(doc["polynomial"].as_str().unwrap()), "{r}");
    }
}

#[test]
fn outputs_are_reingestible() {
    let h = catalog::h4g3();
    let doc = json(&["zeta", "--ring", &ring("h4g3"), "-s", "3"]);
    for c in doc["coefficients"].as_array().unwrap() {
        let text = c.as_str().unwrap();
        assert_eq!(h.format(&h.parse_element(text).unwrap()), text);
    }
    let doc = json(&["classgroup", "--ring", &ring("h4g3")]);
    for class in doc["classes"].as_array().unwrap() {
        let gen = class["generator"].as_str().unwrap();
        assert!(h.parse_element(gen).is_ok());
    }
}

#[test]
fn exit_codes() {
    let out = trivzero(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = trivzero(&["zeta", "--ring", &ring("ex36")]);
    assert_eq!(out.status.code(), Some(2));
    let out = trivzero(&["zeta", "--ring", "/definitely/not/here.ring", "-s", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(trivzero(&["--help"]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let gcd = write_temp(&dir, "gcd.ring", "[field]\np = 2\n[ring]\nm = 2\nc0 = \"x^4 + x + 1\"\nc1 = \"x\"\n");
    let out = trivzero(&["zeta", "--ring", &gcd, "-s", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("gcd(m, N) = 1"));

    let nomod = write_temp(&dir, "nomod.ring", "[field]\np = 2\nn = 2\n[ring]\nm = 2\nc0 = \"x^3\"\nc1 = \"0\"\n");
    let out = trivzero(&["zeta", "--ring", &nomod, "-s", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("modulus"));

    let syntax = write_temp(&dir, "syntax.ring", "[field\np = 2\n");
    let out = trivzero(&["gaps", "--ring", &syntax]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line 1"));

    let out = trivzero(&["zeta", "--ring", &ring("h4g3"), "-s", "3", "--all-ideals"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("not a multiple"));
}

#[test]
fn search_partitions_and_checkpoints() {
    let base = [
        "search",
        "--q",
        "2",
        "--family",
        "hyperelliptic-q2",
        "--a",
        "x^2 + x",
        "--deg-b",
        "7..7",
        "--b-multiple-of",
        "x^2 + x",
        "--fk-rule",
        "squarefree",
    ];
    let whole = json(&base);
    assert_eq!(whole["summary"]["evaluated"], 32);
    assert_eq!(whole["summary"]["passed"].as_array().unwrap().len(), 2);

    let dir = tempfile::tempdir().unwrap();
    let mut passed = Vec::new();
    for part in 0..4 {
        let ckpt = dir.path().join(format!("p{part}.tsv")).display().to_string();
        let part = part.to_string();
        let mut args = base.to_vec();
        args.extend(["--parts", "4", "--part", &part, "--checkpoint", &ckpt, "--limit", "3"]);
        json(&args);
        args.truncate(args.len() - 2);
        let doc = json(&args);
        passed.extend(doc["summary"]["passed"].as_array().unwrap().iter().cloned());
    }
    assert_eq!(Value::Array(passed), whole["summary"]["passed"]);
}
