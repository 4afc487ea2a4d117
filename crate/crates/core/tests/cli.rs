use std::process::Command;

use mzv::cli::{run, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("mzv").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn zeta_values() {
    let (code, out, _) = call(&["zeta", "--index", "4", "--digits", "20"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "1.08232323371113819152");
    let (_, out, _) = call(&["zeta", "--index", "2,1,1", "--digits", "40"]);
    assert_eq!(out.trim(), "1.0823232337111381915160036965411679027748");
}

#[test]
fn verify_exit_codes() {
    let (code, out, _) = call(&["verify", "--id", "euler_sum", "--weight", "5", "--digits", "30"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("PASS euler_sum@5"));

    let (code, _, err) = call(&["verify", "--id", "thm3_i", "--weight", "5"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("weight parity violated"));

    let (code, _, _) = call(&["verify", "--id", "no_such_identity", "--weight", "5"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = call(&["verify", "--weight", "5"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = call(&["zeta", "--index", "3", "--digits", "0"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn failing_check_exits_one() {
    // the (2,3) pairing of the constant-term claim does not converge to the stated value
    let (code, out, _) = call(&["verify", "--id", "lem22", "--weight", "3"]);
    assert_eq!(code, EXIT_FAILED);
    assert!(out.contains("FAIL lem22.ii.(2,3)"));
}

fn check_against_schema(report: &Value, schema: &Value) {
    let def = &schema["$defs"]["report"];
    let obj = report.as_object().unwrap();
    let props = def["properties"].as_object().unwrap();
    for key in def["required"].as_array().unwrap() {
        assert!(obj.contains_key(key.as_str().unwrap()), "missing {key}");
    }
    for (k, v) in obj {
        let ty = props.get(k).unwrap_or_else(|| panic!("unexpected key {k}"))["type"].as_str().unwrap();
        let ok = match ty {
            "string" => v.is_string(),
            "integer" => v.is_u64(),
            "boolean" => v.is_boolean(),
            "array" => v.is_array(),
            _ => false,
        };
        assert!(ok, "{k} should be {ty}");
    }
    let kinds = props["kind"]["enum"].as_array().unwrap();
    assert!(kinds.contains(&report["kind"]));
}

#[test]
fn json_report_matches_schema() {
    let schema: Value =
        serde_json::from_str(include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../schemas/report.schema.json")))
            .unwrap();
    let (code, out, _) = call(&["verify", "--id", "thm1_i", "--weight", "6", "--digits", "30", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["id"], "thm1_i");
    assert_eq!(reports[0]["points"].as_array().unwrap().len(), 5);
    for r in reports {
        check_against_schema(r, &schema);
    }
    let (_, out, _) = call(&["verify", "--id", "parity", "--weight", "7", "--json"]);
    for r in serde_json::from_str::<Value>(&out).unwrap().as_array().unwrap() {
        check_against_schema(r, &schema);
    }
}

#[test]
fn verify_all_is_deterministic() {
    let (c1, a, _) = call(&["verify-all", "--max-weight", "5", "--jobs", "1", "--json", "--digits", "20"]);
    let (c2, b, _) = call(&["verify-all", "--max-weight", "5", "--jobs", "4", "--json", "--digits", "20"]);
    assert_eq!(c1, c2);
    assert_eq!(a, b);
}

#[test]
fn relations_csv_export() {
    let dir = std::env::temp_dir().join(format!("mzv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.csv");
    let (code, out, _) = call(&["relations", "--weight", "7", "--class", "r21", "--csv", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("15 checks, 0 failed"));
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("class,p,q,r,extra_zeta2_term,"));
    assert_eq!(csv.lines().count(), 16);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sumtable_and_genfun() {
    let (code, out, _) = call(&["sumtable", "--weight", "6", "--digits", "25"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("thm3_i.eq1"));
    assert!(out.contains("0.1907518241220842136964721"));
    let (code, out, _) = call(&["genfun", "--kind", "d", "--weight", "4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "(1·z(3,1))·x1^2 + (1·z(2,2))·x1·x2");
}

#[test]
fn binary_uses_env_digits() {
    let out = Command::new(env!("CARGO_BIN_EXE_mzv"))
        .args(["zeta", "--index", "3"])
        .env("MZV_DIGITS", "12")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "1.202056903160");
    let out = Command::new(env!("CARGO_BIN_EXE_mzv")).args(["verify", "--id", "thm3_i", "--weight", "5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
