use std::io::Write;

use qseries::{run, EXIT_FAIL, EXIT_OK, EXIT_USAGE};

fn qs(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qseries").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn coeff_prints_exact_values() {
    let (code, out, _) = qs(&["coeff", "v", "1", "3", "5"]);
    assert_eq!(code, EXIT_OK);
    // v(q) = q + q^2 + q^3 + 2q^4 + 3q^5 + ...
    assert_eq!(out.trim(), "1 1 3");
    let (code, _, err) = qs(&["coeff", "chi", "1"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("unknown mock theta function"));
}

#[test]
fn series_dense_and_sparse() {
    let (code, out, _) = qs(&["series", "l(1)^3", "--order", "11"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "1 - 3q + 5q^3 - 7q^6 + 9q^10 + O(q^11)");
    let (_, out, _) = qs(&["series", "l(1)", "--order", "60"]);
    assert_eq!(
        out,
        "0:1 1:-1 2:-1 5:1 7:1 12:-1 15:-1 22:1 26:1 35:-1 40:-1 51:1 57:1\nO(q^60)\n"
    );
}

#[test]
fn series_formats() {
    let (_, out, _) = qs(&["series", "psi(q)", "--order", "7", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["expr"], "psi(q)");
    assert_eq!(v["coefficients"], serde_json::json!(["1", "1", "0", "1", "0", "0", "1"]));
    let (_, out, _) = qs(&["series", "q^-1 + 2", "--order", "2", "--format", "csv"]);
    assert_eq!(out, "n,coefficient\n-1,1\n0,2\n1,0\n");
}

#[test]
fn series_errors_exit_2() {
    let (code, _, err) = qs(&["series", "l("]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("offset 2"), "{err}");
    let (code, _, err) = qs(&["series", "1/(2+q)"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("leading coefficient"), "{err}");
    assert_eq!(qs(&["series", "q", "--order", "0"]).0, EXIT_USAGE);
}

#[test]
fn verify_pass_fail_and_unknown() {
    let (code, out, _) = qs(&["verify", "thm3.3i"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.starts_with("pass"));
    let (code, out, _) = qs(&["verify", "lambda.6n+4"]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.contains("first failure at n = 0: lhs 6, rhs 1"), "{out}");
    let (code, _, err) = qs(&["verify", "thm9.9"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("unknown claim id"));
}

#[test]
fn verify_json_and_csv() {
    let (_, out, _) = qs(&["verify", "thm5.1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let r = &v[0];
    assert_eq!(r["id"], "thm5.1");
    assert_eq!(r["status"], "fail");
    assert_eq!(r["first_failure"]["n"], 0);
    assert_eq!(r["first_failure"]["lhs"], "1");
    assert_eq!(r["first_failure"]["rhs"], "2");
    assert!(r["elapsed_ms"].is_u64());

    let (_, out, _) = qs(&["verify", "thm3.1", "--format", "csv", "--order", "50"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("id,status,order,first_n,elapsed_ms"));
    assert!(lines.next().unwrap().starts_with("thm3.1,pass,50,,"));
}

#[test]
fn verify_count_override() {
    let (code, out, _) = qs(&["verify", "thm3.3i", "--count", "3", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["order"], 6 * 3 + 5);
}

fn claim_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn arg(f: &tempfile::NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

#[test]
fn user_claim_files() {
    let f = claim_file(
        "\
# two user claims
[claim]
id=user.pv
type=identity
lhs=AP(mock(v), 2, 1)
rhs=l(4)^3/(l(1)*l(2))
order=120

[claim]
id=user.skip
type=family
family=thm3.3ii
p=3
",
    );
    let (code, out, _) = qs(&["verify", "--claims", arg(&f), "--format", "json"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["id"], "user.pv");
    assert_eq!(v[0]["status"], "pass");
    assert_eq!(v[0]["order"], 120);
    assert_eq!(v[1]["status"], "skipped");
    assert!(v[1]["message"].as_str().unwrap().contains("does not qualify"));

    let (code, out, _) = qs(&["verify", "user.pv", "--claims", arg(&f)]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 2);

    let bad = claim_file("[claim]\nid=x\ntype=identity\nlhs=l(1\nrhs=1\n");
    let (code, _, err) = qs(&["verify", "--claims", arg(&bad)]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn verify_all_is_sorted_and_stable() {
    let strip = |s: &str| -> serde_json::Value {
        let mut v: serde_json::Value = serde_json::from_str(s).unwrap();
        for r in v.as_array_mut().unwrap() {
            r["elapsed_ms"] = 0.into();
        }
        v
    };
    let (code, a, _) = qs(&["verify", "all", "--format", "json"]);
    let (_, b, _) = qs(&["verify", "all", "--format", "json", "--no-parallel"]);
    // Some claims fail as stated; see the README.
    assert_eq!(code, EXIT_FAIL);
    let (a, b) = (strip(&a), strip(&b));
    assert_eq!(a, b);
    let ids: Vec<&str> = a.as_array().unwrap().iter().map(|r| r["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(ids.len() >= 30);
    for r in a.as_array().unwrap() {
        assert!(["pass", "fail", "skipped"].contains(&r["status"].as_str().unwrap()));
        if r["status"] == "fail" {
            assert!(r["first_failure"].is_object() || r["message"].is_string());
        }
    }
}

#[test]
fn enumerate_lists_colored_partitions() {
    let (code, out, _) = qs(&["enumerate", "thm3.2", "4", "--list"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "thm3.2: mod 4: 0 distinct signed x1, 1 x1, 2 x2, 3 x1");
    assert_eq!(lines[1], "4a  (-1)");
    assert_eq!(lines[3], "2b + 2b  (+1)");
    assert_eq!(lines.len(), 10);
    assert_eq!(lines[9], "signed count of 4: 6");
    let (code, out, _) = qs(&["enumerate", "p", "10"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.ends_with("signed count of 10: 42\n"));
    assert_eq!(qs(&["enumerate", "nope", "3"]).0, EXIT_USAGE);
}

#[test]
fn list_shows_citations() {
    let (code, out, _) = qs(&["list"]);
    assert_eq!(code, EXIT_OK);
    let line = out.lines().find(|l| l.starts_with("thm3.1 ")).unwrap();
    assert!(line.ends_with("Theorem 3.1"));
    let (_, out, _) = qs(&["list", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v.as_array().unwrap().iter().all(|c| !c["cite"].as_str().unwrap().is_empty()));
}

#[test]
fn usage_errors() {
    assert_eq!(qs(&[]).0, EXIT_USAGE);
    assert_eq!(qs(&["frobnicate"]).0, EXIT_USAGE);
    let (code, out, _) = qs(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("verify"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qseries");
    let status = |args: &[&str]| std::process::Command::new(bin).args(args).output().unwrap();
    let ok = status(&["coeff", "v", "5"]);
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).trim(), "3");
    assert_eq!(status(&["verify", "thm5.3"]).status.code(), Some(EXIT_FAIL));
    assert_eq!(status(&["verify", "nope"]).status.code(), Some(EXIT_USAGE));
}
