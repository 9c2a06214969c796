//! End-to-end behavior of the `schurq` binary: exit codes, output formats,
//! and determinism across thread counts.

use std::io::Write;
use std::process::Command;

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_schurq"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn poly_text_output() {
    let (stdout, _, code) = run(&[
        "poly", "--lambda", "1", "--flag", "0", "--nx", "2", "--method", "tableau",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "2*x1 + 2*x2\n");
}

#[test]
fn poly_json_routes_agree() {
    let tableau = run(&[
        "poly", "--lambda", "3,1", "--flag", "1,0", "--nx", "2", "--method", "tableau",
        "--format", "json",
    ]);
    let pfaffian = run(&[
        "poly", "--lambda", "3,1", "--flag", "1,0", "--nx", "2", "--method", "pfaffian",
        "--format", "json",
    ]);
    assert_eq!(tableau.2, 0);
    assert_eq!(pfaffian.2, 0);
    assert_eq!(tableau.0, pfaffian.0);
    assert!(tableau.0.starts_with(r#"{"terms":[{"c":""#));
}

#[test]
fn hypothesis_violation_exits_2() {
    let (_, stderr, code) = run(&[
        "poly", "--lambda", "2,1", "--flag", "2,1", "--nx", "1", "--method", "pfaffian",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("hypothesis violated"));
    assert!(stderr.contains("lambda_1-f_1"));

    // the escape hatch computes anyway and labels the output
    let (stdout, _, code) = run(&[
        "poly", "--lambda", "2,1", "--flag", "2,1", "--nx", "1", "--method", "pfaffian",
        "--unchecked",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("note: outside validity conditions"));
}

#[test]
fn malformed_input_exits_1() {
    let (_, _, code) = run(&["poly", "--lambda", "1,2", "--nx", "2"]);
    assert_eq!(code, 1);
    let (_, _, code) = run(&["poly", "--lambda", "3,1", "--flag", "1", "--nx", "2"]);
    assert_eq!(code, 1);
    let (_, _, code) = run(&["poly", "--lambda", "3,1", "--nx", "0"]);
    assert_eq!(code, 1);
    let (_, _, code) = run(&["verify", "--suite", "no-such-suite"]);
    assert_eq!(code, 1);
    let (_, _, code) = run(&["frobnicate"]);
    assert_eq!(code, 1);
}

#[test]
fn tableaux_listing_and_counts() {
    let (stdout, _, code) = run(&["tableaux", "--lambda", "1", "--flag", "0", "--nx", "2"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "1'\n1\n2'\n2\ncount: 4\n");

    let (stdout, _, code) = run(&["tableaux", "--lambda", "2,1", "--flag", "0,0", "--nx", "1"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "count: 0\n");

    let (stdout, _, code) = run(&[
        "tableaux", "--lambda", "3,1", "--flag", "1,0", "--nx", "1", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert!(v.get("count").and_then(|c| c.as_u64()).is_some());
}

#[test]
fn tableaux_check_validates_files() {
    let cases = [
        // a worked valid example
        (
            r#"{"shape":{"lambda":[5,3,1],"flag":[2,1,0]},"rows":[["1","2'","2","2","3'"],["2'","3","4"],["4'"]]}"#,
            "valid",
        ),
        // repeated unmarked 2 in a column: rule 2
        (
            r#"{"shape":{"lambda":[5,3,1],"flag":[2,1,0]},"rows":[["1","2'","2","2","3'"],["2'","2","4"],["4'"]]}"#,
            "invalid: rule 2",
        ),
        // circled entry in a zero-flag row: rule 5
        (
            r#"{"shape":{"lambda":[5,3,1],"flag":[2,1,0]},"rows":[["1","2'","2","2","1o"],["2'","3","1o"],["1o"]]}"#,
            "invalid: rule 5",
        ),
        // repeated circled value in a row: rule 4
        (
            r#"{"shape":{"lambda":[5,3,1],"flag":[2,1,0]},"rows":[["1","2'","2","1o","1o"],["2'","3","1o"],["4'"]]}"#,
            "invalid: rule 4",
        ),
    ];
    for (contents, expected) in cases {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(contents.as_bytes()).unwrap();
        let path = file.path().to_str().unwrap().to_string();
        let (stdout, _, code) = run(&[
            "tableaux", "--lambda", "5,3,1", "--flag", "2,1,0", "--nx", "1", "--check", &path,
        ]);
        assert_eq!(code, 0, "{expected}");
        assert_eq!(stdout.trim_end(), expected);
    }

    // shape mismatch between file and flags is a usage error
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(br#"{"shape":{"lambda":[1],"flag":[0]},"rows":[["1"]]}"#)
        .unwrap();
    let path = file.path().to_str().unwrap().to_string();
    let (_, _, code) = run(&["tableaux", "--lambda", "2", "--flag", "0", "--check", &path]);
    assert_eq!(code, 1);
}

#[test]
fn triple_subcommands() {
    let (stdout, _, code) = run(&["triple", "reduce", "--k", "1,2", "--p", "1,1", "--q", "2,1"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "k=(2) p=(1) q=(1)\n");

    let (stdout, _, code) = run(&[
        "triple", "shape", "--k", "1,2", "--p", "3,1", "--q", "1,1", "--format", "json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "{\"lambda\":[3,1],\"flag\":[2,0]}\n");

    let (stdout, _, code) = run(&[
        "triple", "invert", "--k", "1,2", "--p", "1,1", "--q", "3,1", "--format", "json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "{\"k\":[1,2],\"p\":[3,1],\"q\":[1,1]}\n");

    let (stdout, _, code) = run(&[
        "triple", "equiv", "--k", "1,2", "--p", "1,1", "--q", "2,1", "--k2", "2", "--p2", "1",
        "--q2", "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "equivalent: true\n");

    let (_, _, code) = run(&["triple", "reduce", "--k", "2,1", "--p", "1,1", "--q", "1,1"]);
    assert_eq!(code, 1);
}

#[test]
fn verify_reports_and_aliases() {
    let (stdout, _, code) = run(&[
        "verify", "--suite", "theorem-c", "--max-lambda", "3", "--max-rows", "2", "--nx", "2",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("suite ivanov-tableau:"));
    assert!(stdout.contains("PASS lambda=(1) nx=2"));
    assert!(stdout.trim_end().ends_with("0 failures"));

    let (stdout, _, code) = run(&[
        "verify", "--suite", "pfaffian-eq", "--max-lambda", "3", "--max-rows", "2",
        "--max-flag", "1", "--nx", "2", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v[0]["failures"], 0);
}

/// Identical invocations are byte-identical regardless of thread count.
#[test]
fn verify_output_is_thread_invariant() {
    let args = [
        "verify", "--suite", "jacobi-trudi", "--max-lambda", "2", "--max-rows", "2",
        "--max-flag", "2",
    ];
    let mut one = vec!["--threads", "1"];
    one.extend_from_slice(&args);
    let mut two = vec!["--threads", "2"];
    two.extend_from_slice(&args);
    let a = run(&one);
    let b = run(&two);
    assert_eq!(a.2, 0);
    assert_eq!(a.0, b.0);
}
