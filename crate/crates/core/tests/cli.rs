use std::process::Command;

use peterson::cli::{run, EXIT_OK, EXIT_USAGE};
use peterson::format::{class_from_json, read_table_csv, table_from_json};
use peterson::poly::Tautological;
use peterson::structure::full_table_with_limit;
use peterson::{IndexSet, RingContext, Scalar, TautClass};

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("peterson").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn taut(n: usize, terms: &[(i64, &[usize])]) -> TautClass {
    let ctx = RingContext::new(n).unwrap();
    TautClass::from_terms(
        ctx,
        terms
            .iter()
            .map(|(v, s)| (IndexSet::new(s).unwrap(), Scalar::from(*v))),
    )
    .unwrap()
}

#[test]
fn expand_prints_term_lists() {
    let (code, out, _) = invoke(&["expand", "--n", "3", "--block", "1..1", "--square", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        class_from_json::<Tautological>(&out).unwrap(),
        taut(3, &[(1, &[1, 2])])
    );
    let value: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(value["terms"][0]["coeff"], "1");

    let (code, out, _) = invoke(&[
        "expand", "--n", "12", "--prefix", "1,3", "--block", "5..6", "--square", "5", "--suffix",
        "8,10",
    ]);
    assert_eq!(code, EXIT_OK);
    let class = class_from_json::<Tautological>(&out).unwrap();
    assert_eq!(class.len(), 9);
    assert_eq!(
        class.coeff(IndexSet::new(&[1, 2, 4, 5, 6, 8, 10]).unwrap()),
        Scalar::from(-6)
    );
}

#[test]
fn expand_names_violated_constraints() {
    let (code, _, err) = invoke(&[
        "expand", "--n", "9", "--prefix", "3", "--block", "4..5", "--square", "4",
    ]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("prefix element must be < a-1"), "{err}");
    let (code, _, err) = invoke(&[
        "expand", "--n", "7", "--block", "3..6", "--square", "4", "--suffix", "6",
    ]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("M element must be >= b+2"), "{err}");
    let (code, _, _) = invoke(&["expand", "--n", "7", "--block", "3-5", "--square", "4"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = invoke(&["expand", "--n", "1", "--block", "1..1", "--square", "1"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn multiply_examples() {
    let (_, out, _) = invoke(&["multiply", "--n", "6", "--left", "3,4,5", "--right", "4"]);
    let expect = taut(
        6,
        &[
            (3, &[1, 2, 3, 4]),
            (5, &[1, 2, 3, 5]),
            (6, &[1, 2, 4, 5]),
            (6, &[1, 3, 4, 5]),
            (6, &[2, 3, 4, 5]),
        ],
    );
    assert_eq!(class_from_json::<Tautological>(&out).unwrap(), expect);

    let (_, out, _) = invoke(&[
        "multiply", "--n", "5", "--left", "", "--right", "2,3", "--format", "text",
    ]);
    assert_eq!(out, "1  x_{2,3}\n");

    let (code, out, _) = invoke(&[
        "multiply", "--n", "4", "--left", "1,2,3", "--right", "1", "--format", "csv",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "indices,coeff\n");
}

#[test]
fn table_formats_and_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let (code, _, _) = invoke(&["table", "--n", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("n,J,K,L,c\n"));
    let expected = full_table_with_limit(RingContext::new(4).unwrap(), 7).unwrap();
    assert_eq!(read_table_csv(text.as_bytes()).unwrap(), expected);

    let (_, again, _) = invoke(&["table", "--n", "4"]);
    assert_eq!(again, text);

    let (_, json, _) = invoke(&["table", "--n", "4", "--format", "json"]);
    assert_eq!(table_from_json(&json).unwrap(), expected);

    let (code, _, err) = invoke(&["table", "--n", "8"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("PETERSON_MAX_N"));
}

#[test]
fn verify_and_identity_summaries() {
    let (code, out, _) = invoke(&["verify", "--n", "6", "--mode", "exhaustive"]);
    assert_eq!(
        (code, out.as_str()),
        (EXIT_OK, "1024 pairs verified against oracle\n")
    );
    let (code, out, _) = invoke(&[
        "verify",
        "--n",
        "5",
        "--mode",
        "random",
        "--samples",
        "40",
        "--seed",
        "7",
    ]);
    assert_eq!(
        (code, out.as_str()),
        (EXIT_OK, "40 pairs verified against oracle\n")
    );
    let (code, out, _) = invoke(&["identity", "--d-max", "25"]);
    assert_eq!(
        (code, out.as_str()),
        (EXIT_OK, "325 identities checked, all equal 1\n")
    );
    let (_, out, _) = invoke(&["identity"]);
    assert_eq!(out, "465 identities checked, all equal 1\n");
    let (code, _, _) = invoke(&["--max-n", "5", "verify", "--n", "6"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = invoke(&["--workers", "2", "verify", "--n", "4"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["table", "--n", "5", "--format", "json"][..],
        &[
            "expand", "--n", "7", "--block", "3..5", "--square", "4", "--format", "text",
        ][..],
        &[
            "multiply", "--n", "7", "--left", "1,3,5", "--right", "2,5,6", "--format", "csv",
        ][..],
    ] {
        assert_eq!(invoke(args), invoke(args));
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_peterson");
    let ok = Command::new(bin)
        .args(["identity", "--d-max", "5"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(
        String::from_utf8_lossy(&ok.stdout),
        "15 identities checked, all equal 1\n"
    );
    let usage = Command::new(bin).arg("nope").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let guarded = Command::new(bin)
        .args(["table", "--n", "8"])
        .env("PETERSON_MAX_N", "7")
        .output()
        .unwrap();
    assert_eq!(guarded.status.code(), Some(2));
    let lifted = Command::new(bin)
        .args(["verify", "--n", "3"])
        .env("PETERSON_MAX_N", "3")
        .output()
        .unwrap();
    assert_eq!(lifted.status.code(), Some(0));
}
