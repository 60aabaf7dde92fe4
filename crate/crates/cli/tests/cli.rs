use std::fs;
use std::process::{Command, Output};

fn schubert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schubert"))
        .args(args)
        .env("SCHUBERT_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

#[test]
fn count_examples() {
    for (args, want) in [
        (
            vec!["count", "--space", "grass", "--r", "3", "--n", "7"],
            "462",
        ),
        (
            vec![
                "count", "--space", "quantum", "--r", "2", "--n", "5", "--q", "2",
            ],
            "610",
        ),
        (vec!["count", "--space", "og", "--r", "3"], "2"),
        (
            vec![
                "count", "--space", "grass", "--r", "2", "--n", "4", "--w", "2,4",
            ],
            "2",
        ),
    ] {
        let o = schubert(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert_eq!(stdout(&o), want, "{args:?}");
    }
}

#[test]
fn count_json_has_string_count() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("count.json");
    let o = schubert(&[
        "count",
        "--space",
        "grass",
        "--r",
        "3",
        "--n",
        "7",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["count"], "462");
    assert_eq!(v["space"], "G(3,7)");
}

#[test]
fn invalid_parameters_exit_2() {
    for args in [
        vec!["count", "--space", "grass", "--r", "5", "--n", "4"],
        vec!["count", "--space", "grass", "--r", "2"],
        vec![
            "count", "--space", "grass", "--r", "2", "--n", "4", "--labels", "1,1",
        ],
        vec!["count", "--space", "flag", "--steps", "2,1", "--n", "3"],
        vec![
            "pieri", "--r", "2", "--n", "4", "--alpha", "2,4", "--prime", "4",
        ],
        vec!["verify", "--space", "quantum", "--r", "2", "--n", "4"],
        vec!["count", "--space", "nonsense"],
    ] {
        let o = schubert(&args);
        assert_eq!(
            o.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn verify_grassmannian_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = schubert(&[
        "verify",
        "--space",
        "grass",
        "--r",
        "2",
        "--n",
        "4",
        "--primes",
        "3,5,7",
        "--mode",
        "independent",
        "--seed",
        "42",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("confirmed"));
    let text = fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["verdict"], "confirmed");
    assert_eq!(v["expected"], "2");
    assert_eq!(v["solutions"].as_array().unwrap().len(), 2);
    for c in v["certificates"].as_array().unwrap() {
        assert_eq!(c["tangent_rank"], 4);
        assert_eq!(c["jacobian_rank"], 4);
        assert_eq!(c["verdict"], "transverse");
    }
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    let space = keys.iter().position(|k| *k == "space").unwrap();
    let verdict = keys.iter().position(|k| *k == "verdict").unwrap();
    assert!(space < verdict);
}

#[test]
fn verify_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = schubert(&[
            "verify",
            "--space",
            "grass",
            "--r",
            "2",
            "--n",
            "5",
            "--primes",
            "7",
            "--mode",
            "family",
            "--seed",
            "9",
            "--output",
            p.to_str().unwrap(),
        ]);
        assert!(matches!(o.status.code(), Some(0) | Some(1)));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn orthogonal_in_characteristic_two_exits_2() {
    let o = schubert(&["verify", "--space", "og", "--r", "3", "--primes", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("characteristic"));
}

#[test]
fn verify_flag_matches_chain_count() {
    let o = schubert(&[
        "verify", "--space", "flag", "--steps", "1,2", "--n", "3", "--labels", "1,1,2", "--primes",
        "5,7", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["expected"], "1");
    assert_eq!(v["solutions"].as_array().unwrap().len(), 1);
}

#[test]
fn unconfirmed_verify_exits_1() {
    // F_3 has only two units, so family mode cannot build a G(2,4) instance
    let o = schubert(&[
        "verify", "--space", "grass", "--r", "2", "--n", "4", "--primes", "3", "--mode", "family",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("no-generic-config"));
}

#[test]
fn pieri_examples() {
    for alpha in ["2,4", "1,2"] {
        let o = schubert(&[
            "pieri", "--r", "2", "--n", "4", "--alpha", alpha, "--prime", "3",
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), "true");
    }
    let o = schubert(&[
        "pieri", "--r", "2", "--n", "5", "--alpha", "3,5", "--prime", "3",
    ]);
    assert_eq!(stdout(&o), "true");
}

fn table_counts(args: &[&str]) -> Vec<String> {
    let o = schubert(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}");
    let text = stdout(&o);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    rdr.records().map(|r| r.unwrap()[6].to_string()).collect()
}

#[test]
fn tables() {
    assert_eq!(
        table_counts(&["table", "--space", "grass", "--r", "2", "--n", "4..8"]),
        ["2", "5", "14", "42", "132"]
    );
    assert_eq!(
        table_counts(&["table", "--space", "quantum", "--r", "2", "--n", "5", "--q", "0..3"]),
        ["5", "55", "610", "6765"]
    );
    assert_eq!(
        table_counts(&["table", "--space", "og", "--r", "2..4"]),
        ["1", "2", "12"]
    );
}

#[test]
fn oversized_table_rows_are_skipped() {
    assert_eq!(
        table_counts(&["table", "--space", "grass", "--r", "12", "--n", "30"]),
        ["skipped"]
    );
}
