use std::process::Command;

use bridgestate::{Error, TwoBridgeKnot};
use bridgestate_cli::model::KnotRecord;
use bridgestate_cli::{render, run, Failure, EXIT_INCONSISTENT, EXIT_INVALID, EXIT_OK, ORACLE_ENV};

fn exe() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bridgestate"))
}

fn run_args(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("bridgestate").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn surfaces_listing() {
    let (code, out, _) = run_args(&["surfaces", "5", "2"]);
    assert_eq!(code, EXIT_OK);
    for e in ["[2,2]", "[3,-2]", "[-2,3]"] {
        assert!(out.contains(e), "{out}");
    }
    let (code, out, _) = run_args(&["surfaces", "3", "1", "--csv"]);
    assert_eq!(code, EXIT_OK);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows, ["3,1,3,0,false,1,1,0", "3,1,-2;2,1,true,2,0,2"]);
}

#[test]
fn invariants_examples() {
    let (code, out, _) = run_args(&["invariants", "5", "2", "--json"]);
    assert_eq!(code, EXIT_OK);
    let rec: KnotRecord = serde_json::from_str(&out).unwrap();
    assert_eq!(rec.slopes, vec![-4, 0, 4]);

    let (code, out, _) = run_args(&["invariants", "7", "3", "--json"]);
    assert_eq!(code, EXIT_OK);
    let rec: KnotRecord = serde_json::from_str(&out).unwrap();
    assert_eq!(rec.determinant, 7);
    assert_eq!(rec.surfaces.len(), 3);

    let (code, out, _) = run_args(&["invariants", "9", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("[-2,2,-2,3]"), "{out}");
}

#[test]
fn process_exit_codes() {
    let ok = exe().args(["verify", "5", "2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("PASS"));

    for bad in [&["surfaces", "4", "1"][..], &["invariants", "9", "3"], &["census", "--max-alpha", "2"], &["surfaces"]] {
        let out = exe().args(bad).output().unwrap();
        assert_eq!(out.status.code(), Some(EXIT_INVALID), "{bad:?}");
        assert!(!out.stderr.is_empty());
    }

    let out = exe().args(["verify", "5", "2"]).env(ORACLE_ENV, "lots").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INVALID));
}

#[test]
fn consistency_failures_exit_one() {
    let f = Failure::from(Error::Consistency { theorem: "determinant identity", detail: "witness".into() });
    assert_eq!(f.code, EXIT_INCONSISTENT);
    assert!(f.message.contains("determinant identity"));
    let f = Failure::from(Error::OracleBound { size: 9, bound: 8 });
    assert_eq!(f.code, EXIT_INCONSISTENT);
    let f = Failure::from(bridgestate::verify::PropertyFailure {
        knot: TwoBridgeKnot::new(5, 2).unwrap(),
        property: "symmetry",
        witness: "x".into(),
    });
    assert_eq!(f.code, EXIT_INCONSISTENT);
    assert_eq!(Failure::from(Error::InvalidInput("bad".into())).code, EXIT_INVALID);
}

#[test]
fn json_round_trip() {
    for (a, b) in [("5", "2"), ("7", "3"), ("59", "1"), ("97", "41")] {
        let (_, out, _) = run_args(&["invariants", a, b, "--json"]);
        let rec: KnotRecord = serde_json::from_str(&out).unwrap();
        assert_eq!(render::report_json(&rec), out);
    }
    let (_, out, _) = run_args(&["census", "--max-alpha", "15", "--json"]);
    let recs: Vec<KnotRecord> = serde_json::from_str(&out).unwrap();
    let mut again = serde_json::to_string_pretty(&recs).unwrap();
    again.push('\n');
    assert_eq!(again, out);
}

#[test]
fn long_expansions_serialize_exactly() {
    // The Seifert surface of K(201, 1) has 200 bands; its scaled
    // coefficients far exceed 64 bits.
    let (_, out, _) = run_args(&["invariants", "201", "1", "--json"]);
    let rec: KnotRecord = serde_json::from_str(&out).unwrap();
    let alex = rec.alexander_coefficients();
    assert_eq!(alex.len(), 201);
    let expected: Vec<i64> = (0..=200).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
    assert_eq!(alex, expected.into_iter().map(Into::into).collect::<Vec<num_bigint::BigInt>>());
}

#[test]
fn census_rows_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    for jobs in ["1", "8"] {
        let (code, _, err) = run_args(&[
            "census",
            "--max-alpha",
            "41",
            "--out",
            &path(&format!("c{jobs}.csv")),
            "--out-surfaces",
            &path(&format!("s{jobs}.csv")),
            "--jobs",
            jobs,
        ]);
        assert_eq!(code, EXIT_OK, "{err}");
    }
    for name in ["c", "s"] {
        let a = std::fs::read(path(&format!("{name}1.csv"))).unwrap();
        let b = std::fs::read(path(&format!("{name}8.csv"))).unwrap();
        assert_eq!(a, b);
    }
    let csv = std::fs::read_to_string(path("c1.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], bridgestate_cli::model::CENSUS_HEADER);
    assert!(rows.contains(&"5,2,3,0,2,2,-4;0;4,1;-3;1"));

    let (_, small, _) = run_args(&["census", "--max-alpha", "9"]);
    let keys: Vec<(u64, u64)> = small
        .lines()
        .skip(1)
        .map(|l| {
            let mut it = l.split(',');
            (it.next().unwrap().parse().unwrap(), it.next().unwrap().parse().unwrap())
        })
        .collect();
    let expected: Vec<(u64, u64)> =
        TwoBridgeKnot::census(9).iter().map(|k| (k.alpha(), k.beta())).collect();
    assert_eq!(keys, expected);
    assert!(keys.iter().all(|&(a, _)| [3, 5, 7, 9].contains(&a)));
    assert_eq!(keys.len(), 2 + 4 + 6 + 6);
}

#[test]
fn unwritable_output_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing").join("census.csv");
    let (code, _, err) = run_args(&["census", "--max-alpha", "9", "--out", target.to_str().unwrap()]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("cannot write"), "{err}");
    let (code, _, _) =
        run_args(&["census", "--max-alpha", "9", "--out-surfaces", dir.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_INVALID);
}

fn record(a: &str, b: &str) -> KnotRecord {
    let (code, out, _) = run_args(&["invariants", a, b, "--json"]);
    assert_eq!(code, EXIT_OK);
    serde_json::from_str(&out).unwrap()
}

fn signed_multiset(r: &KnotRecord, sign: i64) -> Vec<(i64, i64, bridgestate_cli::model::PolyJson)> {
    let mut v: Vec<_> = r
        .surfaces
        .iter()
        .map(|s| (sign * s.state_signature, sign * s.boundary_slope, s.state_polynomial.clone()))
        .collect();
    v.sort_by(|x, y| (x.0, x.1, format!("{:?}", x.2)).cmp(&(y.0, y.1, format!("{:?}", y.2))));
    v
}

#[test]
fn mirror_presentation_flips_signs() {
    // K(α, α − β) is the mirror of K(α, β).
    for (a, b, m) in [("5", "1", "4"), ("5", "2", "3"), ("7", "3", "4"), ("7", "2", "5"), ("9", "2", "7")] {
        let (k, mirror) = (record(a, b), record(a, m));
        assert_eq!(k.signature, -mirror.signature);
        assert_eq!(signed_multiset(&k, 1), signed_multiset(&mirror, -1), "K({a},{b})");
    }
    // The figure-eight knot is its own mirror.
    assert_eq!(signed_multiset(&record("5", "2"), 1), signed_multiset(&record("5", "3"), 1));
    // The (2,5) torus knot is not.
    assert_ne!(signed_multiset(&record("5", "1"), 1), signed_multiset(&record("5", "4"), 1));
    for b in ["1", "2", "3", "4"] {
        assert_eq!(run_args(&["verify", "5", b]).0, EXIT_OK);
    }
}

#[test]
fn inverse_presentation_agrees() {
    // 2·4 ≡ 1 mod 7 and 2·5 ≡ 1 mod 9.
    for (a, b, inv) in [("7", "2", "4"), ("9", "2", "5"), ("11", "3", "4")] {
        assert_eq!(signed_multiset(&record(a, b), 1), signed_multiset(&record(a, inv), 1));
    }
}

#[test]
fn verify_range_reports_counts() {
    let (code, out, _) = run_args(&["verify", "--max-alpha", "21"]);
    assert_eq!(code, EXIT_OK);
    let knots = TwoBridgeKnot::census(21).len();
    assert!(out.starts_with(&format!("PASS {knots} knots, ")), "{out}");
}
