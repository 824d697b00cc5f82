use std::process::Command;

use hopfknot::LaurentPoly;

fn hopfknot(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hopfknot")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

#[test]
fn jpoly_of_kpp41() {
    let (code, out, _) = hopfknot(&["jpoly", "K''(4,1)"]);
    assert_eq!(code, 0);
    assert_eq!(out, "1 - t^5 - t^7 + 2t^11 - t^12\n");
}

#[test]
fn identify_flags_the_ambiguous_pair() {
    let (code, out, _) = hopfknot(&["identify", "--poly", "1 - t + t^7 - t^8"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("matches: K(2,1), K(3,1)\nambiguous: true\n"), "{out}");
    let (_, out, _) = hopfknot(&["identify", "--poly", "1 - t + t^7 - t^8", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["ambiguous"], true);
    assert_eq!(v["matches"], serde_json::json!(["K(2,1)", "K(3,1)"]));
}

#[test]
fn trivial_torus_knot_is_unknot() {
    assert_eq!(hopfknot(&["jones", "T(1,7)"]), (0, "1\n".into(), String::new()));
}

#[test]
fn exit_codes() {
    let (code, _, err) = hopfknot(&["jones", "K(1,2)"]);
    assert_eq!(code, 3);
    assert!(err.contains("a≥b≥1 required"), "{err}");
    assert_eq!(hopfknot(&["jones", "K(2,1"]).0, 2);
    assert_eq!(hopfknot(&["identify", "--poly", "1 + + t"]).0, 2);
    assert_eq!(hopfknot(&["nonsense"]).0, 2);
    assert_eq!(hopfknot(&["jones"]).0, 2);
    assert_eq!(hopfknot(&["pd-bracket", "--pd", "X(1,2,3,4)"]).0, 3);
    assert_eq!(hopfknot(&["pd-bracket", "--pd", "X(1,2"]).0, 2);
    assert_eq!(hopfknot(&["colored", "K(1,1)", "--color", "2"]).0, 3);
    assert_eq!(hopfknot(&["--help"]).0, 0);
}

#[test]
fn json_round_trips_byte_identically() {
    for expr in ["K(2,1)", "K''(4,1)", "mirror(T(2,5))", "cable[(2,3);(2,13)]"] {
        for var in ["t", "A"] {
            let (code, out, _) = hopfknot(&["jones", expr, "--var", var, "--format", "json"]);
            assert_eq!(code, 0);
            let p: LaurentPoly = serde_json::from_str(out.trim_end()).unwrap();
            assert_eq!(serde_json::to_string(&p).unwrap() + "\n", out);
        }
    }
    let (_, out, _) = hopfknot(&["colored", "T(2,3)", "--color", "2", "--format", "json"]);
    assert_eq!(out, "{\"var\":\"A\",\"terms\":[[-18,-1],[-10,1],[-6,1],[-2,1]]}\n");
}

#[test]
fn deterministic_output() {
    for args in [
        vec!["table", "--format", "csv"],
        vec!["enumerate", "--max-span", "20", "--format", "json"],
        vec!["algebraic", "cable[(3,4);(2,25)]"],
        vec!["verify", "--level", "quick"],
    ] {
        assert_eq!(hopfknot(&args), hopfknot(&args), "{args:?}");
    }
}

#[test]
fn table_csv() {
    let (code, out, _) = hopfknot(&["table", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("family,a,b,rolfsen,j_polynomial"));
    assert_eq!(lines.count(), 8);
    assert!(out.contains("K,2,1,9_42,1 - t + t^7 - t^8\n"));
    let (_, out, _) = hopfknot(&["enumerate", "--max-span", "12", "--format", "csv"]);
    assert!(out.starts_with("family,a,b,rolfsen,j_polynomial\nTn,0,,,1 - t^2\n"), "{out}");
}

#[test]
fn bracket_strategies_agree() {
    let r = hopfknot(&["bracket", "K''(5,3)", "--strategy", "recursion"]);
    let c = hopfknot(&["bracket", "K''(5,3)", "--strategy", "closed"]);
    assert_eq!(r.0, 0);
    assert_eq!(r, c);
}

#[test]
fn oracle_commands() {
    let (code, out, _) = hopfknot(&["pd-torus", "3", "4"]);
    assert_eq!(code, 0);
    let pd = out.lines().next().unwrap().strip_prefix("pd: ").unwrap().to_string();
    let (_, jones_line, _) = hopfknot(&["jones", "T(3,4)"]);
    assert!(out.ends_with(&format!("jones: {jones_line}")), "{out}");
    let (code, out, _) = hopfknot(&["pd-bracket", "--pd", &pd]);
    assert_eq!(code, 0);
    assert!(out.contains(&format!("jones: {jones_line}")), "{out}");
}

#[test]
fn algebraic_verdicts() {
    let (code, out, _) = hopfknot(&["algebraic", "cable[(2,3);(2,13)]"]);
    assert_eq!(code, 0);
    assert!(out.contains("h = 1\n") && out.contains("matched knot: K''(3,2)\n") && out.contains("c_alg: 1\n"), "{out}");
    let (_, out, _) = hopfknot(&["algebraic", "cable[(2,3);(2,15)]", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["h"]["lower"], 2);
    assert_eq!(v["h"]["exact"], false);
    assert_eq!(v["fiedler_lower_bound"], 1);
    assert_eq!(v["l_sequence"], serde_json::json!([-2, -34]));
}

#[test]
fn verify_quick_passes() {
    let (code, out, _) = hopfknot(&["verify", "--level", "quick"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 15);
}
