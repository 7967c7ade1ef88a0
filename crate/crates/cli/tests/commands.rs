use std::process::Command;

use galois_cli::{run, Outcome};

fn galois(args: &[&str]) -> Outcome {
    run(std::iter::once("galois").chain(args.iter().copied()))
}

fn ok(args: &[&str]) -> String {
    let o = galois(args);
    assert_eq!(o.code, 0, "{args:?}: {}", o.stderr);
    o.stdout
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut v = vec!["--json"];
    v.extend_from_slice(args);
    serde_json::from_str(&ok(&v)).unwrap()
}

#[test]
fn dihedral_group_of_t4_minus_2() {
    let out = ok(&["galois", "t^4-2"]);
    assert!(out.starts_with("order 8, type D4\ngenerators: ("), "{out}");
    let v = json(&["galois", "t^4-2"]);
    assert_eq!(v["result"]["order"], 8);
    assert_eq!(v["result"]["type"], "D4");
    assert_eq!(v["result"]["elements"].as_array().unwrap().len(), 8);
}

#[test]
fn quintic_is_not_solvable() {
    assert_eq!(
        ok(&["solvable", "t^5-6*t+3"]),
        "NOT solvable by radicals (Galois group S5)\n"
    );
    let v = json(&["solvable", "t^5-6*t+3"]);
    assert_eq!(v["result"]["verdict"], "NotSolvableByRadicals");
    assert_eq!(v["result"]["evidence_data"]["real_roots"], 3);
    assert!(ok(&["solvable", "t^4-2"]).starts_with("solvable by radicals"));
}

#[test]
fn gf4_modulus_and_generator() {
    let out = ok(&["gf", "2", "2", "--generator", "--subfields"]);
    assert!(out.contains("F2[t]/(t^2 + t + 1)"), "{out}");
    assert!(out.contains("multiplicative generator: a\n"));
    assert!(out.contains("subfield orders: 2, 4\n"));
    let v = json(&["gf", "2", "2", "--generator"]);
    assert_eq!(v["field"], "F2");
    assert_eq!(v["result"]["modulus"], "t^2 + t + 1");
    assert_eq!(v["result"]["generator"], "a");
    assert!(v["result"].get("subfield_orders").is_none());
    let v = json(&["gf", "2", "3", "--subfields"]);
    assert_eq!(v["result"]["subfield_orders"], serde_json::json!([2, 8]));
}

#[test]
fn factoring_over_q_and_fp() {
    assert_eq!(
        ok(&["factor", "t^4 - 1"]),
        "t^4 - 1 = (t - 1) * (t + 1) * (t^2 + 1)\n"
    );
    assert_eq!(
        ok(&["factor", "2*t^2 - 2"]),
        "2*t^2 - 2 = 2 * (t - 1) * (t + 1)\n"
    );
    assert_eq!(
        ok(&["factor", "(t+1)^3"]),
        "t^3 + 3*t^2 + 3*t + 1 = (t + 1)^3\n"
    );
    assert_eq!(
        ok(&["--field", "F3", "factor", "t^2 - 2"]),
        "t^2 + 1 = (t^2 + 1)\n"
    );
    assert_eq!(
        ok(&["--field", "F5", "factor", "t^2 - 2*t + 1"]),
        "t^2 + 3*t + 1 = (t + 4)^2\n"
    );
    let v = json(&["factor", "-t^2 + 1/4"]);
    assert_eq!(v["result"]["unit"], "-1");
    assert_eq!(v["result"]["factors"][0]["factor"], "t - 1/2");
}

#[test]
fn irreducibility_witnesses() {
    assert_eq!(
        ok(&["irreducible", "2*t^5 - 15*t^4 + 9*t^3 + 3"]),
        "irreducible over Q: Eisenstein criterion at p = 3\n"
    );
    assert_eq!(
        ok(&["irreducible", "t^4 + t^3 + t^2 + t + 1"]),
        "irreducible over Q: Eisenstein criterion at p = 5 after t -> t + 1\n"
    );
    assert_eq!(
        ok(&["irreducible", "t^3 - 8"]),
        "reducible over Q: rational root 2\n"
    );
    let v = json(&["irreducible", "t^4 + 4"]);
    assert_eq!(v["result"]["verdict"], "Reducible");
    assert_eq!(v["result"]["witness_kind"], "FullFactorization");
    assert_eq!(
        ok(&["--field", "F2", "irreducible", "t^2 + t + 1"]),
        "irreducible over F2: factor degrees 2\n"
    );
}

#[test]
fn minimal_polynomials() {
    let out = ok(&["minpoly", "t^2-2", "1+t"]);
    assert!(out.ends_with("\nt^2 - 2*t - 1\n"), "{out}");
    let v = json(&["minpoly", "t^4 - 2", "t^2"]);
    assert_eq!(v["result"]["min_poly"], "t^2 - 2");
    assert_eq!(v["result"]["degree"], 2);
    let v = json(&["--field", "F2", "minpoly", "t^2 + t + 1", "t + 1"]);
    assert_eq!(v["result"]["min_poly"], "t^2 + t + 1");
    assert_eq!(galois(&["minpoly", "t^2 - 1", "t"]).code, 2);
}

#[test]
fn splitting_fields() {
    let out = ok(&["splitting-field", "t^3-2"]);
    assert!(
        out.starts_with("splitting field of degree 6 over Q\n"),
        "{out}"
    );
    let v = json(&["splitting-field", "(t^2+1)*(t^2-2)"]);
    assert_eq!(v["result"]["degree"], 4);
    assert_eq!(v["result"]["roots"].as_array().unwrap().len(), 4);
    let v = json(&["--field", "F2", "splitting-field", "t^3 + t + 1"]);
    assert_eq!(v["result"]["degree"], 3);
}

#[test]
fn correspondence_lattice() {
    let out = ok(&["correspondence", "t^4-2"]);
    assert!(out.starts_with("Galois correspondence: 10 subgroups of a group of order 8\n"));
    let heads: Vec<&str> = out
        .lines()
        .filter(|l| l.trim_start().starts_with("order "))
        .collect();
    assert_eq!(heads.len(), 10);
    assert_eq!(heads.iter().filter(|l| l.contains("[normal]")).count(), 6);
    assert!(!out.contains("FAILED"));
    let v = json(&["correspondence", "t^4-2"]);
    let lattice = v["result"]["lattice"].as_array().unwrap();
    assert_eq!(lattice.len(), 10);
    for e in lattice {
        assert_eq!(
            e["order"].as_u64().unwrap() * e["fixed_field"]["dim"].as_u64().unwrap(),
            8
        );
    }
    assert_eq!(v["result"]["mutual_inverse"], true);
}

#[test]
fn constructions() {
    assert_eq!(
        ok(&["construct", "ngon", "17"]),
        "regular 17-gon: constructible\n"
    );
    assert_eq!(
        ok(&["construct", "ngon", "7"]),
        "regular 7-gon: not constructible\n"
    );
    assert!(ok(&["construct", "degree", "6"]).contains("not constructible"));
    assert!(ok(&["construct", "degree", "8"]).contains("necessary condition holds"));
    assert!(ok(&["construct", "degree", "t^3-2"]).contains("not constructible"));
    let v = json(&["construct", "classic"]);
    let probs = v["result"].as_array().unwrap();
    assert_eq!(probs.len(), 3);
    assert!(probs.iter().all(|p| p["possible"] == false));
    assert_eq!(galois(&["construct", "ngon", "2"]).code, 2);
}

#[test]
fn exit_codes() {
    // parse errors
    let o = galois(&["factor", "2t"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("column 2"), "{}", o.stderr);
    // usage errors
    assert_eq!(galois(&[]).code, 2);
    assert_eq!(galois(&["frobnicate"]).code, 2);
    assert_eq!(galois(&["--field", "F9", "factor", "t"]).code, 2);
    assert_eq!(galois(&["--seed-order", "random", "factor", "t"]).code, 2);
    // invalid input for the engine
    assert_eq!(galois(&["--field", "F7", "solvable", "t^2"]).code, 2);
    assert_eq!(galois(&["splitting-field", "3"]).code, 2);
    assert_eq!(galois(&["gf", "4", "2"]).code, 2);
    assert_eq!(galois(&["gf", "2", "0"]).code, 2);
    // caps
    let o = galois(&["--max-degree", "4", "splitting-field", "t^3-2"]);
    assert_eq!(o.code, 3, "{}", o.stderr);
    assert_eq!(galois(&["factor", "t^12 + 2"]).code, 0);
    assert_eq!(galois(&["factor", "t^13 + 2"]).code, 3);
    assert_eq!(
        galois(&["--max-degree", "5", "factor", "t^13 + t + 1"]).code,
        3
    );
    // help and version
    let o = galois(&["--help"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("splitting-field"));
    assert_eq!(galois(&["--version"]).code, 0);
}

#[test]
fn json_errors_and_determinism() {
    let o = galois(&["--json", "factor", "t^"]);
    assert_eq!(o.code, 2);
    let v: serde_json::Value = serde_json::from_str(&o.stderr).unwrap();
    assert_eq!(v["error"], "parse");
    assert_eq!(v["exit_code"], 2);
    let o = galois(&["--json", "--max-degree", "2", "galois", "t^3-2"]);
    assert_eq!(o.code, 3);
    let v: serde_json::Value = serde_json::from_str(&o.stderr).unwrap();
    assert_eq!(v["error"], "cap");
    for args in [
        &["--json", "correspondence", "t^4-2"][..],
        &["--json", "galois", "(t^2+1)*(t^2-2)"][..],
        &["--json", "gf", "3", "4", "--subfields", "--generator"][..],
    ] {
        assert_eq!(galois(args), galois(args));
    }
}

#[test]
fn binary_end_to_end() {
    let bin = env!("CARGO_BIN_EXE_galois");
    let out = Command::new(bin)
        .args(["galois", "t^4-2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("order 8, type D4"));
    let out = Command::new(bin)
        .args(["factor", "-t^2 +"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .starts_with("error: cannot parse"));
    let out = Command::new(bin)
        .args(["--max-degree", "3", "splitting-field", "t^4-2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
