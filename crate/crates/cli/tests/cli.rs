use std::path::PathBuf;
use std::process::Command;

use arithdyn::poly::{QPoly, QiPoly};
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_arithdyn"));
    cmd.args(args).env_remove("ARITHDYN_CONFIG");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn run(args: &[&str]) -> Run {
    run_env(args, &[])
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let r = run(&all);
    assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
    serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}: {}", r.stdout))
}

fn schema(name: &str) -> Value {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "schemas", &format!("{name}.schema.json")].iter().collect();
    serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

/// `(subcommand, extra args, qi domain)` covering every subcommand.
const CASES: &[(&str, &[&str], bool)] = &[
    ("orbit", &["X^2+2", "--n", "5"], false),
    ("orbit", &["X^2-X", "--x0", "-1", "--n", "4"], false),
    ("multdep", &["4", "8"], false),
    ("multdep", &["2", "3"], false),
    ("multdep", &["0", "3"], false),
    ("multdep", &["--random", "4", "--seed", "11"], false),
    ("rank", &["2", "3", "6"], false),
    ("leveque", &["X^2*(X-1)^3*(X-2)", "--m", "3"], false),
    ("classify", &["X^3-6*i*X^2-9*X+4*i", "--m", "2"], true),
    ("classify", &["4*X*(X-1)^2", "--m", "2"], false),
    ("classify", &["X^3+X+1", "--m", "3"], false),
    ("exceptional", &["X^2*(X-1)^3*(X-2)"], false),
    ("exceptional", &["X^2*(X-1)^3*(X-2)", "--g", "(X-1)(X-2)(X-3)(X-4)"], false),
    ("hat", &["4*X*(X-1)^2", "--l", "2"], false),
    ("hat", &["X*(X-i)^2", "--l", "2"], true),
    ("verify-semiconj", &["4*X*(X-1)^2", "--l", "2", "--n", "2"], false),
    ("verify-semiconj", &["X^3+1", "--hat", "X^3-1", "--l", "1"], false),
    ("common-iterate", &["X^2", "X^4"], false),
    ("common-iterate", &["X^2+1", "X^3"], false),
    ("standard-pair", &["first", "--m", "3", "--r", "1", "--a", "-1", "--p", "X-2", "--switched"], false),
    ("standard-pair", &["second", "--a", "2", "--b", "-1"], false),
    ("standard-pair", &["third", "--m", "2", "--n", "3", "--a", "1/2"], false),
    ("standard-pair", &["fourth", "--m", "2", "--n", "6", "--a", "4"], false),
    ("standard-pair", &["fifth", "--a", "2"], false),
    ("standard-pair", &["specific", "--m", "3", "--n", "3"], false),
    ("scan-solutions", &["X^2", "2*X^2-1", "--H", "50"], false),
    ("rds-check", &["X^2+2", "--n", "12"], false),
    ("rds-check", &["--sequence", "2,3,5,9"], false),
    ("ppd", &["X^2+2", "--n", "8"], false),
    ("sqfree", &["X^3*(X-1)^2*(2*X+1)"], false),
    ("sqfree", &["(X-i)^2*(X+i)"], true),
    ("sqfree", &["--integer", "360"], false),
    ("count", &["--f", "X^2+2", "--x", "0", "--n", "2", "--N", "4"], false),
    ("abc-check", &["X^2", "1-X^2+X"], false),
];

fn case_args<'a>(cmd: &'a str, extra: &[&'a str], qi: bool) -> Vec<&'a str> {
    let mut args = vec![cmd];
    args.extend_from_slice(extra);
    if qi {
        args.extend(["--domain", "qi"]);
    }
    args
}

#[test]
fn multdep_json_exact() {
    let r = run(&["multdep", "4", "8", "--json"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.trim_end(), r#"{"status":"dependent","k":[3,-2],"rank":1}"#);
}

#[test]
fn classify_square_iterate_example() {
    let v = json(&["classify", "X^3-6*i*X^2-9*X+4*i", "--m", "2", "--domain", "qi"]);
    assert_eq!(v["case"], "SquareIterateExceptional");
    assert_eq!(v["form"]["s"], 1);
    assert_eq!(v["form"]["p"], "X^4 - 9*i*X^3 - 27*X^2 + 30*i*X + 9");
    assert_eq!(v["form"]["m"], 2);
}

#[test]
fn count_text_and_csv() {
    let r = run(&["count", "--f", "X^2+2", "--x", "0", "--n", "2", "--N", "3"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("count 3 "));
    assert!(r.stdout.contains("m_1,m_2,k_1,k_2\n1,1,1,-1\n2,2,1,-1\n3,3,1,-1\n"));
    let csv = run(&["count", "--f", "X^2+2", "--x", "0", "--n", "2", "--N", "3", "--csv"]);
    assert_eq!(csv.stdout, "m_1,m_2,k_1,k_2\n1,1,1,-1\n2,2,1,-1\n3,3,1,-1\n");
}

#[test]
fn exit_codes() {
    let r = run(&["frobnicate"]);
    assert_eq!(r.code, 64);
    assert!(r.stderr.contains("Usage"));
    assert_eq!(run(&["rank", "--bogus", "2"]).code, 64);
    assert_eq!(run(&["--help"]).code, 0);
    // Domain errors.
    assert_eq!(run(&["rank", "0", "3"]).code, 1);
    assert_eq!(run(&["hat", "X^2+1", "--l", "2"]).code, 1);
    assert_eq!(run(&["orbit", "X^2+", "--n", "2"]).code, 1);
    assert_eq!(run(&["orbit", "X^2", "--domain", "qi"]).code, 1);
    assert_eq!(run(&["standard-pair", "third", "--m", "2", "--n", "4"]).code, 1);
    // Budget and effort exhaustion.
    let r = run(&["count", "--f", "X^2+2", "--x", "0", "--n", "3", "--N", "1000"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("largest feasible N"));
    assert_eq!(run(&["orbit", "X^2+2", "--n", "40"]).code, 2);
    let p = "1000000000000000000000000000057"; // prime, too large for trial division alone
    let semi = format!("{}", 1_000_000_007u128 * 998_244_353u128 * 1_000_000_009u128);
    let r = run(&["sqfree", "--integer", &semi, "--trial-bound", "10", "--rho-iterations", "5", "--rho-attempts", "1"]);
    assert_eq!(r.code, 2, "{}", r.stdout);
    assert_eq!(run(&["sqfree", "--integer", p]).code, 0);
}

#[test]
fn negative_arguments() {
    let v = json(&["multdep", "-3/2", "9/4"]);
    assert_eq!(v["k"], serde_json::json!([2, -1]));
    let v = json(&["orbit", "-X^2+1", "--x0", "-1", "--n", "3"]);
    assert_eq!(v["values"], serde_json::json!(["0", "1", "0"]));
}

#[test]
fn json_outputs_match_schemas() {
    for (cmd, extra, qi) in CASES {
        let args = case_args(cmd, extra, *qi);
        let v = json(&args);
        let validator = jsonschema::validator_for(&schema(cmd)).unwrap();
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}\n{v}");
    }
}

#[test]
fn schemas_reject_malformed_output() {
    let validator = jsonschema::validator_for(&schema("multdep")).unwrap();
    assert!(!validator.is_valid(&serde_json::json!({"status": "dependent", "k": [3, -2]})));
    assert!(!validator.is_valid(&serde_json::json!({"status": "maybe", "k": null, "rank": 1})));
}

const POLY_KEYS: &[&str] = &["f", "hat", "p", "square", "f1", "g1", "factor", "radical", "c"];

fn collect_polys(v: &Value, key: Option<&str>, out: &mut Vec<String>) {
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| collect_polys(x, Some(k), out)),
        Value::Array(a) => a.iter().for_each(|x| collect_polys(x, key, out)),
        Value::String(s) if key.is_some_and(|k| POLY_KEYS.contains(&k)) => out.push(s.clone()),
        _ => {}
    }
}

#[test]
fn printed_polynomials_round_trip() {
    let mut checked = 0;
    for (cmd, extra, qi) in CASES {
        if *cmd == "sqfree" && extra.contains(&"--integer") {
            continue;
        }
        let args = case_args(cmd, extra, *qi);
        let mut polys = Vec::new();
        collect_polys(&json(&args), None, &mut polys);
        for s in polys {
            if *qi {
                let p: QiPoly = s.parse().unwrap_or_else(|e| panic!("{args:?}: {s:?}: {e}"));
                assert_eq!(p.to_string(), s);
            } else {
                let p: QPoly = s.parse().unwrap_or_else(|e| panic!("{args:?}: {s:?}: {e}"));
                assert_eq!(p.to_string(), s);
            }
            checked += 1;
        }
    }
    assert!(checked > 25, "only {checked} polynomials seen");
}

#[test]
fn printed_values_are_the_library_values() {
    let v = json(&["hat", "4*X*(X-1)^2", "--l", "2"]);
    let hat: QPoly = v["hat"].as_str().unwrap().parse().unwrap();
    assert_eq!(hat, "2*X^3-2*X".parse().unwrap());
    let v = json(&["standard-pair", "fifth", "--a", "2"]);
    let f1: QPoly = v["f1"].as_str().unwrap().parse().unwrap();
    assert_eq!(f1, "(2*X^2-1)^3".parse().unwrap());
}

#[test]
fn config_file_and_flag_precedence() {
    let path = std::env::temp_dir().join(format!("arithdyn-cli-test-{}.toml", std::process::id()));
    std::fs::write(&path, "budget = 10\ndomain = \"qi\"\n").unwrap();
    let env = [("ARITHDYN_CONFIG", path.to_str().unwrap())];
    let args = ["count", "--f", "X^2+2", "--x", "0", "--n", "2", "--N", "3", "--domain", "q"];
    assert_eq!(run_env(&args, &env).code, 2);
    let mut wider = args.to_vec();
    wider.extend(["--budget", "100"]);
    assert_eq!(run_env(&wider, &env).code, 0);
    // The config's domain applies when no flag is given.
    let r = run_env(&["sqfree", "(X-i)^2", "--json"], &env);
    assert_eq!(r.code, 0, "{}", r.stderr);
    std::fs::write(&path, "bugdet = 10\n").unwrap();
    assert_eq!(run_env(&["rank", "2"], &env).code, 64);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn count_output_independent_of_threads() {
    let base = ["count", "--f", "X^2+2", "--f", "X^2+1", "--x", "0", "--x", "1", "--N", "12", "--json"];
    let outputs: Vec<String> = ["1", "2", "4"]
        .iter()
        .map(|t| {
            let mut args = base.to_vec();
            args.extend(["--threads", t]);
            let r = run(&args);
            assert_eq!(r.code, 0, "{}", r.stderr);
            r.stdout
        })
        .collect();
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn seeded_random_entry_point_is_reproducible() {
    let a = run(&["multdep", "--random", "4", "--seed", "5"]).stdout;
    let b = run(&["multdep", "--random", "4", "--seed", "5"]).stdout;
    assert_eq!(a, b);
    let differs = (0..8).map(|s| run(&["multdep", "--random", "4", "--seed", &s.to_string()]).stdout).any(|o| o != a);
    assert!(differs);
}

#[test]
fn every_subcommand_has_a_schema_and_a_case() {
    let names = [
        "orbit", "multdep", "rank", "leveque", "classify", "exceptional", "hat", "verify-semiconj", "common-iterate",
        "standard-pair", "scan-solutions", "rds-check", "ppd", "sqfree", "count", "abc-check",
    ];
    for n in names {
        schema(n);
        assert!(CASES.iter().any(|c| c.0 == n), "no case for {n}");
    }
}
