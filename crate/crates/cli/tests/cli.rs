use std::process::Command;

use monodromy_cli::report::Report;
use monodromy_cli::{run, Outcome};

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("monodromy").chain(args.iter().copied()))
}

fn ok(args: &[&str]) -> String {
    let out = cli(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    out.stdout
}

fn json(args: &[&str]) -> (String, Report) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let text = ok(&full);
    let report: Report = serde_json::from_str(&text).unwrap();
    (text, report)
}

#[test]
fn text_outputs_of_the_cusp() {
    assert_eq!(ok(&["zeta", "--poly", "x^2+y^3"]), "(1-t^2)(1-t^3)(1-t^6)^-1\n");
    assert_eq!(ok(&["spectrum", "--poly", "x^2+y^3"]), "t^(5/6) + t^(7/6)\n");
    let cp = ok(&["charpoly", "--poly", "x^2+y^3"]);
    assert!(cp.contains("= 1 - t + t^2\n"), "{cp}");
    assert!(cp.contains("degree 2\n"));
}

#[test]
fn linear_polynomial_is_trivial() {
    assert_eq!(ok(&["zeta", "--poly", "x+y"]), "(1-t)\n");
    assert_eq!(ok(&["spectrum", "--poly", "x + y"]), "0\n");
    assert_eq!(ok(&["jordan", "--poly", "x + y"]), "no Jordan blocks\n");
}

#[test]
fn jordan_json_lists_four_eigenvalue_groups() {
    let (_, report) = json(&["jordan", "--poly", "x^3+y^3+x^2*y^2"]);
    let Report::Jordan(table) = report else { panic!("wrong report") };
    assert!(table.complete);
    let groups: Vec<(String, Vec<(usize, u64)>)> = table
        .eigenvalues
        .iter()
        .map(|g| (g.eigenvalue.to_string(), g.blocks.clone()))
        .collect();
    assert_eq!(
        groups,
        vec![
            ("0/1".to_string(), vec![(1, 1)]),
            ("1/6".to_string(), vec![(1, 2)]),
            ("1/2".to_string(), vec![(2, 1)]),
            ("5/6".to_string(), vec![(1, 2)]),
        ]
    );
    let (_, only) = json(&["jordan", "--poly", "x^3+y^3+x^2*y^2", "--eigenvalue", "3/6"]);
    let Report::Jordan(only) = only else { panic!("wrong report") };
    assert_eq!(only.eigenvalues.len(), 1);
    assert_eq!(only.eigenvalues[0].multiplicity, 2);
}

#[test]
fn json_round_trips_byte_for_byte() {
    let cases: &[&[&str]] = &[
        &["zeta", "--poly", "x^3+y^3+x^2*y^2"],
        &["charpoly", "--poly", "x^3+y^3+x^2*y^2"],
        &["jordan", "--poly", "x^4+y^4+z^4"],
        &["spectrum", "--poly", "x^2+y^3"],
        &["hodge", "--poly", "x^3+y^3+x^2*y^2"],
        &["ehrhart", "--poly", "x^3+y^3+x^2*y^2"],
        &["selfcheck", "--poly", "x^2+y^3"],
    ];
    for args in cases {
        let (text, report) = json(args);
        assert_eq!(report.to_json(), text, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    let not_convenient = cli(&["zeta", "--poly", "x^2 + x*y"]);
    assert_eq!(not_convenient.code, 1);
    assert!(not_convenient.stdout.is_empty());
    for bad in ["x^-2 + y", "x + q", "(x + y", "x - x"] {
        let out = cli(&["zeta", "--poly", bad]);
        assert_eq!(out.code, 2, "{bad}");
        assert!(out.stdout.is_empty());
        assert!(out.stderr.contains("column"), "{}", out.stderr);
    }
    assert_eq!(cli(&["zeta"]).code, 2);
    assert_eq!(cli(&["frobnicate"]).code, 2);
    assert_eq!(cli(&["jordan", "--poly", "x+y", "--eigenvalue", "1/0"]).code, 2);
    assert_eq!(cli(&["--help"]).code, 0);
}

#[test]
fn strict_nondegeneracy() {
    // the edge restriction (x+y)^2 has a repeated factor
    let degenerate = cli(&["zeta", "--poly", "x^2 + 2*x*y + y^2", "--strict-nondegenerate"]);
    assert_eq!(degenerate.code, 1);
    let lenient = cli(&["zeta", "--poly", "x^2 + 2*x*y + y^2"]);
    assert_eq!(lenient.code, 0);
    assert!(lenient.stderr.contains("degenerate"));
    assert_eq!(ok(&["zeta", "--poly", "x^2 + 3*x*y + y^2", "--strict-nondegenerate"]), "1\n");
    // two-dimensional faces cannot be verified exactly
    assert_eq!(cli(&["zeta", "--poly", "x^2+y^2+z^2", "--strict-nondegenerate"]).code, 3);
    assert_eq!(cli(&["zeta", "--poly", "x+y", "--strict-nondegenerate", "--assume-nondegenerate"]).code, 2);
}

#[test]
fn parallelism_does_not_change_results() {
    for cmd in ["jordan", "hodge", "ehrhart"] {
        let args = [cmd, "--poly", "x^4 + y^4 + z^4 + x*y*z^2", "--format", "json"];
        let one = ok(&[&args[..], &["--jobs", "1"]].concat());
        let many = ok(&[&args[..], &["--jobs", "4"]].concat());
        assert_eq!(one, many, "{cmd}");
    }
}

#[test]
fn support_json_input() {
    let path = std::env::temp_dir().join(format!("monodromy-cli-test-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"n": 2, "support": [[2,0],[0,3]], "coefficients": [[1,1],[5,3]]}"#).unwrap();
    let file = path.to_str().unwrap();
    assert_eq!(ok(&["zeta", "--support-json", file]), "(1-t^2)(1-t^3)(1-t^6)^-1\n");
    std::fs::write(&path, r#"{"n": 2, "support": [[2,0],[0,-3]]}"#).unwrap();
    assert_eq!(cli(&["zeta", "--support-json", file]).code, 2);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(cli(&["zeta", "--support-json", file]).code, 2);
    assert_eq!(cli(&["zeta", "--support-json", file, "--poly", "x+y"]).code, 2);
}

#[test]
fn selfcheck_on_random_supports() {
    let (_, report) = json(&["selfcheck", "--seed", "11", "--count", "4"]);
    let Report::Selfcheck(r) = report else { panic!("wrong report") };
    assert_eq!(r.instances.len(), 4);
    assert_eq!(r.failures, 0);
    assert!(r.checks > 4);
    let text = ok(&["selfcheck", "--seed", "11", "--count", "4"]);
    assert!(text.ends_with(&format!("4 instances, {} checks, 0 failures\n", r.checks)));
}

#[test]
fn binary_writes_nothing_to_stdout_on_failure() {
    let bin = env!("CARGO_BIN_EXE_monodromy");
    let out = Command::new(bin).args(["spectrum", "--poly", "x^2+y^3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "t^(5/6) + t^(7/6)\n");
    let out = Command::new(bin).args(["spectrum", "--poly", "x^2+"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}
