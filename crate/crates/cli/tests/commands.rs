mod common;

use common::{cli, scratch};

#[test]
fn analyze_json_names_the_cone() {
    let o = cli(&["analyze", "corpus:nagata_v1", "--json"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["special"], true);
    assert_eq!(v["h"], "x^2 - y*z");
    assert_eq!(v["seed"], 1);
}

#[test]
fn order_of_reflection() {
    let o = cli(&["order", "corpus:linear_eps"]);
    assert_eq!((o.code, o.stdout.trim()), (0, "finite, m = 2"));
    let o = cli(&["order", "corpus:scale_z", "--iter-bound", "4"]);
    assert!(o.stdout.starts_with("exceeds bound (no f^m = id for m <= 4"), "{}", o.stdout);
}

#[test]
fn fix_and_jacobian_commands() {
    let o = cli(&["fix", "corpus:shear4"]);
    assert_eq!(o.stdout, "hypersurface: z\nFix = V(h): no\n");
    let o = cli(&["fix", "corpus:example2_g"]);
    assert_eq!(o.stdout, "no hypersurface in Fix(f)\n");
    let o = cli(&["jacobian", "corpus:linear_eps"]);
    assert_eq!(o.stdout, "determinant: -1\njacobian: -1 (non-special, multiplicative order 2)\n");
}

#[test]
fn corpus_list_is_sorted() {
    let o = cli(&["corpus", "list"]);
    let names: Vec<&str> = o.stdout.lines().map(|l| l.split_whitespace().next().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort_unstable();
    assert_eq!(names, sorted);
    assert_eq!(names.len(), fixlocus_cli::corpus::ENTRIES.len());
}

#[test]
fn run_all_succeeds_and_is_byte_identical() {
    let a = cli(&["corpus", "run-all", "--json"]);
    let b = cli(&["corpus", "run-all", "--json"]);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    let reports: Vec<serde_json::Value> = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(reports.len(), fixlocus_cli::corpus::ENTRIES.len());
}

#[test]
fn seed_changes_only_the_seed_field_for_deterministic_entries() {
    let a = cli(&["analyze", "corpus:scale_z", "--json", "--seed", "7"]);
    let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["fiber_shift"], true);
}

#[test]
fn print_matches_canonical_form() {
    let o = cli(&["print", "corpus:nagata_v2"]);
    let again = scratch("nagata_v2.map", &o.stdout);
    let o2 = cli(&["print", again.to_str().unwrap()]);
    assert_eq!(o.stdout, o2.stdout);
}

#[test]
fn unknown_entry_and_missing_file_are_input_errors() {
    assert_eq!(cli(&["analyze", "corpus:nope"]).code, 2);
    assert_eq!(cli(&["analyze", "/nonexistent/fixlocus.map"]).code, 2);
    assert_eq!(cli(&["analyze"]).code, 2);
    assert_eq!(cli(&["bogus"]).code, 2);
    assert_eq!(cli(&["--help"]).code, 0);
}

#[test]
fn parse_errors_report_position() {
    let path = scratch("bad.map", "ring x, y\nmap f = (x + , y)\n");
    let o = cli(&["analyze", path.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("bad.map:2:"), "{}", o.stderr);
}

#[test]
fn non_automorphisms_are_rejected() {
    let raw = scratch("raw.map", "ring x, y\nmap f = (x^2, y)\n");
    assert_eq!(cli(&["analyze", raw.to_str().unwrap()]).code, 2);
    let wrong = scratch("wrong.map", "ring x, y\nmap f = (x + y^2, y)\ninverse f = (x + y^2, y)\n");
    let o = cli(&["analyze", wrong.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("map `f`"), "{}", o.stderr);
}

#[test]
fn raw_map_with_constant_jacobian_gets_no_verdicts() {
    let raw = scratch("raw_ok.map", "ring x, y\nmap f = (x + y^2, y)\n");
    let o = cli(&["analyze", raw.to_str().unwrap(), "--json"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["provenance"], "raw");
    assert_eq!(v["h"], "y");
    assert!(v["theorem_verdicts"].as_array().unwrap().iter().all(|t| t["status"] == "not-applicable"));
}

#[test]
fn failing_witness_exits_two() {
    let text = "ring x, y, z\ntame f = [linear((1, 0, 0), (0, 1, 0), (0, 0, 2))]\n\
                witness off for f params t, s = (t, s, 1)\n";
    let path = scratch("bad_witness.map", text);
    let o = cli(&["witness-verify", path.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    assert!(o.stdout.contains("FAILED: image not contained in the target"), "{}", o.stdout);
    assert_eq!(cli(&["witness-verify", "corpus:nagata_v2"]).code, 0);
}

#[test]
fn several_maps_need_a_choice() {
    let path = scratch("two.map", "ring x, y\ntame a = [shift(x, y)]\ntame b = [shift(y, x)]\n");
    let p = path.to_str().unwrap();
    assert_eq!(cli(&["analyze", p]).code, 2);
    let o = cli(&["analyze", p, "--map", "b", "--json"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("\"h\": \"x\""), "{}", o.stdout);
    assert_eq!(cli(&["analyze", p, "--map", "c"]).code, 2);
}

#[test]
fn unknown_identifier_carries_its_position() {
    let path = scratch("unknown.map", "ring x,y  map f = (x, w)");
    let o = cli(&["print", path.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("unknown.map:1:23: unknown identifier `w`"), "{}", o.stderr);
    let path = scratch("oneline.map", "ring x,y,z  map f = (x, y, 2*z)");
    assert_eq!(cli(&["print", path.to_str().unwrap()]).stdout, "ring x, y, z\nmap f = (x, y, 2*z)\n");
}
