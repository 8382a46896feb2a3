use std::process::Command;

use gerst::cli::{run, EXIT_FAILED, EXIT_OK, EXIT_USAGE};

fn gerst(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("gerst").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn enumerate_type_two() {
    let (code, out, _) = gerst(&["formulas", "enumerate", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().collect::<Vec<_>>(), ["1(2)", "1*2", "2(1)", "2*1"]);
    let (_, json, _) = gerst(&["formulas", "enumerate", "2", "--dim", "0", "--json"]);
    assert_eq!(json.trim(), r#"["1*2","2*1"]"#);
}

#[test]
fn formula_manipulation() {
    let (_, out, _) = gerst(&["formulas", "faces", "1(2)"]);
    assert_eq!(out, "d[1,0] + 2*1\nd[1,1] - 1*2\n");
    let (_, out, _) = gerst(&["formulas", "substitute", "1(2)", "2", "1(2)"]);
    assert_eq!(out.trim(), "1(2(3))");
    let (_, out, _) = gerst(&["formulas", "thicken", "1(2)", "1", "--top"]);
    let mut lines: Vec<&str> = out.lines().collect();
    lines.sort();
    assert_eq!(lines, ["1(2(_))", "1(2,_)", "1(_,2)"]);
    let (code, _, err) = gerst(&["formulas", "faces", "1(1)"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.starts_with("error:"));
}

#[test]
fn circle_homology_table() {
    let (code, out, _) = gerst(&["homology", "cells", "--n", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "H0: Z, H1: Z");
    let (_, csv, _) = gerst(&["homology", "nerve", "--n", "2", "--format", "csv"]);
    assert!(csv.starts_with("degree,rank,torsion\n0,1,\n1,1,\n"));
    let (_, json, _) = gerst(&["homology", "cells", "--n", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v[1]["rank"], 1);
}

#[test]
fn subcomplex_below_an_order_pair_is_acyclic() {
    let (code, out, _) = gerst(&["homology", "subcomplex", "--n", "3", "--t", "312", "--p", "3<1"]);
    assert_eq!(code, EXIT_OK);
    let groups: Vec<&str> = out.trim().split(", ").collect();
    assert_eq!(groups[0], "H0: Z");
    assert!(groups[1..].iter().all(|g| g.ends_with(": 0")), "{out}");
}

#[test]
fn export_writes_complex_json() {
    let path = std::env::temp_dir().join("gerst-cells-3.json");
    let (code, _, _) = gerst(&["homology", "cells", "--n", "3", "--export", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let c = gerst::io::complex_from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(c, gerst_core::chains::cellular_complex(3).unwrap());
}

#[test]
fn posets_of_two_symbols() {
    let (_, out, _) = gerst(&["posets", "enumerate", "--n", "2"]);
    assert_eq!(out.lines().count(), 4);
    assert!(out.contains("t=12;p=1<2"));
}

#[test]
fn relations_pass_and_record_seed() {
    let (code, out, _) = gerst(&["verify", "relations", "--algebra", "dual(2)", "--seed", "7", "--trials", "200"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.starts_with("# verify relations over dual(2) trials=200 seed=7 size_cap="));
}

#[test]
fn outer_slot_convention_prints_a_reproducer() {
    let (code, out, _) =
        gerst(&["verify", "relations", "--algebra", "mat2(3)", "--seed", "1", "--trials", "50", "--convention", "outer"]);
    assert_eq!(code, EXIT_FAILED);
    assert!(out.contains("FAIL") && out.contains("inputs:"), "{out}");
    let line = out.lines().find(|l| l.starts_with("{\"algebra\"")).unwrap();
    assert!(gerst::io::cochain_from_json(line).is_ok());
}

#[test]
fn output_is_reproducible() {
    let args = ["verify", "cosimplicial", "--instance", "hochschild:dual(2)", "--max-level", "3", "--seed", "5", "--samples", "20"];
    let (code, first, _) = gerst(&args);
    assert_eq!(code, EXIT_OK, "{first}");
    assert_eq!(gerst(&args).1, first);
}

#[test]
fn cosimplicial_instances() {
    let (code, out, _) = gerst(&["cosimplicial", "verify", "--instance", "cobar:Z/2", "--max-level", "3"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let inline = r#"cobar:{"size":3,"unit":0,"table":[[0,1,2],[1,1,1],[2,2,2]]}"#;
    let (code, out, _) = gerst(&["cosimplicial", "verify", "--instance", inline, "--max-level", "3"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let not_monoid = r#"cobar:{"size":2,"unit":0,"table":[[0,0],[0,0]]}"#;
    assert_eq!(gerst(&["cosimplicial", "verify", "--instance", not_monoid]).0, EXIT_USAGE);
    assert_eq!(gerst(&["cosimplicial", "verify", "--instance", "ring:Z"]).0, EXIT_USAGE);
}

#[test]
fn cohomology_table() {
    let (code, out, _) = gerst(&["hochschild", "cohomology", "--algebra", "mat2(3)", "--max-degree", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("HH^0: rank 1\nHH^1: rank 0\nHH^2: rank 0\n"), "{out}");
    let (_, json, _) = gerst(&["hochschild", "cohomology", "--algebra", "dual(0)", "--max-degree", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["cohomology"][2]["torsion"][0], "2");
}

#[test]
fn algebra_files_are_accepted() {
    let alg = gerst_core::algebra::FiniteAlgebra::builtin("groupZ2(3)").unwrap();
    let path = std::env::temp_dir().join("gerst-groupZ2-3.json");
    std::fs::write(&path, gerst::io::algebra_to_json(&alg)).unwrap();
    let (code, out, _) =
        gerst(&["hochschild", "cohomology", "--algebra", path.to_str().unwrap(), "--max-degree", "1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("HH^0: rank 2"), "{out}");
}

#[test]
fn chainmap_and_subdivision_suites() {
    let (code, out, _) = gerst(&["verify", "chainmap", "--tuples", "10", "--max-sum", "3", "--seed", "2"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let (code, out, _) = gerst(&["verify", "subdivision", "--points", "50", "--seed", "3"]);
    assert_eq!(code, EXIT_OK, "{out}");
}

#[test]
fn subdivide_writes_svg() {
    let path = std::env::temp_dir().join("gerst-prism.svg");
    let (code, _, _) = gerst(&["subdivide", "--n", "2", "--u", "0.4", "--samples", "4", "--svg", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("<svg"));
    let (code, out, _) = gerst(&["subdivide", "fiberwise", "--formula", "1(2)", "--k", "1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains(">1(2(_))<"));
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, err) = gerst(&["homology", "cells", "--n", "2", "--frobnicate"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("Usage"));
    assert_eq!(gerst(&["verify", "relations", "--algebra", "nope(3)"]).0, EXIT_USAGE);
    assert_eq!(gerst(&["--help"]).0, EXIT_OK);
}

#[test]
fn braid_check_passes() {
    let (code, out, _) = gerst(&["braid-check"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("PASS"));
}

#[test]
fn binary_honours_size_cap_variable() {
    let bin = env!("CARGO_BIN_EXE_gerst");
    let status = Command::new(bin)
        .args(["hochschild", "cohomology", "--algebra", "mat2(3)", "--max-degree", "3"])
        .env("GERST_SIZE_CAP", "64")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(EXIT_USAGE));
    assert!(String::from_utf8_lossy(&status.stderr).contains("size cap"));
    let ok = Command::new(bin).args(["formulas", "enumerate", "1"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "1\n");
}
