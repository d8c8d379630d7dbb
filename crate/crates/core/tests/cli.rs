use std::fs;
use std::path::PathBuf;

use stabprob::cli::run;

fn stabprob(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("stabprob").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("stabprob-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

#[test]
fn f_table_rows() {
    let (code, out, _) = stabprob(&["f-table", "--builtin", "steane"]);
    assert_eq!(code, 0);
    assert_eq!(out, "t,f\n0,1\n1,1\n2,9/16\n3,5/16\n4,5/64\n5,0\n6,0\n7,0\n");
}

#[test]
fn crossing_near_0138() {
    let (code, out, _) = stabprob(&["crossing", "--builtin", "shor", "--builtin2", "steane", "--from", "0.05", "--to", "0.2"]);
    assert_eq!(code, 0);
    let value: f64 = out.trim().strip_prefix("p* = ").unwrap().parse().unwrap();
    assert!((value - 0.138).abs() < 0.002);
    let (_, same, _) = stabprob(&["crossing", "--builtin", "five", "--builtin2", "five"]);
    assert_eq!(same.trim(), "the curves are identical");
    let (_, csv, _) = stabprob(&["crossing", "--csv", "--builtin", "shor", "--builtin2", "steane", "--from", "0.3", "--to", "0.5"]);
    assert_eq!(csv, "result,p\nnone,n/a\n");
}

#[test]
fn classes_listing() {
    let (code, out, _) = stabprob(&["classes", "--builtin", "steane", "--support", "1,3,5,7", "--syndrome", "000111"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines.contains(&"XIXIXII") && lines.contains(&"IIIIIIX"));
    let (code, out, _) = stabprob(&["classes", "--csv", "--builtin", "five", "--support", "1,2"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 17);
    assert_eq!(out.lines().filter(|l| l.ends_with(",true")).count(), 7);
}

#[test]
fn syndrome_and_distance() {
    assert_eq!(stabprob(&["syndrome", "--builtin", "five", "--pauli", "IZIII"]).1, "0101\n");
    assert_eq!(stabprob(&["distance", "--builtin", "shor"]).1, "d = 3\n");
    assert_eq!(stabprob(&["distance", "--csv", "--builtin", "steane"]).1, "distance\n3\n");
}

#[test]
fn quality_report_verdicts() {
    let (code, out, _) = stabprob(&["quality-report", "--csv", "--builtin", "shor", "--p", "0.05", "--tau", "0.01"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 6);
    let zero = rows.iter().find(|r| r.contains("01010111")).unwrap();
    assert!(zero.contains(",ABORT,"));

    let (_, out, _) = stabprob(&["quality-report", "--csv", "--builtin", "steane", "--p", "0.05", "--tau", "0"]);
    let sizes: Vec<&str> = out.lines().skip(1).map(|r| r.split(',').nth(1).unwrap()).collect();
    assert_eq!(sizes, ["1", "21", "42"]);
    assert!(out.lines().skip(1).all(|r| r.contains(",ACCEPT,")));

    let (code, _, err) = stabprob(&["quality-report", "--builtin", "steane", "--p", "0", "--tau", "0.1"]);
    assert_eq!(code, 1);
    assert!(err.contains("probability zero") || err.contains("zero"), "{err}");
}

#[test]
fn quality_single_syndrome() {
    let (code, out, _) = stabprob(&["quality", "--csv", "--builtin", "steane", "--syndrome", "110011", "--t", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "syndrome,q2,prob2\n110011,1/3,1/112\n");
    let (_, out, _) = stabprob(&["quality", "--csv", "--builtin", "five", "--syndrome", "0101", "--t", "0"]);
    assert_eq!(out, "syndrome,q0,prob0\n0101,n/a,0\n");
}

#[test]
fn search_regenerates_stored_table() {
    let (code, out, _) = stabprob(&["search-phi", "--builtin", "shor"]);
    assert_eq!(code, 0);
    assert_eq!(out, include_str!("../data/shor.table"));
    let (_, out, _) = stabprob(&["search-phi", "--builtin", "five", "--compare", "0.1"]);
    assert!(out.starts_with("# lex and p=0.1 optima coincide\n"));
}

#[test]
fn h_curve_grid() {
    let (code, out, _) = stabprob(&["h-curve", "--builtin", "steane", "--builtin2", "shor", "--points", "5", "--from", "0", "--to", "0.2"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "p,h,h2");
    assert_eq!(lines[1], "0,1,1");
    assert_eq!(lines.len(), 6);
    let default = stabprob(&["h-curve", "--builtin", "five"]).1;
    assert_eq!(default.lines().count(), 201);
}

#[test]
fn files_and_errors() {
    let code_path = temp_file("five.code", "# five-qubit code\nXZZXI\nIXZZX\n\nXIXZZ\nZXIXZ\n");
    let table_text = stabprob(&["search-phi", "--builtin", "five"]).1;
    let table_path = temp_file("five.table", &table_text);
    let (code, out, _) = stabprob(&["f-table", "--code", code_path.to_str().unwrap(), "--table", table_path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("2,7/16"));
    let (code, out, _) = stabprob(&["f-table", "--code", code_path.to_str().unwrap(), "--search", "p=0.1"]);
    assert_eq!(code, 0);
    assert!(out.contains("2,7/16"));

    let bad = temp_file("bad.code", "XZZXI\nIXZQX\n");
    let (code, _, err) = stabprob(&["distance", "--code", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("line 2"), "{err}");

    let (code, _, err) = stabprob(&["f-table", "--code", code_path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("--table"), "{err}");

    assert_eq!(stabprob(&["frobnicate"]).0, 2);
    assert_eq!(stabprob(&["f-table"]).0, 2);
    assert_eq!(stabprob(&["f-table", "--builtin", "golay"]).0, 2);
    assert_eq!(stabprob(&["f-table", "--builtin", "five", "--code", "x"]).0, 2);
    assert_eq!(stabprob(&["--help"]).0, 0);
    assert_eq!(stabprob(&["h-curve", "--builtin", "five", "--to", "1.5"]).0, 1);
}

#[test]
fn oracle_commands() {
    let (code, out, _) = stabprob(&["oracle-check", "--csv", "--builtin", "five"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 1 + 1 + 5 + 10);
    assert!(out.lines().skip(1).all(|l| l.ends_with(",ok")));

    let args = ["oracle-estimate", "--csv", "--builtin", "five", "--t", "0,2", "--trials", "2000", "--seed", "4"];
    let (code, first, _) = stabprob(&args);
    assert_eq!(code, 0);
    assert_eq!(first, stabprob(&args).1);
    let row: Vec<&str> = first.lines().nth(2).unwrap().split(',').collect();
    assert_eq!(row[4], "7/16");
    let z: f64 = row[5].parse().unwrap();
    assert!(z.abs() < 3.0);
    assert!(first.lines().nth(1).unwrap().starts_with("0,2000,1,0,1,"));
}
