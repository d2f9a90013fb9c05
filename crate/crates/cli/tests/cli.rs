use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_arith-torsion"));
    c.env_remove("ARITH_TORSION_DIGITS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("arith-torsion-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn error_of(out: &Output) -> Value {
    serde_json::from_slice::<Value>(&out.stderr).expect("stderr is json")["error"].clone()
}

#[test]
fn verify_lens() {
    let v = json_ok(&["verify", "--lens", "5,1"]);
    let r = &v["result"]["report"];
    assert_eq!(r["equal"], true);
    assert_eq!(r["torsion"]["t"]["numerator"], "25");
    let orders: Vec<_> = r["degrees"].as_array().unwrap().iter().map(|d| d["torsion_order"].clone()).collect();
    assert_eq!(orders, ["1", "5", "1", "5"]);
    assert_eq!(v["job"]["seed"], 0);
    assert!(v.get("timing_ms").is_none());
}

#[test]
fn timing_only_on_request() {
    let v = json_ok(&["torsion", "--lens", "3,1", "--timing"]);
    assert!(v["timing_ms"].is_number());
}

#[test]
fn dims_of_fundamental_multiple() {
    let v = json_ok(&["dims", "--weight", "A2:1,0", "--m", "10"]);
    assert_eq!(v["result"]["dim"], "66");
    assert_eq!(v["result"]["theta_twist"], "A2:0,1");
    let v = json_ok(&["dims", "--rho", "1,1", "--m", "1"]);
    assert_eq!(v["result"]["rank"], "6");
}

#[test]
fn sl3_constants() {
    let v = json_ok(&["constants", "--sl3", "--volX", "1", "--volXd", "1", "--weight", "A2:1,0", "--m", "1"]);
    let t2 = &v["result"]["theorem2"];
    assert_eq!(t2["value"]["pi_coefficient"]["numerator"], "-4");
    assert_eq!(t2["value"]["pi_coefficient"]["denominator"], "3");
    assert!(t2["value"]["decimal"].as_str().unwrap().starts_with("-4.18879020478639098461"));
    assert_eq!(v["result"]["liminf_bound"]["pi_coefficient"]["numerator"], "2");
}

#[test]
fn digits_env_controls_precision() {
    let out = bin()
        .env("ARITH_TORSION_DIGITS", "20")
        .args(["constants", "--sl3", "--volX", "1", "--volXd", "1", "--weight", "A2:1,0", "--m", "1"])
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["theorem2"]["value"]["decimal"], "-4.1887902047863909846");
    let out = bin().env("ARITH_TORSION_DIGITS", "zero").args(["torsion", "--lens", "3,1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn so_constants_sign() {
    let v = json_ok(&["constants", "--so", "3,1", "--volX", "1", "--volXd", "1"]);
    assert_eq!(v["result"]["c_pq_sign"], -1);
    let v = json_ok(&["constants", "--so", "3,3", "--volX", "1", "--volXd", "1"]);
    assert_eq!(v["result"]["c_pq_sign"], 1);
}

fn lens_files(p: usize) -> (PathBuf, PathBuf) {
    let c = scratch(&format!("lens{p}.json"));
    let m = scratch(&format!("zeta{p}.json"));
    let out = run(&["lens", "--p", &p.to_string(), "--complex-out", c.to_str().unwrap(), "--module-out", m.to_str().unwrap()]);
    assert!(out.status.success());
    (c, m)
}

#[test]
fn complex_and_module_files_round_trip() {
    let (c, m) = lens_files(7);
    let v = json_ok(&["cohomology", "--complex", c.to_str().unwrap(), "--module", m.to_str().unwrap()]);
    assert_eq!(v["result"]["acyclic"], true);
    assert_eq!(v["result"]["alternating_torsion"]["numerator"], "49");
}

#[test]
fn maps_input_and_dd_check() {
    let d0 = scratch("d0.txt");
    let d1 = scratch("d1.txt");
    std::fs::write(&d0, "1 1 1\n0 0 6\n").unwrap();
    let v = json_ok(&["cohomology", "--maps", d0.to_str().unwrap()]);
    assert_eq!(v["result"]["degrees"][1]["torsion_order"], "6");
    let v = json_ok(&["torsion", "--maps", d0.to_str().unwrap()]);
    assert_eq!(v["result"]["torsion"]["t"]["numerator"], "6");

    // D_1 D_0 = [1] is nonzero
    std::fs::write(&d0, "1 1 1\n0 0 1\n").unwrap();
    std::fs::write(&d1, "1 1 1\n0 0 1\n").unwrap();
    let out = run(&["cohomology", "--maps", d0.to_str().unwrap(), d1.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(error_of(&out)["kind"], "inconsistent_complex");
    // skipping the check still fails cleanly once ranks stop adding up
    let out = run(&["cohomology", "--check-dd", "false", "--maps", d0.to_str().unwrap(), d1.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn parse_error_reports_location() {
    let bad = scratch("bad.txt");
    std::fs::write(&bad, "2 2 1\n0 0 x\n").unwrap();
    let out = run(&["cohomology", "--maps", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let e = error_of(&out);
    assert_eq!(e["kind"], "parse");
    assert_eq!(e["line"], 2);
    assert!(e["path"].as_str().unwrap().ends_with("bad.txt"));
}

#[test]
fn io_and_validation_codes() {
    let out = run(&["cohomology", "--maps", "/nonexistent/d0.txt"]);
    assert_eq!(out.status.code(), Some(6));
    let out = run(&["lens", "--p", "1"]);
    assert_eq!(out.status.code(), Some(4));
    let out = run(&["dims", "--weight", "A2:-1,0"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(error_of(&out)["kind"], "non_dominant");
    let out = run(&["random", "--shape", "2,2,1"]);
    assert_eq!(error_of(&out)["kind"], "infeasible");
}

#[test]
fn capacity_code() {
    let out = run(&["cohomology", "--lens", "7,1", "--bit-cap", "1"]);
    assert_eq!(out.status.code(), Some(5));
    assert_eq!(error_of(&out)["kind"], "capacity");
}

#[test]
fn random_is_seeded_and_verifies() {
    let a = json_ok(&["random", "--shape", "2,4,3,1", "--seed", "7", "--verify"]);
    let b = json_ok(&["random", "--shape", "2,4,3,1", "--seed", "7", "--verify"]);
    let c = json_ok(&["random", "--shape", "2,4,3,1", "--seed", "8"]);
    assert_eq!(a, b);
    assert_ne!(a["result"]["maps"], c["result"]["maps"]);
    assert_eq!(a["result"]["seed"], 7);
    assert_eq!(a["result"]["report"]["equal"], true);

    let dir = scratch("rand");
    json_ok(&["random", "--shape", "1,1", "--out-dir", dir.to_str().unwrap()]);
    let v = json_ok(&["verify", "--maps", dir.join("d0.txt").to_str().unwrap()]);
    assert_eq!(v["result"]["report"]["equal"], true);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["sweep", "--recipe", "lens-zeta", "--m", "2..9", "--workers", "3"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["verify", "--lens", "7,3"]);
    let b = run(&["verify", "--lens", "7,3"]);
    assert_eq!(a.stdout, b.stdout);
}

fn csv_rows(out: &Output) -> Vec<Vec<String>> {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    rdr.records().map(|r| r.unwrap().iter().map(String::from).collect()).collect()
}

#[test]
fn sweep_rows_in_m_order() {
    let rows = csv_rows(&run(&["sweep", "--recipe", "lens-zeta", "--m", "2..12", "--workers", "4"]));
    let ms: Vec<i64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(ms, (2..=12).collect::<Vec<_>>());
    // p = 1 (no lens space) becomes a row-level error
    let rows = csv_rows(&run(&["sweep", "--recipe", "lens-zeta", "--m", "1..2"]));
    assert!(!rows[0][10].is_empty());
    assert!(rows[1][10].is_empty());
}

#[test]
fn empty_range_is_header_only() {
    let out = run(&["sweep", "--recipe", "lens-zeta", "--m", "5..3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("seed,m,rank,acyclic"));
}

#[test]
fn sym_sweep_ranks() {
    let (c, _) = lens_files(3);
    let gens = scratch("perm.json");
    std::fs::write(&gens, "[[[0,0,1],[1,0,0],[0,1,0]]]").unwrap();
    let rows = csv_rows(&run(&[
        "sweep",
        "--recipe",
        "sym",
        "--complex",
        c.to_str().unwrap(),
        "--gens",
        gens.to_str().unwrap(),
        "--m",
        "0..5",
    ]));
    for r in &rows {
        let m: usize = r[1].parse().unwrap();
        assert_eq!(r[2].parse::<usize>().unwrap(), (m + 1) * (m + 2) / 2);
    }

    // rank-2 generators: Sym^m has rank m + 1
    let (c2, _) = lens_files(2);
    let g2 = scratch("neg.json");
    std::fs::write(&g2, "[[[-1,0],[0,-1]]]").unwrap();
    let rows = csv_rows(&run(&[
        "sweep",
        "--recipe",
        "dual-sym",
        "--complex",
        c2.to_str().unwrap(),
        "--gens",
        g2.to_str().unwrap(),
        "--m",
        "1..6",
    ]));
    for r in &rows {
        let m: usize = r[1].parse().unwrap();
        assert_eq!(r[2].parse::<usize>().unwrap(), m + 1);
        assert!(r[10].is_empty(), "{}", r[10]);
    }
}

#[test]
fn fit_recovers_cubic() {
    let input = scratch("series.csv");
    let mut text = String::from("m,value\n");
    for m in 1..=12i64 {
        text += &format!("{m},{}\n", 3 * m * m * m - 2 * m * m);
    }
    text += "13,\n";
    std::fs::write(&input, text).unwrap();
    let v = json_ok(&["fit", "--input", input.to_str().unwrap(), "--degree", "3"]);
    assert_eq!(v["result"]["points"], 12);
    assert_eq!(v["result"]["fit"]["leading"]["numerator"], "3");
    assert_eq!(v["result"]["fit"]["subleading"]["numerator"], "-2");

    let out = run(&["fit", "--input", input.to_str().unwrap(), "--degree", "3", "--column", "nope"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn output_flag_writes_file() {
    let path = scratch("out.json");
    let out = run(&["dims", "--weight", "A2:2,1", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["result"]["dim"], "15");
}
