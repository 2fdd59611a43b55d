use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;
use tsp_lab::format;
use tsp_lab::record::{parse_csv, COLUMNS};

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tsp-lab")).args(args).output().expect("spawn tsp-lab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_square(dir: &TempDir) -> std::path::PathBuf {
    let path = dir.path().join("square.txt");
    fs::write(&path, "4 2\n0 0\n1 0\n1 1\n0 1\n").unwrap();
    path
}

#[test]
fn generate_writes_a_valid_instance_and_reports_metrics() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("inst.txt");
    let o = lab(&["generate", "--family", "inner", "--h", "6", "--k", "2", "--m", "128", "--seed", "3", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let line = stdout(&o);
    assert!(line.starts_with("n=8 k=2 m=128 epsilon="), "{line}");
    assert!(line.contains(" gamma="));
    let inst = format::read_instance(&out).unwrap();
    assert_eq!(inst.n(), 8);
    assert_eq!(inst.inner_count(), 2);
}

#[test]
fn generate_without_out_prints_the_instance() {
    let o = lab(&["generate", "--family", "convex", "--n", "6", "--m", "64", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let inst = format::parse_instance(&stdout(&o)).unwrap();
    assert_eq!(inst.n(), 6);
    assert_eq!(inst.hull().len(), 6);
    assert!(stderr(&o).starts_with("n=6 k=0 m=64"));
}

#[test]
fn generate_on_a_full_grid_exhausts() {
    let o = lab(&["generate", "--family", "grid", "--n", "10", "--m", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("exhausted"), "{}", stderr(&o));
}

#[test]
fn generate_missing_size_is_a_usage_error() {
    let o = lab(&["generate", "--family", "grid", "--m", "16"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--n"));
}

#[test]
fn unknown_subcommand_and_bad_flag_exit_one() {
    assert_eq!(lab(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(lab(&["solve", "--algorithm", "sa", "--instance", "x"]).status.code(), Some(1));
    assert_eq!(lab(&["--help"]).status.code(), Some(0));
}

#[test]
fn solve_prints_one_record() {
    let dir = TempDir::new().unwrap();
    let inst = write_square(&dir);
    for (alg, extra) in [("rls", vec![]), ("ea", vec!["--mutation", "mixed", "--mu", "2", "--lambda", "3"])] {
        let mut args = vec!["solve", "--instance", path_str(&inst), "--algorithm", alg, "--seed", "5"];
        args.extend(extra);
        let o = lab(&args);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let text = stdout(&o);
        assert_eq!(text.lines().next().unwrap(), COLUMNS.join(","));
        let rows = parse_csv(&text).unwrap();
        assert_eq!(rows.len(), 1);
        let r = &rows[0];
        assert_eq!(r.instance_id, "square");
        assert!(r.reached_optimum);
        assert_eq!(r.final_length, 4.0);
        assert_eq!(r.optimum_length, Some(4.0));
        assert!(r.accounting_holds());
    }
}

#[test]
fn solve_reports_budget_exhaustion_with_exit_zero() {
    let dir = TempDir::new().unwrap();
    let inst = dir.path().join("i.txt");
    let o = lab(&["generate", "--family", "inner", "--h", "8", "--k", "2", "--m", "256", "--seed", "4", "--out", path_str(&inst)]);
    assert_eq!(o.status.code(), Some(0));
    let o = lab(&["solve", "--instance", path_str(&inst), "--algorithm", "ea", "--budget", "1", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &parse_csv(&stdout(&o)).unwrap()[0];
    assert!(r.generations <= 1);
    assert_eq!(r.fitness_evals, 1 + r.generations);
}

#[test]
fn solve_on_missing_or_malformed_file_fails() {
    let dir = TempDir::new().unwrap();
    let o = lab(&["solve", "--instance", path_str(&dir.path().join("nope.txt")), "--algorithm", "rls"]);
    assert_eq!(o.status.code(), Some(1));
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "5 10\n0 0\n1 0\n").unwrap();
    let o = lab(&["solve", "--instance", path_str(&bad), "--algorithm", "rls"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("found 2 rows"), "{}", stderr(&o));
}

#[test]
fn oracle_methods_agree_and_write_tours() {
    let dir = TempDir::new().unwrap();
    let inst_path = dir.path().join("i.txt");
    lab(&["generate", "--family", "inner", "--h", "5", "--k", "2", "--m", "64", "--seed", "9", "--out", path_str(&inst_path)]);
    let mut values = Vec::new();
    for method in ["brute", "held_karp", "hull-order"] {
        let tour_path = dir.path().join(format!("{method}.tour"));
        let o = lab(&["oracle", "--instance", path_str(&inst_path), "--method", method, "--out", path_str(&tour_path)]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        values.push(stdout(&o));
        let tour = format::read_tour(&tour_path).unwrap();
        assert_eq!(tour.len(), 7);
    }
    assert!(values.windows(2).all(|w| w[0] == w[1]), "{values:?}");
}

#[test]
fn oracle_square_prints_value_and_tour() {
    let dir = TempDir::new().unwrap();
    let inst = write_square(&dir);
    let o = lab(&["oracle", "--instance", path_str(&inst), "--method", "held-karp"]);
    assert_eq!(stdout(&o), "4\n1 2 3 4\n");
}

#[test]
fn oracle_refuses_oversized_brute_force() {
    let dir = TempDir::new().unwrap();
    let inst = dir.path().join("big.txt");
    lab(&["generate", "--family", "grid", "--n", "20", "--m", "64", "--seed", "1", "--out", path_str(&inst)]);
    let o = lab(&["oracle", "--instance", path_str(&inst), "--method", "brute"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("too large"));
}

const SMALL_CONFIG: &str = "\
# two mutations on small inner-point instances
family = inner
h = 5
k = 1, 2
m = 64
algorithm = ea
mutation = two_opt, mixed
budget = 50000
runs = 3
base_seed = 11
";

#[test]
fn experiment_writes_csv_and_summary() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("small.cfg");
    fs::write(&cfg, SMALL_CONFIG).unwrap();
    let csv_path = dir.path().join("runs.csv");
    let o = lab(&["experiment", "--config", path_str(&cfg), "--out", path_str(&csv_path)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = fs::read_to_string(&csv_path).unwrap();
    assert!(!text.contains('\r'));
    let rows = parse_csv(&text).unwrap();
    assert_eq!(rows.len(), 2 * 3 * 2);
    assert!(rows.iter().all(|r| r.accounting_holds() && r.optimum_length.is_some()));
    let seeds: Vec<u64> = rows.iter().map(|r| r.seed).collect();
    assert_eq!(seeds, [11, 11, 12, 12, 13, 13, 11, 11, 12, 12, 13, 13]);
    let out = stdout(&o);
    assert!(out.starts_with("# summary\n"), "{out}");
    assert_eq!(out.lines().count(), 2 + 4);
}

#[test]
fn experiment_config_errors_carry_line_numbers() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "family = inner\nh = 5\nk = 1\nm = 64\nalgorithm = ea\nbudget = ten\n").unwrap();
    let o = lab(&["experiment", "--config", path_str(&cfg)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 6"), "{}", stderr(&o));
}

#[test]
fn mutation_stats_reports_every_estimate() {
    let o = lab(&["mutation-stats", "--n", "6", "--samples", "200000", "--seed", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for key in ["exactly_one_inversion", "exactly_2_inversions", "exactly_4_inversions", "mixed_inversion_branch", "pair_uniformity_chi_square"] {
        assert!(out.contains(key), "{key} missing from {out}");
    }
    assert_eq!(lab(&["mutation-stats", "--samples", "10"]).status.code(), Some(1));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("small.cfg");
    fs::write(&cfg, SMALL_CONFIG).unwrap();
    let inst = dir.path().join("i.txt");
    lab(&["generate", "--family", "inner", "--h", "7", "--k", "2", "--m", "128", "--seed", "5", "--out", path_str(&inst)]);
    let commands: Vec<Vec<&str>> = vec![
        vec!["generate", "--family", "grid", "--n", "9", "--m", "32", "--seed", "8"],
        vec!["solve", "--instance", path_str(&inst), "--algorithm", "rls", "--seed", "3"],
        vec!["solve", "--instance", path_str(&inst), "--algorithm", "ea", "--mutation", "mixed", "--mu", "3", "--lambda", "2"],
        vec!["oracle", "--instance", path_str(&inst), "--method", "hull_order"],
        vec!["experiment", "--config", path_str(&cfg)],
        vec!["mutation-stats", "--n", "6", "--samples", "100000", "--seed", "4"],
    ];
    for args in &commands {
        let a = lab(args);
        let b = lab(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
