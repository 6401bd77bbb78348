use std::process::{Command, Output};

fn brtrade(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brtrade"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn point_queries() {
    let o = brtrade(&[
        "point", "--n", "4", "--k", "3", "--r", "2", "--rho", "0.5", "--gamma", "0.4",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("alpha*=2/5="), "{}", stdout(&o));

    let o = brtrade(&[
        "point", "--n", "4", "--k", "2", "--r", "1", "--rho", "0.5", "--alpha", "0.5",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("gamma*=3/8="), "{}", stdout(&o));

    let o = brtrade(&[
        "point", "--n", "4", "--k", "2", "--r", "1", "--rho", "1/4", "--gamma", "0",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("alpha*=inf infeasible"));
}

// classic single-failure corners for (4, 2): (3/5, 3/5) and (1/2, 3/4)
const GOLDEN_4_2_1: &str = "gamma,gamma_per_failed_node,alpha,regime
3/5=0.600000000000,3/5=0.600000000000,3/5=0.600000000000,mbr
3/4=0.750000000000,3/4=0.750000000000,1/2=0.500000000000,msr
";

#[test]
fn curve_matches_golden_and_is_stable() {
    let args = [
        "curve", "--n", "4", "--k", "2", "--r", "1", "--rho", "0", "--points", "2",
    ];
    let a = brtrade(&args);
    let b = brtrade(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), GOLDEN_4_2_1);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn helpers_is_an_alternative_to_n() {
    let by_n = brtrade(&[
        "curve", "--M", "1", "--k", "8", "--n", "11", "--r", "1", "--rho", "0",
    ]);
    let by_h = brtrade(&[
        "curve",
        "--M",
        "1",
        "--k",
        "8",
        "--helpers",
        "10",
        "--r",
        "1",
        "--rho",
        "0",
    ]);
    assert_eq!(code(&by_n), 0);
    assert_eq!(by_n.stdout, by_h.stdout);
    assert!(stdout(&by_n).lines().count() > 50);
}

#[test]
fn curve_to_file_and_degenerate_case() {
    let dir = std::env::temp_dir().join(format!("brtrade-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("flat.csv");
    let o = brtrade(&[
        "curve",
        "--M",
        "1",
        "--k",
        "1",
        "--n",
        "2",
        "--r",
        "1",
        "--rho",
        "1",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.starts_with("0=")), "{text}");
}

#[test]
fn simulate_example2() {
    let o = brtrade(&["simulate", "--mode", "example2", "--seed", "7"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(
        s.contains("bandwidth 3 packets from 3 nodes = 3/8 of M"),
        "{s}"
    );
    assert!(s.contains("exact recovery true"));
    assert!(s.contains("any-k after repair true"));
}

#[test]
fn simulate_example2_rejects_other_params() {
    let o = brtrade(&["simulate", "--mode", "example2", "--n", "5"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn simulate_rlnc_zero_trials_is_a_no_op() {
    let o = brtrade(&[
        "simulate", "--mode", "rlnc", "--n", "4", "--k", "2", "--r", "2", "--rho", "0.5",
        "--trials", "0",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("trials 0"));
}

#[test]
fn simulate_rlnc_hundred_trials_all_hold() {
    let o = brtrade(&[
        "simulate", "--mode", "rlnc", "--n", "4", "--k", "2", "--r", "2", "--rho", "0.5",
        "--trials", "100",
    ]);
    let s = stdout(&o);
    assert!(
        s.contains("bandwidth per round 2 packets = 1/2 of M"),
        "{s}"
    );
    assert!(s.contains("any-k held in 100/100 trials"), "{s}");
    assert_eq!(code(&o), 0);
}

#[test]
fn verify_exit_codes() {
    let o = brtrade(&["verify", "--n-min", "5", "--n-max", "4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "summary pass=0 fail=0 skipped=0\n");

    let o = brtrade(&[
        "verify", "--n-min", "4", "--n-max", "4", "--k", "2", "--r", "1",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("summary pass=4 fail=0"));

    // two of three nodes failing leaves one helper, outside the proven regime
    let o = brtrade(&[
        "verify", "--n-min", "3", "--n-max", "3", "--k", "2", "--r", "2", "--rho", "0",
    ]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["point", "--k", "2", "--rho", "0"][..],
        &["curve", "--n", "4", "--k", "2"],
        &["point", "--n", "4", "--k", "2", "--rho", "abc"],
        &["point", "--n", "4", "--k", "2", "--rho", "2"],
        &["point", "--n", "4", "--k", "5"],
        &["bogus"],
        &["simulate", "--q", "256"],
    ] {
        assert_eq!(code(&brtrade(args)), 1, "{args:?}");
    }
    assert_eq!(code(&brtrade(&["--help"])), 0);
}

#[test]
fn config_file_supplies_defaults() {
    let dir = std::env::temp_dir().join(format!("brtrade-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("point.cfg");
    std::fs::write(
        &path,
        "# example\nn = 4\nk = 3\nr = 2\nrho = 1/2\ngamma = 2/5\n",
    )
    .unwrap();
    let cfg = path.to_str().unwrap();
    let o = brtrade(&["point", "--config", cfg]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("alpha*=2/5="));
    // explicit flags win over the file
    let o = brtrade(&["point", "--config", cfg, "--gamma", "0"]);
    assert!(
        stdout(&o).contains("alpha*=inf infeasible"),
        "{}",
        stdout(&o)
    );

    std::fs::write(&path, "not a pair\n").unwrap();
    assert_eq!(code(&brtrade(&["point", "--config", cfg])), 1);
}
