use std::fs;
use std::process::Command;

use fracolloc::oracle::rl_quadrature;
use fracolloc_cli::{parse_config_file, run, RunConfig};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fracolloc"))
}

fn config(text: &str) -> RunConfig {
    RunConfig::from_settings(&parse_config_file(text).unwrap()).unwrap()
}

fn col(table: &fracolloc_cli::Table, name: &str) -> Vec<f64> {
    let j = table.header.iter().position(|h| h == name).unwrap();
    table.rows.iter().map(|r| r[j].parse().unwrap()).collect()
}

#[test]
fn table1_header_and_rows() {
    let t = run(&config("command=table1")).unwrap();
    assert_eq!(t.header[..2], ["N", "cond2"]);
    assert_eq!(t.rows.len(), 5);
    // conditioning grows roughly linearly in N
    let c = col(&t, "cond2");
    assert!(c.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn table2_row_eight() {
    let t = run(&config("command=table2\nN=8")).unwrap();
    let got: Vec<f64> = ["err_choice1", "err_choice2", "err_choice3"].iter().map(|c| col(&t, c)[0]).collect();
    for (g, p) in got.iter().zip([0.0140, 0.0316, 0.0015]) {
        assert!((g - p).abs() / p < 0.3, "{g} vs {p}");
    }
}

#[test]
fn table3_first_row() {
    let t = run(&config("command=table3\nN=4")).unwrap();
    let e6 = col(&t, "err_choice6")[0];
    assert!((e6 - 0.0045).abs() / 0.0045 < 0.3);
    assert!(e6 < col(&t, "err_choice4")[0] && e6 < col(&t, "err_choice5")[0]);
}

#[test]
fn fig1_columns_and_oracle() {
    let t = run(&config("command=fig1\nmesh-points=5")).unwrap();
    assert_eq!(t.header.len(), 19);
    assert!(t.header.contains(&"sigma_1.5".to_string()));
    let half = col(&t, "sigma_0.5");
    let x = col(&t, "x");
    assert_eq!(x[2], 0.0);
    let oracle = rl_quadrature(|_, r| (r * r).sin(), 0.5, 0.0).unwrap().value;
    assert!((half[2] - oracle).abs() < 1e-4, "{} vs {oracle}", half[2]);
    for h in t.header.iter().skip(1).take(9) {
        assert!(col(&t, h)[0].abs() < 1e-3, "{h} at -1");
    }
}

#[test]
fn nodes_dump() {
    let t = run(&config("command=nodes\nfamily=cheb\nN=10\nmu=0.5")).unwrap();
    let rep: Vec<&Vec<String>> = t.rows.iter().filter(|r| r[0] == "representation").collect();
    assert_eq!(rep.len(), 11);

    let t = run(&config("command=nodes\nN=5\nmu=0.5")).unwrap();
    let pick = |kind: &str| -> Vec<f64> {
        t.rows.iter().filter(|r| r[0] == kind).map(|r| r[5].parse().unwrap()).collect()
    };
    let (leg, psi) = (pick("legendre"), pick("psi_zero"));
    for i in 0..5 {
        let hi = if i + 1 < 5 { leg[i + 1] } else { 1.0 };
        assert!(psi[i] > leg[i] && psi[i] < hi);
    }

    let t = run(&config("command=nodes\nN=2\nmu=0:1:0.1")).unwrap();
    assert_eq!(t.failures, 0);
    assert_eq!(t.rows.iter().filter(|r| r[0] == "psi_zero").count(), 22);
}

#[test]
fn matrix_and_solve_shapes() {
    let t = run(&config("command=matrix\nN=6\nchoices=C6\nK=10")).unwrap();
    assert_eq!(t.header.len(), 6);
    assert_eq!(t.rows.len(), 5);
    let t = run(&config("command=solve\nN=6\nchoices=C3,C4")).unwrap();
    assert_eq!(t.rows.len(), 7 + 7);
    assert_eq!(t.rows.last().unwrap()[4], "0.0000000000000000e0");
}

#[test]
fn binary_writes_file_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let st = bin()
            .args(["--command", "table3", "--N-range", "4..6", "--out"])
            .arg(p)
            .status()
            .unwrap();
        assert!(st.success());
    }
    let text = fs::read_to_string(&a).unwrap();
    assert!(text.starts_with("N,err_choice4,err_choice5,err_choice6\n"));
    assert_eq!(text, fs::read_to_string(&b).unwrap());
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "command = table1\nN = 5,10\nmu = 0.9\n").unwrap();
    let out = bin().arg("--config").arg(&cfg).args(["--mu", "0.5"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().nth(1).unwrap().starts_with("5,4.98"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| bin().args(args).output().unwrap().status.code();
    assert_eq!(code(&["--command", "table2", "--sigma", "1.5"]), Some(2));
    assert_eq!(code(&["--command", "nope"]), Some(2));
    assert_eq!(code(&["--command", "table1", "--N", "1"]), Some(2));
    assert_eq!(code(&["--bogus"]), Some(2));
    // N=2, K=10: the mixed root search finds two sign changes for one node
    assert_eq!(code(&["--command", "nodes", "--N", "2", "--K", "10"]), Some(3));
    assert_eq!(code(&["--command", "table1", "--N", "5"]), Some(0));
}
