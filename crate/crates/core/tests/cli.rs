use std::io::Write;
use std::process::{Command, Output, Stdio};

use ds4::group::BlocksJson;
use ds4::sampling::{random_member_factors, trial_rng};
use ds4::{DecompositionFactors, GroupElement};

fn ds4(args: &[&str], stdin: Option<&str>, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ds4"));
    cmd.args(args).env_remove("DS4_SEED").stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary runs");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn contract_csv_golden() {
    let o = ds4(&["contract", "--r-min", "10", "--r-max", "1000", "--steps", "3"], None, &[]);
    assert_eq!(o.status.code(), Some(0));
    // Rows agree with a 50-digit evaluation of the larger quartic root to
    // within 1e-16 relative.
    let golden = "R,E,mass_shell_defect\n\
                  1e1,1.4124491141000004e0,-4.9875000781240235e-3\n\
                  1e2,1.4141958850350258e0,-4.999875000000078e-5\n\
                  1e3,1.414213385596433e0,-4.999998750000001e-7\n";
    let text = stdout(&o);
    let (table, slope) = text.rsplit_once("# slope=").unwrap();
    assert_eq!(table, golden);
    let slope: f64 = slope.trim().parse().unwrap();
    assert!((slope + 2.0).abs() < 0.01);
}

#[test]
fn contract_natural_units_slope() {
    let o = ds4(&["contract"], None, &[]);
    let text = stdout(&o);
    let slope: f64 = text.lines().last().unwrap().trim_start_matches("# slope=").parse().unwrap();
    assert!((slope + 2.0).abs() <= 0.05);
    assert_eq!(text.lines().count(), 27);
}

#[test]
fn outputs_are_byte_identical() {
    let cases: [&[&str]; 3] = [
        &["orbit", "--kappa", "1", "--n", "3", "--seed", "7"],
        &["check", "decomposition", "--trials", "50", "--seed", "3"],
        &["contract", "--steps", "7", "--format", "json"],
    ];
    for args in cases {
        let a = ds4(args, None, &[]);
        let b = ds4(args, None, &[]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn seed_falls_back_to_environment() {
    let flag = ds4(&["orbit", "--n", "2", "--seed", "11"], None, &[]);
    let env = ds4(&["orbit", "--n", "2"], None, &[("DS4_SEED", "11")]);
    let other = ds4(&["orbit", "--n", "2"], None, &[]);
    assert_eq!(flag.stdout, env.stdout);
    assert_ne!(flag.stdout, other.stdout);
}

#[test]
fn check_exit_codes() {
    for suite in ["clifford", "brackets", "contraction", "mirror"] {
        let o = ds4(&["check", suite, "--trials", "1"], None, &[]);
        assert_eq!(o.status.code(), Some(0), "{suite}");
        let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
        assert_eq!(v["pass"], true);
        assert_eq!(v["suite"], suite);
    }
    let o = ds4(&["check", "clifford"], None, &[]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["max_residual"], 0.0);

    assert_eq!(ds4(&["check", "unknown"], None, &[]).status.code(), Some(2));
    assert_eq!(ds4(&["check", "membership", "--trials", "0"], None, &[]).status.code(), Some(2));
    let fail = ds4(&["check", "contraction", "--tol", "1e-12"], None, &[]);
    assert_eq!(fail.status.code(), Some(1));
    assert!(!fail.stderr.is_empty());
    assert_eq!(ds4(&["frobnicate"], None, &[]).status.code(), Some(2));
}

#[test]
fn decompose_round_trip_via_stdin_and_file() {
    let g = random_member_factors(&mut trial_rng(99, 0));
    let json = serde_json::to_string(&g).unwrap();
    let o = ds4(&["decompose"], Some(&json), &[]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let f: DecompositionFactors = serde_json::from_value(v["factors"].clone()).unwrap();
    let back: GroupElement = f.reconstruct().unwrap();
    assert!(back.matrix().dist_max(g.matrix()) < 1e-9);
    assert!(v["reconstruction_residual"].as_f64().unwrap() < 1e-9);

    let path = std::env::temp_dir().join(format!("ds4-decompose-{}.json", std::process::id()));
    std::fs::write(&path, &json).unwrap();
    let from_file = ds4(&["decompose", "--file", path.to_str().unwrap()], None, &[]);
    std::fs::remove_file(&path).ok();
    assert_eq!(from_file.stdout, o.stdout);
}

#[test]
fn decompose_rejects_bad_input() {
    assert_eq!(ds4(&["decompose"], Some("not json"), &[]).status.code(), Some(2));
    assert_eq!(ds4(&["decompose", "--file", "/nonexistent/x.json"], None, &[]).status.code(), Some(2));

    let gamma4 = BlocksJson { blocks: ds4::gamma::gamma(4).unwrap() };
    let o = ds4(&["decompose"], Some(&serde_json::to_string(&gamma4).unwrap()), &[]);
    assert_eq!(o.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!(v["membership"]["unitarity_defect"].as_f64().unwrap() > 0.0);
    assert_eq!(v["membership"]["pass"], false);
}

#[test]
fn orbit_records() {
    let o = ds4(&["orbit", "--kappa", "1", "--n", "3", "--seed", "7"], None, &[]);
    assert_eq!(o.status.code(), Some(0));
    for line in stdout(&o).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let r1 = v["residuals"]["r1"].as_array().unwrap();
        assert!(r1.iter().all(|x| x.as_f64().unwrap().abs() < 1e-9));
        assert!(v["residuals"]["r2"].as_f64().unwrap().abs() < 1e-9);
    }

    let o = ds4(&["orbit", "--kappa", "0", "--pmax", "1", "--n", "5", "--matrix"], None, &[]);
    assert_eq!(o.status.code(), Some(0));
    for line in stdout(&o).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["kappa"], 0.0);
        assert!(v["matrix"].is_object());
        assert!(v["residuals"]["degenerate"].is_boolean());
    }

    assert_eq!(ds4(&["orbit", "--kappa", "0", "--pmax", "0"], None, &[]).status.code(), Some(2));
    assert_eq!(ds4(&["orbit", "--n", "0"], None, &[]).status.code(), Some(2));
    assert_eq!(ds4(&["orbit", "--kappa=-1"], None, &[]).status.code(), Some(2));
}
