use std::process::{Command, Output};

fn besovlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_besovlab")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn value_of(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
        .parse()
        .unwrap()
}

#[test]
fn compute_perimeter_of_the_unit_interval() {
    let out = besovlab(&["compute", "perimeter", "--set", "box:0:1", "--beta", "0.5"]);
    assert!(out.status.success());
    let v = value_of(&stdout(&out), "perimeter");
    assert!((v / 8.0 - 1.0).abs() < 0.02, "{v}");
}

#[test]
fn compute_lorentz_matches_lp_when_indices_agree() {
    let strong = besovlab(&["compute", "lorentz", "--entry", "tent", "--p0", "2", "--q0", "2"]);
    let weak = besovlab(&["compute", "lorentz", "--entry", "tent", "--p0", "2"]);
    assert!(strong.status.success() && weak.status.success());
    let s = value_of(&stdout(&strong), "lorentz_norm");
    let w = value_of(&stdout(&weak), "lorentz_norm");
    // ∫ (1 − |x|)² over [−1, 1] = 2/3
    assert!((s - (2.0f64 / 3.0).sqrt()).abs() < 1e-2, "{s}");
    assert!(w <= s);
}

#[test]
fn compute_rearrange_prints_a_decreasing_profile() {
    let out = besovlab(&["compute", "rearrange", "--entry", "two_bump", "--resolution", "16"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let values: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(values.len() > 4);
    assert!(values.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn sweep_writes_one_row_per_step_and_notes_invalid_points() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let out = besovlab(&[
        "sweep", "--param", "beta", "--from", "0.2", "--to", "1.2", "--steps", "3", "--quantity", "besov", "--resolution",
        "16", "--out",
    ]
    .iter()
    .copied()
    .chain([path.to_str().unwrap()])
    .collect::<Vec<_>>());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "beta,result,stderr,note");
    assert_eq!(lines.len(), 4);
    // β = 1.2 with p = 1 in one dimension satisfies neither regime
    assert!(lines[3].starts_with("1.2,,,"), "{}", lines[3]);
}

#[test]
fn errors_exit_with_code_two() {
    let divergent = besovlab(&["compute", "perimeter", "--set", "box:0:1", "--beta", "0.5", "--q", "2"]);
    assert_eq!(divergent.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&divergent.stderr).starts_with("error:"));
    let bad_set = besovlab(&["compute", "perimeter", "--set", "triangle:0"]);
    assert_eq!(bad_set.status.code(), Some(2));
    let bad_config = besovlab(&["verify", "--config", "/nonexistent/besovlab.cfg"]);
    assert_eq!(bad_config.status.code(), Some(2));
}

#[test]
fn verify_exit_code_reflects_the_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("quick.cfg");
    std::fs::write(&cfg, "suites = lemma21\ncorpus.names = tent\n").unwrap();
    let out = besovlab(&["verify", "--config", cfg.to_str().unwrap(), "--out", "-", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("check_id,"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("0 failed"));
}
