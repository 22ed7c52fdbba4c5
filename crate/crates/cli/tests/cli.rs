use std::path::Path;
use std::process::{Command, Output};

fn lrbsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lrbsim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str]) -> Output {
    let out = lrbsim(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

/// `(m, p_hat, stderr)` rows of a curve CSV.
fn read_curve(path: &Path) -> Vec<(usize, f64, f64)> {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("m,p_hat,stderr,n_sequences,seed"));
    lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn fig2_alternates_between_zero_and_one() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&["run", "fig2", "--out", dir.path().to_str().unwrap()]);
    let curve = read_curve(&dir.path().join("fig2.csv"));
    assert!(curve.len() >= 10);
    for (m, p, _) in curve {
        assert_eq!(p, if m % 2 == 0 { 1.0 } else { 0.0 }, "m = {m}");
    }
    assert!(dir.path().join("fig2.svg").exists());
}

#[test]
fn fig4_keeps_its_amplitude() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&["lrb-shield", "fig4", "--out", dir.path().to_str().unwrap()]);
    // Three binomial standard errors of a 0.98 success rate over 200 sequences.
    let tol = 3.0 * (0.98f64 * 0.02 / 200.0).sqrt();
    for (m, p, _) in read_curve(&dir.path().join("fig4.csv")) {
        if m > 5 {
            continue;
        }
        let amplitude = if m % 2 == 0 { p } else { 1.0 - p };
        assert!(amplitude >= 0.98 - tol, "m = {m}: amplitude {amplitude}");
    }
    let summary = std::fs::read_to_string(dir.path().join("fig4_summary.toml")).unwrap();
    assert!(summary.contains("copies = 142"));
}

#[test]
fn malformed_spec_exits_2_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let cases = [
        "experiment = \"rb\"\n[rb\n",
        "experiment = \"rb\"\n[rb]\nk = 1\nmodel = \"depolarizing\"\nm = [2, 3]\nn_sequences = 10\n",
        "experiment = \"rb\"\n[rb]\nk = 1\nmodel = \"depolarizing\"\np = 1.5\nm = [2, 3]\nn_sequences = 10\n",
        "experiment = \"lrb\"\n[lrb]\nk = 1\nreset = 0.1\nm = [1, 2]\nn_sequences = 10\n",
        "experiment = \"lrb\"\n[lrb]\ncode = \"missing.txt\"\nreset = 0.1\nm = [2]\nn_sequences = 10\n",
        "experiment = \"fit\"\n[fit]\ninput = \"missing.csv\"\n",
        "experiment = \"twirl\"\n[rb]\nmodel = \"ideal\"\nm = [2]\nn_sequences = 1\n",
    ];
    for (i, text) in cases.iter().enumerate() {
        let spec = write(dir.path(), &format!("bad{i}.toml"), text);
        let out = lrbsim(&["run", &spec, "--out", out_dir.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "case {i}");
        assert!(!out.stderr.is_empty(), "case {i} prints a diagnostic");
        assert!(!out_dir.exists(), "case {i} wrote output");
    }
}

#[test]
fn alias_rejects_a_different_experiment() {
    let dir = tempfile::tempdir().unwrap();
    let out = lrbsim(&["lrb", "fig2", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn unknown_spec_is_a_config_error() {
    assert_eq!(lrbsim(&["run", "no-such-spec"]).status.code(), Some(2));
}

const SMALL_LRB: &str = "experiment = \"lrb\"\nname = \"small\"\nseed = 11\n\n[lrb]\nk = 2\nreset = 0.05\nm = { start = 2, end = 9 }\nn_sequences = 300\n";

#[test]
fn output_is_byte_identical_across_runs_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "small.toml", SMALL_LRB);
    let mut outputs = Vec::new();
    for (i, threads) in ["1", "4", "4"].iter().enumerate() {
        let out_dir = dir.path().join(format!("run{i}"));
        run_ok(&["run", &spec, "--out", out_dir.to_str().unwrap(), "--threads", threads]);
        outputs.push(std::fs::read(out_dir.join("small.csv")).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[1], outputs[2]);

    let out_dir = dir.path().join("reseeded");
    run_ok(&["run", &spec, "--out", out_dir.to_str().unwrap(), "--seed", "12"]);
    let reseeded = std::fs::read(out_dir.join("small.csv")).unwrap();
    assert_ne!(reseeded, outputs[0]);
    assert!(String::from_utf8(reseeded).unwrap().lines().nth(1).unwrap().ends_with(",12"));
}

#[test]
fn csv_values_carry_twelve_significant_digits() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "small.toml", SMALL_LRB);
    run_ok(&["run", &spec, "--out", dir.path().to_str().unwrap()]);
    let text = std::fs::read_to_string(dir.path().join("small.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 8);
    for line in &lines[1..] {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f.len(), 5);
        assert_eq!(f[3], "300");
        assert_eq!(f[4], "11");
        for v in &f[1..3] {
            let digits: String = v.chars().filter(char::is_ascii_digit).collect();
            let significant = digits.trim_start_matches('0');
            assert!(
                significant.len() >= 12 || v.parse::<f64>().unwrap() == 0.0,
                "{v} has too few digits"
            );
        }
    }
}

#[test]
fn parity_file_code_runs_lrb() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "steane.txt",
        "# Hamming [7,4] checks for both types\n7 1\n1010101\n0110011\n0001111\n\n1010101\n0110011\n0001111\n",
    );
    let spec = write(
        dir.path(),
        "custom.toml",
        "experiment = \"lrb\"\nname = \"custom\"\nseed = 1\n\n[lrb]\ncode = \"steane.txt\"\nreset = 0.0\nm = [2, 3, 4]\nn_sequences = 50\n",
    );
    run_ok(&["run", &spec, "--out", dir.path().to_str().unwrap()]);
    let curve = read_curve(&dir.path().join("custom.csv"));
    assert_eq!(curve.iter().map(|c| c.1).collect::<Vec<_>>(), vec![1.0, 0.0, 1.0]);
}

#[test]
fn surjectivity_reports_the_steane_window() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "s.toml",
        "experiment = \"surjectivity\"\nname = \"s\"\n\n[surjectivity]\ncode = \"steane\"\nblocks = 2\n",
    );
    run_ok(&["surjectivity", &spec, "--out", dir.path().to_str().unwrap()]);
    let summary = std::fs::read_to_string(dir.path().join("s_summary.toml")).unwrap();
    assert!(summary.contains("surjective = true"));
    assert!(summary.contains("window = [2, 5, 8, 11]"), "{summary}");
    let table = std::fs::read_to_string(dir.path().join("s_surjectivity.csv")).unwrap();
    assert_eq!(table.lines().count(), 1 + 2 * 4);
}

#[test]
fn twirl_reports_residual_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "t.toml",
        "experiment = \"twirl\"\nname = \"t\"\nseed = 3\n\n[twirl]\nchannel = \"amplitude_damping\"\np = 0.2\nm = [2, 3]\nwitness = true\n",
    );
    run_ok(&["twirl", &spec, "--out", dir.path().to_str().unwrap(), "--plot"]);
    let summary: toml::Table =
        toml::from_str(&std::fs::read_to_string(dir.path().join("t_summary.toml")).unwrap())
            .unwrap();
    assert!(summary["commutation_residual"].as_float().unwrap() < 1e-10);
    assert_eq!(summary["witness_standard"]["multiplicity_free"].as_bool(), Some(true));
    assert_eq!(
        summary["witness_hidden_register"]["multiplicity_free"].as_bool(),
        Some(false)
    );
    assert_eq!(read_curve(&dir.path().join("t.csv")).len(), 2);
}

#[test]
fn fit_recovers_a_written_decay() {
    let dir = tempfile::tempdir().unwrap();
    let mut csv = String::from("m,p_hat,stderr,n_sequences,seed\n");
    for m in 1..=20 {
        csv.push_str(&format!("{m},{},0,0,0\n", 0.5 + 0.5 * 0.8f64.powi(m)));
    }
    write(dir.path(), "data.csv", &csv);
    let spec = write(
        dir.path(),
        "f.toml",
        "experiment = \"fit\"\nname = \"f\"\n\n[fit]\ncomponents = 2\ninput = \"data.csv\"\n",
    );
    run_ok(&["fit", &spec, "--out", dir.path().to_str().unwrap()]);
    let text = std::fs::read_to_string(dir.path().join("f_fit.csv")).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert!((rows[0][1] - 0.5).abs() < 1e-6 && (rows[0][2] - 1.0).abs() < 1e-6);
    assert!((rows[1][1] - 0.5).abs() < 1e-6 && (rows[1][2] - 0.8).abs() < 1e-6);
}

#[test]
fn single_point_curve_plots_one_marker() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "one.toml",
        "experiment = \"rb\"\nname = \"one\"\nplot = true\n\n[rb]\nmodel = \"ideal\"\nm = [4]\nn_sequences = 5\n",
    );
    run_ok(&["run", &spec, "--out", dir.path().to_str().unwrap()]);
    let svg = std::fs::read_to_string(dir.path().join("one.svg")).unwrap();
    assert_eq!(svg.matches("<circle").count(), 1);
    assert!(svg.contains("sequence length m") && svg.contains("survival probability"));
}

#[test]
fn list_names_every_bundled_spec() {
    let out = run_ok(&["list"]);
    let names = String::from_utf8(out.stdout).unwrap();
    for n in ["fig2", "fig3", "fig4", "fig5", "fig6", "baseline-exp"] {
        assert!(names.lines().any(|l| l == n));
    }
}
