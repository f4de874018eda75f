use std::process::{Command, Output};

fn spinstress(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinstress"))
        .args(args)
        .env_remove("SPINSTRESS_PRESET_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn convert_reports_stress_couplings() {
    let out = spinstress(&["convert", "--preset", "4h-sic-divacancy-hh", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let g43 = &v["output"][1];
    assert_eq!(g43["parameter"], "g43");
    assert!((g43["value"].as_f64().unwrap() - 7.3306).abs() < 1e-3);
    assert!((g43["error"].as_f64().unwrap() - 0.0588).abs() < 1e-3);
    assert!(v["residual"].as_f64().unwrap() < 1e-10);
}

#[test]
fn convert_both_directions_and_formats() {
    for format in ["text", "json", "csv"] {
        for direction in ["strain-to-stress", "stress-to-strain"] {
            let out = spinstress(&["convert", "--preset", "3c-sic-divacancy", "--direction", direction, "--format", format]);
            assert!(out.status.success(), "{format} {direction}: {}", String::from_utf8_lossy(&out.stderr));
            assert!(!out.stdout.is_empty());
        }
    }
    let csv = stdout(&spinstress(&["convert", "--preset", "3c-sic-divacancy", "--format", "csv"]));
    assert_eq!(csv.lines().count(), 7);
    assert!(csv.lines().next().unwrap().starts_with("parameter,input_value"));
}

#[test]
fn wrong_frame_exits_with_symmetry_code() {
    let out = spinstress(&["convert", "--preset", "3c-sic-divacancy", "--frame-x", "1,-1,0"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("residual"));
}

#[test]
fn bad_input_exits_with_code_two() {
    assert_eq!(spinstress(&["convert", "--preset", "no-such-material"]).status.code(), Some(2));
    assert_eq!(spinstress(&["convert"]).status.code(), Some(2));
    assert_eq!(spinstress(&["fit", "/nonexistent/data.json"]).status.code(), Some(2));
    assert_eq!(
        spinstress(&["hamiltonian", "--preset", "3c-sic-divacancy", "--strain", "eqq=1"]).status.code(),
        Some(2)
    );
    assert_eq!(spinstress(&["sensitivity", "--beta-convention", "bogus"]).status.code(), Some(2));
    assert_eq!(
        spinstress(&["convert", "--preset", "3c-sic-divacancy", "--frame-z", "0,0,1"]).status.code(),
        Some(2)
    );
}

#[test]
fn generate_and_fit_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("data.json");
    let p = path.to_str().unwrap();
    let out = spinstress(&["generate", "--preset", "4h-sic-divacancy-hh", "--output", p]);
    assert!(out.status.success());
    let out = spinstress(&["fit", p, "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let h43: f64 = text
        .lines()
        .find(|l| l.starts_with("h43,"))
        .and_then(|l| l.split(',').nth(1))
        .unwrap()
        .parse()
        .unwrap();
    assert!((h43 - 3110.0).abs() < 1e-6);
}

#[test]
fn generation_is_deterministic() {
    let args = ["generate", "--preset", "3c-sic-divacancy", "--noise", "0.01", "--seed", "42"];
    let a = spinstress(&args);
    let b = spinstress(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = spinstress(&["generate", "--preset", "3c-sic-divacancy", "--noise", "0.01", "--seed", "43"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn rank_deficient_fit_names_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("exx.json");
    let p = path.to_str().unwrap();
    assert!(spinstress(&["generate", "--preset", "4h-sic-divacancy-hh", "--directions", "exx", "-o", p]).status.success());
    let out = spinstress(&["fit", p]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    for name in ["h43", "h26", "h16"] {
        assert!(err.contains(name), "{err}");
    }
}

#[test]
fn sensitivity_csv_columns() {
    let out = spinstress(&["sensitivity", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "label,g_MHz_per_GPa,contrast,beta,beta_convention,T2_s,eta,inverse_eta"
    );
    assert_eq!(lines.count(), 8);
}

#[test]
fn sensitivity_reads_scenario_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.toml");
    std::fs::write(
        &path,
        "[[scenario]]\nlabel = \"dead\"\ncontrast = 0.2\ncount_rate = 1e4\nreadout_duration = 3e-7\nt2 = 1e-3\ncoupling = 0.0\n",
    )
    .unwrap();
    let out = spinstress(&["sensitivity", "--scenarios", path.to_str().unwrap(), "--format", "csv"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let row = stdout(&out).lines().nth(1).unwrap().to_string();
    assert!(row.contains("insensitive"), "{row}");
    assert!(row.ends_with(",0"), "{row}");
}

#[test]
fn hamiltonian_reports_shifts() {
    let out = spinstress(&[
        "hamiltonian", "--preset", "4h-sic-divacancy-hh", "--strain", "ezz=1e-3", "--base-splitting", "1336", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["channels_mhz"]["c_z"].as_f64().unwrap() - 3.11).abs() < 1e-9);
    assert!((v["transitions_mhz"]["f_plus"].as_f64().unwrap() - 1339.11).abs() < 1e-6);
}

#[test]
fn verbose_goes_to_stderr() {
    let quiet = spinstress(&["convert", "--preset", "4h-sic-divacancy-hh"]);
    let loud = spinstress(&["-v", "convert", "--preset", "4h-sic-divacancy-hh"]);
    assert_eq!(quiet.stdout, loud.stdout);
    let err = String::from_utf8_lossy(&loud.stderr);
    assert!(err.contains("coefficient map"));
    assert!(err.contains("self-check"));
}

#[test]
fn preset_directory_overlay() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::create_dir(dir.path().join("materials")).unwrap();
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/presets/materials/4h-sic-divacancy-hh.toml"))
        .unwrap()
        .replace("name = \"4h-sic-divacancy-hh\"", "name = \"my-4h\"");
    std::fs::write(dir.path().join("materials/my-4h.toml"), text).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_spinstress"))
        .args(["presets", "list", "--format", "csv"])
        .env("SPINSTRESS_PRESET_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("my-4h"));
}
