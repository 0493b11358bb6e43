use std::f64::consts::TAU;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(name)
}

fn simulate(out_dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_simulate"))
        .args(args)
        .env("SIMULATE_OUT_DIR", out_dir)
        .output()
        .expect("binary runs")
}

fn simulate_ok(out_dir: &Path, args: &[&str]) -> Output {
    let out = simulate(out_dir, args);
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

/// Header and numeric rows of a CSV file.
fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut rdr = csv::Reader::from_path(path).unwrap();
    let header = rdr.headers().unwrap().iter().map(String::from).collect();
    let rows = rdr
        .records()
        .map(|r| r.unwrap().iter().map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], rows: &[Vec<f64>], name: &str) -> Vec<f64> {
    let j = header
        .iter()
        .position(|h| h == name)
        .unwrap_or_else(|| panic!("no column {name}"));
    rows.iter().map(|r| r[j]).collect()
}

fn config_path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn fig1_reproduces_the_four_curves() {
    let dir = tempfile::tempdir().unwrap();
    for omega in [1.0, 2.5] {
        let out = dir.path().join(format!("fig1_{omega}.csv"));
        let w = omega.to_string();
        simulate_ok(
            dir.path(),
            &["fig1", "--omega", &w, "--out", out.to_str().unwrap()],
        );
        let text = fs::read_to_string(&out).unwrap();
        assert!(!text.contains('\r'));
        assert!(text.ends_with('\n'));
        let (header, rows) = read_csv(&out);
        assert_eq!(
            header,
            ["t", "dirac_10", "majorana_10", "dirac_1i", "majorana_1i"]
        );
        assert_eq!(rows.len(), 501);
        let t = column(&header, &rows, "t");
        assert_eq!(t[0], 0.0);
        assert!((t[500] - TAU / omega).abs() < 1e-15);
        assert!((t[250] - std::f64::consts::PI / omega).abs() < 1e-15);
        let d10 = column(&header, &rows, "dirac_10");
        let m10 = column(&header, &rows, "majorana_10");
        let d1i = column(&header, &rows, "dirac_1i");
        let m1i = column(&header, &rows, "majorana_1i");
        for i in 0..501 {
            let phase = 2.0 * omega * t[i];
            assert_eq!(d10[i], 1.0);
            assert_eq!(d1i[i], 0.0);
            assert!((m10[i] - phase.cos()).abs() <= 1e-10);
            assert!((m1i[i] - phase.sin()).abs() <= 1e-10);
        }
        let meta_path = dir.path().join(format!("fig1_{omega}.meta.json"));
        let meta: Value = serde_json::from_str(&fs::read_to_string(meta_path).unwrap()).unwrap();
        assert_eq!(meta["command"], "fig1");
        assert_eq!(meta["scenario"]["params"]["mass"], omega);
        assert_eq!(meta["version"], env!("CARGO_PKG_VERSION"));
    }
}

#[test]
fn fig1_defaults_to_output_directory() {
    let dir = tempfile::tempdir().unwrap();
    simulate_ok(dir.path(), &["fig1"]);
    assert!(dir.path().join("fig1.csv").exists());
    assert!(dir.path().join("fig1.meta.json").exists());
}

#[test]
fn ultra_table_decreases_monotonically() {
    let dir = tempfile::tempdir().unwrap();
    simulate_ok(dir.path(), &["run", config_path(&scenario("ultra.json"))]);
    let (header, rows) = read_csv(&dir.path().join("ultra.csv"));
    assert_eq!(
        column(&header, &rows, "p_over_mc"),
        [1.0, 10.0, 100.0, 1000.0]
    );
    let dev = column(&header, &rows, "deviation");
    assert!(dev.windows(2).all(|w| w[1] < w[0]), "{dev:?}");
    let inside = column(&header, &rows, "inside_window");
    assert_eq!(inside[1..], [1.0, 1.0, 1.0]);
}

#[test]
fn missing_mass_exits_2_naming_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let out = simulate(
        dir.path(),
        &["run", config_path(&scenario("missing_mass.json"))],
    );
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("mass"), "{err}");
    assert!(err.contains("params"), "{err}");
    assert!(err.contains("missing_mass.json:3:"), "{err}");
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn semantic_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (
            r#"{"mode": "rest", "params": {"mass": -1}, "initial": [{"label": "a", "spinor": [1,0,0,0]}], "time": {"stop": 1, "points": 3}}"#,
            "params.mass",
        ),
        (
            r#"{"mode": "rest", "params": {"mass": 1}, "initial": [{"label": "a", "spinor": [1,0,0,0]}], "time": {"values": [0, 1, 1]}}"#,
            "time[2]",
        ),
        (
            r#"{"mode": "rest", "params": {"mass": 1}, "initial": [{"label": "a", "spinor": [1,0,0,0]}]}"#,
            "time",
        ),
        (
            r#"{"mode": "ion", "params": {"mass": 1}, "initial": [{"label": "a", "spinor": [1,0,0,0]}], "time": {"stop": 1, "points": 3}, "ion": {"shots": 10}}"#,
            "equation",
        ),
        (
            r#"{"mode": "wavepacket", "params": {"mass": 1}, "initial": [{"label": "a", "spinor": [1,0,0,0]}], "time": {"stop": 1, "points": 3}, "wavepacket": {"n": 64, "box_length": 100, "sigma_x": 2}}"#,
            "wavepacket",
        ),
        (
            r#"{"mode": "rest", "params": {"mass": 1}, "speed": 3}"#,
            "speed",
        ),
    ];
    for (i, (text, needle)) in cases.iter().enumerate() {
        let path = dir.path().join(format!("bad{i}.json"));
        fs::write(&path, text).unwrap();
        let out = simulate(dir.path(), &["run", config_path(&path)]);
        assert_eq!(out.status.code(), Some(2), "case {i}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(needle), "case {i}: {err}");
    }
}

#[test]
fn self_check_failure_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    // round-off alone exceeds this tolerance somewhere on the grid
    let out = simulate(dir.path(), &["--tolerance", "1e-300", "fig1"]);
    assert_eq!(
        out.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("self-check"));
}

fn compare_summary(dir: &Path, stem: &str) -> Value {
    serde_json::from_str(&fs::read_to_string(dir.join(format!("{stem}_compare.json"))).unwrap())
        .unwrap()
}

#[test]
fn massless_momentum_compare_coincides() {
    let dir = tempfile::tempdir().unwrap();
    simulate_ok(
        dir.path(),
        &["compare", config_path(&scenario("massless.json"))],
    );
    let summary = compare_summary(dir.path(), "massless");
    assert!(summary["max"].as_f64().unwrap() <= 1e-12, "{summary}");

    let text = fs::read_to_string(scenario("massless.json")).unwrap();
    let mut cfg: Value = serde_json::from_str(&text).unwrap();
    cfg["compare"] = serde_json::json!({"a": "majorana", "b": "ultra"});
    cfg["name"] = Value::from("massless_ultra");
    let path = dir.path().join("massless_ultra.json");
    fs::write(&path, cfg.to_string()).unwrap();
    simulate_ok(dir.path(), &["compare", config_path(&path)]);
    let summary = compare_summary(dir.path(), "massless_ultra");
    assert!(summary["max"].as_f64().unwrap() <= 1e-12, "{summary}");
}

#[test]
fn identical_equations_compare_to_zero() {
    let dir = tempfile::tempdir().unwrap();
    for (name, eq) in [
        ("rest_compare", "dirac"),
        ("rest_compare", "majorana"),
        ("wavepacket", "majorana"),
        ("ultra_series", "ultra"),
    ] {
        let base = if name == "ultra_series" {
            "massless"
        } else {
            name
        };
        let text = fs::read_to_string(scenario(&format!("{base}.json"))).unwrap();
        let mut cfg: Value = serde_json::from_str(&text).unwrap();
        cfg["compare"] = serde_json::json!({"a": eq, "b": eq});
        cfg["name"] = Value::from(format!("{name}_{eq}"));
        let path = dir.path().join(format!("{name}_{eq}.json"));
        fs::write(&path, cfg.to_string()).unwrap();
        simulate_ok(dir.path(), &["compare", config_path(&path)]);
        let summary = compare_summary(dir.path(), &format!("{name}_{eq}"));
        assert_eq!(summary["max"].as_f64(), Some(0.0), "{name} {eq}");
        assert_eq!(summary["mean"].as_f64(), Some(0.0));
    }
}

#[test]
fn rest_compare_peaks_at_quarter_period() {
    let dir = tempfile::tempdir().unwrap();
    simulate_ok(
        dir.path(),
        &["compare", config_path(&scenario("rest_compare.json"))],
    );
    let (header, rows) = read_csv(&dir.path().join("rest_compare_compare.csv"));
    let t = column(&header, &rows, "t");
    let dev = column(&header, &rows, "10_max_abs");
    // majorana (cos ωt, -i sin ωt) against dirac (e^{-iωt}, 0)
    for (&t, &d) in t.iter().zip(&dev) {
        assert!((d - t.sin().abs()).abs() <= 1e-12, "t = {t}: {d}");
    }
    let summary = compare_summary(dir.path(), "rest_compare");
    let peak = summary["series"][0]["t_at_max"].as_f64().unwrap();
    assert!((peak - std::f64::consts::FRAC_PI_2).abs() < 1e-12, "{peak}");
}

#[test]
fn outputs_are_bit_identical_across_runs() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for name in ["ion.json", "wavepacket.json", "ultra.json"] {
        simulate_ok(a.path(), &["run", config_path(&scenario(name))]);
        simulate_ok(b.path(), &["run", config_path(&scenario(name))]);
    }
    let mut names: Vec<_> = fs::read_dir(a.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert!(names.len() >= 8);
    for name in names {
        let x = fs::read(a.path().join(&name)).unwrap();
        let y = fs::read(b.path().join(&name)).unwrap();
        assert_eq!(x, y, "{name:?}");
    }
}

#[test]
fn seed_override_changes_shots_and_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = scenario("ion.json");
    simulate_ok(dir.path(), &["--seed", "99", "run", config_path(&cfg)]);
    let shots: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("ion_shots.json")).unwrap())
            .unwrap();
    assert_eq!(shots[0]["seed"], 99);
    assert_eq!(shots[3]["seed"], 102);
    assert_eq!(
        shots[0]["basis"],
        serde_json::json!(["1r", "2r", "1i", "2i"])
    );
    let meta: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("ion.meta.json")).unwrap())
            .unwrap();
    assert_eq!(meta["seed"], 99);
    assert_eq!(meta["scenario"]["seed"], 99);
}

#[test]
fn ion_estimates_track_exact_sigma_z() {
    let dir = tempfile::tempdir().unwrap();
    simulate_ok(dir.path(), &["run", config_path(&scenario("ion.json"))]);
    let (header, rows) = read_csv(&dir.path().join("ion.csv"));
    let t = column(&header, &rows, "t");
    let exact = column(&header, &rows, "sigma_z");
    let est = column(&header, &rows, "sigma_z_estimate");
    let se = column(&header, &rows, "sigma_z_std_error");
    for i in 0..t.len() {
        assert!((exact[i] - (2.0 * t[i]).cos()).abs() <= 1e-12);
        assert!((est[i] - exact[i]).abs() <= 5.0 * se[i] + 1e-12, "row {i}");
    }
}

#[test]
fn wavepacket_snapshots_follow_the_csv_layout() {
    let dir = tempfile::tempdir().unwrap();
    simulate_ok(
        dir.path(),
        &["run", config_path(&scenario("wavepacket.json"))],
    );
    let (header, rows) = read_csv(&dir.path().join("wavepacket_majorana_snap1.csv"));
    assert_eq!(
        header,
        ["x", "re_upper", "im_upper", "re_lower", "im_lower", "density"]
    );
    assert_eq!(rows.len(), 512);
    let dx = rows[1][0] - rows[0][0];
    let norm: f64 = rows.iter().map(|r| r[5]).sum::<f64>() * dx;
    assert!((norm - 1.0).abs() < 1e-10);
    let (header, rows) = read_csv(&dir.path().join("wavepacket.csv"));
    for name in ["dirac_norm", "majorana_norm"] {
        assert!(column(&header, &rows, name)
            .iter()
            .all(|n| (n - 1.0).abs() < 1e-10));
    }
}

#[test]
fn every_bundled_scenario_parses() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios");
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        let parsed = majorana_cli::scenario::parse(&text, "x");
        if path.file_name().unwrap() == "missing_mass.json" {
            assert!(parsed.is_err());
        } else {
            parsed.unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        }
    }
}

#[test]
fn published_schema_is_current() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenario.schema.json");
    let on_disk = fs::read_to_string(path).unwrap();
    assert_eq!(on_disk.trim_end(), majorana_cli::scenario::schema_json());
}
