use std::f64::consts::PI;
use std::fs;
use std::process::{Command, Output};

fn casimir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_casimir"))
        .args(args)
        .env_remove("CASIMIR_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("missing {key} in {text}"))
        .parse()
        .unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn read_csv(path: &std::path::Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines
        .next()
        .unwrap()
        .split(',')
        .map(str::to_owned)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn massless_force_at_unit_separation() {
    let o = casimir(&["force", "--a", "197.3269804fm", "--mass", "0"]);
    assert!(o.status.success());
    let f = field(&stdout(&o), "force_magnitude_mev4");
    assert!(rel(f, PI * PI / 240.0) < 1e-8, "{f}");
}

#[test]
fn methods_agree_for_pion() {
    let get = |m: &str| {
        let o = casimir(&["force", "--a", "100fm", "--mass", "135", "--method", m]);
        assert!(o.status.success());
        field(&stdout(&o), "force_magnitude_mev4")
    };
    let integral = get("integral");
    assert!(rel(get("bessel"), integral) < 1e-8);
    assert!(rel(get("direct"), integral) < 1e-6);
}

#[test]
fn zero_distance_is_a_usage_error() {
    let o = casimir(&["force", "--a", "0fm", "--mass", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn missing_mass_is_a_usage_error() {
    assert_eq!(casimir(&["force", "--a", "1fm"]).status.code(), Some(2));
}

#[test]
fn photon_sweep_scales_as_inverse_fourth_power() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("photon.csv");
    let o = casimir(&[
        "sweep",
        "--a-min",
        "1nat",
        "--a-max",
        "2nat",
        "--points",
        "2",
        "--species",
        "photon",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let (header, rows) = read_csv(&out);
    assert_eq!(
        header,
        [
            "a_fm",
            "force_photon_mev4",
            "force_total_mev4",
            "ratio_photon"
        ]
    );
    assert_eq!(rows.len(), 2);
    assert!(rel(rows[1][1], rows[0][1] / 16.0) < 1e-12);
    assert_eq!(rows[0][3], 1.0);
}

#[test]
fn positronium_shares_half_at_small_separation() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pair.csv");
    let svg = dir.path().join("pair.svg");
    let o = casimir(&[
        "sweep",
        "--a-min",
        "0.01fm",
        "--a-max",
        "0.1fm",
        "--points",
        "3",
        "--species",
        "photon",
        "--species",
        "positronium",
        "--out",
        out.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let (_, rows) = read_csv(&out);
    for r in rows {
        assert!((r[5] - 0.5).abs() < 1e-3, "{r:?}");
    }
    assert!(fs::read_to_string(svg).unwrap().contains("<polyline"));
}

#[test]
fn pion_share_near_third_at_short_distance() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("three.csv");
    let o = casimir(&[
        "sweep",
        "--a-min",
        "0.01fm",
        "--a-max",
        "0.1fm",
        "--points",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let (header, rows) = read_csv(&out);
    let col = header.iter().position(|h| h == "ratio_pi0").unwrap();
    let r = rows[1][col];
    assert!(rel(r, 1.0 / 3.0) < 0.05, "{r}");
}

#[test]
fn species_listing() {
    let o = casimir(&["species"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let cols = |l: &str| l.split_whitespace().map(str::to_owned).collect::<Vec<_>>();
    let pi0 = text.lines().map(cols).find(|c| c[0] == "pi0").unwrap();
    assert!((pi0[2].parse::<f64>().unwrap() - 1.4617).abs() < 1e-4);
    assert!(text.lines().any(|l| cols(l)[..2] == ["positronium", "1"]));
    let precise = stdout(&casimir(&["species", "--precise"]));
    assert!(precise.contains("1.022"));
}

#[test]
fn unwritable_output_is_an_io_error() {
    let o = casimir(&[
        "sweep",
        "--a-min",
        "1fm",
        "--a-max",
        "2fm",
        "--points",
        "2",
        "--out",
        "/nonexistent-dir/x.csv",
    ]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn invalid_thread_count_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_casimir"))
        .args(["reproduce", "fig1", "--out", dir.path().to_str().unwrap()])
        .env("CASIMIR_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn energy_massless_limit() {
    let o = casimir(&["energy", "--a", "1nat", "--mass", "0"]);
    assert!(o.status.success());
    let e = field(&stdout(&o), "energy_per_area_mev3");
    assert!(rel(e, -PI * PI / 720.0) < 1e-8, "{e}");
}
