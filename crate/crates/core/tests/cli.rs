use std::f64::consts::{E, PI, TAU};
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn blochprop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blochprop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect()
}

fn value_after(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(key))
        .and_then(|rest| rest.split_whitespace().next())
        .unwrap_or_else(|| panic!("no `{key}` in {text}"))
        .parse()
        .unwrap()
}

const FIGURE: [&str; 9] = [
    "simulate",
    "--vec",
    "1,0,0",
    "--err",
    "0,0.2,0",
    "--step",
    "pi/100,pi/100,pi/100",
    "--steps",
    "200",
];

#[test]
fn simulate_writes_stepped_series() {
    let o = blochprop(&FIGURE);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(!text.contains('\r'));
    assert_eq!(text.lines().next(), Some("t,delta_az,delta_el"));
    let data = rows(&text);
    assert_eq!(data.len(), 201);
    assert_eq!(data[0][0], 0.0);
    assert!((data[0][2] - 0.2).abs() < 1e-15);
    assert_eq!(data[200][0], 200.0);
}

#[test]
fn simulate_zero_error_is_all_zero() {
    let o = blochprop(&["simulate", "--err", "0,0,0", "--steps", "50"]);
    assert!(o.status.success());
    assert!(rows(&stdout(&o)).iter().all(|r| r[1] == 0.0 && r[2] == 0.0));
}

#[test]
fn pipelines_agree_cell_by_cell() {
    let run = |p: &str| {
        let mut args = FIGURE.to_vec();
        args.extend(["--pipeline", p]);
        rows(&stdout(&blochprop(&args)))
    };
    let euler = run("euler");
    for other in [run("su2"), run("closed")] {
        assert_eq!(euler.len(), other.len());
        for (a, b) in euler.iter().zip(&other) {
            for (x, y) in a.iter().zip(b) {
                assert!((x - y).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn simulate_to_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("fig.csv");
    let svg = dir.path().join("fig.svg");
    let json = dir.path().join("fig.json");
    for (path, fmt) in [(&csv, "csv"), (&svg, "svg"), (&json, "json")] {
        let mut args = FIGURE.to_vec();
        args.extend(["--format", fmt, "--output", path.to_str().unwrap()]);
        let o = blochprop(&args);
        assert!(o.status.success(), "{fmt}");
        assert!(o.stdout.is_empty());
    }
    assert_eq!(rows(&fs::read_to_string(&csv).unwrap()).len(), 201);
    let svg = fs::read_to_string(&svg).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 2);
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(json["schema_version"], 1);
    assert_eq!(json["samples"].as_array().unwrap().len(), 201);
}

fn extrema_json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["extrema"];
    all.extend(args);
    let o = blochprop(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn extremum(report: &serde_json::Value, mode: &str, target: &str) -> f64 {
    report["extrema"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["kind"]["mode"] == mode && e["kind"]["target"] == target)
        .unwrap()["value"]
        .as_f64()
        .unwrap()
}

#[test]
fn extrema_equatorial_base() {
    let r = extrema_json(&["--vec", "1,0,0", "--seed", "42", "--starts", "1000"]);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["seed"], 42);
    assert_eq!(r["num_starts"], 1000);
    assert!((extremum(&r, "max", "elevation") - 2.03444).abs() < 1e-3);
    assert!((extremum(&r, "max", "azimuth") - PI).abs() < 1e-6);
    assert!(extremum(&r, "min", "elevation") <= 1e-6);
    assert!(extremum(&r, "min", "azimuth") <= 1e-6);
}

#[test]
fn extrema_polar_base() {
    let r = extrema_json(&["--vec", "0,0,1", "--seed", "42"]);
    assert!((extremum(&r, "max", "elevation") - PI).abs() < 1e-3);
    assert!((extremum(&r, "max", "azimuth") - PI).abs() < 1e-3);
}

#[test]
fn extrema_reports_are_reproducible() {
    let args = ["extrema", "--seed", "7", "--starts", "40"];
    let a = blochprop(&args);
    let b = blochprop(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("extrema.csv");
    let o = blochprop(&[
        "extrema",
        "--starts",
        "40",
        "--format",
        "csv",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(
        text.lines().next(),
        Some("mode,target,value,eps_x,eps_y,eps_z,t")
    );
    assert_eq!(text.lines().count(), 5);
    assert!(stdout(&o).contains("min elevation ≈0"));
}

#[test]
fn period_command() {
    let o = blochprop(&["period", "--angles", "1,1,1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("analytic_period 2.809925892"));
    let numeric = value_after(&text, "numeric_period ");
    assert!((numeric - TAU / 5f64.sqrt()).abs() < 1e-6);

    // angles are (phi, theta, psi), so theta = e here
    let text = stdout(&blochprop(&["period", "--angles", "pi,e,3"]));
    let want = TAU / (E * E + (PI + 3.0).powi(2)).sqrt();
    assert!((value_after(&text, "analytic_period ") - want).abs() < 1e-15);

    let text = stdout(&blochprop(&["period", "--angles", "e,pi,3"]));
    let want = TAU / (PI * PI + (E + 3.0).powi(2)).sqrt();
    assert!((value_after(&text, "analytic_period ") - want).abs() < 1e-15);
    assert!((value_after(&text, "numeric_period ") - want).abs() < 1e-6 * want);
}

#[test]
fn period_constant_signal() {
    let o = blochprop(&["period", "--err", "0,0,0"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("(constant signal)"));
}

#[test]
fn degenerate_rotation_exits_one() {
    for cmd in ["period", "average"] {
        let o = blochprop(&[cmd, "--angles", "0,0,0"]);
        assert_eq!(o.status.code(), Some(1), "{cmd}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("degenerate"));
    }
}

#[test]
fn cases_command() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cases");
    let o = blochprop(&["cases", "--starts", "50", "--output", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let summary = fs::read_to_string(out.join("summary.csv")).unwrap();
    let lines: Vec<&str> = summary.lines().collect();
    assert_eq!(lines.len(), 8);
    for line in &lines[1..] {
        let cells: Vec<&str> = line.split(',').collect();
        let label = cells[0];
        let analytic: f64 = cells[4].parse().unwrap();
        let numeric: f64 = cells[5].parse().unwrap();
        assert!((analytic - numeric).abs() < 1e-6 * analytic, "{label}");
        assert!(Path::new(&out.join(format!("{label}.csv"))).exists());
        assert!(Path::new(&out.join(format!("{label}.svg"))).exists());
        if label == "case2-sub1" {
            assert!((analytic - (2.0f64 / 5.0).sqrt() * PI).abs() < 1e-12);
        }
    }
    assert_eq!(stdout(&o).lines().count(), 8);

    let o = blochprop(&[
        "cases",
        "--starts",
        "5",
        "--format",
        "json",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(json["schema_version"], 1);
    assert_eq!(json["cases"].as_array().unwrap().len(), 7);
}

#[test]
fn average_command() {
    let text = stdout(&blochprop(&[
        "average", "--err", "0,0,0", "--angles", "1,1,1",
    ]));
    assert_eq!(value_after(&text, "azimuth "), 0.0);
    assert_eq!(value_after(&text, "elevation "), 0.0);

    let base = stdout(&blochprop(&[
        "average", "--err", "0,0.2,0", "--angles", "1,1,1",
    ]));
    let tight = stdout(&blochprop(&[
        "average", "--err", "0,0.2,0", "--angles", "1,1,1", "--tol", "1e-9",
    ]));
    let r = extrema_json(&["--starts", "200"]);
    for (key, target) in [("azimuth ", "azimuth"), ("elevation ", "elevation")] {
        let v = value_after(&base, key);
        assert!(v > 0.0 && v <= extremum(&r, "max", target));
        assert!((v - value_after(&tight, key)).abs() < 1e-7);
    }
}

#[test]
fn unwritable_output_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let target = blocker.join("out.csv");
    let o = blochprop(&["simulate", "--output", target.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());

    let o = blochprop(&[
        "cases",
        "--starts",
        "1",
        "--output",
        blocker.join("sub").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn invalid_input_exits_one() {
    for args in [
        &["simulate", "--vec", "1,1,0"][..],
        &["simulate", "--step", "pi/,1,1"],
        &["simulate", "--step", "0.1,0.2,0.3", "--pipeline", "closed"],
        &["simulate", "--format", "png"],
        &["extrema", "--starts", "0"],
        &["extrema", "--format", "svg"],
        &["average", "--tol", "-1"],
        &["frobnicate"],
        &[],
    ] {
        let o = blochprop(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    let o = blochprop(&["--help"]);
    assert!(o.status.success());
    for cmd in ["simulate", "extrema", "period", "cases", "average"] {
        assert!(stdout(&o).contains(cmd));
    }
}
