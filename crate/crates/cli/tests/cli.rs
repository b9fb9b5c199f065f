use std::fs;
use std::process::{Command, Output};

use serde_json::Value;
use shellbound::{outer_radius_bound, quotient_bound, width_bound, PinchSpec, SpaceCurvature};

fn shellbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shellbound"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Value of the `name` row of a text report.
fn field(text: &str, name: &str) -> String {
    text.lines()
        .find_map(|l| {
            let mut parts = l.split_whitespace();
            (parts.next() == Some(name)).then(|| parts.next().unwrap_or_default().to_owned())
        })
        .unwrap_or_else(|| panic!("no `{name}` row in\n{text}"))
}

fn read_jsonl(path: &std::path::Path) -> Vec<Value> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn summary_row(path: &std::path::Path) -> std::collections::HashMap<String, String> {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',');
    let row = lines.next().unwrap().split(',');
    header
        .map(str::to_owned)
        .zip(row.map(str::to_owned))
        .collect()
}

#[test]
fn bound_text_report() {
    let o = shellbound(&["bound", "--flat", "--k1", "1", "--k2", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(field(&text, "width_bound"), "0.207106781");
    assert_eq!(field(&text, "quotient_bound"), "1.33333333");
    assert_eq!(field(&text, "quotient_bound_coarse"), "2");
}

#[test]
fn bound_degenerate_pinch() {
    let text = stdout(&shellbound(&["bound", "--flat", "--k1", "2", "--k2", "2"]));
    assert_eq!(field(&text, "width_bound"), "0");
    assert_eq!(field(&text, "quotient_bound"), "1");
}

#[test]
fn bound_rejects_inadmissible_pinch() {
    let o = shellbound(&["bound", "--hyperbolic", "1", "--k1", "1", "--k2", "2"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("kappa1 > sqrt(-c)"), "{}", stderr(&o));
    let o = shellbound(&["bound", "--flat", "--k1", "2", "--k2", "1"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("kappa2 >= kappa1"));
}

#[test]
fn bound_json_matches_library_exactly() {
    for (flag, k, k1, k2) in [
        ("--flat", None, "1", "2"),
        ("--spherical", Some("1"), "1", "2"),
        ("--hyperbolic", Some("1"), "2", "3"),
    ] {
        let mut args = vec!["bound", flag];
        args.extend(k);
        args.extend(["--k1", k1, "--k2", k2, "--json"]);
        let o = shellbound(&args);
        assert!(o.status.success());
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        let space = match flag {
            "--flat" => SpaceCurvature::flat(),
            "--spherical" => SpaceCurvature::spherical(1.0).unwrap(),
            _ => SpaceCurvature::hyperbolic(1.0).unwrap(),
        };
        let pinch = PinchSpec::new(space, k1.parse().unwrap(), k2.parse().unwrap()).unwrap();
        let w = width_bound(&pinch);
        assert_eq!(v["width"]["bound"].as_f64().unwrap(), w.bound);
        assert_eq!(v["width"]["maximizer_r"].as_f64().unwrap(), w.maximizer_r);
        match quotient_bound(&pinch) {
            Ok(q) => assert_eq!(v["quotient"]["bound"].as_f64().unwrap(), q.bound),
            Err(_) => assert!(v["quotient"].is_null()),
        }
        assert!(v["stability"]["width_constant"].is_number());
    }
}

#[test]
fn bound_outer_radius_at_given_r() {
    let o = shellbound(&[
        "bound", "--flat", "--k1", "1", "--k2", "2", "--r", "0.75", "--json",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let pinch = PinchSpec::flat(1.0, 2.0).unwrap();
    assert_eq!(
        v["outer_radius"]["bound"].as_f64().unwrap(),
        outer_radius_bound(&pinch, 0.75).unwrap()
    );
    assert!(
        !shellbound(&["bound", "--flat", "--k1", "1", "--k2", "2", "--r", "2"])
            .status
            .success()
    );
}

#[test]
fn spindle_prints_radii_and_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("out.svg");
    let o = shellbound(&[
        "spindle",
        "--flat",
        "--k1",
        "1",
        "--k2",
        "2",
        "--r",
        "0.6",
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(field(&text, "r_tilde"), "0.6");
    assert_eq!(field(&text, "R_tilde"), "0.8");
    assert_eq!(field(&text, "width"), "0.2");
    assert_eq!(field(&text, "quotient"), "1.33333333");
    let drawing = fs::read_to_string(&svg).unwrap();
    assert!(drawing.starts_with("<svg") && drawing.trim_end().ends_with("</svg>"));
    assert!(drawing.contains(r#"viewBox="-1.250 -1.250 2.500 2.500""#));
    assert!(drawing.contains(r#"class="main""#) && drawing.contains(r#"class="cap""#));
}

#[test]
fn spindle_csv_schema() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let o = shellbound(&[
        "spindle",
        "--spherical",
        "1",
        "--k1",
        "1",
        "--k2",
        "2",
        "--r",
        "0.6",
        "--csv",
        csv.to_str().unwrap(),
        "--samples",
        "100",
    ]);
    assert!(o.status.success());
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "index,segment,role,x,y,z,rho,phi,curvature");
    assert_eq!(lines.len(), 101);
    for line in &lines[1..] {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 9);
        let kappa: f64 = cols[8].parse().unwrap();
        let expect = if cols[2] == "main" { 1.0 } else { 2.0 };
        assert!((kappa - expect).abs() < 1e-12);
        let rho: f64 = cols[6].parse().unwrap();
        assert!(rho >= 0.6 - 1e-9);
    }
}

#[test]
fn spindle_sentinels_and_limits() {
    let circle = stdout(&shellbound(&[
        "spindle", "--flat", "--k1", "1", "--k2", "2", "--r", "1.0",
    ]));
    assert_eq!(field(&circle, "width"), "0");
    let sph = stdout(&shellbound(&[
        "spindle",
        "--spherical",
        "1",
        "--k1",
        "1",
        "--k2",
        "2",
        "--r",
        "max-width",
    ]));
    assert_eq!(field(&sph, "width"), "0.135280518");
    let q = stdout(&shellbound(&[
        "spindle",
        "--flat",
        "--k1",
        "1",
        "--k2",
        "2",
        "--r",
        "max-quotient",
    ]));
    assert_eq!(field(&q, "quotient"), "1.33333333");
    assert!(
        !shellbound(&["spindle", "--flat", "--k1", "1", "--k2", "2", "--r", "0.4"])
            .status
            .success()
    );
    assert!(!shellbound(&[
        "spindle",
        "--spherical",
        "1",
        "--k1",
        "1",
        "--k2",
        "2",
        "--r",
        "max-quotient"
    ])
    .status
    .success());
}

#[test]
fn verify_random_batch() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.jsonl");
    let summary = dir.path().join("s.csv");
    let o = shellbound(&[
        "verify",
        "--flat",
        "--k1",
        "1",
        "--k2",
        "2",
        "--seeds",
        "0..99",
        "--report",
        report.to_str().unwrap(),
        "--summary",
        summary.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(field(&stdout(&o), "satisfied"), "100/100");
    let records = read_jsonl(&report);
    assert_eq!(records.len(), 100);
    for (i, r) in records.iter().enumerate() {
        assert_eq!(r["seed"].as_u64().unwrap(), i as u64);
        assert_eq!(r["satisfied"]["width"], true);
        assert!(r["R"].as_f64().unwrap() >= r["r"].as_f64().unwrap());
    }
    let row = summary_row(&summary);
    assert_eq!(row["bodies"], "100");
    assert_eq!(row["violations"], "0");
}

#[test]
fn verify_spindle_family_is_sharp() {
    let dir = tempfile::tempdir().unwrap();
    let summary = dir.path().join("s.csv");
    let o = shellbound(&[
        "verify",
        "--family",
        "spindle",
        "--flat",
        "--k1",
        "1",
        "--k2",
        "2",
        "--grid",
        "33",
        "--summary",
        summary.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let row = summary_row(&summary);
    assert_eq!(row["bodies"], "35");
    let margin: f64 = row["worst_width_margin"].parse().unwrap();
    assert!(margin.abs() <= 1e-6, "{margin}");
}

#[test]
fn verify_umbilic_pinch_gives_circles() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.jsonl");
    let o = shellbound(&[
        "verify",
        "--flat",
        "--k1",
        "1",
        "--k2",
        "1",
        "--seeds",
        "0..9",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let records = read_jsonl(&report);
    assert_eq!(records.len(), 10);
    assert!(records
        .iter()
        .all(|r| r["width"].as_f64().unwrap().abs() < 1e-9));
}

#[test]
fn verify_curved_families() {
    let o = shellbound(&[
        "verify",
        "--family",
        "revolution",
        "--hyperbolic",
        "1",
        "--k1",
        "2",
        "--k2",
        "3",
        "--seeds",
        "0..19",
    ]);
    assert!(o.status.success());
    assert_eq!(field(&stdout(&o), "satisfied"), "20/20");
    let o = shellbound(&[
        "verify",
        "--family",
        "spindle",
        "--spherical",
        "1",
        "--k1",
        "1",
        "--k2",
        "2",
        "--grid",
        "5",
    ]);
    assert!(o.status.success());
    assert_eq!(field(&stdout(&o), "satisfied"), "6/6");
    let o = shellbound(&["verify", "--spherical", "1", "--k1", "1", "--k2", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_reports_violating_seed() {
    let o = shellbound(&[
        "verify", "--flat", "--k1", "1", "--k2", "2", "--seeds", "0..9", "--tol", "-0.055",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("seed 1:"), "{}", stderr(&o));
}

#[test]
fn output_is_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: &str, name: &str| {
        let path = dir.path().join(name);
        let o = Command::new(env!("CARGO_BIN_EXE_shellbound"))
            .env("SHELLBOUND_THREADS", threads)
            .args([
                "verify",
                "--family",
                "revolution",
                "--spherical",
                "2",
                "--k1",
                "0.5",
                "--k2",
                "3",
                "--seeds",
                "10..49",
                "--report",
                path.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(o.status.success());
        (o.stdout, fs::read(path).unwrap())
    };
    let a = run("1", "a.jsonl");
    let b = run("4", "b.jsonl");
    let c = run("4", "c.jsonl");
    assert_eq!(a, b);
    assert_eq!(b, c);
}
