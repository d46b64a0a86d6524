use std::process::{Command, Output};

use monopole_cs::gscs::overlap_direct;
use monopole_cs::monopole::monopole_harmonic;
use monopole_cs::{PlanePoint, SpinLevel};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cs-monopole"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    (header, rows)
}

fn f(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn basis_rows_round_trip_bit_for_bit() {
    let text = stdout(&[
        "basis",
        "--two-nu",
        "2",
        "--m",
        "1",
        "--grid",
        "0.1,-0.2,1,5",
    ]);
    assert!(!text.contains('\r'));
    let (header, rows) = csv_rows(&text);
    assert_eq!(header, ["j", "z_re", "z_im", "value_re", "value_im"]);
    assert_eq!(rows.len(), 25 * 5);
    let lv = SpinLevel::new(2, 1).unwrap();
    for r in &rows {
        let z = PlanePoint::new(f(&r[1]), f(&r[2])).unwrap();
        let v = monopole_harmonic(lv, r[0].parse().unwrap(), z).unwrap();
        assert_eq!((f(&r[3]), f(&r[4])), (v.re, v.im));
    }
}

#[test]
fn basis_vanishes_at_origin_for_nonzero_j() {
    let (_, rows) = csv_rows(&stdout(&[
        "basis", "--two-nu", "3", "--m", "2", "--grid", "0,0,0,1",
    ]));
    for r in rows.iter().filter(|r| r[0] != "0") {
        assert_eq!((f(&r[3]), f(&r[4])), (0.0, 0.0));
    }
}

#[test]
fn output_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = run(&[
            "husimi",
            "--two-nu",
            "4",
            "--m",
            "2",
            "--grid",
            "0,0,2,21",
            "--state",
            "gscs:0.4,-0.3",
            "--format",
            "json",
            "--output",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&a).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 21 * 21);
}

#[test]
fn husimi_is_bounded_and_peaks_at_label() {
    let (header, rows) = csv_rows(&stdout(&[
        "husimi",
        "--two-nu",
        "3",
        "--m",
        "1",
        "--grid",
        "0.5,0.5,1,3",
        "--state",
        "gscs:0.5,0.5",
    ]));
    assert_eq!(header, ["z_re", "z_im", "density"]);
    assert_eq!(rows.len(), 9);
    let centre = &rows[4];
    assert!((f(&centre[2]) - 1.0).abs() < 1e-12);
    assert!(rows.iter().all(|r| f(&r[2]) <= 1.0 + 1e-12));
    let (_, rows) = csv_rows(&stdout(&[
        "husimi", "--two-nu", "2", "--m", "1", "--grid", "0,0,3,7", "--state", "basis:-1",
    ]));
    assert!(rows.iter().all(|r| (0.0..=1.0 + 1e-12).contains(&f(&r[2]))));
}

#[test]
fn overlap_json_matches_library() {
    let text = stdout(&[
        "overlap", "--two-nu", "2", "--m", "2", "--z", "-0.3,0.8", "--w", "1.1,0.2", "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let lv = SpinLevel::new(2, 2).unwrap();
    let want = overlap_direct(
        lv,
        PlanePoint::new(-0.3, 0.8).unwrap(),
        PlanePoint::new(1.1, 0.2).unwrap(),
    );
    assert_eq!(v[0]["direct_re"].as_f64().unwrap(), want.re);
    assert_eq!(v[0]["direct_im"].as_f64().unwrap(), want.im);
    let closed_re = v[0]["closed_re"].as_f64().unwrap();
    assert!((closed_re - want.re).abs() < 1e-12);
}

#[test]
fn kravchuk_outputs() {
    let (_, rows) = csv_rows(&stdout(&[
        "kravchuk",
        "--N",
        "4",
        "--p",
        "1/2",
        "--spectrum",
    ]));
    let ev: Vec<f64> = rows.iter().map(|r| f(&r[1])).collect();
    for (k, e) in ev.iter().enumerate() {
        assert!((e - (k as f64 + 0.5)).abs() < 1e-12);
    }

    let (_, rows) = csv_rows(&stdout(&["kravchuk", "--N", "9", "--p", "2/3", "--matrix"]));
    let n = 10;
    let at = |r: usize, c: usize| f(&rows[r * n + c][2]);
    for r in 0..n {
        for c in 0..n {
            assert_eq!(at(r, c), at(c, r));
        }
    }

    let (_, rows) = csv_rows(&stdout(&[
        "kravchuk",
        "-N",
        "40",
        "--p",
        "1/4",
        "--functions",
    ]));
    for k in 0..=40usize {
        let norm: f64 = rows[k * 41..(k + 1) * 41]
            .iter()
            .map(|r| f(&r[3]).powi(2))
            .sum();
        assert!((norm - 1.0).abs() < 1e-10);
    }

    let (_, rows) = csv_rows(&stdout(&[
        "kravchuk",
        "--N",
        "3",
        "--p",
        "1/3",
        "--polynomials",
        "--backend",
        "rational",
    ]));
    // K_1(y) = y - Np
    assert_eq!(rows[4], ["1", "0", "-1"]);
    assert_eq!(rows[7], ["1", "3", "2"]);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["kravchuk", "--N", "4", "--p", "0.5", "--spectrum"][..],
        &["kravchuk", "--N", "0", "--p", "1/2", "--spectrum"],
        &["kravchuk", "--N", "4", "--p", "3/2", "--matrix"],
        &["kravchuk", "--N", "4", "--p", "1/2"],
        &[
            "husimi", "--two-nu", "2", "--grid", "0,0,1,3", "--state", "basis:5",
        ],
        &[
            "husimi", "--two-nu", "2", "--grid", "0,0,1", "--state", "basis:0",
        ],
        &["basis", "--two-nu", "0", "--grid", "0,0,1,3"],
        &[
            "wavefunction",
            "--two-nu",
            "2",
            "--m",
            "1",
            "--p",
            "1/3",
            "--z",
            "0,0",
            "--form",
            "closed",
        ],
        &[
            "overlap",
            "--two-nu",
            "2",
            "--z",
            "1/2",
            "--w",
            "1/3,1",
            "--backend",
            "rational",
        ],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn thread_variable_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_cs-monopole"))
        .args(["gram", "--two-nu", "1"])
        .env("CS_MONOPOLE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_cs-monopole"))
        .args(["gram", "--two-nu", "2", "--m", "1", "--identity"])
        .env("CS_MONOPOLE_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let (_, rows) = csv_rows(&String::from_utf8(out.stdout).unwrap());
    for r in rows {
        let want = if r[0] == r[1] { 1.0 } else { 0.0 };
        assert!((f(&r[2]) - want).abs() < 1e-12 && f(&r[3]).abs() < 1e-12);
    }
}

#[test]
fn wavefunction_forms_agree() {
    let direct = csv_rows(&stdout(&[
        "wavefunction",
        "--two-nu",
        "2",
        "--m",
        "1",
        "--p",
        "1/3",
        "--z",
        "0.4,-0.7",
    ]))
    .1;
    let closed = csv_rows(&stdout(&[
        "wavefunction",
        "--two-nu",
        "2",
        "--m",
        "1",
        "--p",
        "1/3",
        "--z",
        "0.4,-0.7",
        "--form",
        "closed",
    ]))
    .1;
    let mut total = 0.0;
    for (a, b) in direct.iter().zip(&closed) {
        assert_eq!(a[0..2], b[0..2]);
        assert!((f(&a[2]) - f(&b[2])).abs() < 1e-12 && (f(&a[3]) - f(&b[3])).abs() < 1e-12);
        total += f(&a[2]).powi(2) + f(&a[3]).powi(2);
    }
    assert!((total - 1.0).abs() < 1e-12);
}
