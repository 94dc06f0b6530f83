use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn cuspspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cuspspec"))
        .args(args)
        .output()
        .expect("failed to launch cuspspec")
}

fn run_to(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let mut full: Vec<&str> = args.to_vec();
    let path_str = path.to_str().unwrap();
    full.extend(["--out", path_str]);
    let out = cuspspec(&full);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    fs::read_to_string(path).unwrap()
}

#[test]
fn rho_to_stdout() {
    let out = cuspspec(&["rho", "--m1", "2", "--m2", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rho: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("rho_norm = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((rho - 1.0 / 3f64.sqrt()).abs() < 1e-15);
    assert!(text.contains("nilpotent_dim = 3\n"));
    assert!(text.contains("alpha_of_H = "));
}

#[test]
fn region_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let csv = run_to(
        dir.path(),
        "r.csv",
        &[
            "region",
            "--p",
            "4",
            "--rho",
            "0.5",
            "--s-max",
            "3",
            "--samples",
            "200",
            "--format",
            "csv",
        ],
    );
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("s,re,im"));
    assert_eq!(lines.count(), 200);
    let svg = run_to(
        dir.path(),
        "r.svg",
        &["region", "--p", "4", "--rho", "0.5", "--format", "svg"],
    );
    assert!(svg.starts_with("<svg") && svg.contains("<polyline"));
}

#[test]
fn quasimode_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = run_to(
        dir.path(),
        "q.csv",
        &[
            "quasimode",
            "--p",
            "4",
            "--s",
            "1",
            "--m1",
            "2",
            "--m2",
            "0",
            "--r",
            "32,64,128,256",
        ],
    );
    assert!(csv.starts_with("r_n,ratio\n"));
    let slope: f64 = csv
        .lines()
        .last()
        .unwrap()
        .strip_prefix("# slope=")
        .unwrap()
        .parse()
        .unwrap();
    assert!((slope + 1.0).abs() < 0.1, "{slope}");
}

#[test]
fn pseudospectrum_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = run_to(
        dir.path(),
        "ps.csv",
        &[
            "pseudospectrum",
            "--p",
            "4",
            "--rho",
            "0.5",
            "--ymax",
            "40",
            "--n",
            "128",
            "--bbox",
            "-1,3,-1,1",
            "--nx",
            "5",
            "--ny",
            "3",
        ],
    );
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("re,im,sigma_min"));
    assert_eq!(lines.count(), 15);
}

#[test]
fn predict_text_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let manifold = dir.path().join("m.json");
    fs::write(
        &manifold,
        r#"{"cusps":[{"label":"c1","m_alpha":2,"m_2alpha":0}],"eigenvalues":[0.2]}"#,
    )
    .unwrap();
    let m = manifold.to_str().unwrap();
    let text = run_to(
        dir.path(),
        "p.txt",
        &["predict", "--manifold", m, "--p", "4", "--format", "text"],
    );
    assert!(text.contains("completeness: conjectural\n"));
    assert!(text.contains("vertex=1.8750000000000000e-1"));
    let svg = run_to(
        dir.path(),
        "p.svg",
        &["predict", "--manifold", m, "--p", "4", "--format", "svg"],
    );
    assert!(svg.contains("eigenvalue 0.2"));
}

#[test]
fn exit_codes() {
    assert_eq!(cuspspec(&["--help"]).status.code(), Some(0));
    assert_eq!(cuspspec(&["--version"]).status.code(), Some(0));
    assert_eq!(
        cuspspec(&["region", "--p", "0.5", "--rho", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        cuspspec(&["region", "--p", "4", "--rho", "1", "--wat"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(cuspspec(&["rho"]).status.code(), Some(1));
    assert_eq!(
        cuspspec(&[
            "quasimode",
            "--p",
            "4",
            "--s",
            "1",
            "--m1",
            "2",
            "--r",
            "64,32"
        ])
        .status
        .code(),
        Some(1)
    );

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"cusps":[{"m_alpha":2}],"eigenvalues":[-1]}"#).unwrap();
    let out = cuspspec(&["predict", "--manifold", bad.to_str().unwrap(), "--p", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("eigenvalues[0]"));

    let unwritable = dir.path().join("missing-dir").join("x.csv");
    let out = cuspspec(&[
        "region",
        "--p",
        "4",
        "--rho",
        "1",
        "--out",
        unwritable.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}
