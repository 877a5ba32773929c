use std::process::Command;

use qcg_cli::config::Format;
use qcg_cli::output::read_rows;

fn qcg(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_qcg")).args(args).output().unwrap()
}

fn stdout(o: &std::process::Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_csv_and_json_agree() {
    let base = ["eval", "--kappa", "8", "--dims", "2,2", "--vector", "hwv-pair:1", "--x", "0,1;1,3"];
    let csv = qcg(&[&base[..], &["--format", "csv"]].concat());
    assert!(csv.status.success(), "{}", String::from_utf8_lossy(&csv.stderr));
    let json = qcg(&[&base[..], &["--format", "json"]].concat());
    let a = read_rows(&stdout(&csv), Format::Csv).unwrap();
    let b = read_rows(&stdout(&json), Format::Json).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.len(), 2);
    assert!(stdout(&csv).starts_with("kappa,dims,vector,x0,x_1,x_2,re,im,err_est"));
    // at kappa = 8 the two-point function is pi (x2 - x1)^(1/4)
    assert!((a[0].re - std::f64::consts::PI).abs() < 1e-10 && a[0].im.abs() < 1e-10);
    assert!((a[1].re - std::f64::consts::PI * 2f64.powf(0.25)).abs() < 1e-10);
}

#[test]
fn eval_with_anchor() {
    let o = qcg(&["eval", "--dims", "2,2", "--vector", "trivial:0", "--x", "0,1", "--x0", "-1"]);
    assert!(o.status.success());
    let rows = read_rows(&stdout(&o), Format::Csv).unwrap();
    assert_eq!(rows[0].x0, Some(-1.0));
}

#[test]
fn config_file_and_overrides() {
    let dir = std::env::temp_dir().join(format!("qcg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.cfg");
    std::fs::write(&cfg, "# two doublets\nkappa = 10\ndims = 2,2\nvector = hwv-pair:1\nx = 0,1\n").unwrap();
    let out = dir.join("out.json");
    let o = qcg(&["eval", "--config", cfg.to_str().unwrap(), "--kappa", "8", "--format", "json", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let rows = read_rows(&std::fs::read_to_string(&out).unwrap(), Format::Json).unwrap();
    assert_eq!(rows[0].kappa, 8.0);

    std::fs::write(&cfg, "kappa = 10\nnonsense = 3\n").unwrap();
    let o = qcg(&["eval", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2") && err.contains("nonsense"), "{err}");
}

#[test]
fn bad_input_exits_nonzero() {
    assert_eq!(qcg(&["eval", "--dims", "2,2", "--vector", "hwv-pair:1", "--x", "1,0"]).status.code(), Some(2));
    assert_eq!(qcg(&["eval", "--dims", "2,2", "--vector", "basis:1,0", "--x", "0,1"]).status.code(), Some(2));
    assert_eq!(qcg(&["verify", "nope"]).status.code(), Some(2));
}

#[test]
fn dump_basis_counts() {
    for (n, expect) in [(2, 1), (4, 2), (6, 5)] {
        let dims = vec!["2"; n].join(",");
        let o = qcg(&["dump-basis", "--dims", &dims]);
        assert!(o.status.success());
        assert_eq!(stdout(&o).lines().count(), expect);
    }
    let o = qcg(&["dump-basis", "--dims", "2,2,2,2", "--d", "3"]);
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn verify_reports_json() {
    let o = qcg(&["verify", "cyclic"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["criterion"] == 12));
}
