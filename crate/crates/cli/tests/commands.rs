use std::path::PathBuf;
use std::process::{Command, Output};

fn mct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mct"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mct-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn synth_prints_resources() {
    let o = mct(&["synth", "--strategy", "binary-tree", "--n", "7"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("toffoli_count=6"));
    assert!(s.contains("toffoli_depth=3"));
    assert!(s.contains("ancilla_count=5"));
}

#[test]
fn invalid_parameters_exit_2() {
    let o = mct(&["synth", "--strategy", "tradeoff", "--n", "6", "--m1", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = mct(&["synth", "--strategy", "nope", "--n", "6"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_round_trip_and_tamper() {
    let p = scratch("k1.mct");
    let ps = p.to_str().unwrap();
    let o = mct(&[
        "synth",
        "--strategy",
        "khattar-1anc",
        "--n",
        "5",
        "--out",
        ps,
    ]);
    assert!(o.status.success());
    let o = mct(&["verify", "--circuit", ps]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("verdict=pass mode=exhaustive cases=64"));

    let o = mct(&[
        "verify",
        "--circuit",
        ps,
        "--mode",
        "sampled",
        "--count",
        "50",
    ]);
    assert!(o.status.success());

    // drop the final uncompute gate
    let text = std::fs::read_to_string(&p).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    lines.pop();
    let bad = scratch("k1-bad.mct");
    std::fs::write(&bad, lines.join("\n") + "\n").unwrap();
    let o = mct(&["verify", "--circuit", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("counterexample"));
}

#[test]
fn verify_rejects_bad_spec() {
    let p = scratch("bt.mct");
    let ps = p.to_str().unwrap();
    assert!(mct(&[
        "synth",
        "--strategy",
        "binary-tree",
        "--n",
        "4",
        "--out",
        ps
    ])
    .status
    .success());
    let o = mct(&["verify", "--circuit", ps, "--spec", "n=4,target=99"]);
    assert_eq!(o.status.code(), Some(2));
    let o = mct(&["verify", "--circuit", "/nonexistent/file.mct"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn lower_reports_t_accounting() {
    let o = mct(&["lower", "--strategy", "binary-tree", "--n", "7"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("t_count=24"));
    assert!(s.contains("t_depth=3"));
}

#[test]
fn sweep_csv_shape() {
    let o = mct(&[
        "sweep",
        "--strategies",
        "binary-tree,khattar-1anc",
        "--n",
        "4..6",
    ]);
    assert!(o.status.success());
    let s = stdout(&o);
    let mut lines = s.lines();
    assert!(lines.next().unwrap().starts_with("# verify="));
    let header = lines.next().unwrap();
    let cols = header.split(',').count();
    let rows: Vec<&str> = lines.clone().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 6);
    assert_eq!(lines.filter(|l| l.starts_with("# c strategy=")).count(), 2);
    assert!(rows.iter().all(|r| r.split(',').count() == cols));
    assert!(rows.iter().all(|r| r.contains(",pass")));
}

#[test]
fn audit_and_reconcile() {
    let o = mct(&[
        "audit",
        "--n-max",
        "9",
        "--strategies",
        "binary-tree,khattar-1anc",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("# violations=0"));
    let o = mct(&[
        "reconcile",
        "--strategy",
        "tradeoff",
        "--n",
        "10..12",
        "--m1",
        "3",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("tradeoff,11,3,2,first,10,10,0"));
}
