use std::path::PathBuf;
use std::process::Command;

fn mzv() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mzv"))
}

fn configs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn zeta_of_empty_composition_is_one() {
    let out =
        mzv().args(["--ring", "genus0-q2", "--task", "zeta", "--param", "s=[]", "--prec", "10"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["value"]["v_start"], 0);
    assert_eq!(r["value"]["coeffs"], serde_json::json!([[1]]));
    assert_eq!(r["value"]["prec"], 10);
    assert!(r.get("verdict").is_none());
}

#[test]
fn reruns_are_byte_identical() {
    let cfg = configs().join("08-conjecture33.json");
    let a = scratch("rerun-a.json");
    let b = scratch("rerun-b.json");
    for (path, jobs) in [(&a, "1"), (&b, "3")] {
        let st = mzv()
            .arg("--config")
            .arg(&cfg)
            .args(["--jobs", jobs, "--no-elapsed"])
            .arg("--out")
            .arg(path)
            .status()
            .unwrap();
        assert_eq!(st.code(), Some(0));
    }
    let ra: serde_json::Value = serde_json::from_slice(&std::fs::read(&a).unwrap()).unwrap();
    let rb: serde_json::Value = serde_json::from_slice(&std::fs::read(&b).unwrap()).unwrap();
    let strip = |mut v: serde_json::Value| {
        v.as_object_mut().unwrap().remove("worker_count");
        v
    };
    assert_eq!(strip(ra), strip(rb));
    let st =
        mzv().arg("--config").arg(&cfg).args(["--jobs", "1", "--no-elapsed"]).arg("--out").arg(&b).status().unwrap();
    assert_eq!(st.code(), Some(0));
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn domain_and_config_errors_exit_2() {
    let out = mzv()
        .args(["--ring", "genus0-q2", "--task", "eulerian", "--param", "n=0", "--param", "k=1", "--prec", "10"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("domain error"));
    let out = mzv().args(["--ring", "genus0-q2", "--task", "no-such-task"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = mzv().args(["--ring", "genus0-q7", "--task", "zeta"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = mzv().args(["--task", "zeta"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn failing_verdict_exits_1_with_witness() {
    let cfg = scratch("bad-shtuka.json");
    std::fs::write(
        &cfg,
        r#"{ "ring": "LRT-i", "task": "zagier", "params": { "k": 2, "prec": 20 },
             "shtuka": { "source": "elliptic_divisor", "alpha": [0, 1], "beta": { "a": [1], "b": [1] } } }"#,
    )
    .unwrap();
    let out = mzv().arg("--config").arg(&cfg).output().unwrap();
    let r: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(1), "{r}");
    assert_eq!(r["verdict"], "fail");
    assert!(r.get("witness").is_some());
}

#[test]
fn flags_override_the_config_file() {
    let cfg = configs().join("09-goss-vanishing.json");
    let out = mzv()
        .arg("--config")
        .arg(&cfg)
        .args(["--ring", "genus0-q3", "--param", "i_max=4", "--param", "r_max=1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["ring"], "genus0-q3");
    assert_eq!(r["params"]["i_max"], 4);
}
