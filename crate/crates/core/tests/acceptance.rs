//! Runs every committed config under `configs/` and prints one line per
//! acceptance criterion.

use std::path::PathBuf;
use std::time::Instant;

use mzv_core::report::Report;
use mzv_core::tasks::{run_task, RunConfig, TaskRegistry};

const CRITERIA: [(&str, &str); 12] = [
    ("01-key-identity", "key identity"),
    ("02-gap-lemmas", "gap lemmas and triangularity"),
    ("03-power-sums", "power-sum engine"),
    ("04-carlitz-hayes", "Carlitz-Hayes routes and κ"),
    ("05-zagier", "Zagier-type ratio"),
    ("06-eulerian", "Eulerian family and α_{n,1}"),
    ("07-depth2", "depth-two identity"),
    ("08-conjecture33", "closed forms, mutations, crosscheck"),
    ("09-goss-vanishing", "Goss vanishing"),
    ("10-skew-inverse", "skew inverse"),
    ("11-harmonic", "harmonic termwise identity"),
    ("12-bench", "power-sum bench"),
];

fn config(name: &str) -> RunConfig {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(format!("{name}.json"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    RunConfig::from_json(&text).unwrap()
}

fn bench_ok(r: &Report) -> (bool, String) {
    let t = r.timings.as_ref().expect("bench timings");
    let d = r.detail.as_ref().expect("bench detail");
    let rec = t["recursion_ms"].as_u64().unwrap();
    let brute = t["bruteforce_ms"].as_u64().unwrap();
    let agree = d["agree"].as_bool().unwrap();
    let ok = r.verdict.is_none() && agree && rec < 10_000 && brute > rec;
    (ok, format!("recursion {rec} ms, enumeration {brute} ms, agree {agree}"))
}

#[test]
fn acceptance() {
    let registry = TaskRegistry::default();
    let mut failed = Vec::new();
    for (i, (file, what)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let (ok, note) = match run_task(&registry, &config(file)) {
            Err(e) => (false, format!("error: {e}")),
            Ok(r) if r.task == "bench" => bench_ok(&r),
            Ok(r) => {
                let ok = r.passed() == Some(true);
                let note = if ok {
                    r.ring.to_string()
                } else {
                    format!("witness {}", serde_json::to_string(&r.witness).unwrap())
                };
                (ok, note)
            }
        };
        println!(
            "criterion {:>2} {:<4} {:<38} {:>7.1}s  {}",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            what,
            start.elapsed().as_secs_f64(),
            note
        );
        if !ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
