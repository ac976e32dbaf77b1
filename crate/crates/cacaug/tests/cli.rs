//! End-to-end checks of the command-line surface: formats, exit codes, and
//! byte-determinism of the default outputs.

use std::path::Path;
use std::process::{Command, Output};

fn cacaug(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cacaug"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn gen_validate_solve_verify_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();

    let gen = cacaug(
        &["gen", "--family", "fig3", "--m", "6", "--out", "inst.json"],
        d,
    );
    assert!(gen.status.success(), "{}", String::from_utf8_lossy(&gen.stderr));

    let validate = cacaug(&["validate", "inst.json"], d);
    assert!(validate.status.success());
    assert!(stdout(&validate).contains("24 vertices"));

    let solve = cacaug(
        &["solve", "--algo", "matching", "--out", "sol.json", "inst.json"],
        d,
    );
    assert!(solve.status.success(), "{}", String::from_utf8_lossy(&solve.stderr));

    let verify = cacaug(&["verify", "inst.json", "sol.json"], d);
    assert!(verify.status.success(), "{}", String::from_utf8_lossy(&verify.stderr));
    assert!(stdout(&verify).contains("ok"));
}

#[test]
fn outputs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let a = cacaug(&["gen", "--family", "random", "--seed", "9"], d);
    let b = cacaug(&["gen", "--family", "random", "--seed", "9"], d);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    std::fs::write(d.join("i.json"), stdout(&a)).unwrap();
    let s1 = cacaug(&["solve", "--algo", "combined", "i.json"], d);
    let s2 = cacaug(&["solve", "--algo", "combined", "i.json"], d);
    assert!(s1.status.success(), "{}", String::from_utf8_lossy(&s1.stderr));
    assert_eq!(s1.stdout, s2.stdout);
}

#[test]
fn tampered_solution_exits_5_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(cacaug(
        &["gen", "--family", "fig3", "--m", "4", "--out", "inst.json"],
        d
    )
    .status
    .success());
    assert!(cacaug(
        &["solve", "--algo", "matching", "--out", "sol.json", "inst.json"],
        d
    )
    .status
    .success());

    // Drop a link from the stored solution.
    let text = std::fs::read_to_string(d.join("sol.json")).unwrap();
    let mut sol: serde_json::Value = serde_json::from_str(&text).unwrap();
    let ids = sol["link_ids"].as_array_mut().unwrap();
    ids.pop();
    let n = ids.len();
    sol["size"] = serde_json::json!(n);
    std::fs::write(d.join("sol.json"), serde_json::to_string(&sol).unwrap()).unwrap();

    let verify = cacaug(&["verify", "inst.json", "sol.json"], d);
    assert_eq!(verify.status.code(), Some(5));
    let err = String::from_utf8_lossy(&verify.stderr);
    assert!(err.contains("witness") || err.contains("match"), "{err}");
}

#[test]
fn failure_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();

    std::fs::write(d.join("bad.json"), "{ not json").unwrap();
    assert_eq!(cacaug(&["validate", "bad.json"], d).status.code(), Some(3));

    std::fs::write(
        d.join("degenerate.json"),
        r#"{ "n": 2, "cycles": [[0]], "links": [] }"#,
    )
    .unwrap();
    assert_eq!(
        cacaug(&["validate", "degenerate.json"], d).status.code(),
        Some(3)
    );

    // Feasible cactus, infeasible augmentation.
    std::fs::write(
        d.join("infeasible.json"),
        r#"{ "n": 3, "cycles": [[0, 1, 2]], "links": [[0, 1]] }"#,
    )
    .unwrap();
    assert_eq!(
        cacaug(&["solve", "--algo", "matching", "infeasible.json"], d)
            .status
            .code(),
        Some(4)
    );

    // Exact without budget.
    std::fs::write(
        d.join("tiny.json"),
        r#"{ "n": 2, "cycles": [[0, 1]], "links": [[0, 1]] }"#,
    )
    .unwrap();
    assert_eq!(
        cacaug(&["solve", "--algo", "exact", "tiny.json"], d)
            .status
            .code(),
        Some(6)
    );

    // Missing file.
    assert_eq!(cacaug(&["validate", "nope.json"], d).status.code(), Some(1));
}

#[test]
fn analyze_reports_constants() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = cacaug(&["analyze", "--rho"], d);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let alpha = report["alpha_star"].as_f64().unwrap();
    let rho = report["rho"].as_f64().unwrap();
    assert!((0.4195..0.4210).contains(&alpha));
    assert!((1.2898..1.2900).contains(&rho));

    // Coarse grid keeps the CLI fast; the full-resolution sweep runs in the
    // acceptance suite.
    let out = cacaug(
        &["analyze", "--check-b", "0.452", "--grid", "0.05", "--refine", "1"],
        d,
    );
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report["nonnegative"].as_bool().unwrap());
    assert!(report["min_value"].as_f64().unwrap() >= -1e-9);
}

#[test]
fn bench_emits_csv() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::create_dir(d.join("batch")).unwrap();
    for (i, seed) in [3u64, 5].iter().enumerate() {
        let out = cacaug(
            &[
                "gen",
                "--family",
                "random",
                "--seed",
                &seed.to_string(),
                "--out",
                &format!("batch/i{i}.json"),
            ],
            d,
        );
        assert!(out.status.success());
    }
    let out = cacaug(
        &[
            "bench",
            "--dir",
            "batch",
            "--algos",
            "matching,combined",
            "--budget",
            "14",
        ],
        d,
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = stdout(&out);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "instance,algo,size,opt,ratio,feasible,millis"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.contains(",true,")));
    // Ordered by input path, matching first within each instance.
    assert!(rows[0].starts_with("i0.json,matching"));
    assert!(rows[1].starts_with("i0.json,combined"));
}
