use std::process::Command;

use opcal::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("opcal").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn enumerate_three() {
    let (code, out, _) = call(&["enumerate", "--k", "3"]);
    assert_eq!(code, 0);
    let records: Vec<serde_json::Value> = serde_json::from_str(&out).unwrap();
    assert_eq!(records.len(), 12);
    assert_eq!(records[0]["blocks"], serde_json::json!([[1], [2, 3]]));
    assert_eq!(records[0]["embed"], serde_json::json!([0, -1, -1]));
}

#[test]
fn enumerate_cap() {
    assert_eq!(call(&["enumerate", "--k", "11"]).0, 2);
    assert_eq!(call(&["enumerate", "--k", "1"]).0, 2);
}

#[test]
fn eval_losses() {
    assert_eq!(call(&["eval-loss", "--loss", "ww", "--input", "-2,0,-1"]).1, "5,0,2\n");
    assert_eq!(call(&["eval-loss", "--loss", "op", "--input", "2|3|1"]).1, "5,0,2\n");
    assert_eq!(call(&["eval-loss", "--loss", "cs", "--input", "1,0,0"]).1, "0,2,2\n");
    assert_eq!(call(&["eval-loss", "--loss", "ww", "--input", "1/2,0,0"]).1, "1,5/2,5/2\n");
    let (_, out, _) = call(&["eval-loss", "--loss", "ww", "--input", "1/3,0,0", "--decimal", "2"]);
    assert_eq!(out, "1.33,2.33,2.33\n");
    assert_eq!(call(&["eval-loss", "--loss", "op", "--input", "1|1"]).0, 2);
    assert_eq!(call(&["eval-loss", "--loss", "hinge", "--input", "1,0"]).0, 2);
}

#[test]
fn bayes_at_uniform() {
    let (code, out, _) = call(&["bayes", "--p", "1/3,1/3,1/3"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("value: 2\n"));
    let line = out.lines().find(|l| l.starts_with("minimizers:")).unwrap();
    assert_eq!(line.split_whitespace().count() - 1, 6);
    assert!(out.contains("unique: false"));
}

#[test]
fn bayes_unique_and_dump() {
    let (code, out, err) = call(&["bayes", "--p", "1/2,1/4,1/4", "--dump-lp"]);
    assert_eq!(code, 0);
    assert_eq!(out, "value: 3/2\nminimizers: 1|2,3\nunique: true\n");
    assert!(err.starts_with("minimize "));
    assert!(err.lines().filter(|l| l.starts_with('c')).count() >= 6);
}

#[test]
fn bayes_rejects_non_simplex() {
    let (code, _, err) = call(&["bayes", "--p", "1/2,1/3"]);
    assert_eq!(code, 2);
    assert!(err.contains("sum to 5/6"));
}

#[test]
fn regions_csv_and_svg() {
    let (code, out, _) = call(&["regions", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("region,label,vx,vy"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.iter().filter(|r| r.contains("\"1|2,3\"")).count(), 4);
    assert!(rows.contains(&"1,\"1|2,3\",1/3,1/3"));
    let (code, svg, _) = call(&["regions", "--format", "svg"]);
    assert_eq!(code, 0);
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
}

#[test]
fn omega_grid_rows() {
    let (code, out, err) = call(&["omega", "--grid", "10", "--jobs", "2"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert!(lines.next().unwrap().starts_with("p2,p3,in_omega_ww,in_omega_cs,boundary"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 66);
    assert!(rows.contains(&"3/10,3/10,true,false,false,inside,false"));
    assert!(rows.contains(&"0,0,true,true,true,inside,false"));
    assert!(err.contains("points=66"));
    assert_eq!(call(&["omega", "--grid", "0"]).0, 2);
    assert_eq!(call(&["omega", "--grid", "201"]).0, 2);
}

#[test]
fn omega_is_deterministic_across_jobs() {
    let one = call(&["omega", "--grid", "12", "--jobs", "1"]).1;
    let three = call(&["omega", "--grid", "12", "--jobs", "3"]).1;
    assert_eq!(one, three);
}

#[test]
fn maxinfo_writes_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, out, _) = call(&["maxinfo", "--k", "3", "--out", d, "--quiet"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("k=3 count=12/12"));
    let csv = std::fs::read_to_string(dir.path().join("witnesses_k3.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("partition,p,margin"));
    assert_eq!(lines.count(), 12);
}

#[test]
fn maxinfo_needs_deep_for_six() {
    let (code, _, err) = call(&["maxinfo", "--k", "6"]);
    assert_eq!(code, 2);
    assert!(err.contains("--deep"));
}

#[test]
fn maxinfo_resumes_from_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let ckpt = dir.path().join("k3.ckpt");
    let c = ckpt.to_str().unwrap();
    assert_eq!(call(&["maxinfo", "--k", "3", "--out", d, "--checkpoint", c, "--quiet"]).0, 0);
    let first = std::fs::read_to_string(&ckpt).unwrap();
    assert_eq!(first.lines().count(), 12);
    let csv1 = std::fs::read_to_string(dir.path().join("witnesses_k3.csv")).unwrap();
    // Drop half the lines and corrupt one; the rerun fills them back in.
    let mut kept: Vec<String> = first.lines().take(6).map(String::from).collect();
    kept[0] = kept[0].replace('\t', "\tx");
    std::fs::write(&ckpt, kept.join("\n") + "\n").unwrap();
    let (code, _, err) = call(&["maxinfo", "--k", "3", "--out", d, "--checkpoint", c, "--quiet"]);
    assert_eq!(code, 0);
    assert!(err.contains("resuming k=3 with 5/12 done"), "{err}");
    assert!(err.contains("dropped 1"));
    let csv2 = std::fs::read_to_string(dir.path().join("witnesses_k3.csv")).unwrap();
    assert_eq!(csv1, csv2);
}

#[test]
fn verify_single_suites() {
    let (code, out, _) = call(&["verify", "--suite", "listing", "--seed", "42"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("listing"));
    assert!(out.contains("PASS seed=42"));
    assert!(out.ends_with("suites=1 failed=0 seed=42\n"));
    assert_eq!(call(&["verify", "--suite", "nope"]).0, 2);
}

#[test]
fn verify_all_quick_is_reproducible() {
    let a = call(&["verify", "--suite", "all", "--seed", "7", "--quick"]);
    assert_eq!(a.0, 0, "{}", a.1);
    assert_eq!(a.1.lines().filter(|l| l.contains(" PASS ")).count(), 12);
    let b = call(&["verify", "--suite", "all", "--seed", "7", "--quick"]);
    assert_eq!(a.1, b.1);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_opcal");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["bayes", "--p", "1/3,1/3,1/3"]), Some(0));
    assert_eq!(status(&["bayes"]), Some(2));
    assert_eq!(status(&["frobnicate"]), Some(2));
    assert_eq!(status(&["--help"]), Some(0));
    let help = Command::new(bin).arg("--help").output().unwrap();
    let text = String::from_utf8(help.stdout).unwrap();
    for cmd in ["enumerate", "eval-loss", "bayes", "regions", "omega", "maxinfo", "verify"] {
        assert!(text.contains(cmd), "{cmd} missing from help");
    }
}
