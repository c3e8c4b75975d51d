use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn gpe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpe")).args(args).output().unwrap()
}

fn scenario(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn out_arg(dir: &Path) -> String {
    dir.to_string_lossy().into_owned()
}

#[test]
fn run_writes_levels_and_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let o = gpe(&["run", &scenario("baker.scn"), "--out", &out_arg(dir.path())]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let levels = fs::read_to_string(dir.path().join("levels.csv")).unwrap();
    assert_eq!(levels.lines().count(), 11);
    let bounds = fs::read_to_string(dir.path().join("bounds.txt")).unwrap();
    assert!(bounds.contains("violation=false"));
    assert!(stdout(&o).contains("wrote"));
}

#[test]
fn run_billiard_writes_singular_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let o = gpe(&["run", &scenario("kite.scn"), "--out", &out_arg(dir.path())]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = fs::read_to_string(dir.path().join("singular.csv")).unwrap();
    assert!(csv.starts_with("n,cell_count,singular_length,length_lower_bound_flag\n"));
    assert_eq!(csv.lines().count(), 15);
    assert!(dir.path().join("curves.dump").exists());
}

#[test]
fn verify_prints_one_line_per_check() {
    let o = gpe(&["verify", &scenario("rotation.scn")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.lines().all(|l| l.starts_with("PASS ")));
    assert!(text.contains("grid_oracle_counts"));
}

#[test]
fn verify_failure_exit_code() {
    // a negative tolerance demands a margin the baker map does not have
    let o = gpe(&["verify", &scenario("baker.scn"), "--tol=-1"]);
    assert_eq!(o.status.code(), Some(6));
    assert!(stdout(&o).contains("FAIL entropy_le_theta"));
}

#[test]
fn describe_builtins() {
    let o = gpe(&["describe", "baker"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# baker:"));
    assert!(text.contains("gpe 1"));
    let o = gpe(&["describe", "billiard-square"]);
    assert!(stdout(&o).contains("table 1\nvertex 0 0\n"));
    let o = gpe(&["describe", "nope"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("known systems"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.scn");
    assert_eq!(gpe(&["run", &out_arg(&missing)]).status.code(), Some(1));

    let bad = dir.path().join("bad.scn");
    fs::write(&bad, "scenario 1\nsystem baker\nmax_level ten\n").unwrap();
    let o = gpe(&["run", &out_arg(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"));

    assert_eq!(gpe(&["run", &scenario("corrupted.scn")]).status.code(), Some(3));
    let o = gpe(&["run", &scenario("baker-capped.scn"), "--out", &out_arg(dir.path())]);
    assert_eq!(o.status.code(), Some(4));
    // levels completed before the cap are kept
    let partial = fs::read_to_string(dir.path().join("levels.csv")).unwrap();
    assert_eq!(partial.lines().count(), 9);
}

#[test]
fn cap_flags_override_the_scenario() {
    let dir = tempfile::tempdir().unwrap();
    let out = out_arg(dir.path());
    let o = gpe(&["run", &scenario("baker.scn"), "--out", &out, "--cap-cells", "100"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("cell cap 100"));
    let o = gpe(&["run", &scenario("baker.scn"), "--out", &out, "--cap-bits", "3"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("bit-length cap 3"));
    let o = gpe(&[
        "run",
        &scenario("baker-capped.scn"),
        "--out",
        &out,
        "--cap-cells",
        "5000",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let read = |d: &Path| -> Vec<(PathBuf, Vec<u8>)> {
        let mut v: Vec<_> = fs::read_dir(d)
            .unwrap()
            .flatten()
            .map(|e| (PathBuf::from(e.file_name()), fs::read(e.path()).unwrap()))
            .collect();
        v.sort();
        v
    };
    for name in ["shear.scn", "square.scn"] {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        for d in [&a, &b] {
            let o = gpe(&["run", &scenario(name), "--out", &out_arg(d.path()), "--seed", "7"]);
            assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        }
        assert_eq!(read(a.path()), read(b.path()), "{name}");
    }
}

#[test]
fn bad_arguments_are_rejected() {
    assert_eq!(gpe(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        gpe(&["run", &scenario("baker.scn"), "--cap-cells", "many"])
            .status
            .code(),
        Some(2)
    );
}
