use std::path::Path;
use std::process::Command;

fn pca(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pca"))
        .current_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden"))
        .args(args)
        .output()
        .expect("run pca");
    (
        out.status.code().expect("exit code"),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

#[test]
fn k_axiom_batch() {
    let (status, out) = pca(&["check", "k-axiom", "--model", "k2", "--samples", "100", "--seed", "1"]);
    assert_eq!(status, 0, "{out}");
    assert!(out.contains("cases         100"), "{out}");
}

#[test]
fn s_axiom_session() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pca"))
        .arg("repl")
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .expect("spawn");
    use std::io::Write;
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"check s-axiom --samples 50 --seed 42\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn oracle_eval_batch() {
    let prog = "\\t. IFZ (PRED (LEN t)) (\\u. ASK (HEAD t)) (\\u. RET (SUCC (NTH1 t))) #0";
    let (status, out) = pca(&[
        "eval",
        "--model",
        "oracle",
        "--oracle-file",
        "sq.or",
        "--prog",
        prog,
        "--point",
        "3",
        "--trace",
    ]);
    assert_eq!(status, 0, "{out}");
    assert_eq!(out, "point 3\nstep 0: ask 3 -> 9\nresult 10\n");
    let (status, out) = pca(&[
        "eval",
        "--model",
        "oracle",
        "--oracle-file",
        "sq.or",
        "--prog",
        prog,
        "--point",
        "5",
    ]);
    assert_eq!((status, out.as_str()), (0, "undefined\n"));
    let (status, _) = pca(&[
        "eval",
        "--fuel",
        "10",
        "--model",
        "oracle",
        "--oracle-file",
        "sq.or",
        "--prog",
        prog,
        "--point",
        "3",
    ]);
    assert_eq!(status, 2);
}

#[test]
fn usage_errors() {
    assert_eq!(pca(&["--frobnicate", "check", "coding"]).0, 3);
    assert_eq!(pca(&["check", "no-such-suite"]).0, 3);
    assert_eq!(pca(&["eval", "--expr", "missing", "--point", "0"]).0, 3);
    assert_eq!(
        pca(&[
            "eval",
            "--model",
            "oracle",
            "--oracle-file",
            "absent.or",
            "--prog",
            "K",
            "--point",
            "0"
        ])
        .0,
        3
    );
    assert_eq!(pca(&["eval", "--prog", "(K", "--point", "0"]).0, 3);
}

#[test]
fn script_status_is_the_worst_line() {
    let dir = std::env::temp_dir().join(format!("pca-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let script = dir.join("s.pca");
    std::fs::write(&script, "def a @prog SUCC\neval missing 0\neval a 1\n").unwrap();
    let (status, out) = pca(&["run", "--script", script.to_str().unwrap()]);
    assert_eq!(status, 3);
    assert!(
        out.contains("error: unknown name `missing`\nstatus 3\n> eval a 1\nresult 2\n"),
        "{out}"
    );
}

#[test]
fn identical_runs_are_byte_identical() {
    let a = pca(&["check", "adjunction", "--samples", "10", "--seed", "5"]);
    let b = pca(&["check", "adjunction", "--samples", "10", "--seed", "5", "--sequential"]);
    assert_eq!(a, b);
}
