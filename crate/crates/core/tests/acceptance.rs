//! One PASS/FAIL line per acceptance criterion. Every criterion is exact:
//! a criterion passes when its suite records no failure and no
//! inconclusive case.

use std::path::Path;
use std::process::Command;

use pcalab::suites::{run_suite, SuiteConfig};
use pcalab::CheckReport;

type Criterion = (&'static str, Box<dyn Fn() -> CheckReport>);

const FUEL: u64 = 100_000;
const FCLAIM_FUEL: u64 = 1_000_000;

fn cfg(model: &str) -> SuiteConfig {
    SuiteConfig {
        fuel: FUEL,
        model: model.into(),
        ..SuiteConfig::default()
    }
}

fn suite(name: &str, c: &SuiteConfig) -> CheckReport {
    run_suite(name, c).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn all(reports: Vec<CheckReport>) -> CheckReport {
    let mut it = reports.into_iter();
    let mut first = it.next().expect("at least one report");
    for r in it {
        first.merge(r);
    }
    first
}

fn golden() -> CheckReport {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut report = CheckReport::new("CLI golden sessions");
    for name in ["eval_trace", "check", "tree"] {
        assert!(dir.join(format!("{name}.pca")).exists(), "script {name}");
        let want = std::fs::read_to_string(dir.join(format!("{name}.out"))).expect("golden output");
        let out = Command::new(env!("CARGO_BIN_EXE_pca"))
            .current_dir(&dir)
            .args(["run", "--script", &format!("{name}.pca")])
            .output()
            .expect("run pca");
        let got = String::from_utf8_lossy(&out.stdout);
        report.record(if got == want {
            pcalab::Verdict::Pass
        } else {
            pcalab::Verdict::Fail(format!("{name}: output differs:\n{got}"))
        });
    }
    report
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("coding soundness", Box::new(|| suite("coding", &cfg("k2")))),
        (
            "combinator algebra axioms and kit",
            Box::new(|| all(vec![suite("axioms", &cfg("code")), suite("kit", &cfg("code"))])),
        ),
        (
            "K2 and K2p axioms",
            Box::new(|| all(vec![suite("axioms", &cfg("k2")), suite("axioms", &cfg("k2p"))])),
        ),
        ("compiled strategies", Box::new(|| suite("strategy", &cfg("k2")))),
        ("tree round trips", Box::new(|| suite("roundtrip", &cfg("k2")))),
        ("rho realizer", Box::new(|| suite("rho", &cfg("k2")))),
        ("joins", Box::new(|| suite("join", &cfg("k2")))),
        ("oracle application", Box::new(|| suite("oracle", &cfg("k2")))),
        ("counterexample B", Box::new(|| suite("b", &cfg("k2orig")))),
        ("adjunction witness", Box::new(|| suite("adjunction", &cfg("k2p")))),
        (
            "F realizer claim",
            Box::new(|| {
                suite(
                    "fclaim",
                    &SuiteConfig {
                        fuel: FCLAIM_FUEL,
                        ..cfg("k2")
                    },
                )
            }),
        ),
        ("CLI determinism", Box::new(golden)),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = std::time::Instant::now();
        let r = run();
        let status = if r.passed() { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2}: {status} {name} (cases {}, failures {}, inconclusive {}, {:.1}s)",
            i + 1,
            r.cases,
            r.failures.len(),
            r.inconclusive,
            started.elapsed().as_secs_f64()
        );
        if !r.passed() {
            println!("{r}");
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
