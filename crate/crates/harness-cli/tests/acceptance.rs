//! One pass/fail line per acceptance criterion. Run with `--nocapture` to see them.

use geometry_lab::{by_name, NumericConfig, NumericOutcome};
use harness_cli::oracle;
use std::time::Instant;

struct Line {
    n: usize,
    what: &'static str,
    passed: bool,
    detail: String,
    secs: f64,
}

fn numeric(model: &str, checks: &[&str]) -> Vec<NumericOutcome> {
    let m = by_name(model).expect("model");
    let filter: Vec<String> = checks.iter().map(|c| format!("{model}-{c}")).collect();
    geometry_lab::run_checks(m.as_ref(), &NumericConfig::default(), &filter).expect("numeric run")
}

fn summarize(outs: &[NumericOutcome]) -> (bool, String) {
    let passed = outs.iter().all(|o| o.passed);
    let detail = outs.iter().map(|o| format!("[{}] {}", o.id, o.residue)).collect::<Vec<_>>().join(" ");
    (passed, detail)
}

fn timed(n: usize, what: &'static str, f: impl FnOnce() -> (bool, String)) -> Line {
    let t = Instant::now();
    let (passed, detail) = f();
    Line { n, what, passed, detail, secs: t.elapsed().as_secs_f64() }
}

#[test]
fn acceptance_criteria() {
    let start = Instant::now();
    let lines = vec![
        timed(1, "symbolic checks, residue exactly 0", || {
            let outs = coefficient_engine::run_checks(&[]).expect("symbolic run");
            let bad: Vec<_> = outs.iter().filter(|o| !o.passed || o.residue != "0").map(|o| o.id.clone()).collect();
            (bad.is_empty(), format!("{} checks, failing: {:?}", outs.len(), bad))
        }),
        timed(2, "Wick/Fock on 200 pairs, normal_order vs N=12 matrix to 1e-10 on 100", || {
            let w = oracle::wick_vs_fock(0);
            let n = oracle::normal_order_vs_matrix(0, 1e-10);
            (w.passed && n.passed, format!("{}; {}", w.residue, n.residue))
        }),
        timed(3, "CP1 density p+1 (1e-10), fit (1,1) (1e-6), Riemann-Roch exact", || {
            summarize(&numeric("cp1", &["density", "density-fit", "riemann-roch"]))
        }),
        timed(4, "CP1 height Toeplitz spectrum, norm p/(p+2), C/p fit (rel 1e-3)", || {
            summarize(&numeric("cp1", &["height-toeplitz", "height-norm-fit"]))
        }),
        timed(5, "torus density p, b1f within 1%, b0fg 1e-6, b1fg within 2%", || {
            summarize(&numeric("torus", &["density", "b1f", "product-diag"]))
        }),
        timed(6, "commutator defect slope in [-1.2,-0.8], two pairs per model", || {
            let mut outs = numeric("cp1", &["commutator"]);
            outs.extend(numeric("torus", &["commutator"]));
            summarize(&outs)
        }),
        timed(7, "Berezin transform first-order coefficient and residual exponent", || {
            let mut outs = numeric("cp1", &["berezin"]);
            outs.extend(numeric("torus", &["berezin"]));
            summarize(&outs)
        }),
    ];
    for l in &lines {
        println!(
            "criterion {} {:4} {:7.2}s  {}  {}",
            l.n,
            if l.passed { "PASS" } else { "FAIL" },
            l.secs,
            l.what,
            l.detail
        );
    }
    let total = start.elapsed().as_secs_f64();
    let budget = total < 15.0 * 60.0;
    println!("runtime     {:4} {total:7.2}s  full suite under 15 min", if budget { "PASS" } else { "FAIL" });
    let failed: Vec<usize> = lines.iter().filter(|l| !l.passed).map(|l| l.n).collect();
    assert!(failed.is_empty() && budget, "failing criteria: {failed:?}");
}
