use geometry_lab::{run_checks, Cp1, Model, NumericConfig, Torus};

fn run(model: &dyn Model) {
    let out = run_checks(model, &NumericConfig::default(), &[]).unwrap();
    let mut failed = Vec::new();
    for o in &out {
        println!("{:<28} {:<5} {:>9.1} ms  {}", o.id, if o.passed { "pass" } else { "FAIL" }, o.wall_time_ms, o.residue);
        if !o.passed {
            failed.push(o.id.clone());
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}

#[test]
fn cp1_suite_passes() {
    run(&Cp1);
}

#[test]
fn torus_suite_passes() {
    run(&Torus);
}
