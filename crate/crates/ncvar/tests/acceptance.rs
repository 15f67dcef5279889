//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (run with `cargo test --test acceptance -- --nocapture` to see them
//! on success).

use ncvar::verify::{self, Check};

const SEED: u64 = 17;

fn report(criterion: &str, checks: &[Check]) {
    let passed = checks.iter().all(|c| c.passed);
    let status = if passed { "PASS" } else { "FAIL" };
    println!("[{status}] acceptance {criterion}: {} checks", checks.len());
    for c in checks {
        if !c.passed {
            println!(
                "       failed: {} observed={:.9e} expected={}",
                c.name, c.observed, c.expected
            );
        }
    }
    assert!(passed, "acceptance {criterion} failed");
}

#[test]
fn criterion_01_closed_form_fock_pipeline() {
    report("1 (closed forms, Fock pipeline)", &verify::criterion_1().unwrap());
}

#[test]
fn criterion_02_gaussian_cross_pipeline() {
    report("2 (Gaussian cross-pipeline)", &verify::criterion_2().unwrap());
}

#[test]
fn criterion_03_beam_splitter_equivalences() {
    report("3 (beam-splitter equivalences)", &verify::criterion_3().unwrap());
}

#[test]
fn criterion_04_randomized_property_suites() {
    report("4 (randomized property suites)", &verify::criterion_4(SEED).unwrap());
}

#[test]
fn criterion_05_monotonicity_corpus() {
    report("5 (channel monotonicity corpus)", &verify::criterion_5(SEED).unwrap());
}

#[test]
fn criterion_06_convex_roof() {
    report("6 (convex roof quality)", &verify::criterion_6(SEED).unwrap());
}

#[test]
fn criterion_07_phase_suite() {
    report("7 (phase estimation suite)", &verify::criterion_7(SEED).unwrap());
}

#[test]
fn criterion_08_heisenberg_sweep() {
    report("8 (Heisenberg scaling sweep)", &verify::criterion_8(SEED).unwrap());
}

#[test]
fn criterion_09_crb_monte_carlo() {
    report("9 (Cramér–Rao Monte Carlo)", &verify::criterion_9().unwrap());
}

#[test]
fn criterion_10_figure_sweeps() {
    report("10 (figure sweeps)", &verify::criterion_10().unwrap());
}
