//! Acceptance criteria, one PASS/FAIL line each. Runs without the test harness.

use std::process::ExitCode;
use std::time::Instant;

use nilgcs::verify::{self, Check};

fn summarize(checks: &[Check]) -> (bool, String) {
    let failed: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| format!("{} ({})", c.name, c.detail)).collect();
    let detail = match (failed.is_empty(), checks) {
        (true, [only]) => only.detail.clone(),
        (true, _) => format!("{} checks", checks.len()),
        (false, _) => format!("{} checks; failing: {}", checks.len(), failed.join(", ")),
    };
    (failed.is_empty() && !checks.is_empty(), detail)
}

fn run(f: fn(&mut Vec<Check>)) -> (bool, String) {
    let mut checks = Vec::new();
    f(&mut checks);
    summarize(&checks)
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Box<dyn Fn() -> (bool, String)>)> = vec![
        ("type-one structure on h3 ⊕ ℝ", Box::new(|| run(verify::heisenberg_type_one))),
        ("obstructions on the 4-dim filiform algebra", Box::new(|| run(verify::filiform_obstructions))),
        ("4-dim sweep: semi-abelian only on ℝ⁴ and h3 ⊕ ℝ", Box::new(|| run(verify::four_dimensional_sweep))),
        ("type-two structure on h5 ⊕ ℝ", Box::new(|| run(verify::type_two_heisenberg))),
        ("symplectic decomposition on 0,0,0,0,12,14+25", Box::new(|| run(verify::symplectic_decomposition))),
        ("non-abelian complex structure and Poisson bivector on 0,0,0,0,12,13", Box::new(|| run(verify::nilpotent_complex))),
        ("three-step algebra: ∂̄ frame, brackets, Poisson bivector", Box::new(|| run(verify::three_step_rebased))),
        ("property sweep over the catalog", Box::new(|| run(verify::property_sweep))),
        ("brute-force oracle agrees with the complement linear solve", Box::new(|| run(verify::oracle_agreement))),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (ok, detail) = f();
        all &= ok;
        println!("{} criterion {}: {name} [{:.2?}]", if ok { "PASS" } else { "FAIL" }, i + 1, t.elapsed());
        println!("    {detail}");
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
