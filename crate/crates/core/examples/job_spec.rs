//! A JSON job spec built in code, printed, parsed back and run.

use antiholo::jobs::{run, Job, JobSpec, Summary};
use antiholo::verify::Suite;
use antiholo::Result;

pub fn run_example() -> Result<Summary> {
    let spec = JobSpec::new(Job::Verify {
        suite: Suite::Correspondence,
        scene: Some("cubic.json".into()),
        d: None,
        samples: 200,
        seed: 7,
        tol: 1e-8,
        max_iter: 200,
        out: None,
    });
    let text = spec.to_json()?;
    println!("{text}");
    let summary = run(&JobSpec::from_json(&text)?)?;
    for c in &summary.checks {
        println!(
            "{:<24} passed = {:<5} max residual {:.2e}",
            c.check, c.passed, c.max_residual
        );
    }
    println!("exit code {}", summary.exit_code());
    Ok(summary)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
