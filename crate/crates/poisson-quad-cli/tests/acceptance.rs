//! End-to-end acceptance gate for the worked examples. Each numbered
//! check prints one line; run with `--nocapture` to see them on success.
//! Checks 4 and up live with the library crate.

use std::process::Command;
use std::time::{Duration, Instant};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_poisson-quad"))
}

fn run_example(name: &str) -> Result<(f64, Duration), String> {
    let start = Instant::now();
    let out = bin()
        .args(["reproduce", name])
        .output()
        .map_err(|e| format!("cannot launch binary: {e}"))?;
    let elapsed = start.elapsed();
    if !out.status.success() {
        return Err(format!(
            "exit status {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    let stdout = String::from_utf8_lossy(&out.stdout);
    let norm_line = stdout
        .lines()
        .rev()
        .find(|l| l.starts_with("error_norm="))
        .ok_or("no error_norm line in output")?;
    let norm: f64 = norm_line
        .trim_start_matches("error_norm=")
        .parse()
        .map_err(|e| format!("cannot parse {norm_line:?}: {e}"))?;
    Ok((norm, elapsed))
}

fn criterion_1() -> Result<String, String> {
    let (norm, elapsed) = run_example("fig1")?;
    if !(5e-4..=1e-2).contains(&norm) {
        return Err(format!("error norm {norm:.3e} outside [5e-4, 1e-2]"));
    }
    if elapsed > Duration::from_secs(5) {
        return Err(format!("took {elapsed:?}, cap 5 s"));
    }
    Ok(format!("z-sweep error norm {norm:.3e} in {elapsed:?}"))
}

fn criterion_2() -> Result<String, String> {
    let (norm, elapsed) = run_example("fig2")?;
    if norm > 0.01 {
        return Err(format!("error norm {norm:.3e} above 0.01"));
    }
    if elapsed > Duration::from_secs(5) {
        return Err(format!("took {elapsed:?}, cap 5 s"));
    }
    Ok(format!("Bessel-image error norm {norm:.3e} in {elapsed:?}"))
}

fn criterion_3() -> Result<String, String> {
    let (norm, elapsed) = run_example("fig3")?;
    if norm > 5e-4 {
        return Err(format!("error norm {norm:.3e} above 5e-4"));
    }
    if elapsed > Duration::from_secs(10) {
        return Err(format!("took {elapsed:?}, cap 10 s"));
    }
    Ok(format!(
        "weighted-polynomial error norm {norm:.3e} in {elapsed:?}"
    ))
}

type Check = fn() -> Result<String, String>;

#[test]
fn acceptance_criteria() {
    let checks: [(usize, Check); 3] = [(1, criterion_1), (2, criterion_2), (3, criterion_3)];
    let mut failed = Vec::new();
    for (id, check) in checks {
        match check() {
            Ok(detail) => println!("criterion {id}: PASS ({detail})"),
            Err(detail) => {
                println!("criterion {id}: FAIL ({detail})");
                failed.push(id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
