//! Local solvability, obstruction verdicts and point searches over a list
//! of base points.
//!
//! `cargo run --release --example fiber_sweep`

use etale_brauer::report::default_sweep_points;
use etale_brauer::threefold::ledger_instance;
use etale_brauer::threefold::sweep::{fiber_sweep, FiberOutcome, SweepOptions};

fn main() {
    let b = ledger_instance();
    let report = fiber_sweep(&b, &default_sweep_points(), &SweepOptions { height: 50, ..Default::default() });
    for entry in &report.fibers {
        match &entry.outcome {
            FiberOutcome::Degenerate { reason, .. } => println!("{:<7} degenerate: {reason}", entry.point.to_string()),
            FiberOutcome::Surface { surface, everywhere_locally_solvable, conclusion, rational_points, errors, .. } => {
                println!(
                    "{:<7} {surface}\n        locally solvable {:?}, conclusion {:?}, {} points{}",
                    entry.point.to_string(),
                    everywhere_locally_solvable,
                    conclusion,
                    rational_points.len(),
                    if errors.is_empty() { String::new() } else { format!(", errors {errors:?}") }
                );
            }
        }
    }
}
