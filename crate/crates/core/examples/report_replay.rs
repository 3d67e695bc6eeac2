//! Build a JSON report, replay it, then tamper with one leaf.
//!
//! `cargo run --release --example report_replay`

use etale_brauer::arith::Place;
use etale_brauer::report::{run, verify_report, Config, Request};

fn main() -> etale_brauer::Result<()> {
    let request = Request::Iskovskikh { place: Some(Place::prime(3)?) };
    let report = run(&request, &Config::default_for(&request))?;
    println!("{}", report.human());
    let mut v = report.to_value();
    let outcome = verify_report(&v)?;
    println!("replay: {} steps, digest {}", outcome.steps, outcome.digest);
    v["verdict"]["holds"] = (!report.verdict.holds).into();
    match verify_report(&v) {
        Ok(_) => println!("tampered report accepted"),
        Err(e) => println!("tampered report rejected: {e}"),
    }
    Ok(())
}
