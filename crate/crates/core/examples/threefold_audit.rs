//! The conic bundle over P^1 x P^1: smoothness of the degeneracy curve,
//! the branch locus, and a few fibers.
//!
//! `cargo run --release --example threefold_audit`

use etale_brauer::threefold::branch::branch_locus;
use etale_brauer::threefold::smooth::{degeneracy_smoothness_audit, verify_smoothness_certificate};
use etale_brauer::threefold::{ledger_instance, Fiber, ProjPoint};

fn main() -> etale_brauer::Result<()> {
    let b = ledger_instance();
    println!("a = {}, P_inf = {}, P_0 = {}", b.a(), b.p_inf(), b.p_0());
    let cert = degeneracy_smoothness_audit(&b)?;
    verify_smoothness_certificate(&b, &cert)?;
    for c in &cert.charts {
        println!("  chart {:<8} {:?}: resultant {}", c.chart.name(), c.elimination, c.resultant);
    }
    let locus = branch_locus(&b);
    println!(
        "branch form of degree {}: {} distinct roots, {} real, rational {:?}",
        locus.form_degree,
        locus.distinct_roots,
        locus.distinct_real_roots,
        locus.rational_roots.iter().map(|r| r.point.to_string()).collect::<Vec<_>>()
    );
    for (u, v) in [(1, 0), (0, 1), (1, 1), (2, 3)] {
        let t = ProjPoint::new(u, v)?;
        match b.fiber(&t) {
            Fiber::Surface { surface } => println!("  fiber over {t}: {surface}"),
            Fiber::Degenerate { quartic, reason } => println!("  fiber over {t}: degenerate {quartic} ({reason})"),
        }
    }
    Ok(())
}
