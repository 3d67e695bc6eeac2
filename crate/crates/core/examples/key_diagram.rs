//! The two-row diagram of lattices, its 2-extension classes and the
//! checks on both rows.
//!
//! `cargo run --release --example key_diagram`

use etale_brauer::cohomology::{key_diagram, verify_key_diagram};

fn main() -> etale_brauer::Result<()> {
    let d = key_diagram();
    let report = verify_key_diagram(&d)?;
    for c in &report.checks {
        println!("{} {:<32} {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
    }
    if let (Some(top), Some(bottom)) = (&report.xi_top, &report.xi_bottom) {
        println!("xi top    in {}: {:?}", top.h2_z, top.xi);
        println!("xi bottom in {}: {:?}", bottom.h2_z, bottom.xi);
    }
    println!("all checks pass: {}", report.all_passed);
    Ok(())
}
