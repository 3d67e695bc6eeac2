//! Certified local solvability of Chatelet surfaces at their bad places.
//!
//! `cargo run --example local_solvability`

use etale_brauer::arith::rational::int;
use etale_brauer::arith::Poly;
use etale_brauer::chatelet::{is_everywhere_locally_solvable, verify_local_verdict, Certificate, ChateletSurface};

fn main() -> etale_brauer::Result<()> {
    let surfaces = [
        ChateletSurface::iskovskikh(),
        ChateletSurface::new(int(-1), Poly::from_ints(&[-1, 0, 0, 0, -1]))?,
        ChateletSurface::new(int(3), Poly::from_ints(&[2, 0, 0, 1]))?,
        ChateletSurface::new(int(-7), Poly::from_ints(&[5, 0, 3, 0, 1]))?,
    ];
    for s in &surfaces {
        let all = is_everywhere_locally_solvable(s)?;
        println!("{s}");
        for (place, verdict) in &all.verdicts {
            verify_local_verdict(s, verdict)?;
            let how = match &verdict.certificate {
                Certificate::Shortcut { reason } => format!("shortcut {reason:?}"),
                Certificate::RealSigns { real_roots, .. } => format!("real signs, {real_roots} real roots"),
                Certificate::DiscSearch { leaves, .. } => format!("{} disc leaves", leaves.len()),
            };
            println!("  {place:<6} {:<5} {how}", verdict.solvable);
        }
        println!("  everywhere locally solvable: {}", all.solvable);
    }
    Ok(())
}
