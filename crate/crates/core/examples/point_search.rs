//! Rational points of bounded height, with the invariant sum at each.
//!
//! `cargo run --release --example point_search`

use etale_brauer::arith::rational::int;
use etale_brauer::arith::Poly;
use etale_brauer::brauer::{invariant_sum_at_rational_point, QuaternionClass};
use etale_brauer::chatelet::search_rational_points;

fn main() -> etale_brauer::Result<()> {
    let c = QuaternionClass::from_factors(int(-1), Poly::from_ints(&[-2, 0, 1]), Poly::from_ints(&[1, 0, 1]))?;
    let s = c.surface();
    let points = search_rational_points(&s, 50);
    println!("{s}: {} points to height 50", points.len());
    for p in points.iter().take(8) {
        assert!(s.contains(&p.x, &p.y, &p.z));
        let sum = invariant_sum_at_rational_point(&c, &p.x)?;
        println!("  x = {:<6} y = {:<8} z = {:<8} sum of invariants {sum}", p.x, p.y, p.z);
    }
    let bundled = QuaternionClass::iskovskikh().surface();
    println!("{bundled}: {} points to height 200", search_rational_points(&bundled, 200).len());
    Ok(())
}
