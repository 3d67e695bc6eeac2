//! The Brauer-Manin verdict for a quaternion class on a Chatelet surface.
//!
//! `cargo run --release --example brauer_manin`

use etale_brauer::arith::rational::int;
use etale_brauer::arith::Poly;
use etale_brauer::brauer::{obstruction_verdict, verify_obstruction_verdict, QuaternionClass};

fn main() -> etale_brauer::Result<()> {
    let classes = [
        QuaternionClass::iskovskikh(),
        QuaternionClass::from_factors(int(-1), Poly::from_ints(&[-2, 0, 1]), Poly::from_ints(&[1, 0, 1]))?,
    ];
    for c in &classes {
        let v = obstruction_verdict(c)?;
        verify_obstruction_verdict(&v)?;
        print!("{}", v.explain());
        println!();
    }
    Ok(())
}
