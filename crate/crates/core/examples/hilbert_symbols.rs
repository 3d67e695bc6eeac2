//! Hilbert symbols at every place and the product formula.
//!
//! `cargo run --example hilbert_symbols`

use etale_brauer::arith::primes::prime_divisors;
use etale_brauer::arith::rational::int;
use etale_brauer::arith::{hilbert_symbol, Place};
use num_bigint::BigInt;

fn main() -> etale_brauer::Result<()> {
    for (a, b) in [(-1, -1), (2, 3), (-3, 5), (7, -14), (6, 10)] {
        let mut places = vec![Place::Real, Place::prime(2)?];
        for q in prime_divisors(&BigInt::from(a * b)) {
            let q = u64::try_from(q).expect("small prime");
            if q != 2 {
                places.push(Place::prime(q)?);
            }
        }
        let mut product = 1;
        let mut row = Vec::new();
        for v in &places {
            let s = hilbert_symbol(&int(a), &int(b), v)?;
            product *= s;
            row.push(format!("{v}:{s:+}"));
        }
        println!("({a}, {b})  {}  product {product:+}", row.join("  "));
    }
    Ok(())
}
