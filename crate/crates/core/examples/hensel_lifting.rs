//! Roots of integer polynomials in Z_p, lifted to a fixed precision.
//!
//! `cargo run --example hensel_lifting`

use etale_brauer::arith::{hensel_roots, Poly, Prime};

fn main() -> etale_brauer::Result<()> {
    let cases = [
        (Poly::from_ints(&[1, 0, 1]), 5, 6),
        (Poly::from_ints(&[-2, 0, 1]), 7, 5),
        (Poly::from_ints(&[-17, 0, 1]), 2, 8),
        (Poly::from_ints(&[-6, 0, 5, 0, -1]), 23, 3),
    ];
    for (f, p, k) in cases {
        let roots = hensel_roots(&f, &Prime::new(p as u64)?, k)?;
        let shown: Vec<String> = roots.iter().map(|r| r.residue.to_string()).collect();
        println!("{f} mod {p}^{k}: [{}]", shown.join(", "));
    }
    Ok(())
}
