//! Integral cohomology of small groups and modules.
//!
//! `cargo run --release --example group_cohomology`

use etale_brauer::cohomology::{cohomology, FiniteGroup, IntegralGModule};

fn show(name: &str, g: &FiniteGroup, m: &IntegralGModule) -> etale_brauer::Result<()> {
    let hs: Vec<String> = (0..=2).map(|i| cohomology(g, m, i).map(|h| h.group.to_string())).collect::<Result<_, _>>()?;
    println!("{name:<24} H^0 = {:<6} H^1 = {:<6} H^2 = {}", hs[0], hs[1], hs[2]);
    Ok(())
}

fn main() -> etale_brauer::Result<()> {
    for n in 2..=5 {
        let g = FiniteGroup::cyclic(n)?;
        show(&format!("Z/{n}, Z"), &g, &IntegralGModule::trivial(&g, 1))?;
    }
    let c2 = FiniteGroup::cyclic(2)?;
    show("Z/2, sign", &c2, &IntegralGModule::sign(&c2, &[0])?)?;
    show("Z/2, Z[Z/2]", &c2, &IntegralGModule::induced(&c2, &[0])?)?;
    let s3 = FiniteGroup::symmetric(3)?;
    show("S3, Z", &s3, &IntegralGModule::trivial(&s3, 1))?;
    let a3: Vec<usize> = s3.elements().filter(|&x| s3.mul(x, x) != s3.identity() || x == s3.identity()).collect();
    show("S3, sign", &s3, &IntegralGModule::sign(&s3, &a3)?)?;
    show("S3, Ind from A3", &s3, &IntegralGModule::induced(&s3, &a3)?)?;
    Ok(())
}
