//! Certified p-adic roots of polynomials by disc exhaustion and Hensel's lemma.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::place::Prime;
use super::poly::Poly;
use super::rational::serde_bigint;
use super::symbols::valuation_int;
use crate::error::{Error, Result};

/// A root of `P` in Z_p known modulo `p^precision`, together with the
/// point where Hensel's criterion `v(P(x)) > 2 v(P'(x))` was checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HenselRoot {
    #[serde(with = "serde_bigint")]
    pub residue: BigInt,
    pub precision: u32,
    #[serde(with = "serde_bigint")]
    pub lift_point: BigInt,
    /// `None` when `P(lift_point) = 0` exactly.
    pub value_valuation: Option<u64>,
    pub derivative_valuation: u64,
}

pub(crate) fn eval_int(c: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for a in c.iter().rev() {
        acc = acc * x + a;
    }
    acc
}

pub(crate) fn derivative_int(c: &[BigInt]) -> Vec<BigInt> {
    c.iter().enumerate().skip(1).map(|(i, a)| a * BigInt::from(i)).collect()
}

/// Coefficients of `P(x0 + t)` in `t`.
pub(crate) fn taylor_shift(c: &[BigInt], x0: &BigInt) -> Vec<BigInt> {
    let mut a = c.to_vec();
    let n = a.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = &a[j + 1] * x0;
            a[j] += t;
        }
    }
    a
}

/// Outcome of examining one disc `x0 + p^depth Z_p` for roots of an
/// integer polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum DiscRoots {
    /// `|P|` is constant and nonzero on the disc.
    Empty,
    /// Hensel's criterion holds at the center and the disc contains a root.
    Certified { value_valuation: Option<u64>, derivative_valuation: u64, unique: bool },
    Undecided,
}

pub(crate) fn examine_disc(c: &[BigInt], p: &Prime, x0: &BigInt, depth: u32) -> DiscRoots {
    let value = eval_int(c, x0);
    let v0 = valuation_int(&value, p);
    let d = eval_int(&derivative_int(c), x0);
    if let Some(m) = valuation_int(&d, p) {
        let big_enough = v0.map_or(true, |v| v > 2 * m && v - m >= depth as u64);
        if big_enough {
            return DiscRoots::Certified {
                value_valuation: v0,
                derivative_valuation: m,
                unique: depth as u64 > m,
            };
        }
    }
    let Some(v0) = v0 else { return DiscRoots::Undecided };
    let shifted = taylor_shift(c, x0);
    let bound = shifted
        .iter()
        .enumerate()
        .skip(1)
        .filter_map(|(i, a)| valuation_int(a, p).map(|v| v + i as u64 * depth as u64))
        .min();
    if bound.map_or(true, |b| v0 < b) {
        DiscRoots::Empty
    } else {
        DiscRoots::Undecided
    }
}

/// Newton iteration from a certified point until the root is pinned down
/// modulo `p^precision`.
fn newton_lift(c: &[BigInt], p: &Prime, x0: &BigInt, m: u64, precision: u32) -> (BigInt, Option<u64>) {
    let pb = p.to_bigint();
    let modulus = pb.pow(2 * (precision + m as u32) + 2);
    let pm = pb.pow(m as u32);
    let dc = derivative_int(c);
    let mut x = x0.clone();
    loop {
        let value = eval_int(c, &x);
        let v = valuation_int(&value, p);
        match v {
            None => return (x, None),
            Some(v) if v >= precision as u64 + m => return (x, Some(v)),
            _ => {}
        }
        let unit = (eval_int(&dc, &x) / &pm).mod_floor(&modulus);
        let inv = mod_inverse(&unit, &modulus);
        let delta = ((value / &pm) * inv).mod_floor(&modulus);
        x = (x - delta).mod_floor(&modulus);
    }
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

/// All residues modulo `p^precision` that lift to roots of `poly` in Z_p.
///
/// Fails with `PrecisionExhausted` if some disc can be neither certified
/// nor excluded within `4 * precision` levels (repeated roots).
pub fn hensel_roots(poly: &Poly, p: &Prime, precision: u32) -> Result<Vec<HenselRoot>> {
    hensel_roots_with_cap(poly, p, precision, 4 * precision)
}

pub fn hensel_roots_with_cap(poly: &Poly, p: &Prime, precision: u32, depth_cap: u32) -> Result<Vec<HenselRoot>> {
    if poly.is_zero() {
        return Err(Error::InvalidPolynomial("hensel_roots of the zero polynomial".into()));
    }
    if precision == 0 {
        return Err(Error::InvalidParameter("precision must be at least 1".into()));
    }
    let ps = p.as_u64().ok_or_else(|| Error::ResourceExhausted(format!("residue enumeration mod {p}")))?;
    let c = poly.primitive_integer();
    let pb = p.to_bigint();
    let modulus = pb.pow(precision);
    let mut out: Vec<HenselRoot> = Vec::new();
    let mut stack = vec![(BigInt::zero(), 0u32)];
    while let Some((x0, depth)) = stack.pop() {
        match examine_disc(&c, p, &x0, depth) {
            DiscRoots::Empty => {}
            DiscRoots::Certified { derivative_valuation: m, unique: true, .. } => {
                let (x, v) = newton_lift(&c, p, &x0, m, precision);
                let residue = x.mod_floor(&modulus);
                if !out.iter().any(|r| r.residue == residue) {
                    out.push(HenselRoot {
                        residue,
                        precision,
                        lift_point: x,
                        value_valuation: v,
                        derivative_valuation: m,
                    });
                }
            }
            _ if depth >= depth_cap => {
                return Err(Error::PrecisionExhausted(format!(
                    "disc {x0} + {p}^{depth} Z_{p} undecided at the depth cap {depth_cap}"
                )));
            }
            _ => {
                let step = pb.pow(depth);
                for r in (0..ps).rev() {
                    stack.push((&x0 + &step * r, depth + 1));
                }
            }
        }
    }
    out.sort_by(|a, b| a.residue.cmp(&b.residue));
    Ok(out)
}

/// Re-checks a root certificate against the polynomial.
pub fn verify_hensel_root(poly: &Poly, p: &Prime, root: &HenselRoot) -> bool {
    let c = poly.primitive_integer();
    let value = eval_int(&c, &root.lift_point);
    let d = eval_int(&derivative_int(&c), &root.lift_point);
    let v = valuation_int(&value, p);
    let m = match valuation_int(&d, p) {
        Some(m) => m,
        None => return false,
    };
    let modulus = p.to_bigint().pow(root.precision);
    v == root.value_valuation
        && m == root.derivative_valuation
        && v.map_or(true, |v| v > 2 * m && v >= m + root.precision as u64)
        && root.lift_point.mod_floor(&modulus) == root.residue
}
