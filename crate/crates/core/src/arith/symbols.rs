//! p-adic valuations, residue symbols, Hilbert symbols and square classes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::place::{Place, Prime};
use super::rational::{serde_bigint, square_class_integer, Rational};
use crate::error::{Error, Result};

/// `v_p(n)` for a nonzero integer; `None` for zero.
pub fn valuation_int(n: &BigInt, p: &Prime) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    if let Some(ps) = p.as_u64() {
        let mut v = 0;
        let mut m = n.clone();
        loop {
            let (q, r) = m.div_rem(&BigInt::from(ps));
            if !r.is_zero() {
                return Some(v);
            }
            m = q;
            v += 1;
        }
    }
    let pb = p.to_bigint();
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return Some(v);
        }
        m = q;
        v += 1;
    }
}

/// `v_p(x)`, with `None` standing for +infinity at `x = 0`.
pub fn valuation(x: &Rational, p: &Prime) -> Option<i64> {
    let vn = valuation_int(x.numer(), p)?;
    let vd = valuation_int(x.denom(), p).unwrap_or(0);
    Some(vn as i64 - vd as i64)
}

/// Splits a nonzero integer as `p^e * u` with `p` not dividing `u`.
pub fn split_power(n: &BigInt, p: &Prime) -> (u64, BigInt) {
    let e = valuation_int(n, p).expect("split_power of zero");
    (e, n / p.to_bigint().pow(e as u32))
}

/// Legendre symbol `(a/p)` for odd `p`: -1, 0 or +1.
pub fn legendre(a: &BigInt, p: &Prime) -> i8 {
    assert!(!p.is_two(), "legendre symbol needs an odd prime");
    let pb = p.to_bigint();
    let r = a.mod_floor(&pb);
    if r.is_zero() {
        return 0;
    }
    let e = (&pb - 1) / 2;
    if r.modpow(&e, &pb).is_one() {
        1
    } else {
        -1
    }
}

/// Smallest positive quadratic non-residue modulo an odd prime.
pub fn smallest_non_residue(p: &Prime) -> BigInt {
    let mut n = BigInt::from(2);
    while legendre(&n, p) != -1 {
        n += 1;
    }
    n
}

fn parity_bit(x: &BigInt) -> u8 {
    if x.is_odd() {
        1
    } else {
        0
    }
}

/// `(u - 1)/2 mod 2` for odd `u`.
fn eps(u: &BigInt) -> u8 {
    let r = u.mod_floor(&BigInt::from(4));
    if r == BigInt::from(3) {
        1
    } else {
        0
    }
}

/// `(u^2 - 1)/8 mod 2` for odd `u`.
fn omega(u: &BigInt) -> u8 {
    let r = u.mod_floor(&BigInt::from(8)).to_u8().unwrap_or(0);
    if r == 3 || r == 5 {
        1
    } else {
        0
    }
}

/// Hilbert symbol of two nonzero integers.
pub fn hilbert_symbol_int(a: &BigInt, b: &BigInt, v: &Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroArgument("hilbert_symbol"));
    }
    let p = match v {
        Place::Real => return Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Finite(p) => p,
    };
    let (alpha, u) = split_power(a, p);
    let (beta, w) = split_power(b, p);
    if p.is_two() {
        let e = eps(&u) * eps(&w) + (alpha % 2) as u8 * omega(&w) + (beta % 2) as u8 * omega(&u);
        return Ok(if e % 2 == 0 { 1 } else { -1 });
    }
    let mut s: i8 = 1;
    let eps_p = parity_bit(&((p.to_bigint() - 1) / 2));
    if (alpha % 2) * (beta % 2) == 1 && eps_p == 1 {
        s = -s;
    }
    if beta % 2 == 1 {
        s *= legendre(&u, p);
    }
    if alpha % 2 == 1 {
        s *= legendre(&w, p);
    }
    Ok(s)
}

/// Hilbert symbol `(a, b)_v`: +1 iff `z^2 = a x^2 + b y^2` has a nonzero
/// solution over Q_v.
pub fn hilbert_symbol(a: &Rational, b: &Rational, v: &Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroArgument("hilbert_symbol"));
    }
    hilbert_symbol_int(&square_class_integer(a), &square_class_integer(b), v)
}

/// Canonical representative of `x (Q_v^*)^2`.
///
/// * real place: `unit = ±1`, `exponent = 0`;
/// * odd p: `p^e * u` with `e ∈ {0,1}` and `u ∈ {1, n}`, `n` the smallest
///   positive non-residue;
/// * p = 2: `2^e * u` with `e ∈ {0,1}` and `u ∈ {1,3,5,7}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SquareClass {
    pub place: Place,
    pub exponent: u8,
    #[serde(with = "serde_bigint")]
    pub unit: BigInt,
}

impl SquareClass {
    pub fn representative(&self) -> Rational {
        let base = match &self.place {
            Place::Real => BigInt::one(),
            Place::Finite(p) => p.to_bigint().pow(self.exponent as u32),
        };
        Rational::from_integer(base * &self.unit)
    }

    pub fn is_trivial(&self) -> bool {
        self.exponent == 0 && self.unit.is_one()
    }
}

pub fn square_class(x: &Rational, v: &Place) -> Result<SquareClass> {
    if x.is_zero() {
        return Err(Error::ZeroArgument("square_class"));
    }
    let n = square_class_integer(x);
    let p = match v {
        Place::Real => {
            let unit = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
            return Ok(SquareClass { place: v.clone(), exponent: 0, unit });
        }
        Place::Finite(p) => p,
    };
    let (e, u) = split_power(&n, p);
    let exponent = (e % 2) as u8;
    let unit = if p.is_two() {
        u.mod_floor(&BigInt::from(8))
    } else if legendre(&u, p) == 1 {
        BigInt::one()
    } else {
        smallest_non_residue(p)
    };
    Ok(SquareClass { place: v.clone(), exponent, unit })
}

/// True iff `x` is a nonzero square in Q_v.
pub fn is_local_square(x: &Rational, v: &Place) -> Result<bool> {
    Ok(square_class(x, v)?.is_trivial())
}
