//! Rational points of bounded height.
//!
//! For each `x = m/n` the conic `y^2 - a z^2 = P(x)` is decided by Hilbert
//! symbols (Hasse-Minkowski for conics) and, when solvable, a point is
//! produced by Legendre descent.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ChateletSurface;
use crate::arith::conic::solve_legendre;
use crate::arith::place::{Place, Prime};
use crate::arith::primes::{factor, factor_u64, prime_divisors};
use crate::arith::rational::{common_denominator, serde_rational, Rational};
use crate::arith::symbols::hilbert_symbol_int;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalPoint {
    #[serde(with = "serde_rational")]
    pub x: Rational,
    #[serde(with = "serde_rational")]
    pub y: Rational,
    #[serde(with = "serde_rational")]
    pub z: Rational,
}

struct Prepared {
    /// `d^2 P` homogenized to degree 4, constant term first.
    coeffs: Vec<BigInt>,
    small: Option<Vec<i128>>,
    d: BigInt,
    /// `num(a) * den(a)`.
    a_int: BigInt,
    a_den: BigInt,
    /// Places where `(a, N)` must be tested regardless of `N`.
    fixed: Vec<Place>,
}

impl Prepared {
    fn new(s: &ChateletSurface) -> Self {
        let p = s.poly();
        let d = common_denominator(p.coeffs());
        let coeffs = p.square_scaled_integer();
        let mut coeffs4 = coeffs.clone();
        coeffs4.resize(5, BigInt::zero());
        let small = coeffs4
            .iter()
            .map(|c| c.to_i128().filter(|v| v.unsigned_abs() < 1 << 60))
            .collect::<Option<Vec<i128>>>();
        let a_int = s.a_int();
        let mut fixed = vec![Place::Real, Place::Finite(Prime::two())];
        for q in prime_divisors(&a_int) {
            let q = Prime::new_unchecked(q);
            if !q.is_two() {
                fixed.push(Place::Finite(q));
            }
        }
        Prepared { coeffs: coeffs4, small, d, a_int, a_den: s.a().denom().clone(), fixed }
    }

    /// `N = sum c_i m^i n^(4-i)`, so that `P(m/n) = N / (d^2 n^4)`.
    fn value(&self, m: i64, n: i64) -> BigInt {
        if let Some(c) = &self.small {
            let (m, n) = (m as i128, n as i128);
            let mut acc: Option<i128> = Some(0);
            let mut mp: Option<i128> = Some(1);
            for (i, ci) in c.iter().enumerate() {
                let term = mp
                    .and_then(|mp| n.checked_pow(4 - i as u32).and_then(|np| np.checked_mul(mp)))
                    .and_then(|t| t.checked_mul(*ci));
                acc = acc.and_then(|a| term.and_then(|t| a.checked_add(t)));
                mp = mp.and_then(|mp| mp.checked_mul(m));
            }
            if let Some(v) = acc {
                return BigInt::from(v);
            }
        }
        let (mb, nb) = (BigInt::from(m), BigInt::from(n));
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * mb.pow(i as u32) * nb.pow(4 - i as u32))
            .sum()
    }

    /// Whether `N` is a norm from Q(sqrt a), decided place by place.
    fn is_norm(&self, n: &BigInt) -> bool {
        for v in &self.fixed {
            if !matches!(hilbert_symbol_int(&self.a_int, n, v), Ok(1)) {
                return false;
            }
        }
        let primes: Vec<BigInt> = match n.magnitude().to_u64() {
            Some(u) => factor_u64(u).into_iter().map(|(q, _)| BigInt::from(q)).collect(),
            None => factor(n.magnitude()).into_iter().map(|(q, _)| BigInt::from(q)).collect(),
        };
        primes.into_iter().filter(|q| !(&self.a_int % q).is_zero() && *q != BigInt::from(2)).all(|q| {
            let prime = Prime::new_unchecked(q.magnitude().clone());
            matches!(hilbert_symbol_int(&self.a_int, n, &Place::Finite(prime)), Ok(1))
        })
    }

    fn point(&self, s: &ChateletSurface, m: i64, n: i64) -> Option<RationalPoint> {
        let x = Rational::new(BigInt::from(m), BigInt::from(n));
        let big_n = self.value(m, n);
        if big_n.is_zero() {
            return Some(RationalPoint { x, y: Rational::zero(), z: Rational::zero() });
        }
        if !self.is_norm(&big_n) {
            return None;
        }
        // X^2 = A Y^2 + N W^2 gives y = X / (W d n^2), z = a_den Y / (W d n^2)
        let (xx, yy, ww) = solve_legendre(&self.a_int, &big_n)?;
        let scale = &ww * &self.d * BigInt::from(n).pow(2);
        let y = Rational::new(xx, scale.clone());
        let z = Rational::new(&self.a_den * yy, scale);
        let pt = RationalPoint { x, y, z };
        debug_assert!(s.contains(&pt.x, &pt.y, &pt.z));
        Some(pt)
    }
}

/// Every `x = m/n` with `|m| <= height`, `1 <= n <= height`,
/// `gcd(m, n) = 1` over which the surface has a rational point, with one
/// such point each, ordered by `(n, m)`.
pub fn search_rational_points(s: &ChateletSurface, height: u64) -> Vec<RationalPoint> {
    let prep = Prepared::new(s);
    let h = height.min(i32::MAX as u64) as i64;
    let needs_positive = s.a().is_negative();
    let mut out: Vec<(i64, i64, RationalPoint)> = (1..=h)
        .into_par_iter()
        .flat_map_iter(|n| {
            let prep = &prep;
            (-h..=h).filter_map(move |m| {
                if m.gcd(&n) != 1 {
                    return None;
                }
                if needs_positive {
                    // cheap sign filter before any factoring
                    let v = prep.value(m, n);
                    if v.is_negative() {
                        return None;
                    }
                }
                prep.point(s, m, n).map(|pt| (n, m, pt))
            })
        })
        .collect();
    out.sort_by_key(|a| (a.0, a.1));
    out.into_iter().map(|(_, _, pt)| pt).collect()
}
