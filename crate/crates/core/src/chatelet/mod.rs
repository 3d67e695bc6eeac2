//! Chatelet surfaces `y^2 - a z^2 = P(x)` over Q.

pub mod disc;
pub mod local;
pub mod search;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::place::{Place, Prime};
use crate::arith::poly::Poly;
use crate::arith::primes::prime_divisors;
use crate::arith::rational::{
    format_rational, is_rational_square, serde_rational, square_class_integer, Rational,
};
use crate::error::{Error, Result};

pub use disc::{Chart, ResidueDisc};
pub use local::{
    is_everywhere_locally_solvable, is_locally_solvable, is_locally_solvable_with, verify_local_verdict,
    Certificate, EverywhereLocal, LocalOptions, LocalVerdict, Shortcut, Witness,
};
pub use search::{search_rational_points, RationalPoint};

/// The affine surface `y^2 - a z^2 = P(x)` with `a` not a square in Q and
/// `P` separable of degree 3 or 4.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SurfaceInput")]
pub struct ChateletSurface {
    #[serde(with = "serde_rational")]
    a: Rational,
    #[serde(rename = "P")]
    p: Poly,
}

#[derive(Deserialize)]
struct SurfaceInput {
    #[serde(with = "serde_rational")]
    a: Rational,
    #[serde(rename = "P")]
    p: Poly,
}

impl TryFrom<SurfaceInput> for ChateletSurface {
    type Error = Error;
    fn try_from(s: SurfaceInput) -> Result<Self> {
        ChateletSurface::new(s.a, s.p)
    }
}

impl ChateletSurface {
    pub fn new(a: Rational, p: Poly) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::InvalidSurface("a must be nonzero".into()));
        }
        if is_rational_square(&a) {
            return Err(Error::InvalidSurface(format!("a = {} is a square in Q", format_rational(&a))));
        }
        match p.degree() {
            Some(3) | Some(4) => {}
            d => return Err(Error::InvalidSurface(format!("P must have degree 3 or 4, got {d:?}"))),
        }
        if !p.is_separable() {
            return Err(Error::InvalidSurface(format!("P = {p} is not separable")));
        }
        Ok(ChateletSurface { a, p })
    }

    /// `a = -1`, `P = (x^2 - 2)(3 - x^2)`.
    pub fn iskovskikh() -> Self {
        Self::new(-Rational::one(), Poly::from_ints(&[-6, 0, 5, 0, -1])).expect("valid surface")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        serde_json::from_value(v.clone()).map_err(|e| Error::parse("surface", e.to_string()))
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn poly(&self) -> &Poly {
        &self.p
    }

    /// An integer in the square class of `a`.
    pub(crate) fn a_int(&self) -> BigInt {
        square_class_integer(&self.a)
    }

    /// True when `(x, y, z)` satisfies the equation exactly.
    pub fn contains(&self, x: &Rational, y: &Rational, z: &Rational) -> bool {
        y * y - &self.a * z * z == self.p.eval(x)
    }

    /// The real place, 2, and every prime dividing `a`, `disc(P)`, the
    /// leading coefficient of `P`, or a coefficient denominator. Outside
    /// this set the surface has good reduction and local points.
    pub fn bad_places(&self) -> BTreeSet<Place> {
        let mut out = BTreeSet::new();
        out.insert(Place::Real);
        out.insert(Place::Finite(Prime::two()));
        let mut ints = vec![square_class_integer(&self.a), square_class_integer(&self.p.discriminant())];
        ints.push(square_class_integer(&self.p.leading()));
        ints.extend(self.p.coeffs().iter().map(|c| c.denom().clone()));
        for n in ints {
            for q in prime_divisors(&n) {
                out.insert(Place::Finite(Prime::new_unchecked(q)));
            }
        }
        out
    }
}

impl fmt::Display for ChateletSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 - ({}) z^2 = {}", self.a, self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    fn places(ps: &[u64]) -> BTreeSet<Place> {
        let mut s: BTreeSet<Place> = ps.iter().map(|&p| Place::prime(p).unwrap()).collect();
        s.insert(Place::Real);
        s
    }

    #[test]
    fn validation() {
        assert!(ChateletSurface::new(int(4), Poly::from_ints(&[1, 0, 0, 0, 1])).is_err());
        assert!(ChateletSurface::new(int(0), Poly::from_ints(&[1, 0, 0, 0, 1])).is_err());
        assert!(ChateletSurface::new(int(-1), Poly::from_ints(&[1, 0, 1])).is_err());
        assert!(ChateletSurface::new(int(-1), Poly::from_ints(&[1, 0, -2, 0, 1])).is_err());
        assert!(ChateletSurface::new(int(-1), Poly::from_ints(&[0, -1, 0, 1])).is_ok());
    }

    #[test]
    fn bad_place_sets() {
        // disc((x^2-2)(3-x^2)) = 2^6 * 3^2 * ... ; read the primes off exactly
        let s = ChateletSurface::iskovskikh();
        let d = s.poly().discriminant();
        let mut expected: Vec<u64> = vec![2];
        for q in prime_divisors(d.numer()) {
            expected.push(q.try_into().unwrap());
        }
        assert_eq!(s.bad_places(), places(&expected));
        let s = ChateletSurface::new(int(-1), Poly::from_ints(&[1, 0, 0, 0, 1])).unwrap();
        assert_eq!(s.poly().discriminant(), int(256));
        assert_eq!(s.bad_places(), places(&[2]));
        let s = ChateletSurface::new(int(17), Poly::from_ints(&[0, -1, 0, 0, 1])).unwrap();
        assert!(s.bad_places().contains(&Place::prime(17).unwrap()));
    }

    #[test]
    fn json_round_trip() {
        let s = ChateletSurface::iskovskikh();
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v, serde_json::json!({"a": "-1/1", "P": ["-6/1", "0/1", "5/1", "0/1", "-1/1"]}));
        assert_eq!(ChateletSurface::from_json(&v).unwrap(), s);
        let bad = serde_json::json!({"a": "9/4", "P": ["1", "0", "0", "0", "1"]});
        assert!(ChateletSurface::from_json(&bad).is_err());
    }
}
