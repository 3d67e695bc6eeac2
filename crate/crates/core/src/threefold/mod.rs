//! The conic bundle `y^2 - a z^2 = s1` over `P^1 x P^1`, where
//! `s1 = u^2 P_inf(w, x) + v^2 P_0(w, x)` has bidegree (2, 4).

mod bipoly;
pub mod branch;
pub mod smooth;
pub mod sweep;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::poly::Poly;
use crate::arith::rational::{is_rational_square, serde_rational, Rational};
use crate::chatelet::ChateletSurface;
use crate::error::{Error, Result};

pub use branch::{branch_locus, BranchLocus};
pub use smooth::{degeneracy_smoothness_audit, verify_smoothness_certificate, SmoothnessCertificate};
pub use sweep::{fiber_sweep, FiberEntry, FiberOutcome, SweepOptions, SweepReport};

/// A point `(u : v)` of P^1 with coprime integer coordinates, the first
/// nonzero one positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    u: BigInt,
    v: BigInt,
}

impl ProjPoint {
    pub fn new(u: impl Into<BigInt>, v: impl Into<BigInt>) -> Result<Self> {
        let (mut u, mut v) = (u.into(), v.into());
        if u.is_zero() && v.is_zero() {
            return Err(Error::InvalidParameter("(0:0) is not a point of P^1".into()));
        }
        let g = u.gcd(&v);
        u /= &g;
        v /= &g;
        if u.is_negative() || (u.is_zero() && v.is_negative()) {
            u = -u;
            v = -v;
        }
        Ok(ProjPoint { u, v })
    }

    /// `∞ = (1 : 0)`.
    pub fn infinity() -> Self {
        ProjPoint { u: 1.into(), v: 0.into() }
    }

    pub fn u(&self) -> &BigInt {
        &self.u
    }

    pub fn v(&self) -> &BigInt {
        &self.v
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{})", self.u, self.v)
    }
}

impl FromStr for ProjPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::parse(format!("point {s:?}"), "expected \"(u:v)\" with integers u, v");
        let inner = s.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
        let (u, v) = inner.split_once(':').ok_or_else(bad)?;
        let u: BigInt = u.trim().parse().map_err(|_| bad())?;
        let v: BigInt = v.trim().parse().map_err(|_| bad())?;
        ProjPoint::new(u, v)
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ProjPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// `s1` with its defining data. `matrix[i][j]` is the coefficient of
/// `u^i v^(2-i) x^j w^(4-j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ConstructionInput")]
pub struct BidegreeForm {
    #[serde(with = "serde_rational")]
    a: Rational,
    #[serde(rename = "Pinf")]
    p_inf: Poly,
    #[serde(rename = "P0")]
    p_0: Poly,
    #[serde(skip_deserializing, serialize_with = "serialize_matrix")]
    matrix: [[Rational; 5]; 3],
}

#[derive(Deserialize)]
struct ConstructionInput {
    #[serde(with = "serde_rational")]
    a: Rational,
    #[serde(rename = "Pinf")]
    p_inf: Poly,
    #[serde(rename = "P0")]
    p_0: Poly,
}

impl TryFrom<ConstructionInput> for BidegreeForm {
    type Error = Error;
    fn try_from(c: ConstructionInput) -> Result<Self> {
        build_construction(c.a, c.p_inf, c.p_0)
    }
}

fn serialize_matrix<S: Serializer>(m: &[[Rational; 5]; 3], s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> =
        m.iter().map(|r| r.iter().map(crate::arith::rational::format_rational).collect()).collect();
    rows.serialize(s)
}

/// Validates the data and assembles `s1`.
pub fn build_construction(a: Rational, p_inf: Poly, p_0: Poly) -> Result<BidegreeForm> {
    for (name, p) in [("P_inf", &p_inf), ("P_0", &p_0)] {
        if p.degree() != Some(4) {
            return Err(Error::BadDegree(format!("{name} = {p} must have degree 4")));
        }
    }
    if a.is_zero() || is_rational_square(&a) {
        return Err(Error::InvalidParameter(format!("a = {a} must be a nonzero non-square")));
    }
    for (name, p) in [("P_inf", &p_inf), ("P_0", &p_0)] {
        if !p.is_separable() {
            return Err(Error::NotSeparable(format!("{name} = {p} must be separable (disc = 0)")));
        }
    }
    if p_inf.resultant(&p_0).is_zero() {
        return Err(Error::NotCoprime(format!("P_inf = {p_inf} and P_0 = {p_0} must be relatively prime")));
    }
    let mut matrix: [[Rational; 5]; 3] = Default::default();
    for j in 0..5 {
        matrix[0][j] = p_0.coeff(j);
        matrix[2][j] = p_inf.coeff(j);
    }
    Ok(BidegreeForm { a, p_inf, p_0, matrix })
}

/// The instance with `a = -1`, `P_inf = (x^2 - 2)(3 - x^2)`, `P_0 = x^4 - 1`.
pub fn ledger_instance() -> BidegreeForm {
    build_construction(
        -Rational::from_integer(1.into()),
        Poly::from_ints(&[-6, 0, 5, 0, -1]),
        Poly::from_ints(&[-1, 0, 0, 0, 1]),
    )
    .expect("valid construction")
}

/// The fiber over a base point: a Chatelet surface, or a tagged
/// degenerate quartic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Fiber {
    Surface { surface: ChateletSurface },
    Degenerate { quartic: Poly, reason: String },
}

impl BidegreeForm {
    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn p_inf(&self) -> &Poly {
        &self.p_inf
    }

    pub fn p_0(&self) -> &Poly {
        &self.p_0
    }

    pub fn matrix(&self) -> &[[Rational; 5]; 3] {
        &self.matrix
    }

    /// `u0^2 P_inf + v0^2 P_0`.
    pub fn fiber_quartic(&self, t: &ProjPoint) -> Poly {
        let (u, v) = (Rational::from_integer(t.u.clone()), Rational::from_integer(t.v.clone()));
        &self.p_inf.scale(&(&u * &u)) + &self.p_0.scale(&(&v * &v))
    }

    pub fn fiber(&self, t: &ProjPoint) -> Fiber {
        let quartic = self.fiber_quartic(t);
        if binary_discriminant(&quartic, 4).is_zero() {
            return Fiber::Degenerate { reason: "the binary quartic has a repeated root".into(), quartic };
        }
        match ChateletSurface::new(self.a.clone(), quartic.clone()) {
            Ok(surface) => Fiber::Surface { surface },
            Err(e) => Fiber::Degenerate { reason: e.to_string(), quartic },
        }
    }

    /// The same construction with `u <-> v` and `P_inf <-> P_0`.
    pub fn swapped(&self) -> BidegreeForm {
        build_construction(self.a.clone(), self.p_0.clone(), self.p_inf.clone()).expect("symmetric hypotheses")
    }
}

pub fn fiber(b: &BidegreeForm, t: &ProjPoint) -> Fiber {
    b.fiber(t)
}

/// Discriminant of `P` viewed as a binary form of degree `n >= deg P`.
/// A form with a root at infinity of multiplicity two or more has
/// discriminant zero.
pub fn binary_discriminant(p: &Poly, n: usize) -> Rational {
    match p.degree() {
        None => Rational::zero(),
        Some(d) if d == n => p.discriminant(),
        Some(d) if d + 1 == n => {
            let c = p.leading();
            &c * &c * p.discriminant()
        }
        Some(_) => Rational::zero(),
    }
}
