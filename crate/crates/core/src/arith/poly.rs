//! Dense univariate polynomials over Q.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::exact::{sylvester_resultant, ExactRing};
use super::primes::{factor, to_bigint};
use super::rational::{common_denominator, format_rational, from_bigint, int, rational_sqrt, Rational};
use crate::error::{Error, Result};

/// Largest degree accepted from external input.
pub const MAX_INPUT_DEGREE: usize = 8;

/// A polynomial with rational coefficients, constant term first. The
/// coefficient list never ends in zero; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| int(c)).collect())
    }

    pub fn from_bigints(cs: &[BigInt]) -> Self {
        Self::new(cs.iter().cloned().map(from_bigint).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&(Rational::one() / self.leading()))
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::constant(Rational::one()), |acc, _| &acc * self)
    }

    /// Euclidean division over Q.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap_or(0);
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    /// Monic gcd; zero only if both inputs are zero.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `w^n P(1/w)`: the polynomial seen in the chart at infinity of a
    /// binary form of formal degree `n >= deg P`.
    pub fn reversed(&self, n: usize) -> Poly {
        let mut v = vec![Rational::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[n - i] = c.clone();
        }
        Poly::new(v)
    }

    /// `P(x + s)`.
    pub fn shift(&self, s: &Rational) -> Poly {
        let lin = Poly::new(vec![s.clone(), Rational::one()]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Integer coefficients of `d^2 P` for the least `d` clearing all
    /// denominators. Multiplying by a square keeps every value's square
    /// class.
    pub fn square_scaled_integer(&self) -> Vec<BigInt> {
        let d = common_denominator(&self.coeffs);
        let d2 = Rational::from_integer(&d * &d);
        self.coeffs.iter().map(|c| (c * &d2).to_integer()).collect()
    }

    /// Primitive integer multiple (positive leading coefficient).
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let d = common_denominator(&self.coeffs);
        let d = Rational::from_integer(d);
        let mut v: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &d).to_integer()).collect();
        let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if v.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
        for c in &mut v {
            *c = &*c / &g * &sign;
        }
        v
    }

    pub fn resultant(&self, other: &Poly) -> Rational {
        if self.is_zero() || other.is_zero() {
            return Rational::zero();
        }
        sylvester_resultant(&self.coeffs, &other.coeffs)
    }

    /// `(-1)^{n(n-1)/2} Res(P, P') / lc(P)`.
    pub fn discriminant(&self) -> Rational {
        let n = match self.degree() {
            None | Some(0) => return Rational::zero(),
            Some(1) => return Rational::one(),
            Some(n) => n,
        };
        let r = self.resultant(&self.derivative()) / self.leading();
        if (n * (n - 1) / 2) % 2 == 1 {
            -r
        } else {
            r
        }
    }

    pub fn is_separable(&self) -> bool {
        !self.discriminant().is_zero()
    }

    /// Rational roots, sorted and without multiplicity.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let mut roots = Vec::new();
        if self.is_zero() {
            return roots;
        }
        let mut c = self.primitive_integer();
        if c.first().is_some_and(|c0| c0.is_zero()) {
            roots.push(Rational::zero());
            while c.first().is_some_and(|c0| c0.is_zero()) {
                c.remove(0);
            }
        }
        if c.len() > 1 {
            let nums = divisors(c[0].magnitude());
            let dens = divisors(c[c.len() - 1].magnitude());
            let p = Poly::from_bigints(&c);
            for n in &nums {
                for d in &dens {
                    for s in [1i64, -1] {
                        let x = Rational::new(to_bigint(n) * s, to_bigint(d));
                        if !roots.contains(&x) && p.eval(&x).is_zero() {
                            roots.push(x);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    /// A factorization `P = P1 * P2` of a quartic into quadratics over Q,
    /// with `P1` monic, if one exists.
    ///
    /// Works on the depressed monic quartic `y^4 + p y^2 + q y + r`: every
    /// splitting `(y^2 + s y + t)(y^2 - s y + t')` has `S = s^2` a rational
    /// root of `S^3 + 2p S^2 + (p^2 - 4r) S - q^2`. The branch `S = 0` is
    /// tried first, then the other roots in increasing order; within it
    /// the factor with the larger constant term comes first.
    pub fn quadratic_factors(&self) -> Option<(Poly, Poly)> {
        if self.degree() != Some(4) {
            return None;
        }
        let lc = self.leading();
        let m = self.monic();
        let shift = -m.coeff(3) / int(4);
        let d = m.shift(&shift);
        let (p, q, r) = (d.coeff(2), d.coeff(1), d.coeff(0));
        let resolvent = Poly::new(vec![
            -(&q * &q),
            &p * &p - int(4) * &r,
            int(2) * &p,
            Rational::one(),
        ]);
        let mut roots = resolvent.rational_roots();
        roots.sort_by_key(|s| !s.is_zero());
        let back = |f: Poly| f.shift(&-&shift);
        for big_s in roots {
            let Some(s) = rational_sqrt(&big_s) else { continue };
            let (t, t2) = if s.is_zero() {
                let disc = &p * &p - int(4) * &r;
                let Some(root) = rational_sqrt(&disc) else { continue };
                ((&p + &root) / int(2), (&p - &root) / int(2))
            } else {
                ((&p + &big_s - &q / &s) / int(2), (&p + &big_s + &q / &s) / int(2))
            };
            let f1 = Poly::new(vec![t, s.clone(), Rational::one()]);
            let f2 = Poly::new(vec![t2, -s, Rational::one()]);
            if &f1 * &f2 != d {
                continue;
            }
            let (p1, p2) = (back(f1), back(f2).scale(&lc));
            debug_assert_eq!(&p1 * &p2, *self);
            return Some((p1, p2));
        }
        None
    }

    /// Parses a JSON array of `"num/den"` strings, constant term first.
    pub fn from_json(v: &serde_json::Value) -> Result<Poly> {
        let arr = v.as_array().ok_or_else(|| Error::parse("polynomial", "expected a JSON array"))?;
        let cs = arr
            .iter()
            .map(super::rational::serde_rational::value_to_rational)
            .collect::<Result<Vec<_>>>()?;
        let p = Poly::new(cs);
        if p.degree().unwrap_or(0) > MAX_INPUT_DEGREE {
            return Err(Error::InvalidPolynomial(format!("degree above {MAX_INPUT_DEGREE}")));
        }
        Ok(p)
    }
}

fn divisors(n: &BigUint) -> Vec<BigUint> {
    let mut out = vec![BigUint::one()];
    if n.is_zero() {
        return out;
    }
    for (p, e) in factor(n) {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut pk = BigUint::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        out = next;
    }
    out
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl ExactRing for Poly {
    fn zero_elem() -> Self {
        Poly::zero()
    }
    fn one_elem() -> Self {
        Poly::constant(Rational::one())
    }
    fn is_zero_elem(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Self {
        let (q, r) = self.div_rem(o);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                if mag.is_integer() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "({})", mag)?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<serde_json::Value>::deserialize(d)?;
        v.iter()
            .map(super::rational::serde_rational::value_to_rational)
            .collect::<Result<Vec<_>>>()
            .map(Poly::new)
            .map_err(serde::de::Error::custom)
    }
}
