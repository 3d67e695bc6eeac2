//! The quaternion class `(a, P1(x))` on a Chatelet surface with
//! `P = P1 * P2`, its local invariants and the Brauer-Manin verdict.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::ops::ControlFlow;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::place::{Place, Prime};
use crate::arith::poly::Poly;
use crate::arith::primes::prime_divisors;
use crate::arith::rational::{serde_rational, square_class_integer, Rational};
use crate::arith::real::{gap_samples, isolate_real_roots};
use crate::arith::symbols::{hilbert_symbol, hilbert_symbol_int, is_local_square};
use crate::chatelet::disc::{explore, verify_cover, verify_leaf, ChartPolys, DiscStatus, ExploreStats, LeafRecord};
use crate::chatelet::ChateletSurface;
use crate::error::{Error, Result};

/// An element of `{0, 1/2} ⊂ Q/Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Invariant {
    Zero,
    Half,
}

impl Invariant {
    pub fn from_symbol(s: i8) -> Self {
        if s == 1 {
            Invariant::Zero
        } else {
            Invariant::Half
        }
    }

    pub fn add(self, other: Invariant) -> Invariant {
        if self == other {
            Invariant::Zero
        } else {
            Invariant::Half
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Invariant::Zero => "0",
            Invariant::Half => "1/2",
        })
    }
}

impl Serialize for Invariant {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Invariant {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match String::deserialize(d)?.as_str() {
            "0" => Ok(Invariant::Zero),
            "1/2" => Ok(Invariant::Half),
            other => Err(serde::de::Error::custom(format!("invariant must be \"0\" or \"1/2\", got {other:?}"))),
        }
    }
}

/// `{s + t : s ∈ x, t ∈ y}` in Q/Z.
pub fn minkowski_sum(x: &BTreeSet<Invariant>, y: &BTreeSet<Invariant>) -> BTreeSet<Invariant> {
    x.iter().flat_map(|s| y.iter().map(move |t| s.add(*t))).collect()
}

/// The algebra `(a, P1(x))` on `y^2 - a z^2 = P1(x) P2(x)`, both factors
/// quadratic and coprime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ClassInput")]
pub struct QuaternionClass {
    #[serde(with = "serde_rational")]
    a: Rational,
    #[serde(rename = "P1")]
    p1: Poly,
    #[serde(rename = "P2")]
    p2: Poly,
}

#[derive(Deserialize)]
struct ClassInput {
    #[serde(with = "serde_rational")]
    a: Rational,
    #[serde(rename = "P1")]
    p1: Poly,
    #[serde(rename = "P2")]
    p2: Poly,
}

impl TryFrom<ClassInput> for QuaternionClass {
    type Error = Error;
    fn try_from(c: ClassInput) -> Result<Self> {
        QuaternionClass::from_factors(c.a, c.p1, c.p2)
    }
}

impl QuaternionClass {
    pub fn from_factors(a: Rational, p1: Poly, p2: Poly) -> Result<Self> {
        if p1.degree() != Some(2) || p2.degree() != Some(2) {
            return Err(Error::InvalidClass("both factors must be quadratic".into()));
        }
        if p1.resultant(&p2).is_zero() {
            return Err(Error::InvalidClass(format!("factors {p1} and {p2} share a root")));
        }
        ChateletSurface::new(a.clone(), &p1 * &p2)?;
        Ok(QuaternionClass { a, p1, p2 })
    }

    /// The class `(a, P1(x))` where `P1` divides the surface polynomial.
    pub fn from_surface(s: &ChateletSurface, p1: Poly) -> Result<Self> {
        let (q, r) = s.poly().div_rem(&p1);
        if !r.is_zero() {
            return Err(Error::InvalidClass(format!("{p1} does not divide {}", s.poly())));
        }
        Self::from_factors(s.a().clone(), p1, q)
    }

    /// `(-1, x^2 - 2)` on `y^2 + z^2 = (x^2 - 2)(3 - x^2)`.
    pub fn iskovskikh() -> Self {
        Self::from_factors(-Rational::from_integer(1.into()), Poly::from_ints(&[-2, 0, 1]), Poly::from_ints(&[3, 0, -1]))
            .expect("valid class")
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn p1(&self) -> &Poly {
        &self.p1
    }

    pub fn p2(&self) -> &Poly {
        &self.p2
    }

    pub fn surface(&self) -> ChateletSurface {
        ChateletSurface::new(self.a.clone(), &self.p1 * &self.p2).expect("validated at construction")
    }

    /// `(a, P2(x))`, which differs from `self` by `(a, P(x))`.
    pub fn swapped(&self) -> Self {
        QuaternionClass { a: self.a.clone(), p1: self.p2.clone(), p2: self.p1.clone() }
    }

    /// Bad places of the surface together with the primes dividing the
    /// leading coefficients of the factors, their resultant, or their
    /// coefficient denominators. Elsewhere the invariant vanishes on every
    /// local point.
    pub fn relevant_places(&self) -> BTreeSet<Place> {
        let mut out = self.surface().bad_places();
        let mut ints = vec![
            square_class_integer(&self.p1.leading()),
            square_class_integer(&self.p2.leading()),
            square_class_integer(&self.p1.resultant(&self.p2)),
        ];
        ints.extend(self.p1.coeffs().iter().chain(self.p2.coeffs()).map(|c| c.denom().clone()));
        for n in ints {
            for q in prime_divisors(&n) {
                out.insert(Place::Finite(Prime::new_unchecked(q)));
            }
        }
        out
    }

    fn chart_polys(&self) -> ChartPolys {
        ChartPolys::new(&[(&self.p1, 2), (&self.p2, 2)])
    }
}

impl fmt::Display for QuaternionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.p1)
    }
}

/// Invariant of the class at a Q_v-point with x-coordinate `x`.
///
/// Uses `P2` where `P1` vanishes: `(a, P(x))_v = +1` at every point, so
/// the two evaluations agree.
pub fn local_invariant(c: &QuaternionClass, v: &Place, x: &Rational) -> Result<Invariant> {
    let (f1, f2) = (c.p1.eval(x), c.p2.eval(x));
    let value = &f1 * &f2;
    if !value.is_zero() && hilbert_symbol(&c.a, &value, v)? != 1 {
        return Err(Error::NotALocalPoint { x: x.to_string(), place: v.to_string() });
    }
    match (f1.is_zero(), f2.is_zero()) {
        (true, true) => Err(Error::BothFactorsVanish(x.to_string())),
        (false, _) => Ok(Invariant::from_symbol(hilbert_symbol(&c.a, &f1, v)?)),
        (true, false) => Ok(Invariant::from_symbol(hilbert_symbol(&c.a, &f2, v)?)),
    }
}

/// Sum of the local invariants over all places at a rational point. Only
/// the real place, 2, and primes dividing `a` or the evaluated factor can
/// contribute.
pub fn invariant_sum_at_rational_point(c: &QuaternionClass, x: &Rational) -> Result<Invariant> {
    let f = if c.p1.eval(x).is_zero() { c.p2.eval(x) } else { c.p1.eval(x) };
    if f.is_zero() {
        return Err(Error::BothFactorsVanish(x.to_string()));
    }
    let mut places: BTreeSet<Place> = [Place::Real, Place::Finite(Prime::two())].into_iter().collect();
    for n in [square_class_integer(&c.a), square_class_integer(&f)] {
        for q in prime_divisors(&n) {
            places.insert(Place::Finite(Prime::new_unchecked(q)));
        }
    }
    places.iter().try_fold(Invariant::Zero, |acc, v| Ok(acc.add(local_invariant(c, v, x)?)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealSample {
    #[serde(with = "serde_rational")]
    pub x: Rational,
    pub p_positive: bool,
    pub invariant: Option<Invariant>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantLeaf {
    #[serde(flatten)]
    pub leaf: LeafRecord,
    /// Whether the disc carries local points.
    pub points: bool,
    pub invariant: Option<Invariant>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InvariantCertificate {
    /// `a` is a square in Q_v (or positive at the real place): the algebra
    /// splits and every point has invariant 0.
    Split,
    /// One sample in each interval cut out by the real roots of `P`.
    RealSamples { samples: Vec<RealSample> },
    /// Disc leaves with their symbols. When `stats.complete` holds they
    /// cover P^1(Q_p); otherwise the walk stopped once both values appeared.
    Discs { stats: ExploreStats, leaves: Vec<InvariantLeaf> },
}

/// The invariants attained on Q_v-points of the surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantSet {
    pub place: Place,
    pub values: BTreeSet<Invariant>,
    pub certificate: InvariantCertificate,
}

pub fn invariant_set(c: &QuaternionClass, v: &Place) -> Result<InvariantSet> {
    invariant_set_with(c, v, crate::chatelet::local::DEFAULT_DEPTH_CAP)
}

pub fn invariant_set_with(c: &QuaternionClass, v: &Place, depth_cap: u32) -> Result<InvariantSet> {
    let split = match v {
        Place::Real => c.a.is_positive(),
        Place::Finite(_) => is_local_square(&c.a, v)?,
    };
    if split {
        return Ok(InvariantSet {
            place: v.clone(),
            values: [Invariant::Zero].into_iter().collect(),
            certificate: InvariantCertificate::Split,
        });
    }
    match v {
        Place::Real => Ok(real_set(c)),
        Place::Finite(p) => finite_set(c, p, depth_cap),
    }
}

fn real_samples(c: &QuaternionClass) -> Vec<RealSample> {
    let p = &c.p1 * &c.p2;
    let roots = isolate_real_roots(&p, &Rational::new(1.into(), 16.into()));
    gap_samples(&roots)
        .into_iter()
        .map(|x| {
            let p_positive = p.eval(&x).is_positive();
            // a < 0 here, so (a, t)_R = sign(t)
            let invariant = p_positive.then(|| {
                if c.p1.eval(&x).is_positive() {
                    Invariant::Zero
                } else {
                    Invariant::Half
                }
            });
            RealSample { x, p_positive, invariant }
        })
        .collect()
}

fn real_set(c: &QuaternionClass) -> InvariantSet {
    let samples = real_samples(c);
    let values = samples.iter().filter_map(|s| s.invariant).collect();
    InvariantSet { place: Place::Real, values, certificate: InvariantCertificate::RealSamples { samples } }
}

fn leaf_symbols(a: &num_bigint::BigInt, place: &Place, status: &DiscStatus) -> Result<(bool, Option<Invariant>)> {
    match status {
        DiscStatus::Stable { values } => {
            let points = hilbert_symbol_int(a, &(&values[0] * &values[1]), place)? == 1;
            let inv = Invariant::from_symbol(hilbert_symbol_int(a, &values[0], place)?);
            Ok((points, points.then_some(inv)))
        }
        DiscStatus::ContainsRoot { factor, values, .. } => {
            let other = &values[1 - factor];
            Ok((true, Some(Invariant::from_symbol(hilbert_symbol_int(a, other, place)?))))
        }
        DiscStatus::Refines => unreachable!("leaves are resolved"),
    }
}

fn finite_set(c: &QuaternionClass, p: &Prime, depth_cap: u32) -> Result<InvariantSet> {
    let place = Place::Finite(p.clone());
    let polys = c.chart_polys();
    let a = square_class_integer(&c.a);
    let mut leaves = Vec::new();
    let mut values = BTreeSet::new();
    let stats = explore(&polys, p, depth_cap, |disc, status| {
        let (points, invariant) = leaf_symbols(&a, &place, status)?;
        values.extend(invariant);
        leaves.push(InvariantLeaf { leaf: LeafRecord { disc: disc.clone(), status: status.clone() }, points, invariant });
        Ok(if values.len() == 2 { ControlFlow::Break(()) } else { ControlFlow::Continue(()) })
    })?;
    Ok(InvariantSet { place, values, certificate: InvariantCertificate::Discs { stats, leaves } })
}

pub fn verify_invariant_set(c: &QuaternionClass, set: &InvariantSet) -> Result<()> {
    let place = &set.place;
    let fail = |m: String| Error::VerificationFailed { location: format!("invariant set at {place}"), message: m };
    match (&set.certificate, place) {
        (InvariantCertificate::Split, _) => {
            let split = match place {
                Place::Real => c.a.is_positive(),
                Place::Finite(_) => is_local_square(&c.a, place)?,
            };
            if !split || set.values != [Invariant::Zero].into_iter().collect() {
                return Err(fail("the algebra does not split here".into()));
            }
        }
        (InvariantCertificate::RealSamples { samples }, Place::Real) => {
            if c.a.is_positive() || *samples != real_samples(c) {
                return Err(fail("real samples do not match".into()));
            }
            let values: BTreeSet<Invariant> = samples.iter().filter_map(|s| s.invariant).collect();
            if values != set.values {
                return Err(fail("values differ from the samples".into()));
            }
        }
        (InvariantCertificate::Discs { stats, leaves }, Place::Finite(p)) => {
            let polys = c.chart_polys();
            let a = square_class_integer(&c.a);
            let mut values = BTreeSet::new();
            for l in leaves {
                verify_leaf(&polys, p, &l.leaf)?;
                let (points, invariant) = leaf_symbols(&a, place, &l.leaf.status)?;
                if points != l.points || invariant != l.invariant {
                    return Err(fail(format!("symbols at disc {} do not match", l.leaf.disc.center)));
                }
                values.extend(invariant);
            }
            if values != set.values {
                return Err(fail("values differ from the leaves".into()));
            }
            if stats.complete {
                let records: Vec<LeafRecord> = leaves.iter().map(|l| l.leaf.clone()).collect();
                verify_cover(&records, p)?;
            } else if values.len() != 2 {
                return Err(fail("an incomplete walk must exhibit both values".into()));
            }
        }
        _ => return Err(fail("certificate kind does not match the place".into())),
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    EmptyBrauerSet,
    NoObstructionFromThisClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionVerdict {
    pub surface: ChateletSurface,
    pub class: QuaternionClass,
    pub sets: Vec<InvariantSet>,
    pub sum_set: BTreeSet<Invariant>,
    pub conclusion: Conclusion,
}

fn sum_and_conclusion(sets: &[InvariantSet]) -> (BTreeSet<Invariant>, Conclusion) {
    let zero: BTreeSet<Invariant> = [Invariant::Zero].into_iter().collect();
    let sum = sets.iter().filter(|s| s.values != zero).fold(zero.clone(), |acc, s| minkowski_sum(&acc, &s.values));
    let conclusion = if sum.contains(&Invariant::Zero) {
        Conclusion::NoObstructionFromThisClass
    } else {
        Conclusion::EmptyBrauerSet
    };
    (sum, conclusion)
}

pub fn obstruction_verdict(c: &QuaternionClass) -> Result<ObstructionVerdict> {
    obstruction_verdict_with(c, crate::chatelet::local::DEFAULT_DEPTH_CAP)
}

pub fn obstruction_verdict_with(c: &QuaternionClass, depth_cap: u32) -> Result<ObstructionVerdict> {
    let places: Vec<Place> = c.relevant_places().into_iter().collect();
    let sets = places.par_iter().map(|v| invariant_set_with(c, v, depth_cap)).collect::<Result<Vec<_>>>()?;
    if let Some(s) = sets.iter().find(|s| s.values.is_empty()) {
        return Err(Error::NotEverywhereLocallySolvable(s.place.to_string()));
    }
    let (sum_set, conclusion) = sum_and_conclusion(&sets);
    Ok(ObstructionVerdict { surface: c.surface(), class: c.clone(), sets, sum_set, conclusion })
}

pub fn verify_obstruction_verdict(v: &ObstructionVerdict) -> Result<()> {
    let fail = |m: &str| Error::VerificationFailed { location: "obstruction verdict".into(), message: m.into() };
    if v.class.surface() != v.surface {
        return Err(fail("class does not belong to the surface"));
    }
    let places: Vec<Place> = v.sets.iter().map(|s| s.place.clone()).collect();
    let expected: Vec<Place> = v.class.relevant_places().into_iter().collect();
    if places != expected {
        return Err(fail("invariant sets do not cover the relevant places"));
    }
    for s in &v.sets {
        if s.values.is_empty() {
            return Err(fail("empty local set"));
        }
        verify_invariant_set(&v.class, s)?;
    }
    if sum_and_conclusion(&v.sets) != (v.sum_set.clone(), v.conclusion) {
        return Err(fail("sum set or conclusion does not follow from the local sets"));
    }
    Ok(())
}

fn set_string(s: &BTreeSet<Invariant>) -> String {
    let items: Vec<String> = s.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

impl ObstructionVerdict {
    /// A plain-text table of places, local sets and their effect on the sum.
    pub fn explain(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "surface  {}", self.surface);
        let _ = writeln!(out, "class    {}", self.class);
        let _ = writeln!(out, "{:<10} {:<12} contribution", "place", "set");
        let zero: BTreeSet<Invariant> = [Invariant::Zero].into_iter().collect();
        for s in &self.sets {
            let note = if s.values == zero { "none (pruned)".to_string() } else { set_string(&s.values) };
            let _ = writeln!(out, "{:<10} {:<12} {}", s.place.to_string(), set_string(&s.values), note);
        }
        let _ = writeln!(out, "sum set  {}", set_string(&self.sum_set));
        let _ = writeln!(
            out,
            "verdict  {}",
            match self.conclusion {
                Conclusion::EmptyBrauerSet => "empty Brauer-Manin set",
                Conclusion::NoObstructionFromThisClass => "no obstruction from this class",
            }
        );
        out
    }
}
