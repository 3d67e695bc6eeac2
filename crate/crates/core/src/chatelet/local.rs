//! Local solvability at a single place, with replayable certificates.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::disc::{explore, MAX_ENUMERATED_PRIME, verify_cover, verify_leaf, ChartPolys, DiscStatus, ExploreStats, LeafRecord, ResidueDisc};
use super::ChateletSurface;
use crate::arith::hensel::{examine_disc, DiscRoots};
use crate::arith::place::{Place, Prime};
use crate::arith::rational::{int, serde_rational, Rational};
use crate::arith::real::{gap_samples, isolate_real_roots, Sturm};
use crate::arith::symbols::{hilbert_symbol, hilbert_symbol_int, is_local_square};
use crate::error::{Error, Result};

pub const DEFAULT_DEPTH_CAP: u32 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalOptions {
    pub depth_cap: u32,
    /// Run the disc search even where a shortcut applies.
    pub force_search: bool,
}

impl Default for LocalOptions {
    fn default() -> Self {
        LocalOptions { depth_cap: DEFAULT_DEPTH_CAP, force_search: false }
    }
}

/// A local point, certified by x-data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `P(x) = 0`: the point `(x, 0, 0)` is rational.
    RationalRoot {
        #[serde(with = "serde_rational")]
        x: Rational,
    },
    /// Real `y, z` exist because `P(x) > 0` or `a > 0`.
    Real {
        #[serde(with = "serde_rational")]
        x: Rational,
        #[serde(with = "serde_rational")]
        value: Rational,
    },
    /// `(a, P(x))_p = +1`, so `y^2 - a z^2 = P(x)` has a Q_p-solution.
    Norm {
        #[serde(with = "serde_rational")]
        x: Rational,
        #[serde(with = "serde_rational")]
        value: Rational,
        disc: Option<ResidueDisc>,
    },
    /// A Hensel-certified root of `P` in the disc; `y = z = 0`.
    HenselRoot { disc: ResidueDisc, value_valuation: Option<u64>, derivative_valuation: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shortcut {
    /// `a > 0`: the form `y^2 - a z^2` is indefinite over R.
    APositive,
    /// `a` is a square in Q_p, so the form represents everything.
    ALocalSquare,
    /// The place lies outside the bad set.
    GoodReduction,
    /// `p` is odd, too large to enumerate residues, and `a` is a p-adic
    /// unit, so `y^2 - a z^2` represents every unit; the witness is a
    /// small `x` with `(a, P(x))_p = +1`.
    UnitConic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Shortcut { reason: Shortcut },
    /// Sign data over R. With no real roots and `P(0) < 0`, `P < 0`
    /// everywhere.
    RealSigns {
        real_roots: usize,
        #[serde(with = "serde_rational")]
        value_at_zero: Rational,
    },
    /// Leaves examined in order. When the verdict is negative they form a
    /// cover of P^1(Q_p).
    DiscSearch { stats: ExploreStats, leaves: Vec<LeafRecord> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalVerdict {
    pub place: Place,
    pub solvable: bool,
    pub witness: Option<Witness>,
    pub certificate: Certificate,
}

pub fn is_locally_solvable(s: &ChateletSurface, v: &Place) -> Result<LocalVerdict> {
    is_locally_solvable_with(s, v, &LocalOptions::default())
}

pub fn is_locally_solvable_with(s: &ChateletSurface, v: &Place, opts: &LocalOptions) -> Result<LocalVerdict> {
    match v {
        Place::Real => Ok(real_verdict(s)),
        Place::Finite(p) => finite_verdict(s, p, opts),
    }
}

fn real_verdict(s: &ChateletSurface) -> LocalVerdict {
    let p = s.poly();
    let samples = gap_samples(&isolate_real_roots(p, &Rational::new(1.into(), 16.into())));
    let real_roots = Sturm::new(p).count_all();
    if s.a().is_positive() {
        let x = samples.iter().find(|x| !p.eval(x).is_zero()).cloned().unwrap_or_default();
        return LocalVerdict {
            place: Place::Real,
            solvable: true,
            witness: Some(Witness::Real { value: p.eval(&x), x }),
            certificate: Certificate::Shortcut { reason: Shortcut::APositive },
        };
    }
    let certificate = Certificate::RealSigns { real_roots, value_at_zero: p.eval(&Rational::zero()) };
    let best = samples.iter().filter(|x| p.eval(x).is_positive()).min_by_key(|x| (x.abs(), x.is_negative()));
    match best {
        Some(x) => LocalVerdict {
            place: Place::Real,
            solvable: true,
            witness: Some(Witness::Real { x: x.clone(), value: p.eval(x) }),
            certificate,
        },
        None => LocalVerdict { place: Place::Real, solvable: false, witness: None, certificate },
    }
}

/// Looks for a small integer `x` with `(a, P(x))_p = +1` or `P(x) = 0`.
fn quick_witness(s: &ChateletSurface, p: &Prime) -> Option<Witness> {
    let place = Place::Finite(p.clone());
    (0..16).map(int).find_map(|x| {
        let value = s.poly().eval(&x);
        if value.is_zero() {
            Some(Witness::RationalRoot { x })
        } else if hilbert_symbol(s.a(), &value, &place).ok()? == 1 {
            Some(Witness::Norm { x, value, disc: None })
        } else {
            None
        }
    })
}

pub(crate) fn chart_polys(s: &ChateletSurface) -> ChartPolys {
    ChartPolys::new(&[(s.poly(), 4)])
}

fn finite_verdict(s: &ChateletSurface, p: &Prime, opts: &LocalOptions) -> Result<LocalVerdict> {
    let place = Place::Finite(p.clone());
    if !opts.force_search {
        let shortcut = if is_local_square(s.a(), &place)? {
            Some(Shortcut::ALocalSquare)
        } else if !s.bad_places().contains(&place) {
            Some(Shortcut::GoodReduction)
        } else if unit_conic_applies(s, p) {
            Some(Shortcut::UnitConic)
        } else {
            None
        };
        if let Some(reason) = shortcut {
            let witness = match quick_witness(s, p) {
                Some(w) => w,
                None if reason == Shortcut::UnitConic => {
                    return Err(Error::ResourceExhausted(format!("no small witness at {p} and residue enumeration mod {p}")))
                }
                None => disc_search(s, p, opts.depth_cap)?.witness.ok_or_else(|| {
                    Error::AssertionFailed(format!("shortcut at {p} claims points but the disc search found none"))
                })?,
            };
            return Ok(LocalVerdict {
                place,
                solvable: true,
                witness: Some(witness),
                certificate: Certificate::Shortcut { reason },
            });
        }
    }
    disc_search(s, p, opts.depth_cap)
}

fn unit_conic_applies(s: &ChateletSurface, p: &Prime) -> bool {
    !p.is_two()
        && p.as_u64().map_or(true, |q| q > MAX_ENUMERATED_PRIME)
        && crate::arith::symbols::valuation(s.a(), p) == Some(0)
}

fn disc_search(s: &ChateletSurface, p: &Prime, depth_cap: u32) -> Result<LocalVerdict> {
    let place = Place::Finite(p.clone());
    let polys = chart_polys(s);
    let a = s.a_int();
    let mut leaves = Vec::new();
    let mut witness = None;
    let stats = explore(&polys, p, depth_cap, |disc, status| {
        leaves.push(LeafRecord { disc: disc.clone(), status: status.clone() });
        match status {
            DiscStatus::Stable { values } => {
                if hilbert_symbol_int(&a, &values[0], &place)? == 1 {
                    let x = disc.sample_x(p);
                    witness = Some(Witness::Norm { value: s.poly().eval(&x), x, disc: Some(disc.clone()) });
                }
            }
            DiscStatus::ContainsRoot { value_valuation, derivative_valuation, .. } => {
                witness = Some(Witness::HenselRoot {
                    disc: disc.clone(),
                    value_valuation: *value_valuation,
                    derivative_valuation: *derivative_valuation,
                });
            }
            DiscStatus::Refines => unreachable!("leaves are resolved"),
        }
        Ok(if witness.is_some() { ControlFlow::Break(()) } else { ControlFlow::Continue(()) })
    })?;
    Ok(LocalVerdict {
        place,
        solvable: witness.is_some(),
        witness,
        certificate: Certificate::DiscSearch { stats, leaves },
    })
}

/// Verdicts at every bad place. Outside the bad set the surface is
/// solvable by good reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EverywhereLocal {
    pub solvable: bool,
    pub verdicts: BTreeMap<Place, LocalVerdict>,
}

impl EverywhereLocal {
    pub fn failing_places(&self) -> Vec<&Place> {
        self.verdicts.iter().filter(|(_, v)| !v.solvable).map(|(p, _)| p).collect()
    }
}

pub fn is_everywhere_locally_solvable(s: &ChateletSurface) -> Result<EverywhereLocal> {
    is_everywhere_locally_solvable_with(s, &LocalOptions::default())
}

pub fn is_everywhere_locally_solvable_with(s: &ChateletSurface, opts: &LocalOptions) -> Result<EverywhereLocal> {
    let places: Vec<Place> = s.bad_places().into_iter().collect();
    let verdicts = places
        .par_iter()
        .map(|v| is_locally_solvable_with(s, v, opts).map(|r| (v.clone(), r)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(EverywhereLocal { solvable: verdicts.values().all(|v| v.solvable), verdicts })
}

/// Re-checks a verdict from the surface alone, without trusting the
/// search that produced it.
pub fn verify_local_verdict(s: &ChateletSurface, verdict: &LocalVerdict) -> Result<()> {
    let place = &verdict.place;
    let fail = |m: String| Error::VerificationFailed { location: format!("local verdict at {place}"), message: m };
    if verdict.solvable {
        let w = verdict.witness.as_ref().ok_or_else(|| fail("solvable verdict without a witness".into()))?;
        verify_witness(s, place, w).map_err(|e| match e {
            Error::VerificationFailed { .. } => e,
            other => fail(other.to_string()),
        })?;
    } else if verdict.witness.is_some() {
        return Err(fail("unsolvable verdict carries a witness".into()));
    }
    match (&verdict.certificate, place) {
        (Certificate::Shortcut { reason }, _) => {
            if !verdict.solvable {
                return Err(fail("a shortcut can only certify solvability".into()));
            }
            let ok = match (reason, place) {
                (Shortcut::APositive, Place::Real) => s.a().is_positive(),
                (Shortcut::ALocalSquare, Place::Finite(_)) => is_local_square(s.a(), place)?,
                (Shortcut::GoodReduction, Place::Finite(_)) => !s.bad_places().contains(place),
                (Shortcut::UnitConic, Place::Finite(p)) => {
                    unit_conic_applies(s, p) && matches!(verdict.witness, Some(Witness::Norm { .. }))
                }
                _ => false,
            };
            if !ok {
                return Err(fail(format!("shortcut {reason:?} does not apply")));
            }
        }
        (Certificate::RealSigns { real_roots, value_at_zero }, Place::Real) => {
            let p = s.poly();
            if Sturm::new(p).count_all() != *real_roots || p.eval(&Rational::zero()) != *value_at_zero {
                return Err(fail("sign data does not match P".into()));
            }
            if !verdict.solvable && (*real_roots != 0 || value_at_zero.is_positive() || s.a().is_positive()) {
                return Err(fail("sign data does not force P < 0 with a < 0".into()));
            }
        }
        (Certificate::DiscSearch { leaves, .. }, Place::Finite(p)) => {
            let polys = chart_polys(s);
            let a = s.a_int();
            for leaf in leaves {
                verify_leaf(&polys, p, leaf)?;
            }
            if !verdict.solvable {
                verify_cover(leaves, p)?;
                for leaf in leaves {
                    match &leaf.status {
                        DiscStatus::Stable { values } if hilbert_symbol_int(&a, &values[0], place)? == -1 => {}
                        _ => return Err(fail(format!("leaf at {} is not an obstruction", leaf.disc.center))),
                    }
                }
            }
        }
        _ => return Err(fail("certificate kind does not match the place".into())),
    }
    Ok(())
}

fn verify_witness(s: &ChateletSurface, place: &Place, w: &Witness) -> Result<()> {
    let fail = |m: &str| Error::VerificationFailed { location: format!("witness at {place}"), message: m.into() };
    let p = s.poly();
    match (w, place) {
        (Witness::RationalRoot { x }, _) => {
            if !p.eval(x).is_zero() {
                return Err(fail("P(x) is not zero"));
            }
        }
        (Witness::Real { x, value }, Place::Real) => {
            if p.eval(x) != *value || !(value.is_positive() || (s.a().is_positive() && !value.is_zero())) {
                return Err(fail("real witness does not give a point"));
            }
        }
        (Witness::Norm { x, value, disc }, Place::Finite(prime)) => {
            if p.eval(x) != *value || value.is_zero() || hilbert_symbol(s.a(), value, place)? != 1 {
                return Err(fail("(a, P(x)) is not +1"));
            }
            if let Some(d) = disc {
                if d.sample_x(prime) != *x {
                    return Err(fail("x does not lie in the recorded disc"));
                }
            }
        }
        (Witness::HenselRoot { disc, value_valuation, derivative_valuation }, Place::Finite(prime)) => {
            let polys = chart_polys(s);
            match examine_disc(&polys.chart(disc.chart)[0], prime, &disc.center, disc.depth) {
                DiscRoots::Certified { value_valuation: v, derivative_valuation: m, .. }
                    if v == *value_valuation && m == *derivative_valuation => {}
                _ => return Err(fail("Hensel criterion fails")),
            }
        }
        _ => return Err(fail("witness kind does not match the place")),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::Poly;
    use crate::arith::rational::rat;

    fn surface(a: i64, p: &[i64]) -> ChateletSurface {
        ChateletSurface::new(int(a), Poly::from_ints(p)).unwrap()
    }

    #[test]
    fn iskovskikh_is_everywhere_locally_solvable() {
        let s = ChateletSurface::iskovskikh();
        let r = is_locally_solvable(&s, &Place::Real).unwrap();
        assert!(r.solvable);
        assert_eq!(r.witness, Some(Witness::Real { x: rat(3, 2), value: rat(3, 16) }));
        let e = is_everywhere_locally_solvable(&s).unwrap();
        assert!(e.solvable);
        for v in e.verdicts.values() {
            verify_local_verdict(&s, v).unwrap();
        }
        let seven = Place::prime(7).unwrap();
        let v = is_locally_solvable(&s, &seven).unwrap();
        assert_eq!(v.certificate, Certificate::Shortcut { reason: Shortcut::GoodReduction });
        let forced = LocalOptions { force_search: true, ..Default::default() };
        let v = is_locally_solvable_with(&s, &seven, &forced).unwrap();
        assert!(v.solvable);
        assert!(matches!(v.certificate, Certificate::DiscSearch { .. }));
        verify_local_verdict(&s, &v).unwrap();
    }

    #[test]
    fn negative_definite_fails_over_r() {
        let s = surface(-1, &[-1, 0, 0, 0, -1]);
        let r = is_locally_solvable(&s, &Place::Real).unwrap();
        assert!(!r.solvable);
        verify_local_verdict(&s, &r).unwrap();
        let e = is_everywhere_locally_solvable(&s).unwrap();
        assert!(!e.solvable);
        // the surface fails at 2 as well; the real place sorts first
        assert_eq!(e.failing_places()[0], &Place::Real);
    }

    #[test]
    fn p_adic_failure_is_certified() {
        // y^2 + z^2 = 3(x^4 + x + 2): x^4 + x + 2 has no root mod 3, so
        // v_3 of the right side is odd everywhere
        let s = surface(-1, &[6, 3, 0, 0, 3]);
        let v = is_locally_solvable(&s, &Place::prime(3).unwrap()).unwrap();
        assert!(!v.solvable);
        verify_local_verdict(&s, &v).unwrap();
        let mut tampered = v.clone();
        if let Certificate::DiscSearch { leaves, .. } = &mut tampered.certificate {
            leaves.pop();
        }
        assert!(verify_local_verdict(&s, &tampered).is_err());
    }

    #[test]
    fn witnesses_must_match() {
        let s = ChateletSurface::iskovskikh();
        let v = LocalVerdict {
            place: Place::Real,
            solvable: true,
            witness: Some(Witness::Real { x: int(0), value: int(-6) }),
            certificate: Certificate::RealSigns { real_roots: 4, value_at_zero: int(-6) },
        };
        assert!(verify_local_verdict(&s, &v).is_err());
    }

    #[test]
    fn cubic_surfaces_have_a_point_at_infinity() {
        let s = surface(-1, &[-1, 0, 0, 3]);
        for q in [2, 3] {
            let forced = LocalOptions { force_search: true, ..Default::default() };
            let v = is_locally_solvable_with(&s, &Place::prime(q).unwrap(), &forced).unwrap();
            assert!(v.solvable);
            verify_local_verdict(&s, &v).unwrap();
        }
    }

    #[test]
    fn large_bad_primes_use_the_unit_conic() {
        let s = surface(2, &[10, -1, 2, 5, 5]);
        let p = Place::prime(7027133).unwrap();
        assert!(s.bad_places().contains(&p));
        let v = is_locally_solvable(&s, &p).unwrap();
        assert!(v.solvable);
        assert_eq!(v.certificate, Certificate::Shortcut { reason: Shortcut::UnitConic });
        verify_local_verdict(&s, &v).unwrap();
        // too large to enumerate and not covered by the shortcut
        let opts = LocalOptions { force_search: true, ..LocalOptions::default() };
        assert!(matches!(is_locally_solvable_with(&s, &p, &opts), Err(Error::ResourceExhausted(_))));
    }
}
