//! Smoothness of the degeneracy curve `Z1: s1 = 0` in `P^1 x P^1`.
//!
//! On each affine chart `s1` becomes `f(s, t)`, quadratic in the base
//! coordinate `s` and quartic in the fiber coordinate `t`. A singular point
//! is a common zero of `f`, `f_s`, `f_t`; any such zero kills
//! `Res_t(Res_s(f, f_s), Res_s(f, f_t))`, so a nonzero value certifies the
//! chart.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::bipoly::BiPoly;
use super::BidegreeForm;
use crate::arith::poly::Poly;
use crate::arith::rational::{serde_rational, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Chart {
    /// `v = 1, w = 1`: `f = s^2 P_inf(t) + P_0(t)`.
    #[serde(rename = "v=1,w=1")]
    VW,
    /// `u = 1, w = 1`: `f = P_inf(t) + s^2 P_0(t)`.
    #[serde(rename = "u=1,w=1")]
    UW,
    /// `v = 1, x = 1`, with `t = w`.
    #[serde(rename = "v=1,x=1")]
    VX,
    /// `u = 1, x = 1`, with `t = w`.
    #[serde(rename = "u=1,x=1")]
    UX,
}

impl Chart {
    pub const ALL: [Chart; 4] = [Chart::VW, Chart::UW, Chart::VX, Chart::UX];

    pub fn name(self) -> &'static str {
        match self {
            Chart::VW => "v=1,w=1",
            Chart::UW => "u=1,w=1",
            Chart::VX => "v=1,x=1",
            Chart::UX => "u=1,x=1",
        }
    }
}

/// Which variable the inner resultants eliminate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Elimination {
    BaseFirst,
    FiberFirst,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartCertificate {
    pub chart: Chart,
    pub elimination: Elimination,
    /// `Res(f, f_s)` or `Res(f, f_t)`, whichever eliminates first.
    pub r1: Poly,
    pub r2: Poly,
    #[serde(with = "serde_rational")]
    pub resultant: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothnessCertificate {
    pub charts: Vec<ChartCertificate>,
}

/// `f` on a chart, as rows indexed by the power of `s`.
fn chart_poly(p_inf: &Poly, p_0: &Poly, chart: Chart) -> BiPoly {
    let (pi, p0) = match chart {
        Chart::VW | Chart::UW => (p_inf.clone(), p_0.clone()),
        Chart::VX | Chart::UX => (p_inf.reversed(4), p_0.reversed(4)),
    };
    match chart {
        Chart::VW | Chart::VX => BiPoly::new(vec![p0, Poly::zero(), pi]),
        Chart::UW | Chart::UX => BiPoly::new(vec![pi, Poly::zero(), p0]),
    }
}

fn chain(f: &BiPoly, elimination: Elimination) -> (Poly, Poly, Rational) {
    let f = match elimination {
        Elimination::BaseFirst => f.clone(),
        Elimination::FiberFirst => f.transpose(),
    };
    // outer is the variable eliminated first
    let r1 = f.resultant_outer(&f.outer_derivative());
    let r2 = f.resultant_outer(&f.inner_derivative());
    let res = if r1.is_zero() || r2.is_zero() { Rational::zero() } else { r1.resultant(&r2) };
    (r1, r2, res)
}

fn audit_chart(p_inf: &Poly, p_0: &Poly, chart: Chart) -> Result<ChartCertificate> {
    let f = chart_poly(p_inf, p_0, chart);
    let mut witness = None;
    for elimination in [Elimination::BaseFirst, Elimination::FiberFirst] {
        let (r1, r2, resultant) = chain(&f, elimination);
        if !resultant.is_zero() {
            return Ok(ChartCertificate { chart, elimination, r1, r2, resultant });
        }
        if witness.is_none() {
            let var = if elimination == Elimination::BaseFirst { "t" } else { "s" };
            witness = Some(format!("common zero with {var} a root of {} (over Q[{var}] modulo it)", r1.gcd(&r2)));
        }
    }
    Err(Error::SmoothnessFails { chart: chart.name().into(), witness: witness.unwrap_or_default() })
}

/// The audit for the binary quartics `P_inf(w, x)`, `P_0(w, x)` given in
/// the `w = 1` chart with formal degree 4.
pub fn audit_forms(p_inf: &Poly, p_0: &Poly) -> Result<SmoothnessCertificate> {
    let charts = Chart::ALL.iter().map(|&c| audit_chart(p_inf, p_0, c)).collect::<Result<_>>()?;
    Ok(SmoothnessCertificate { charts })
}

pub fn degeneracy_smoothness_audit(b: &BidegreeForm) -> Result<SmoothnessCertificate> {
    audit_forms(b.p_inf(), b.p_0())
}

/// Recomputes every resultant chain of `cert` and checks it is nonzero.
pub fn verify_smoothness_certificate(b: &BidegreeForm, cert: &SmoothnessCertificate) -> Result<()> {
    let fail = |chart: Chart, message: String| Error::VerificationFailed {
        location: format!("smoothness chart {}", chart.name()),
        message,
    };
    for chart in Chart::ALL {
        let c = cert
            .charts
            .iter()
            .find(|c| c.chart == chart)
            .ok_or_else(|| fail(chart, "missing from certificate".into()))?;
        let (r1, r2, resultant) = chain(&chart_poly(b.p_inf(), b.p_0(), chart), c.elimination);
        if r1 != c.r1 || r2 != c.r2 || resultant != c.resultant {
            return Err(fail(chart, "recomputed resultants differ".into()));
        }
        if resultant.is_zero() {
            return Err(fail(chart, "resultant vanishes".into()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::threefold::ledger_instance;

    #[test]
    fn ledger_instance_is_smooth() {
        let b = ledger_instance();
        let cert = degeneracy_smoothness_audit(&b).unwrap();
        assert_eq!(cert.charts.len(), 4);
        for c in &cert.charts {
            assert_eq!(c.elimination, Elimination::BaseFirst);
            assert!(!c.resultant.is_zero());
        }
        verify_smoothness_certificate(&b, &cert).unwrap();
        let mut bad = cert.clone();
        bad.charts[2].resultant += Rational::from_integer(1.into());
        assert!(verify_smoothness_certificate(&b, &bad).is_err());
    }

    #[test]
    fn singular_curves_are_caught() {
        // P_inf = x^4 - 1 and P_0 = -(x^4 - 1) share all roots: Z1 contains
        // fibers of the second projection and meets itself
        let p = Poly::from_ints(&[-1, 0, 0, 0, 1]);
        let err = audit_forms(&p, &p.scale(&Rational::from_integer((-1).into()))).unwrap_err();
        assert!(matches!(err, Error::SmoothnessFails { .. }));
        // a double root of P_0 gives a singular point at u = 0
        let p_0 = Poly::from_ints(&[1, -2, 2, -2, 1]);
        let err = audit_forms(&Poly::from_ints(&[1, 0, 0, 0, 1]), &p_0).unwrap_err();
        match err {
            Error::SmoothnessFails { chart, .. } => assert_eq!(chart, "v=1,w=1"),
            other => panic!("unexpected {other}"),
        }
    }
}
