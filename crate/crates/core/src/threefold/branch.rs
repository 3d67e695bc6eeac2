//! The branch locus of the first projection `Z1 -> P^1`: the zeros of the
//! discriminant of `s1` as a binary quartic in `(w, x)`, a binary form of
//! degree 12 in `(u, v)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{BidegreeForm, ProjPoint};
use crate::arith::exact::{sylvester_resultant, ExactRing};
use crate::arith::poly::Poly;
use crate::arith::real::Sturm;
use crate::arith::rational::Rational;

pub const BRANCH_FORM_DEGREE: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchRoot {
    pub point: ProjPoint,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchLocus {
    /// The form dehomogenized at `v = 1`, as a polynomial in `T = u/v`.
    pub form: Poly,
    pub form_degree: usize,
    /// Roots counted with multiplicity over the algebraic closure.
    pub total_roots: usize,
    pub distinct_roots: usize,
    pub distinct_real_roots: usize,
    pub rational_roots: Vec<BranchRoot>,
}

impl BranchLocus {
    /// The form evaluated at `(u, v)`.
    pub fn value_at(&self, t: &ProjPoint) -> Rational {
        let (u, v) = (Rational::from_integer(t.u().clone()), Rational::from_integer(t.v().clone()));
        let mut acc = Rational::zero();
        for (i, c) in self.form.coeffs().iter().enumerate() {
            acc += c * pow(&u, i) * pow(&v, self.form_degree - i);
        }
        acc
    }

    pub fn contains(&self, t: &ProjPoint) -> bool {
        self.value_at(t).is_zero()
    }
}

fn pow(x: &Rational, e: usize) -> Rational {
    num_traits::pow(x.clone(), e)
}

/// `c_j(T) = T^2 P_inf_j + P_0_j`, the coefficients of `s1` at `(T : 1)`.
fn parametric_coefficients(b: &BidegreeForm) -> Vec<Poly> {
    (0..5).map(|j| Poly::new(vec![b.p_0().coeff(j), Rational::zero(), b.p_inf().coeff(j)])).collect()
}

/// `Disc_4(F) = Res_{4,3}(F, F_x) / c_4` with `F = sum c_j(T) x^j`.
pub fn branch_form(b: &BidegreeForm) -> Poly {
    let c = parametric_coefficients(b);
    let d: Vec<Poly> =
        (1..5).map(|j| c[j].scale(&Rational::from_integer(BigInt::from(j as u32)))).collect();
    sylvester_resultant(&c, &d).exact_div(&c[4])
}

fn multiplicity(p: &Poly, root: &Rational) -> usize {
    let lin = Poly::new(vec![-root, Rational::one()]);
    let mut q = p.clone();
    let mut m = 0;
    loop {
        let (quot, rem) = q.div_rem(&lin);
        if !rem.is_zero() {
            return m;
        }
        q = quot;
        m += 1;
    }
}

pub fn branch_locus(b: &BidegreeForm) -> BranchLocus {
    let form = branch_form(b);
    let deg = form.degree().expect("coprime separable quartics give a nonzero branch form");
    let at_infinity = BRANCH_FORM_DEGREE - deg;
    let squarefree = form.div_rem(&form.gcd(&form.derivative())).0;
    let finite_distinct = squarefree.degree().unwrap_or(0);
    let finite_real = if finite_distinct == 0 { 0 } else { Sturm::new(&form).count_all() };
    let mut rational_roots: Vec<BranchRoot> = form
        .rational_roots()
        .into_iter()
        .map(|r| BranchRoot {
            point: ProjPoint::new(r.numer().clone(), r.denom().clone()).expect("denominator is nonzero"),
            multiplicity: multiplicity(&form, &r),
        })
        .collect();
    let extra = usize::from(at_infinity > 0);
    if at_infinity > 0 {
        rational_roots.push(BranchRoot { point: ProjPoint::infinity(), multiplicity: at_infinity });
    }
    BranchLocus {
        form,
        form_degree: BRANCH_FORM_DEGREE,
        total_roots: BRANCH_FORM_DEGREE,
        distinct_roots: finite_distinct + extra,
        distinct_real_roots: finite_real + extra,
        rational_roots,
    }
}
