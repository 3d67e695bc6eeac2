//! Exact real-root isolation by Sturm sequences.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::rational::{serde_rational, Rational};

fn sign(x: &Rational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Sturm sequence of the squarefree part of a nonzero polynomial.
#[derive(Clone, Debug)]
pub struct Sturm {
    seq: Vec<Poly>,
}

impl Sturm {
    pub fn new(p: &Poly) -> Self {
        assert!(!p.is_zero(), "Sturm sequence of zero");
        let g = p.gcd(&p.derivative());
        let base = p.div_rem(&g).0;
        let mut seq = vec![base.clone(), base.derivative()];
        while !seq[seq.len() - 1].is_zero() {
            let n = seq.len();
            let r = seq[n - 2].div_rem(&seq[n - 1]).1;
            seq.push(-&r);
        }
        seq.pop();
        Sturm { seq }
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        variations(self.seq.iter().map(|p| sign(&p.eval(x))))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        variations(self.seq.iter().map(|p| {
            let s = sign(&p.leading());
            let odd = p.degree().unwrap_or(0) % 2 == 1;
            if !positive && odd {
                -s
            } else {
                s
            }
        }))
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count_in(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations_at(lo).saturating_sub(self.variations_at(hi))
    }

    /// Number of distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false).saturating_sub(self.variations_at_infinity(true))
    }
}

/// An isolating interval: the root lies in `(lo, hi]`, or equals both
/// endpoints when they coincide.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootInterval {
    #[serde(with = "serde_rational")]
    pub lo: Rational,
    #[serde(with = "serde_rational")]
    pub hi: Rational,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

/// Cauchy bound: every real root has absolute value below it.
pub fn root_bound(p: &Poly) -> Rational {
    let lc = p.leading().abs();
    let m = p.coeffs().iter().map(|c| c.abs() / &lc).fold(Rational::zero(), |a, b| if b > a { b } else { a });
    m + Rational::one()
}

/// Distinct real roots of `p`, each isolated in an interval of width at
/// most `width`, in increasing order. Rational roots are reported exactly.
pub fn isolate_real_roots(p: &Poly, width: &Rational) -> Vec<RootInterval> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let rational = p.rational_roots();
    let sturm = Sturm::new(p);
    let b = root_bound(p);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = sturm.count_in(&lo, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 && (&hi - &lo) <= *width {
            match rational.iter().find(|r| **r > lo && **r <= hi) {
                Some(r) => out.push(RootInterval { lo: r.clone(), hi: r.clone() }),
                None => out.push(RootInterval { lo, hi }),
            }
            continue;
        }
        // split away from rational roots so every root stays interior
        let mut k = 2i64;
        let mid = loop {
            let m = (&lo * Rational::from_integer(BigInt::from(k - 1)) + &hi) / Rational::from_integer(BigInt::from(k));
            if !rational.contains(&m) {
                break m;
            }
            k += 1;
        };
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// The rational with least denominator (then least absolute numerator)
/// in the open interval `(lo, hi)`; `hi = None` means +infinity.
pub fn simplest_between(lo: &Rational, hi: Option<&Rational>) -> Rational {
    if let Some(h) = hi {
        assert!(lo < h, "empty interval");
    }
    if lo.is_negative() {
        match hi {
            None => return Rational::zero(),
            Some(h) if h.is_positive() => return Rational::zero(),
            Some(h) => return -simplest_between(&-h, Some(&-lo)),
        }
    }
    let f = lo.floor();
    let next = &f + Rational::one();
    if hi.map_or(true, |h| next < *h) {
        return next;
    }
    let h = hi.expect("bounded by the branch above");
    // lo and hi share the integer part f, and hi <= f + 1
    let lo_frac = lo - &f;
    let hi_frac = h - &f;
    let new_lo = Rational::one() / hi_frac;
    let new_hi = if lo_frac.is_zero() { None } else { Some(Rational::one() / lo_frac) };
    f + Rational::one() / simplest_between(&new_lo, new_hi.as_ref())
}

/// One simple rational point in each open interval cut out by the real
/// roots of `p` (including the two unbounded ones), in increasing order.
pub fn gap_samples(roots: &[RootInterval]) -> Vec<Rational> {
    if roots.is_empty() {
        return vec![Rational::zero()];
    }
    let mut out = Vec::with_capacity(roots.len() + 1);
    out.push(-simplest_between(&-&roots[0].lo, None));
    for w in roots.windows(2) {
        if w[0].hi == w[1].lo {
            // a shared bisection point, never a root
            out.push(w[0].hi.clone());
        } else {
            out.push(simplest_between(&w[0].hi, Some(&w[1].lo)));
        }
    }
    out.push(simplest_between(&roots[roots.len() - 1].hi, None));
    out
}
