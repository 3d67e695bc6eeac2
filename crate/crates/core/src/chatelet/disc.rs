//! Residue discs covering P^1(Q_p) and their exhaustive refinement.
//!
//! The x-line is covered by the affine chart `x ∈ Z_p` and the chart at
//! infinity `w = 1/x ∈ pZ_p`. A list of integer polynomials is tracked
//! along the refinement; in the chart at infinity each is replaced by
//! `w^n F(1/w)` for an even formal degree `n`, which has the same square
//! class as `F(1/w)`.

use std::collections::HashSet;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::hensel::{eval_int, examine_disc, DiscRoots};
use crate::arith::place::Prime;
use crate::arith::poly::Poly;
use crate::arith::rational::{serde_bigint, Rational};
use crate::arith::symbols::valuation_int;
use crate::error::{Error, Result};

/// Largest prime whose residues are enumerated during refinement.
pub const MAX_ENUMERATED_PRIME: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Chart {
    Affine,
    Infinity,
}

/// `center + p^depth Z_p` in the given chart. Centers are reduced into
/// `[0, p^depth)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidueDisc {
    pub chart: Chart,
    #[serde(with = "serde_bigint")]
    pub center: BigInt,
    pub depth: u32,
}

impl ResidueDisc {
    /// The two top-level discs: `Z_p` and `{x : 1/x ∈ pZ_p}`.
    pub fn roots() -> [ResidueDisc; 2] {
        [
            ResidueDisc { chart: Chart::Affine, center: BigInt::zero(), depth: 0 },
            ResidueDisc { chart: Chart::Infinity, center: BigInt::zero(), depth: 1 },
        ]
    }

    pub fn children(&self, p: &Prime) -> Result<Vec<ResidueDisc>> {
        let ps = p
            .as_u64()
            .filter(|&q| q <= MAX_ENUMERATED_PRIME)
            .ok_or_else(|| Error::ResourceExhausted(format!("residue enumeration mod {p}")))?;
        let step = p.to_bigint().pow(self.depth);
        Ok((0..ps)
            .map(|r| ResidueDisc { chart: self.chart, center: &self.center + &step * r, depth: self.depth + 1 })
            .collect())
    }

    /// The ancestor at `depth`, which must not exceed `self.depth`.
    pub fn ancestor(&self, p: &Prime, depth: u32) -> ResidueDisc {
        let m = p.to_bigint().pow(depth);
        ResidueDisc { chart: self.chart, center: self.center.mod_floor(&m), depth }
    }

    /// A rational x-coordinate inside the disc (never the point at infinity).
    pub fn sample_x(&self, p: &Prime) -> Rational {
        match self.chart {
            Chart::Affine => Rational::from_integer(self.center.clone()),
            Chart::Infinity => {
                let w = if self.center.is_zero() { p.to_bigint().pow(self.depth) } else { self.center.clone() };
                Rational::new(BigInt::one(), w)
            }
        }
    }

    fn is_well_formed(&self, p: &Prime) -> bool {
        let m = p.to_bigint().pow(self.depth);
        let in_range = self.center >= BigInt::zero() && self.center < m;
        match self.chart {
            Chart::Affine => in_range,
            Chart::Infinity => in_range && self.depth >= 1 && (&self.center % p.to_bigint()).is_zero(),
        }
    }
}

/// Integer polynomials in both charts.
#[derive(Clone, Debug)]
pub struct ChartPolys {
    pub affine: Vec<Vec<BigInt>>,
    pub infinity: Vec<Vec<BigInt>>,
}

impl ChartPolys {
    /// Each `(F, n)` becomes `d^2 F` and `d^2 w^n F(1/w)` with integer
    /// coefficients; `n` must be even and at least `deg F`.
    pub fn new(polys: &[(&Poly, usize)]) -> Self {
        let affine = polys.iter().map(|(f, _)| f.square_scaled_integer()).collect();
        let infinity = polys
            .iter()
            .map(|(f, n)| {
                debug_assert!(n % 2 == 0);
                f.reversed(*n).square_scaled_integer()
            })
            .collect();
        ChartPolys { affine, infinity }
    }

    pub fn chart(&self, c: Chart) -> &[Vec<BigInt>] {
        match c {
            Chart::Affine => &self.affine,
            Chart::Infinity => &self.infinity,
        }
    }

    pub fn len(&self) -> usize {
        self.affine.len()
    }

    pub fn is_empty(&self) -> bool {
        self.affine.is_empty()
    }
}

/// `1 + t` is a square in Z_p once `v_p(t)` reaches this margin.
pub fn margin(p: &Prime) -> u64 {
    if p.is_two() {
        3
    } else {
        1
    }
}

/// Outcome of examining one disc.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DiscStatus {
    /// Every polynomial keeps the square class of its value at the center.
    Stable {
        #[serde(with = "crate::arith::rational::serde_bigint_vec")]
        values: Vec<BigInt>,
    },
    /// Polynomial `factor` has a root in the disc and all others are stable.
    ContainsRoot {
        factor: usize,
        value_valuation: Option<u64>,
        derivative_valuation: u64,
        #[serde(with = "crate::arith::rational::serde_bigint_vec")]
        values: Vec<BigInt>,
    },
    Refines,
}

fn is_stable(value: &BigInt, p: &Prime, depth: u32) -> bool {
    valuation_int(value, p).is_some_and(|v| v + margin(p) <= depth as u64)
}

pub fn classify(polys: &ChartPolys, p: &Prime, disc: &ResidueDisc) -> DiscStatus {
    let fs = polys.chart(disc.chart);
    let values: Vec<BigInt> = fs.iter().map(|f| eval_int(f, &disc.center)).collect();
    let stable: Vec<bool> = values.iter().map(|v| is_stable(v, p, disc.depth)).collect();
    if stable.iter().all(|&s| s) {
        return DiscStatus::Stable { values };
    }
    let unstable: Vec<usize> = (0..fs.len()).filter(|&i| !stable[i]).collect();
    if let [i] = unstable[..] {
        if let DiscRoots::Certified { value_valuation, derivative_valuation, .. } =
            examine_disc(&fs[i], p, &disc.center, disc.depth)
        {
            return DiscStatus::ContainsRoot { factor: i, value_valuation, derivative_valuation, values };
        }
    }
    DiscStatus::Refines
}

/// Counters reported alongside a refinement.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExploreStats {
    pub leaves: usize,
    pub max_depth: u32,
    /// False when the visitor stopped the walk before the cover was complete.
    pub complete: bool,
}

/// Depth-first refinement of both charts until every disc is a leaf.
/// Leaves are visited in a deterministic order; the visitor may stop the
/// walk early.
pub fn explore<F>(polys: &ChartPolys, p: &Prime, depth_cap: u32, mut visit: F) -> Result<ExploreStats>
where
    F: FnMut(&ResidueDisc, &DiscStatus) -> Result<ControlFlow<()>>,
{
    let mut stats = ExploreStats { complete: true, ..Default::default() };
    let mut stack: Vec<ResidueDisc> = ResidueDisc::roots().into_iter().rev().collect();
    while let Some(disc) = stack.pop() {
        let status = classify(polys, p, &disc);
        if status == DiscStatus::Refines {
            if disc.depth >= depth_cap {
                return Err(Error::PrecisionExhausted(format!(
                    "{:?} disc {} + {p}^{} undecided at the depth cap {depth_cap}",
                    disc.chart, disc.center, disc.depth
                )));
            }
            stack.extend(disc.children(p)?.into_iter().rev());
            continue;
        }
        stats.leaves += 1;
        stats.max_depth = stats.max_depth.max(disc.depth);
        if visit(&disc, &status)?.is_break() {
            stats.complete = false;
            break;
        }
    }
    Ok(stats)
}

/// A leaf as stored in a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafRecord {
    pub disc: ResidueDisc,
    #[serde(flatten)]
    pub status: DiscStatus,
}

/// Re-derives the status of a recorded leaf from scratch.
pub fn verify_leaf(polys: &ChartPolys, p: &Prime, leaf: &LeafRecord) -> Result<()> {
    let fail = |m: String| Error::VerificationFailed {
        location: format!("leaf {:?} {} + {p}^{}", leaf.disc.chart, leaf.disc.center, leaf.disc.depth),
        message: m,
    };
    if !leaf.disc.is_well_formed(p) {
        return Err(fail("malformed disc".into()));
    }
    let fs = polys.chart(leaf.disc.chart);
    match &leaf.status {
        DiscStatus::Stable { values } => {
            if values.len() != fs.len() {
                return Err(fail("wrong number of values".into()));
            }
            for (f, v) in fs.iter().zip(values) {
                if eval_int(f, &leaf.disc.center) != *v {
                    return Err(fail(format!("recorded value {v} does not match")));
                }
                if !is_stable(v, p, leaf.disc.depth) {
                    return Err(fail(format!("value {v} is not stable at this depth")));
                }
            }
            Ok(())
        }
        DiscStatus::ContainsRoot { factor, value_valuation, derivative_valuation, values } => {
            let f = fs.get(*factor).ok_or_else(|| fail("factor index out of range".into()))?;
            match examine_disc(f, p, &leaf.disc.center, leaf.disc.depth) {
                DiscRoots::Certified { value_valuation: v, derivative_valuation: m, .. }
                    if v == *value_valuation && m == *derivative_valuation => {}
                _ => return Err(fail("Hensel criterion does not hold as recorded".into())),
            }
            for (i, g) in fs.iter().enumerate() {
                let v = values.get(i).ok_or_else(|| fail("missing value".into()))?;
                if eval_int(g, &leaf.disc.center) != *v {
                    return Err(fail(format!("recorded value {v} does not match")));
                }
                if i != *factor && !is_stable(v, p, leaf.disc.depth) {
                    return Err(fail(format!("cofactor value {v} is not stable")));
                }
            }
            Ok(())
        }
        DiscStatus::Refines => Err(fail("a leaf cannot be unresolved".into())),
    }
}

/// Checks that the leaves are pairwise disjoint and cover P^1(Q_p).
pub fn verify_cover(leaves: &[LeafRecord], p: &Prime) -> Result<()> {
    let fail = |m: String| Error::VerificationFailed { location: format!("disc cover at {p}"), message: m };
    let keys: HashSet<(Chart, BigInt, u32)> =
        leaves.iter().map(|l| (l.disc.chart, l.disc.center.clone(), l.disc.depth)).collect();
    if keys.len() != leaves.len() {
        return Err(fail("duplicate leaf".into()));
    }
    let pb = p.to_bigint();
    let mut measure = Rational::zero();
    for l in leaves {
        if !l.disc.is_well_formed(p) {
            return Err(fail(format!("malformed disc {:?} {}", l.disc.chart, l.disc.center)));
        }
        let first = if l.disc.chart == Chart::Affine { 0 } else { 1 };
        for d in first..l.disc.depth {
            let a = l.disc.ancestor(p, d);
            if keys.contains(&(a.chart, a.center, d)) {
                return Err(fail(format!("overlapping leaves at {:?} {}", l.disc.chart, l.disc.center)));
            }
        }
        // the chart at infinity has total measure 1/p; rescale it to 1
        let shift = if l.disc.chart == Chart::Affine { l.disc.depth } else { l.disc.depth - 1 };
        measure += Rational::new(BigInt::one(), pb.pow(shift));
    }
    if measure != Rational::from_integer(BigInt::from(2)) {
        return Err(fail(format!("leaves do not cover both charts (total measure {measure} of 2)")));
    }
    Ok(())
}
