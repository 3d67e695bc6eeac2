//! Per-fiber verdicts over a list of base points.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{BidegreeForm, Fiber, ProjPoint};
use crate::arith::poly::Poly;
use crate::brauer::{obstruction_verdict_with, Conclusion, ObstructionVerdict, QuaternionClass};
use crate::chatelet::local::{is_everywhere_locally_solvable_with, EverywhereLocal, LocalOptions};
use crate::chatelet::search::{search_rational_points, RationalPoint};
use crate::chatelet::ChateletSurface;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    pub height: u64,
    pub local: LocalOptions,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { height: 100, local: LocalOptions::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FiberOutcome {
    Degenerate {
        quartic: Poly,
        reason: String,
    },
    Surface {
        surface: ChateletSurface,
        everywhere_locally_solvable: Option<bool>,
        local: Option<EverywhereLocal>,
        /// `(a, P1)` for a splitting `P = P1 P2` over Q, when there is one.
        class: Option<QuaternionClass>,
        conclusion: Option<Conclusion>,
        verdict: Option<ObstructionVerdict>,
        rational_points: Vec<RationalPoint>,
        errors: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberEntry {
    pub point: ProjPoint,
    #[serde(flatten)]
    pub outcome: FiberOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub height: u64,
    pub fibers: Vec<FiberEntry>,
}

fn surface_outcome(surface: ChateletSurface, opts: &SweepOptions) -> FiberOutcome {
    let mut errors = Vec::new();
    let local = match is_everywhere_locally_solvable_with(&surface, &opts.local) {
        Ok(l) => Some(l),
        Err(e) => {
            errors.push(format!("local solvability: {e}"));
            None
        }
    };
    let solvable = local.as_ref().map(|l| l.solvable);
    let class = surface.poly().quadratic_factors().and_then(|(p1, _)| {
        QuaternionClass::from_surface(&surface, p1).map_err(|e| errors.push(format!("class: {e}"))).ok()
    });
    let verdict = match (&class, solvable) {
        (Some(c), Some(true)) => match obstruction_verdict_with(c, opts.local.depth_cap) {
            Ok(v) => Some(v),
            Err(e) => {
                errors.push(format!("obstruction verdict: {e}"));
                None
            }
        },
        _ => None,
    };
    let rational_points = search_rational_points(&surface, opts.height);
    let conclusion = verdict.as_ref().map(|v| v.conclusion);
    if !rational_points.is_empty() && (conclusion == Some(Conclusion::EmptyBrauerSet) || solvable == Some(false)) {
        errors.push("rational points contradict the local or Brauer-Manin verdict".into());
    }
    FiberOutcome::Surface {
        surface,
        everywhere_locally_solvable: solvable,
        local,
        class,
        conclusion,
        verdict,
        rational_points,
        errors,
    }
}

/// Degenerate fibers are tagged and skipped; every other fiber gets local
/// solvability, an obstruction verdict when its quartic splits, and a
/// point search to `opts.height`.
pub fn fiber_sweep(b: &BidegreeForm, points: &[ProjPoint], opts: &SweepOptions) -> SweepReport {
    let fibers = points
        .par_iter()
        .map(|t| {
            let outcome = match b.fiber(t) {
                Fiber::Degenerate { quartic, reason } => FiberOutcome::Degenerate { quartic, reason },
                Fiber::Surface { surface } => surface_outcome(surface, opts),
            };
            FiberEntry { point: t.clone(), outcome }
        })
        .collect();
    SweepReport { height: opts.height, fibers }
}
