use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Builder, CohomologyInput, Config, Request, ISKOVSKIKH_SUMMARY};
use crate::arith::place::Place;
use crate::arith::rational::format_rational;
use crate::arith::symbols::hilbert_symbol;
use crate::brauer::{
    invariant_sum_at_rational_point, obstruction_verdict_with, verify_obstruction_verdict, Conclusion, Invariant,
    ObstructionVerdict, QuaternionClass,
};
use crate::chatelet::local::{
    is_everywhere_locally_solvable_with, is_locally_solvable_with, verify_local_verdict, Certificate, EverywhereLocal,
    LocalOptions, LocalVerdict,
};
use crate::chatelet::search::{search_rational_points, RationalPoint};
use crate::chatelet::ChateletSurface;
use crate::cohomology::{cohomology, verify_key_diagram, AbelianGroup, IntegralGModule};
use crate::error::{Error, Result};
use crate::threefold::branch::branch_locus;
use crate::threefold::smooth::{degeneracy_smoothness_audit, verify_smoothness_certificate, SmoothnessCertificate};
use crate::threefold::sweep::{fiber_sweep, FiberOutcome, SweepOptions, SweepReport};
use crate::threefold::{BidegreeForm, Fiber, ProjPoint};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub(crate) struct PointSearch {
    pub height: u64,
    pub points: Vec<RationalPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub(crate) enum AuditOutcome {
    Smooth { certificate: SmoothnessCertificate },
    Singular { chart: String, witness: String },
}

#[derive(Serialize)]
struct SymbolValue {
    value: i8,
}

#[derive(Serialize)]
struct DegreeResult {
    degree: usize,
    group: AbelianGroup,
    display: String,
}

pub(super) fn dispatch(b: &mut Builder, r: &Request, cfg: &Config) -> Result<String> {
    let opts = LocalOptions { depth_cap: cfg.depth_cap, force_search: false };
    match r {
        Request::Iskovskikh { place: Some(v) } => single_place(b, &QuaternionClass::iskovskikh().surface(), v, &opts),
        Request::Iskovskikh { place: None } => iskovskikh(b, cfg, &opts),
        Request::Brauer { class } => brauer(b, class, cfg, &opts),
        Request::Local { surface, places } => local(b, surface, places.as_deref(), &opts),
        Request::Hilbert { a, b: bb, place } => {
            let value = b.step("symbol", || Ok(SymbolValue { value: hilbert_symbol(a, bb, place)? }))?.value;
            Ok(format!("({a}, {bb})_{place} = {value}"))
        }
        Request::Construct { construction } => construct(b, construction),
        Request::Sweep { construction, points } => sweep(b, construction, points, cfg, &opts),
        Request::Cohomology { input } => cohomology_pipeline(b, input),
    }
}

fn certificate_kind(c: &Certificate) -> String {
    match c {
        Certificate::Shortcut { reason } => {
            serde_json::to_value(reason).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
                + " shortcut"
        }
        Certificate::RealSigns { .. } => "real sign".into(),
        Certificate::DiscSearch { .. } => "disc search".into(),
    }
}

fn single_place(b: &mut Builder, s: &ChateletSurface, v: &Place, opts: &LocalOptions) -> Result<String> {
    let verdict = b.step("local", || is_locally_solvable_with(s, v, opts))?;
    b.assert(format!("locally solvable at {v}"), verdict.solvable);
    b.assert("certificates re-validate", verify_local_verdict(s, &verdict).is_ok());
    let status = if verdict.solvable { "solvable" } else { "not solvable" };
    Ok(format!("{status} at {v} ({} certificate)", certificate_kind(&verdict.certificate)))
}

/// Local solvability, the obstruction verdict when there are local
/// points everywhere, and a point search.
struct BrauerSteps {
    local: EverywhereLocal,
    verdict: Option<ObstructionVerdict>,
    search: PointSearch,
}

fn brauer_steps(b: &mut Builder, class: &QuaternionClass, cfg: &Config, opts: &LocalOptions) -> Result<BrauerSteps> {
    let s = class.surface();
    b.step("bad_places", || Ok(s.bad_places()))?;
    let local = b.step("local", || is_everywhere_locally_solvable_with(&s, opts))?;
    let verdict =
        if local.solvable { Some(b.step("obstruction", || obstruction_verdict_with(class, cfg.depth_cap))?) } else { None };
    let search =
        b.step("search", || Ok(PointSearch { height: cfg.height, points: search_rational_points(&s, cfg.height) }))?;
    let valid = local.verdicts.values().all(|v| verify_local_verdict(&s, v).is_ok())
        && verdict.as_ref().map_or(true, |v| verify_obstruction_verdict(v).is_ok())
        && search.points.iter().all(|p| s.contains(&p.x, &p.y, &p.z));
    b.assert("certificates re-validate", valid);
    let reciprocity = search
        .points
        .iter()
        .all(|p| matches!(invariant_sum_at_rational_point(class, &p.x), Ok(Invariant::Zero)));
    b.assert("invariants sum to zero at every found point", reciprocity);
    Ok(BrauerSteps { local, verdict, search })
}

fn iskovskikh(b: &mut Builder, cfg: &Config, opts: &LocalOptions) -> Result<String> {
    let class = QuaternionClass::iskovskikh();
    let steps = brauer_steps(b, &class, cfg, opts)?;
    b.assert("everywhere locally solvable", steps.local.solvable);
    let half: BTreeSet<Invariant> = [Invariant::Half].into_iter().collect();
    let empty = steps
        .verdict
        .as_ref()
        .is_some_and(|v| v.conclusion == Conclusion::EmptyBrauerSet && v.sum_set == half);
    b.assert("Brauer-Manin set is empty with sum set {1/2}", empty);
    b.assert(format!("no rational points up to height {}", cfg.height), steps.search.points.is_empty());
    Ok(if steps.local.solvable && empty && steps.search.points.is_empty() {
        ISKOVSKIKH_SUMMARY.to_string()
    } else {
        "the expected Hasse-principle failure was not confirmed".to_string()
    })
}

fn brauer(b: &mut Builder, class: &QuaternionClass, cfg: &Config, opts: &LocalOptions) -> Result<String> {
    let steps = brauer_steps(b, class, cfg, opts)?;
    let found = steps.search.points.len();
    let consistent = found == 0
        || (steps.local.solvable && steps.verdict.as_ref().is_some_and(|v| v.conclusion != Conclusion::EmptyBrauerSet));
    b.assert("found points agree with the verdict", consistent);
    Ok(match &steps.verdict {
        None => {
            let places: Vec<String> = steps.local.failing_places().iter().map(|p| p.to_string()).collect();
            format!("no local points at {}; no rational points", places.join(", "))
        }
        Some(v) if v.conclusion == Conclusion::EmptyBrauerSet => {
            "local points everywhere; Brauer-Manin set empty; no rational points".to_string()
        }
        Some(_) => format!("no obstruction from this class; {found} rational points up to height {}", cfg.height),
    })
}

fn local(b: &mut Builder, s: &ChateletSurface, places: Option<&[Place]>, opts: &LocalOptions) -> Result<String> {
    let places: Vec<Place> = match places {
        Some(p) => p.to_vec(),
        None => s.bad_places().into_iter().collect(),
    };
    let verdicts = b.step("verdicts", || {
        places.par_iter().map(|v| is_locally_solvable_with(s, v, opts)).collect::<Result<Vec<LocalVerdict>>>()
    })?;
    b.assert("certificates re-validate", verdicts.iter().all(|v| verify_local_verdict(s, v).is_ok()));
    let failing: Vec<String> = verdicts.iter().filter(|v| !v.solvable).map(|v| v.place.to_string()).collect();
    Ok(if failing.is_empty() {
        format!("solvable at {} place(s)", verdicts.len())
    } else {
        format!("no local points at {}", failing.join(", "))
    })
}

fn construct(b: &mut Builder, form: &BidegreeForm) -> Result<String> {
    b.step("construction", || Ok(form.clone()))?;
    let audit = b.step("audit", || match degeneracy_smoothness_audit(form) {
        Ok(certificate) => Ok(AuditOutcome::Smooth { certificate }),
        Err(Error::SmoothnessFails { chart, witness }) => Ok(AuditOutcome::Singular { chart, witness }),
        Err(e) => Err(e),
    })?;
    let locus = b.step("branch_locus", || Ok(branch_locus(form)))?;
    let fiber = b.step("fiber_at_infinity", || Ok(form.fiber(&ProjPoint::infinity())))?;
    let smooth = matches!(audit, AuditOutcome::Smooth { .. });
    b.assert("degeneracy curve is smooth", smooth);
    let valid = match &audit {
        AuditOutcome::Smooth { certificate } => verify_smoothness_certificate(form, certificate).is_ok(),
        AuditOutcome::Singular { .. } => true,
    };
    b.assert("certificates re-validate", valid);
    let matches_inf =
        matches!(&fiber, Fiber::Surface { surface } if surface.a() == form.a() && surface.poly() == form.p_inf());
    b.assert("fiber over (1:0) is y^2 - a z^2 = P_inf", matches_inf);
    Ok(match audit {
        AuditOutcome::Smooth { .. } => format!(
            "degeneracy curve smooth on all four charts; branch form of degree {} with {} distinct roots, {} rational",
            locus.form_degree,
            locus.distinct_roots,
            locus.rational_roots.len()
        ),
        AuditOutcome::Singular { chart, .. } => format!("degeneracy curve is singular on chart {chart}"),
    })
}

/// Re-checks every certificate carried by a sweep.
pub(crate) fn sweep_certificates_valid(r: &SweepReport) -> bool {
    r.fibers.iter().all(|f| match &f.outcome {
        FiberOutcome::Degenerate { .. } => true,
        FiberOutcome::Surface { surface, local, verdict, rational_points, .. } => {
            local.as_ref().map_or(true, |l| l.verdicts.values().all(|v| verify_local_verdict(surface, v).is_ok()))
                && verdict.as_ref().map_or(true, |v| v.surface == *surface && verify_obstruction_verdict(v).is_ok())
                && rational_points.iter().all(|p| surface.contains(&p.x, &p.y, &p.z))
        }
    })
}

fn sweep(
    b: &mut Builder,
    form: &BidegreeForm,
    points: &[ProjPoint],
    cfg: &Config,
    opts: &LocalOptions,
) -> Result<String> {
    let sopts = SweepOptions { height: cfg.height, local: *opts };
    let report = b.step("sweep", || Ok(fiber_sweep(form, points, &sopts)))?;
    let mut degenerate = 0;
    let mut obstructed = 0;
    let mut with_points = 0;
    let mut clean = true;
    for f in &report.fibers {
        match &f.outcome {
            FiberOutcome::Degenerate { .. } => degenerate += 1,
            FiberOutcome::Surface { conclusion, rational_points, errors, .. } => {
                obstructed += usize::from(*conclusion == Some(Conclusion::EmptyBrauerSet));
                with_points += usize::from(!rational_points.is_empty());
                clean &= errors.is_empty();
            }
        }
    }
    b.assert("no fiber contradicts its verdict", clean);
    b.assert("certificates re-validate", sweep_certificates_valid(&report));
    Ok(format!(
        "{} fibers: {degenerate} degenerate, {obstructed} with empty Brauer-Manin set, {with_points} with rational points",
        report.fibers.len()
    ))
}

fn cohomology_pipeline(b: &mut Builder, input: &CohomologyInput) -> Result<String> {
    match input {
        CohomologyInput::Diagram { diagram } => {
            let report = b.step("key_diagram", || verify_key_diagram(diagram))?;
            for c in &report.checks {
                b.assert(c.name.clone(), c.passed);
            }
            let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
            Ok(if failed.is_empty() {
                format!("all {} checks pass", report.checks.len())
            } else {
                format!("failed: {}", failed.join("; "))
            })
        }
        CohomologyInput::Module { group, module, degrees } => {
            let m = IntegralGModule::new(group, module.rank, module.action.clone())?;
            let results = b.step("cohomology", || {
                degrees
                    .iter()
                    .map(|&i| {
                        let h = cohomology(group, &m, i)?;
                        Ok(DegreeResult { degree: i, display: h.group.to_string(), group: h.group })
                    })
                    .collect::<Result<Vec<_>>>()
            })?;
            let parts: Vec<String> = results.iter().map(|r| format!("H^{} = {}", r.degree, r.display)).collect();
            Ok(parts.join("; "))
        }
    }
}

/// Independent certificate checks on the stored steps of a report.
pub(super) fn check_stored(r: &super::Report) -> Result<()> {
    fn parse<T: for<'de> Deserialize<'de>>(r: &super::Report, name: &str) -> Result<Option<T>> {
        let Some(v) = r.step(name) else { return Ok(None) };
        serde_json::from_value(v.clone())
            .map(Some)
            .map_err(|e| Error::VerificationFailed { location: format!("step {name}"), message: e.to_string() })
    }
    let fail = |loc: &str, e: Error| -> Error {
        match e {
            Error::VerificationFailed { location, message } => {
                Error::VerificationFailed { location: format!("step {loc}: {location}"), message }
            }
            other => Error::VerificationFailed { location: format!("step {loc}"), message: other.to_string() },
        }
    };
    let surface = match &r.input {
        Request::Iskovskikh { .. } => Some(QuaternionClass::iskovskikh().surface()),
        Request::Brauer { class } => Some(class.surface()),
        Request::Local { surface, .. } => Some(surface.clone()),
        _ => None,
    };
    if let Some(s) = &surface {
        let mut verdicts: Vec<LocalVerdict> = Vec::new();
        match parse::<LocalVerdict>(r, "local") {
            Ok(Some(v)) => verdicts.push(v),
            _ => {
                if let Some(l) = parse::<EverywhereLocal>(r, "local")? {
                    if l.solvable != l.verdicts.values().all(|v| v.solvable) {
                        return Err(fail("local", Error::AssertionFailed("solvable flag disagrees".into())));
                    }
                    verdicts.extend(l.verdicts.into_values());
                }
            }
        }
        if let Some(vs) = parse::<Vec<LocalVerdict>>(r, "verdicts")? {
            verdicts.extend(vs);
        }
        for v in &verdicts {
            verify_local_verdict(s, v).map_err(|e| fail("local", e))?;
        }
        if let Some(v) = parse::<ObstructionVerdict>(r, "obstruction")? {
            if v.surface != *s {
                return Err(fail("obstruction", Error::AssertionFailed("verdict is for another surface".into())));
            }
            verify_obstruction_verdict(&v).map_err(|e| fail("obstruction", e))?;
        }
        if let Some(search) = parse::<PointSearch>(r, "search")? {
            if let Some(p) = search.points.iter().find(|p| !s.contains(&p.x, &p.y, &p.z)) {
                let msg = format!("x = {} is not a point", format_rational(&p.x));
                return Err(fail("search", Error::AssertionFailed(msg)));
            }
        }
    }
    if let Request::Construct { construction } = &r.input {
        if let Some(AuditOutcome::Smooth { certificate }) = parse::<AuditOutcome>(r, "audit")? {
            verify_smoothness_certificate(construction, &certificate).map_err(|e| fail("audit", e))?;
        }
    }
    if let Some(sweep) = parse::<SweepReport>(r, "sweep")? {
        if !sweep_certificates_valid(&sweep) {
            return Err(fail("sweep", Error::AssertionFailed("a fiber certificate does not re-validate".into())));
        }
    }
    Ok(())
}
