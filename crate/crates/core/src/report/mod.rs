//! Deterministic JSON reports for every pipeline, and their replay.
//!
//! A report echoes its request and configuration, lists the results of
//! each step, and closes with a verdict. Keys are emitted in sorted order.
//! The digest is the SHA-256 of the canonical JSON with the `digest` and
//! `timing` fields removed.

mod pipelines;
mod replay;

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::arith::place::Place;
use crate::arith::rational::{serde_rational, Rational};
use crate::brauer::QuaternionClass;
use crate::chatelet::ChateletSurface;
use crate::cohomology::{FiniteGroup, IntMatrix, KeyDiagram};
use crate::error::{Error, Result};
use crate::threefold::{BidegreeForm, ProjPoint};

pub use replay::{first_difference, verify_report, verify_str, Replayer, VerifyOutcome};

pub const TOOL: &str = "etale-brauer";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const ISKOVSKIKH_SUMMARY: &str = "Hasse principle fails; explained by Brauer-Manin";

/// An integral G-module given by its rank and one matrix per group element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub rank: usize,
    pub action: Vec<IntMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CohomologyInput {
    Diagram { diagram: KeyDiagram },
    Module { group: FiniteGroup, module: ModuleSpec, degrees: Vec<usize> },
}

/// What to run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Request {
    /// The bundled surface `y^2 + z^2 = (x^2 - 2)(3 - x^2)` with the class
    /// `(-1, x^2 - 2)`; optionally one place only.
    Iskovskikh { place: Option<Place> },
    Brauer { class: QuaternionClass },
    /// Local solvability at the given places, or at every bad place.
    Local { surface: ChateletSurface, places: Option<Vec<Place>> },
    Hilbert {
        #[serde(with = "serde_rational")]
        a: Rational,
        #[serde(with = "serde_rational")]
        b: Rational,
        place: Place,
    },
    Construct { construction: BidegreeForm },
    Sweep { construction: BidegreeForm, points: Vec<ProjPoint> },
    Cohomology { input: CohomologyInput },
}

impl Request {
    pub fn command(&self) -> &'static str {
        match self {
            Request::Iskovskikh { .. } => "iskovskikh",
            Request::Brauer { .. } => "brauer",
            Request::Local { .. } => "local",
            Request::Hilbert { .. } => "hilbert",
            Request::Construct { .. } => "construct",
            Request::Sweep { .. } => "sweep",
            Request::Cohomology { .. } => "cohomology",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    /// Height bound for rational-point searches.
    pub height: u64,
    /// Maximal residue-disc depth.
    pub depth_cap: u32,
}

impl Config {
    /// Defaults per command: height 1000 for the bundled surface, 100
    /// elsewhere.
    pub fn default_for(r: &Request) -> Config {
        let height = match r {
            Request::Iskovskikh { .. } => 1000,
            _ => 100,
        };
        Config { height, depth_cap: crate::chatelet::local::DEFAULT_DEPTH_CAP }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub name: String,
    pub result: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    /// Every assertion holds.
    pub holds: bool,
    pub summary: String,
    pub assertions: Vec<Assertion>,
}

/// Wall-clock milliseconds; excluded from the digest and from replay.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub total_ms: u64,
    pub steps_ms: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub config: Config,
    pub input: Request,
    pub steps: Vec<Step>,
    pub verdict: Verdict,
    pub digest: String,
    pub timing: Timing,
}

impl Report {
    pub fn step(&self, name: &str) -> Option<&Value> {
        self.steps.iter().find(|s| s.name == name).map(|s| &s.result)
    }

    pub fn assertion(&self, name: &str) -> Option<bool> {
        self.verdict.assertions.iter().find(|a| a.name == name).map(|a| a.holds)
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("reports serialize")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("reports serialize")
    }

    /// 0 when every assertion holds, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.verdict.holds {
            0
        } else {
            1
        }
    }

    /// A short plain-text rendering.
    pub fn human(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "{} {} {}", self.tool, self.version, self.input.command());
        let _ = writeln!(out, "height {}  depth cap {}", self.config.height, self.config.depth_cap);
        for s in &self.steps {
            let ms = self.timing.steps_ms.get(&s.name).copied().unwrap_or(0);
            let _ = writeln!(out, "  step {:<20} {ms} ms", s.name);
        }
        for a in &self.verdict.assertions {
            let _ = writeln!(out, "  [{}] {}", if a.holds { "ok" } else { "FAILED" }, a.name);
        }
        let _ = writeln!(out, "verdict: {}", self.verdict.summary);
        let _ = writeln!(out, "digest:  {}", self.digest);
        out
    }
}

/// The canonical value hashed into the digest.
pub(crate) fn content(v: &Value) -> Value {
    let mut v = v.clone();
    if let Value::Object(m) = &mut v {
        m.remove("digest");
        m.remove("timing");
    }
    v
}

pub fn digest_of(v: &Value) -> String {
    let canonical = serde_json::to_string(&content(v)).expect("values serialize");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

/// Collects steps, assertions and timings while a pipeline runs.
pub(crate) struct Builder {
    steps: Vec<Step>,
    steps_ms: BTreeMap<String, u64>,
    assertions: Vec<Assertion>,
}

impl Builder {
    fn new() -> Self {
        Builder { steps: Vec::new(), steps_ms: BTreeMap::new(), assertions: Vec::new() }
    }

    pub(crate) fn step<T: Serialize>(&mut self, name: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
        let start = Instant::now();
        let t = f()?;
        self.steps_ms.insert(name.to_string(), start.elapsed().as_millis() as u64);
        let result = serde_json::to_value(&t).map_err(|e| Error::parse(format!("step {name}"), e.to_string()))?;
        self.steps.push(Step { name: name.to_string(), result });
        Ok(t)
    }

    pub(crate) fn assert(&mut self, name: impl Into<String>, holds: bool) {
        self.assertions.push(Assertion { name: name.into(), holds });
    }
}

/// Runs one pipeline. Errors from the modules pass through unchanged.
pub fn run(request: &Request, config: &Config) -> Result<Report> {
    let start = Instant::now();
    let mut b = Builder::new();
    let summary = pipelines::dispatch(&mut b, request, config)?;
    let holds = b.assertions.iter().all(|a| a.holds);
    let mut report = Report {
        tool: TOOL.into(),
        version: VERSION.into(),
        config: *config,
        input: request.clone(),
        steps: b.steps,
        verdict: Verdict { holds, summary, assertions: b.assertions },
        digest: String::new(),
        timing: Timing { total_ms: 0, steps_ms: b.steps_ms },
    };
    report.digest = digest_of(&report.to_value());
    report.timing.total_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

fn parse_json<T: for<'de> Deserialize<'de>>(what: &str, s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| {
        let location = if e.line() > 0 { format!("{what}, line {} column {}", e.line(), e.column()) } else { what.into() };
        Error::Parse { location, message: e.to_string() }
    })
}

#[derive(Deserialize)]
struct SurfaceFile {
    #[serde(flatten)]
    surface: ChateletSurface,
    places: Option<Vec<Place>>,
}

#[derive(Deserialize)]
struct SweepFile {
    #[serde(flatten)]
    construction: BidegreeForm,
    points: Option<Vec<ProjPoint>>,
}

#[derive(Deserialize)]
struct ModuleFile {
    group: FiniteGroup,
    module: ModuleSpec,
    degrees: Option<Vec<usize>>,
}

/// Builds the request for `command` from the contents of an input file.
///
/// * `brauer`: `{"a", "P1", "P2"}`
/// * `local`: `{"a", "P", "places"?}`
/// * `construct`: `{"a", "Pinf", "P0"}`
/// * `sweep`: `{"a", "Pinf", "P0", "points"?}`
/// * `cohomology`: a key diagram (`{"group", "subgroup", "top", ...}`) or
///   `{"group", "module": {"rank", "action"}, "degrees"?}`
pub fn request_from_json(command: &str, s: &str) -> Result<Request> {
    let what = format!("{command} input");
    match command {
        "brauer" => Ok(Request::Brauer { class: parse_json(&what, s)? }),
        "local" => {
            let f: SurfaceFile = parse_json(&what, s)?;
            Ok(Request::Local { surface: f.surface, places: f.places })
        }
        "construct" => Ok(Request::Construct { construction: parse_json(&what, s)? }),
        "sweep" => {
            let f: SweepFile = parse_json(&what, s)?;
            Ok(Request::Sweep { construction: f.construction, points: f.points.unwrap_or_else(default_sweep_points) })
        }
        "cohomology" => {
            let v: Value = parse_json(&what, s)?;
            if v.get("top").is_some() {
                Ok(Request::Cohomology { input: CohomologyInput::Diagram { diagram: parse_json(&what, s)? } })
            } else {
                let f: ModuleFile = parse_json(&what, s)?;
                let degrees = f.degrees.unwrap_or_else(|| vec![0, 1, 2]);
                Ok(Request::Cohomology { input: CohomologyInput::Module { group: f.group, module: f.module, degrees } })
            }
        }
        other => Err(Error::parse("command", format!("{other:?} takes no input file"))),
    }
}

/// The default base points for a sweep: `(1:0)`, `(0:1)`, `(1:1)`,
/// `(1:-1)`, `(1:2)`, `(2:1)`, `(1:3)`.
pub fn default_sweep_points() -> Vec<ProjPoint> {
    [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1), (1, 3)]
        .iter()
        .map(|&(u, v)| ProjPoint::new(u, v).expect("nonzero point"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    #[test]
    fn digest_ignores_timing_only() {
        let r = run(
            &Request::Hilbert { a: int(-1), b: int(-1), place: Place::Real },
            &Config { height: 1, depth_cap: 10 },
        )
        .unwrap();
        let mut v = r.to_value();
        v["timing"]["total_ms"] = 12345.into();
        assert_eq!(digest_of(&v), r.digest);
        v["verdict"]["summary"] = "x".into();
        assert_ne!(digest_of(&v), r.digest);
    }
}
