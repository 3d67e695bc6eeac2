use std::collections::HashMap;

use serde::Serialize;
use serde_json::Value;

use super::{content, digest_of, pipelines, run, Config, Report, Request, TOOL, VERSION};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyOutcome {
    pub command: String,
    pub digest: String,
    pub steps: usize,
    pub holds: bool,
}

fn fail(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::VerificationFailed { location: location.into(), message: message.into() }
}

fn escape(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

/// The JSON pointer of the first leaf where `a` and `b` differ, walking
/// object keys in sorted order.
pub fn first_difference(a: &Value, b: &Value) -> Option<String> {
    first_difference_skipping(a, b, &[])
}

/// As [`first_difference`], ignoring the given top-level keys.
fn first_difference_skipping(a: &Value, b: &Value, skip: &[&str]) -> Option<String> {
    fn walk(a: &Value, b: &Value, path: &mut String, skip: &[&str]) -> Option<String> {
        match (a, b) {
            (Value::Object(x), Value::Object(y)) => {
                let mut keys: Vec<&String> =
                    x.keys().chain(y.keys()).filter(|k| !skip.contains(&k.as_str())).collect();
                keys.sort();
                keys.dedup();
                for k in keys {
                    let len = path.len();
                    path.push('/');
                    path.push_str(&escape(k));
                    let found = match (x.get(k), y.get(k)) {
                        (Some(u), Some(v)) => walk(u, v, path, &[]),
                        _ => Some(path.clone()),
                    };
                    if found.is_some() {
                        return found;
                    }
                    path.truncate(len);
                }
                None
            }
            (Value::Array(x), Value::Array(y)) => {
                for i in 0..x.len().max(y.len()) {
                    let len = path.len();
                    path.push_str(&format!("/{i}"));
                    let found = match (x.get(i), y.get(i)) {
                        (Some(u), Some(v)) => walk(u, v, path, &[]),
                        _ => Some(path.clone()),
                    };
                    if found.is_some() {
                        return found;
                    }
                    path.truncate(len);
                }
                None
            }
            _ => (a != b).then(|| if path.is_empty() { "/".to_string() } else { path.clone() }),
        }
    }
    walk(a, b, &mut String::new(), skip)
}

/// Replays reports, re-running each distinct `(input, config)` only once.
#[derive(Default)]
pub struct Replayer {
    cache: HashMap<String, Value>,
}

impl Replayer {
    pub fn new() -> Self {
        Self::default()
    }

    /// Checks, in order: tool and version; that a fresh run on the echoed
    /// input and configuration matches the report leaf for leaf outside
    /// `timing`; every certificate carried by the steps, re-checked on its
    /// own; and the digest.
    pub fn verify(&mut self, v: &Value) -> Result<VerifyOutcome> {
        for (key, want) in [("tool", TOOL), ("version", VERSION)] {
            if v.get(key).and_then(Value::as_str) != Some(want) {
                return Err(fail(format!("/{key}"), format!("expected {want:?}")));
            }
        }
        let input: Request = field(v, "input")?;
        let config: Config = field(v, "config")?;
        let key = serde_json::to_string(&(&input, &config)).expect("inputs serialize");
        if !self.cache.contains_key(&key) {
            let fresh = run(&input, &config).map_err(|e| fail("/input", format!("replay failed: {e}")))?;
            self.cache.insert(key.clone(), content(&fresh.to_value()));
        }
        if let Some(path) = first_difference_skipping(v, &self.cache[&key], &["digest", "timing"]) {
            return Err(fail(path, "differs from the replayed value"));
        }
        let report: Report = serde_json::from_value(v.clone()).map_err(|e| fail("report", e.to_string()))?;
        pipelines::check_stored(&report)?;
        let digest = digest_of(v);
        if digest != report.digest {
            return Err(fail("/digest", format!("recomputed {digest}")));
        }
        Ok(VerifyOutcome {
            command: report.input.command().into(),
            digest,
            steps: report.steps.len(),
            holds: report.verdict.holds,
        })
    }
}

fn field<T: for<'de> serde::Deserialize<'de>>(v: &Value, key: &str) -> Result<T> {
    let x = v.get(key).ok_or_else(|| fail(format!("/{key}"), "missing"))?;
    serde_json::from_value(x.clone()).map_err(|e| fail(format!("/{key}"), e.to_string()))
}

pub fn verify_report(v: &Value) -> Result<VerifyOutcome> {
    Replayer::new().verify(v)
}

pub fn verify_str(s: &str) -> Result<VerifyOutcome> {
    let v: Value = serde_json::from_str(s).map_err(|e| fail("report", format!("not JSON: {e}")))?;
    verify_report(&v)
}
