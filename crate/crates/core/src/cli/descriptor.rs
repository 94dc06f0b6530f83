//! Manifold descriptor files.
//!
//! ```json
//! {
//!   "mode": "rank-one-cusps",
//!   "cusps": [{"label": "c1", "m_alpha": 2, "m_2alpha": 0}],
//!   "eigenvalues": [0.12]
//! }
//! ```
//!
//! `mode` (`rank-one-cusps` or `locally-symmetric`), `label`, `m_2alpha` and
//! `eigenvalues` are optional.

use std::path::Path;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::manifold::{CuspManifoldDescriptor, ManifoldMode};
use crate::root_datum::RestrictedRootDatum;

pub fn load_manifold_descriptor(path: &Path) -> Result<CuspManifoldDescriptor> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_manifold_descriptor(&text)
        .map_err(|e| Error::Input(format!("{}: {}", path.display(), strip_prefix(&e))))
}

fn strip_prefix(e: &Error) -> String {
    match e {
        Error::Input(msg) => msg.clone(),
        other => other.to_string(),
    }
}

pub fn parse_manifold_descriptor(text: &str) -> Result<CuspManifoldDescriptor> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Error::Input(format!("malformed descriptor JSON: {e}")))?;
    let top = value
        .as_object()
        .ok_or_else(|| Error::Input("descriptor must be a JSON object".into()))?;
    reject_unknown_keys(top, &["cusps", "eigenvalues", "mode"], "descriptor")?;

    let mode = match top.get("mode") {
        None => ManifoldMode::default(),
        Some(Value::String(s)) if s == "rank-one-cusps" => ManifoldMode::RankOneCusps,
        Some(Value::String(s)) if s == "locally-symmetric" => ManifoldMode::LocallySymmetric,
        Some(other) => {
            return Err(Error::Input(format!(
                "mode: expected \"rank-one-cusps\" or \"locally-symmetric\", got {other}"
            )))
        }
    };

    let cusps = top
        .get("cusps")
        .ok_or_else(|| Error::Input("cusps: missing field".into()))?
        .as_array()
        .ok_or_else(|| Error::Input("cusps: expected a list".into()))?;
    if cusps.is_empty() {
        return Err(Error::Input("cusps: the list must not be empty".into()));
    }
    let cusps = cusps
        .iter()
        .enumerate()
        .map(|(k, c)| parse_cusp(k, c))
        .collect::<Result<Vec<_>>>()?;

    let eigenvalues = match top.get("eigenvalues") {
        None => Vec::new(),
        Some(Value::Array(items)) => items
            .iter()
            .enumerate()
            .map(|(k, v)| {
                v.as_f64().ok_or_else(|| {
                    Error::Input(format!("eigenvalues[{k}]: expected a number, got {v}"))
                })
            })
            .collect::<Result<Vec<_>>>()?,
        Some(other) => {
            return Err(Error::Input(format!(
                "eigenvalues: expected a list, got {other}"
            )))
        }
    };

    CuspManifoldDescriptor::new(cusps, eigenvalues, mode)
}

fn parse_cusp(k: usize, value: &Value) -> Result<RestrictedRootDatum> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Input(format!("cusps[{k}]: expected an object")))?;
    reject_unknown_keys(
        obj,
        &["label", "m_alpha", "m_2alpha"],
        &format!("cusps[{k}]"),
    )?;
    let label = match obj.get("label") {
        None => format!("cusp{}", k + 1),
        Some(Value::String(s)) => s.clone(),
        Some(other) => {
            return Err(Error::Input(format!(
                "cusps[{k}].label: expected a string, got {other}"
            )))
        }
    };
    let count = |field: &str| -> Result<Option<u32>> {
        obj.get(field)
            .map(|v| {
                v.as_u64()
                    .and_then(|n| u32::try_from(n).ok())
                    .ok_or_else(|| {
                        Error::Input(format!(
                            "cusps[{k}].{field}: expected a non-negative integer, got {v}"
                        ))
                    })
            })
            .transpose()
    };
    let m_alpha = count("m_alpha")?
        .ok_or_else(|| Error::Input(format!("cusps[{k}].m_alpha: missing field")))?;
    let m_2alpha = count("m_2alpha")?.unwrap_or(0);
    RestrictedRootDatum::new(label, m_alpha, m_2alpha)
        .map_err(|e| Error::Input(format!("cusps[{k}].m_alpha: {}", strip_prefix(&e))))
}

fn reject_unknown_keys(obj: &Map<String, Value>, allowed: &[&str], context: &str) -> Result<()> {
    match obj.keys().find(|key| !allowed.contains(&key.as_str())) {
        Some(key) => Err(Error::Input(format!(
            "{context}: unknown field `{key}` (expected one of {})",
            allowed.join(", ")
        ))),
        None => Ok(()),
    }
}
