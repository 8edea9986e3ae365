//! Uniform verification reports.
//!
//! Every identity checker in this crate returns an [`IdentityReport`]: which
//! identity was checked, with which parameters, to which order, whether the
//! two sides agreed, and — on failure — the first mismatching exponent.
//! Reports serialize to a stable JSON object (fixed key order, integers
//! only) so that downstream tooling can diff runs byte-for-byte.

use std::time::Instant;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::error::Result;
use crate::series::{equal_to_order, TruncSeries};

/// Outcome of checking one identity instance to a finite order.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    /// Stable machine identifier of the identity family (e.g. `"rr"`, `"knot"`).
    pub identity_id: String,
    /// Instance parameters (knot name, moduli, exponent vectors, ...).
    pub params: Map<String, Value>,
    /// Exclusive order bound: coefficients of `q^e` were compared for `e < order`.
    pub order: i64,
    /// True when every compared coefficient agreed.
    pub verified: bool,
    /// Smallest exponent whose coefficients differ, when not verified.
    pub first_mismatch: Option<i64>,
    /// Short human-readable rendering of the left side (not serialized).
    pub lhs_prefix: String,
    /// Short human-readable rendering of the right side (not serialized).
    pub rhs_prefix: String,
    /// Wall-clock time spent producing and comparing both sides.
    pub runtime_ms: u64,
}

/// How many leading terms the human-readable prefixes keep.
const PREFIX_TERMS: i64 = 10;

fn prefix_of(s: &TruncSeries) -> String {
    s.truncated(s.prec().min(s.offset() + PREFIX_TERMS)).to_string()
}

/// Compare `lhs` and `rhs` to the given order and package the outcome.
///
/// `start` should be captured before the sides were computed so the runtime
/// covers the expansion, not just the comparison.
pub fn compare_series(
    identity_id: &str,
    params: Map<String, Value>,
    order: i64,
    lhs: &TruncSeries,
    rhs: &TruncSeries,
    start: Instant,
) -> Result<IdentityReport> {
    let mismatch = equal_to_order(lhs, rhs, order)?;
    Ok(IdentityReport {
        identity_id: identity_id.to_string(),
        params,
        order,
        verified: mismatch.is_none(),
        first_mismatch: mismatch.map(|m| m.exponent),
        lhs_prefix: prefix_of(lhs),
        rhs_prefix: prefix_of(rhs),
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}

impl IdentityReport {
    /// JSON object with fixed key order:
    /// `identity_id, params, order, verified, first_mismatch, runtime_ms`.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("identity_id".into(), json!(self.identity_id));
        m.insert("params".into(), Value::Object(self.params.clone()));
        m.insert("order".into(), json!(self.order));
        m.insert("verified".into(), json!(self.verified));
        m.insert(
            "first_mismatch".into(),
            self.first_mismatch.map_or(Value::Null, |e| json!(e)),
        );
        m.insert("runtime_ms".into(), json!(self.runtime_ms));
        Value::Object(m)
    }

    /// Parse a report back from its JSON form (prefixes are not serialized
    /// and come back empty).
    pub fn from_json(v: &Value) -> Option<IdentityReport> {
        let obj = v.as_object()?;
        Some(IdentityReport {
            identity_id: obj.get("identity_id")?.as_str()?.to_string(),
            params: obj.get("params")?.as_object()?.clone(),
            order: obj.get("order")?.as_i64()?,
            verified: obj.get("verified")?.as_bool()?,
            first_mismatch: match obj.get("first_mismatch")? {
                Value::Null => None,
                other => Some(other.as_i64()?),
            },
            lhs_prefix: String::new(),
            rhs_prefix: String::new(),
            runtime_ms: obj.get("runtime_ms")?.as_u64()?,
        })
    }

    /// One-line (or, on failure, few-line) human rendering.
    pub fn to_text(&self) -> String {
        let status = if self.verified { "PASS" } else { "FAIL" };
        let params = Value::Object(self.params.clone()).to_string();
        let mut out = format!(
            "[{status}] {} {} order={} ({} ms)",
            self.identity_id, params, self.order, self.runtime_ms
        );
        if let Some(e) = self.first_mismatch {
            out.push_str(&format!(
                "\n  first mismatch at q^{e}\n  lhs: {}\n  rhs: {}",
                self.lhs_prefix, self.rhs_prefix
            ));
        }
        out
    }
}

/// Render a coefficient list as a JSON array, keeping exact values: numbers
/// that fit in an `i64` stay numeric, anything larger becomes a decimal
/// string (never a float).
pub fn coeffs_to_json(coeffs: &[BigInt]) -> Value {
    Value::Array(
        coeffs
            .iter()
            .map(|c| {
                i64::try_from(c).map_or_else(|_| json!(c.to_string()), |n| json!(n))
            })
            .collect(),
    )
}
