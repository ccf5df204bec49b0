//! Verdicts, reports and their canonical JSON encodings.
//!
//! `F_q` elements are written as coordinate vectors over `F_p`; JSON objects
//! use sorted keys, so equal reports serialize to identical bytes.

use serde::Serialize;
use serde_json::{json, Value};

use crate::curve::RingElem;
use crate::fq::{Fq, FqField};
use crate::frac::Frac;
use crate::laurent::Laurent;
use crate::poly::UniPoly;

pub const SCHEMA_VERSION: u32 = 1;

/// Polynomials longer than this are summarized by degree only.
const INLINE_LIMIT: usize = 64;

/// Outcome of one verification.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub pass: bool,
    /// Where the two sides differ, present on failure.
    pub witness: Option<Value>,
    /// Absolute `π`-precision that was compared, for series checks.
    pub checked_precision: Option<i128>,
    pub detail: Value,
}

impl Verdict {
    pub fn exact(pass: bool, witness: Option<Value>, detail: Value) -> Self {
        Verdict { pass, witness: if pass { None } else { witness }, checked_precision: None, detail }
    }

    /// Conjunction; the first failing witness is kept.
    pub fn all(parts: Vec<(String, Verdict)>) -> Self {
        let pass = parts.iter().all(|(_, v)| v.pass);
        let witness = parts
            .iter()
            .find(|(_, v)| !v.pass)
            .map(|(name, v)| json!({ "check": name, "witness": v.witness.clone().unwrap_or(Value::Null) }));
        let checked_precision = parts.iter().filter_map(|(_, v)| v.checked_precision).min();
        let detail = Value::Array(
            parts.iter().map(|(name, v)| json!({ "check": name, "pass": v.pass, "detail": v.detail })).collect(),
        );
        Verdict { pass, witness, checked_precision, detail }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub task: String,
    pub ring: String,
    pub params: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    #[serde(serialize_with = "ser_opt_int")]
    pub checked_precision: Option<i128>,
    pub elapsed_ms: u64,
    pub worker_count: usize,
}

fn ser_opt_int<S: serde::Serializer>(x: &Option<i128>, s: S) -> std::result::Result<S::Ok, S::Error> {
    x.map(int_json).serialize(s)
}

impl Report {
    pub fn passed(&self) -> Option<bool> {
        self.verdict.as_deref().map(|v| v == "pass")
    }

    /// Canonical JSON: sorted keys, two-space indentation, trailing newline.
    pub fn to_canonical_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
        s.push('\n');
        s
    }

    /// The report without its timing fields, for determinism comparisons.
    pub fn stable_content(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Some(obj) = v.as_object_mut() {
            obj.remove("elapsed_ms");
            obj.remove("worker_count");
            obj.remove("timings");
        }
        v
    }
}

/// Integers beyond the `i64` range are written as decimal strings.
pub fn int_json(x: i128) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn fq_json(f: &FqField, a: Fq) -> Value {
    json!(f.coords(a))
}

pub fn poly_json(f: &FqField, p: &UniPoly) -> Value {
    if p.len() > INLINE_LIMIT {
        return json!({ "degree": p.deg(), "terms": p.coeffs().iter().filter(|&&c| c != 0).count() });
    }
    Value::Array(p.coeffs().iter().map(|&c| fq_json(f, c)).collect())
}

pub fn ring_json(f: &FqField, x: &RingElem) -> Value {
    json!({ "a": poly_json(f, &x.a), "b": poly_json(f, &x.b) })
}

pub fn frac_json(f: &FqField, x: &Frac) -> Value {
    let den: Vec<Value> = x.den().iter().map(|(k, e)| json!({ "atom": poly_json(f, k.poly()), "exp": e })).collect();
    json!({ "num": ring_json(f, x.num()), "den": den })
}

pub fn laurent_json(f: &FqField, x: &Laurent) -> Value {
    let prec = if x.is_exact() { Value::Null } else { int_json(x.prec()) };
    let v = if x.is_zero() { Value::Null } else { int_json(x.valuation()) };
    let coeffs: Vec<Value> = x.stored().iter().map(|&c| fq_json(f, c)).collect();
    json!({ "v_start": v, "prec": prec, "coeffs": coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_json_sorts_keys() {
        let r = Report {
            schema_version: SCHEMA_VERSION,
            task: "zeta".into(),
            ring: "genus0-q2".into(),
            params: json!({ "prec": 10, "s": [] }),
            verdict: None,
            value: Some(json!(1)),
            witness: None,
            detail: None,
            timings: None,
            checked_precision: Some(10),
            elapsed_ms: 3,
            worker_count: 1,
        };
        let s = r.to_canonical_json();
        let keys: Vec<usize> = ["checked_precision", "elapsed_ms", "params", "ring", "schema_version", "task", "value"]
            .iter()
            .map(|k| s.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(!s.contains("witness"));
    }

    #[test]
    fn field_elements_as_coordinates() {
        let f = FqField::new(4).unwrap();
        assert_eq!(fq_json(&f, f.generator()), json!([0, 1]));
        let l = Laurent::exact(-1, vec![1, 0, 1]);
        assert_eq!(laurent_json(&f, &l)["v_start"], json!(-1));
        assert_eq!(int_json(1 << 80), json!("1208925819614629174706176"));
    }
}
