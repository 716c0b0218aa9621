//! Machine-readable reports. Exact values are written as integer-pair
//! rationals `{"num": "..", "den": ".."}` and hbar-maps as exponent-keyed
//! objects; floats appear only in fields named `gevrey_*`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bargmann::BargmannVector;
use crate::exact::{HbarScalar, Monomial, MultiPoly, Rational, VarList};
use crate::heisenberg::QOperator;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRepr {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for RationalRepr {
    fn from(q: &Rational) -> Self {
        Self {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        }
    }
}

impl RationalRepr {
    pub fn to_rational(&self) -> Option<Rational> {
        let n = self.num.parse().ok()?;
        let d: num_bigint::BigInt = self.den.parse().ok()?;
        if d == 0.into() {
            return None;
        }
        Some(Rational::new(n, d))
    }
}

/// `#[serde(with = ...)]` adapter for a single rational.
pub mod rational_serde {
    use super::*;
    use serde::{de::Error, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        RationalRepr::from(q).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        RationalRepr::deserialize(d)?
            .to_rational()
            .ok_or_else(|| D::Error::custom("malformed rational"))
    }
}

pub fn rational_json(q: &Rational) -> Value {
    serde_json::to_value(RationalRepr::from(q)).expect("plain struct")
}

pub fn rational_from_json(v: &Value) -> Option<Rational> {
    serde_json::from_value::<RationalRepr>(v.clone()).ok()?.to_rational()
}

/// `{"<k>": rational, ...}` over the nonzero hbar exponents.
pub fn hbar_json(s: &HbarScalar) -> Value {
    let map: serde_json::Map<String, Value> =
        s.terms().map(|(k, c)| (k.to_string(), rational_json(c))).collect();
    Value::Object(map)
}

pub fn hbar_from_json(v: &Value) -> Option<HbarScalar> {
    let mut out = HbarScalar::zero();
    for (k, c) in v.as_object()? {
        out.add_term(k.parse().ok()?, rational_from_json(c)?);
    }
    Some(out)
}

/// `[{"ad": i, "a": j, "coeff": hbar-map}, ...]`.
pub fn operator_json(f: &QOperator) -> Value {
    Value::Array(
        f.terms()
            .map(|((i, j), c)| serde_json::json!({"ad": i, "a": j, "coeff": hbar_json(c)}))
            .collect(),
    )
}

pub fn operator_from_json(v: &Value) -> Option<QOperator> {
    let mut out = QOperator::zero();
    for t in v.as_array()? {
        let i = u32::try_from(t.get("ad")?.as_u64()?).ok()?;
        let j = u32::try_from(t.get("a")?.as_u64()?).ok()?;
        out.add_term(i, j, hbar_from_json(t.get("coeff")?)?);
    }
    Some(out)
}

/// `[{"z": m, "coeff": hbar-map}, ...]`.
pub fn vector_json(v: &BargmannVector) -> Value {
    Value::Array(
        v.terms()
            .map(|(m, c)| serde_json::json!({"z": m, "coeff": hbar_json(c)}))
            .collect(),
    )
}

/// `{"vars": [...], "terms": [{"exponents": [...], "coeff": rational}, ...]}`.
pub fn poly_json(p: &MultiPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(m, c)| serde_json::json!({"exponents": m.0, "coeff": rational_json(c)}))
        .collect();
    serde_json::json!({"vars": p.vars().names(), "terms": terms})
}

pub fn poly_from_json(v: &Value) -> Option<MultiPoly> {
    let names: Vec<String> = serde_json::from_value(v.get("vars")?.clone()).ok()?;
    let vars = VarList::new(&names);
    let mut out = MultiPoly::zero(&vars);
    for t in v.get("terms")?.as_array()? {
        let exps: Vec<u32> = serde_json::from_value(t.get("exponents")?.clone()).ok()?;
        if exps.len() != vars.len() {
            return None;
        }
        out.add_term(Monomial(exps), rational_from_json(t.get("coeff")?)?);
    }
    Some(out)
}

/// One property check carried by a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: Vec<String>,
    pub result: Value,
    #[serde(default)]
    pub checks: Vec<Verdict>,
    /// Human-readable rendering, keyed by field name.
    #[serde(default)]
    pub text: BTreeMap<String, String>,
}

impl Report {
    pub fn new(command: &[String], result: Value) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.to_vec(),
            result,
            checks: Vec::new(),
            text: BTreeMap::new(),
        }
    }

    pub fn with_text(mut self, key: &str, value: impl ToString) -> Self {
        self.text.insert(key.to_string(), value.to_string());
        self
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are plain JSON")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.text {
            out.push_str(&format!("{k}: {v}\n"));
        }
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("[{mark}] {}: {}\n", c.name, c.detail));
        }
        out
    }
}
