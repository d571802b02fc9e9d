//! Operator spec files.
//!
//! ```json
//! { "vars": ["a31", "a30"],
//!   "coeffs": { "1": "x", "3": "x^2 + a31*x + a30" },
//!   "params": { "a31": "2" } }
//! ```
//!
//! Keys of `coeffs` are derivative orders; missing orders are zero. The
//! optional `params` map binds some or all of `vars` to rational values.
//! Other top-level keys are ignored, so catalog output can be fed back in.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::diffop::{DiffOp, DiffOpError};
use crate::exactnum::{format_rational, parse_rational, ExactError, Rational};
use crate::symbolic::{SymbolicAnsatz, SymbolicError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpSpecError {
    #[error("malformed operator spec: {0}")]
    Json(String),
    #[error("bad derivative order `{0}`")]
    BadOrder(String),
    #[error("`{0}` is reserved and cannot be a parameter")]
    ReservedName(String),
    #[error("binding for undeclared parameter `{0}`")]
    UndeclaredBinding(String),
    #[error("parameters left unbound: {0}")]
    Unbound(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error(transparent)]
    DiffOp(#[from] DiffOpError),
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct OperatorSpec {
    #[serde(default)]
    pub vars: Vec<String>,
    pub coeffs: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
}

impl OperatorSpec {
    pub fn from_json_str(text: &str) -> Result<Self, OpSpecError> {
        let spec: OperatorSpec = serde_json::from_str(text).map_err(|e| OpSpecError::Json(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_json(value: &Value) -> Result<Self, OpSpecError> {
        Self::from_json_str(&value.to_string())
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("plain strings serialize")
    }

    /// Spec for a concrete operator.
    pub fn from_diffop(op: &DiffOp<Rational>) -> Self {
        let coeffs = op
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| ((i + 1).to_string(), a.to_string()))
            .collect();
        OperatorSpec {
            vars: Vec::new(),
            coeffs,
            params: BTreeMap::new(),
        }
    }

    fn validate(&self) -> Result<(), OpSpecError> {
        for v in &self.vars {
            if v == "x" || v == "n" {
                return Err(OpSpecError::ReservedName(v.clone()));
            }
        }
        for k in self.params.keys() {
            if !self.vars.contains(k) {
                return Err(OpSpecError::UndeclaredBinding(k.clone()));
            }
        }
        self.orders().map(|_| ())
    }

    fn orders(&self) -> Result<BTreeMap<usize, &str>, OpSpecError> {
        self.coeffs
            .iter()
            .map(|(k, v)| match k.parse::<usize>() {
                Ok(i) if i >= 1 => Ok((i, v.as_str())),
                _ => Err(OpSpecError::BadOrder(k.clone())),
            })
            .collect()
    }

    /// Values in `params`, overridden by `extra`.
    pub fn bindings(&self, extra: &BTreeMap<String, Rational>) -> Result<BTreeMap<String, Rational>, OpSpecError> {
        let mut out = BTreeMap::new();
        for (k, v) in &self.params {
            out.insert(k.clone(), parse_rational(v)?);
        }
        for (k, v) in extra {
            if !self.vars.contains(k) {
                return Err(OpSpecError::UndeclaredBinding(k.clone()));
            }
            out.insert(k.clone(), v.clone());
        }
        Ok(out)
    }

    /// The operator with every declared variable left free.
    pub fn to_symbolic(&self) -> Result<SymbolicAnsatz, OpSpecError> {
        let orders = self.orders()?;
        let top = orders.keys().next_back().copied().unwrap_or(0);
        let texts: Vec<&str> = (1..=top).map(|i| orders.get(&i).copied().unwrap_or("0")).collect();
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        Ok(SymbolicAnsatz::from_texts(&texts, &vars)?)
    }

    /// The operator with the bindings from `params` and `extra` applied;
    /// variables without a value stay symbolic.
    pub fn to_bound(&self, extra: &BTreeMap<String, Rational>) -> Result<SymbolicAnsatz, OpSpecError> {
        Ok(self.to_symbolic()?.bind(&self.bindings(extra)?)?)
    }

    /// Concrete operator; every variable needs a value.
    pub fn to_concrete(&self, extra: &BTreeMap<String, Rational>) -> Result<DiffOp<Rational>, OpSpecError> {
        let b = self.bindings(extra)?;
        let missing: Vec<&str> = self.vars.iter().filter(|v| !b.contains_key(*v)).map(String::as_str).collect();
        if !missing.is_empty() {
            return Err(OpSpecError::Unbound(missing.join(",")));
        }
        Ok(self.to_symbolic()?.specialize(&b)?)
    }
}

/// `a=1,b=-2/3` into a map.
pub fn parse_bindings(text: &str) -> Result<BTreeMap<String, Rational>, OpSpecError> {
    let mut out = BTreeMap::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| OpSpecError::Json(format!("expected name=value, got `{item}`")))?;
        out.insert(k.trim().to_string(), parse_rational(v.trim())?);
    }
    Ok(out)
}

/// Map of rationals as `"p/q"` strings.
pub fn bindings_json(b: &BTreeMap<String, Rational>) -> Value {
    Value::Object(b.iter().map(|(k, v)| (k.clone(), Value::String(format_rational(v)))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn symbolic_and_concrete() {
        let spec = OperatorSpec::from_json_str(
            r#"{"vars":["a31","a30","a21","a20"],"coeffs":{"1":"x","2":"a21*x + a20","3":"x^2 + a31*x + a30"}}"#,
        )
        .unwrap();
        let sym = spec.to_symbolic().unwrap();
        assert_eq!(sym.params().len(), 4);
        assert!(matches!(spec.to_concrete(&BTreeMap::new()), Err(OpSpecError::Unbound(_))));
        let b = parse_bindings("a31=0, a30=1, a21=0, a20=0").unwrap();
        let op = spec.to_concrete(&b).unwrap();
        assert_eq!(op.order(), 3);
        assert_eq!(op.a(3, 2), q(1));
        assert_eq!(op.lambda_at(4), q(4));
    }

    #[test]
    fn round_trip_and_errors() {
        let op = DiffOp::new(vec![
            crate::diffop::XPoly::from_coeffs(vec![q(0), q(1)]),
            crate::diffop::XPoly::from_coeffs(vec![q(-1)]),
        ])
        .unwrap();
        let spec = OperatorSpec::from_diffop(&op);
        let back = OperatorSpec::from_json(&spec.to_json()).unwrap();
        assert_eq!(back.to_concrete(&BTreeMap::new()).unwrap(), op);
        assert!(matches!(OperatorSpec::from_json_str(r#"{"coeffs":{"0":"x"}}"#), Err(OpSpecError::BadOrder(_))));
        assert!(matches!(OperatorSpec::from_json_str(r#"{"vars":["x"],"coeffs":{}}"#), Err(OpSpecError::ReservedName(_))));
        assert!(matches!(OperatorSpec::from_json_str("[1]"), Err(OpSpecError::Json(_))));
        assert!(matches!(
            OperatorSpec::from_json_str(r#"{"coeffs":{"1":"x"},"params":{"a":"1"}}"#),
            Err(OpSpecError::UndeclaredBinding(_))
        ));
        let gap = OperatorSpec::from_json_str(r#"{"coeffs":{"1":"x","3":"1"}}"#).unwrap();
        assert_eq!(gap.to_concrete(&BTreeMap::new()).unwrap().order(), 3);
    }
}
