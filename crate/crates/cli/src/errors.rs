//! Error payloads and exit codes.

use bochner_lab::catalog::CatalogError;
use bochner_lab::darboux::DarbouxError;
use bochner_lab::diffop::DiffOpError;
use bochner_lab::exactnum::ExactError;
use bochner_lab::opspec::OpSpecError;
use bochner_lab::recurrence::RecurrenceError;
use bochner_lab::shiftop::ShiftError;
use bochner_lab::symbolic::SymbolicError;
use serde_json::{json, Value};
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERDICT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    /// A computation failed or a check did not hold.
    #[error("{message}")]
    Math { kind: String, message: String, payload: Value },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Math { .. } => EXIT_VERDICT,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Usage(m) => json!({ "kind": "Usage", "message": m }),
            CliError::Math { kind, message, payload } => {
                json!({ "kind": kind, "message": message, "payload": payload })
            }
        }
    }

    fn math(kind: &str, message: String, payload: Value) -> Self {
        CliError::Math {
            kind: kind.to_string(),
            message,
            payload,
        }
    }
}

impl From<DiffOpError> for CliError {
    fn from(e: DiffOpError) -> Self {
        let payload = match &e {
            DiffOpError::Resonance { m, n } => json!({ "m": m, "n": n }),
            DiffOpError::ZeroTopCoefficient(i) | DiffOpError::SelfCheck(i) => json!({ "index": i }),
            DiffOpError::NotExactlySolvable(s) => json!({ "reason": s }),
            DiffOpError::Empty => Value::Null,
        };
        let kind = match &e {
            DiffOpError::Resonance { .. } => "Resonance",
            DiffOpError::ZeroTopCoefficient(_) => "ZeroTopCoefficient",
            DiffOpError::SelfCheck(_) => "SelfCheck",
            DiffOpError::NotExactlySolvable(_) => "NotExactlySolvable",
            DiffOpError::Empty => "Empty",
        };
        CliError::math(kind, e.to_string(), payload)
    }
}

impl From<RecurrenceError> for CliError {
    fn from(e: RecurrenceError) -> Self {
        let (kind, payload) = match &e {
            RecurrenceError::DegreeTooHigh { degree, max } => ("DegreeTooHigh", json!({ "degree": degree, "max": max })),
            RecurrenceError::TooShort(n) => return CliError::usage(format!("need N >= 2, got {n}")),
            RecurrenceError::NotMonic(i) => ("NotMonic", json!({ "index": i })),
            RecurrenceError::InsufficientSamples { have, need } => {
                ("InsufficientSamples", json!({ "have": have, "need": need }))
            }
            RecurrenceError::NoFit(s) => ("NoFit", json!({ "reason": s })),
        };
        CliError::math(kind, e.to_string(), payload)
    }
}

impl From<ShiftError> for CliError {
    fn from(e: ShiftError) -> Self {
        let (kind, payload) = match &e {
            ShiftError::Mismatch {
                stage,
                offset,
                difference,
            } => (
                "Mismatch",
                json!({ "stage": stage, "offset": offset, "difference": difference.to_string() }),
            ),
            ShiftError::NotReconstructed => ("NotReconstructed", Value::Null),
            ShiftError::Unbounded => ("Unbounded", Value::Null),
            ShiftError::Exact(_) => ("Exact", Value::Null),
        };
        CliError::math(kind, e.to_string(), payload)
    }
}

impl From<DarbouxError> for CliError {
    fn from(e: DarbouxError) -> Self {
        let (kind, payload) = match &e {
            DarbouxError::Breakdown(n) => ("Breakdown", json!({ "n": n })),
            DarbouxError::NotTridiagonal(s) => ("NotTridiagonal", json!({ "reason": s })),
            DarbouxError::TooShort { have, need } => ("TooShort", json!({ "have": have, "need": need })),
            DarbouxError::NoOperator(m) => ("NoOperator", json!({ "max_order": m })),
            DarbouxError::Exact(_) => ("Exact", Value::Null),
            DarbouxError::Recurrence(r) => return r.clone().into(),
        };
        CliError::math(kind, e.to_string(), payload)
    }
}

impl From<SymbolicError> for CliError {
    fn from(e: SymbolicError) -> Self {
        let (kind, payload) = match &e {
            SymbolicError::IdenticallyResonant(k) => ("IdenticallyResonant", json!({ "k": k })),
            SymbolicError::NotPolynomial => ("NotPolynomial", Value::Null),
            SymbolicError::Unbound(v) => return CliError::usage(format!("parameters left unbound: {v}")),
            SymbolicError::BadLambda => ("BadLambda", Value::Null),
            SymbolicError::Parse(p) => return CliError::usage(p.to_string()),
            SymbolicError::DiffOp(d) => return d.clone().into(),
            SymbolicError::Exact(x) => return x.clone().into(),
        };
        CliError::math(kind, e.to_string(), payload)
    }
}

impl From<ExactError> for CliError {
    fn from(e: ExactError) -> Self {
        match e {
            ExactError::BadLiteral(_) | ExactError::Unbound(_) => CliError::usage(e.to_string()),
            _ => CliError::math("Exact", e.to_string(), Value::Null),
        }
    }
}

impl From<OpSpecError> for CliError {
    fn from(e: OpSpecError) -> Self {
        match e {
            OpSpecError::Symbolic(s) => s.into(),
            OpSpecError::DiffOp(d) => d.into(),
            other => CliError::usage(other.to_string()),
        }
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::InvalidSpec(s) => CliError::usage(format!("invalid family spec: {s}")),
            CatalogError::DiffOp(d) => d.into(),
        }
    }
}
