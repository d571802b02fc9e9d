//! Named operator families: the four classical ones, the two order-`k`
//! types of the generalized Bochner-Krall problem, Appell operators and the
//! cubic family with eigenpolynomials `(x - p)^n`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::diffop::{DiffOp, DiffOpError, PolyDiffOp, XPoly};
use crate::exactnum::{format_rational, MPoly, RatFn, Rational, VAR_N};
use crate::opspec::{bindings_json, OperatorSpec};
use crate::parser::parse_mpoly;
use crate::recurrence::RecTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("invalid family spec: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    DiffOp(#[from] DiffOpError),
}

#[derive(Clone, Debug, PartialEq)]
pub enum FamilySpec {
    Hermite,
    Laguerre { alpha: Rational },
    Jacobi { alpha: Rational, beta: Rational },
    Bessel,
    /// `sum_{j=1..k} a_j x^(j-1) d^j + x d`; `a[j-1] = a_j`.
    Type1 { a: Vec<Rational> },
    /// `q'(G) G + x d` with `G = (sum_{m<l} a_m (x d)^m) d`; `a[m] = a_m`,
    /// `q[i]` is the coefficient of `t^i` (so `q[0] = 0`).
    Type2 { a: Vec<Rational>, q: Vec<Rational> },
    /// `sum_{j=1..k} a_j d^j + x d`.
    Appell { a: Vec<Rational> },
    /// `6 (x-p)^3 d^3 + nu (x-p)^2 d^2 + mu (x-p) d`.
    CubicPoint { p: Rational, nu: Rational, mu: Rational },
}

fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, CatalogError> {
    Err(CatalogError::InvalidSpec(msg.into()))
}

fn poly(cs: Vec<Rational>) -> XPoly<Rational> {
    XPoly::from_coeffs(cs)
}

/// `(x - p)^e`.
fn shifted_power(p: &Rational, e: usize) -> XPoly<Rational> {
    let lin = poly(vec![-p.clone(), int(1)]);
    (0..e).fold(XPoly::one(), |acc, _| &acc * &lin)
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Hermite => "hermite",
            FamilySpec::Laguerre { .. } => "laguerre",
            FamilySpec::Jacobi { .. } => "jacobi",
            FamilySpec::Bessel => "bessel",
            FamilySpec::Type1 { .. } => "type1",
            FamilySpec::Type2 { .. } => "type2",
            FamilySpec::Appell { .. } => "appell",
            FamilySpec::CubicPoint { .. } => "cubicpoint",
        }
    }

    pub fn is_classical(&self) -> bool {
        matches!(
            self,
            FamilySpec::Hermite | FamilySpec::Laguerre { .. } | FamilySpec::Jacobi { .. } | FamilySpec::Bessel
        )
    }

    /// Builds a spec from a family name and `key=value` arguments.
    ///
    /// | family | keys (default 0 unless noted) |
    /// |---|---|
    /// | laguerre | `alpha` |
    /// | jacobi | `alpha`, `beta` |
    /// | type1, appell | `k` (required), `a1..ak` |
    /// | type2 | `l` (required), `a0..a{l-1}`, `q1..`, optional `k` |
    /// | cubicpoint | `p`, `nu`, `mu` (default 1) |
    pub fn from_args(name: &str, args: &BTreeMap<String, Rational>) -> Result<Self, CatalogError> {
        let allowed: Vec<String> = match name {
            "hermite" | "bessel" => vec![],
            "laguerre" => vec!["alpha".into()],
            "jacobi" => vec!["alpha".into(), "beta".into()],
            "type1" | "appell" => {
                let k = Self::count(args, "k")?;
                std::iter::once("k".to_string()).chain((1..=k).map(|j| format!("a{j}"))).collect()
            }
            "type2" => {
                let l = Self::count(args, "l")?;
                let mut keys = vec!["l".to_string(), "k".to_string()];
                keys.extend((0..l).map(|m| format!("a{m}")));
                keys.extend(args.keys().filter(|k| Self::q_index(k).is_some()).cloned());
                keys
            }
            "cubicpoint" => vec!["p".into(), "nu".into(), "mu".into()],
            other => return invalid(format!("unknown family `{other}`")),
        };
        if let Some(bad) = args.keys().find(|k| !allowed.contains(k)) {
            return invalid(format!("unexpected argument `{bad}` for {name}"));
        }
        let get = |k: &str| args.get(k).cloned().unwrap_or_else(Rational::zero);
        let spec = match name {
            "hermite" => FamilySpec::Hermite,
            "bessel" => FamilySpec::Bessel,
            "laguerre" => FamilySpec::Laguerre { alpha: get("alpha") },
            "jacobi" => FamilySpec::Jacobi {
                alpha: get("alpha"),
                beta: get("beta"),
            },
            "type1" | "appell" => {
                let k = Self::count(args, "k")?;
                let a = (1..=k).map(|j| get(&format!("a{j}"))).collect();
                if name == "type1" {
                    FamilySpec::Type1 { a }
                } else {
                    FamilySpec::Appell { a }
                }
            }
            "type2" => {
                let l = Self::count(args, "l")?;
                let a = (0..l).map(|m| get(&format!("a{m}"))).collect();
                let top = args.keys().filter_map(|k| Self::q_index(k)).max().unwrap_or(0);
                let mut q = vec![Rational::zero(); top + 1];
                for (k, v) in args {
                    if let Some(i) = Self::q_index(k) {
                        q[i] = v.clone();
                    }
                }
                let spec = FamilySpec::Type2 { a, q };
                if let Some(k) = args.get("k") {
                    if Some(k.clone()) != Some(int(spec.order()? as i64)) {
                        return invalid(format!("k = {k} is not l * deg q"));
                    }
                }
                spec
            }
            _ => FamilySpec::CubicPoint {
                p: get("p"),
                nu: get("nu"),
                mu: args.get("mu").cloned().unwrap_or_else(Rational::one),
            },
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Parses `laguerre` plus `alpha=1/2`-style text.
    pub fn parse(name: &str, args: &str) -> Result<Self, CatalogError> {
        let map = crate::opspec::parse_bindings(args).map_err(|e| CatalogError::InvalidSpec(e.to_string()))?;
        Self::from_args(name, &map)
    }

    fn count(args: &BTreeMap<String, Rational>, key: &str) -> Result<usize, CatalogError> {
        match args.get(key) {
            Some(v) if v.is_integer() && *v >= int(1) && *v <= int(64) => Ok(v.to_integer().try_into().expect("small")),
            Some(v) => invalid(format!("{key} = {v} is not a positive integer")),
            None => invalid(format!("missing `{key}`")),
        }
    }

    fn q_index(key: &str) -> Option<usize> {
        key.strip_prefix('q')?.parse().ok()
    }

    fn validate(&self) -> Result<(), CatalogError> {
        match self {
            FamilySpec::Type1 { a } | FamilySpec::Appell { a } => {
                if a.last().is_none_or(Zero::is_zero) {
                    return invalid(format!("{}: a_k must be nonzero", self.name()));
                }
            }
            FamilySpec::Type2 { a, q } => {
                if a.last().is_none_or(Zero::is_zero) {
                    return invalid("type2: a_{l-1} must be nonzero");
                }
                if q.first().is_some_and(|c| !c.is_zero()) {
                    return invalid("type2: q must have zero constant term");
                }
                if q.iter().skip(1).all(Zero::is_zero) {
                    return invalid("type2: q must have positive degree");
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Order of the operator.
    pub fn order(&self) -> Result<usize, CatalogError> {
        Ok(match self {
            FamilySpec::Type1 { a } | FamilySpec::Appell { a } => a.len(),
            FamilySpec::Type2 { a, q } => {
                let deg = q.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
                a.len() * deg
            }
            FamilySpec::CubicPoint { .. } => 3,
            _ => 2,
        })
    }

    pub fn args(&self) -> BTreeMap<String, Rational> {
        let mut m = BTreeMap::new();
        match self {
            FamilySpec::Hermite | FamilySpec::Bessel => {}
            FamilySpec::Laguerre { alpha } => {
                m.insert("alpha".into(), alpha.clone());
            }
            FamilySpec::Jacobi { alpha, beta } => {
                m.insert("alpha".into(), alpha.clone());
                m.insert("beta".into(), beta.clone());
            }
            FamilySpec::Type1 { a } | FamilySpec::Appell { a } => {
                m.insert("k".into(), int(a.len() as i64));
                for (j, v) in a.iter().enumerate() {
                    m.insert(format!("a{}", j + 1), v.clone());
                }
            }
            FamilySpec::Type2 { a, q } => {
                m.insert("l".into(), int(a.len() as i64));
                for (j, v) in a.iter().enumerate() {
                    m.insert(format!("a{j}"), v.clone());
                }
                for (i, v) in q.iter().enumerate().skip(1).filter(|(_, v)| !v.is_zero()) {
                    m.insert(format!("q{i}"), v.clone());
                }
            }
            FamilySpec::CubicPoint { p, nu, mu } => {
                m.insert("p".into(), p.clone());
                m.insert("nu".into(), nu.clone());
                m.insert("mu".into(), mu.clone());
            }
        }
        m
    }

    pub fn to_json(&self) -> Value {
        json!({ "family": self.name(), "args": bindings_json(&self.args()) })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self.args().iter().map(|(k, v)| format!("{k}={}", format_rational(v))).collect();
        write!(f, "{}({})", self.name(), args.join(","))
    }
}

/// Hermite, Laguerre, Jacobi or Bessel operator, signed so that `lambda`
/// has positive leading coefficient.
pub fn classical_family(spec: &FamilySpec) -> Result<DiffOp<Rational>, CatalogError> {
    let coeffs = match spec {
        FamilySpec::Hermite => vec![poly(vec![int(0), int(1)]), poly(vec![int(-1)])],
        FamilySpec::Laguerre { alpha } => vec![poly(vec![-(alpha + int(1)), int(1)]), poly(vec![int(0), int(-1)])],
        FamilySpec::Jacobi { alpha, beta } => vec![
            poly(vec![alpha - beta, alpha + beta + int(2)]),
            poly(vec![int(-1), int(0), int(1)]),
        ],
        FamilySpec::Bessel => vec![poly(vec![int(2), int(2)]), poly(vec![int(0), int(0), int(1)])],
        other => return invalid(format!("{} is not a classical family", other.name())),
    };
    Ok(DiffOp::new(coeffs)?)
}

/// Operators of the conjectured classification and their relatives.
pub fn conjecture_family(spec: &FamilySpec) -> Result<DiffOp<Rational>, CatalogError> {
    spec.validate()?;
    let x_d = poly(vec![int(0), int(1)]);
    let op = match spec {
        FamilySpec::Type1 { a } => {
            let coeffs = a
                .iter()
                .enumerate()
                .map(|(i, aj)| {
                    let mut c = XPoly::monomial(i, aj.clone());
                    if i == 0 {
                        c = &c + &x_d;
                    }
                    c
                })
                .collect();
            DiffOp::new(coeffs)?
        }
        FamilySpec::Appell { a } => {
            let coeffs = a
                .iter()
                .enumerate()
                .map(|(i, aj)| {
                    let c = XPoly::constant(aj.clone());
                    if i == 0 {
                        &c + &x_d
                    } else {
                        c
                    }
                })
                .collect();
            DiffOp::new(coeffs)?
        }
        FamilySpec::Type2 { a, q } => {
            let theta = PolyDiffOp::x().compose(&PolyDiffOp::d());
            let inner = a.iter().rev().fold(PolyDiffOp::zero(), |acc, am| {
                acc.compose(&theta).add(&PolyDiffOp::identity().scale(am))
            });
            let g = inner.compose(&PolyDiffOp::d());
            let mut l = theta;
            for (i, qi) in q.iter().enumerate().skip(1) {
                if !qi.is_zero() {
                    l = l.add(&g.pow(i as u32).scale(&(qi * int(i as i64))));
                }
            }
            l.to_diffop().ok_or_else(|| CatalogError::InvalidSpec("type2 expansion has a zero-order term".into()))?
        }
        FamilySpec::CubicPoint { p, nu, mu } => DiffOp::new(vec![
            shifted_power(p, 1).scale(mu),
            shifted_power(p, 2).scale(nu),
            shifted_power(p, 3).scale(&int(6)),
        ])?,
        other => return invalid(format!("{} is a classical family", other.name())),
    };
    Ok(op)
}

/// Operator for any family.
pub fn family_operator(spec: &FamilySpec) -> Result<DiffOp<Rational>, CatalogError> {
    if spec.is_classical() {
        classical_family(spec)
    } else {
        conjecture_family(spec)
    }
}

/// Operator spec JSON for a family, with a `family` record alongside.
pub fn family_spec_json(spec: &FamilySpec) -> Result<Value, CatalogError> {
    let op = family_operator(spec)?;
    let mut v = OperatorSpec::from_diffop(&op).to_json();
    v["family"] = spec.to_json();
    v["lambda"] = Value::String(op.lambda().to_string());
    Ok(v)
}

/// Representative members of every family, used by sweep checks.
pub fn sample_specs() -> Vec<FamilySpec> {
    let r = |p: i64, q: i64| Rational::new(p.into(), q.into());
    vec![
        FamilySpec::Hermite,
        FamilySpec::Laguerre { alpha: int(1) },
        FamilySpec::Laguerre { alpha: r(1, 2) },
        FamilySpec::Jacobi { alpha: int(1), beta: int(2) },
        FamilySpec::Bessel,
        FamilySpec::Type1 { a: vec![int(1), int(2), int(3)] },
        FamilySpec::Appell { a: vec![int(1), r(-1, 2), int(2)] },
        FamilySpec::Type2 {
            a: vec![int(1), int(1)],
            q: vec![int(0), int(0), int(1)],
        },
        FamilySpec::CubicPoint { p: int(1), nu: int(2), mu: int(3) },
    ]
}

/// Which member of Theorem-style order-3 families a closed form refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderThreeKind {
    Type1,
    Appell,
}

fn form(text: &str) -> RatFn {
    RatFn::from_poly(parse_mpoly(text, &["n", "a1", "a2", "a3"]).expect("well-formed closed form"))
}

/// Published `b_0, b_1, b_2` for the order-3 type-1 and Appell families,
/// in `n` and symbolic `a1, a2, a3`, with `P_{-2} = P_{-1} = 0`.
pub fn printed_recurrence(kind: OrderThreeKind) -> Vec<RatFn> {
    match kind {
        OrderThreeKind::Type1 => vec![
            form("-(a1 + 2*(n-1)*a2 + 3*(n-1)*(n-2)*a3)"),
            form("(n-1)*(a2 + (3*n-6)*a3)*(a1 + (n-2)*a2 + (n-2)*(n-3)*a3)"),
            form("-(n-1)*(n-2)*a3*(a1 + (n-3)*a2 + (n-3)*(n-4)*a3)*(a1 + (n-2)*a2 + (n-2)*(n-3)*a3)"),
        ],
        OrderThreeKind::Appell => vec![form("-a1"), form("-a2*(n-1)"), form("-a3*(n-1)*(n-2)")],
    }
}

/// [`printed_recurrence`] at the parameters of `spec`, which must be a
/// type-1 or Appell spec with `k = 3`.
pub fn expected_recurrence(spec: &FamilySpec) -> Result<Vec<RatFn>, CatalogError> {
    let (kind, a) = match spec {
        FamilySpec::Type1 { a } if a.len() == 3 => (OrderThreeKind::Type1, a),
        FamilySpec::Appell { a } if a.len() == 3 => (OrderThreeKind::Appell, a),
        _ => return invalid(format!("no printed recurrence for {spec}")),
    };
    let bind: BTreeMap<String, Rational> = a.iter().enumerate().map(|(i, v)| (format!("a{}", i + 1), v.clone())).collect();
    Ok(printed_recurrence(kind)
        .iter()
        .map(|b| b.evaluate(&bind).expect("polynomial forms"))
        .collect())
}

/// Outcome of comparing closed forms against computed values under the
/// global index shifts `n -> n + sigma`, `sigma` in `{-1, 0, 1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftScan {
    /// Whether `printed_j(n + sigma) == computed_j(n)` held everywhere.
    pub matches: BTreeMap<i64, bool>,
    /// First failing `(j, n)` per shift, for concrete comparisons.
    pub first_mismatch: BTreeMap<i64, (usize, i64)>,
}

impl ShiftScan {
    /// The smallest-magnitude shift that matches.
    pub fn sigma(&self) -> Option<i64> {
        [0, 1, -1].into_iter().find(|s| self.matches.get(s) == Some(&true))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "sigma": self.sigma(),
            "matches": self.matches.iter().map(|(s, m)| (s.to_string(), json!(m))).collect::<serde_json::Map<_, _>>(),
            "first_mismatch": self.first_mismatch.iter()
                .map(|(s, (j, n))| (s.to_string(), json!({ "j": j, "n": n })))
                .collect::<serde_json::Map<_, _>>(),
        })
    }
}

const SHIFTS: [i64; 3] = [-1, 0, 1];

/// Compares printed closed forms with symbolic `b_j(n)`.
pub fn shift_scan_symbolic(printed: &[RatFn], computed: &[RatFn]) -> ShiftScan {
    let mut matches = BTreeMap::new();
    for s in SHIFTS {
        let ok = printed.len() <= computed.len()
            && printed.iter().zip(computed).all(|(p, c)| p.shift(VAR_N, s) == *c);
        matches.insert(s, ok);
    }
    ShiftScan {
        matches,
        first_mismatch: BTreeMap::new(),
    }
}

/// Compares printed closed forms with an extracted table at every row.
pub fn shift_scan_table(printed: &[RatFn], table: &RecTable<Rational>) -> ShiftScan {
    let mut matches = BTreeMap::new();
    let mut first = BTreeMap::new();
    for s in SHIFTS {
        let mut bad = None;
        'rows: for n in 0..table.n_max() {
            for (j, p) in printed.iter().enumerate() {
                let Some(have) = table.b(j, n) else { continue };
                let want = p.eval_n(n as i64 + s).ok();
                if want.as_ref() != Some(have) {
                    bad = Some((j, n as i64));
                    break 'rows;
                }
            }
        }
        matches.insert(s, bad.is_none());
        if let Some(b) = bad {
            first.insert(s, b);
        }
    }
    ShiftScan {
        matches,
        first_mismatch: first,
    }
}

/// `lambda` for a cubicpoint spec, for reports.
pub fn cubicpoint_lambda(nu: &Rational, mu: &Rational) -> MPoly {
    let n = MPoly::var_n();
    let ff = |i: u32| crate::exactnum::falling_factorial_poly(0, i as usize);
    &(&ff(3).scale(&int(6)) + &ff(2).scale(nu)) + &n.scale(mu)
}
