//! Command-line front end for `bochner-lab`.
//!
//! Every command prints one JSON document (or CSV for `recur`) on stdout.
//! Exit status: 0 success, 1 a computation failed or a check did not hold,
//! 2 bad usage.

pub mod errors;
pub mod paper;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use bochner_lab::catalog::{family_operator, family_spec_json, FamilySpec};
use bochner_lab::darboux::{bispectral_completion, factor_lu, swap_and_transform, Seed};
use bochner_lab::diffop::DiffOp;
use bochner_lab::exactnum::{parse_rational, Rational, VAR_N};
use bochner_lab::opspec::{parse_bindings, OperatorSpec};
use bochner_lab::parser::parse_mpoly;
use bochner_lab::recurrence::{recurrence_table, ReconstructOptions, RecTable};
use bochner_lab::shiftop::{ad_condition_check, ShiftOp};
use bochner_lab::symbolic::{parameter_constraints, symbolic_b, Cascade, SymbolicAnsatz};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use errors::{CliError, EXIT_OK, EXIT_USAGE, EXIT_VERDICT};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "BOCHNER_LAB_THREADS";

#[derive(Parser, Debug)]
#[command(name = "bochner-lab", version, about = "Exact eigenpolynomials, recurrences and shift operators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Monic eigenpolynomials P_0..P_N.
    Eigenpolys {
        #[command(flatten)]
        op: OpArgs,
        #[arg(short = 'n', long = "n")]
        n: usize,
        #[arg(long, value_enum, default_value_t = TextFormat::Json)]
        format: TextFormat,
    },
    /// Recurrence table x P_n = P_{n+1} + sum_j b_j(n) P_{n-j}.
    Recur {
        #[command(flatten)]
        op: OpArgs,
        #[arg(short = 'n', long = "n")]
        n: usize,
        /// Fit each column as a rational function of n.
        #[arg(long)]
        reconstruct: bool,
        /// Samples held back to validate each fit.
        #[arg(long, default_value_t = 5)]
        holdout: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// ad-condition certificate for the operator and its recurrence.
    Adcheck {
        #[command(flatten)]
        op: OpArgs,
        #[arg(short = 'n', long = "n", default_value_t = 40)]
        n: usize,
    },
    /// b_j(n) as rational functions of n and the free parameters.
    #[command(name = "symbolic-b")]
    SymbolicB {
        #[command(flatten)]
        op: OpArgs,
        #[arg(long)]
        jmax: usize,
        #[arg(long, value_enum, default_value_t = CascadeArg::ShiftAware)]
        cascade: CascadeArg,
    },
    /// Coefficients of powers of n in the numerator of b_j.
    Constraints {
        #[command(flatten)]
        op: OpArgs,
        /// Index of the recurrence coefficient b_j.
        #[arg(long)]
        j: usize,
        /// Keep only the part of degree <= 1 in the free parameters.
        #[arg(long)]
        linearize: bool,
        /// Multiply by this polynomial instead of taking the numerator.
        #[arg(long)]
        clear: Option<String>,
        #[arg(long, value_enum, default_value_t = CascadeArg::ShiftAware)]
        cascade: CascadeArg,
    },
    /// One Darboux step on the three-term recurrence of the operator.
    Darboux {
        #[command(flatten)]
        op: OpArgs,
        /// Spectral shift: factors Lambda - c = L U.
        #[arg(long)]
        c: String,
        /// h(0), or `auto` for 1.
        #[arg(long, default_value = "auto")]
        h0: String,
        /// Number of polynomials to transform.
        #[arg(short = 'n', long = "n")]
        n: usize,
        /// Search for differential operators of at most this order having
        /// the transformed polynomials as eigenfunctions.
        #[arg(long)]
        complete_order: Option<usize>,
        /// Allowed excess degree of the coefficients in the search.
        #[arg(long, default_value_t = 0)]
        slack: usize,
    },
    /// Operator spec for a named family.
    Catalog {
        /// hermite, laguerre, jacobi, bessel, type1, type2, appell or cubicpoint.
        #[arg(long)]
        family: String,
        /// Comma separated `name=value` list.
        #[arg(long, default_value = "")]
        args: String,
    },
    /// Re-run the published computations.
    #[command(name = "verify-paper")]
    VerifyPaper {
        /// One of 3.1, 3.2, 4, 5, appendix, main; all cases when omitted.
        #[arg(long)]
        case: Option<String>,
    },
}

/// Where the operator comes from.
#[derive(Args, Debug, Clone)]
pub struct OpArgs {
    /// Operator spec JSON file.
    #[arg(long, conflicts_with = "family")]
    pub op: Option<PathBuf>,
    /// Catalog family instead of a file.
    #[arg(long)]
    pub family: Option<String>,
    /// Family arguments, e.g. `k=3,a3=1`.
    #[arg(long = "args", default_value = "", requires = "family")]
    pub family_args: String,
    /// Parameter values, e.g. `a31=1,a30=0`.
    #[arg(long, default_value = "")]
    pub bind: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TextFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CascadeArg {
    ShiftAware,
    AsPrinted,
}

impl From<CascadeArg> for Cascade {
    fn from(c: CascadeArg) -> Self {
        match c {
            CascadeArg::ShiftAware => Cascade::ShiftAware,
            CascadeArg::AsPrinted => Cascade::AsPrinted,
        }
    }
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli.command) {
        Ok((code, body)) => Outcome {
            code,
            stdout: body,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: render(json!({ "error": e.to_json() })),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Pretty JSON with the schema tag; keys come out sorted.
fn render(mut v: Value) -> String {
    if let Value::Object(m) = &mut v {
        m.insert("schema".into(), json!(1));
    }
    let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
    s.push('\n');
    s
}

/// Worker count from the environment, defaulting to the number of CPUs.
pub fn thread_cap() -> Result<usize, CliError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k),
            _ => Err(CliError::usage(format!("{THREADS_ENV} must be a positive integer, got `{v}`"))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

enum Source {
    Spec(OperatorSpec),
    Family(FamilySpec),
}

fn load(op: &OpArgs) -> Result<(Source, BTreeMap<String, Rational>), CliError> {
    let bind = parse_bindings(&op.bind)?;
    let src = match (&op.op, &op.family) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
            Source::Spec(OperatorSpec::from_json_str(&text)?)
        }
        (None, Some(name)) => {
            if !bind.is_empty() {
                return Err(CliError::usage("--bind applies to --op files; pass family values in --args"));
            }
            Source::Family(FamilySpec::parse(name, &op.family_args)?)
        }
        _ => return Err(CliError::usage("exactly one of --op or --family is required")),
    };
    Ok((src, bind))
}

fn concrete(op: &OpArgs) -> Result<DiffOp<Rational>, CliError> {
    match load(op)? {
        (Source::Spec(s), bind) => Ok(s.to_concrete(&bind)?),
        (Source::Family(f), _) => Ok(family_operator(&f)?),
    }
}

fn symbolic(op: &OpArgs) -> Result<SymbolicAnsatz, CliError> {
    match load(op)? {
        (Source::Spec(s), bind) => Ok(s.to_bound(&bind)?),
        (Source::Family(f), _) => {
            let spec = OperatorSpec::from_diffop(&family_operator(&f)?);
            Ok(spec.to_symbolic()?)
        }
    }
}

fn need_n(n: usize) -> Result<(), CliError> {
    if n < 2 {
        return Err(CliError::usage(format!("N must be at least 2, got {n}")));
    }
    Ok(())
}

fn rat(text: &str, what: &str) -> Result<Rational, CliError> {
    parse_rational(text.trim()).map_err(|_| CliError::usage(format!("{what}: `{text}` is not a rational number")))
}

/// Reconstructed `Lambda` for a concrete operator.
fn lambda_of(l: &DiffOp<Rational>, n: usize, holdout: usize) -> Result<(ShiftOp, RecTable<Rational>), CliError> {
    let seq = l.eigen_sequence(n)?;
    let mut table = recurrence_table(&seq)?;
    table.reconstruct(ReconstructOptions {
        holdout,
        ..ReconstructOptions::default()
    })?;
    Ok((ShiftOp::from_rectable(&table)?, table))
}

fn execute(cmd: &Command) -> Result<(i32, String), CliError> {
    match cmd {
        Command::Eigenpolys { op, n, format } => {
            need_n(*n)?;
            let l = concrete(op)?;
            let seq = l.eigen_sequence(*n)?;
            Ok((EXIT_OK, match format {
                TextFormat::Text => seq
                    .polys()
                    .iter()
                    .enumerate()
                    .map(|(k, p)| format!("P_{k} = {p}\n"))
                    .collect(),
                TextFormat::Json => render(json!({
                    "operator": l.to_string(),
                    "lambda": l.lambda().to_string(),
                    "polys": seq.polys().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                })),
            }))
        }
        Command::Recur {
            op,
            n,
            reconstruct,
            holdout,
            format,
        } => {
            need_n(*n)?;
            let l = concrete(op)?;
            let seq = l.eigen_sequence(*n)?;
            let mut table = recurrence_table(&seq)?;
            if !table.verify(&seq) {
                return Err(CliError::Math {
                    kind: "SelfCheck".into(),
                    message: "recurrence table does not reproduce x P_n".into(),
                    payload: Value::Null,
                });
            }
            if *reconstruct {
                table.reconstruct(ReconstructOptions {
                    holdout: *holdout,
                    ..ReconstructOptions::default()
                })?;
            }
            Ok((EXIT_OK, match format {
                TableFormat::Csv => {
                    let mut s = table.to_csv();
                    if let Some(rec) = table.reconstructed() {
                        for (j, f) in rec {
                            let from = table.valid_from(*j).unwrap_or(*j);
                            s.push_str(&format!("# b{j}(n) = {f} for n >= {from}\n"));
                        }
                    }
                    s
                }
                TableFormat::Json => {
                    let mut v = table.to_json();
                    v["operator"] = json!(l.to_string());
                    v["d"] = json!(table.d());
                    render(v)
                }
            }))
        }
        Command::Adcheck { op, n } => {
            need_n(*n)?;
            let l = concrete(op)?;
            let (lam, _) = lambda_of(&l, *n, 3)?;
            let cert = ad_condition_check(&l, &lam)?;
            Ok((EXIT_OK, render(json!({
                "operator": l.to_string(),
                "lambda_operator": lam.to_json(),
                "certificate": cert.to_json(),
            }))))
        }
        Command::SymbolicB { op, jmax, cascade } => {
            let a = symbolic(op)?;
            let s = symbolic_b(&a, *jmax, (*cascade).into())?;
            Ok((EXIT_OK, render(json!({
                "operator": a.operator().to_string(),
                "params": a.params(),
                "lambda": a.lambda().to_string(),
                "cascade": cascade_name(*cascade),
                "p": s.p.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "b": s.b.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
            }))))
        }
        Command::Constraints {
            op,
            j,
            linearize,
            clear,
            cascade,
        } => {
            let a = symbolic(op)?;
            let s = symbolic_b(&a, *j, (*cascade).into())?;
            let mut vars = vec![VAR_N];
            vars.extend(a.params().iter().map(String::as_str));
            let clear = clear
                .as_deref()
                .map(|t| parse_mpoly(t, &vars))
                .transpose()
                .map_err(|e| CliError::usage(format!("--clear: {e}")))?;
            let cs = parameter_constraints(&s.b[*j], clear.as_ref(), *linearize, a.params())?;
            let pairs: Vec<Value> = cs
                .iter()
                .map(|c| {
                    let e = if *linearize { c.linear.as_ref().unwrap_or(&c.coeff) } else { &c.coeff };
                    json!([c.power, e.to_string()])
                })
                .collect();
            Ok((EXIT_OK, render(json!({
                "j": j,
                "b": s.b[*j].to_string(),
                "params": a.params(),
                "linearized": linearize,
                "cascade": cascade_name(*cascade),
                "constraints": pairs,
            }))))
        }
        Command::Darboux {
            op,
            c,
            h0,
            n,
            complete_order,
            slack,
        } => {
            need_n(*n)?;
            let l = concrete(op)?;
            let c = rat(c, "--c")?;
            let seed = if h0.trim() == "auto" { Seed::Auto } else { Seed::Value(rat(h0, "--h0")?) };
            let seq = l.eigen_sequence(*n)?;
            let (lam, _) = lambda_of(&l, *n, 3)?;
            let fac = factor_lu(&lam, &c, seed, *n)?;
            let t = swap_and_transform(&fac, &seq)?;
            if !fac.certifies() || !t.conjugation_holds() {
                return Err(CliError::Math {
                    kind: "SelfCheck".into(),
                    message: "factorization or conjugation identity failed".into(),
                    payload: Value::Null,
                });
            }
            let mut out = json!({
                "operator": l.to_string(),
                "lambda_operator": lam.to_json(),
                "factors": fac.to_json(),
                "transformed": t.to_json(),
                "conjugation_holds": true,
            });
            if let Ok((d1, d2)) = fac.operators() {
                out["d1"] = d1.to_json();
                out["d2"] = d2.to_json();
            }
            if let Ok(lh) = t.lamhat() {
                out["lambda_hat"] = lh.to_json();
            }
            if let Some(m) = complete_order {
                let basis = bispectral_completion(&t.as_eigen_seq(), *m, *slack)?;
                out["completion"] = json!(basis
                    .iter()
                    .map(|b| {
                        let mut v = OperatorSpec::from_diffop(b).to_json();
                        v["lambda"] = json!(b.lambda().to_string());
                        v
                    })
                    .collect::<Vec<_>>());
            }
            Ok((EXIT_OK, render(out)))
        }
        Command::Catalog { family, args } => {
            let spec = FamilySpec::parse(family, args)?;
            Ok((EXIT_OK, render(family_spec_json(&spec)?)))
        }
        Command::VerifyPaper { case } => {
            let cases: Vec<&str> = match case {
                Some(c) if paper::CASES.contains(&c.as_str()) => vec![c.as_str()],
                Some(c) => {
                    return Err(CliError::usage(format!(
                        "unknown case `{c}` (expected one of {})",
                        paper::CASES.join(", ")
                    )))
                }
                None => paper::CASES.to_vec(),
            };
            let threads = thread_cap()?;
            let mut reports = BTreeMap::new();
            let mut pass = true;
            for (name, r) in cases.iter().zip(paper::run_cases(&cases, threads)) {
                let v = match r {
                    Ok(rep) => {
                        pass &= rep.pass();
                        rep.to_json()
                    }
                    Err(e) => {
                        pass = false;
                        json!({ "case": name, "pass": false, "error": e })
                    }
                };
                reports.insert(name.to_string(), v);
            }
            let code = if pass { EXIT_OK } else { EXIT_VERDICT };
            Ok((code, render(json!({ "pass": pass, "cases": reports }))))
        }
    }
}

fn cascade_name(c: CascadeArg) -> &'static str {
    match c {
        CascadeArg::ShiftAware => "shift-aware",
        CascadeArg::AsPrinted => "as-printed",
    }
}

