//! Job runner behind the `hermipade` binary: JSON input, JSON reports and
//! CSV evaluation grids.
//!
//! Exit codes: 0 success, 2 a precondition failed, 3 degenerate with no
//! passing candidate, 64 usage or malformed input, 66 missing report.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cheb::{full_pipeline, ConditionReport, Options, PipelineReport};
use crate::error::Error;
use crate::hermite_pade::{FunctionResidual, ResidualReport};
use crate::scalar::{parse_rational, Rational, Scalar};
use crate::series::{clenshaw_t, clenshaw_u, AnalyticityInfo, Basis, MultiIndex, SeriesSystem, TruncatedSeries, DEFAULT_GUARD};
use crate::trig::Kind;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONDITION: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_MISSING: i32 = 66;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Auto,
    First,
    Second,
}

#[derive(Debug, Parser)]
#[command(name = "hermipade", version, about = "Hermite-Pade, Hermite-Jacobi and Hermite-Chebyshev approximants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct JobArgs {
    /// JSON document with basis, series, n, m and radii.
    #[arg(long)]
    pub input: PathBuf,
    /// Overrides `n` from the input.
    #[arg(long)]
    pub n: Option<usize>,
    /// Overrides `m` from the input, as a comma-separated list.
    #[arg(long, value_delimiter = ',')]
    pub m: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value = "auto")]
    pub kind: KindArg,
    #[arg(long, value_enum, env = "HERMIPADE_MODE", default_value = "exact")]
    pub mode: Mode,
    #[arg(long, default_value_t = DEFAULT_GUARD)]
    pub guard: usize,
    /// Report path; without it the report goes to stdout and the summary to stderr.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Starting node count of the sampled residual cross-check; 0 disables it.
    #[arg(long, default_value_t = 257)]
    pub grid: usize,
    /// Cancel common factors of each numerator and the denominator before the pole test.
    #[arg(long)]
    pub cancel_common_factors: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the approximants and write a report.
    Approximate(JobArgs),
    /// Check existence, radius and pole conditions without building approximants.
    Check(JobArgs),
    /// Evaluate a report's Chebyshev approximant on a grid and write CSV.
    Eval {
        /// Report written by `approximate`.
        #[arg(long)]
        input: PathBuf,
        /// Number of Chebyshev points.
        #[arg(long, default_value_t = 9)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A validated job: the Chebyshev system in exact form plus its settings.
#[derive(Debug, Clone, PartialEq)]
pub struct JobSpec {
    pub input: PathBuf,
    pub system: SeriesSystem<Rational>,
    pub idx: MultiIndex,
    pub kind: Kind,
    pub radii: Vec<f64>,
    pub mode: Mode,
    pub guard: usize,
    pub grid: usize,
    pub cancel_common_factors: bool,
    pub out: Option<PathBuf>,
    pub document: InputDocument,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesInput {
    pub coeffs: Vec<Value>,
}

/// The input file layout. Coefficients are strings (`"1/2"`, `"0.25"`) or numbers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputDocument {
    pub basis: String,
    pub series: Vec<SeriesInput>,
    pub n: usize,
    pub m: Vec<usize>,
    pub radii: Vec<Value>,
}

/// Failure with its exit code.
#[derive(Debug)]
pub struct JobError {
    pub code: i32,
    pub message: String,
}

impl JobError {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for JobError {
    fn from(e: Error) -> Self {
        Self::usage(e.to_string())
    }
}

fn coefficient(v: &Value) -> Result<Rational, JobError> {
    match v {
        Value::String(s) => Ok(parse_rational(s)?),
        Value::Number(n) => Ok(parse_rational(&n.to_string())?),
        other => Err(JobError::usage(format!("coefficient {other} is not a string or number"))),
    }
}

fn radius(v: &Value) -> Result<f64, JobError> {
    match v {
        Value::String(s) if s.eq_ignore_ascii_case("inf") => Ok(f64::INFINITY),
        Value::Number(n) => n.as_f64().ok_or_else(|| JobError::usage(format!("bad radius {n}"))),
        other => Err(JobError::usage(format!("radius {other} is not a number or \"inf\""))),
    }
}

impl JobSpec {
    pub fn from_args(args: &JobArgs) -> Result<Self, JobError> {
        let text = fs::read_to_string(&args.input)
            .map_err(|e| JobError::usage(format!("cannot read {}: {e}", args.input.display())))?;
        let mut document: InputDocument = serde_json::from_str(&text)
            .map_err(|e| JobError::usage(format!("malformed input {}: {e}", args.input.display())))?;
        if let Some(n) = args.n {
            document.n = n;
        }
        if let Some(m) = &args.m {
            document.m = m.clone();
        }
        let (basis, halved, kind) = match (document.basis.as_str(), args.kind) {
            ("T", KindArg::Auto | KindArg::First) => (Basis::ChebyshevT, true, Kind::First),
            ("U", KindArg::Auto | KindArg::Second) => (Basis::ChebyshevU, false, Kind::Second),
            ("power", KindArg::Auto | KindArg::First) => (Basis::ChebyshevT, false, Kind::First),
            ("power", KindArg::Second) => (Basis::ChebyshevU, false, Kind::Second),
            ("T" | "U", k) => {
                return Err(JobError::usage(format!("--kind {k:?} does not match basis {}", document.basis)))
            }
            (other, _) => return Err(JobError::usage(format!("unknown basis {other:?}; use T, U or power"))),
        };
        let functions = document
            .series
            .iter()
            .map(|s| {
                let c = s.coeffs.iter().map(coefficient).collect::<Result<Vec<_>, _>>()?;
                Ok(TruncatedSeries::new(basis, c)?.with_halved_constant(halved))
            })
            .collect::<Result<Vec<_>, JobError>>()?;
        let system = SeriesSystem::new(functions)?;
        let idx = MultiIndex::new(document.n, document.m.clone())?;
        if idx.k() != system.k() {
            return Err(JobError::usage(format!("{} m entries for {} series", idx.k(), system.k())));
        }
        let radii = document.radii.iter().map(radius).collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            input: args.input.clone(),
            system,
            idx,
            kind,
            radii,
            mode: args.mode,
            guard: args.guard,
            grid: args.grid,
            cancel_common_factors: args.cancel_common_factors,
            out: args.out.clone(),
            document,
        })
    }

    fn options(&self) -> Options {
        Options {
            guard: self.guard,
            grid: self.grid,
            cancel_common_factors: self.cancel_common_factors,
            ..Options::default()
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ApproximantOutput {
    /// Basis of the denominator coefficients.
    pub denominator_basis: Basis,
    pub numerator_basis: Basis,
    pub q: Vec<String>,
    pub p: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraicOutput {
    pub q: Vec<String>,
    pub p: Vec<Vec<String>>,
    pub provenance: String,
    pub unique: bool,
    pub nullity: usize,
    pub normalization_degree: usize,
    pub normalization_divisor: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResidualOutput {
    pub basis: Basis,
    pub window_start: usize,
    pub functions: Vec<ResidualFunctionOutput>,
    pub sampled_low_order: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResidualFunctionOutput {
    pub window: Vec<String>,
    pub first_nonzero: Option<usize>,
    pub window_all_zero: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChecklistItem {
    pub condition: usize,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Full report written by `approximate`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub input: InputDocument,
    /// Basis and constant convention the input series were read in.
    pub series_basis: Basis,
    pub halved_constant: bool,
    pub mode: Mode,
    pub kind: String,
    pub n: usize,
    pub m: Vec<usize>,
    pub guard: usize,
    pub checklist: Vec<ChecklistItem>,
    pub conditions: Value,
    pub unique: Option<bool>,
    pub algebraic: Option<AlgebraicOutput>,
    pub trigonometric: Option<ApproximantOutput>,
    pub chebyshev: Option<ApproximantOutput>,
    pub trigonometric_residual: Option<ResidualOutput>,
    pub chebyshev_residual: Option<ResidualOutput>,
}

fn texts<S: Scalar>(v: &[S]) -> Vec<String> {
    v.iter().map(Scalar::to_text).collect()
}

fn residual_output<S: Scalar>(r: &ResidualReport<S>) -> ResidualOutput {
    let f = |x: &FunctionResidual<S>| ResidualFunctionOutput {
        window: texts(&x.window),
        first_nonzero: x.first_nonzero,
        window_all_zero: x.first_nonzero.is_none(),
    };
    ResidualOutput {
        basis: r.basis,
        window_start: r.window_start(),
        functions: r.functions.iter().map(f).collect(),
        sampled_low_order: r.sampled_low_order.clone(),
    }
}

fn checklist(c: &ConditionReport) -> Vec<ChecklistItem> {
    let mut items = vec![
        ChecklistItem {
            condition: 1,
            name: "existence".into(),
            pass: c.jacobi_exists,
            detail: format!("H = {}, nullity {}: {}", c.determinant, c.nullity, c.jacobi_certificate),
        },
        ChecklistItem {
            condition: 2,
            name: "radius of convergence greater than 1".into(),
            pass: c.radius.pass,
            detail: c.radius.notes.clone(),
        },
    ];
    items.push(match &c.poles {
        Some(p) => ChecklistItem {
            condition: 3,
            name: "denominator free of zeros in the closed unit disk".into(),
            pass: p.pass,
            detail: if p.pass {
                format!("smallest root modulus {}", p.min_modulus)
            } else {
                format!("{} root(s) inside, largest modulus {}", p.roots_inside.len(), p.max_modulus_inside)
            },
        },
        None => ChecklistItem {
            condition: 3,
            name: "denominator free of zeros in the closed unit disk".into(),
            pass: false,
            detail: "not checked: no approximant".into(),
        },
    });
    items
}

fn exit_code(c: &ConditionReport) -> i32 {
    if !c.jacobi_exists {
        EXIT_DEGENERATE
    } else if c.all_pass {
        EXIT_OK
    } else {
        EXIT_CONDITION
    }
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::First => "first",
        Kind::Second => "second",
    }
}

fn build_report<S: Scalar>(job: &JobSpec, r: &PipelineReport<S>) -> Report {
    let trig_basis = job.kind.trig_basis();
    let cheb_basis = job.kind.chebyshev_basis();
    Report {
        input: job.document.clone(),
        series_basis: job.system.basis(),
        halved_constant: job.system.functions()[0].halved_constant(),
        mode: job.mode,
        kind: kind_name(job.kind).into(),
        n: job.idx.n(),
        m: job.idx.m_vec().to_vec(),
        guard: job.guard,
        checklist: checklist(&r.conditions),
        conditions: serde_json::to_value(&r.conditions).unwrap_or(Value::Null),
        unique: r.algebraic.as_ref().map(|a| a.unique),
        algebraic: r.algebraic.as_ref().map(|a| AlgebraicOutput {
            q: texts(&a.q),
            p: a.p.iter().map(|p| texts(p)).collect(),
            provenance: format!("{:?}", a.provenance).to_lowercase(),
            unique: a.unique,
            nullity: a.nullity,
            normalization_degree: a.normalization.degree,
            normalization_divisor: a.normalization.divisor.to_text(),
        }),
        trigonometric: r.trig.as_ref().map(|t| ApproximantOutput {
            denominator_basis: Basis::Cosine,
            numerator_basis: trig_basis,
            q: texts(&t.q),
            p: t.p.iter().map(|p| texts(p)).collect(),
        }),
        chebyshev: r.cheb.as_ref().map(|c| ApproximantOutput {
            denominator_basis: Basis::ChebyshevT,
            numerator_basis: cheb_basis,
            q: texts(&c.q),
            p: c.p.iter().map(|p| texts(p)).collect(),
        }),
        trigonometric_residual: r.trig_residual.as_ref().map(residual_output),
        chebyshev_residual: r.cheb_residual.as_ref().map(residual_output),
    }
}

fn run_pipeline<S: Scalar>(job: &JobSpec) -> Result<(Report, ConditionReport), JobError> {
    let system = job.system.map(|v| S::from_rational(v));
    let radii = AnalyticityInfo::new(job.radii.clone(), &system)?;
    let r = full_pipeline(&system, &job.idx, &radii, &job.options())?;
    Ok((build_report(job, &r), r.conditions))
}

fn report_for(job: &JobSpec) -> Result<(Report, ConditionReport), JobError> {
    match job.mode {
        Mode::Exact => run_pipeline::<Rational>(job),
        Mode::Float => run_pipeline::<f64>(job),
    }
}

fn summary(report: &Report) -> String {
    let mut s = format!(
        "kind {} n {} m {:?} mode {:?}\n",
        report.kind, report.n, report.m, report.mode
    );
    for item in &report.checklist {
        let verdict = if item.pass { "pass" } else { "FAIL" };
        s.push_str(&format!("condition {} ({}): {verdict} - {}\n", item.condition, item.name, item.detail));
    }
    if let Some(c) = &report.chebyshev {
        s.push_str(&format!("Q: {:?} ({})\n", c.q, c.denominator_basis));
        for (j, p) in c.p.iter().enumerate() {
            s.push_str(&format!("P_{j}: {:?} ({})\n", p, c.numerator_basis));
        }
    }
    if let Some(r) = &report.chebyshev_residual {
        let zero = r.functions.iter().all(|f| f.window_all_zero);
        s.push_str(&format!(
            "residual vanishes through index {}; window from {} all zero: {zero}\n",
            r.window_start - 1,
            r.window_start
        ));
    }
    s
}

/// Writes `body` to `out`, or to stdout with `note` on stderr.
fn emit(out: Option<&Path>, body: &str, note: &str) -> Result<(), JobError> {
    match out {
        Some(path) => {
            fs::write(path, body).map_err(|e| JobError::usage(format!("cannot write {}: {e}", path.display())))?;
            print!("{note}");
        }
        None => {
            print!("{body}");
            eprint!("{note}");
        }
    }
    std::io::stdout().flush().ok();
    Ok(())
}

pub fn cmd_approximate(job: &JobSpec) -> Result<i32, JobError> {
    let (report, conditions) = report_for(job)?;
    let body = serde_json::to_string_pretty(&report).map_err(|e| JobError::usage(e.to_string()))? + "\n";
    emit(job.out.as_deref(), &body, &summary(&report))?;
    Ok(exit_code(&conditions))
}

/// Existence certificate: determinant, nullity, pole and radius verdicts.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub n: usize,
    pub m: Vec<usize>,
    pub determinant: String,
    pub nullity: usize,
    pub checklist: Vec<ChecklistItem>,
}

pub fn cmd_check(job: &JobSpec) -> Result<i32, JobError> {
    let quick = JobSpec { grid: 0, ..job.clone() };
    let (report, conditions) = report_for(&quick)?;
    let cert = Certificate {
        n: report.n,
        m: report.m.clone(),
        determinant: conditions.determinant.clone(),
        nullity: conditions.nullity,
        checklist: report.checklist.clone(),
    };
    let mut note = format!("H = {}\nnullity = {}\n", cert.determinant, cert.nullity);
    for item in &cert.checklist {
        let verdict = if item.pass { "pass" } else { "FAIL" };
        note.push_str(&format!("condition {} ({}): {verdict} - {}\n", item.condition, item.name, item.detail));
    }
    let body = serde_json::to_string_pretty(&cert).map_err(|e| JobError::usage(e.to_string()))? + "\n";
    emit(job.out.as_deref(), &body, &note)?;
    Ok(exit_code(&conditions))
}

/// Chebyshev points `x_k = -cos((2k + 1) pi / (2N))`, increasing.
pub fn chebyshev_points(count: usize) -> Vec<f64> {
    (0..count)
        .map(|k| -((2 * k + 1) as f64 * std::f64::consts::PI / (2 * count) as f64).cos())
        .map(|x| if x.abs() < 1e-15 { 0.0 } else { x })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalRow {
    pub j: usize,
    pub x: f64,
    pub f: f64,
    pub approx: f64,
    pub difference: f64,
}

fn parse_list(v: &[String]) -> Result<Vec<f64>, JobError> {
    v.iter().map(|s| Ok(Scalar::to_f64(&parse_rational(s)?))).collect()
}

/// Evaluates the report's truncated input series and Chebyshev approximant.
pub fn eval_rows(report: &Report, grid: usize) -> Result<Vec<EvalRow>, JobError> {
    let Some(cheb) = &report.chebyshev else {
        return Err(JobError { code: EXIT_CONDITION, message: "report holds no Chebyshev approximant".into() });
    };
    let q = parse_list(&cheb.q)?;
    let xs = chebyshev_points(grid);
    let mut rows = Vec::new();
    for (j, (series, p)) in report.input.series.iter().zip(&cheb.p).enumerate() {
        let mut f = series.coeffs.iter().map(|v| coefficient(v).map(|r| Scalar::to_f64(&r))).collect::<Result<Vec<_>, _>>()?;
        if report.halved_constant {
            f[0] /= 2.0;
        }
        let p = parse_list(p)?;
        for &x in &xs {
            let (fv, pv) = match report.series_basis {
                Basis::ChebyshevU => (clenshaw_u(&f, x), clenshaw_u(&p, x)),
                _ => (clenshaw_t(&f, x), clenshaw_t(&p, x)),
            };
            let approx = pv / clenshaw_t(&q, x);
            rows.push(EvalRow { j, x, f: fv, approx, difference: fv - approx });
        }
    }
    Ok(rows)
}

pub fn cmd_eval(input: &Path, grid: usize, out: Option<&Path>) -> Result<i32, JobError> {
    let text = fs::read_to_string(input).map_err(|e| JobError {
        code: EXIT_MISSING,
        message: format!("cannot read report {}: {e}", input.display()),
    })?;
    let report: Report = serde_json::from_str(&text)
        .map_err(|e| JobError::usage(format!("malformed report {}: {e}", input.display())))?;
    if grid == 0 {
        return Err(JobError::usage("--grid must be at least 1"));
    }
    let rows = eval_rows(&report, grid)?;
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in &rows {
        writer.serialize(row).map_err(|e| JobError::usage(e.to_string()))?;
    }
    let body = String::from_utf8(writer.into_inner().map_err(|e| JobError::usage(e.to_string()))?)
        .map_err(|e| JobError::usage(e.to_string()))?;
    let max = rows.iter().map(|r| r.difference.abs()).fold(0.0, f64::max);
    emit(out, &body, &format!("{} rows, max |difference| {max:e}\n", rows.len()))?;
    Ok(EXIT_OK)
}

/// Parses arguments and runs the chosen command, returning the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match &cli.command {
        Command::Approximate(args) => JobSpec::from_args(args).and_then(|s| cmd_approximate(&s)),
        Command::Check(args) => JobSpec::from_args(args).and_then(|s| cmd_check(&s)),
        Command::Eval { input, grid, out } => cmd_eval(input, *grid, out.as_deref()),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("hermipade: {}", e.message);
            e.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_points_layout() {
        assert_eq!(chebyshev_points(1), vec![0.0]);
        let xs = chebyshev_points(9);
        assert_eq!(xs.len(), 9);
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(xs[4], 0.0);
    }

    #[test]
    fn coefficient_forms() {
        assert_eq!(coefficient(&Value::String("1/2".into())).unwrap(), crate::scalar::rational(1, 2));
        assert_eq!(coefficient(&serde_json::json!(0.25)).unwrap(), crate::scalar::rational(1, 4));
        assert!(coefficient(&Value::Bool(true)).is_err());
        assert_eq!(radius(&Value::String("inf".into())).unwrap(), f64::INFINITY);
    }
}
