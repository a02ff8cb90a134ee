//! `cartcode` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or validation
//! error, 3 enumeration budget exceeded.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use cartcode::codes::{
    self, evaluate_on, CheckStatus, EnumerationOptions, Expectations, SpecSummary, VerificationReport,
};
use cartcode::formulas::{self, CodeSpec, FormulaError};
use cartcode::sweep::{self, SweepInstance};
use cartcode::{CodeError, Field, MultiPoly};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "cartcode", version, about = "Affine cartesian codes: parameters, spectra and verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension, minimum distance and known higher weights from closed forms.
    Params(CommonArgs),
    /// Full weight distribution by exhaustive enumeration.
    Spectrum(CommonArgs),
    /// Compare closed forms against enumeration for one code or a sweep.
    Verify(CommonArgs),
    /// Extremal witness polynomials and their codewords.
    Witness(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Field as p^m, e.g. 3^1 or 2^2.
    #[arg(long)]
    pub field: Option<String>,
    /// Explicit modulus coefficients, constant term first, e.g. 1,0,1.
    #[arg(long)]
    pub modulus: Option<String>,
    /// Subsets as element indices: "0,1,2;0,1,2".
    #[arg(long)]
    pub sets: Option<String>,
    /// Evaluation degree d >= 1.
    #[arg(long)]
    pub degree: Option<u64>,
    /// Report only the t-th weight.
    #[arg(long)]
    pub t: Option<u64>,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    /// Maximum number of codewords to enumerate.
    #[arg(long, default_value_t = 10_000_000)]
    pub budget: u64,
    /// Enumerate one vector per scalar class.
    #[arg(long)]
    pub scalar_classes: bool,
    /// Worker threads for enumeration.
    #[arg(long, env = "CARTCODE_JOBS", default_value_t = 1)]
    pub jobs: usize,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Line-oriented JSON sweep file (verify only).
    #[arg(long)]
    pub sweep: Option<PathBuf>,
    /// Polynomial to evaluate, e.g. "2*X1^2*X2+X2+1" (witness only).
    #[arg(long)]
    pub poly: Option<String>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{flag}: {message}")]
    Usage { flag: &'static str, message: String },
    #[error("budget exceeded: {required} codewords needed, budget is {budget}; rerun with --budget {required}")]
    Budget { required: String, budget: u64 },
    #[error("{0}")]
    Regime(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Budget { .. } => EXIT_BUDGET,
            _ => EXIT_USAGE,
        }
    }

    fn usage(flag: &'static str, err: impl ToString) -> CliError {
        CliError::Usage { flag, message: err.to_string() }
    }
}

fn code_error(err: CodeError) -> CliError {
    match err {
        CodeError::BudgetExceeded { required, budget } => {
            CliError::Budget { required: required.to_string(), budget }
        }
        CodeError::OutOfRegime(msg) => CliError::Regime(format!("out of regime: {msg}")),
        other => CliError::Regime(other.to_string()),
    }
}

impl CommonArgs {
    fn field(&self) -> Result<Field, CliError> {
        let text = self.field.as_deref().ok_or_else(|| CliError::usage("--field", "required"))?;
        let modulus = match &self.modulus {
            Some(m) => Some(
                m.split(',')
                    .map(|c| c.trim().parse::<u64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| CliError::usage("--modulus", e))?,
            ),
            None => None,
        };
        Field::parse(text, modulus.as_deref()).map_err(|e| match e {
            cartcode::galois::ParseFieldError::Field(inner) if self.modulus.is_some() => {
                CliError::usage("--modulus", inner)
            }
            other => CliError::usage("--field", other),
        })
    }

    fn spec(&self) -> Result<CodeSpec, CliError> {
        let field = self.field()?;
        let sets = self.sets.as_deref().ok_or_else(|| CliError::usage("--sets", "required"))?;
        let sets = sweep::parse_sets(sets).map_err(|e| CliError::usage("--sets", e))?;
        let degree = self.degree.ok_or_else(|| CliError::usage("--degree", "required"))?;
        if self.budget == 0 {
            return Err(CliError::usage("--budget", "must be at least 1"));
        }
        CodeSpec::from_indices(&field, &sets, degree).map_err(|e| match e {
            cartcode::SpecError::ZeroDegree => CliError::usage("--degree", e),
            other => CliError::usage("--sets", other),
        })
    }

    fn enumeration(&self, budget: u64, scalar_classes: bool) -> EnumerationOptions {
        let jobs = self.jobs.max(1);
        EnumerationOptions {
            budget,
            chunks: if jobs == 1 { 1 } else { jobs * 4 },
            jobs,
            scalar_classes,
        }
    }
}

/// Parses `argv` and runs, writing the report to `out` unless `--output`
/// names a file. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return e.exit_code();
        }
    };
    let args = match &cli.command {
        Command::Params(a) | Command::Spectrum(a) | Command::Verify(a) | Command::Witness(a) => a,
    };
    let result = match &cli.command {
        Command::Params(a) => cmd_params(a).map(|s| (s, EXIT_OK)),
        Command::Spectrum(a) => cmd_spectrum(a).map(|s| (s, EXIT_OK)),
        Command::Verify(a) => cmd_verify(a),
        Command::Witness(a) => cmd_witness(a).map(|s| (s, EXIT_OK)),
    };
    match result {
        Ok((text, code)) => {
            let written = match &args.output {
                Some(path) => std::fs::write(path, &text),
                None => out.write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: cannot write report: {e}");
                return EXIT_USAGE;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn render_pairs(format: Format, pairs: &[(&str, String)]) -> String {
    let mut s = String::new();
    match format {
        Format::Csv => {
            s.push_str("key,value\n");
            for (k, v) in pairs {
                let _ = writeln!(s, "{k},{}", csv_field(v));
            }
        }
        _ => {
            let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in pairs {
                let _ = writeln!(s, "{k:<width$}  {v}");
            }
        }
    }
    s
}

fn csv_field(v: &str) -> String {
    if v.contains([',', '"', '\n']) {
        format!("\"{}\"", v.replace('"', "\"\""))
    } else {
        v.to_string()
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("plain data");
    s.push('\n');
    s
}

#[derive(Debug, Serialize)]
pub struct ParamsReport {
    pub field: String,
    pub sizes: Vec<u64>,
    pub permutation: Vec<usize>,
    pub n: usize,
    pub m: u64,
    pub dim: u64,
    pub dmin: u64,
    pub dmin_regime: String,
    pub w2: Option<u64>,
    pub w2_regime: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w2_not_covered: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_th_weights: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_weight: Option<u64>,
}

pub fn params_report(spec: &CodeSpec, t: Option<u64>) -> Result<ParamsReport, CliError> {
    let sizes = spec.sizes();
    let dmin = spec.min_distance();
    let second = spec.second_weight();
    let t_th_weights = formulas::t_th_weight_count(&sizes, spec.degree()).map(|count| {
        (1..=count).map(|t| spec.t_th_weight(t).expect("t in range").value).collect()
    });
    let t_weight = match t {
        Some(t) => Some(spec.t_th_weight(t).map_err(|e| CliError::usage("--t", e))?.value),
        None => None,
    };
    Ok(ParamsReport {
        field: spec.field().label(),
        sizes,
        permutation: spec.permutation().to_vec(),
        n: spec.n(),
        m: spec.length(),
        dim: spec.dimension(),
        dmin: dmin.value,
        dmin_regime: dmin.regime.to_string(),
        w2: second.as_ref().ok().map(|w| w.value),
        w2_regime: second.as_ref().ok().map(|w| w.regime.to_string()),
        w2_not_covered: match &second {
            Err(FormulaError::NotCovered(reason)) => Some(reason.clone()),
            Err(e) => Some(e.to_string()),
            Ok(_) => None,
        },
        t_th_weights,
        t,
        t_weight,
    })
}

fn join(values: &[u64]) -> String {
    values.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

pub fn cmd_params(args: &CommonArgs) -> Result<String, CliError> {
    let spec = args.spec()?;
    let r = params_report(&spec, args.t)?;
    if args.format == Format::Json {
        return Ok(json_line(&r));
    }
    let mut pairs = vec![
        ("field", r.field.clone()),
        ("sizes", join(&r.sizes)),
        ("n", r.n.to_string()),
        ("length", r.m.to_string()),
        ("dimension", r.dim.to_string()),
        ("min_distance", format!("{} ({})", r.dmin, r.dmin_regime)),
    ];
    match (&r.w2, &r.w2_regime, &r.w2_not_covered) {
        (Some(w), Some(reg), _) => pairs.push(("second_weight", format!("{w} ({reg})"))),
        (_, _, Some(reason)) => pairs.push(("second_weight", format!("not covered: {reason}"))),
        _ => {}
    }
    if let Some(ws) = &r.t_th_weights {
        pairs.push(("t_th_weights", join(ws)));
    }
    if let (Some(t), Some(w)) = (r.t, r.t_weight) {
        pairs.push(("t", t.to_string()));
        pairs.push(("t_weight", w.to_string()));
    }
    Ok(render_pairs(args.format, &pairs))
}

#[derive(Debug, Serialize)]
struct SpectrumReport {
    spec: SpecSummary,
    total: u64,
    spectrum: Vec<(u64, u64)>,
    distinct_nonzero: Vec<u64>,
    footprint_violations: u64,
}

pub fn cmd_spectrum(args: &CommonArgs) -> Result<String, CliError> {
    let spec = args.spec()?;
    codes::check_budget(&spec, args.budget).map_err(code_error)?;
    let matrix = codes::generator_matrix(&spec);
    let run = codes::enumerate_code(&matrix, &args.enumeration(args.budget, args.scalar_classes))
        .map_err(code_error)?;
    let report = SpectrumReport {
        spec: SpecSummary::of(&spec),
        total: run.spectrum.total,
        distinct_nonzero: run.spectrum.distinct_nonzero(),
        spectrum: run.spectrum.counts.clone(),
        footprint_violations: run.footprint_violations,
    };
    let mut s = String::new();
    match args.format {
        Format::Json => s = json_line(&report),
        Format::Csv => {
            s.push_str("weight,count\n");
            for (w, c) in &report.spectrum {
                let _ = writeln!(s, "{w},{c}");
            }
        }
        Format::Table => {
            let _ = writeln!(s, "{spec}");
            let _ = writeln!(s, "{:>8}  {:>12}", "weight", "count");
            for (w, c) in &report.spectrum {
                let _ = writeln!(s, "{w:>8}  {c:>12}");
            }
            let _ = writeln!(s, "total {}", report.total);
            let _ = writeln!(s, "distinct nonzero weights: {}", join(&report.distinct_nonzero));
        }
    }
    Ok(s)
}

fn verify_instance(
    args: &CommonArgs,
    spec: &CodeSpec,
    budget: u64,
    scalar_classes: bool,
    expect: &Expectations,
) -> Result<VerificationReport, CliError> {
    codes::verify(spec, &args.enumeration(budget, scalar_classes), expect).map_err(code_error)
}

pub fn cmd_verify(args: &CommonArgs) -> Result<(String, i32), CliError> {
    let instances: Vec<SweepInstance> = match (&args.sweep, &args.sets) {
        (Some(_), Some(_)) => {
            return Err(CliError::usage("--sweep", "cannot be combined with --sets"));
        }
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::usage("--sweep", e))?;
            sweep::parse_sweep(&text).map_err(|e| CliError::usage("--sweep", e))?
        }
        (None, Some(_)) => Vec::new(),
        (None, None) => sweep::default_sweep(),
    };
    let mut reports = Vec::new();
    if args.sets.is_some() {
        let spec = args.spec()?;
        reports.push(verify_instance(args, &spec, args.budget, args.scalar_classes, &Expectations::default())?);
    } else {
        for inst in &instances {
            let spec = inst.spec().map_err(|e| CliError::usage("--sweep", e))?;
            let budget = inst.budget.unwrap_or(args.budget);
            let classes = inst.scalar_classes.unwrap_or(args.scalar_classes);
            let expect = inst.expect.clone().unwrap_or_default();
            reports.push(verify_instance(args, &spec, budget, classes, &expect)?);
        }
    }
    let ok = reports.iter().all(VerificationReport::passed);
    let mut s = String::new();
    match args.format {
        Format::Json => {
            for r in &reports {
                s.push_str(&r.to_json());
                s.push('\n');
            }
        }
        Format::Csv => {
            s.push_str("instance,field,sizes,degree,check,expected,observed,status\n");
            for (i, r) in reports.iter().enumerate() {
                let sizes: Vec<u64> = r.spec.sets.iter().map(|x| x.len() as u64).collect();
                for c in &r.checks {
                    let _ = writeln!(
                        s,
                        "{i},{},{},{},{},{},{},{}",
                        r.spec.field,
                        join(&sizes),
                        r.spec.degree,
                        csv_field(&c.name),
                        c.expected.map_or(String::new(), |v| v.to_string()),
                        c.observed.map_or(String::new(), |v| v.to_string()),
                        status_label(c.status())
                    );
                }
            }
        }
        Format::Table => {
            for r in &reports {
                let sizes: Vec<u64> = r.spec.sets.iter().map(|x| x.len() as u64).collect();
                let covered = r.checks.iter().filter(|c| c.status() != CheckStatus::NotCovered).count();
                let _ = writeln!(
                    s,
                    "{} GF({}) sizes ({}) d={}: {}/{} checks, {} ms",
                    if r.passed() { "PASS" } else { "FAIL" },
                    r.spec.field,
                    join(&sizes),
                    r.spec.degree,
                    r.checks.iter().filter(|c| c.status() == CheckStatus::Pass).count(),
                    covered,
                    r.elapsed_ms
                );
                for c in r.checks.iter().filter(|c| c.status() != CheckStatus::Pass) {
                    let _ = writeln!(
                        s,
                        "    {} {}: expected {}, observed {}{}",
                        status_label(c.status()),
                        c.name,
                        c.expected.map_or("-".into(), |v| v.to_string()),
                        c.observed.map_or("-".into(), |v| v.to_string()),
                        c.note.as_ref().map_or(String::new(), |n| format!(" ({n})"))
                    );
                }
            }
            let _ = writeln!(s, "{} instances, {}", reports.len(), if ok { "all passed" } else { "FAILURES" });
        }
    }
    Ok((s, if ok { EXIT_OK } else { EXIT_VERIFY_FAILED }))
}

fn status_label(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "fail",
        CheckStatus::NotCovered => "not_covered",
    }
}

#[derive(Debug, Serialize)]
pub struct WitnessEntry {
    pub kind: String,
    pub polynomial: String,
    pub codeword: Vec<u64>,
    pub weight: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regime: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal_form: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_code: Option<bool>,
}

#[derive(Debug, Serialize)]
struct WitnessReport {
    spec: SpecSummary,
    witnesses: Vec<WitnessEntry>,
}

fn indices(word: &[cartcode::FieldElement]) -> Vec<u64> {
    word.iter().map(cartcode::FieldElement::to_index).collect()
}

pub fn cmd_witness(args: &CommonArgs) -> Result<String, CliError> {
    let spec = args.spec()?;
    let matrix = codes::generator_matrix(&spec);
    let mut entries = Vec::new();
    if let Some(text) = &args.poly {
        let poly = MultiPoly::parse(text, spec.field(), spec.n()).map_err(|e| CliError::usage("--poly", e))?;
        let word = evaluate_on(&poly, matrix.points()).map_err(code_error)?;
        let reduced = cartcode::multipoly::normal_form(&poly, matrix.divisors())
            .map_err(|e| CliError::usage("--poly", e))?;
        entries.push(WitnessEntry {
            kind: "input".into(),
            polynomial: poly.to_string(),
            weight: codes::codeword_weight(&word) as u64,
            codeword: indices(&word),
            formula: None,
            regime: None,
            in_code: Some(matrix.coefficients_of(&poly).is_ok()),
            normal_form: Some(reduced.to_string()),
        });
    } else {
        let g = codes::min_weight_witness(&spec).map_err(code_error)?;
        let word = matrix.encode_poly(&g).map_err(code_error)?;
        let dmin = spec.min_distance();
        entries.push(WitnessEntry {
            kind: "min_weight".into(),
            polynomial: g.to_string(),
            weight: codes::codeword_weight(&word) as u64,
            codeword: indices(&word),
            formula: Some(dmin.value),
            regime: Some(dmin.regime.to_string()),
            normal_form: None,
            in_code: None,
        });
        if let Ok(f) = codes::second_weight_witness(&spec) {
            let word = matrix.encode_poly(&f).map_err(code_error)?;
            let w2 = spec.second_weight().expect("witness implies a covered regime");
            entries.push(WitnessEntry {
                kind: "second_weight".into(),
                polynomial: f.to_string(),
                weight: codes::codeword_weight(&word) as u64,
                codeword: indices(&word),
                formula: Some(w2.value),
                regime: Some(w2.regime.to_string()),
                normal_form: None,
                in_code: None,
            });
        }
    }
    let report = WitnessReport { spec: SpecSummary::of(&spec), witnesses: entries };
    let mut s = String::new();
    match args.format {
        Format::Json => s = json_line(&report),
        Format::Csv => {
            s.push_str("kind,polynomial,weight,formula,codeword\n");
            for e in &report.witnesses {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    e.kind,
                    csv_field(&e.polynomial),
                    e.weight,
                    e.formula.map_or(String::new(), |v| v.to_string()),
                    join(&e.codeword)
                );
            }
        }
        Format::Table => {
            let _ = writeln!(s, "{spec}");
            for e in &report.witnesses {
                let _ = writeln!(s, "{}: {}", e.kind, e.polynomial);
                if let Some(nf) = &e.normal_form {
                    let _ = writeln!(s, "  normal form  {nf}");
                }
                if let Some(in_code) = e.in_code {
                    let _ = writeln!(s, "  in C(d)      {in_code}");
                }
                let _ = writeln!(s, "  codeword     {}", join(&e.codeword));
                match (e.formula, &e.regime) {
                    (Some(f), Some(r)) => {
                        let _ = writeln!(s, "  weight       {} (formula {f}, {r})", e.weight);
                    }
                    _ => {
                        let _ = writeln!(s, "  weight       {}", e.weight);
                    }
                }
            }
        }
    }
    Ok(s)
}
