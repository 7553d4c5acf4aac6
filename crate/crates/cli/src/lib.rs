//! Command-line driver for the three cluster-integral routes.
//!
//! [`run`] takes the full argument vector and returns the exit code together
//! with the text written to standard output and standard error, so the binary
//! is a thin wrapper and the behaviour is testable in-process.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mayer_core::clusters::{automorphism_order, cycle_basis, enumerate_stars, vertex_split, ClusterGraph};
use mayer_core::geometry::Shape;
use mayer_core::measures::kinematic_b2;
use mayer_core::montecarlo::{
    cluster_integral_mc, cluster_integral_mc_mixed, virial_coefficient_mc_detailed, MCEstimate, SamplerConfig,
};
use mayer_core::spectral::{
    f_fourier, loop_evaluate_with_tol, ring_integral_with_tol, SpectralKernel, RING_REL_TOL,
};
use mayer_core::verify::{run_suite, Suite};
use mayer_core::Error;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

const DEFAULT_SAMPLES: u64 = 1_000_000;
const DEFAULT_SEED: u64 = 1;
const DEFAULT_SHAPE: &str = "ball:r=0.5";

#[derive(Debug, Parser)]
#[command(name = "mayer", version, about = "Mayer cluster integrals and virial coefficients of hard convex bodies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Second virial coefficient of a pair of bodies.
    B2(Flags),
    /// Virial coefficient of a given order from star diagrams.
    Virial(Flags),
    /// Cluster integral of a diagram given as `order:N;edges:a-b,...`.
    Cluster(Flags),
    /// m-ring diagram.
    Ring(Flags),
    /// Star diagrams of a given order.
    Graphs(Flags),
    /// Run the identity suite.
    Verify(Flags),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::B2(_) => "b2",
            Command::Virial(_) => "virial",
            Command::Cluster(_) => "cluster",
            Command::Ring(_) => "ring",
            Command::Graphs(_) => "graphs",
            Command::Verify(_) => "verify",
        }
    }

    fn flags(&self) -> &Flags {
        match self {
            Command::B2(f)
            | Command::Virial(f)
            | Command::Cluster(f)
            | Command::Ring(f)
            | Command::Graphs(f)
            | Command::Verify(f) => f,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Mc,
    Kinematic,
    Fourier,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Mc => "mc",
            Method::Kinematic => "kinematic",
            Method::Fourier => "fourier",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

/// Flags shared by every subcommand. All are optional so that a config file
/// can supply them; flags win over the file.
#[derive(Debug, Clone, Default, Args)]
struct Flags {
    /// Body, e.g. `ball:r=0.5`, `disk:r=1`, `spherocylinder:r=0.5,l=1`.
    #[arg(long)]
    shape: Option<String>,
    /// Second body of a `b2` pair (defaults to `--shape`).
    #[arg(long)]
    shape2: Option<String>,
    /// Diagram literal, e.g. `order:4;edges:1-2,2-3,3-4,4-1,2-4`.
    #[arg(long)]
    graph: Option<String>,
    #[arg(long)]
    order: Option<usize>,
    /// Ring size.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, value_enum)]
    method: Option<Method>,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, value_enum)]
    out: Option<OutputFormat>,
    /// Relative quadrature tolerance for exploratory runs (ignored by `verify`).
    #[arg(long)]
    tol: Option<f64>,
    /// Identity suite for `verify`.
    #[arg(long)]
    suite: Option<String>,
    /// JSON file with any of the flags above.
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Config file contents; keys mirror the flags.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub shape: Option<String>,
    pub shape2: Option<String>,
    pub graph: Option<String>,
    pub order: Option<usize>,
    pub m: Option<usize>,
    pub method: Option<Method>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub out: Option<OutputFormat>,
    pub tol: Option<f64>,
    pub suite: Option<String>,
}

/// Effective run configuration after merging the config file and flags.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: &'static str,
    pub shape: Option<String>,
    pub shape2: Option<String>,
    pub graph: Option<String>,
    pub order: Option<usize>,
    pub m: Option<usize>,
    pub method: Option<Method>,
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
    pub out: OutputFormat,
    pub tol: Option<f64>,
    pub suite: Option<String>,
}

impl RunConfig {
    fn merge(command: &'static str, flags: &Flags, file: FileConfig) -> Self {
        let f = flags.clone();
        RunConfig {
            command,
            shape: f.shape.or(file.shape),
            shape2: f.shape2.or(file.shape2),
            graph: f.graph.or(file.graph),
            order: f.order.or(file.order),
            m: f.m.or(file.m),
            method: f.method.or(file.method),
            samples: f.samples.or(file.samples).unwrap_or(DEFAULT_SAMPLES),
            seed: f.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            workers: f.workers.or(file.workers).unwrap_or(1),
            out: f.out.or(file.out).unwrap_or(OutputFormat::Json),
            tol: f.tol.or(file.tol),
            suite: f.suite.or(file.suite),
        }
    }

    fn sampler(&self) -> Result<SamplerConfig, CliError> {
        if self.samples == 0 {
            return Err(CliError::Usage("--samples must be > 0 for Monte Carlo runs".into()));
        }
        if self.workers == 0 {
            return Err(CliError::Usage("--workers must be >= 1".into()));
        }
        Ok(SamplerConfig::new(self.seed, self.samples).with_workers(self.workers))
    }

    fn quad_tol(&self) -> Result<f64, CliError> {
        match self.tol {
            None => Ok(RING_REL_TOL),
            Some(t) if t > 0.0 && t < 1.0 => Ok(t),
            Some(t) => Err(CliError::Usage(format!("--tol must lie in (0, 1), got {t}"))),
        }
    }

    fn shape(&self) -> Result<Shape, CliError> {
        parse_shape(self.shape.as_deref().unwrap_or(DEFAULT_SHAPE)).map_err(CliError::from)
    }
}

/// The report printed by every subcommand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub method: String,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub stderr: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    pub runtime_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub details: Option<Value>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Numeric(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NumericFailure { .. } => CliError::Numeric(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

/// Parse a body from the shape grammar.
pub fn parse_shape(spec: &str) -> mayer_core::Result<Shape> {
    spec.parse()
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Run the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let (stdout, stderr) = if e.use_stderr() { (String::new(), text) } else { (text, String::new()) };
            return Outcome { code, stdout, stderr };
        }
    };
    match execute(&cli.command) {
        Ok((report, format, code)) => match render(&report, format) {
            Ok(stdout) => Outcome {
                code,
                stdout,
                stderr: String::new(),
            },
            Err(e) => Outcome {
                code: EXIT_NUMERIC,
                stdout: String::new(),
                stderr: format!("error: could not render report: {e}\n"),
            },
        },
        Err(CliError::Usage(msg)) => Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(CliError::Numeric(msg)) => Outcome {
            code: EXIT_NUMERIC,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn load_config(path: &Option<PathBuf>) -> Result<FileConfig, CliError> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
}

fn execute(command: &Command) -> Result<(Report, OutputFormat, i32), CliError> {
    let flags = command.flags();
    let cfg = RunConfig::merge(command.name(), flags, load_config(&flags.config)?);
    let started = Instant::now();
    let mut draft = match command {
        Command::B2(_) => b2(&cfg)?,
        Command::Virial(_) => virial(&cfg)?,
        Command::Cluster(_) => cluster(&cfg)?,
        Command::Ring(_) => ring(&cfg)?,
        Command::Graphs(_) => graphs(&cfg)?,
        Command::Verify(_) => verify(&cfg)?,
    };
    let code = draft.exit_code;
    draft.report.command = cfg.command.to_string();
    draft.report.runtime_ms = started.elapsed().as_secs_f64() * 1e3;
    Ok((draft.report, cfg.out, code))
}

struct Draft {
    report: Report,
    exit_code: i32,
}

impl Draft {
    fn exact(method: Method, value: f64, inputs: BTreeMap<String, Value>) -> Self {
        Self {
            report: Report {
                command: String::new(),
                inputs,
                method: method.name().into(),
                value,
                stderr: None,
                samples: None,
                seed: None,
                runtime_ms: 0.0,
                details: None,
            },
            exit_code: EXIT_OK,
        }
    }

    fn stochastic(est: &MCEstimate, inputs: BTreeMap<String, Value>) -> Self {
        let mut d = Self::exact(Method::Mc, est.mean, inputs);
        d.report.stderr = Some(est.stderr);
        d.report.samples = Some(est.samples);
        d.report.seed = Some(est.seed);
        d
    }

    fn with_details(mut self, details: Value) -> Self {
        self.report.details = Some(details);
        self
    }
}

fn inputs(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn mc_inputs(cfg: &RunConfig, mut base: Vec<(&'static str, Value)>) -> BTreeMap<String, Value> {
    base.push(("workers", json!(cfg.workers)));
    inputs(&base)
}

/// Contact distance of a pair the wavevector route can handle.
fn contact_kernel(a: &Shape, b: &Shape) -> Result<SpectralKernel, CliError> {
    if !a.is_round() || !b.is_round() {
        return Err(CliError::Usage(
            "the fourier method needs balls or disks (no closed-form transform for elongated bodies)".into(),
        ));
    }
    if a.dim() != b.dim() {
        return Err(CliError::from(Error::DimensionMismatch(a.dim(), b.dim())));
    }
    Ok(SpectralKernel::new(a.radius() + b.radius(), a.dim())?)
}

fn b2(cfg: &RunConfig) -> Result<Draft, CliError> {
    let a = cfg.shape()?;
    let b = match &cfg.shape2 {
        Some(s) => parse_shape(s)?,
        None => a,
    };
    let pair = vec![("shape", json!(a.to_string())), ("shape2", json!(b.to_string()))];
    match cfg.method.unwrap_or(Method::Kinematic) {
        Method::Kinematic => Ok(Draft::exact(Method::Kinematic, kinematic_b2(&a, &b)?, inputs(&pair))),
        Method::Fourier => {
            let kernel = contact_kernel(&a, &b)?;
            Ok(Draft::exact(Method::Fourier, -0.5 * f_fourier(&kernel, 0.0)?, inputs(&pair)))
        }
        Method::Mc => {
            if a.dim() != b.dim() {
                return Err(CliError::from(Error::DimensionMismatch(a.dim(), b.dim())));
            }
            let edge = ClusterGraph::path(2)?;
            let est = cluster_integral_mc_mixed(&edge, &[a, b], &cfg.sampler()?)?.scaled(-0.5);
            Ok(Draft::stochastic(&est, mc_inputs(cfg, pair)))
        }
    }
}

fn required<T: Copy>(value: Option<T>, flag: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("missing required flag --{flag}")))
}

fn virial(cfg: &RunConfig) -> Result<Draft, CliError> {
    let order = required(cfg.order, "order")?;
    let shape = cfg.shape()?;
    let base = vec![("order", json!(order)), ("shape", json!(shape.to_string()))];
    match cfg.method.unwrap_or(Method::Mc) {
        Method::Mc => {
            let v = virial_coefficient_mc_detailed(order, &shape, &cfg.sampler()?)?;
            let stars: Vec<Value> = v
                .stars
                .iter()
                .map(|s| {
                    json!({
                        "graph": s.graph.to_string(),
                        "labeled_count": s.labeled_count,
                        "integral": s.integral.mean,
                        "stderr": s.integral.stderr,
                    })
                })
                .collect();
            Ok(Draft::stochastic(&v.coefficient, mc_inputs(cfg, base)).with_details(json!({ "stars": stars })))
        }
        Method::Kinematic if order == 2 => Ok(Draft::exact(Method::Kinematic, kinematic_b2(&shape, &shape)?, inputs(&base))),
        Method::Fourier if order <= 3 => {
            let kernel = contact_kernel(&shape, &shape)?;
            let tol = cfg.quad_tol()?;
            // B2 = −f̃(0)/2, B3 = −ring_3/3
            let value = if order == 2 {
                -0.5 * f_fourier(&kernel, 0.0)?
            } else if order == 3 {
                -ring_integral_with_tol(3, &kernel, tol)? / 3.0
            } else {
                return Err(CliError::from(Error::UnsupportedOrder { order, min: 2, max: 3 }));
            };
            Ok(Draft::exact(Method::Fourier, value, inputs(&base)))
        }
        m => Err(CliError::Usage(format!(
            "method {} is not available for virial order {order}",
            m.name()
        ))),
    }
}

fn cluster(cfg: &RunConfig) -> Result<Draft, CliError> {
    let literal = cfg
        .graph
        .as_deref()
        .ok_or_else(|| CliError::Usage("missing required flag --graph".into()))?;
    let g: ClusterGraph = literal.parse()?;
    let shape = cfg.shape()?;
    let base = vec![("graph", json!(g.to_string())), ("shape", json!(shape.to_string()))];
    match cfg.method.unwrap_or(Method::Mc) {
        Method::Mc => {
            let est = cluster_integral_mc(&g, &shape, &cfg.sampler()?)?;
            Ok(Draft::stochastic(&est, mc_inputs(cfg, base)))
        }
        Method::Fourier => {
            let kernel = contact_kernel(&shape, &shape)?;
            let value = loop_evaluate_with_tol(&g, &kernel, cfg.quad_tol()?)?;
            Ok(Draft::exact(Method::Fourier, value, inputs(&base)))
        }
        Method::Kinematic => Err(CliError::Usage("the kinematic method only yields B2".into())),
    }
}

fn ring(cfg: &RunConfig) -> Result<Draft, CliError> {
    let m = required(cfg.m, "m")?;
    let shape = cfg.shape()?;
    let base = vec![("m", json!(m)), ("shape", json!(shape.to_string()))];
    match cfg.method.unwrap_or(Method::Fourier) {
        Method::Fourier => {
            let kernel = contact_kernel(&shape, &shape)?;
            let value = ring_integral_with_tol(m, &kernel, cfg.quad_tol()?)?;
            Ok(Draft::exact(Method::Fourier, value, inputs(&base)))
        }
        Method::Mc => {
            let g = ClusterGraph::ring(m)?;
            let est = cluster_integral_mc(&g, &shape, &cfg.sampler()?)?;
            Ok(Draft::stochastic(&est, mc_inputs(cfg, base)))
        }
        Method::Kinematic => Err(CliError::Usage("the kinematic method only yields B2".into())),
    }
}

fn graphs(cfg: &RunConfig) -> Result<Draft, CliError> {
    let order = required(cfg.order, "order")?;
    let stars = enumerate_stars(order)?;
    let mut listed = Vec::with_capacity(stars.len());
    for s in &stars {
        listed.push(json!({
            "graph": s.graph.to_string(),
            "edges": s.graph.edge_count(),
            "labeled_count": s.labeled_count,
            "automorphisms": automorphism_order(&s.graph)?,
            "vertex_split": vertex_split(&s.graph),
            "loops": cycle_basis(&s.graph)?.loops.len(),
        }));
    }
    let labeled: usize = stars.iter().map(|s| s.labeled_count).sum();
    let mut d = Draft::exact(Method::Kinematic, stars.len() as f64, inputs(&[("order", json!(order))]));
    d.report.method = "enumeration".into();
    Ok(d.with_details(json!({ "labeled_total": labeled, "graphs": listed })))
}

fn verify(cfg: &RunConfig) -> Result<Draft, CliError> {
    let name = cfg.suite.as_deref().unwrap_or("all");
    let suite: Suite = name.parse()?;
    let checks = run_suite(suite)?;
    let failed = checks.iter().filter(|c| !c.pass).count();
    let listed: Vec<Value> = checks
        .iter()
        .map(|c| {
            json!({
                "suite": c.suite.name(),
                "name": c.name,
                "value": c.value,
                "expected": c.expected,
                "tolerance": c.tolerance,
                "criterion": format!("{:?}", c.criterion).to_lowercase(),
                "pass": c.pass,
            })
        })
        .collect();
    let mut d = Draft::exact(Method::Kinematic, failed as f64, inputs(&[("suite", json!(suite.name()))]));
    d.report.method = "identities".into();
    d.exit_code = if failed == 0 { EXIT_OK } else { EXIT_VERIFY_FAILED };
    let mut details = json!({ "checks": listed, "total": checks.len(), "failed": failed });
    if cfg.tol.is_some() {
        details["note"] = json!("--tol is ignored by verify; contract tolerances apply");
    }
    Ok(d.with_details(details))
}

fn render(report: &Report, format: OutputFormat) -> Result<String, String> {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(report)
            .map(|s| s + "\n")
            .map_err(|e| e.to_string()),
        OutputFormat::Csv => render_csv(report),
        OutputFormat::Text => Ok(render_text(report)),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_csv(report: &Report) -> Result<String, String> {
    let opt = |v: Option<String>| v.unwrap_or_default();
    let mut header = vec!["command".to_string(), "method".into(), "value".into(), "stderr".into()];
    header.extend(["samples".into(), "seed".into(), "runtime_ms".into()]);
    let mut row = vec![
        report.command.clone(),
        report.method.clone(),
        report.value.to_string(),
        opt(report.stderr.map(|v| v.to_string())),
        opt(report.samples.map(|v| v.to_string())),
        opt(report.seed.map(|v| v.to_string())),
        report.runtime_ms.to_string(),
    ];
    for (k, v) in &report.inputs {
        header.push(format!("inputs.{k}"));
        row.push(scalar(v));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).map_err(|e| e.to_string())?;
    w.write_record(&row).map_err(|e| e.to_string())?;
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}

fn render_text(report: &Report) -> String {
    let mut out = format!("{} ({})\n", report.command, report.method);
    for (k, v) in &report.inputs {
        out += &format!("  {k}: {}\n", scalar(v));
    }
    match report.stderr {
        Some(se) => out += &format!("value: {} ± {se}\n", report.value),
        None => out += &format!("value: {}\n", report.value),
    }
    if let (Some(n), Some(seed)) = (report.samples, report.seed) {
        out += &format!("samples: {n} (seed {seed})\n");
    }
    if let Some(Value::Array(checks)) = report.details.as_ref().and_then(|d| d.get("checks")) {
        for c in checks {
            let mark = if c["pass"].as_bool() == Some(true) { "pass" } else { "FAIL" };
            out += &format!("  [{mark}] {}: {}\n", scalar(&c["suite"]), scalar(&c["name"]));
        }
    }
    out += &format!("runtime: {:.1} ms\n", report.runtime_ms);
    out
}
