//! Command-line interface.
//!
//! Three subcommands share one resolution pipeline (config file -> flags ->
//! defaults) and one artifact discipline:
//!
//! * `torsion KIND` — assemble an analytic-torsion report for a model
//!   geometry, sweeping any combination of `--theta` / `--length` /
//!   `--scale` points in parallel.
//! * `zeta` — tabulate per-degree zeta data (ζ(0), ζ′(0), error bound) for
//!   one model, optionally pinning the backend.
//! * `verify` — run the seeded identity suites and exit 1 if any check
//!   fails.
//!
//! Every artifact embeds the tool name, version, convention tag, a SHA-256
//! hash of the fully resolved settings, and the seed, and is rendered from
//! deterministic data only — rerunning with the same settings reproduces
//! the output byte for byte. Files are written atomically (temp file, then
//! rename), and only after the whole computation has succeeded, so a
//! failing run never leaves a partial artifact. Exit codes: 0 success,
//! 1 verification failure, 2 invalid input, 3 convergence budget exceeded.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use nalgebra::DMatrix;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::assembly::{self, TorsionReport};
use crate::config::{parse_gram, parse_number_list, ConfigMap};
use crate::error::{Error, Result};
use crate::models::{self, ModelSpectra, TorsionKind};
use crate::verify::{self, VerifyOptions};
use crate::zeta::ZetaMethod;

pub const TOOL: &str = "spectral-torsion";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
/// Sign convention tag embedded in every artifact.
pub const CONVENTION: &str = "logdet = -zeta'(0); log_torsion = sum_q w_q * zeta_q'(0)";

#[derive(Parser, Debug)]
#[command(
    name = "spectral-torsion",
    version,
    about = "Zeta-regularized determinants and analytic torsion on flat model geometries",
    after_help = "Exit codes: 0 success, 1 verification failure, 2 invalid input, \
                  3 convergence budget exceeded."
)]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Assemble an analytic-torsion report for a model geometry
    Torsion(TorsionArgs),
    /// Tabulate per-degree spectral zeta data for a model geometry
    Zeta(ZetaArgs),
    /// Run the seeded identity-verification suites
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct CommonArgs {
    /// Model geometry: circle, t2, t3, or t4
    #[arg(long)]
    pub model: Option<String>,

    /// Torus dimension (alternative to --model)
    #[arg(long)]
    pub dimension: Option<usize>,

    /// Metric entries, row-major; rows may be separated by `;`.
    /// Entries are decimals or exact rationals (`3/2`). Default: identity.
    #[arg(long)]
    pub gram: Option<String>,

    /// Twist components, comma separated; `;` separates sweep points.
    /// Default: 0.25 for every coordinate.
    #[arg(long)]
    pub theta: Option<String>,

    /// Torus side length(s) > 0; a comma list sweeps several
    #[arg(long)]
    pub length: Option<String>,

    /// Constant conformal factor(s) > 0 applied to the metric; a comma
    /// list sweeps several
    #[arg(long)]
    pub scale: Option<String>,

    /// Plain-text `key = value` configuration file; flags override it
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Seed recorded in the artifact
    #[arg(long)]
    pub seed: Option<u64>,

    /// Artifact path (stdout when omitted)
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Artifact format: json or csv
    #[arg(long)]
    pub format: Option<String>,
}

#[derive(Args, Debug)]
pub struct TorsionArgs {
    /// Torsion kind: real, complex, selfdual, antiselfdual, or quaternionic
    pub kind: String,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct ZetaArgs {
    /// Spectrum family to tabulate (same tokens as the torsion kinds)
    #[arg(long, default_value = "real")]
    pub kind: String,

    /// Zeta backend: hurwitz, epstein, or mellin (default: per-lattice choice)
    #[arg(long)]
    pub method: Option<String>,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Comma-separated suite filter (default: all suites)
    #[arg(long)]
    pub suite: Option<String>,

    /// Seed for the generated test families
    #[arg(long)]
    pub seed: Option<u64>,

    /// Finite-difference steps, comma separated, largest first
    #[arg(long)]
    pub h: Option<String>,

    /// Plain-text complex file checked by the `file` suite
    #[arg(long)]
    pub complex: Option<PathBuf>,

    /// Plain-text `key = value` configuration file; flags override it
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Report path (stdout when omitted)
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Report format: table or json
    #[arg(long)]
    pub format: Option<String>,
}

/// Entry point used by the binary: parse, execute, map errors to exit codes.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Torsion(args) => run_torsion(args),
        Cmd::Zeta(args) => run_zeta(args),
        Cmd::Verify(args) => run_verify(args),
    }
}

// ---------------------------------------------------------------------
// settings resolution
// ---------------------------------------------------------------------

/// Fully resolved model settings for `torsion` and `zeta`.
#[derive(Debug)]
struct ModelSettings {
    kind: TorsionKind,
    model: String,
    dimension: usize,
    gram: DMatrix<f64>,
    thetas: Vec<Vec<f64>>,
    lengths: Vec<f64>,
    scales: Vec<f64>,
    seed: u64,
    format: String,
    output: Option<PathBuf>,
}

fn load_config(path: &Option<PathBuf>) -> Result<ConfigMap> {
    match path {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| {
                Error::Config(format!("cannot read config file {}: {e}", p.display()))
            })?;
            ConfigMap::parse(&text)
        }
        None => Ok(ConfigMap::default()),
    }
}

/// Flag value if present, else the config-file value.
fn pick<'a>(flag: Option<&'a str>, cfg: &'a ConfigMap, key: &str) -> Option<&'a str> {
    flag.or_else(|| cfg.get(key))
}

fn model_dimension(token: &str) -> Result<usize> {
    match token {
        "circle" | "t1" => Ok(1),
        "t2" => Ok(2),
        "t3" => Ok(3),
        "t4" => Ok(4),
        other => Err(Error::Config(format!(
            "unknown model `{other}` (expected circle, t2, t3, or t4)"
        ))),
    }
}

fn model_token(dimension: usize) -> String {
    if dimension == 1 {
        "circle".to_string()
    } else {
        format!("t{dimension}")
    }
}

fn default_dimension(kind: TorsionKind) -> usize {
    match kind {
        TorsionKind::Real => 1,
        TorsionKind::Complex => 2,
        TorsionKind::SelfDual | TorsionKind::AntiSelfDual | TorsionKind::Quaternionic => 4,
    }
}

fn parse_seed(text: &str) -> Result<u64> {
    text.trim()
        .parse::<u64>()
        .map_err(|_| Error::Config(format!("seed must be a nonnegative integer, got `{text}`")))
}

fn parse_positive_list(text: &str, what: &str) -> Result<Vec<f64>> {
    let values = parse_number_list(&text.replace(';', ","))?;
    for &v in &values {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::Config(format!("{what} must be positive, got {v}")));
        }
    }
    Ok(values)
}

fn resolve_model(kind: TorsionKind, common: &CommonArgs, cfg: &ConfigMap) -> Result<ModelSettings> {
    let model_flag = pick(common.model.as_deref(), cfg, "model");
    let dim_cfg = match cfg.get("dimension") {
        Some(v) => Some(v.trim().parse::<usize>().map_err(|_| {
            Error::Config(format!("dimension must be a positive integer, got `{v}`"))
        })?),
        None => None,
    };
    let dim_flag = common.dimension.or(dim_cfg);

    let dimension = match (model_flag, dim_flag) {
        (Some(m), Some(n)) => {
            let dm = model_dimension(m)?;
            if dm != n {
                return Err(Error::Config(format!(
                    "model `{m}` has dimension {dm}, but dimension {n} was requested"
                )));
            }
            dm
        }
        (Some(m), None) => model_dimension(m)?,
        (None, Some(n)) => n,
        (None, None) => default_dimension(kind),
    };
    if dimension == 0 {
        return Err(Error::Config("dimension must be at least 1".to_string()));
    }
    let model = model_token(dimension);

    let gram = match pick(common.gram.as_deref(), cfg, "gram") {
        Some(text) => parse_gram(text, dimension)?,
        None => DMatrix::identity(dimension, dimension),
    };

    let thetas: Vec<Vec<f64>> = match pick(common.theta.as_deref(), cfg, "theta") {
        Some(text) => {
            let points: Vec<Vec<f64>> = text
                .split(';')
                .map(parse_number_list)
                .collect::<Result<_>>()?;
            for p in &points {
                if p.len() != dimension {
                    return Err(Error::Config(format!(
                        "theta needs {dimension} components, got {}",
                        p.len()
                    )));
                }
            }
            points
        }
        None => vec![vec![0.25; dimension]],
    };

    let lengths = match pick(common.length.as_deref(), cfg, "length") {
        Some(text) => parse_positive_list(text, "length")?,
        None => vec![1.0],
    };
    let scales = match pick(common.scale.as_deref(), cfg, "scale") {
        Some(text) => parse_positive_list(text, "scale")?,
        None => vec![1.0],
    };

    let seed = match common.seed {
        Some(s) => s,
        None => cfg.get("seed").map(parse_seed).transpose()?.unwrap_or(0),
    };

    let format = pick(common.format.as_deref(), cfg, "format")
        .unwrap_or("json")
        .to_ascii_lowercase();
    if format != "json" && format != "csv" {
        return Err(Error::Config(format!(
            "format must be json or csv, got `{format}`"
        )));
    }

    let output = common
        .output
        .clone()
        .or_else(|| cfg.get("output").map(PathBuf::from));

    Ok(ModelSettings {
        kind,
        model,
        dimension,
        gram,
        thetas,
        lengths,
        scales,
        seed,
        format,
        output,
    })
}

fn join_floats(values: &[f64], sep: &str) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

impl ModelSettings {
    /// Canonical settings string; its SHA-256 is the artifact's config
    /// hash. The output path is deliberately excluded: where an artifact
    /// is written must not change its bytes.
    fn canonical(&self, command: &str, extra: &[(&str, String)]) -> String {
        let mut lines = vec![
            format!("command={command}"),
            format!("dimension={}", self.dimension),
            format!("format={}", self.format),
            format!("gram={}", join_floats(self.gram.as_slice(), ",")),
            format!("kind={}", self.kind),
            format!("lengths={}", join_floats(&self.lengths, ";")),
            format!("model={}", self.model),
            format!("scales={}", join_floats(&self.scales, ";")),
            format!("seed={}", self.seed),
            format!(
                "thetas={}",
                self.thetas
                    .iter()
                    .map(|p| join_floats(p, ","))
                    .collect::<Vec<_>>()
                    .join(";")
            ),
        ];
        for (k, v) in extra {
            lines.push(format!("{k}={v}"));
        }
        lines.sort();
        lines.join("\n")
    }
}

fn sha256_hex(text: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for byte in digest {
        let _ = write!(out, "{byte:02x}");
    }
    out
}

// ---------------------------------------------------------------------
// torsion subcommand
// ---------------------------------------------------------------------

fn build_model(
    kind: TorsionKind,
    gram: &DMatrix<f64>,
    theta: &[f64],
    length: f64,
) -> Result<ModelSpectra> {
    match kind {
        TorsionKind::Real => models::de_rham_torus(gram, theta, length),
        TorsionKind::Complex => models::dolbeault_torus(gram, theta, length),
        TorsionKind::SelfDual | TorsionKind::AntiSelfDual => {
            models::selfdual_torus4(gram, theta, length)
        }
        TorsionKind::Quaternionic => models::quaternionic_torus4(gram, theta, length),
    }
}

fn assemble_for(kind: TorsionKind, model: &ModelSpectra) -> Result<TorsionReport> {
    match kind {
        TorsionKind::Real => assembly::real_torsion(model),
        TorsionKind::Complex => assembly::complex_torsion(model),
        TorsionKind::SelfDual => assembly::selfdual_torsion(model),
        TorsionKind::AntiSelfDual => assembly::antiselfdual_torsion(model),
        TorsionKind::Quaternionic => assembly::quaternionic_torsion(model),
    }
}

/// One sweep point and its finished report.
#[derive(Debug, Serialize)]
struct TorsionRun {
    theta: Vec<f64>,
    length: f64,
    scale: f64,
    report: TorsionReport,
}

#[derive(Debug, Serialize)]
struct TorsionArtifact {
    tool: &'static str,
    version: &'static str,
    convention: &'static str,
    config_hash: String,
    seed: u64,
    runs: Vec<TorsionRun>,
}

fn compute_runs(settings: &ModelSettings) -> Result<Vec<TorsionRun>> {
    let mut points: Vec<(Vec<f64>, f64, f64)> = Vec::new();
    for theta in &settings.thetas {
        for &length in &settings.lengths {
            for &scale in &settings.scales {
                points.push((theta.clone(), length, scale));
            }
        }
    }
    let n = points.len();
    let compute = |point: &(Vec<f64>, f64, f64)| -> Result<TorsionRun> {
        let (theta, length, scale) = point;
        let model = build_model(settings.kind, &settings.gram, theta, *length)?;
        let model = model.conformal_rescale(*scale)?;
        let report = assemble_for(settings.kind, &model)?;
        Ok(TorsionRun {
            theta: theta.clone(),
            length: *length,
            scale: *scale,
            report,
        })
    };

    let workers = assembly::worker_count(n)?;
    let mut slots: Vec<Option<Result<TorsionRun>>> = (0..n).map(|_| None).collect();
    if workers <= 1 {
        for (i, point) in points.iter().enumerate() {
            slots[i] = Some(compute(point));
        }
    } else {
        let slots_ref = std::sync::Mutex::new(&mut slots);
        std::thread::scope(|scope| {
            for w in 0..workers {
                let slots_ref = &slots_ref;
                let points = &points;
                let compute = &compute;
                scope.spawn(move || {
                    for i in (w..n).step_by(workers) {
                        let run = compute(&points[i]);
                        slots_ref.lock().unwrap()[i] = Some(run);
                    }
                });
            }
        });
    }
    // reduce in sweep order so the first failure is deterministic
    slots
        .into_iter()
        .map(|slot| slot.expect("every sweep point is computed"))
        .collect()
}

fn torsion_csv(artifact: &TorsionArtifact) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# tool: {} {}", artifact.tool, artifact.version);
    let _ = writeln!(out, "# convention: {}", artifact.convention);
    let _ = writeln!(out, "# config_hash: {}", artifact.config_hash);
    let _ = writeln!(out, "# seed: {}", artifact.seed);
    out.push_str("model_id,kind,q,multiplicity,zeta0,zeta_prime0,logdet,log_torsion,error_bound\n");
    for run in &artifact.runs {
        let r = &run.report;
        let _ = writeln!(
            out,
            "# run: theta={} length={} scale={} weight_rule={} total_error_bound={}",
            join_floats(&run.theta, ","),
            run.length,
            run.scale,
            r.weight_rule,
            r.total_error_bound
        );
        for row in &r.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                r.model_id,
                r.kind,
                row.q,
                row.multiplicity,
                row.zeta0,
                row.zeta_prime0,
                row.logdet,
                r.log_torsion,
                row.error_bound
            );
        }
    }
    out
}

fn run_torsion(args: TorsionArgs) -> Result<i32> {
    let kind = TorsionKind::from_str(&args.kind)?;
    let cfg = load_config(&args.common.config)?;
    let settings = resolve_model(kind, &args.common, &cfg)?;
    let config_hash = sha256_hex(&settings.canonical("torsion", &[]));

    let runs = compute_runs(&settings)?;
    let artifact = TorsionArtifact {
        tool: TOOL,
        version: VERSION,
        convention: CONVENTION,
        config_hash,
        seed: settings.seed,
        runs,
    };
    let rendered = match settings.format.as_str() {
        "csv" => torsion_csv(&artifact),
        _ => to_json(&artifact)?,
    };
    emit(&rendered, &settings.output)?;
    Ok(0)
}

// ---------------------------------------------------------------------
// zeta subcommand
// ---------------------------------------------------------------------

#[derive(Debug, Serialize)]
struct ZetaRow {
    q: usize,
    multiplicity: u64,
    zeta0: f64,
    zeta_prime0: f64,
    error_bound: f64,
    method: ZetaMethod,
}

#[derive(Debug, Serialize)]
struct ZetaArtifact {
    tool: &'static str,
    version: &'static str,
    convention: &'static str,
    config_hash: String,
    seed: u64,
    model_id: String,
    kind: TorsionKind,
    theta: Vec<f64>,
    length: f64,
    scale: f64,
    rows: Vec<ZetaRow>,
}

fn parse_method(token: &str) -> Result<ZetaMethod> {
    match token.trim().to_ascii_lowercase().as_str() {
        "hurwitz" => Ok(ZetaMethod::Hurwitz),
        "epstein" => Ok(ZetaMethod::Epstein),
        "mellin" => Ok(ZetaMethod::MellinQuadrature),
        other => Err(Error::Config(format!(
            "unknown zeta method `{other}` (expected hurwitz, epstein, or mellin)"
        ))),
    }
}

fn zeta_csv(artifact: &ZetaArtifact) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# tool: {} {}", artifact.tool, artifact.version);
    let _ = writeln!(out, "# convention: {}", artifact.convention);
    let _ = writeln!(out, "# config_hash: {}", artifact.config_hash);
    let _ = writeln!(out, "# seed: {}", artifact.seed);
    let _ = writeln!(
        out,
        "# run: kind={} theta={} length={} scale={}",
        artifact.kind,
        join_floats(&artifact.theta, ","),
        artifact.length,
        artifact.scale
    );
    out.push_str("model_id,q,zeta0,zeta_prime0,error_bound,method\n");
    for row in &artifact.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            artifact.model_id, row.q, row.zeta0, row.zeta_prime0, row.error_bound, row.method
        );
    }
    out
}

fn run_zeta(args: ZetaArgs) -> Result<i32> {
    let kind = TorsionKind::from_str(&args.kind)?;
    let cfg = load_config(&args.common.config)?;
    let settings = resolve_model(kind, &args.common, &cfg)?;
    let method = match pick(args.method.as_deref(), &cfg, "method") {
        Some(tok) => Some(parse_method(tok)?),
        None => None,
    };
    if settings.thetas.len() * settings.lengths.len() * settings.scales.len() != 1 {
        return Err(Error::Config(
            "parameter sweeps apply to the torsion subcommand; give zeta a single \
             theta, length, and scale"
                .to_string(),
        ));
    }
    let method_token = method.map(|m| m.to_string()).unwrap_or_default();
    let config_hash = sha256_hex(&settings.canonical("zeta", &[("method", method_token)]));

    let model = build_model(kind, &settings.gram, &settings.thetas[0], settings.lengths[0])?;
    let model = model.conformal_rescale(settings.scales[0])?;
    let mut rows = Vec::with_capacity(model.degrees.len());
    for d in &model.degrees {
        let z = match method {
            Some(m) => d.lattice.zeta_with(m)?,
            None => d.lattice.zeta()?,
        };
        rows.push(ZetaRow {
            q: d.q,
            multiplicity: d.lattice.multiplicity,
            zeta0: z.zeta0,
            zeta_prime0: z.zeta_prime0,
            error_bound: z.error_bound,
            method: z.method,
        });
    }
    let artifact = ZetaArtifact {
        tool: TOOL,
        version: VERSION,
        convention: CONVENTION,
        config_hash,
        seed: settings.seed,
        model_id: model.id.clone(),
        kind,
        theta: settings.thetas[0].clone(),
        length: settings.lengths[0],
        scale: settings.scales[0],
        rows,
    };
    let rendered = match settings.format.as_str() {
        "csv" => zeta_csv(&artifact),
        _ => to_json(&artifact)?,
    };
    emit(&rendered, &settings.output)?;
    Ok(0)
}

// ---------------------------------------------------------------------
// verify subcommand
// ---------------------------------------------------------------------

#[derive(Debug, Serialize)]
struct VerifyArtifact {
    tool: &'static str,
    version: &'static str,
    convention: &'static str,
    config_hash: String,
    seed: u64,
    all_pass: bool,
    report: verify::VerifyReport,
}

fn run_verify(args: VerifyArgs) -> Result<i32> {
    let cfg = load_config(&args.config)?;

    let suites: Option<Vec<String>> = pick(args.suite.as_deref(), &cfg, "suite").map(|text| {
        text.split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect()
    });
    let seed = match args.seed {
        Some(s) => s,
        None => cfg.get("seed").map(parse_seed).transpose()?.unwrap_or(0),
    };
    let steps = match pick(args.h.as_deref(), &cfg, "h") {
        Some(text) => parse_positive_list(text, "finite-difference step")?,
        None => VerifyOptions::default().steps,
    };
    let complex_path = args
        .complex
        .clone()
        .or_else(|| cfg.get("complex").map(PathBuf::from));
    let complex_text = match &complex_path {
        Some(p) => Some(fs::read_to_string(p).map_err(|e| {
            Error::Config(format!("cannot read complex file {}: {e}", p.display()))
        })?),
        None => None,
    };
    let format = pick(args.format.as_deref(), &cfg, "format")
        .unwrap_or("table")
        .to_ascii_lowercase();
    if format != "table" && format != "json" {
        return Err(Error::Config(format!(
            "verify format must be table or json, got `{format}`"
        )));
    }
    let output = args
        .output
        .clone()
        .or_else(|| cfg.get("output").map(PathBuf::from));

    let mut canonical = vec![
        format!("command=verify"),
        format!("format={format}"),
        format!("seed={seed}"),
        format!("steps={}", join_floats(&steps, ",")),
        format!(
            "suites={}",
            suites
                .as_ref()
                .map(|s| s.join(","))
                .unwrap_or_else(|| "all".to_string())
        ),
    ];
    if let Some(text) = &complex_text {
        canonical.push(format!("complex_sha256={}", sha256_hex(text)));
    }
    canonical.sort();
    let config_hash = sha256_hex(&canonical.join("\n"));

    let opts = VerifyOptions {
        seed,
        suites,
        steps,
        complex_text,
    };
    let report = verify::run(&opts)?;
    let all_pass = report.all_pass();

    let rendered = if format == "json" {
        to_json(&VerifyArtifact {
            tool: TOOL,
            version: VERSION,
            convention: CONVENTION,
            config_hash,
            seed,
            all_pass,
            report,
        })?
    } else {
        let mut text = String::new();
        let _ = writeln!(text, "# tool: {TOOL} {VERSION}");
        let _ = writeln!(text, "# convention: {CONVENTION}");
        let _ = writeln!(text, "# config_hash: {config_hash}");
        let _ = writeln!(text, "# seed: {seed}");
        text.push_str(&report.render_table());
        text
    };
    emit(&rendered, &output)?;
    Ok(if all_pass { 0 } else { 1 })
}

// ---------------------------------------------------------------------
// artifact output
// ---------------------------------------------------------------------

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Config(format!("cannot serialize artifact: {e}")))?;
    text.push('\n');
    Ok(text)
}

/// Print to stdout, or write atomically (temp file in the same directory,
/// then rename) so a crash never leaves a truncated artifact.
fn emit(text: &str, output: &Option<PathBuf>) -> Result<()> {
    match output {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => {
            write_atomic(path, text)?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
    }
}

fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let file_name = path
        .file_name()
        .ok_or_else(|| Error::Config(format!("invalid output path {}", path.display())))?;
    let mut tmp = std::ffi::OsString::from(".");
    tmp.push(file_name);
    tmp.push(".tmp");
    let tmp_path = match dir {
        Some(d) => d.join(&tmp),
        None => PathBuf::from(&tmp),
    };
    fs::write(&tmp_path, text)?;
    match fs::rename(&tmp_path, path) {
        Ok(()) => Ok(()),
        Err(e) => {
            let _ = fs::remove_file(&tmp_path);
            Err(e.into())
        }
    }
}
