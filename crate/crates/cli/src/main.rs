use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use chordiag::checks::{kp_matrix, run_all, run_suite, CheckConfig, CheckOutcome, SUITES};
use chordiag::evolution::{evolve, rows, ModelSpec, SpectrumKind, Variant};
use chordiag::freeprob::{marchenko_pastur, point_mass, r_transform, s_transform, scaled_projector, semicircle};
use chordiag::matrix_model::{evaluate, exact_moment, sample_moment_grid, Ensemble};
use chordiag::oracle::count_types;
use chordiag::power_series::PowerSeries1;
use chordiag::series::{format_rational, parse_rational};
use chordiag::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "chordiag", version, about = "Chord diagram enumeration and cross-checks")]
struct Cli {
    #[command(flatten)]
    output: OutputArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    /// Output file; defaults to stdout, or `<dir>/<command>.<ext>` when an
    /// output directory is set.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, env = "CHORDIAG_OUT_DIR")]
    out_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evolve a generating function and write its count table.
    Evolve(EvolveArgs),
    /// Run a named check suite (or `all`).
    Check(CheckArgs),
    /// Brute-force enumeration.
    Oracle {
        #[command(subcommand)]
        action: OracleAction,
    },
    /// Random-matrix sampling.
    Matrix {
        #[command(subcommand)]
        action: MatrixAction,
    },
    /// Moments, R- and S-transforms of standard measures.
    Transforms(TransformArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModelArg {
    Point,
    Length,
    Vertex,
}

#[derive(Args, Debug)]
struct EvolveArgs {
    #[arg(long, value_enum, default_value_t = ModelArg::Point)]
    model: ModelArg,
    #[arg(long, conflicts_with = "non_orientable")]
    orientable: bool,
    #[arg(long)]
    non_orientable: bool,
    #[arg(long)]
    max_k: usize,
    /// One backbone with at most this many vertices.
    #[arg(long, conflicts_with_all = ["max_backbones", "max_weight"])]
    one_backbone: Option<u32>,
    #[arg(long, default_value_t = 1)]
    max_backbones: u32,
    /// Largest total number of backbone vertices kept.
    #[arg(long)]
    max_weight: Option<u32>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    suite: String,
    #[arg(long)]
    max_vertices: Option<u32>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    sigmas: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum OracleAction {
    /// Count diagrams on ordered backbones by type.
    Dump {
        /// Comma-separated backbone sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<u32>,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        non_orientable: bool,
        /// Include disconnected diagrams.
        #[arg(long)]
        all: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EnsembleArg {
    Hermitian,
    RealSymmetric,
}

#[derive(Subcommand, Debug)]
enum MatrixAction {
    /// Estimate `E Tr (X + sP)^m` and compare with the exact value.
    Sample {
        #[arg(long, value_enum, default_value_t = EnsembleArg::Hermitian)]
        ensemble: EnsembleArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        p: usize,
        #[arg(long, default_value_t = 0.0)]
        s: f64,
        #[arg(long, default_value_t = 6)]
        max_m: u32,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Measure {
    Semicircle,
    MarchenkoPastur,
    Projector,
    PointMass,
}

#[derive(Args, Debug)]
struct TransformArgs {
    #[arg(long, value_enum)]
    measure: Measure,
    #[arg(long, default_value_t = 8)]
    order: usize,
    /// Scale `s` of the projector, or the location of the point mass.
    #[arg(long, default_value = "1")]
    s: String,
    /// Normalized rank `q` of the projector.
    #[arg(long, default_value = "1/2")]
    q: String,
}

enum Failure {
    Config(String),
    Integrality(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::IntegralityViolation { .. } => Failure::Integrality(e.to_string()),
            other => Failure::Config(other.to_string()),
        }
    }
}

struct Report {
    json: Value,
    csv: Option<(Vec<String>, Vec<Vec<String>>)>,
}

fn header(command: &str, config: Value) -> Value {
    json!({
        "artifact": {"name": env!("CARGO_PKG_NAME"), "version": env!("CARGO_PKG_VERSION")},
        "command": command,
        "config": config,
    })
}

fn variant(non_orientable: bool) -> Variant {
    if non_orientable {
        Variant::NonOrientable
    } else {
        Variant::Orientable
    }
}

fn cmd_evolve(args: &EvolveArgs) -> Result<Report, Failure> {
    let kind = match args.model {
        ModelArg::Point => SpectrumKind::Point,
        ModelArg::Length => SpectrumKind::Length,
        ModelArg::Vertex => SpectrumKind::Vertex,
    };
    let v = variant(args.non_orientable);
    let (max_b, weight) = match (args.one_backbone, kind) {
        (Some(w), _) => (1, w),
        (None, SpectrumKind::Length) => (args.max_backbones, args.max_weight.unwrap_or(args.max_backbones)),
        (None, _) => (args.max_backbones, args.max_weight.unwrap_or(2 * args.max_k as u32 + 2)),
    };
    let spec = ModelSpec::new(kind, v, args.max_k, weight, max_b);
    let state = evolve(spec)?;
    state.check_integrality()?;
    let table = rows(&state)?;
    let config = serde_json::to_value(spec).map_err(|e| Failure::Io(e.to_string()))?;
    let json_rows = serde_json::to_value(&table).map_err(|e| Failure::Io(e.to_string()))?;
    let csv_rows = table
        .iter()
        .map(|r| {
            vec![
                format!("{:?}", r.variant),
                format!("{:?}", r.model),
                r.g_or_h.to_string(),
                r.k.to_string(),
                r.l.to_string(),
                r.b_spec.to_string(),
                r.n_or_p_spec.to_string(),
                r.count.clone(),
            ]
        })
        .collect();
    let mut json = header("evolve", config);
    json["rows"] = json_rows;
    let columns = ["variant", "model", "g_or_h", "k", "l", "b_spec", "n_or_p_spec", "count"];
    Ok(Report { json, csv: Some((columns.map(String::from).to_vec(), csv_rows)) })
}

fn cmd_check(args: &CheckArgs) -> Result<(Report, bool), Failure> {
    let mut config = CheckConfig::default();
    if let Some(v) = args.max_vertices {
        config.one_backbone_vertices = v;
        config.total_vertices = config.total_vertices.min(v);
    }
    config.samples = args.samples.unwrap_or(config.samples);
    config.seed = args.seed.unwrap_or(config.seed);
    config.sigmas = args.sigmas.unwrap_or(config.sigmas);
    if config.samples == 0 || !(config.sigmas > 0.0) {
        return Err(Failure::Config("samples and sigmas must be positive".into()));
    }
    let outcomes: Vec<CheckOutcome> = if args.suite == "all" {
        run_all(&config)
    } else if SUITES.contains(&args.suite.as_str()) {
        run_suite(&args.suite, &config)?
    } else {
        return Err(Failure::Config(format!("unknown suite `{}`; choose from {SUITES:?} or all", args.suite)));
    };
    let mut stderr = std::io::stderr().lock();
    for o in &outcomes {
        let _ = writeln!(
            stderr,
            "criterion {:>2} {} [{:.2}s] {}: {}",
            o.criterion,
            if o.passed { "PASS" } else { "FAIL" },
            o.seconds,
            o.name,
            o.detail
        );
    }
    let mut json = header("check", json!({"suite": args.suite, "settings": config}));
    json["outcomes"] = serde_json::to_value(&outcomes).map_err(|e| Failure::Io(e.to_string()))?;
    if args.suite == "kp" {
        let cells = kp_matrix(4, 3)?;
        for function in ["F", "G"] {
            let _ = writeln!(stderr, "{function}  y: 0 1 2 3 4");
            for eq in 1..=4 {
                let marks: Vec<&str> = cells
                    .iter()
                    .filter(|c| c.function == function && c.equation == eq)
                    .map(|c| if c.vanishes { "+" } else { "x" })
                    .collect();
                let _ = writeln!(stderr, "  eq{eq}  {}", marks.join(" "));
            }
        }
        json["kp_matrix"] = serde_json::to_value(&cells).map_err(|e| Failure::Io(e.to_string()))?;
    }
    let all_passed = outcomes.iter().all(|o| o.passed);
    let csv_rows = outcomes
        .iter()
        .map(|o| vec![o.criterion.to_string(), o.name.clone(), o.passed.to_string(), o.detail.clone()])
        .collect();
    let columns = ["criterion", "name", "passed", "detail"].map(String::from).to_vec();
    Ok((Report { json, csv: Some((columns, csv_rows)) }, all_passed))
}

fn cmd_oracle(action: &OracleAction) -> Result<Report, Failure> {
    let OracleAction::Dump { sizes, k, non_orientable, all } = action;
    let total: u32 = sizes.iter().sum();
    if 2 * k > total || total > 14 {
        return Err(Failure::Config("need 2k <= total vertices <= 14".into()));
    }
    let v = variant(*non_orientable);
    let counts = count_types(sizes, *k, v, !all);
    let rows: Vec<Vec<String>> = counts
        .iter()
        .map(|(t, c)| {
            vec![
                t.genus.to_string(),
                t.k.to_string(),
                t.l.to_string(),
                t.b_spec.to_string(),
                t.n_spec.to_string(),
                t.p_spec.as_ref().map(ToString::to_string).unwrap_or_default(),
                c.to_string(),
            ]
        })
        .collect();
    let columns = ["g_or_h", "k", "l", "b_spec", "n_spec", "p_spec", "count"].map(String::from).to_vec();
    let mut json = header(
        "oracle dump",
        json!({"sizes": sizes, "k": k, "variant": v, "connected_only": !all}),
    );
    json["rows"] = Value::Array(
        rows.iter().map(|r| Value::Object(columns.iter().cloned().zip(r.iter().cloned().map(Value::from)).collect())).collect(),
    );
    Ok(Report { json, csv: Some((columns, rows)) })
}

fn cmd_matrix(action: &MatrixAction) -> Result<Report, Failure> {
    let MatrixAction::Sample { ensemble, n, p, s, max_m, samples, seed } = *action;
    let ensemble = match ensemble {
        EnsembleArg::Hermitian => Ensemble::Hermitian,
        EnsembleArg::RealSymmetric => Ensemble::RealSymmetric,
    };
    if n == 0 || p > n || samples == 0 || max_m > 12 {
        return Err(Failure::Config("need N >= 1, p <= N, samples >= 1, max-m <= 12".into()));
    }
    let state = evolve(ModelSpec::one_backbone_point(ensemble.variant(), max_m.max(1)))?;
    let grid = sample_moment_grid(ensemble, n, &[(p, s)], max_m, samples, seed)?;
    let mut rows = Vec::new();
    for (m, est) in grid[0].iter().enumerate() {
        let exact = evaluate(&exact_moment(&state, m as u32)?, s, p as f64, n as f64);
        rows.push(vec![
            m.to_string(),
            exact_moment(&state, m as u32)?.to_string(),
            format!("{exact:.6}"),
            format!("{:.6}", est.mean),
            format!("{:.6}", est.stderr),
            format!("{:.3}", est.zscore(exact)),
        ]);
    }
    let columns = ["m", "exact_polynomial", "exact", "mean", "stderr", "z"].map(String::from).to_vec();
    let mut json = header(
        "matrix sample",
        json!({"ensemble": ensemble, "n": n, "p": p, "s": s, "max_m": max_m, "samples": samples, "seed": seed}),
    );
    json["rows"] = Value::Array(
        rows.iter().map(|r| Value::Object(columns.iter().cloned().zip(r.iter().cloned().map(Value::from)).collect())).collect(),
    );
    Ok(Report { json, csv: Some((columns, rows)) })
}

fn series_strings(s: &PowerSeries1<BigRational>) -> Vec<String> {
    s.coeffs().iter().map(format_rational).collect()
}

fn cmd_transforms(args: &TransformArgs) -> Result<Report, Failure> {
    let order = args.order;
    if order < 2 {
        return Err(Failure::Config("order must be at least 2".into()));
    }
    let s = parse_rational(&args.s)?;
    let q = parse_rational(&args.q)?;
    let moments = match args.measure {
        Measure::Semicircle => semicircle(order),
        Measure::MarchenkoPastur => marchenko_pastur(order),
        Measure::Projector => scaled_projector(&s, &q, order),
        Measure::PointMass => point_mass(&s, order),
    };
    let r = r_transform(&moments, order)?;
    let s_tr = s_transform(&moments, order).ok();
    let json_body = json!({
        "moments": series_strings(&moments),
        "r_transform": series_strings(&r),
        "s_transform": s_tr.as_ref().map(series_strings),
    });
    let mut json = header(
        "transforms",
        json!({"measure": format!("{:?}", args.measure), "order": order, "s": args.s, "q": args.q}),
    );
    json["result"] = json_body;
    let rows = (0..order)
        .map(|i| {
            vec![
                i.to_string(),
                format_rational(&moments.coeff(i)),
                if i < r.order() { format_rational(&r.coeff(i)) } else { String::new() },
                s_tr.as_ref().filter(|t| i < t.order()).map(|t| format_rational(&t.coeff(i))).unwrap_or_default(),
            ]
        })
        .collect();
    let columns = ["index", "moment", "r_coefficient", "s_coefficient"].map(String::from).to_vec();
    Ok(Report { json, csv: Some((columns, rows)) })
}

fn render(report: &Report, format: Format) -> Result<Vec<u8>, Failure> {
    match format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&report.json).map_err(|e| Failure::Io(e.to_string()))?;
            text.push('\n');
            Ok(text.into_bytes())
        }
        Format::Csv => {
            let (columns, rows) = report.csv.as_ref().ok_or_else(|| Failure::Config("no CSV form".into()))?;
            let mut out = Vec::new();
            let meta = json!({"artifact": report.json["artifact"], "command": report.json["command"], "config": report.json["config"]});
            writeln!(out, "# {meta}").map_err(|e| Failure::Io(e.to_string()))?;
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(columns).map_err(|e| Failure::Io(e.to_string()))?;
            for r in rows {
                w.write_record(r).map_err(|e| Failure::Io(e.to_string()))?;
            }
            w.flush().map_err(|e| Failure::Io(e.to_string()))?;
            drop(w);
            Ok(out)
        }
    }
}

fn emit(report: &Report, output: &OutputArgs, name: &str) -> Result<(), Failure> {
    let bytes = render(report, output.format)?;
    let ext = match output.format {
        Format::Json => "json",
        Format::Csv => "csv",
    };
    let path = output.out.clone().or_else(|| output.out_dir.as_ref().map(|d| d.join(format!("{name}.{ext}"))));
    match path {
        Some(p) => {
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(|e| Failure::Io(e.to_string()))?;
            }
            std::fs::write(&p, bytes).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))
        }
        None => std::io::stdout().write_all(&bytes).map_err(|e| Failure::Io(e.to_string())),
    }
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let (report, ok, name) = match &cli.command {
        Command::Evolve(a) => (cmd_evolve(a)?, true, "evolve".to_string()),
        Command::Check(a) => {
            let (r, ok) = cmd_check(a)?;
            (r, ok, format!("check-{}", a.suite))
        }
        Command::Oracle { action } => (cmd_oracle(action)?, true, "oracle".into()),
        Command::Matrix { action } => (cmd_matrix(action)?, true, "matrix".into()),
        Command::Transforms(a) => (cmd_transforms(a)?, true, "transforms".into()),
    };
    emit(&report, &cli.output, &name)?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Config(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Integrality(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
