//! `tqd` — thermal quantum discord for three-qubit impurity chains.
//!
//! Subcommands: `spectrum` (analytic vs numeric eigenvalues), `discord`
//! (single parameter point), `figure` (preset sweep datasets), `fit`
//! (critical-coupling lines J1c(T)), and `sweep` (JSON-specified sweeps).
//! Output is CSV (default) or JSON; every command is deterministic, so
//! identical invocations produce byte-identical output.
//!
//! Exit codes: 0 success, 1 usage error, 2 numerical failure.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tqd::discord::Bipartition;
use tqd::linalg;
use tqd::model::{MagneticImpurityParams, ModelSpec, SpinImpurityParams, Temperature};
use tqd::sweep::{
    self, Branch, FixedParams, GapReference, ModelFamily, ParameterName, SweepRow, SweepSpec,
    SweptParameter,
};

/// Numeric deviation beyond which `spectrum` reports a numerical failure.
const SPECTRUM_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(
    name = "tqd",
    version,
    about = "Thermal quantum discord for three-qubit Heisenberg chains with impurities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the numeric and analytic spectra side by side
    Spectrum(ModelArgs),
    /// Correlations (mutual information, classical, discord) at one point
    Discord {
        #[command(flatten)]
        model: ModelArgs,
        /// Temperature of the Gibbs state (>= 0)
        #[arg(long, allow_negative_numbers = true)]
        temp: f64,
        /// Which cut of the chain to analyse
        #[arg(long, value_enum)]
        bipartition: BipartitionArg,
        /// Output format
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// Emit the full dataset behind one of the reference figures
    Figure {
        /// Figure number (1: pair 1-2, 2: pair 2-3, 3: split 1 vs 2,3 — all
        /// vs J1; 4: both pairs vs B)
        #[arg(long)]
        figure: u32,
        /// Panel for figures 1-3: a (J=1) or b (J=-1)
        #[arg(long, value_enum)]
        panel: Option<PanelArg>,
        /// Output format
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// Fit the critical-coupling line J1c(T) on one branch
    Fit {
        /// Bulk coupling J
        #[arg(long, allow_negative_numbers = true)]
        j: f64,
        /// Which side of the J1 axis to search
        #[arg(long, value_enum)]
        branch: BranchArg,
        /// Which pair's discord defines the plateau
        #[arg(long, value_enum)]
        bipartition: BipartitionArg,
        /// Lowest sample temperature (> 0)
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        tmin: f64,
        /// Highest sample temperature
        #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
        tmax: f64,
        /// Number of sample temperatures
        #[arg(long, default_value_t = 19)]
        tpoints: usize,
        /// Plateau gap threshold defining J1c
        #[arg(long, default_value_t = 1e-6, allow_negative_numbers = true)]
        threshold: f64,
        /// Reference the gap is measured against
        #[arg(long, value_enum, default_value_t = GapReferenceArg::Plateau)]
        gap_reference: GapReferenceArg,
        /// Output format
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// Run a sweep described by a JSON specification file
    Sweep {
        /// Path to the JSON sweep specification
        #[arg(long)]
        spec: PathBuf,
        /// Output format
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
}

/// Model selection shared by `spectrum` and `discord`. The spin model takes
/// --j1 and --j; the magnetic model takes --j and --b.
#[derive(Args)]
struct ModelArgs {
    /// Model family
    #[arg(long, value_enum)]
    model: ModelArg,
    /// Impurity coupling J1 (spin model only)
    #[arg(long, allow_negative_numbers = true)]
    j1: Option<f64>,
    /// Bulk coupling J
    #[arg(long, allow_negative_numbers = true)]
    j: Option<f64>,
    /// Magnetic field B on qubit 1 (magnetic model only)
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
}

impl ModelArgs {
    fn resolve(&self) -> Result<ModelSpec, AppError> {
        let require = |name: &str, v: Option<f64>| {
            v.ok_or_else(|| AppError::Usage(format!("--{name} is required for this model")))
        };
        let forbid = |name: &str, v: Option<f64>| {
            if v.is_some() {
                Err(AppError::Usage(format!(
                    "--{name} does not apply to this model"
                )))
            } else {
                Ok(())
            }
        };
        let model = match self.model {
            ModelArg::Spin => {
                forbid("b", self.b)?;
                ModelSpec::Spin(SpinImpurityParams {
                    j1: require("j1", self.j1)?,
                    j: require("j", self.j)?,
                })
            }
            ModelArg::Magnetic => {
                forbid("j1", self.j1)?;
                ModelSpec::Magnetic(MagneticImpurityParams {
                    j: require("j", self.j)?,
                    b: require("b", self.b)?,
                })
            }
        };
        for (name, value) in [("j1", model.j1()), ("j", Some(model.j())), ("b", model.b())] {
            if let Some(v) = value {
                if !v.is_finite() {
                    return Err(AppError::Usage(format!("--{name} must be finite, got {v}")));
                }
            }
        }
        Ok(model)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Spin,
    Magnetic,
}

#[derive(Clone, Copy, ValueEnum)]
enum BipartitionArg {
    #[value(name = "pair_12")]
    Pair12,
    #[value(name = "pair_23")]
    Pair23,
    #[value(name = "pair_13")]
    Pair13,
    #[value(name = "one_vs_rest_1_23")]
    OneVsRest123,
}

impl From<BipartitionArg> for Bipartition {
    fn from(b: BipartitionArg) -> Self {
        match b {
            BipartitionArg::Pair12 => Bipartition::Pair12,
            BipartitionArg::Pair23 => Bipartition::Pair23,
            BipartitionArg::Pair13 => Bipartition::Pair13,
            BipartitionArg::OneVsRest123 => Bipartition::OneVsRest123,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    #[value(name = "j1_positive")]
    J1Positive,
    #[value(name = "j1_negative")]
    J1Negative,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::J1Positive => Branch::J1Positive,
            BranchArg::J1Negative => Branch::J1Negative,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PanelArg {
    A,
    B,
}

#[derive(Clone, Copy, ValueEnum)]
enum GapReferenceArg {
    Plateau,
    Local,
}

impl From<GapReferenceArg> for GapReference {
    fn from(g: GapReferenceArg) -> Self {
        match g {
            GapReferenceArg::Plateau => GapReference::Plateau,
            GapReferenceArg::Local => GapReference::Local,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

/// Errors carrying their process exit code.
enum AppError {
    /// Bad flags, files, or spec contents — exit 1.
    Usage(String),
    /// A computation could not produce a trustworthy answer — exit 2.
    Numerical(String),
}

impl AppError {
    fn code(&self) -> i32 {
        match self {
            AppError::Usage(_) => 1,
            AppError::Numerical(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            AppError::Usage(m) | AppError::Numerical(m) => m,
        }
    }
}

/// Only NoConvergence is a numerical failure; everything else a sweep can
/// raise traces back to the arguments that were passed in.
fn from_sweep_error(e: sweep::SweepError) -> AppError {
    match e {
        sweep::SweepError::NoConvergence { .. } => AppError::Numerical(e.to_string()),
        other => AppError::Usage(other.to_string()),
    }
}

/// 12 significant digits; scientific (lowercase e) for zero and for
/// magnitudes below 1e-4 or at/above 1e6, plain decimal in between.
fn fmt_sig(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x }; // normalize -0
    let mag = x.abs();
    if x == 0.0 || !(1e-4..1e6).contains(&mag) {
        format!("{x:.11e}")
    } else {
        let digits_before_point = mag.log10().floor() as i32;
        let precision = (11 - digits_before_point).max(0) as usize;
        format!("{x:.precision$}")
    }
}

/// Optional parameter cell: empty in CSV when the model lacks the parameter.
fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_sig).unwrap_or_default()
}

fn opt_json(x: Option<f64>) -> serde_json::Value {
    match x {
        Some(v) => serde_json::json!(v),
        None => serde_json::Value::Null,
    }
}

fn emit(text: String) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            // The consumer (e.g. `head`) closed the pipe; quiet success.
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(1);
    }
}

fn emit_sweep_rows(rows: &[SweepRow], format: FormatArg) {
    match format {
        FormatArg::Csv => {
            let mut text = String::from(
                "model,j1,j,b,temp,bipartition,mutual_information,classical_correlation,discord,method\n",
            );
            for row in rows {
                text.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{}\n",
                    row.model.family(),
                    fmt_opt(row.model.j1()),
                    fmt_sig(row.model.j()),
                    fmt_opt(row.model.b()),
                    fmt_sig(row.temperature),
                    row.bipartition.label(),
                    fmt_sig(row.mutual_information),
                    fmt_sig(row.classical_correlation),
                    fmt_sig(row.discord),
                    row.method.label(),
                ));
            }
            emit(text);
        }
        FormatArg::Json => {
            let values: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    serde_json::json!({
                        "model": row.model.family(),
                        "j1": opt_json(row.model.j1()),
                        "j": row.model.j(),
                        "b": opt_json(row.model.b()),
                        "temp": row.temperature,
                        "bipartition": row.bipartition.label(),
                        "mutual_information": row.mutual_information,
                        "classical_correlation": row.classical_correlation,
                        "discord": row.discord,
                        "method": row.method.label(),
                    })
                })
                .collect();
            let text = serde_json::to_string_pretty(&values).expect("rows serialize");
            emit(text + "\n");
        }
    }
}

fn cmd_spectrum(args: &ModelArgs) -> Result<i32, AppError> {
    let model = args.resolve()?;
    let analytic = model.analytic_spectrum();
    let numeric =
        linalg::eigvalsh(&model.hamiltonian()).map_err(|e| AppError::Numerical(e.to_string()))?;

    let mut text = format!(
        "{:>5}  {:>20}  {:>20}  {:>20}\n",
        "index", "numeric", "analytic", "deviation"
    );
    let mut max_deviation = 0.0f64;
    for (i, (n, a)) in numeric.iter().zip(&analytic).enumerate() {
        let deviation = (n - a).abs();
        max_deviation = max_deviation.max(deviation);
        text.push_str(&format!(
            "{:>5}  {:>20}  {:>20}  {:>20}\n",
            i,
            fmt_sig(*n),
            fmt_sig(*a),
            fmt_sig(deviation)
        ));
    }
    text.push_str(&format!("max deviation: {}\n", fmt_sig(max_deviation)));
    emit(text);

    if max_deviation > SPECTRUM_TOL {
        eprintln!(
            "error: numeric spectrum deviates from the analytic one by {} (tolerance {})",
            fmt_sig(max_deviation),
            fmt_sig(SPECTRUM_TOL)
        );
        return Ok(2);
    }
    Ok(0)
}

fn cmd_discord(
    args: &ModelArgs,
    temp: f64,
    bipartition: Bipartition,
    format: FormatArg,
) -> Result<i32, AppError> {
    let model = args.resolve()?;
    let t = Temperature::new(temp).map_err(|e| AppError::Usage(e.to_string()))?;
    let rho = model
        .thermal_state(t)
        .map_err(|e| AppError::Numerical(e.to_string()))?;
    let result =
        tqd::discord::discord(&rho, bipartition).map_err(|e| AppError::Numerical(e.to_string()))?;
    let row = SweepRow {
        model,
        temperature: temp,
        bipartition,
        mutual_information: result.mutual_information,
        classical_correlation: result.classical_correlation,
        discord: result.discord,
        method: result.method,
    };
    emit_sweep_rows(&[row], format);
    Ok(0)
}

fn figure_spec(figure: u32, panel: Option<PanelArg>) -> Result<SweepSpec, AppError> {
    let bulk_j = |panel: Option<PanelArg>| -> Result<f64, AppError> {
        match panel {
            Some(PanelArg::A) => Ok(1.0),
            Some(PanelArg::B) => Ok(-1.0),
            None => Err(AppError::Usage(format!(
                "figure {figure} requires --panel a (J=1) or --panel b (J=-1)"
            ))),
        }
    };
    let impurity_sweep = |j: f64, bipartitions: Vec<Bipartition>| SweepSpec {
        model: ModelFamily::Spin,
        swept: SweptParameter {
            parameter: ParameterName::J1,
            min: -12.0,
            max: 8.0,
            points: 401,
        },
        fixed: FixedParams {
            j1: None,
            j: Some(j),
            b: None,
        },
        temperatures: vec![0.5, 1.0, 1.5],
        bipartitions,
    };
    match figure {
        1 => Ok(impurity_sweep(bulk_j(panel)?, vec![Bipartition::Pair12])),
        2 => Ok(impurity_sweep(bulk_j(panel)?, vec![Bipartition::Pair23])),
        3 => Ok(impurity_sweep(
            bulk_j(panel)?,
            vec![Bipartition::OneVsRest123],
        )),
        4 => {
            if panel.is_some() {
                return Err(AppError::Usage(
                    "figure 4 has a single panel; drop --panel".into(),
                ));
            }
            Ok(SweepSpec {
                model: ModelFamily::Magnetic,
                swept: SweptParameter {
                    parameter: ParameterName::B,
                    min: 0.0,
                    max: 20.0,
                    points: 401,
                },
                fixed: FixedParams {
                    j1: None,
                    j: Some(1.0),
                    b: None,
                },
                temperatures: vec![0.25],
                bipartitions: vec![Bipartition::Pair12, Bipartition::Pair23],
            })
        }
        other => Err(AppError::Usage(format!(
            "unknown figure {other}; expected 1, 2, 3, or 4"
        ))),
    }
}

fn cmd_figure(figure: u32, panel: Option<PanelArg>, format: FormatArg) -> Result<i32, AppError> {
    let spec = figure_spec(figure, panel)?;
    let rows = sweep::run_sweep(&spec).map_err(from_sweep_error)?;
    emit_sweep_rows(&rows, format);
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_fit(
    j: f64,
    branch: Branch,
    bipartition: Bipartition,
    tmin: f64,
    tmax: f64,
    tpoints: usize,
    threshold: f64,
    gap_reference: GapReference,
    format: FormatArg,
) -> Result<i32, AppError> {
    if !j.is_finite() {
        return Err(AppError::Usage(format!("--j must be finite, got {j}")));
    }
    if !(tmin.is_finite() && tmin > 0.0) {
        return Err(AppError::Usage(format!("--tmin must be > 0, got {tmin}")));
    }
    if !(tmax.is_finite() && tmax > tmin) {
        return Err(AppError::Usage(format!(
            "--tmax must exceed --tmin, got {tmax}"
        )));
    }
    if tpoints < 2 {
        return Err(AppError::Usage(format!(
            "--tpoints must be at least 2, got {tpoints}"
        )));
    }
    if !(threshold.is_finite() && threshold > 0.0) {
        return Err(AppError::Usage(format!(
            "--threshold must be > 0, got {threshold}"
        )));
    }

    let temperatures: Vec<f64> = (0..tpoints)
        .map(|i| tmin + (tmax - tmin) * i as f64 / (tpoints - 1) as f64)
        .collect();
    let fit = sweep::fit_critical_line(
        j,
        branch,
        bipartition,
        &temperatures,
        threshold,
        gap_reference,
    )
    .map_err(from_sweep_error)?;

    if !fit.gap_monotone {
        eprintln!(
            "note: the plateau gap was not monotone along the outward probes; \
             the bracketed crossing is still valid"
        );
    }

    match format {
        FormatArg::Csv => {
            let mut text =
                String::from("j,branch,bipartition,slope,intercept,rms_residual,temperature,j1c\n");
            for (t, j1c) in fit.sample_temperatures.iter().zip(&fit.samples) {
                text.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    fmt_sig(j),
                    fit.branch.label(),
                    bipartition.label(),
                    fmt_sig(fit.slope),
                    fmt_sig(fit.intercept),
                    fmt_sig(fit.rms_residual),
                    fmt_sig(*t),
                    fmt_sig(*j1c),
                ));
            }
            emit(text);
        }
        FormatArg::Json => {
            let values: Vec<serde_json::Value> = fit
                .sample_temperatures
                .iter()
                .zip(&fit.samples)
                .map(|(t, j1c)| {
                    serde_json::json!({
                        "j": j,
                        "branch": fit.branch.label(),
                        "bipartition": bipartition.label(),
                        "slope": fit.slope,
                        "intercept": fit.intercept,
                        "rms_residual": fit.rms_residual,
                        "temperature": t,
                        "j1c": j1c,
                    })
                })
                .collect();
            let text = serde_json::to_string_pretty(&values).expect("rows serialize");
            emit(text + "\n");
        }
    }
    Ok(0)
}

fn cmd_sweep(spec_path: &PathBuf, format: FormatArg) -> Result<i32, AppError> {
    let text = std::fs::read_to_string(spec_path).map_err(|e| {
        AppError::Usage(format!(
            "cannot read spec file {}: {e}",
            spec_path.display()
        ))
    })?;
    let spec: SweepSpec = serde_json::from_str(&text)
        .map_err(|e| AppError::Usage(format!("invalid sweep spec JSON: {e}")))?;
    let rows = sweep::run_sweep(&spec).map_err(from_sweep_error)?;
    emit_sweep_rows(&rows, format);
    Ok(0)
}

fn run(cli: Cli) -> Result<i32, AppError> {
    match cli.command {
        Command::Spectrum(args) => cmd_spectrum(&args),
        Command::Discord {
            model,
            temp,
            bipartition,
            format,
        } => cmd_discord(&model, temp, bipartition.into(), format),
        Command::Figure {
            figure,
            panel,
            format,
        } => cmd_figure(figure, panel, format),
        Command::Fit {
            j,
            branch,
            bipartition,
            tmin,
            tmax,
            tpoints,
            threshold,
            gap_reference,
            format,
        } => cmd_fit(
            j,
            branch.into(),
            bipartition.into(),
            tmin,
            tmax,
            tpoints,
            threshold,
            gap_reference.into(),
            format,
        ),
        Command::Sweep { spec, format } => cmd_sweep(&spec, format),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help/version are successes on stdout; true parse errors exit 1.
            let ok = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            std::process::exit(if ok { 0 } else { 1 });
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    };
    std::process::exit(code);
}
