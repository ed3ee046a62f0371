//! Command-line surface for growth-regime analysis.
//!
//! Each subcommand reads a `year,value` CSV, runs one pipeline from the
//! library, and writes a canonical JSON report to standard output (or
//! `--report-out`). Identical arguments and input bytes always produce
//! byte-identical output. Exit status: 0 on success, 1 on data errors,
//! 2 on usage errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgAction, CommandFactory, Parser, Subcommand, ValueEnum};

use growthcurve::forecast::{self, Band};
use growthcurve::io::plot::{emit_plot, Overlay, PlotScale};
use growthcurve::io::read_csv;
use growthcurve::io::report::{
    write_report, AnalysisReport, FitSummary, ForecastSummary, GrowthCycleSummary,
};
use growthcurve::{
    detect_crossover, fit_cycle, Baseline, DeltaSeries, Error, ExponentialModel, PowerLawModel,
    TimeSeries,
};

#[derive(Parser)]
#[command(
    name = "growthcurve",
    version,
    about = "Fit growth regimes of long-run yearly series: exponential and power-law trends, \
             rate crossovers, growth cycles, forecasts, and plots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit a single exponential trend in semi-log space.
    FitExp(FitExpArgs),
    /// Fit a power-law trend in log-log space.
    FitPower(FitPowerArgs),
    /// Locate the year at which the exponential rate changes regime.
    DetectCrossover(DetectCrossoverArgs),
    /// Extrapolate a fitted trend to a target year with an uncertainty band.
    Forecast(ForecastArgs),
    /// Fit the four-phase growth/death cycle to a population series.
    Phases(PhasesArgs),
    /// Render the delta series (and optional fit overlay) as an SVG.
    Plot(PlotArgs),
}

#[derive(clap::Args)]
struct InputArgs {
    /// Path to a CSV file with a `year,value` header.
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
}

#[derive(clap::Args)]
struct BaselineArgs {
    /// Reference year of an explicit baseline (requires --baseline-value).
    #[arg(long, value_name = "YEAR", requires = "baseline_value")]
    baseline_year: Option<i32>,

    /// Reference value of an explicit baseline (requires --baseline-year).
    #[arg(long, value_name = "VALUE", requires = "baseline_year")]
    baseline_value: Option<f64>,

    /// Use the mean of the ten years before YEAR as the reference value.
    #[arg(
        long,
        value_name = "YEAR",
        conflicts_with_all = ["baseline_year", "baseline_value"]
    )]
    baseline_decade_mean: Option<i32>,
}

impl BaselineArgs {
    fn resolve(&self, series: &TimeSeries) -> Result<Baseline, Error> {
        match (
            self.baseline_year,
            self.baseline_value,
            self.baseline_decade_mean,
        ) {
            (Some(year), Some(value), None) => Baseline::explicit(year, value),
            (None, None, Some(year)) => Baseline::from_decade_mean(series, year),
            _ => usage_error(
                "a baseline is required: either --baseline-year with --baseline-value, \
                 or --baseline-decade-mean",
            ),
        }
    }
}

#[derive(clap::Args)]
struct ReportArgs {
    /// Write the report here instead of standard output.
    #[arg(long, value_name = "FILE")]
    report_out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct PlotOutArgs {
    /// Also render an SVG plot of the analysis to this file.
    #[arg(long, value_name = "FILE")]
    plot_out: Option<PathBuf>,

    /// Plot scale.
    #[arg(long, value_enum, default_value_t = ScaleArg::SemiLog)]
    scale: ScaleArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    Linear,
    SemiLog,
    LogLog,
}

impl From<ScaleArg> for PlotScale {
    fn from(scale: ScaleArg) -> Self {
        match scale {
            ScaleArg::Linear => PlotScale::Linear,
            ScaleArg::SemiLog => PlotScale::SemiLog,
            ScaleArg::LogLog => PlotScale::LogLog,
        }
    }
}

#[derive(clap::Args)]
struct FitExpArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    baseline: BaselineArgs,
    #[command(flatten)]
    report: ReportArgs,
    #[command(flatten)]
    plot: PlotOutArgs,
}

#[derive(clap::Args)]
struct FitPowerArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    baseline: BaselineArgs,
    #[command(flatten)]
    report: ReportArgs,
    #[command(flatten)]
    plot: PlotOutArgs,
}

#[derive(clap::Args)]
struct DetectCrossoverArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    baseline: BaselineArgs,

    /// Minimum usable points on each side of a candidate crossover.
    #[arg(long, default_value_t = 4, value_parser = min_segment_parser)]
    min_segment: usize,

    /// Improvement ratio above which the split counts as significant.
    #[arg(long, default_value_t = 0.5, value_parser = threshold_parser)]
    threshold: f64,

    #[command(flatten)]
    report: ReportArgs,
    #[command(flatten)]
    plot: PlotOutArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Exponential,
    PowerLaw,
}

#[derive(clap::Args)]
struct ForecastArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    baseline: BaselineArgs,

    /// Calendar year to extrapolate to.
    #[arg(long, value_name = "YEAR")]
    target_year: i32,

    /// Normal quantile of the band (1.96 for 95%).
    #[arg(long, default_value_t = 1.96, value_parser = z_parser)]
    z: f64,

    /// Which trend model to fit and extrapolate.
    #[arg(long, value_enum, default_value_t = ModelArg::Exponential)]
    model: ModelArg,

    /// Use the wider single-observation band instead of the trend band.
    #[arg(long, action = ArgAction::SetTrue)]
    prediction_band: bool,

    #[command(flatten)]
    report: ReportArgs,
}

#[derive(clap::Args)]
struct PhasesArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Minimum samples in each of the four phases.
    #[arg(long, default_value_t = 3, value_parser = min_segment_parser)]
    min_segment: usize,

    #[command(flatten)]
    report: ReportArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum OverlayArg {
    Exponential,
    PowerLaw,
    Crossover,
}

#[derive(clap::Args)]
struct PlotArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    baseline: BaselineArgs,

    /// Fit drawn over the data, if any.
    #[arg(long, value_enum)]
    overlay: Option<OverlayArg>,

    /// Minimum segment size for the crossover overlay.
    #[arg(long, default_value_t = 4, value_parser = min_segment_parser)]
    min_segment: usize,

    /// Significance threshold for the crossover overlay.
    #[arg(long, default_value_t = 0.5, value_parser = threshold_parser)]
    threshold: f64,

    /// Where to write the SVG.
    #[arg(long, value_name = "FILE")]
    plot_out: PathBuf,

    /// Plot scale.
    #[arg(long, value_enum, default_value_t = ScaleArg::SemiLog)]
    scale: ScaleArg,

    #[command(flatten)]
    report: ReportArgs,
}

fn min_segment_parser(s: &str) -> Result<usize, String> {
    let value: usize = s.parse().map_err(|_| format!("`{s}` is not an integer"))?;
    if value < 2 {
        return Err("must be at least 2".to_string());
    }
    Ok(value)
}

fn threshold_parser(s: &str) -> Result<f64, String> {
    let value: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if !(0.0..=1.0).contains(&value) {
        return Err("must be in [0, 1]".to_string());
    }
    Ok(value)
}

fn z_parser(s: &str) -> Result<f64, String> {
    let value: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if !(value.is_finite() && value > 0.0) {
        return Err("must be positive".to_string());
    }
    Ok(value)
}

/// Raises a clap usage error (exit status 2).
fn usage_error(message: &str) -> ! {
    Cli::command()
        .error(clap::error::ErrorKind::MissingRequiredArgument, message)
        .exit()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error[{}]: {error}", error.name());
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::FitExp(args) => {
            let series = load_series(&args.input.input)?;
            let baseline = args.baseline.resolve(&series)?;
            let delta = series.to_delta(baseline);
            let model = ExponentialModel::fit(&delta)?;

            let mut report = AnalysisReport::new(&series);
            report.baseline = Some(baseline.into());
            warn_excluded(
                &mut report,
                &growthcurve::semi_log_points(&delta)?,
                "semi-log",
            );
            report.fits.push(FitSummary::Exponential((&model).into()));
            render_plot(
                &mut report,
                &args.plot,
                &delta,
                &[Overlay::Exponential(model)],
            )?;
            emit(&report, &args.report)
        }
        Command::FitPower(args) => {
            let series = load_series(&args.input.input)?;
            let baseline = args.baseline.resolve(&series)?;
            let delta = series.to_delta(baseline);
            let model = PowerLawModel::fit(&delta)?;

            let mut report = AnalysisReport::new(&series);
            report.baseline = Some(baseline.into());
            warn_excluded(
                &mut report,
                &growthcurve::log_log_points(&delta)?,
                "log-log",
            );
            report.fits.push(FitSummary::PowerLaw((&model).into()));
            render_plot(&mut report, &args.plot, &delta, &[Overlay::PowerLaw(model)])?;
            emit(&report, &args.report)
        }
        Command::DetectCrossover(args) => {
            let series = load_series(&args.input.input)?;
            let baseline = args.baseline.resolve(&series)?;
            let delta = series.to_delta(baseline);
            let split = detect_crossover(&delta, args.min_segment, args.threshold)?;

            let mut report = AnalysisReport::new(&series);
            report.baseline = Some(baseline.into());
            warn_excluded(
                &mut report,
                &growthcurve::semi_log_points(&delta)?,
                "semi-log",
            );
            report.fits.push(FitSummary::RegimeSplit((&split).into()));
            render_plot(&mut report, &args.plot, &delta, &[Overlay::Regime(split)])?;
            emit(&report, &args.report)
        }
        Command::Forecast(args) => {
            let series = load_series(&args.input.input)?;
            let baseline = args.baseline.resolve(&series)?;
            let delta = series.to_delta(baseline);
            let band = if args.prediction_band {
                Band::Prediction
            } else {
                Band::MeanResponse
            };

            let mut report = AnalysisReport::new(&series);
            report.baseline = Some(baseline.into());
            let projection = match args.model {
                ModelArg::Exponential => {
                    let model = ExponentialModel::fit(&delta)?;
                    warn_excluded(
                        &mut report,
                        &growthcurve::semi_log_points(&delta)?,
                        "semi-log",
                    );
                    report.fits.push(FitSummary::Exponential((&model).into()));
                    forecast::exponential(&model, args.target_year, args.z, band)
                }
                ModelArg::PowerLaw => {
                    let model = PowerLawModel::fit(&delta)?;
                    warn_excluded(
                        &mut report,
                        &growthcurve::log_log_points(&delta)?,
                        "log-log",
                    );
                    report.fits.push(FitSummary::PowerLaw((&model).into()));
                    forecast::power_law(&model, args.target_year, args.z, band)?
                }
            };
            report
                .forecasts
                .push(ForecastSummary::new(&projection, args.z, band));
            emit(&report, &args.report)
        }
        Command::Phases(args) => {
            let series = load_series(&args.input.input)?;
            // Cycle time runs in years since the first sample.
            let origin = series.first_year();
            let samples: Vec<(f64, f64)> = series
                .points()
                .iter()
                .map(|&(year, value)| ((year - origin) as f64, value))
                .collect();
            let fit = fit_cycle(&samples, args.min_segment)?;

            let mut report = AnalysisReport::new(&series);
            report
                .fits
                .push(FitSummary::GrowthCycle(GrowthCycleSummary::new(
                    &fit,
                    Some(origin),
                )));
            emit(&report, &args.report)
        }
        Command::Plot(args) => {
            let series = load_series(&args.input.input)?;
            let baseline = args.baseline.resolve(&series)?;
            let delta = series.to_delta(baseline);

            let mut report = AnalysisReport::new(&series);
            report.baseline = Some(baseline.into());
            let overlays: Vec<Overlay> = match args.overlay {
                None => Vec::new(),
                Some(OverlayArg::Exponential) => {
                    let model = ExponentialModel::fit(&delta)?;
                    report.fits.push(FitSummary::Exponential((&model).into()));
                    vec![Overlay::Exponential(model)]
                }
                Some(OverlayArg::PowerLaw) => {
                    let model = PowerLawModel::fit(&delta)?;
                    report.fits.push(FitSummary::PowerLaw((&model).into()));
                    vec![Overlay::PowerLaw(model)]
                }
                Some(OverlayArg::Crossover) => {
                    let split = detect_crossover(&delta, args.min_segment, args.threshold)?;
                    report.fits.push(FitSummary::RegimeSplit((&split).into()));
                    vec![Overlay::Regime(split)]
                }
            };

            let plot = emit_plot(&delta, &overlays, args.scale.into())?;
            note_plot_exclusions(&mut report, &plot.excluded, args.scale.into());
            fs::write(&args.plot_out, &plot.svg)?;
            emit(&report, &args.report)
        }
    }
}

fn load_series(path: &Path) -> Result<TimeSeries, Error> {
    let file = fs::File::open(path)?;
    let label = path
        .file_stem()
        .map(|stem| stem.to_string_lossy().into_owned())
        .unwrap_or_else(|| "series".to_string());
    Ok(read_csv(file)?.with_label(label))
}

fn warn_excluded(
    report: &mut AnalysisReport,
    transformed: &growthcurve::TransformedPoints,
    transform_name: &str,
) {
    if transformed.excluded.is_empty() {
        return;
    }
    let years: Vec<String> = transformed.excluded.iter().map(|y| y.to_string()).collect();
    report.warnings.push(format!(
        "{} point(s) excluded from the {transform_name} transform (delta years: {})",
        transformed.excluded.len(),
        years.join(", ")
    ));
}

fn note_plot_exclusions(report: &mut AnalysisReport, excluded: &[i32], scale: PlotScale) {
    if excluded.is_empty() {
        return;
    }
    let years: Vec<String> = excluded.iter().map(|y| y.to_string()).collect();
    report.warnings.push(format!(
        "{} point(s) not representable on the {} scale (delta years: {})",
        excluded.len(),
        scale.as_str(),
        years.join(", ")
    ));
}

/// Renders the optional per-subcommand plot and records its exclusions.
fn render_plot(
    report: &mut AnalysisReport,
    args: &PlotOutArgs,
    delta: &DeltaSeries,
    overlays: &[Overlay],
) -> Result<(), Error> {
    let Some(path) = &args.plot_out else {
        return Ok(());
    };
    let plot = emit_plot(delta, overlays, args.scale.into())?;
    note_plot_exclusions(report, &plot.excluded, args.scale.into());
    fs::write(path, &plot.svg)?;
    Ok(())
}

fn emit(report: &AnalysisReport, args: &ReportArgs) -> Result<(), Error> {
    let text = write_report(report);
    match &args.report_out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
