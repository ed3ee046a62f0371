//! Deterministic SVG plots of delta series with model overlays.
//!
//! Output is a standalone SVG 1.1 document on a fixed 800x600 canvas:
//! data as circle markers, each overlay as a 200-sample polyline, and
//! tick-labeled axes. Every coordinate is formatted with fixed precision,
//! so identical inputs render byte-identical documents.

use std::fmt::Write as _;

use crate::error::Error;
use crate::regimes::RegimeSplit;
use crate::regress::{ExponentialModel, PowerLawModel};
use crate::series::DeltaSeries;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 20.0;
const MARGIN_BOTTOM: f64 = 55.0;
const OVERLAY_SAMPLES: usize = 200;

const DATA_COLOR: &str = "#1f77b4";
const OVERLAY_COLORS: [&str; 4] = ["#d62728", "#2ca02c", "#ff7f0e", "#9467bd"];

/// Presentation scale of a plot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotScale {
    /// Both axes linear.
    Linear,
    /// Linear x, logarithmic y: exponential trends appear straight.
    SemiLog,
    /// Both axes logarithmic: power laws appear straight.
    LogLog,
}

impl PlotScale {
    pub fn as_str(self) -> &'static str {
        match self {
            PlotScale::Linear => "linear",
            PlotScale::SemiLog => "semi-log",
            PlotScale::LogLog => "log-log",
        }
    }

    /// Maps a delta year to plot x, when representable on this scale.
    fn x(self, delta_year: f64) -> Option<f64> {
        match self {
            PlotScale::Linear | PlotScale::SemiLog => Some(delta_year),
            PlotScale::LogLog => (delta_year > 0.0).then(|| delta_year.log10()),
        }
    }

    /// Inverse of [`PlotScale::x`].
    fn delta_year(self, x: f64) -> f64 {
        match self {
            PlotScale::Linear | PlotScale::SemiLog => x,
            PlotScale::LogLog => 10f64.powf(x),
        }
    }

    /// Maps a delta value to plot y, when representable on this scale.
    fn y(self, delta_value: f64) -> Option<f64> {
        match self {
            PlotScale::Linear => Some(delta_value),
            PlotScale::SemiLog | PlotScale::LogLog => {
                (delta_value > 0.0).then(|| delta_value.log10())
            }
        }
    }

    fn x_is_log(self) -> bool {
        matches!(self, PlotScale::LogLog)
    }

    fn y_is_log(self) -> bool {
        matches!(self, PlotScale::SemiLog | PlotScale::LogLog)
    }
}

/// A fitted model drawn over the data.
#[derive(Debug, Clone)]
pub enum Overlay {
    Exponential(ExponentialModel),
    PowerLaw(PowerLawModel),
    /// Drawn as two polylines meeting at the crossover year.
    Regime(RegimeSplit),
}

/// A rendered plot plus the delta years the scale could not represent.
#[derive(Debug, Clone)]
pub struct Plot {
    pub svg: String,
    pub excluded: Vec<i32>,
}

/// Renders the delta series and overlays at the given scale.
///
/// Errors with `TooFewPoints` when no data point is representable on the
/// chosen scale.
pub fn emit_plot(
    delta: &DeltaSeries,
    overlays: &[Overlay],
    scale: PlotScale,
) -> Result<Plot, Error> {
    let mut data: Vec<(f64, f64)> = Vec::with_capacity(delta.len());
    let mut excluded = Vec::new();
    for &(dy, dv) in delta.points() {
        match (scale.x(dy as f64), scale.y(dv)) {
            (Some(x), Some(y)) => data.push((x, y)),
            _ => excluded.push(dy),
        }
    }
    if data.is_empty() {
        return Err(Error::TooFewPoints {
            required: 1,
            available: 0,
        });
    }

    let (x_min, x_max) = bounds(data.iter().map(|p| p.0));
    let (mut y_min, mut y_max) = bounds(data.iter().map(|p| p.1));

    // Overlay curves are sampled across the data's x range and may extend
    // the y range slightly.
    let mut polylines: Vec<Vec<(f64, f64)>> = Vec::new();
    for overlay in overlays {
        for segment in sample_overlay(overlay, scale, x_min, x_max, delta) {
            for &(_, y) in &segment {
                y_min = y_min.min(y);
                y_max = y_max.max(y);
            }
            if segment.len() >= 2 {
                polylines.push(segment);
            }
        }
    }

    let (x_min, x_max) = pad(x_min, x_max);
    let (y_min, y_max) = pad(y_min, y_max);

    let to_px = |x: f64| MARGIN_LEFT + (x - x_min) / (x_max - x_min) * plot_width();
    let to_py = |y: f64| MARGIN_TOP + plot_height() - (y - y_min) / (y_max - y_min) * plot_height();

    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(
        svg,
        "  <rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"#ffffff\"/>"
    );

    // Plot frame.
    let _ = writeln!(
        svg,
        "  <rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>",
        MARGIN_LEFT,
        MARGIN_TOP,
        plot_width(),
        plot_height()
    );

    // Axis ticks and labels.
    let bottom = MARGIN_TOP + plot_height();
    for (value, label) in ticks(x_min, x_max, scale.x_is_log()) {
        let px = to_px(value);
        let _ = writeln!(
            svg,
            "  <line x1=\"{px:.2}\" y1=\"{bottom:.2}\" x2=\"{px:.2}\" y2=\"{:.2}\" stroke=\"#000000\" stroke-width=\"1\"/>",
            bottom + 6.0
        );
        let _ = writeln!(
            svg,
            "  <text x=\"{px:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">{label}</text>",
            bottom + 20.0
        );
    }
    for (value, label) in ticks(y_min, y_max, scale.y_is_log()) {
        let py = to_py(value);
        let _ = writeln!(
            svg,
            "  <line x1=\"{:.2}\" y1=\"{py:.2}\" x2=\"{MARGIN_LEFT:.2}\" y2=\"{py:.2}\" stroke=\"#000000\" stroke-width=\"1\"/>",
            MARGIN_LEFT - 6.0
        );
        let _ = writeln!(
            svg,
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">{label}</text>",
            MARGIN_LEFT - 10.0,
            py + 4.0
        );
    }
    let _ = writeln!(
        svg,
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">delta year</text>",
        MARGIN_LEFT + plot_width() / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        svg,
        "  <text x=\"16\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.2})\">delta value</text>",
        MARGIN_TOP + plot_height() / 2.0,
        MARGIN_TOP + plot_height() / 2.0
    );

    // Data markers.
    for &(x, y) in &data {
        let _ = writeln!(
            svg,
            "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{DATA_COLOR}\"/>",
            to_px(x),
            to_py(y)
        );
    }

    // Overlay polylines.
    for (index, segment) in polylines.iter().enumerate() {
        let color = OVERLAY_COLORS[index % OVERLAY_COLORS.len()];
        let mut points = String::new();
        for &(x, y) in segment {
            let _ = write!(points, "{:.2},{:.2} ", to_px(x), to_py(y));
        }
        let _ = writeln!(
            svg,
            "  <polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>",
            points.trim_end()
        );
    }

    svg.push_str("</svg>\n");
    Ok(Plot { svg, excluded })
}

fn plot_width() -> f64 {
    WIDTH - MARGIN_LEFT - MARGIN_RIGHT
}

fn plot_height() -> f64 {
    HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    })
}

fn pad(min: f64, max: f64) -> (f64, f64) {
    if max > min {
        let margin = (max - min) * 0.05;
        (min - margin, max + margin)
    } else {
        (min - 0.5, max + 0.5)
    }
}

/// Samples one overlay into polyline segments in transformed coordinates.
fn sample_overlay(
    overlay: &Overlay,
    scale: PlotScale,
    x_min: f64,
    x_max: f64,
    delta: &DeltaSeries,
) -> Vec<Vec<(f64, f64)>> {
    match overlay {
        Overlay::Exponential(model) => {
            vec![sample_curve(scale, x_min, x_max, |dy| {
                Some(model.delta_at(dy))
            })]
        }
        Overlay::PowerLaw(model) => {
            vec![sample_curve(scale, x_min, x_max, |dy| {
                (dy > 0.0).then(|| model.delta_at(dy))
            })]
        }
        Overlay::Regime(split) => {
            let crossover_dy = (split.crossover_year - delta.baseline().ref_year()) as f64;
            let cx = scale.x(crossover_dy).unwrap_or(x_min);
            let cx = cx.clamp(x_min, x_max);
            vec![
                sample_curve(scale, x_min, cx, |dy| Some(split.left.delta_at(dy))),
                sample_curve(scale, cx, x_max, |dy| Some(split.right.delta_at(dy))),
            ]
        }
    }
}

fn sample_curve(
    scale: PlotScale,
    x_lo: f64,
    x_hi: f64,
    delta_value_at: impl Fn(f64) -> Option<f64>,
) -> Vec<(f64, f64)> {
    let mut segment = Vec::with_capacity(OVERLAY_SAMPLES);
    if x_hi <= x_lo {
        return segment;
    }
    for i in 0..OVERLAY_SAMPLES {
        let x = x_lo + (x_hi - x_lo) * i as f64 / (OVERLAY_SAMPLES - 1) as f64;
        let dy = scale.delta_year(x);
        let Some(dv) = delta_value_at(dy) else {
            continue;
        };
        let Some(y) = scale.y(dv) else { continue };
        if y.is_finite() {
            segment.push((x, y));
        }
    }
    segment
}

/// Tick positions and labels for one axis. Log axes tick at integer
/// exponents when the range spans at least two of them.
fn ticks(min: f64, max: f64, log_axis: bool) -> Vec<(f64, String)> {
    if log_axis {
        let lo = min.ceil() as i64;
        let hi = max.floor() as i64;
        if hi - lo >= 1 {
            return (lo..=hi).map(|k| (k as f64, format!("1e{k}"))).collect();
        }
        // Not enough decades: fall back to linear ticks over raw values.
        return nice_ticks(min, max)
            .into_iter()
            .map(|(v, _)| (v, format!("{:.2}", 10f64.powf(v))))
            .collect();
    }
    nice_ticks(min, max)
        .into_iter()
        .map(|(v, decimals)| (v, format!("{v:.decimals$}")))
        .collect()
}

/// Linear ticks at 1/2/5 x 10^k steps, returned with label precision.
fn nice_ticks(min: f64, max: f64) -> Vec<(f64, usize)> {
    let span = max - min;
    let raw_step = span / 6.0;
    let magnitude = 10f64.powf(raw_step.log10().floor());
    let normalized = raw_step / magnitude;
    let step = if normalized <= 1.0 {
        magnitude
    } else if normalized <= 2.0 {
        2.0 * magnitude
    } else if normalized <= 5.0 {
        5.0 * magnitude
    } else {
        10.0 * magnitude
    };
    let decimals = (-(step.log10().floor())).max(0.0) as usize;
    let mut ticks = Vec::new();
    let mut value = (min / step).ceil() * step;
    while value <= max + step * 1e-9 {
        // Snap values like 0.30000000000000004 back onto the grid.
        let snapped = (value / step).round() * step;
        ticks.push((snapped, decimals));
        value += step;
    }
    ticks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regimes::detect_crossover;
    use crate::series::{Baseline, TimeSeries};

    fn exp_delta() -> DeltaSeries {
        let baseline = Baseline::explicit(1948, 4.0).unwrap();
        let points: Vec<(i32, f64)> = (2..=40)
            .map(|dy| (1948 + dy, 4.0 + 1.9 * (0.035 * dy as f64).exp()))
            .collect();
        TimeSeries::new("t", "u", points)
            .unwrap()
            .to_delta(baseline)
    }

    #[test]
    fn emits_standalone_svg() {
        let plot = emit_plot(&exp_delta(), &[], PlotScale::SemiLog).unwrap();
        assert!(plot.svg.starts_with("<?xml version=\"1.0\""));
        assert!(plot.svg.contains("xmlns=\"http://www.w3.org/2000/svg\""));
        assert!(plot.svg.contains("version=\"1.1\""));
        assert!(plot.svg.contains("width=\"800\""));
        assert!(plot.svg.contains("height=\"600\""));
        assert!(plot.svg.ends_with("</svg>\n"));
        assert_eq!(plot.svg.matches("<circle").count(), exp_delta().len());
    }

    #[test]
    fn output_is_deterministic() {
        let delta = exp_delta();
        let model = crate::regress::ExponentialModel::fit(&delta).unwrap();
        let overlays = [Overlay::Exponential(model)];
        let a = emit_plot(&delta, &overlays, PlotScale::SemiLog).unwrap();
        let b = emit_plot(&delta, &overlays, PlotScale::SemiLog).unwrap();
        assert_eq!(a.svg, b.svg);
    }

    #[test]
    fn log_log_excludes_nonpositive_delta_years() {
        let baseline = Baseline::explicit(2000, 0.0).unwrap();
        let points = vec![(2000, 1.0), (2001, 2.0), (2002, 4.0)];
        let delta = TimeSeries::new("t", "u", points)
            .unwrap()
            .to_delta(baseline);
        let plot = emit_plot(&delta, &[], PlotScale::LogLog).unwrap();
        assert_eq!(plot.excluded, vec![0]);
        assert_eq!(plot.svg.matches("<circle").count(), 2);
    }

    #[test]
    fn errors_when_nothing_is_plottable() {
        let baseline = Baseline::explicit(2000, 10.0).unwrap();
        let points = vec![(2001, 5.0), (2002, 3.0)];
        let delta = TimeSeries::new("t", "u", points)
            .unwrap()
            .to_delta(baseline);
        let err = emit_plot(&delta, &[], PlotScale::SemiLog).unwrap_err();
        assert!(matches!(err, Error::TooFewPoints { .. }));
    }

    #[test]
    fn regime_overlay_renders_two_polylines() {
        let baseline = Baseline::explicit(1948, 4.0).unwrap();
        let v_at = |dy: f64| 2.25 * (0.09 * dy).exp();
        let crossover_dv = v_at(25.0);
        let points: Vec<(i32, f64)> = (1950..=2014)
            .map(|year| {
                let dy = (year - 1948) as f64;
                let dv = if year <= 1973 {
                    v_at(dy)
                } else {
                    crossover_dv * (0.035 * (dy - 25.0)).exp()
                };
                (year, 4.0 + dv)
            })
            .collect();
        let delta = TimeSeries::new("t", "u", points)
            .unwrap()
            .to_delta(baseline);
        let split = detect_crossover(&delta, 4, 0.5).unwrap();
        let plot = emit_plot(&delta, &[Overlay::Regime(split)], PlotScale::SemiLog).unwrap();
        assert_eq!(plot.svg.matches("<polyline").count(), 2);
    }

    #[test]
    fn nice_ticks_snap_to_grid() {
        for (v, decimals) in nice_ticks(0.0, 1.0) {
            let label = format!("{v:.decimals$}");
            assert!(label.len() <= 6, "ugly label {label}");
        }
    }
}
