//! Canonical analysis reports.
//!
//! A report is a single JSON document with a fixed key order and all
//! numbers rounded to six significant digits, so identical analyses
//! produce byte-identical output — the document doubles as a golden
//! file in tests.

use serde::Serialize;

use crate::forecast::{Band, Forecast};
use crate::phases::CycleFit;
use crate::regimes::{RateRatio, RegimeSplit};
use crate::regress::{ExponentialModel, PowerLawModel};
use crate::series::{Baseline, TimeSeries};

/// Rounds to six significant digits; the rendering precision of reports.
pub(crate) fn sig6(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{x:.5e}")
        .parse()
        .expect("formatted float reparses")
}

/// Identifying facts about the analyzed input.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct InputSummary {
    pub label: String,
    pub unit: String,
    pub points: usize,
    pub first_year: i32,
    pub last_year: i32,
}

impl From<&TimeSeries> for InputSummary {
    fn from(series: &TimeSeries) -> Self {
        Self {
            label: series.label().to_string(),
            unit: series.unit().to_string(),
            points: series.len(),
            first_year: series.first_year(),
            last_year: series.last_year(),
        }
    }
}

/// The baseline a delta transform used.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct BaselineSummary {
    pub ref_year: i32,
    pub ref_value: f64,
    pub provenance: String,
}

impl From<Baseline> for BaselineSummary {
    fn from(baseline: Baseline) -> Self {
        Self {
            ref_year: baseline.ref_year(),
            ref_value: sig6(baseline.ref_value()),
            provenance: baseline.provenance().as_str().to_string(),
        }
    }
}

/// Exponential fit parameters with their standard errors.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ExponentialFitSummary {
    pub y0: f64,
    pub y0_se: f64,
    pub rate: f64,
    pub rate_se: f64,
    pub r_squared: f64,
    pub sse: f64,
    pub n: usize,
}

impl From<&ExponentialModel> for ExponentialFitSummary {
    fn from(model: &ExponentialModel) -> Self {
        Self {
            y0: sig6(model.y0),
            y0_se: sig6(model.y0_se),
            rate: sig6(model.rate),
            rate_se: sig6(model.rate_se),
            r_squared: sig6(model.fit.r_squared),
            sse: sig6(model.fit.sse),
            n: model.fit.n,
        }
    }
}

/// Power-law fit parameters with their standard errors.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct PowerLawFitSummary {
    pub p_ref: f64,
    pub p_ref_se: f64,
    pub phi: f64,
    pub phi_se: f64,
    pub r_squared: f64,
    pub sse: f64,
    pub n: usize,
}

impl From<&PowerLawModel> for PowerLawFitSummary {
    fn from(model: &PowerLawModel) -> Self {
        Self {
            p_ref: sig6(model.p_ref),
            p_ref_se: sig6(model.p_ref_se),
            phi: sig6(model.phi),
            phi_se: sig6(model.phi_se),
            r_squared: sig6(model.fit.r_squared),
            sse: sig6(model.fit.sse),
            n: model.fit.n,
        }
    }
}

/// Rate ratio across a split, both orientations.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RateRatioSummary {
    pub left_over_right_pct: f64,
    pub right_over_left_pct: f64,
}

impl From<RateRatio> for RateRatioSummary {
    fn from(ratio: RateRatio) -> Self {
        Self {
            left_over_right_pct: sig6(ratio.left_over_right_pct),
            right_over_left_pct: sig6(ratio.right_over_left_pct),
        }
    }
}

/// A detected crossover with its per-side fits and diagnostics.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RegimeSplitSummary {
    pub crossover_year: i32,
    pub left: ExponentialFitSummary,
    pub right: ExponentialFitSummary,
    pub total_sse: f64,
    pub single_sse: f64,
    pub improvement: f64,
    pub significant: bool,
    /// Absent when a side has a zero rate.
    pub rate_ratio: Option<RateRatioSummary>,
}

impl From<&RegimeSplit> for RegimeSplitSummary {
    fn from(split: &RegimeSplit) -> Self {
        Self {
            crossover_year: split.crossover_year,
            left: (&split.left).into(),
            right: (&split.right).into(),
            total_sse: sig6(split.total_sse),
            single_sse: sig6(split.single_sse),
            improvement: sig6(split.improvement),
            significant: split.significant,
            rate_ratio: crate::regimes::rate_ratio(split).ok().map(Into::into),
        }
    }
}

/// A fitted growth cycle.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct GrowthCycleSummary {
    pub lag_level: f64,
    pub growth_rate: f64,
    pub death_rate: f64,
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub stationary_level: f64,
    pub log_sse: f64,
    /// Calendar year that time zero corresponds to, when times were
    /// derived from years.
    pub time_origin_year: Option<i32>,
}

impl GrowthCycleSummary {
    pub fn new(fit: &CycleFit, time_origin_year: Option<i32>) -> Self {
        Self {
            lag_level: sig6(fit.model.lag_level()),
            growth_rate: sig6(fit.model.growth_rate()),
            death_rate: sig6(fit.model.death_rate()),
            t1: sig6(fit.model.t1()),
            t2: sig6(fit.model.t2()),
            t3: sig6(fit.model.t3()),
            stationary_level: sig6(fit.model.stationary_level()),
            log_sse: sig6(fit.log_sse),
            time_origin_year,
        }
    }
}

/// One fitted model in a report.
#[derive(Debug, Clone, Serialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FitSummary {
    Exponential(ExponentialFitSummary),
    PowerLaw(PowerLawFitSummary),
    RegimeSplit(RegimeSplitSummary),
    GrowthCycle(GrowthCycleSummary),
}

/// One extrapolation in a report.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ForecastSummary {
    pub target_year: i32,
    pub model_kind: String,
    pub point: f64,
    pub low: f64,
    pub high: f64,
    pub z: f64,
    pub band: String,
}

impl ForecastSummary {
    pub fn new(forecast: &Forecast, z: f64, band: Band) -> Self {
        Self {
            target_year: forecast.target_year,
            model_kind: forecast.model_kind.as_str().to_string(),
            point: sig6(forecast.point),
            low: sig6(forecast.low),
            high: sig6(forecast.high),
            z: sig6(z),
            band: band.as_str().to_string(),
        }
    }
}

/// A full analysis: what was read, how it was anchored, what was fitted.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct AnalysisReport {
    pub input: InputSummary,
    /// Absent for analyses that need no baseline (growth-cycle fits).
    pub baseline: Option<BaselineSummary>,
    pub fits: Vec<FitSummary>,
    pub forecasts: Vec<ForecastSummary>,
    pub warnings: Vec<String>,
}

impl AnalysisReport {
    /// A report holding only the input descriptor.
    pub fn new(series: &TimeSeries) -> Self {
        Self {
            input: series.into(),
            baseline: None,
            fits: Vec::new(),
            forecasts: Vec::new(),
            warnings: Vec::new(),
        }
    }
}

/// Renders the canonical report document: pretty-printed JSON with stable
/// key order, six-significant-digit numbers, and a trailing newline.
pub fn write_report(report: &AnalysisReport) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::TimeSeries;

    fn series() -> TimeSeries {
        TimeSeries::new(
            "gwp",
            "trillion USD",
            vec![(1950, 6.0), (1960, 10.0), (1970, 20.0)],
        )
        .unwrap()
    }

    #[test]
    fn empty_report_has_empty_fits_and_warnings() {
        let report = AnalysisReport::new(&series());
        let text = write_report(&report);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["fits"].as_array().unwrap().len(), 0);
        assert_eq!(value["warnings"].as_array().unwrap().len(), 0);
        assert_eq!(value["input"]["points"], 3);
        assert!(value["baseline"].is_null());
    }

    #[test]
    fn exponential_fit_keys_are_present() {
        let baseline = Baseline::explicit(1948, 4.0).unwrap();
        let delta = series().to_delta(baseline);
        let model = ExponentialModel::fit(&delta).unwrap();
        let mut report = AnalysisReport::new(&series());
        report.baseline = Some(baseline.into());
        report.fits.push(FitSummary::Exponential((&model).into()));
        let text = write_report(&report);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        let fit = &value["fits"][0];
        assert_eq!(fit["kind"], "exponential");
        for key in ["y0", "y0_se", "rate", "rate_se", "r_squared", "sse", "n"] {
            assert!(!fit[key].is_null(), "missing key {key}");
        }
    }

    #[test]
    fn serialization_is_deterministic() {
        let baseline = Baseline::explicit(1948, 4.0).unwrap();
        let delta = series().to_delta(baseline);
        let model = ExponentialModel::fit(&delta).unwrap();
        let mut report = AnalysisReport::new(&series());
        report.baseline = Some(baseline.into());
        report.fits.push(FitSummary::Exponential((&model).into()));
        report.warnings.push("1 point excluded".to_string());
        assert_eq!(write_report(&report), write_report(&report.clone()));
    }

    #[test]
    fn sig6_rounds_to_six_significant_digits() {
        assert_eq!(sig6(0.035000123456), 0.0350001);
        assert_eq!(sig6(1234567.89), 1234570.0);
        assert_eq!(sig6(-9.8765432e-7), -9.87654e-7);
        assert_eq!(sig6(0.0), 0.0);
        assert_eq!(sig6(2.0), 2.0);
    }
}
