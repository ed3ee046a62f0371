//! Model extrapolation with log-space uncertainty bands.
//!
//! The band is computed where the fit lives: around the predicted log
//! value, using the regression's standard errors, then mapped back
//! through the exponential (or power of ten) and the baseline shift.
//! By default the band covers the mean response — the trend itself —
//! not a single new observation; the wider prediction band is available
//! via [`Band::Prediction`].

use crate::error::Error;
use crate::regress::{ExponentialModel, LinearFit, PowerLawModel};

/// Default normal quantile: a 95% band.
pub const DEFAULT_Z: f64 = 1.96;

/// Which model family produced a forecast.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Exponential,
    PowerLaw,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Exponential => "exponential",
            ModelKind::PowerLaw => "power_law",
        }
    }
}

/// Which uncertainty the band covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Band {
    /// Uncertainty of the fitted trend at the target (narrower).
    #[default]
    MeanResponse,
    /// Uncertainty of a single new observation at the target (wider).
    Prediction,
}

impl Band {
    pub fn as_str(self) -> &'static str {
        match self {
            Band::MeanResponse => "mean_response",
            Band::Prediction => "prediction",
        }
    }
}

/// A point extrapolation with its uncertainty band.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Forecast {
    pub target_year: i32,
    pub point: f64,
    pub low: f64,
    pub high: f64,
    pub model_kind: ModelKind,
}

fn band_se(fit: &LinearFit, x: f64, band: Band) -> f64 {
    match band {
        Band::MeanResponse => fit.mean_response_se(x),
        Band::Prediction => fit.prediction_se(x),
    }
}

/// Extrapolates an exponential model to `target_year` with a `z`-sigma band.
pub fn exponential(model: &ExponentialModel, target_year: i32, z: f64, band: Band) -> Forecast {
    let x = (target_year - model.baseline.ref_year()) as f64;
    let center = model.fit.predict(x);
    let se = band_se(&model.fit, x, band);
    let shift = model.baseline.ref_value();
    Forecast {
        target_year,
        point: shift + center.exp(),
        low: shift + (center - z * se).exp(),
        high: shift + (center + z * se).exp(),
        model_kind: ModelKind::Exponential,
    }
}

/// Extrapolates a power-law model to `target_year` with a `z`-sigma band.
/// The target must lie after the reference year.
pub fn power_law(
    model: &PowerLawModel,
    target_year: i32,
    z: f64,
    band: Band,
) -> Result<Forecast, Error> {
    let dy = target_year - model.baseline.ref_year();
    if dy <= 0 {
        return Err(Error::NonPositiveDelta {
            year: target_year,
            ref_year: model.baseline.ref_year(),
        });
    }
    let x = (dy as f64).log10();
    let center = model.fit.predict(x);
    let se = band_se(&model.fit, x, band);
    let shift = model.baseline.ref_value();
    Ok(Forecast {
        target_year,
        point: shift + 10f64.powf(center),
        low: shift + 10f64.powf(center - z * se),
        high: shift + 10f64.powf(center + z * se),
        model_kind: ModelKind::PowerLaw,
    })
}

/// Signed percent difference of a forecast point against an external value:
/// `100 * (point - external) / external`.
pub fn compare_external(forecast: &Forecast, external_value: f64) -> Result<f64, Error> {
    if external_value == 0.0 {
        return Err(Error::ZeroExternal);
    }
    Ok(100.0 * (forecast.point - external_value) / external_value)
}
