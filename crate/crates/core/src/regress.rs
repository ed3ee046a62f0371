//! Closed-form least squares and the trend models built on it.
//!
//! Fitting always happens in transformed (log) space, never by nonlinear
//! least squares on raw values: an exponential trend is fitted as a line
//! on semi-log points and a power law as a line on log-log points. The
//! standard errors are the classical homoskedastic OLS formulas with
//! `n - 2` degrees of freedom; prefactor uncertainties are mapped through
//! the back-transform to first order.

use crate::error::Error;
use crate::series::{Baseline, DeltaSeries};
use crate::transform::{log_log_points, semi_log_points};

const LN_10: f64 = std::f64::consts::LN_10;

/// A straight-line least-squares fit `y = intercept + slope * x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_se: f64,
    pub intercept_se: f64,
    /// Coefficient of determination, clamped to `[0, 1]`; defined as 1
    /// when the total sum of squares is zero.
    pub r_squared: f64,
    /// Sum of squared residuals over the fitted points.
    pub sse: f64,
    /// Number of points fitted.
    pub n: usize,
    /// Mean of the fitted x values.
    pub x_mean: f64,
    /// Centered sum of squares of the fitted x values.
    pub sxx: f64,
}

impl LinearFit {
    /// Residual variance `sse / (n - 2)`; zero when there are no spare
    /// degrees of freedom.
    pub fn residual_variance(&self) -> f64 {
        if self.n > 2 {
            self.sse / (self.n as f64 - 2.0)
        } else {
            0.0
        }
    }

    /// The fitted value at `x`.
    pub fn predict(&self, x: f64) -> f64 {
        self.intercept + self.slope * x
    }

    /// Standard error of the fitted mean response at `x`, from the
    /// intercept/slope variances and their covariance.
    pub fn mean_response_se(&self, x: f64) -> f64 {
        let dx = x - self.x_mean;
        (self.residual_variance() * (1.0 / self.n as f64 + dx * dx / self.sxx)).sqrt()
    }

    /// Standard error of a single new observation at `x` (the mean
    /// response term plus one unit of residual variance).
    pub fn prediction_se(&self, x: f64) -> f64 {
        let dx = x - self.x_mean;
        (self.residual_variance() * (1.0 + 1.0 / self.n as f64 + dx * dx / self.sxx)).sqrt()
    }
}

/// Ordinary least squares on `(x, y)` points.
///
/// Errors with `TooFewPoints` below two points and `DegenerateX` when all
/// x values are identical.
pub fn ols(points: &[(f64, f64)]) -> Result<LinearFit, Error> {
    let n = points.len();
    if n < 2 {
        return Err(Error::TooFewPoints {
            required: 2,
            available: n,
        });
    }
    let (mut x_min, mut x_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(x, _) in points {
        x_min = x_min.min(x);
        x_max = x_max.max(x);
    }
    if x_min == x_max {
        return Err(Error::DegenerateX);
    }

    let nf = n as f64;
    let x_mean = points.iter().map(|p| p.0).sum::<f64>() / nf;
    let y_mean = points.iter().map(|p| p.1).sum::<f64>() / nf;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut sst = 0.0;
    for &(x, y) in points {
        let dx = x - x_mean;
        let dy = y - y_mean;
        sxx += dx * dx;
        sxy += dx * dy;
        sst += dy * dy;
    }

    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let sse: f64 = points
        .iter()
        .map(|&(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    let r_squared = if sst == 0.0 {
        1.0
    } else {
        (1.0 - sse / sst).clamp(0.0, 1.0)
    };
    let residual_variance = if n > 2 { sse / (nf - 2.0) } else { 0.0 };
    let slope_se = (residual_variance / sxx).sqrt();
    let intercept_se = (residual_variance * (1.0 / nf + x_mean * x_mean / sxx)).sqrt();

    Ok(LinearFit {
        slope,
        intercept,
        slope_se,
        intercept_se,
        r_squared,
        sse,
        n,
        x_mean,
        sxx,
    })
}

/// An exponential trend relative to a baseline:
/// `value(year) = ref_value + y0 * exp(rate * (year - ref_year))`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentialModel {
    /// Prefactor `e^intercept` of the semi-log fit.
    pub y0: f64,
    /// Growth rate per year (the semi-log slope).
    pub rate: f64,
    /// First-order propagated standard error of `y0`.
    pub y0_se: f64,
    pub rate_se: f64,
    pub fit: LinearFit,
    pub baseline: Baseline,
}

impl ExponentialModel {
    /// Fits the model to the semi-log projection of a delta series.
    pub fn fit(delta: &DeltaSeries) -> Result<Self, Error> {
        let transformed = semi_log_points(delta)?;
        let fit = ols(&transformed.points)?;
        Ok(Self::from_semilog_fit(fit, delta.baseline()))
    }

    /// Wraps an already-computed semi-log line fit.
    pub(crate) fn from_semilog_fit(fit: LinearFit, baseline: Baseline) -> Self {
        let y0 = fit.intercept.exp();
        Self {
            y0,
            rate: fit.slope,
            y0_se: y0 * fit.intercept_se,
            rate_se: fit.slope_se,
            fit,
            baseline,
        }
    }

    /// The modeled raw value at a calendar year.
    pub fn predict(&self, year: i32) -> f64 {
        self.baseline.ref_value() + self.delta_at((year - self.baseline.ref_year()) as f64)
    }

    /// The modeled delta value at a (possibly fractional) delta year.
    pub fn delta_at(&self, delta_year: f64) -> f64 {
        self.y0 * (self.rate * delta_year).exp()
    }
}

/// A power-law trend relative to a baseline:
/// `value(year) = ref_value + p_ref * (year - ref_year)^phi`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerLawModel {
    /// Prefactor `10^intercept` of the log-log fit.
    pub p_ref: f64,
    /// Exponent (the log-log slope).
    pub phi: f64,
    /// First-order propagated standard error of `p_ref`.
    pub p_ref_se: f64,
    pub phi_se: f64,
    pub fit: LinearFit,
    pub baseline: Baseline,
}

impl PowerLawModel {
    /// Fits the model to the log-log projection of a delta series.
    pub fn fit(delta: &DeltaSeries) -> Result<Self, Error> {
        let transformed = log_log_points(delta)?;
        let fit = ols(&transformed.points)?;
        let p_ref = 10f64.powf(fit.intercept);
        Ok(Self {
            p_ref,
            phi: fit.slope,
            p_ref_se: p_ref * LN_10 * fit.intercept_se,
            phi_se: fit.slope_se,
            fit,
            baseline: delta.baseline(),
        })
    }

    /// The modeled raw value at a calendar year after the reference year.
    pub fn predict(&self, year: i32) -> Result<f64, Error> {
        let dy = year - self.baseline.ref_year();
        if dy <= 0 {
            return Err(Error::NonPositiveDelta {
                year,
                ref_year: self.baseline.ref_year(),
            });
        }
        Ok(self.baseline.ref_value() + self.delta_at(dy as f64))
    }

    /// The modeled delta value at a positive (possibly fractional) delta year.
    pub fn delta_at(&self, delta_year: f64) -> f64 {
        self.p_ref * delta_year.powf(self.phi)
    }
}
