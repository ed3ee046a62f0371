//! Growth-regime analysis of long-run yearly series.
//!
//! The crate turns a yearly series (gross product, a market index, a
//! population count) into fitted growth models by working relative to a
//! reference baseline — a `(ref_year, ref_value)` anchor subtracted from
//! every point — and regressing in log space:
//!
//! - [`regress::ExponentialModel`]: a straight line on semi-log points,
//!   `delta_value = y0 * exp(rate * delta_year)`;
//! - [`regress::PowerLawModel`]: a straight line on log-log points,
//!   `delta_value = p_ref * delta_year^phi`;
//! - [`regimes::detect_crossover`]: the year at which one exponential
//!   rate hands over to another;
//! - [`phases::GrowthCycleModel`]: the four-phase lag / exponential /
//!   stationary / death cycle, with simulation and fitting;
//! - [`forecast`]: extrapolation with log-space uncertainty bands;
//! - [`io`]: CSV ingestion, canonical JSON reports, deterministic SVG
//!   plots in linear, semi-log, and log-log scales.
//!
//! All types are immutable values and all operations are pure functions,
//! so everything is safe to share across threads.

pub mod error;
pub mod forecast;
pub mod io;
pub mod phases;
pub mod regimes;
pub mod regress;
pub mod series;
pub mod transform;

pub use error::Error;
pub use forecast::{Band, Forecast, ModelKind};
pub use phases::{fit_cycle, CycleFit, GrowthCycleModel, Phase};
pub use regimes::{detect_crossover, rate_ratio, RateRatio, RegimeSplit};
pub use regress::{ols, ExponentialModel, LinearFit, PowerLawModel};
pub use series::{Baseline, BaselineProvenance, DeltaSeries, TimeSeries};
pub use transform::{log_log_points, semi_log_points, TransformedPoints};
