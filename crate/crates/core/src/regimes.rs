//! Exponential-rate crossover detection and rate ratios.
//!
//! A crossover is a year at which the growth rate of a series changes:
//! in semi-log coordinates the series goes from one straight line to
//! another. Detection is an exhaustive search over candidate years — the
//! series are annual and short, so the O(n^2) scan is exact and cheap.
//! The crossover point belongs to both segments, and each side keeps its
//! own prefactor (no continuity constraint between the two fits).

use crate::error::Error;
use crate::regress::{ols, ExponentialModel};
use crate::series::DeltaSeries;
use crate::transform::semi_log_points;

/// Default minimum number of usable points per segment.
pub const DEFAULT_MIN_SEGMENT: usize = 4;

/// Default improvement ratio above which a split counts as significant.
pub const DEFAULT_THRESHOLD: f64 = 0.5;

/// A detected rate crossover with independent exponential fits per side.
#[derive(Debug, Clone, PartialEq)]
pub struct RegimeSplit {
    /// Calendar year of the crossover; fitted on both sides.
    pub crossover_year: i32,
    /// Fit over points with `year <= crossover_year`.
    pub left: ExponentialModel,
    /// Fit over points with `year >= crossover_year`.
    pub right: ExponentialModel,
    /// `left.fit.sse + right.fit.sse` in log space.
    pub total_sse: f64,
    /// Log-space SSE of a single fit over the whole range.
    pub single_sse: f64,
    /// `1 - total_sse / single_sse`, clamped to `[0, 1]`; zero when the
    /// single fit already has no residual to explain.
    pub improvement: f64,
    /// Whether `improvement` reached the significance threshold.
    pub significant: bool,
}

/// Both orientations of the rate ratio across a split, in percent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateRatio {
    pub left_over_right_pct: f64,
    pub right_over_left_pct: f64,
}

/// Finds the crossover year minimizing the summed log-space SSE of two
/// independent exponential fits, leaving at least `min_segment` usable
/// points on each side. Ties go to the earliest candidate year.
pub fn detect_crossover(
    delta: &DeltaSeries,
    min_segment: usize,
    threshold: f64,
) -> Result<RegimeSplit, Error> {
    if min_segment < 2 {
        return Err(Error::InvalidParameter("min_segment must be at least 2"));
    }
    if !(0.0..=1.0).contains(&threshold) {
        return Err(Error::InvalidParameter("threshold must be in [0, 1]"));
    }

    let transformed = semi_log_points(delta)?;
    let points = &transformed.points;
    let n = points.len();
    if n < 2 * min_segment {
        return Err(Error::TooFewPoints {
            required: 2 * min_segment,
            available: n,
        });
    }

    let baseline = delta.baseline();
    let single = ols(points)?;

    // The shared point makes segment sizes i+1 and n-i for a split at
    // index i, so candidates run over usable point indices directly.
    let mut best: Option<(f64, usize)> = None;
    for i in 0..n {
        let (left_len, right_len) = (i + 1, n - i);
        if left_len < min_segment || right_len < min_segment {
            continue;
        }
        let left = ols(&points[..=i])?;
        let right = ols(&points[i..])?;
        let total = left.sse + right.sse;
        if best.is_none_or(|(best_total, _)| total < best_total) {
            best = Some((total, i));
        }
    }
    let (total_sse, split_index) = best.ok_or(Error::TooFewPoints {
        required: 2 * min_segment,
        available: n,
    })?;

    let left_fit = ols(&transformed.points[..=split_index])?;
    let right_fit = ols(&transformed.points[split_index..])?;
    let single_sse = single.sse;

    // A single fit whose residual is pure floating-point noise is already
    // perfect; treat it like the sse = 0 case instead of dividing by it.
    let noise_floor = {
        let y_max = points.iter().map(|p| p.1.abs()).fold(0.0, f64::max);
        n as f64 * (y_max * 1e-12).powi(2)
    };
    let improvement = if single_sse <= noise_floor {
        0.0
    } else {
        (1.0 - total_sse / single_sse).clamp(0.0, 1.0)
    };

    Ok(RegimeSplit {
        crossover_year: baseline.ref_year() + transformed.years[split_index],
        left: ExponentialModel::from_semilog_fit(left_fit, baseline),
        right: ExponentialModel::from_semilog_fit(right_fit, baseline),
        total_sse,
        single_sse,
        improvement,
        significant: improvement >= threshold,
    })
}

/// Rate ratio across a split, reported in both orientations.
pub fn rate_ratio(split: &RegimeSplit) -> Result<RateRatio, Error> {
    if split.left.rate == 0.0 || split.right.rate == 0.0 {
        return Err(Error::ZeroRate);
    }
    Ok(RateRatio {
        left_over_right_pct: 100.0 * split.left.rate / split.right.rate,
        right_over_left_pct: 100.0 * split.right.rate / split.left.rate,
    })
}
