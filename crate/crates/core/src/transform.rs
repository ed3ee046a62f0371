//! Log-space projections of a delta series.
//!
//! An exponential trend is a straight line in semi-log coordinates and a
//! power law is a straight line in log-log coordinates, so both fits
//! reduce to ordinary least squares on the projected points. Points the
//! projection cannot represent (non-positive delta value, or non-positive
//! delta year in log-log) are excluded and reported, not treated as errors:
//! the delta value at the reference year itself is zero by construction.

use crate::error::Error;
use crate::series::DeltaSeries;

/// Projected points plus the delta years the projection dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformedPoints {
    /// `(x, y)` pairs, one per usable input point, in input order.
    pub points: Vec<(f64, f64)>,
    /// Delta years of the usable points, parallel to `points`.
    pub years: Vec<i32>,
    /// Delta years of the excluded points, in input order.
    pub excluded: Vec<i32>,
}

impl TransformedPoints {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Projects to `(delta_year, ln delta_value)`, keeping points with a
/// positive delta value. Errors when fewer than two usable pairs remain.
pub fn semi_log_points(delta: &DeltaSeries) -> Result<TransformedPoints, Error> {
    project(delta, |dy, dv| {
        if dv > 0.0 {
            Some((dy as f64, dv.ln()))
        } else {
            None
        }
    })
}

/// Projects to `(log10 delta_year, log10 delta_value)`, keeping points with
/// both deltas positive. Errors when fewer than two usable pairs remain.
pub fn log_log_points(delta: &DeltaSeries) -> Result<TransformedPoints, Error> {
    project(delta, |dy, dv| {
        if dy > 0 && dv > 0.0 {
            Some(((dy as f64).log10(), dv.log10()))
        } else {
            None
        }
    })
}

fn project(
    delta: &DeltaSeries,
    map: impl Fn(i32, f64) -> Option<(f64, f64)>,
) -> Result<TransformedPoints, Error> {
    let mut points = Vec::with_capacity(delta.len());
    let mut years = Vec::with_capacity(delta.len());
    let mut excluded = Vec::new();
    for &(dy, dv) in delta.points() {
        match map(dy, dv) {
            Some(pair) => {
                points.push(pair);
                years.push(dy);
            }
            None => excluded.push(dy),
        }
    }
    if points.len() < 2 {
        return Err(Error::TooFewPoints {
            required: 2,
            available: points.len(),
        });
    }
    Ok(TransformedPoints {
        points,
        years,
        excluded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{Baseline, TimeSeries};

    fn delta_from(points: Vec<(i32, f64)>) -> DeltaSeries {
        // Identity baseline: the delta points equal the raw points.
        TimeSeries::new("t", "u", points)
            .unwrap()
            .to_delta(Baseline::explicit(0, 0.0).unwrap())
    }

    #[test]
    fn semi_log_exact_logs() {
        let e = std::f64::consts::E;
        let d = delta_from(vec![(1, e), (2, e * e)]);
        let t = semi_log_points(&d).unwrap();
        assert!(t.excluded.is_empty());
        assert!((t.points[0].0 - 1.0).abs() < 1e-15);
        assert!((t.points[0].1 - 1.0).abs() < 1e-15);
        assert!((t.points[1].0 - 2.0).abs() < 1e-15);
        assert!((t.points[1].1 - 2.0).abs() < 1e-15);
    }

    #[test]
    fn semi_log_excludes_zero_delta_value() {
        let d = delta_from(vec![(0, 0.0), (1, 5.0), (2, 7.0)]);
        let t = semi_log_points(&d).unwrap();
        assert_eq!(t.excluded, vec![0]);
        assert_eq!(t.years, vec![1, 2]);
        assert!((t.points[0].1 - 5.0f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn semi_log_too_few_usable() {
        let d = delta_from(vec![(0, 0.0), (1, 5.0), (2, -1.0)]);
        let err = semi_log_points(&d).unwrap_err();
        assert!(matches!(
            err,
            Error::TooFewPoints {
                required: 2,
                available: 1
            }
        ));
    }

    #[test]
    fn semi_log_straight_line_from_exponential() {
        // delta_value = 1.9 * exp(0.035 * delta_year) projects to a line
        // of slope 0.035 through (dy, ln 1.9 + 0.035 dy).
        let points: Vec<(i32, f64)> = (25..=66)
            .map(|dy| (dy, 1.9 * (0.035 * dy as f64).exp()))
            .collect();
        let d = delta_from(points);
        let t = semi_log_points(&d).unwrap();
        for (x, y) in &t.points {
            let expected = 1.9f64.ln() + 0.035 * x;
            assert!((y - expected).abs() < 1e-12, "residual at dy={x}");
        }
    }

    #[test]
    fn log_log_exact_decades() {
        let d = delta_from(vec![(10, 100.0), (100, 10_000.0)]);
        let t = log_log_points(&d).unwrap();
        assert!((t.points[0].0 - 1.0).abs() < 1e-15);
        assert!((t.points[0].1 - 2.0).abs() < 1e-15);
        assert!((t.points[1].0 - 2.0).abs() < 1e-15);
        assert!((t.points[1].1 - 4.0).abs() < 1e-15);
    }

    #[test]
    fn log_log_excludes_zero_delta_year() {
        let d = delta_from(vec![(0, 5.0), (1, 5.0), (3, 2.0)]);
        let t = log_log_points(&d).unwrap();
        assert_eq!(t.excluded, vec![0]);
        assert!((t.points[0].1 - 5.0f64.log10()).abs() < 1e-15);
    }

    #[test]
    fn log_log_straight_line_from_power_law() {
        // delta_value = 1.75 * delta_year^1.2 projects to slope 1.2 and
        // intercept log10(1.75).
        let points: Vec<(i32, f64)> = (1..=25)
            .map(|dy| (dy, 1.75 * (dy as f64).powf(1.2)))
            .collect();
        let d = delta_from(points);
        let t = log_log_points(&d).unwrap();
        for (x, y) in &t.points {
            let expected = 1.75f64.log10() + 1.2 * x;
            assert!((y - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn counts_partition_the_input() {
        let d = delta_from(vec![(-3, -1.0), (0, 0.0), (2, 3.0), (5, 9.0)]);
        let t = semi_log_points(&d).unwrap();
        assert_eq!(t.points.len() + t.excluded.len(), d.len());
        let t = log_log_points(&d).unwrap();
        assert_eq!(t.points.len() + t.excluded.len(), d.len());
    }
}
