//! Yearly series, reference baselines, and the delta transform.
//!
//! Every fit in this crate operates on a [`DeltaSeries`]: the original
//! series shifted by a reference year and reference value. The baseline
//! anchors the transform; nothing is filtered here, so delta values may
//! be zero or negative (the log-space transforms deal with those).

use crate::error::Error;

/// A yearly series of finite values with a label and a unit.
///
/// Invariants, enforced at construction: years strictly increasing,
/// all values finite, at least two points.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    label: String,
    unit: String,
    points: Vec<(i32, f64)>,
}

impl TimeSeries {
    /// Builds a validated series from `(year, value)` points.
    pub fn new(
        label: impl Into<String>,
        unit: impl Into<String>,
        points: Vec<(i32, f64)>,
    ) -> Result<Self, Error> {
        if points.len() < 2 {
            return Err(Error::TooFewPoints {
                required: 2,
                available: points.len(),
            });
        }
        for pair in points.windows(2) {
            if pair[1].0 <= pair[0].0 {
                return Err(Error::UnorderedYears { year: pair[1].0 });
            }
        }
        if let Some(&(year, _)) = points.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFiniteValue { year });
        }
        Ok(Self {
            label: label.into(),
            unit: unit.into(),
            points,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn unit(&self) -> &str {
        &self.unit
    }

    /// The `(year, value)` points, ordered by year.
    pub fn points(&self) -> &[(i32, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always `false`: a valid series has at least two points.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn first_year(&self) -> i32 {
        self.points[0].0
    }

    pub fn last_year(&self) -> i32 {
        self.points[self.points.len() - 1].0
    }

    /// Returns the same series with a different label.
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Returns the same series with a different unit.
    pub fn with_unit(mut self, unit: impl Into<String>) -> Self {
        self.unit = unit.into();
        self
    }

    /// Shifts the series by a baseline: `(year - ref_year, value - ref_value)`
    /// per point. One output point per input point, nothing filtered.
    pub fn to_delta(&self, baseline: Baseline) -> DeltaSeries {
        let points = self
            .points
            .iter()
            .map(|&(year, value)| (year - baseline.ref_year(), value - baseline.ref_value()))
            .collect();
        DeltaSeries { baseline, points }
    }
}

/// How a baseline's reference value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineProvenance {
    /// Supplied directly by the caller.
    Explicit,
    /// Mean of the series over the ten years before the reference year.
    DecadeMean,
}

impl BaselineProvenance {
    pub fn as_str(self) -> &'static str {
        match self {
            BaselineProvenance::Explicit => "explicit",
            BaselineProvenance::DecadeMean => "decade-mean",
        }
    }
}

/// Reference year and value subtracted from a series before fitting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Baseline {
    ref_year: i32,
    ref_value: f64,
    provenance: BaselineProvenance,
}

impl Baseline {
    /// A baseline with a caller-supplied reference value.
    pub fn explicit(ref_year: i32, ref_value: f64) -> Result<Self, Error> {
        if !ref_value.is_finite() {
            return Err(Error::NonFiniteValue { year: ref_year });
        }
        Ok(Self {
            ref_year,
            ref_value,
            provenance: BaselineProvenance::Explicit,
        })
    }

    /// A baseline whose reference value is the arithmetic mean of the series
    /// over the window `[ref_year - 10, ref_year - 1]`.
    pub fn from_decade_mean(series: &TimeSeries, ref_year: i32) -> Result<Self, Error> {
        let window: Vec<f64> = series
            .points()
            .iter()
            .filter(|&&(year, _)| year >= ref_year - 10 && year < ref_year)
            .map(|&(_, value)| value)
            .collect();
        if window.is_empty() {
            return Err(Error::EmptyWindow { ref_year });
        }
        let ref_value = window.iter().sum::<f64>() / window.len() as f64;
        Ok(Self {
            ref_year,
            ref_value,
            provenance: BaselineProvenance::DecadeMean,
        })
    }

    pub fn ref_year(&self) -> i32 {
        self.ref_year
    }

    pub fn ref_value(&self) -> f64 {
        self.ref_value
    }

    pub fn provenance(&self) -> BaselineProvenance {
        self.provenance
    }
}

/// A series expressed relative to a baseline: `(delta_year, delta_value)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaSeries {
    baseline: Baseline,
    points: Vec<(i32, f64)>,
}

impl DeltaSeries {
    pub fn baseline(&self) -> Baseline {
        self.baseline
    }

    /// The `(delta_year, delta_value)` points, ordered by delta year.
    pub fn points(&self) -> &[(i32, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}
