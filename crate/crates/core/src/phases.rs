//! Four-phase growth and death cycle: simulation, classification, fitting.
//!
//! The cycle is a deterministic piecewise curve over time `t >= 0`:
//! a flat lag phase, exponential growth, a flat stationary phase, and
//! exponential decay. The stationary level is derived from the growth
//! limb (`lag_level * exp(growth_rate * (t2 - t1))`), which makes the
//! curve continuous by construction. In semi-log coordinates the growth
//! and death limbs are straight lines, so fitting reduces to a grid
//! search over breakpoint triples with closed-form per-segment costs.

use crate::error::Error;
use crate::regress::ols;

/// Which of the four cycle phases a time belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Lag,
    Exponential,
    Stationary,
    Death,
}

impl Phase {
    pub fn as_str(self) -> &'static str {
        match self {
            Phase::Lag => "lag",
            Phase::Exponential => "exponential",
            Phase::Stationary => "stationary",
            Phase::Death => "death",
        }
    }
}

/// A continuous four-phase population curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthCycleModel {
    lag_level: f64,
    growth_rate: f64,
    death_rate: f64,
    t1: f64,
    t2: f64,
    t3: f64,
}

impl GrowthCycleModel {
    /// Validates `lag_level > 0`, both rates `> 0`, and `t1 < t2 < t3`.
    pub fn new(
        lag_level: f64,
        growth_rate: f64,
        death_rate: f64,
        t1: f64,
        t2: f64,
        t3: f64,
    ) -> Result<Self, Error> {
        if !(lag_level.is_finite() && lag_level > 0.0) {
            return Err(Error::InvalidParameter("lag_level must be positive"));
        }
        if !(growth_rate.is_finite() && growth_rate > 0.0) {
            return Err(Error::InvalidParameter("growth_rate must be positive"));
        }
        if !(death_rate.is_finite() && death_rate > 0.0) {
            return Err(Error::InvalidParameter("death_rate must be positive"));
        }
        if !(t1.is_finite() && t2.is_finite() && t3.is_finite() && t1 < t2 && t2 < t3) {
            return Err(Error::InvalidParameter(
                "breakpoints must satisfy t1 < t2 < t3",
            ));
        }
        Ok(Self {
            lag_level,
            growth_rate,
            death_rate,
            t1,
            t2,
            t3,
        })
    }

    pub fn lag_level(&self) -> f64 {
        self.lag_level
    }

    pub fn growth_rate(&self) -> f64 {
        self.growth_rate
    }

    pub fn death_rate(&self) -> f64 {
        self.death_rate
    }

    pub fn t1(&self) -> f64 {
        self.t1
    }

    pub fn t2(&self) -> f64 {
        self.t2
    }

    pub fn t3(&self) -> f64 {
        self.t3
    }

    /// The plateau level reached at the end of the growth phase.
    pub fn stationary_level(&self) -> f64 {
        self.lag_level * (self.growth_rate * (self.t2 - self.t1)).exp()
    }

    /// The population at time `t`, continuous across the breakpoints.
    pub fn population_at(&self, t: f64) -> f64 {
        if t <= self.t1 {
            self.lag_level
        } else if t <= self.t2 {
            self.lag_level * (self.growth_rate * (t - self.t1)).exp()
        } else if t <= self.t3 {
            self.stationary_level()
        } else {
            self.stationary_level() * (-self.death_rate * (t - self.t3)).exp()
        }
    }

    /// Evaluates the curve at each time.
    pub fn simulate(&self, times: &[f64]) -> Vec<(f64, f64)> {
        times.iter().map(|&t| (t, self.population_at(t))).collect()
    }

    /// Phase membership with half-open intervals: lag on `[0, t1)`,
    /// exponential on `[t1, t2)`, stationary on `[t2, t3)`, death from `t3`.
    pub fn classify(&self, t: f64) -> Phase {
        if t < self.t1 {
            Phase::Lag
        } else if t < self.t2 {
            Phase::Exponential
        } else if t < self.t3 {
            Phase::Stationary
        } else {
            Phase::Death
        }
    }
}

/// Default minimum samples per fitted segment.
pub const DEFAULT_CYCLE_MIN_SEGMENT: usize = 3;

/// A fitted cycle with its search diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleFit {
    pub model: GrowthCycleModel,
    /// Total squared error in log space of the four per-segment fits.
    pub log_sse: f64,
    /// Sample indices of the chosen breakpoints.
    pub breakpoints: (usize, usize, usize),
}

/// Prefix sums over `(t, ln v)` samples for O(1) segment costs.
struct SegmentSums {
    t: Vec<f64>,
    tt: Vec<f64>,
    y: Vec<f64>,
    yy: Vec<f64>,
    ty: Vec<f64>,
}

impl SegmentSums {
    fn new(times: &[f64], log_values: &[f64]) -> Self {
        let n = times.len();
        let mut sums = SegmentSums {
            t: vec![0.0; n + 1],
            tt: vec![0.0; n + 1],
            y: vec![0.0; n + 1],
            yy: vec![0.0; n + 1],
            ty: vec![0.0; n + 1],
        };
        for i in 0..n {
            sums.t[i + 1] = sums.t[i] + times[i];
            sums.tt[i + 1] = sums.tt[i] + times[i] * times[i];
            sums.y[i + 1] = sums.y[i] + log_values[i];
            sums.yy[i + 1] = sums.yy[i] + log_values[i] * log_values[i];
            sums.ty[i + 1] = sums.ty[i] + times[i] * log_values[i];
        }
        sums
    }

    /// Log-space SSE of a constant fit over samples `lo..=hi`.
    fn flat_cost(&self, lo: usize, hi: usize) -> f64 {
        let n = (hi - lo + 1) as f64;
        let sy = self.y[hi + 1] - self.y[lo];
        let syy = self.yy[hi + 1] - self.yy[lo];
        (syy - sy * sy / n).max(0.0)
    }

    /// Log-space SSE of a line fit over samples `lo..=hi`.
    fn line_cost(&self, lo: usize, hi: usize) -> f64 {
        let n = (hi - lo + 1) as f64;
        let st = self.t[hi + 1] - self.t[lo];
        let stt = self.tt[hi + 1] - self.tt[lo];
        let sy = self.y[hi + 1] - self.y[lo];
        let syy = self.yy[hi + 1] - self.yy[lo];
        let sty = self.ty[hi + 1] - self.ty[lo];
        let sxx = stt - st * st / n;
        let sxy = sty - st * sy / n;
        let syy_c = syy - sy * sy / n;
        (syy_c - sxy * sxy / sxx).max(0.0)
    }
}

/// Fits a four-phase cycle to `(time, population)` samples by exhaustive
/// search over breakpoint triples drawn from the observed times, with at
/// least `min_segment` samples per segment (breakpoint samples belong to
/// both adjacent segments). The objective is the summed squared error in
/// log space; ties go to the lexicographically smallest triple.
///
/// Flat or decaying-only input has no growth limb and fails with
/// `DegenerateCycle` rather than returning a model that violates the
/// cycle's positive-rate invariants.
pub fn fit_cycle(samples: &[(f64, f64)], min_segment: usize) -> Result<CycleFit, Error> {
    if min_segment < 2 {
        return Err(Error::InvalidParameter("min_segment must be at least 2"));
    }
    let n = samples.len();
    if n < 4 * min_segment {
        return Err(Error::TooFewPoints {
            required: 4 * min_segment,
            available: n,
        });
    }
    for (index, pair) in samples.windows(2).enumerate() {
        if pair[1].0 <= pair[0].0 {
            return Err(Error::UnorderedTimes { index: index + 1 });
        }
    }
    if let Some(index) = samples
        .iter()
        .position(|&(_, v)| !(v.is_finite() && v > 0.0))
    {
        return Err(Error::NonPositiveValue { index });
    }

    let times: Vec<f64> = samples.iter().map(|p| p.0).collect();
    let log_values: Vec<f64> = samples.iter().map(|p| p.1.ln()).collect();
    let sums = SegmentSums::new(&times, &log_values);

    // Segments share their breakpoint samples: lag = [0..=i],
    // growth = [i..=j], stationary = [j..=k], death = [k..=n-1].
    let m = min_segment - 1;
    let mut best: Option<(f64, usize, usize, usize)> = None;
    for i in m..n {
        let lag = sums.flat_cost(0, i);
        for j in (i + m)..n {
            let growth = sums.line_cost(i, j);
            for k in (j + m)..n {
                if n - k < min_segment {
                    break;
                }
                let cost = lag + growth + sums.flat_cost(j, k) + sums.line_cost(k, n - 1);
                if best.is_none_or(|(best_cost, ..)| cost < best_cost) {
                    best = Some((cost, i, j, k));
                }
            }
        }
    }
    let (_, i, j, k) = best.expect("candidate set is nonempty when n >= 4 * min_segment");

    // Final parameters from the numerically stable two-pass path.
    let mean = |lo: usize, hi: usize| -> f64 {
        log_values[lo..=hi].iter().sum::<f64>() / (hi - lo + 1) as f64
    };
    let seg_points = |lo: usize, hi: usize| -> Vec<(f64, f64)> {
        (lo..=hi).map(|s| (times[s], log_values[s])).collect()
    };
    let lag_mean = mean(0, i);
    let stationary_mean = mean(j, k);
    let growth_fit = ols(&seg_points(i, j))?;
    let death_fit = ols(&seg_points(k, n - 1))?;

    let growth_rate = growth_fit.slope;
    let death_rate = -death_fit.slope;
    if growth_rate <= 0.0 || death_rate <= 0.0 {
        return Err(Error::DegenerateCycle);
    }

    let flat_sse = |lo: usize, hi: usize, level: f64| -> f64 {
        log_values[lo..=hi]
            .iter()
            .map(|y| (y - level) * (y - level))
            .sum()
    };
    let log_sse =
        flat_sse(0, i, lag_mean) + growth_fit.sse + flat_sse(j, k, stationary_mean) + death_fit.sse;

    let model = GrowthCycleModel::new(
        lag_mean.exp(),
        growth_rate,
        death_rate,
        times[i],
        times[j],
        times[k],
    )?;
    Ok(CycleFit {
        model,
        log_sse,
        breakpoints: (i, j, k),
    })
}
