//! Estimators for the limiting row ratios `b/a`, `c/a`, `d/a`.

use std::collections::BTreeMap;

use crate::error::{ChompError, Result};
use crate::solver::PSet;

use super::median;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RatioMethod {
    WindowedMedian,
    RollingWindow,
    PowerLaw,
}

impl RatioMethod {
    pub fn name(self) -> &'static str {
        match self {
            RatioMethod::WindowedMedian => "windowed_median",
            RatioMethod::RollingWindow => "rolling_window",
            RatioMethod::PowerLaw => "power_law",
        }
    }
}

/// `y(a) = limit + scale * a^(-exponent)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerLawFit {
    pub limit: f64,
    pub scale: f64,
    pub exponent: f64,
    pub sse: f64,
}

impl PowerLawFit {
    pub fn eval(&self, a: f64) -> f64 {
        self.limit + self.scale * a.powf(-self.exponent)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatioFit {
    pub method: RatioMethod,
    /// Estimated limits of `b/a`, `c/a`, `d/a`.
    pub limits: [f64; 3],
    /// Inclusive range of first-row lengths used.
    pub a_range: (u32, u32),
    /// Per-coordinate power-law parameters (power-law method only).
    pub power_law: Option<[PowerLawFit; 3]>,
    pub sample_count: usize,
}

impl RatioFit {
    pub fn l1(&self) -> f64 {
        self.limits[0]
    }
    pub fn l2(&self) -> f64 {
        self.limits[1]
    }
    pub fn l3(&self) -> f64 {
        self.limits[2]
    }
}

fn ratios(r: &[u32; 4]) -> [f64; 3] {
    let a = r[0] as f64;
    [r[1] as f64 / a, r[2] as f64 / a, r[3] as f64 / a]
}

fn median_ratios(rows: &[[u32; 4]]) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (i, slot) in out.iter_mut().enumerate() {
        let mut v: Vec<f64> = rows.iter().map(|r| ratios(r)[i]).collect();
        *slot = median(&mut v);
    }
    out
}

/// Medians of the three ratios over P-positions with
/// `a > a_min_fraction * n_max`.
pub fn ratio_windowed_median(pset: &PSet, a_min_fraction: f64) -> Result<RatioFit> {
    let threshold = a_min_fraction * pset.n_max() as f64;
    let rows: Vec<[u32; 4]> = pset
        .sorted_rows()
        .into_iter()
        .filter(|r| r[0] as f64 > threshold)
        .collect();
    if rows.is_empty() {
        return Err(ChompError::EmptyWindow);
    }
    Ok(RatioFit {
        method: RatioMethod::WindowedMedian,
        limits: median_ratios(&rows),
        a_range: (rows[0][0], rows[rows.len() - 1][0]),
        power_law: None,
        sample_count: rows.len(),
    })
}

/// Median ratios over consecutive `a`-buckets `[1, w], [w+1, 2w], ...`,
/// keyed by bucket centre. Empty buckets are omitted.
pub fn ratio_rolling(pset: &PSet, window_width: u32) -> Result<Vec<(f64, RatioFit)>> {
    if window_width == 0 {
        return Err(ChompError::Precondition("window width must be positive".into()));
    }
    let mut buckets: BTreeMap<u32, Vec<[u32; 4]>> = BTreeMap::new();
    for r in pset.sorted_rows() {
        buckets.entry((r[0] - 1) / window_width).or_default().push(r);
    }
    Ok(buckets
        .into_iter()
        .map(|(i, rows)| {
            let lo = i * window_width + 1;
            let hi = ((i + 1) * window_width).min(pset.n_max());
            let fit = RatioFit {
                method: RatioMethod::RollingWindow,
                limits: median_ratios(&rows),
                a_range: (lo, hi),
                power_law: None,
                sample_count: rows.len(),
            };
            ((lo + hi) as f64 / 2.0, fit)
        })
        .collect())
}

/// Per-`a` median of each ratio, for `a` in ascending order.
pub fn median_ratio_by_a(pset: &PSet) -> Vec<(u32, [f64; 3])> {
    let mut by_a: BTreeMap<u32, Vec<[u32; 4]>> = BTreeMap::new();
    for r in pset.sorted_rows() {
        by_a.entry(r[0]).or_default().push(r);
    }
    by_a.into_iter().map(|(a, rows)| (a, median_ratios(&rows))).collect()
}

/// Fits each per-`a` median ratio curve to `L + K a^(-p)`.
pub fn ratio_powerlaw_fit(pset: &PSet) -> Result<RatioFit> {
    let series = median_ratio_by_a(pset);
    if series.len() < 10 {
        return Err(ChompError::InsufficientData(format!(
            "power-law fit needs at least 10 distinct first-row lengths, found {}",
            series.len()
        )));
    }
    let mut fits = [PowerLawFit {
        limit: 0.0,
        scale: 0.0,
        exponent: 0.0,
        sse: 0.0,
    }; 3];
    for (i, fit) in fits.iter_mut().enumerate() {
        let points: Vec<(f64, f64)> = series.iter().map(|(a, m)| (*a as f64, m[i])).collect();
        *fit = fit_power_law(&points)?;
    }
    Ok(RatioFit {
        method: RatioMethod::PowerLaw,
        limits: [fits[0].limit, fits[1].limit, fits[2].limit],
        a_range: (series[0].0, series[series.len() - 1].0),
        power_law: Some(fits),
        sample_count: series.len(),
    })
}

/// Least-squares fit of `y = L + K x^(-p)`: grid search over
/// `p = 0.10, 0.11, ..., 3.00` with `(L, K)` solved in closed form at each
/// grid point.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<PowerLawFit> {
    if points.len() < 3 {
        return Err(ChompError::InsufficientData(format!(
            "{} points cannot determine three parameters",
            points.len()
        )));
    }
    let first = points[0].1;
    if points.iter().all(|&(_, y)| y == first) {
        return Err(ChompError::DegenerateFit(
            "all observations are identical; the exponent is unidentifiable".into(),
        ));
    }

    let mut best: Option<PowerLawFit> = None;
    for step in 10..=300u32 {
        let p = step as f64 / 100.0;
        let Some((limit, scale, sse)) = linear_fit(points, |x| x.powf(-p)) else {
            continue;
        };
        if best.is_none_or(|b| sse < b.sse) {
            best = Some(PowerLawFit {
                limit,
                scale,
                exponent: p,
                sse,
            });
        }
    }
    best.ok_or_else(|| ChompError::DegenerateFit("abscissae do not vary".into()))
}

/// Ordinary least squares of `y` on `basis(x)`; returns intercept, slope
/// and residual sum of squares.
fn linear_fit(points: &[(f64, f64)], basis: impl Fn(f64) -> f64) -> Option<(f64, f64, f64)> {
    let n = points.len() as f64;
    let (mut sx, mut sy) = (0.0, 0.0);
    for &(x, y) in points {
        sx += basis(x);
        sy += y;
    }
    let (mx, my) = (sx / n, sy / n);
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for &(x, y) in points {
        let dx = basis(x) - mx;
        sxx += dx * dx;
        sxy += dx * (y - my);
    }
    if sxx <= f64::EPSILON * n {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse = points
        .iter()
        .map(|&(x, y)| {
            let r = y - intercept - slope * basis(x);
            r * r
        })
        .sum();
    Some((intercept, slope, sse))
}

/// Ordinary least-squares line through `points`: `(slope, intercept)`.
pub(crate) fn least_squares_line(points: &[(f64, f64)]) -> Option<(f64, f64)> {
    linear_fit(points, |x| x).map(|(intercept, slope, _)| (slope, intercept))
}
