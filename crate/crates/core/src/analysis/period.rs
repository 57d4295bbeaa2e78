//! Periodicity evidence: autocorrelation of the fourth-row sequence and a
//! chi-squared scan of residue classes of `a - b`.

use crate::error::{ChompError, Result};

use super::TripleUniverse;

#[derive(Clone, Debug, PartialEq)]
pub struct AutocorrResult {
    /// `r[l]` for `l = 0..=max_lag`.
    pub r: Vec<f64>,
    /// Local maxima in `[2, max_lag]`, strongest first.
    pub peak_lags: Vec<usize>,
}

impl AutocorrResult {
    pub fn max_lag(&self) -> usize {
        self.r.len() - 1
    }

    /// Rank (0-based) of `lag` among the peaks, if it is one.
    pub fn peak_rank(&self, lag: usize) -> Option<usize> {
        self.peak_lags.iter().position(|&l| l == lag)
    }

    /// Peaks restricted to lags `<= max_lag`, strongest first.
    pub fn peaks_up_to(&self, max_lag: usize) -> Vec<usize> {
        self.peak_lags.iter().copied().filter(|&l| l <= max_lag).collect()
    }
}

/// Sample autocorrelation normalised by the full-sequence variance.
pub fn d_autocorrelation(values: &[u32], max_lag: usize) -> Result<AutocorrResult> {
    if values.len() <= 2 * max_lag {
        return Err(ChompError::Precondition(format!(
            "sequence of length {} is too short for max lag {max_lag}",
            values.len()
        )));
    }
    let n = values.len();
    let mean = values.iter().map(|&v| v as f64).sum::<f64>() / n as f64;
    let x: Vec<f64> = values.iter().map(|&v| v as f64 - mean).collect();
    let denom: f64 = x.iter().map(|v| v * v).sum();
    if denom == 0.0 {
        return Err(ChompError::ZeroVariance);
    }
    // One lag beyond max_lag so the last lag can be tested as a peak.
    let top = (max_lag + 1).min(n - 1);
    let full: Vec<f64> = (0..=top)
        .map(|lag| x[..n - lag].iter().zip(&x[lag..]).map(|(a, b)| a * b).sum::<f64>() / denom)
        .collect();

    let mut peaks: Vec<usize> = (2..=max_lag)
        .filter(|&l| l + 1 < full.len() && full[l] > full[l - 1] && full[l] >= full[l + 1])
        .collect();
    peaks.sort_by(|&a, &b| full[b].total_cmp(&full[a]).then(a.cmp(&b)));

    let mut r = full;
    r.truncate(max_lag + 1);
    Ok(AutocorrResult { r, peak_lags: peaks })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModScanResult {
    pub modulus: u32,
    pub chi2: f64,
    pub dof: usize,
    /// Residue classes with non-zero expected counts.
    pub classes_used: usize,
}

/// Chi-squared statistic of the `m x 2` table of `(a - b) mod m` against the
/// extension label, for each modulus.
pub fn mod_chi2_scan(universe: &TripleUniverse, moduli: &[u32]) -> Vec<ModScanResult> {
    moduli
        .iter()
        .map(|&m| chi2_for_key(universe, m, |t| t.gap()))
        .collect()
}

pub(crate) fn chi2_for_key(
    universe: &TripleUniverse,
    m: u32,
    key: impl Fn(&super::Triple) -> u32,
) -> ModScanResult {
    let m = m.max(1);
    let mut counts = vec![[0u64; 2]; m as usize];
    for (t, label) in universe.iter() {
        counts[(key(&t) % m) as usize][label as usize] += 1;
    }
    chi2_table(m, &counts)
}

/// Pearson chi-squared over rows of a two-column table; rows with zero
/// expected count are dropped.
pub(crate) fn chi2_table(m: u32, counts: &[[u64; 2]]) -> ModScanResult {
    let total: u64 = counts.iter().map(|r| r[0] + r[1]).sum();
    let positives: u64 = counts.iter().map(|r| r[1]).sum();
    let mut chi2 = 0.0;
    let mut used = 0;
    if total > 0 {
        let rate = [
            (total - positives) as f64 / total as f64,
            positives as f64 / total as f64,
        ];
        for row in counts {
            let row_total = (row[0] + row[1]) as f64;
            if row_total == 0.0 {
                continue;
            }
            used += 1;
            for col in 0..2 {
                let expected = row_total * rate[col];
                if expected > 0.0 {
                    let d = row[col] as f64 - expected;
                    chi2 += d * d / expected;
                }
            }
        }
    }
    ModScanResult {
        modulus: m,
        chi2,
        dof: used.max(1) - 1,
        classes_used: used,
    }
}
