//! Width of the band of extending triples at fixed `c`.

use std::collections::BTreeMap;

use crate::error::{ChompError, Result};

use super::ratios::least_squares_line;
use super::{Triple, MASK_PERIOD};

#[derive(Clone, Debug, PartialEq)]
pub struct ConeFit {
    /// `(c, width)` for each non-empty requested slice.
    pub slices: Vec<(u32, u32)>,
    /// Requested slices that held no extending triple.
    pub skipped: Vec<u32>,
    /// `(c, width)` slices left out of the fit because the band has reached
    /// the largest gap the board allows, `n_max - c`; their width is
    /// truncated by the board rather than by the game.
    pub censored: Vec<(u32, u32)>,
    pub slope: f64,
    pub intercept: f64,
    /// Mean residual per `c mod 112` class present among the slices.
    pub residuals_by_class: BTreeMap<u32, f64>,
}

/// Slices `c = step, 2 step, ..., <= c_max`.
pub fn slice_values(step: u32, c_max: u32) -> Vec<u32> {
    (1..).map(|i| i * step).take_while(|&c| c <= c_max).collect()
}

/// Width at each `c` is `max(a - b) - min(a - b)` over extending triples
/// with that `c`; a least-squares line through the slices gives the slope.
///
/// With `n_max` given, slices whose largest gap is at least `n_max - c - 1`
/// are reported in `censored`, as is every larger slice, and excluded from
/// the line. The extreme gap
/// `n_max - c` needs `b = c` and `a = n_max` at once, so the observed edge
/// of a truncated band sits at either bound.
pub fn cone_fit(
    extending: impl IntoIterator<Item = Triple>,
    c_values: &[u32],
    n_max: Option<u32>,
) -> Result<ConeFit> {
    let wanted: BTreeMap<u32, ()> = c_values.iter().map(|&c| (c, ())).collect();
    let mut range: BTreeMap<u32, (u32, u32)> = BTreeMap::new();
    for t in extending {
        if !wanted.contains_key(&t.c) {
            continue;
        }
        let g = t.gap();
        range
            .entry(t.c)
            .and_modify(|(lo, hi)| {
                *lo = (*lo).min(g);
                *hi = (*hi).max(g);
            })
            .or_insert((g, g));
    }

    let mut slices = Vec::new();
    let mut skipped = Vec::new();
    let mut censored = Vec::new();
    for &c in wanted.keys() {
        match range.get(&c) {
            Some(&(lo, hi)) => {
                // Room shrinks as c grows while the band widens, so once the
                // edge binds it binds for every larger c.
                if !censored.is_empty() || n_max.is_some_and(|n| c + hi + 1 >= n) {
                    censored.push((c, hi - lo));
                } else {
                    slices.push((c, hi - lo));
                }
            }
            None => skipped.push(c),
        }
    }
    if slices.len() < 3 {
        return Err(ChompError::InsufficientData(format!(
            "{} non-empty slices, need at least 3",
            slices.len()
        )));
    }

    let points: Vec<(f64, f64)> = slices.iter().map(|&(c, w)| (c as f64, w as f64)).collect();
    let (slope, intercept) = least_squares_line(&points)
        .ok_or_else(|| ChompError::DegenerateFit("all slices share one c".into()))?;

    let mut sums: BTreeMap<u32, (f64, usize)> = BTreeMap::new();
    for &(c, w) in &slices {
        let resid = w as f64 - (slope * c as f64 + intercept);
        let e = sums.entry(c % MASK_PERIOD).or_insert((0.0, 0));
        e.0 += resid;
        e.1 += 1;
    }
    let residuals_by_class = sums.into_iter().map(|(k, (s, n))| (k, s / n as f64)).collect();

    Ok(ConeFit {
        slices,
        skipped,
        censored,
        slope,
        intercept,
        residuals_by_class,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn synthetic_band_slope() {
        let mut ext = Vec::new();
        for c in 1..=300u32 {
            let top = 11 * c / 8;
            for g in 0..=top {
                let b = c + 1;
                ext.push(Triple::new(b + g, b, c));
            }
        }
        let fit = cone_fit(ext, &slice_values(5, 300), None).unwrap();
        assert!((fit.slope - 1.375).abs() < 0.01, "slope {}", fit.slope);
        assert_eq!(fit.slices.len(), 60);
        assert!(fit.skipped.is_empty());
    }

    #[test]
    fn empty_slices_skipped_and_too_few_rejected() {
        let ext = vec![Triple::new(10, 5, 5), Triple::new(12, 5, 5), Triple::new(20, 10, 10)];
        let err = cone_fit(ext.clone(), &[5, 10, 15], None).unwrap_err();
        assert!(matches!(err, ChompError::InsufficientData(_)));
        let mut more = ext;
        more.push(Triple::new(30, 20, 20));
        let fit = cone_fit(more, &[5, 10, 15, 20], None).unwrap();
        assert_eq!(fit.skipped, vec![15]);
        assert_eq!(fit.slices, vec![(5, 2), (10, 0), (20, 0)]);
    }

    #[test]
    fn board_edge_slices_censored() {
        // True band a-b in [0, 2c], but a <= 60 truncates it once 3c > 60.
        let n = 60;
        let mut ext = Vec::new();
        for c in 1..=40u32 {
            for g in 0..=2 * c {
                if c + g <= n {
                    ext.push(Triple::new(c + g, c, c));
                }
            }
        }
        let cs = slice_values(2, 40);
        let naive = cone_fit(ext.clone(), &cs, None).unwrap();
        assert!(naive.slope < 1.5);
        let fit = cone_fit(ext, &cs, Some(n)).unwrap();
        assert!((fit.slope - 2.0).abs() < 1e-9, "slope {}", fit.slope);
        assert_eq!(fit.censored.first(), Some(&(20, 40)));
        assert_eq!(fit.censored.len(), 11);
        assert_eq!(fit.slices.len(), 9);
    }
}
