//! Structural analyses over a tabulated P-set.
//!
//! Most analyses work on the *triple universe*: every `(a, b, c)` with
//! `a >= b >= c >= 0` and `1 <= a <= n_max`, labelled by whether some `d`
//! completes it to a P-position.

pub mod algebra;
pub mod classifier;
pub mod cone;
pub mod extension;
pub mod period;
pub mod ratios;

pub use algebra::{cubic_search, trig_proximity_report, Cubic, TrigProximity};
pub use classifier::{train_mask_classifier, ClassifierConfig, ClassifierModel};
pub use cone::{cone_fit, ConeFit};
pub use extension::{audit_unique_extension, ExtensionAudit};
pub use period::{d_autocorrelation, mod_chi2_scan, AutocorrResult, ModScanResult};
pub use ratios::{fit_power_law, ratio_powerlaw_fit, ratio_rolling, ratio_windowed_median, PowerLawFit, RatioFit, RatioMethod};

use crate::error::{ChompError, Result};
use crate::solver::TripleIndex;

/// Period under study for the extension mask.
pub const MASK_PERIOD: u32 = 112;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl Triple {
    pub fn new(a: u32, b: u32, c: u32) -> Self {
        Triple { a, b, c }
    }

    pub fn gap(&self) -> u32 {
        self.a - self.b
    }
}

impl std::fmt::Display for Triple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// Triples paired with their extension label.
#[derive(Clone, Debug, Default)]
pub struct TripleUniverse {
    triples: Vec<Triple>,
    labels: Vec<bool>,
}

impl TripleUniverse {
    /// All valid triples with `1 <= a <= n_max`, in lexicographic order.
    pub fn from_index(index: &TripleIndex, n_max: u32) -> Self {
        let mut triples = Vec::new();
        let mut labels = Vec::new();
        for a in 1..=n_max {
            for b in 0..=a {
                for c in 0..=b {
                    triples.push(Triple::new(a, b, c));
                    labels.push(index.get(a, b, c).is_some());
                }
            }
        }
        TripleUniverse { triples, labels }
    }

    pub fn from_parts(triples: Vec<Triple>, labels: Vec<bool>) -> Result<Self> {
        if triples.len() != labels.len() {
            return Err(ChompError::Precondition(format!(
                "{} triples but {} labels",
                triples.len(),
                labels.len()
            )));
        }
        if let Some(t) = triples.iter().find(|t| t.a < t.b || t.b < t.c) {
            return Err(ChompError::InvalidState(format!("{t} is not non-increasing")));
        }
        Ok(TripleUniverse { triples, labels })
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn labels(&self) -> &[bool] {
        &self.labels
    }

    pub fn iter(&self) -> impl Iterator<Item = (Triple, bool)> + '_ {
        self.triples.iter().copied().zip(self.labels.iter().copied())
    }

    pub fn extending(&self) -> impl Iterator<Item = Triple> + '_ {
        self.iter().filter(|&(_, l)| l).map(|(t, _)| t)
    }

    pub fn extending_count(&self) -> usize {
        self.labels.iter().filter(|&&l| l).count()
    }
}

/// Median of a non-empty slice; averages the two middle values for even
/// lengths. Sorts in place.
pub(crate) fn median(values: &mut [f64]) -> f64 {
    debug_assert!(!values.is_empty());
    values.sort_by(|a, b| a.total_cmp(b));
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}
