//! Plain-text and CSV renderings of each analysis.
//!
//! `analyze NAME` writes `DIR/NAME.txt` (a human-readable summary) and
//! `DIR/NAME.csv` (the underlying table). Plot data is one CSV per figure
//! panel: blocks of `x,y` rows, each introduced by a `# series=NAME` line
//! and separated by a blank line.
//!
//! All numbers are formatted with fixed precision, so identical inputs give
//! byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::analysis::{
    self, cone, ClassifierConfig, ClassifierModel, ConeFit, ExtensionAudit, ModScanResult, RatioFit, TripleUniverse,
};
use crate::error::{ChompError, Result};
use crate::solver::{build_triple_index, PSet};
use crate::store::DSequence;

pub const UNIVERSE_NOTE: &str = "universe: all (a,b,c) with a >= b >= c >= 0 and 1 <= a <= n_max";

/// Moduli compared by the residue scan.
pub const SCAN_MODULI: [u32; 10] = [7, 8, 14, 16, 28, 56, 84, 112, 168, 224];

/// Analyses available to `analyze`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnalysisKind {
    Unique,
    Ratios,
    Period,
    Cone,
    Classifier,
    Cubics,
}

impl AnalysisKind {
    pub const ALL: [AnalysisKind; 6] = [
        AnalysisKind::Unique,
        AnalysisKind::Ratios,
        AnalysisKind::Period,
        AnalysisKind::Cone,
        AnalysisKind::Classifier,
        AnalysisKind::Cubics,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AnalysisKind::Unique => "unique",
            AnalysisKind::Ratios => "ratios",
            AnalysisKind::Period => "period",
            AnalysisKind::Cone => "cone",
            AnalysisKind::Classifier => "classifier",
            AnalysisKind::Cubics => "cubics",
        }
    }
}

/// A rendered analysis. `passed` is false when a checked property failed.
#[derive(Clone, Debug, PartialEq)]
pub struct Bundle {
    pub name: &'static str,
    pub text: String,
    pub csv: String,
    pub passed: bool,
}

impl Bundle {
    /// Writes `NAME.txt` and `NAME.csv` into `dir`, creating it if needed.
    pub fn write(&self, dir: impl AsRef<Path>) -> Result<(PathBuf, PathBuf)> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir).map_err(|e| ChompError::io(dir, e))?;
        let txt = dir.join(format!("{}.txt", self.name));
        let csv = dir.join(format!("{}.csv", self.name));
        fs::write(&txt, &self.text).map_err(|e| ChompError::io(&txt, e))?;
        fs::write(&csv, &self.csv).map_err(|e| ChompError::io(&csv, e))?;
        Ok((txt, csv))
    }
}

fn header(out: &mut String, title: &str, pset: &PSet) {
    let _ = writeln!(out, "# {title}");
    let _ = writeln!(out, "n_max: {}", pset.n_max());
    let _ = writeln!(out, "p_positions: {}", pset.count());
}

/// Runs one analysis with its default settings.
pub fn analyze(kind: AnalysisKind, pset: &PSet, seed: u64) -> Result<Bundle> {
    if pset.k() != 4 {
        return Err(ChompError::Precondition(format!(
            "analyses need a four-row P-set, got k={}",
            pset.k()
        )));
    }
    match kind {
        AnalysisKind::Unique => Ok(unique_bundle(pset)),
        AnalysisKind::Ratios => ratios_bundle(pset),
        AnalysisKind::Period => period_bundle(pset),
        AnalysisKind::Cone => cone_bundle(pset),
        AnalysisKind::Classifier => classifier_bundle(pset, seed),
        AnalysisKind::Cubics => cubics_bundle(pset),
    }
}

fn universe(pset: &PSet) -> TripleUniverse {
    TripleUniverse::from_index(&build_triple_index(pset), pset.n_max())
}

pub fn unique_bundle(pset: &PSet) -> Bundle {
    let audit = analysis::audit_unique_extension(&build_triple_index(pset), pset.n_max());
    render_unique(pset, &audit)
}

pub fn render_unique(pset: &PSet, audit: &ExtensionAudit) -> Bundle {
    let mut text = String::new();
    header(&mut text, "unique extension audit", pset);
    let _ = writeln!(text, "{UNIVERSE_NOTE}");
    let _ = writeln!(text, "triples_total: {}", audit.triples_total);
    let _ = writeln!(text, "triples_extending: {}", audit.triples_extending);
    let _ = writeln!(text, "fraction: {:.6}", audit.fraction);
    let _ = writeln!(text, "violations: {}", audit.violations.len());
    let _ = writeln!(text, "max_multiplicity: {}", audit.max_multiplicity());
    let _ = writeln!(text, "three_row_bound: {}", audit.three_row_bound);
    let _ = writeln!(text, "three_row_p_positions: {}", audit.three_row_p_count);
    let _ = writeln!(text, "three_row_p_not_extending: {}", audit.three_row_not_extending.len());
    let _ = writeln!(
        text,
        "extending_within_bound: {} (of which three-row N-positions: {})",
        audit.extending_within_bound, audit.extending_three_row_n
    );
    let _ = writeln!(text, "holds: {}", audit.holds());

    let mut csv = String::from("kind,a,b,c,d_values\n");
    for (t, ds) in &audit.violations {
        let ds: Vec<String> = ds.iter().map(u32::to_string).collect();
        let _ = writeln!(csv, "violation,{},{},{},{}", t.a, t.b, t.c, ds.join(" "));
    }
    for t in &audit.three_row_not_extending {
        let _ = writeln!(csv, "three_row_p_not_extending,{},{},{},", t.a, t.b, t.c);
    }
    Bundle {
        name: "unique",
        text,
        csv,
        passed: audit.holds(),
    }
}

/// Windowed median, power-law fit (if identifiable) and rolling buckets.
pub type RatioFits = (RatioFit, Option<RatioFit>, Vec<(f64, RatioFit)>);

/// Windowed median over the top tenth of `a`, the power-law fit and the
/// rolling buckets of width 25.
pub fn ratio_fits(pset: &PSet) -> Result<RatioFits> {
    let windowed = analysis::ratio_windowed_median(pset, 0.9)?;
    let power = match analysis::ratio_powerlaw_fit(pset) {
        Ok(f) => Some(f),
        Err(ChompError::DegenerateFit(_) | ChompError::InsufficientData(_)) => None,
        Err(e) => return Err(e),
    };
    let rolling = analysis::ratio_rolling(pset, 25)?;
    Ok((windowed, power, rolling))
}

fn ratios_bundle(pset: &PSet) -> Result<Bundle> {
    let (windowed, power, rolling) = ratio_fits(pset)?;
    let mut text = String::new();
    header(&mut text, "row ratio limits", pset);
    let line = |f: &RatioFit| {
        format!(
            "{}: L1={:.6} L2={:.6} L3={:.6} a in [{}, {}] samples={}",
            f.method.name(),
            f.l1(),
            f.l2(),
            f.l3(),
            f.a_range.0,
            f.a_range.1,
            f.sample_count
        )
    };
    let _ = writeln!(text, "{}", line(&windowed));
    match &power {
        Some(p) => {
            let _ = writeln!(text, "{}", line(p));
            for (i, fit) in p.power_law.iter().flatten().enumerate() {
                let _ = writeln!(
                    text,
                    "  L{}: K={:.6} p={:.2} sse={:.6}",
                    i + 1,
                    fit.scale,
                    fit.exponent,
                    fit.sse
                );
            }
            for i in 0..3 {
                let _ = writeln!(
                    text,
                    "  |L{} power_law - windowed| = {:.6}",
                    i + 1,
                    (p.limits[i] - windowed.limits[i]).abs()
                );
            }
        }
        None => {
            let _ = writeln!(text, "power_law: not identifiable, windowed median stands");
        }
    }
    if let Some((_, last)) = rolling.last() {
        let _ = writeln!(text, "last {}", line(last));
    }

    let mut csv = String::from("method,a_lo,a_hi,samples,l1,l2,l3\n");
    let mut row = |f: &RatioFit| {
        let _ = writeln!(
            csv,
            "{},{},{},{},{:.6},{:.6},{:.6}",
            f.method.name(),
            f.a_range.0,
            f.a_range.1,
            f.sample_count,
            f.l1(),
            f.l2(),
            f.l3()
        );
    };
    row(&windowed);
    if let Some(p) = &power {
        row(p);
    }
    for (_, f) in &rolling {
        row(f);
    }
    Ok(Bundle {
        name: "ratios",
        text,
        csv,
        passed: true,
    })
}

/// Largest lag the autocorrelation can use on this sequence, capped at 500.
pub fn autocorr_max_lag(len: usize) -> usize {
    500.min(len.saturating_sub(1) / 2)
}

fn period_bundle(pset: &PSet) -> Result<Bundle> {
    let dseq = DSequence::from_pset(pset);
    let ac = analysis::d_autocorrelation(dseq.values(), autocorr_max_lag(dseq.len()))?;
    let scan = analysis::mod_chi2_scan(&universe(pset), &SCAN_MODULI);

    let mut text = String::new();
    header(&mut text, "period evidence", pset);
    let _ = writeln!(text, "autocorrelation max_lag: {}", ac.max_lag());
    let top: Vec<String> = ac
        .peak_lags
        .iter()
        .take(10)
        .map(|&l| format!("{l} ({:.4})", ac.r[l]))
        .collect();
    let _ = writeln!(text, "top peaks: {}", top.join(", "));
    for lag in [112, 224, 336] {
        if lag <= ac.max_lag() {
            let rank = ac
                .peaks_up_to(336)
                .iter()
                .position(|&l| l == lag)
                .map_or("not a local maximum".to_string(), |r| format!("rank {} in [2,336]", r + 1));
            let _ = writeln!(text, "lag {lag}: r={:.4}, {rank}", ac.r[lag]);
        }
    }
    let _ = writeln!(text, "{UNIVERSE_NOTE}");
    let best = scan.iter().max_by(|a, b| a.chi2.total_cmp(&b.chi2));
    for m in &scan {
        let _ = writeln!(text, "chi2 mod {}: {:.2} (dof {})", m.modulus, m.chi2, m.dof);
    }
    if let Some(b) = best {
        let _ = writeln!(text, "largest chi2: mod {}", b.modulus);
    }

    let mut csv = String::from("modulus,chi2,dof,classes_used\n");
    for ModScanResult {
        modulus,
        chi2,
        dof,
        classes_used,
    } in &scan
    {
        let _ = writeln!(csv, "{modulus},{chi2:.4},{dof},{classes_used}");
    }
    Ok(Bundle {
        name: "period",
        text,
        csv,
        passed: true,
    })
}

/// Cone fit over `c = 5, 10, ..., min(300, n_max)` with board-edge slices
/// censored.
pub fn default_cone_fit(pset: &PSet) -> Result<ConeFit> {
    let u = universe(pset);
    let c_max = 300.min(pset.n_max());
    cone::cone_fit(u.extending(), &cone::slice_values(5, c_max), Some(pset.n_max()))
}

fn cone_bundle(pset: &PSet) -> Result<Bundle> {
    let fit = default_cone_fit(pset)?;
    let mut text = String::new();
    header(&mut text, "extension cone", pset);
    let _ = writeln!(text, "width: max(a-b) - min(a-b) over extending triples at fixed c");
    let _ = writeln!(text, "slices fitted: {}", fit.slices.len());
    let _ = writeln!(text, "slices censored by the board edge: {}", fit.censored.len());
    let _ = writeln!(text, "slices empty: {}", fit.skipped.len());
    if let (Some(first), Some(last)) = (fit.slices.first(), fit.slices.last()) {
        let _ = writeln!(text, "c range fitted: [{}, {}]", first.0, last.0);
    }
    let _ = writeln!(text, "slope: {:.6}", fit.slope);
    let _ = writeln!(text, "intercept: {:.6}", fit.intercept);
    for (class, resid) in &fit.residuals_by_class {
        let _ = writeln!(text, "  residual c mod 112 = {class}: {resid:.4}");
    }

    let mut rows: Vec<(u32, String)> = Vec::new();
    rows.extend(fit.slices.iter().map(|&(c, w)| (c, format!("{c},{w},fit"))));
    rows.extend(fit.censored.iter().map(|&(c, w)| (c, format!("{c},{w},censored"))));
    rows.extend(fit.skipped.iter().map(|&c| (c, format!("{c},,empty"))));
    rows.sort();
    let mut csv = String::from("c,width,status\n");
    for (_, r) in rows {
        csv.push_str(&r);
        csv.push('\n');
    }
    Ok(Bundle {
        name: "cone",
        text,
        csv,
        passed: true,
    })
}

/// Class-weighted model (the headline) and the unweighted one.
pub fn classifier_models(pset: &PSet, seed: u64) -> Result<(ClassifierModel, ClassifierModel)> {
    let u = universe(pset);
    let cfg = ClassifierConfig::default().seed(seed);
    let weighted = analysis::train_mask_classifier(&u, &cfg)?;
    let plain = analysis::train_mask_classifier(
        &u,
        &ClassifierConfig {
            balance_classes: false,
            ..cfg
        },
    )?;
    Ok((weighted, plain))
}

fn classifier_bundle(pset: &PSet, seed: u64) -> Result<Bundle> {
    let (weighted, plain) = classifier_models(pset, seed)?;
    let mut text = String::new();
    header(&mut text, "extension mask classifier", pset);
    let _ = writeln!(text, "{UNIVERSE_NOTE}");
    let _ = writeln!(text, "features: standardised c, one-hot (a-b) mod 112, bias");
    let cfg = &weighted.config;
    let _ = writeln!(
        text,
        "seed={} split={} learning_rate={} epochs={}",
        cfg.seed, cfg.split, cfg.learning_rate, cfg.epochs
    );
    for (label, m) in [("class-weighted", &weighted), ("unweighted", &plain)] {
        let x = &m.metrics;
        let _ = writeln!(
            text,
            "{label}: raw_accuracy={:.4} balanced_accuracy={:.4} majority_baseline={:.4} train={} test={} balanced_sample={}",
            x.raw_accuracy, x.balanced_accuracy, x.majority_baseline, x.train_size, x.test_size, x.balanced_size
        );
    }

    let mut csv = String::from("feature,weighted,unweighted\n");
    let _ = writeln!(csv, "bias,{:.6},{:.6}", weighted.bias, plain.bias);
    let _ = writeln!(csv, "c,{:.6},{:.6}", weighted.c_weight, plain.c_weight);
    for (r, (w, p)) in weighted.residue_weights.iter().zip(&plain.residue_weights).enumerate() {
        let _ = writeln!(csv, "residue_{r},{w:.6},{p:.6}");
    }
    Ok(Bundle {
        name: "classifier",
        text,
        csv,
        passed: true,
    })
}

fn cubics_bundle(pset: &PSet) -> Result<Bundle> {
    let windowed = analysis::ratio_windowed_median(pset, 0.9)?;
    let found = analysis::cubic_search(windowed.limits, 12, 0.002);
    let trig = analysis::trig_proximity_report(windowed.l3());
    let mut text = String::new();
    header(&mut text, "algebraic identity search", pset);
    let _ = writeln!(
        text,
        "limits (windowed median): {:.6}, {:.6}, {:.6}",
        windowed.l1(),
        windowed.l2(),
        windowed.l3()
    );
    let _ = writeln!(text, "monic cubics, |p|,|q|,|r| <= 12, tolerance 0.002: {} match", found.len());
    for c in &found {
        let _ = writeln!(text, "  {c}");
    }
    let _ = writeln!(
        text,
        "|L3 - cos(3 pi/7)| = |{:.6} - {:.6}| = {:.6} (proximity only, no identity claimed)",
        trig.estimate, trig.target, trig.difference
    );
    let mut csv = String::from("p,q,r,root1,root2,root3\n");
    for c in &found {
        let _ = writeln!(
            csv,
            "{},{},{},{:.9},{:.9},{:.9}",
            c.p, c.q, c.r, c.roots[0], c.roots[1], c.roots[2]
        );
    }
    Ok(Bundle {
        name: "cubics",
        text,
        csv,
        passed: true,
    })
}

/// Figure data kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotKind {
    Ratios,
    Autocorr,
}

fn series(out: &mut String, name: &str, points: impl IntoIterator<Item = (f64, f64)>) {
    if !out.is_empty() {
        out.push('\n');
    }
    let _ = writeln!(out, "# series={name}");
    out.push_str("x,y\n");
    for (x, y) in points {
        let _ = writeln!(out, "{x},{y:.6}");
    }
}

/// Rolling medians of each ratio against bucket centre, plus horizontal
/// reference lines at the windowed-median limits.
pub fn plot_ratios(pset: &PSet) -> Result<String> {
    let (windowed, _, rolling) = ratio_fits(pset)?;
    let mut out = String::new();
    let names = ["b/a", "c/a", "d/a"];
    for (i, name) in names.iter().enumerate() {
        series(&mut out, name, rolling.iter().map(|(x, f)| (*x, f.limits[i])));
    }
    let lo = rolling.first().map_or(0.0, |(x, _)| *x);
    let hi = rolling.last().map_or(0.0, |(x, _)| *x);
    for i in 0..3 {
        let l = windowed.limits[i];
        series(&mut out, &format!("L{}", i + 1), [(lo, l), (hi, l)]);
    }
    Ok(out)
}

/// `r[lag]` for every lag, and the ranked local maxima as a second series.
pub fn plot_autocorr(pset: &PSet) -> Result<String> {
    let dseq = DSequence::from_pset(pset);
    let ac = analysis::d_autocorrelation(dseq.values(), autocorr_max_lag(dseq.len()))?;
    let mut out = String::new();
    series(&mut out, "r", ac.r.iter().enumerate().map(|(l, &r)| (l as f64, r)));
    let mut peaks = ac.peak_lags.clone();
    peaks.sort_unstable();
    series(&mut out, "peaks", peaks.into_iter().map(|l| (l as f64, ac.r[l])));
    Ok(out)
}

pub fn plotdata(kind: PlotKind, pset: &PSet) -> Result<String> {
    match kind {
        PlotKind::Ratios => plot_ratios(pset),
        PlotKind::Autocorr => plot_autocorr(pset),
    }
}
