use std::sync::OnceLock;

use chomp4::analysis::{
    cone, d_autocorrelation, mod_chi2_scan, ratio_powerlaw_fit, ratio_rolling, ratio_windowed_median, Triple,
    TripleUniverse,
};
use chomp4::report::{self, AnalysisKind};
use chomp4::store::DSequence;
use chomp4::{build_triple_index, solve, PSet, SolveConfig};

fn p150() -> &'static PSet {
    static P: OnceLock<PSet> = OnceLock::new();
    P.get_or_init(|| solve(&SolveConfig::new(150, 4)).unwrap())
}

fn ordered(l: &[f64; 3]) -> bool {
    0.0 <= l[2] && l[2] <= l[1] && l[1] <= l[0] && l[0] <= 1.0
}

#[test]
fn ratio_estimators_ordered_and_consistent() {
    let p = p150();
    let w = ratio_windowed_median(p, 0.9).unwrap();
    let pl = ratio_powerlaw_fit(p).unwrap();
    let rolling = ratio_rolling(p, 25).unwrap();
    assert!(ordered(&w.limits) && ordered(&pl.limits));
    assert!(rolling.iter().all(|(_, f)| ordered(&f.limits)));
    assert!(pl.power_law.unwrap().iter().all(|f| f.exponent > 0.0));
    let last = &rolling.last().unwrap().1;
    for i in 0..3 {
        assert!((last.limits[i] - w.limits[i]).abs() < 0.01, "coordinate {i}");
    }
}

#[test]
fn autocorrelation_bounds() {
    let d = DSequence::from_pset(p150());
    let ac = d_autocorrelation(d.values(), 500).unwrap();
    assert_eq!(ac.r[0], 1.0);
    assert!(ac.r.iter().all(|r| r.abs() <= 1.0 + 1e-12));
    for &l in &ac.peak_lags {
        assert!(ac.r[l] > ac.r[l - 1]);
    }
    assert!(ac.peak_lags.windows(2).all(|w| ac.r[w[0]] >= ac.r[w[1]]));
}

/// Wilson-Hilferty approximation of the chi-squared 0.99 quantile.
fn chi2_q99(dof: f64) -> f64 {
    let h = 2.0 / (9.0 * dof);
    dof * (1.0 - h + 2.326_348 * h.sqrt()).powi(3)
}

#[test]
fn chi2_null_when_label_ignores_residue() {
    // a - b runs uniformly over 0..8400 while the label is the parity of c.
    let mut triples = Vec::new();
    for g in 0..8400u32 {
        let c = (g * 7919) % 13;
        triples.push(Triple::new(c + g, c, c));
    }
    let labels = triples.iter().map(|t| t.c % 2 == 0).collect();
    let u = TripleUniverse::from_parts(triples, labels).unwrap();
    for m in mod_chi2_scan(&u, &[7, 8, 56, 112]) {
        assert!(m.chi2 < chi2_q99(m.dof as f64), "m={} chi2={}", m.modulus, m.chi2);
    }
}

#[test]
fn extending_set_contains_three_row_p_positions_but_not_conversely() {
    let audit = chomp4::analysis::audit_unique_extension(&build_triple_index(p150()), 150);
    assert!(audit.three_row_not_extending.is_empty());
    assert!(audit.extending_three_row_n * 2 > audit.extending_within_bound);
    assert_eq!(audit.max_multiplicity(), 1);
}

#[test]
fn cone_reports_censoring() {
    let p = p150();
    let u = TripleUniverse::from_index(&build_triple_index(p), 150);
    let fit = cone::cone_fit(u.extending(), &cone::slice_values(5, 100), Some(150)).unwrap();
    assert!(!fit.censored.is_empty());
    let last_fit = fit.slices.last().unwrap().0;
    assert!(fit.censored.iter().all(|&(c, _)| c > last_fit));
    assert_eq!(fit.slices.len() + fit.censored.len() + fit.skipped.len(), 20);
}

#[test]
fn reports_are_deterministic() {
    let p = solve(&SolveConfig::new(60, 4)).unwrap();
    for kind in AnalysisKind::ALL {
        let a = report::analyze(kind, &p, 7).unwrap();
        let b = report::analyze(kind, &p, 7).unwrap();
        assert_eq!(a, b, "{}", kind.name());
        assert!(a.passed);
        assert!(a.text.contains("n_max: 60"));
    }
}

#[test]
fn plot_series_are_two_column() {
    let p = solve(&SolveConfig::new(80, 4)).unwrap();
    for kind in [report::PlotKind::Ratios, report::PlotKind::Autocorr] {
        let text = report::plotdata(kind, &p).unwrap();
        let mut series = 0;
        for line in text.lines() {
            if line.starts_with("# series=") {
                series += 1;
            } else if !line.is_empty() && line != "x,y" {
                let cols: Vec<&str> = line.split(',').collect();
                assert_eq!(cols.len(), 2, "{line}");
                assert!(cols.iter().all(|c| c.parse::<f64>().is_ok()), "{line}");
            }
        }
        assert!(series >= 2);
    }
}
