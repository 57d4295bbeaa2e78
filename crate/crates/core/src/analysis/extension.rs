//! Audit of how many fourth-row completions each triple admits.

use crate::oracle;
use crate::solver::TripleIndex;

use super::{Triple, TripleUniverse};

#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionAudit {
    pub n_max: u32,
    pub triples_total: usize,
    pub triples_extending: usize,
    /// Triples with two or more completions, with the completions found.
    pub violations: Vec<(Triple, Vec<u32>)>,
    pub fraction: f64,
    /// Bound up to which three-row P-positions were compared.
    pub three_row_bound: u32,
    pub three_row_p_count: usize,
    /// Three-row P-positions whose triple does not extend. Expected empty.
    pub three_row_not_extending: Vec<Triple>,
    /// Extending triples within the bound that are three-row N-positions.
    pub extending_three_row_n: usize,
    /// Extending triples within the bound.
    pub extending_within_bound: usize,
}

impl ExtensionAudit {
    pub fn max_multiplicity(&self) -> usize {
        self.violations
            .iter()
            .map(|(_, ds)| ds.len())
            .max()
            .unwrap_or(usize::from(self.triples_extending > 0))
    }

    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.three_row_not_extending.is_empty()
    }
}

/// Counts extending triples, lists any with more than one completion and
/// compares the extending set with three-row P-positions up to the
/// oracle's default ceiling.
pub fn audit_unique_extension(index: &TripleIndex, n_max: u32) -> ExtensionAudit {
    audit_with_oracle_bound(index, n_max, oracle::default_ceiling(3))
}

pub fn audit_with_oracle_bound(index: &TripleIndex, n_max: u32, oracle_bound: u32) -> ExtensionAudit {
    let universe = TripleUniverse::from_index(index, n_max);
    let triples_total = universe.len();
    let triples_extending = universe.extending_count();

    let violations: Vec<(Triple, Vec<u32>)> = index
        .iter()
        .filter(|(&(a, _, _), ds)| a <= n_max && ds.len() > 1)
        .map(|(&(a, b, c), ds)| (Triple::new(a, b, c), ds.clone()))
        .collect();

    let bound = oracle_bound.min(n_max);
    let three_row = oracle::oracle_pset(bound, 3).unwrap_or_default();
    let three_row: Vec<Triple> = three_row
        .iter()
        .map(|p| Triple::new(p.row(0), p.row(1), p.row(2)))
        .collect();
    let three_row_not_extending = three_row
        .iter()
        .copied()
        .filter(|t| index.get(t.a, t.b, t.c).is_none())
        .collect();
    let extending_within_bound = universe.extending().filter(|t| t.a <= bound).count();
    let three_row_set: std::collections::BTreeSet<Triple> = three_row.iter().copied().collect();
    let extending_three_row_n = universe
        .extending()
        .filter(|t| t.a <= bound && !three_row_set.contains(t))
        .count();

    ExtensionAudit {
        n_max,
        triples_total,
        triples_extending,
        violations,
        fraction: if triples_total == 0 {
            0.0
        } else {
            triples_extending as f64 / triples_total as f64
        },
        three_row_bound: bound,
        three_row_p_count: three_row.len(),
        three_row_not_extending,
        extending_three_row_n,
        extending_within_bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{build_triple_index, solve, SolveConfig};

    #[test]
    fn n2_counts() {
        let p = solve(&SolveConfig::new(2, 4)).unwrap();
        let audit = audit_unique_extension(&build_triple_index(&p), 2);
        assert_eq!(audit.triples_total, 9);
        assert_eq!(audit.triples_extending, 4);
        assert!(audit.violations.is_empty());
        assert!((audit.fraction - 4.0 / 9.0).abs() < 1e-12);
        assert_eq!(audit.max_multiplicity(), 1);
        assert!(audit.holds());
    }

    #[test]
    fn extending_set_strictly_contains_three_row_p_positions() {
        let p = solve(&SolveConfig::new(40, 4)).unwrap();
        let audit = audit_unique_extension(&build_triple_index(&p), 40);
        assert_eq!(audit.three_row_bound, 40);
        assert!(audit.three_row_p_count > 0);
        assert!(audit.three_row_not_extending.is_empty());
        assert!(audit.extending_three_row_n > 0);
        assert_eq!(
            audit.extending_within_bound,
            audit.three_row_p_count + audit.extending_three_row_n
        );
    }
}
