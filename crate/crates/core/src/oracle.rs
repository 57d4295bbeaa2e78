//! Reference solver used to check the optimized one.
//!
//! Works directly from the rules: a position is a list of row lengths, a
//! move picks a present square other than the poisoned corner and deletes
//! it with everything below and to the right. Positions are evaluated top
//! down with a plain memo map; no packing, no layers.

use std::collections::{BTreeSet, HashMap};

use crate::error::{ChompError, Result};
use crate::position::Position;

/// Largest board width `oracle_pset` accepts without an explicit override.
pub fn default_ceiling(k: usize) -> u32 {
    match k {
        0 | 1 => 10_000,
        2 => 1_000,
        3 => 60,
        4 => 25,
        _ => 10,
    }
}

#[derive(Debug, Default, Clone)]
pub struct OracleCache {
    memo: HashMap<Vec<u32>, bool>,
}

impl OracleCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    /// Every memoized entry agrees with its successors' entries.
    pub fn check_fixpoint(&self) -> bool {
        self.memo.iter().all(|(rows, &p)| {
            let reaches_p = options(rows)
                .iter()
                .any(|q| self.memo.get(q).copied().expect("successor evaluated before parent"));
            p != reaches_p
        })
    }
}

/// Positions reachable in one move from `rows`.
fn options(rows: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for (i, &len) in rows.iter().enumerate() {
        for j in 1..=len {
            if i == 0 && j == 1 {
                continue; // poison
            }
            // Removing square (i, j) leaves j - 1 squares in row i and in
            // every row under it that was longer.
            let next: Vec<u32> = rows
                .iter()
                .enumerate()
                .map(|(m, &r)| if m >= i && r >= j { j - 1 } else { r })
                .collect();
            out.push(next);
        }
    }
    out
}

/// True iff `p` is a loss for the player to move.
pub fn oracle_is_p(p: &Position, cache: &mut OracleCache) -> bool {
    let root = p.rows().to_vec();
    if let Some(&v) = cache.memo.get(&root) {
        return v;
    }
    // Explicit stack: a frame is pushed, its unresolved children are pushed
    // above it, and it is finalised once they have all been resolved.
    let mut stack: Vec<(Vec<u32>, bool)> = vec![(root.clone(), false)];
    while let Some((rows, expanded)) = stack.pop() {
        if cache.memo.contains_key(&rows) {
            continue;
        }
        let children = options(&rows);
        if expanded {
            let wins = children.iter().any(|c| cache.memo[c]);
            cache.memo.insert(rows, !wins);
            continue;
        }
        let pending: Vec<Vec<u32>> = children
            .into_iter()
            .filter(|c| !cache.memo.contains_key(c))
            .collect();
        stack.push((rows, true));
        for c in pending {
            stack.push((c, false));
        }
    }
    cache.memo[&root]
}

/// All P-positions with first row at most `n_max`, by exhaustive sweep.
pub fn oracle_pset(n_max: u32, k: usize) -> Result<BTreeSet<Position>> {
    oracle_pset_with_ceiling(n_max, k, default_ceiling(k))
}

pub fn oracle_pset_with_ceiling(n_max: u32, k: usize, ceiling: u32) -> Result<BTreeSet<Position>> {
    if k == 0 {
        return Err(ChompError::InvalidConfig("k must be at least 1".into()));
    }
    if n_max > ceiling {
        return Err(ChompError::Precondition(format!(
            "oracle refuses n_max {n_max} for k={k} (ceiling {ceiling})"
        )));
    }
    let mut cache = OracleCache::new();
    let mut out = BTreeSet::new();
    let mut rows = vec![0u32; k];
    sweep(&mut rows, 0, n_max, &mut |r| {
        if r[0] >= 1 {
            let p = Position::new(r.to_vec()).expect("sweep yields valid tuples");
            if oracle_is_p(&p, &mut cache) {
                out.insert(p);
            }
        }
    });
    Ok(out)
}

fn sweep(rows: &mut Vec<u32>, i: usize, cap: u32, f: &mut impl FnMut(&[u32])) {
    if i == rows.len() {
        f(rows);
        return;
    }
    for v in 0..=cap {
        rows[i] = v;
        sweep(rows, i + 1, v, f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos(r: &[u32]) -> Position {
        Position::new(r.to_vec()).unwrap()
    }

    #[test]
    fn single_positions() {
        let mut c = OracleCache::new();
        assert!(oracle_is_p(&pos(&[1, 0, 0, 0]), &mut c));
        assert!(!oracle_is_p(&pos(&[2, 2, 0, 0]), &mut c));
        assert!(oracle_is_p(&pos(&[3, 1, 1, 0]), &mut c));
        assert!(c.check_fixpoint());
    }

    #[test]
    fn small_sets() {
        let two: Vec<_> = oracle_pset(2, 2).unwrap().into_iter().collect();
        assert_eq!(two, vec![pos(&[1, 0]), pos(&[2, 1])]);
        let four: Vec<_> = oracle_pset(2, 4).unwrap().into_iter().collect();
        assert_eq!(
            four,
            vec![pos(&[1, 0, 0, 0]), pos(&[2, 1, 0, 0]), pos(&[2, 2, 1, 0]), pos(&[2, 2, 2, 1])]
        );
    }

    #[test]
    fn three_rows_n3_golden() {
        let got: Vec<_> = oracle_pset(3, 3).unwrap().into_iter().collect();
        // (3,3,2) is not here: it moves to (3,1,1).
        let want: Vec<_> = [[1, 0, 0], [2, 1, 0], [2, 2, 1], [3, 1, 1], [3, 2, 0]]
            .iter()
            .map(|r| pos(r))
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn refuses_above_ceiling() {
        assert!(matches!(oracle_pset(26, 4), Err(ChompError::Precondition(_))));
        assert!(matches!(oracle_pset(61, 3), Err(ChompError::Precondition(_))));
    }

    #[test]
    fn deep_chain_does_not_overflow() {
        let mut c = OracleCache::new();
        // 1 x n: P only at n = 1.
        assert!(!oracle_is_p(&pos(&[2000]), &mut c));
    }
}
