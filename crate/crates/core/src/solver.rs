//! Retrograde tabulation of P-positions.
//!
//! States are classified one cell-count layer at a time. Every move removes
//! at least one cell, so a state only ever consults strictly earlier layers;
//! all states of a layer can therefore be classified concurrently against a
//! frozen view, with the newly found P-positions merged at the barrier.
//!
//! Only P-positions are recorded. During the solve they live in a dense
//! table keyed by the first `k - 1` rows: two P-positions can never share
//! that prefix, since the one with the longer bottom row could move to the
//! other by shortening its bottom row.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use rustc_hash::FxHashSet;

use crate::error::{ChompError, Result};
use crate::position::{decode_fields, encode_fields, pack, tuple_count, Position, FIELD_LIMIT, MAX_PACKED_ROWS};

/// Default refusal threshold on the number of states a solve would visit.
pub const DEFAULT_STATE_CEILING: u128 = 3_000_000_000;

const NO_ENTRY: u16 = u16::MAX;

/// Order in which moves are tried when looking for a move to a P-position.
/// Affects speed only.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MoveOrder {
    /// Bottom row first, longest remaining prefix first.
    #[default]
    BottomRowFirst,
    /// Top row first, longest remaining prefix first.
    TopRowFirst,
    /// Top row first, columns ascending.
    Lexicographic,
}

/// How a state is checked for a move into the P-set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Engine {
    /// Constant number of lookups per state in min-indexes over earlier
    /// layers, grouped by the shape of the successor.
    #[default]
    Indexed,
    /// Generates every move and probes the P-set with each successor.
    MoveScan,
}

impl MoveOrder {
    pub const ALL: [MoveOrder; 3] = [
        MoveOrder::BottomRowFirst,
        MoveOrder::TopRowFirst,
        MoveOrder::Lexicographic,
    ];
}

#[derive(Clone, Debug)]
pub struct SolveConfig {
    pub n_max: u32,
    pub k: usize,
    pub thread_count: usize,
    pub move_order: MoveOrder,
    pub engine: Engine,
    /// Largest state count accepted without complaint.
    pub state_ceiling: u128,
    /// Emit one line per finished layer on stderr.
    pub progress: bool,
}

impl SolveConfig {
    pub fn new(n_max: u32, k: usize) -> Self {
        SolveConfig {
            n_max,
            k,
            thread_count: 1,
            move_order: MoveOrder::default(),
            engine: Engine::default(),
            state_ceiling: DEFAULT_STATE_CEILING,
            progress: false,
        }
    }

    pub fn threads(mut self, thread_count: usize) -> Self {
        self.thread_count = thread_count;
        self
    }

    pub fn move_order(mut self, order: MoveOrder) -> Self {
        self.move_order = order;
        self
    }

    pub fn engine(mut self, engine: Engine) -> Self {
        self.engine = engine;
        self
    }

    pub fn state_ceiling(mut self, ceiling: u128) -> Self {
        self.state_ceiling = ceiling;
        self
    }

    pub fn progress(mut self, on: bool) -> Self {
        self.progress = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_max == 0 {
            return Err(ChompError::InvalidConfig("n_max must be at least 1".into()));
        }
        if self.n_max >= FIELD_LIMIT - 1 {
            return Err(ChompError::EncodingOverflow(format!(
                "n_max {} does not fit in a 16-bit field",
                self.n_max
            )));
        }
        if self.k == 0 || self.k > MAX_PACKED_ROWS {
            return Err(ChompError::InvalidConfig(format!(
                "k must be in 1..=4, got {}",
                self.k
            )));
        }
        if self.thread_count == 0 {
            return Err(ChompError::InvalidConfig("thread_count must be at least 1".into()));
        }
        Ok(())
    }

    /// Number of states with first row in `1..=n_max`.
    pub fn state_estimate(&self) -> u128 {
        tuple_count(self.n_max, self.k) - 1
    }
}

/// Every P-position with first row at most `n_max` on a `k`-row board.
#[derive(Clone, Debug)]
pub struct PSet {
    members: FxHashSet<u64>,
    n_max: u32,
    k: usize,
}

impl PartialEq for PSet {
    fn eq(&self, other: &Self) -> bool {
        self.n_max == other.n_max && self.k == other.k && self.members == other.members
    }
}

impl Eq for PSet {}

impl PSet {
    /// Builds a set from packed codes, checking that each decodes to a valid
    /// `k`-row position within the bound.
    pub fn from_codes(k: usize, n_max: u32, codes: impl IntoIterator<Item = u64>) -> Result<PSet> {
        let mut members = FxHashSet::default();
        for code in codes {
            let p = crate::position::PackedPosition(code).unpack_rows(k)?;
            if p.row(0) > n_max {
                return Err(ChompError::OutOfRange {
                    position: p.to_string(),
                    n_max,
                });
            }
            members.insert(code);
        }
        Ok(PSet { members, n_max, k })
    }

    pub fn count(&self) -> usize {
        self.members.len()
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn contains_code(&self, code: u64) -> bool {
        self.members.contains(&code)
    }

    /// Packed codes in ascending (lexicographic) order.
    pub fn sorted_codes(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.members.iter().copied().collect();
        v.sort_unstable();
        v
    }

    /// Members as four-field row arrays, lexicographically sorted. Rows
    /// beyond `k` are zero.
    pub fn sorted_rows(&self) -> Vec<[u32; 4]> {
        self.sorted_codes().into_iter().map(decode_fields).collect()
    }

    pub fn positions(&self) -> Vec<Position> {
        self.sorted_rows()
            .into_iter()
            .map(|r| Position::from_rows_unchecked(r[..self.k].to_vec()))
            .collect()
    }

    /// Restriction to positions whose first row is at most `n_max`.
    pub fn truncate(&self, n_max: u32) -> PSet {
        let n_max = n_max.min(self.n_max);
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&c| decode_fields(c)[0] <= n_max)
            .collect();
        PSet {
            members,
            n_max,
            k: self.k,
        }
    }

    pub fn is_p(&self, p: &Position) -> Result<bool> {
        is_p(self, p)
    }
}

/// Tabulates all P-positions described by `cfg`.
pub fn solve(cfg: &SolveConfig) -> Result<PSet> {
    cfg.validate()?;
    let estimate = cfg.state_estimate();
    if estimate > cfg.state_ceiling {
        return Err(ChompError::ResourceLimit {
            estimate,
            ceiling: cfg.state_ceiling,
        });
    }
    if cfg.thread_count == 1 {
        return Ok(solve_layers(cfg, false));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.thread_count)
        .build()
        .map_err(|e| ChompError::InvalidConfig(format!("thread pool: {e}")))?;
    Ok(pool.install(|| solve_layers(cfg, true)))
}

fn solve_layers(cfg: &SolveConfig, parallel: bool) -> PSet {
    match cfg.engine {
        Engine::Indexed => run_layers(cfg, parallel, IndexedTables::new(cfg.n_max)),
        Engine::MoveScan => run_layers(cfg, parallel, PrefixTable::new(cfg.n_max, cfg.k)),
    }
}

/// Read side used while classifying a layer, write side used at the barrier.
trait Frontier: Sync {
    fn is_p_state(&self, rows: &[u32; MAX_PACKED_ROWS], k: usize, order: MoveOrder) -> bool;
    fn insert(&mut self, rows: [u32; MAX_PACKED_ROWS], k: usize);
}

fn run_layers<F: Frontier>(cfg: &SolveConfig, parallel: bool, mut frontier: F) -> PSet {
    let n = cfg.n_max;
    let k = cfg.k;
    let mut found: Vec<u64> = Vec::new();
    let started = Instant::now();
    let last = k as u32 * n;

    for s in 1..=last {
        let lo = s.div_ceil(k as u32).max(1);
        let hi = s.min(n);
        let view = &frontier;
        let classify = |a: u32| -> Vec<u64> {
            let mut out = Vec::new();
            let mut rows = [0u32; MAX_PACKED_ROWS];
            rows[0] = a;
            for_each_suffix(&mut rows, 1, k, s - a, a, &mut |r| {
                if view.is_p_state(r, k, cfg.move_order) {
                    out.push(encode_fields(*r));
                }
            });
            out
        };
        let layer: Vec<u64> = if parallel {
            (lo..=hi).into_par_iter().flat_map_iter(classify).collect()
        } else {
            (lo..=hi).flat_map(classify).collect()
        };
        for &code in &layer {
            frontier.insert(decode_fields(code), k);
        }
        found.extend_from_slice(&layer);
        if cfg.progress {
            eprintln!(
                "layer {s}/{last}: {} P-positions ({:.1}s)",
                found.len(),
                started.elapsed().as_secs_f64()
            );
        }
    }

    PSet {
        members: found.into_iter().collect(),
        n_max: n,
        k,
    }
}

/// Calls `f` for each non-increasing completion of `rows[from..k]` with the
/// given sum and entries at most `cap`, in lexicographic order.
fn for_each_suffix(
    rows: &mut [u32; MAX_PACKED_ROWS],
    from: usize,
    k: usize,
    sum: u32,
    cap: u32,
    f: &mut impl FnMut(&[u32; MAX_PACKED_ROWS]),
) {
    let slots = (k - from) as u32;
    if slots == 0 {
        if sum == 0 {
            f(rows);
        }
        return;
    }
    if sum > slots * cap {
        return;
    }
    let lo = sum.div_ceil(slots);
    for v in lo..=cap.min(sum) {
        rows[from] = v;
        for_each_suffix(rows, from + 1, k, sum - v, v, f);
    }
    rows[from] = 0;
}

/// Dense map from a `(k-1)`-row prefix to the unique bottom-row length that
/// completes it to a P-position.
struct PrefixTable {
    slots: Vec<u16>,
    /// `binom[i][x]` is the rank contribution of value `x` at prefix slot `i`.
    binom: Vec<Vec<usize>>,
}

impl PrefixTable {
    fn new(n: u32, k: usize) -> Self {
        let m = k - 1;
        let binom = (0..m)
            .map(|i| {
                (0..=n as usize)
                    .map(|x| binomial(x + m - 1 - i, m - i))
                    .collect()
            })
            .collect();
        let size = tuple_count(n, m) as usize;
        PrefixTable {
            slots: vec![NO_ENTRY; size],
            binom,
        }
    }

    #[inline]
    fn rank(&self, rows: &[u32; MAX_PACKED_ROWS], k: usize) -> usize {
        self.binom[..k - 1].iter().zip(rows).map(|(b, &x)| b[x as usize]).sum()
    }

    #[inline]
    fn contains(&self, rows: &[u32; MAX_PACKED_ROWS], k: usize) -> bool {
        self.slots[self.rank(rows, k)] == rows[k - 1] as u16
    }

    /// Tries every move in `row` (0-based). A move cutting the row back to
    /// `x` cells truncates this row and all rows below it to `x`.
    #[inline]
    fn row_reaches_p(&self, rows: &[u32; MAX_PACKED_ROWS], k: usize, row: usize, descending: bool) -> bool {
        let len = rows[row];
        let lowest = if row == 0 { 1 } else { 0 };
        if len <= lowest {
            return false;
        }
        let check = |x: u32| {
            let mut next = *rows;
            for v in next[row..k].iter_mut() {
                *v = (*v).min(x);
            }
            self.contains(&next, k)
        };
        if descending {
            (lowest..len).rev().any(check)
        } else {
            (lowest..len).any(check)
        }
    }
}

impl Frontier for PrefixTable {
    fn insert(&mut self, rows: [u32; MAX_PACKED_ROWS], k: usize) {
        let r = self.rank(&rows, k);
        debug_assert_eq!(self.slots[r], NO_ENTRY, "two P-positions share a prefix");
        self.slots[r] = rows[k - 1] as u16;
    }

    fn is_p_state(&self, rows: &[u32; MAX_PACKED_ROWS], k: usize, order: MoveOrder) -> bool {
        match order {
            MoveOrder::BottomRowFirst => {
                for row in (0..k).rev() {
                    if self.row_reaches_p(rows, k, row, true) {
                        return false;
                    }
                }
            }
            MoveOrder::TopRowFirst | MoveOrder::Lexicographic => {
                let descending = order == MoveOrder::TopRowFirst;
                for row in 0..k {
                    if self.row_reaches_p(rows, k, row, descending) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Min-indexes over the P-positions of completed layers.
///
/// Any successor of `(a, b, c, d)` has one of a dozen shapes, depending on
/// which row the move is in and where the cut column falls relative to the
/// lower rows. For each shape the index keeps, per fixed part, the smallest
/// free coordinate of a recorded P-position; a state reaches a P-position
/// of that shape iff that minimum lies in the range the move can produce.
/// Successors always have fewer cells, so every witness is already recorded
/// when a state is classified. Fewer than four rows are handled by padding
/// with empty rows, which never change.
struct IndexedTables {
    ranks: Ranks,
    /// (a,b,c) -> d
    ext: Vec<u16>,
    /// (a,b) -> min x with P(a,b,x,x)
    row3_diag: Vec<u16>,
    /// (a,b,d) -> min x > d with P(a,b,x,d)
    row3_free: Vec<u16>,
    /// a -> min y with P(a,y,y,y)
    row2_diag: Vec<u16>,
    /// (a,d) -> min y > d with P(a,y,y,d)
    row2_pair: Vec<u16>,
    /// (a,c,d) -> min y > c with P(a,y,c,d)
    row2_free: Vec<u16>,
    /// min x with P(x,x,x,x)
    row1_diag: u16,
    /// d -> min x > d with P(x,x,x,d)
    row1_triple: Vec<u16>,
    /// (c,d) -> min x > c with P(x,x,c,d)
    row1_pair: Vec<u16>,
    /// (b,c,d) -> min x > b with P(x,b,c,d)
    row1_free: Vec<u16>,
}

struct Ranks {
    tri: Vec<usize>,
    pair: Vec<usize>,
}

impl Ranks {
    fn new(n: u32) -> Self {
        let n = n as usize + 1;
        Ranks {
            tri: (0..=n).map(|x| x * (x + 1) * (x + 2) / 6).collect(),
            pair: (0..=n).map(|x| x * (x + 1) / 2).collect(),
        }
    }

    #[inline]
    fn r3(&self, a: u32, b: u32, c: u32) -> usize {
        self.tri[a as usize] + self.pair[b as usize] + c as usize
    }

    #[inline]
    fn r2(&self, a: u32, b: u32) -> usize {
        self.pair[a as usize] + b as usize
    }
}

#[inline]
fn lower(slot: &mut u16, v: u32) {
    *slot = (*slot).min(v as u16);
}

impl IndexedTables {
    fn new(n: u32) -> Self {
        let ranks = Ranks::new(n);
        let n1 = n as usize + 1;
        let size3 = ranks.tri[n1];
        let size2 = ranks.pair[n1];
        IndexedTables {
            ranks,
            ext: vec![NO_ENTRY; size3],
            row3_diag: vec![NO_ENTRY; size2],
            row3_free: vec![NO_ENTRY; size3],
            row2_diag: vec![NO_ENTRY; n1],
            row2_pair: vec![NO_ENTRY; size2],
            row2_free: vec![NO_ENTRY; size3],
            row1_diag: NO_ENTRY,
            row1_triple: vec![NO_ENTRY; n1],
            row1_pair: vec![NO_ENTRY; size2],
            row1_free: vec![NO_ENTRY; size3],
        }
    }

    #[inline]
    fn row4(&self, [a, b, c, d]: [u32; 4]) -> bool {
        (self.ext[self.ranks.r3(a, b, c)] as u32) < d
    }

    /// Cuts at `x < c`: `(a,b,x,x)` for `x <= d`, `(a,b,x,d)` above.
    #[inline]
    #[allow(clippy::if_same_then_else)] // same answer, different probe order
    fn row3(&self, [a, b, c, d]: [u32; 4], descending: bool) -> bool {
        if c == 0 {
            return false;
        }
        let low = || self.row3_diag[self.ranks.r2(a, b)] as u32 <= d.min(c - 1);
        let high = || (self.row3_free[self.ranks.r3(a, b, d)] as u32) < c;
        if descending {
            high() || low()
        } else {
            low() || high()
        }
    }

    /// Cuts at `y < b`: `(a,y,y,y)`, `(a,y,y,d)`, `(a,y,c,d)` as `y` passes
    /// `d` and `c`.
    #[inline]
    fn row2(&self, [a, b, c, d]: [u32; 4], descending: bool) -> bool {
        if b == 0 {
            return false;
        }
        let top = b - 1;
        let check = |shape: usize| match shape {
            0 => self.row2_diag[a as usize] as u32 <= d.min(top),
            1 => self.row2_pair[self.ranks.r2(a, d)] as u32 <= c.min(top),
            _ => (self.row2_free[self.ranks.r3(a, c, d)] as u32) < b,
        };
        if descending {
            (0..3).rev().any(check)
        } else {
            (0..3).any(check)
        }
    }

    /// Cuts at `1 <= x < a`: `(x,x,x,x)`, `(x,x,x,d)`, `(x,x,c,d)`,
    /// `(x,b,c,d)` as `x` passes `d`, `c` and `b`.
    #[inline]
    fn row1(&self, [a, b, c, d]: [u32; 4], descending: bool) -> bool {
        if a <= 1 {
            return false;
        }
        let top = a - 1;
        let check = |shape: usize| match shape {
            0 => self.row1_diag as u32 <= d.min(top),
            1 => self.row1_triple[d as usize] as u32 <= c.min(top),
            2 => self.row1_pair[self.ranks.r2(c, d)] as u32 <= b.min(top),
            _ => (self.row1_free[self.ranks.r3(b, c, d)] as u32) < a,
        };
        if descending {
            (0..4).rev().any(check)
        } else {
            (0..4).any(check)
        }
    }
}

impl Frontier for IndexedTables {
    fn is_p_state(&self, rows: &[u32; MAX_PACKED_ROWS], _k: usize, order: MoveOrder) -> bool {
        let r = *rows;
        let reaches = match order {
            MoveOrder::BottomRowFirst => {
                self.row4(r) || self.row3(r, true) || self.row2(r, true) || self.row1(r, true)
            }
            MoveOrder::TopRowFirst => {
                self.row1(r, true) || self.row2(r, true) || self.row3(r, true) || self.row4(r)
            }
            MoveOrder::Lexicographic => {
                self.row1(r, false) || self.row2(r, false) || self.row3(r, false) || self.row4(r)
            }
        };
        !reaches
    }

    fn insert(&mut self, [a, b, c, d]: [u32; MAX_PACKED_ROWS], _k: usize) {
        let rk = &self.ranks;
        let e = &mut self.ext[rk.r3(a, b, c)];
        debug_assert_eq!(*e, NO_ENTRY, "two P-positions share a prefix");
        *e = d as u16;

        if c == d {
            lower(&mut self.row3_diag[rk.r2(a, b)], c);
        } else {
            lower(&mut self.row3_free[rk.r3(a, b, d)], c);
        }

        if b == d {
            lower(&mut self.row2_diag[a as usize], b);
        } else if b == c {
            lower(&mut self.row2_pair[rk.r2(a, d)], b);
        } else {
            lower(&mut self.row2_free[rk.r3(a, c, d)], b);
        }

        if a == d {
            self.row1_diag = self.row1_diag.min(a as u16);
        } else if a == c {
            lower(&mut self.row1_triple[d as usize], a);
        } else if a == b {
            lower(&mut self.row1_pair[rk.r2(c, d)], a);
        } else {
            lower(&mut self.row1_free[rk.r3(b, c, d)], a);
        }
    }
}

fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    let mut acc: usize = 1;
    for i in 1..=r {
        acc = acc * (n + 1 - i) / i;
    }
    acc
}

/// Membership test against a tabulated set.
pub fn is_p(pset: &PSet, p: &Position) -> Result<bool> {
    if p.k() != pset.k {
        return Err(ChompError::InvalidState(format!(
            "{p} has {} rows, the set was tabulated for {}",
            p.k(),
            pset.k
        )));
    }
    if p.row(0) > pset.n_max {
        return Err(ChompError::OutOfRange {
            position: p.to_string(),
            n_max: pset.n_max,
        });
    }
    Ok(pset.contains_code(pack(p)?.code()))
}

/// P-positions grouped by their first three rows.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TripleIndex {
    map: BTreeMap<(u32, u32, u32), Vec<u32>>,
}

impl TripleIndex {
    pub fn get(&self, a: u32, b: u32, c: u32) -> Option<&[u32]> {
        self.map.get(&(a, b, c)).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Total number of indexed positions.
    pub fn total(&self) -> usize {
        self.map.values().map(Vec::len).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32, u32), &Vec<u32>)> {
        self.map.iter()
    }
}

pub fn build_triple_index(pset: &PSet) -> TripleIndex {
    let mut map: BTreeMap<(u32, u32, u32), Vec<u32>> = BTreeMap::new();
    for r in pset.sorted_rows() {
        map.entry((r[0], r[1], r[2])).or_default().push(r[3]);
    }
    TripleIndex { map }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos(r: &[u32]) -> Position {
        Position::new(r.to_vec()).unwrap()
    }

    #[test]
    fn n2_k4_matches_first_table_rows() {
        let p = solve(&SolveConfig::new(2, 4)).unwrap();
        assert_eq!(
            p.positions(),
            vec![pos(&[1, 0, 0, 0]), pos(&[2, 1, 0, 0]), pos(&[2, 2, 1, 0]), pos(&[2, 2, 2, 1])]
        );
    }

    #[test]
    fn n1_k2() {
        let p = solve(&SolveConfig::new(1, 2)).unwrap();
        assert_eq!(p.positions(), vec![pos(&[1, 0])]);
    }

    #[test]
    fn k1_only_terminal() {
        let p = solve(&SolveConfig::new(7, 1)).unwrap();
        assert_eq!(p.positions(), vec![pos(&[1])]);
    }

    #[test]
    fn is_p_examples() {
        let p = solve(&SolveConfig::new(4, 4)).unwrap();
        assert!(is_p(&p, &pos(&[3, 3, 1, 1])).unwrap());
        assert!(!is_p(&p, &pos(&[1, 1, 0, 0])).unwrap());
        assert!(is_p(&p, &pos(&[4, 2, 2, 0])).unwrap());
        assert!(matches!(
            is_p(&p, &pos(&[5, 0, 0, 0])),
            Err(ChompError::OutOfRange { .. })
        ));
    }

    #[test]
    fn triple_index_examples() {
        let p = solve(&SolveConfig::new(4, 4)).unwrap();
        let idx = build_triple_index(&p);
        assert_eq!(idx.get(2, 2, 2), Some(&[1][..]));
        assert_eq!(idx.get(2, 2, 0), None);
        assert_eq!(idx.get(4, 1, 1), Some(&[1][..]));
        assert_eq!(idx.total(), p.count());
    }

    #[test]
    fn config_validation() {
        assert!(SolveConfig::new(0, 4).validate().is_err());
        assert!(SolveConfig::new(5, 5).validate().is_err());
        assert!(SolveConfig::new(5, 0).validate().is_err());
        assert!(SolveConfig::new(5, 4).threads(0).validate().is_err());
        assert!(matches!(
            solve(&SolveConfig::new(600, 4)),
            Err(ChompError::ResourceLimit { .. })
        ));
        assert!(matches!(
            solve(&SolveConfig::new(3, 4).state_ceiling(10)),
            Err(ChompError::ResourceLimit { .. })
        ));
    }

    #[test]
    fn prefix_rank_is_a_bijection() {
        let n = 6;
        for k in 1..=4usize {
            let t = PrefixTable::new(n, k);
            let mut seen = vec![false; t.slots.len()];
            for s in 0..=(k as u32 * n) {
                let mut rows = [0u32; 4];
                for a in 0..=n.min(s) {
                    rows[0] = a;
                    for_each_suffix(&mut rows, 1, k, s - a, a, &mut |r| {
                        if r[k - 1] == 0 || k == 1 {
                            let i = t.rank(r, k);
                            assert!(!seen[i] || k == 1);
                            seen[i] = true;
                        }
                    });
                }
            }
            assert!(seen.iter().all(|&b| b), "k={k}");
        }
    }
}
