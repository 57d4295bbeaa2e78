//! Game state model: row-length tuples, their 64-bit packing, move
//! generation and layer-by-layer enumeration.
//!
//! A position on a `k`-row board is the tuple of remaining row lengths,
//! top row first. Rows never get longer going down, so every position is a
//! non-increasing tuple. The poisoned square sits at row 1, column 1.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{ChompError, Result};

/// Number of 16-bit fields in a packed code.
pub const MAX_PACKED_ROWS: usize = 4;
/// Exclusive upper bound on a packable row length.
pub const FIELD_LIMIT: u32 = 1 << 16;

const FIELD_BITS: u32 = 16;
const FIELD_MASK: u64 = 0xFFFF;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    rows: Vec<u32>,
}

impl Position {
    /// Builds a position, rejecting tuples that are not non-increasing or
    /// have lost the poisoned square.
    pub fn new(rows: impl Into<Vec<u32>>) -> Result<Self> {
        let rows = rows.into();
        validate_rows(&rows)?;
        Ok(Position { rows })
    }

    /// Starting position `(n, ..., n)` of a `k x n` board.
    pub fn start(n: u32, k: usize) -> Result<Self> {
        Position::new(vec![n; k])
    }

    /// Terminal position: only the poisoned square remains.
    pub fn terminal(k: usize) -> Self {
        let mut rows = vec![0; k.max(1)];
        rows[0] = 1;
        Position { rows }
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<u32>) -> Self {
        Position { rows }
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> u32 {
        self.rows[i]
    }

    /// Total number of remaining cells.
    pub fn cells(&self) -> u64 {
        self.rows.iter().map(|&r| r as u64).sum()
    }

    pub fn into_rows(self) -> Vec<u32> {
        self.rows
    }

    /// The same position viewed on a board with `k` rows: extra rows are
    /// empty, dropped rows must already be empty.
    pub fn with_rows(&self, k: usize) -> Result<Position> {
        if k < self.rows.len() && self.rows[k..].iter().any(|&r| r != 0) {
            return Err(ChompError::InvalidState(format!(
                "{self} has non-empty rows beyond row {k}"
            )));
        }
        let mut rows = self.rows.clone();
        rows.resize(k, 0);
        Position::new(rows)
    }
}

impl fmt::Debug for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

fn validate_rows(rows: &[u32]) -> Result<()> {
    if rows.is_empty() {
        return Err(ChompError::InvalidState("position has no rows".into()));
    }
    if rows.windows(2).any(|w| w[0] < w[1]) {
        return Err(ChompError::InvalidState(format!(
            "{:?} is not non-increasing",
            rows
        )));
    }
    if rows[0] == 0 {
        return Err(ChompError::InvalidState(
            "the poisoned square has been taken (all rows empty)".into(),
        ));
    }
    Ok(())
}

/// A move: take the square at `row`, `col` (both 1-based) together with
/// every square below-and-right of it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Move {
    pub row: usize,
    pub col: u32,
}

impl Move {
    pub fn is_poison(&self) -> bool {
        self.row == 1 && self.col == 1
    }

    /// Result of playing this move, or `None` if the square is absent or
    /// poisoned.
    pub fn apply(&self, p: &Position) -> Option<Position> {
        if self.is_poison() || self.row == 0 || self.row > p.k() || self.col == 0 {
            return None;
        }
        if self.col > p.rows[self.row - 1] {
            return None;
        }
        let cut = self.col - 1;
        let rows = p
            .rows
            .iter()
            .enumerate()
            .map(|(m, &r)| if m + 1 >= self.row { r.min(cut) } else { r })
            .collect();
        Some(Position { rows })
    }
}

/// All legal moves of `p`, row by row, columns ascending.
pub fn legal_moves(p: &Position) -> impl Iterator<Item = Move> + '_ {
    p.rows.iter().enumerate().flat_map(|(i, &len)| {
        let first = if i == 0 { 2 } else { 1 };
        (first..=len).map(move |col| Move { row: i + 1, col })
    })
}

/// Distinct positions reachable in one move.
pub fn successors(p: &Position) -> BTreeSet<Position> {
    legal_moves(p).filter_map(|m| m.apply(p)).collect()
}

/// 64-bit packed position. Row `i` occupies bits `48 - 16 i .. 64 - 16 i`,
/// so integer order matches lexicographic order of the rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PackedPosition(pub u64);

impl PackedPosition {
    pub fn code(self) -> u64 {
        self.0
    }

    /// Decodes the first `k` fields. Fields beyond `k` must be zero.
    pub fn unpack_rows(self, k: usize) -> Result<Position> {
        if k == 0 || k > MAX_PACKED_ROWS {
            return Err(ChompError::EncodingOverflow(format!(
                "cannot unpack {k} rows from a 4-field code"
            )));
        }
        let fields = decode_fields(self.0);
        if fields[k..].iter().any(|&f| f != 0) {
            return Err(ChompError::InvalidState(format!(
                "code {:#018x} has non-zero fields beyond row {k}",
                self.0
            )));
        }
        Position::new(fields[..k].to_vec())
            .map_err(|_| ChompError::InvalidState(format!("code {:#018x} decodes to {:?}", self.0, fields)))
    }
}

impl fmt::LowerHex for PackedPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

#[inline]
pub(crate) fn encode_fields(rows: [u32; MAX_PACKED_ROWS]) -> u64 {
    (rows[0] as u64) << 48 | (rows[1] as u64) << 32 | (rows[2] as u64) << 16 | rows[3] as u64
}

#[inline]
pub(crate) fn decode_fields(code: u64) -> [u32; MAX_PACKED_ROWS] {
    let mut out = [0u32; MAX_PACKED_ROWS];
    for (i, slot) in out.iter_mut().enumerate() {
        let shift = FIELD_BITS * (MAX_PACKED_ROWS - 1 - i) as u32;
        *slot = ((code >> shift) & FIELD_MASK) as u32;
    }
    out
}

/// Packs a position with at most four rows; missing rows encode as zero.
pub fn pack(p: &Position) -> Result<PackedPosition> {
    if p.k() > MAX_PACKED_ROWS {
        return Err(ChompError::EncodingOverflow(format!(
            "{} rows do not fit in four 16-bit fields",
            p.k()
        )));
    }
    let mut fields = [0u32; MAX_PACKED_ROWS];
    for (slot, &r) in fields.iter_mut().zip(&p.rows) {
        if r >= FIELD_LIMIT {
            return Err(ChompError::EncodingOverflow(format!(
                "row length {r} does not fit in 16 bits"
            )));
        }
        *slot = r;
    }
    Ok(PackedPosition(encode_fields(fields)))
}

/// Inverse of [`pack`] for four-row positions.
pub fn unpack(x: PackedPosition) -> Result<Position> {
    x.unpack_rows(MAX_PACKED_ROWS)
}

/// Streams every non-increasing `k`-tuple with component sum `s` and first
/// component at most `n_max`, in lexicographic order.
pub fn enumerate_layer(s: u64, n_max: u32, k: usize) -> LayerIter {
    LayerIter::new(s, n_max, k)
}

pub struct LayerIter {
    current: Option<Vec<u32>>,
    n_max: u32,
}

impl LayerIter {
    fn new(s: u64, n_max: u32, k: usize) -> Self {
        // s = 0 would be the empty board, which is not a valid position.
        let current = if k == 0 || s == 0 || s > k as u64 * n_max as u64 {
            None
        } else {
            min_fill(s, k, n_max)
        };
        LayerIter { current, n_max }
    }

    fn advance(&self, x: &[u32]) -> Option<Vec<u32>> {
        let k = x.len();
        let total: u64 = x.iter().map(|&v| v as u64).sum();
        let mut prefix_sum = total;
        // Rightmost slot that can grow by one while the suffix is refilled
        // as small as possible.
        for i in (0..k).rev() {
            prefix_sum -= x[i] as u64;
            let cap = if i == 0 { self.n_max } else { x[i - 1] };
            let grown = x[i] + 1;
            if grown > cap || prefix_sum + grown as u64 > total {
                continue;
            }
            let rem = total - prefix_sum - grown as u64;
            let len = k - i - 1;
            if len == 0 {
                continue;
            }
            if let Some(suffix) = min_fill(rem, len, grown) {
                let mut next = x[..i].to_vec();
                next.push(grown);
                next.extend(suffix);
                return Some(next);
            }
        }
        None
    }
}

impl Iterator for LayerIter {
    type Item = Position;

    fn next(&mut self) -> Option<Position> {
        let cur = self.current.take()?;
        self.current = self.advance(&cur);
        Some(Position::from_rows_unchecked(cur))
    }
}

/// Lexicographically smallest non-increasing `len`-tuple summing to `sum`
/// with every entry at most `cap`.
fn min_fill(sum: u64, len: usize, cap: u32) -> Option<Vec<u32>> {
    if sum > len as u64 * cap as u64 {
        return None;
    }
    let mut out = Vec::with_capacity(len);
    let mut rem = sum;
    for slots in (1..=len as u64).rev() {
        let v = rem.div_ceil(slots) as u32;
        out.push(v);
        rem -= v as u64;
    }
    Some(out)
}

/// Number of non-increasing `k`-tuples with entries in `0..=n` (including
/// the all-zero tuple), i.e. `C(n + k, k)`.
pub fn tuple_count(n: u32, k: usize) -> u128 {
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        acc = acc * (n as u128 + i) / i;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos(r: &[u32]) -> Position {
        Position::new(r.to_vec()).unwrap()
    }

    #[test]
    fn pack_examples() {
        assert_eq!(pack(&pos(&[1, 0, 0, 0])).unwrap().0, 0x0001000000000000);
        assert_eq!(pack(&pos(&[2, 2, 1, 0])).unwrap().0, 0x0002000200010000);
        assert_eq!(pack(&pos(&[500, 500, 500, 500])).unwrap().0, 0x01F401F401F401F4);
    }

    #[test]
    fn pack_rejects_overflow() {
        assert!(matches!(
            pack(&pos(&[70000, 0, 0, 0])),
            Err(ChompError::EncodingOverflow(_))
        ));
        assert!(matches!(
            pack(&pos(&[1, 1, 1, 1, 1])),
            Err(ChompError::EncodingOverflow(_))
        ));
    }

    #[test]
    fn unpack_examples() {
        assert_eq!(unpack(PackedPosition(0x0001000000000000)).unwrap(), pos(&[1, 0, 0, 0]));
        assert_eq!(unpack(PackedPosition(0x0002000200020001)).unwrap(), pos(&[2, 2, 2, 1]));
        assert!(matches!(
            unpack(PackedPosition(0x0000000100000000)),
            Err(ChompError::InvalidState(_))
        ));
        assert!(unpack(PackedPosition(0)).is_err());
    }

    #[test]
    fn unpack_rows_requires_empty_tail() {
        let three = PackedPosition(0x0003000200010000);
        assert_eq!(three.unpack_rows(3).unwrap(), pos(&[3, 2, 1]));
        assert!(PackedPosition(0x0003000200010001).unpack_rows(3).is_err());
    }

    #[test]
    fn successor_examples() {
        assert!(successors(&pos(&[1, 0, 0, 0])).is_empty());
        let s: Vec<_> = successors(&pos(&[2, 1, 0, 0])).into_iter().collect();
        assert_eq!(s, vec![pos(&[1, 1, 0, 0]), pos(&[2, 0, 0, 0])]);
        let s: Vec<_> = successors(&pos(&[2, 2, 1, 0])).into_iter().collect();
        assert_eq!(
            s,
            vec![
                pos(&[1, 1, 1, 0]),
                pos(&[2, 0, 0, 0]),
                pos(&[2, 1, 1, 0]),
                pos(&[2, 2, 0, 0])
            ]
        );
    }

    #[test]
    fn layer_examples() {
        let l: Vec<_> = enumerate_layer(1, 500, 4).collect();
        assert_eq!(l, vec![pos(&[1, 0, 0, 0])]);
        let l: Vec<_> = enumerate_layer(3, 500, 4).collect();
        assert_eq!(l, vec![pos(&[1, 1, 1, 0]), pos(&[2, 1, 0, 0]), pos(&[3, 0, 0, 0])]);
        let l: Vec<_> = enumerate_layer(3, 2, 4).collect();
        assert_eq!(l, vec![pos(&[1, 1, 1, 0]), pos(&[2, 1, 0, 0])]);
        assert_eq!(enumerate_layer(9, 2, 4).count(), 0);
        assert_eq!(enumerate_layer(0, 2, 4).count(), 0);
        assert_eq!(enumerate_layer(8, 2, 4).collect::<Vec<_>>(), vec![pos(&[2, 2, 2, 2])]);
    }

    #[test]
    fn position_validation() {
        assert!(Position::new(vec![0, 0, 0, 0]).is_err());
        assert!(Position::new(vec![1, 2, 0, 0]).is_err());
        assert!(Position::new(Vec::<u32>::new()).is_err());
        assert_eq!(Position::start(3, 4).unwrap(), pos(&[3, 3, 3, 3]));
        assert_eq!(Position::terminal(3), pos(&[1, 0, 0]));
    }

    #[test]
    fn tuple_count_small() {
        // (n+k choose k): k=4, n=2 -> 15
        assert_eq!(tuple_count(2, 4), 15);
        assert_eq!(tuple_count(500, 4), 2_656_615_626);
    }
}
