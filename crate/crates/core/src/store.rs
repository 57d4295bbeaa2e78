//! Persistence: the `a,b,c,d` CSV table, the sorted binary cache and the
//! b-file export of the fourth-row sequence.
//!
//! CSV layout:
//!
//! ```text
//! a,b,c,d
//! 1,0,0,0
//! 2,1,0,0
//! # count=2
//! ```
//!
//! Rows are strictly increasing lexicographically and always carry exactly
//! four columns; a fifth column is rejected. The final line is the count
//! trailer, written without a trailing newline. Sets tabulated with fewer
//! than four rows pad with zero columns and carry an extra `# k=K n_max=N`
//! line just before the trailer. For four-row sets `n_max` is the largest
//! first row, since `(n, n-1, 0, 0)` is a P-position for every `n`.
//!
//! Cache layout (all little-endian): magic `CHMP`, `u16` version, `u16` k,
//! `u32` n_max, `u32` count, then `count` packed codes as `u64`, ascending.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{ChompError, MalformedRule, Result};
use crate::position::{decode_fields, encode_fields};
use crate::solver::PSet;

pub const CSV_HEADER: &str = "a,b,c,d";
pub const CACHE_MAGIC: &[u8; 4] = b"CHMP";
pub const CACHE_VERSION: u16 = 1;
const CACHE_HEADER_LEN: usize = 16;

/// Fourth-row lengths of the P-positions, in lexicographic order of the
/// full tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DSequence {
    values: Vec<u32>,
}

impl DSequence {
    pub fn new(values: Vec<u32>) -> Self {
        DSequence { values }
    }

    pub fn from_pset(pset: &PSet) -> Self {
        DSequence {
            values: pset.sorted_rows().iter().map(|r| r[3]).collect(),
        }
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Renders the CSV text for `pset`.
pub fn csv_string(pset: &PSet) -> String {
    let rows = pset.sorted_rows();
    let mut out = String::with_capacity(rows.len() * 16 + 32);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in &rows {
        let _ = writeln!(out, "{},{},{},{}", r[0], r[1], r[2], r[3]);
    }
    if pset.k() != 4 {
        let _ = writeln!(out, "# k={} n_max={}", pset.k(), pset.n_max());
    }
    let _ = write!(out, "# count={}", rows.len());
    out
}

pub fn write_csv(pset: &PSet, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, csv_string(pset)).map_err(|e| ChompError::io(path, e))
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<PSet> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| ChompError::io(path, e))?;
    parse_csv(&text, path)
}

fn parse_csv(text: &str, path: &Path) -> Result<PSet> {
    let bad = |line: usize, rule: MalformedRule| ChompError::Malformed {
        path: path.to_path_buf(),
        line,
        rule,
    };

    let mut lines = text.split('\n').enumerate().map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)));
    match lines.next() {
        Some((_, h)) if h == CSV_HEADER => {}
        Some((n, h)) => return Err(bad(n, MalformedRule::Header(h.to_string()))),
        None => return Err(bad(1, MalformedRule::Header(String::new()))),
    }

    let mut codes: Vec<u64> = Vec::new();
    let mut meta: Option<(usize, u32)> = None;
    let mut declared: Option<usize> = None;
    let mut last_line = 1;

    for (n, line) in lines {
        last_line = n;
        if declared.is_some() {
            if line.is_empty() {
                continue;
            }
            return Err(bad(n, MalformedRule::CountTrailer("content after the count trailer".into())));
        }
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(v) = comment.strip_prefix("count=") {
                let v: usize = v
                    .parse()
                    .map_err(|_| bad(n, MalformedRule::CountTrailer(format!("`{v}` is not a count"))))?;
                declared = Some(v);
            } else {
                meta = Some(parse_meta(comment).map_err(|m| bad(n, MalformedRule::Metadata(m)))?);
            }
            continue;
        }
        if meta.is_some() {
            return Err(bad(n, MalformedRule::Metadata("data row after metadata line".into())));
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(bad(n, MalformedRule::ColumnCount { found: fields.len() }));
        }
        let mut r = [0u32; 4];
        for (slot, f) in r.iter_mut().zip(&fields) {
            *slot = f
                .trim()
                .parse()
                .ok()
                .filter(|&v: &u32| v < crate::position::FIELD_LIMIT)
                .ok_or_else(|| bad(n, MalformedRule::NotAnInteger(f.to_string())))?;
        }
        if r[0] == 0 || r.windows(2).any(|w| w[0] < w[1]) {
            return Err(bad(n, MalformedRule::NotNonIncreasing));
        }
        let code = encode_fields(r);
        if codes.last().is_some_and(|&prev| prev >= code) {
            return Err(bad(n, MalformedRule::Ordering));
        }
        codes.push(code);
    }

    let declared =
        declared.ok_or_else(|| bad(last_line, MalformedRule::CountTrailer("missing `# count=` line".into())))?;
    if declared != codes.len() {
        return Err(bad(
            last_line,
            MalformedRule::CountMismatch {
                declared,
                found: codes.len(),
            },
        ));
    }

    let (k, n_max) = match meta {
        Some(m) => m,
        None => (4, codes.last().map(|&c| decode_fields(c)[0]).unwrap_or(0)),
    };
    if n_max == 0 {
        return Err(bad(last_line, MalformedRule::Metadata("empty set without metadata".into())));
    }
    PSet::from_codes(k, n_max, codes)
}

fn parse_meta(s: &str) -> std::result::Result<(usize, u32), String> {
    let mut k = None;
    let mut n_max = None;
    for part in s.split_whitespace() {
        match part.split_once('=') {
            Some(("k", v)) => k = Some(v.parse::<usize>().map_err(|_| format!("bad k `{v}`"))?),
            Some(("n_max", v)) => n_max = Some(v.parse::<u32>().map_err(|_| format!("bad n_max `{v}`"))?),
            _ => return Err(format!("unrecognised comment `{part}`")),
        }
    }
    match (k, n_max) {
        (Some(k), Some(n)) if (1..=4).contains(&k) && n >= 1 => Ok((k, n)),
        _ => Err(format!("expected `k=K n_max=N`, found `{s}`")),
    }
}

/// Writes the sequence as an OEIS b-file: one `index value` pair per line.
pub fn write_bfile(dseq: &DSequence, path: impl AsRef<Path>, offset: i64) -> Result<()> {
    let path = path.as_ref();
    let text = bfile_string(dseq, offset)?;
    fs::write(path, text).map_err(|e| ChompError::io(path, e))
}

pub fn bfile_string(dseq: &DSequence, offset: i64) -> Result<String> {
    if dseq.is_empty() {
        return Err(ChompError::Precondition("cannot export an empty sequence".into()));
    }
    let mut out = String::with_capacity(dseq.len() * 10);
    for (i, v) in dseq.values.iter().enumerate() {
        let _ = writeln!(out, "{} {}", offset + i as i64, v);
    }
    Ok(out)
}

pub fn cache_bytes(pset: &PSet) -> Vec<u8> {
    let codes = pset.sorted_codes();
    let mut out = Vec::with_capacity(CACHE_HEADER_LEN + codes.len() * 8);
    out.extend_from_slice(CACHE_MAGIC);
    out.extend_from_slice(&CACHE_VERSION.to_le_bytes());
    out.extend_from_slice(&(pset.k() as u16).to_le_bytes());
    out.extend_from_slice(&pset.n_max().to_le_bytes());
    out.extend_from_slice(&(codes.len() as u32).to_le_bytes());
    for c in codes {
        out.extend_from_slice(&c.to_le_bytes());
    }
    out
}

pub fn write_cache(pset: &PSet, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, cache_bytes(pset)).map_err(|e| ChompError::io(path, e))
}

pub fn read_cache(path: impl AsRef<Path>) -> Result<PSet> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| ChompError::io(path, e))?;
    parse_cache(&bytes, path)
}

fn parse_cache(bytes: &[u8], path: &Path) -> Result<PSet> {
    let bad = |line: usize, rule: MalformedRule| ChompError::Malformed {
        path: path.to_path_buf(),
        line,
        rule,
    };
    if bytes.len() < 4 || &bytes[..4] != CACHE_MAGIC {
        return Err(bad(0, MalformedRule::Magic));
    }
    if bytes.len() < CACHE_HEADER_LEN {
        return Err(bad(0, MalformedRule::Truncated { declared: 0, found: 0 }));
    }
    let u16_at = |i: usize| u16::from_le_bytes([bytes[i], bytes[i + 1]]);
    let u32_at = |i: usize| u32::from_le_bytes(bytes[i..i + 4].try_into().unwrap());
    let version = u16_at(4);
    if version != CACHE_VERSION {
        return Err(bad(0, MalformedRule::Version(version)));
    }
    let k = u16_at(6) as usize;
    let n_max = u32_at(8);
    let declared = u32_at(12) as usize;
    let payload = &bytes[CACHE_HEADER_LEN..];
    if !payload.len().is_multiple_of(8) || payload.len() / 8 != declared {
        return Err(bad(
            0,
            MalformedRule::Truncated {
                declared,
                found: payload.len() / 8,
            },
        ));
    }
    if !(1..=4).contains(&k) || n_max == 0 {
        return Err(bad(0, MalformedRule::Metadata(format!("k={k} n_max={n_max}"))));
    }
    let mut codes = Vec::with_capacity(declared);
    for (i, chunk) in payload.chunks_exact(8).enumerate() {
        let code = u64::from_le_bytes(chunk.try_into().unwrap());
        if codes.last().is_some_and(|&prev| prev >= code) {
            return Err(bad(i + 1, MalformedRule::Ordering));
        }
        codes.push(code);
    }
    PSet::from_codes(k, n_max, codes)
}

/// Reads either format, choosing by the leading magic bytes.
pub fn read_any(path: impl AsRef<Path>) -> Result<PSet> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| ChompError::io(path, e))?;
    if bytes.starts_with(CACHE_MAGIC) {
        parse_cache(&bytes, path)
    } else {
        let text = String::from_utf8(bytes).map_err(|_| ChompError::Malformed {
            path: path.to_path_buf(),
            line: 0,
            rule: MalformedRule::Header("file is neither UTF-8 text nor a CHMP cache".into()),
        })?;
        parse_csv(&text, path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{solve, SolveConfig};

    fn parse(text: &str) -> Result<PSet> {
        parse_csv(text, Path::new("mem.csv"))
    }

    fn rule(e: ChompError) -> (usize, MalformedRule) {
        match e {
            ChompError::Malformed { line, rule, .. } => (line, rule),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn n1_body() {
        let p = solve(&SolveConfig::new(1, 4)).unwrap();
        assert_eq!(csv_string(&p), "a,b,c,d\n1,0,0,0\n# count=1");
    }

    #[test]
    fn n2_rows() {
        let p = solve(&SolveConfig::new(2, 4)).unwrap();
        assert_eq!(
            csv_string(&p),
            "a,b,c,d\n1,0,0,0\n2,1,0,0\n2,2,1,0\n2,2,2,1\n# count=4"
        );
    }

    #[test]
    fn well_formed_file() {
        let p = parse("a,b,c,d\n1,0,0,0\n2,1,0,0\n2,2,1,0\n2,2,2,1\n# count=4").unwrap();
        assert_eq!(p.count(), 4);
        assert_eq!(p.n_max(), 2);
        assert_eq!(p.k(), 4);
        // trailing newline tolerated
        assert!(parse("a,b,c,d\n1,0,0,0\n# count=1\n").is_ok());
    }

    #[test]
    fn fifth_column_rejected() {
        let e = parse("a,b,c,d\n1,0,0,0\n2,1,0,0,0\n# count=2").unwrap_err();
        assert_eq!(rule(e), (3, MalformedRule::ColumnCount { found: 5 }));
    }

    #[test]
    fn ordering_rejected() {
        let e = parse("a,b,c,d\n2,1,0,0\n1,0,0,0\n# count=2").unwrap_err();
        assert_eq!(rule(e), (3, MalformedRule::Ordering));
        let e = parse("a,b,c,d\n1,0,0,0\n1,0,0,0\n# count=2").unwrap_err();
        assert_eq!(rule(e).1, MalformedRule::Ordering);
    }

    #[test]
    fn other_malformations() {
        assert!(matches!(rule(parse("a,b,c\n1,0,0,0\n# count=1").unwrap_err()).1, MalformedRule::Header(_)));
        assert_eq!(
            rule(parse("a,b,c,d\n1,2,0,0\n# count=1").unwrap_err()).1,
            MalformedRule::NotNonIncreasing
        );
        assert!(matches!(
            rule(parse("a,b,c,d\n1,x,0,0\n# count=1").unwrap_err()).1,
            MalformedRule::NotAnInteger(_)
        ));
        assert!(matches!(
            rule(parse("a,b,c,d\n1,0,0,0").unwrap_err()).1,
            MalformedRule::CountTrailer(_)
        ));
        assert_eq!(
            rule(parse("a,b,c,d\n1,0,0,0\n# count=2").unwrap_err()).1,
            MalformedRule::CountMismatch { declared: 2, found: 1 }
        );
        assert!(matches!(
            rule(parse("a,b,c,d\n1,0,0,0\n# count=1\n2,1,0,0").unwrap_err()).1,
            MalformedRule::CountTrailer(_)
        ));
    }

    #[test]
    fn fewer_rows_carry_metadata() {
        let p = solve(&SolveConfig::new(3, 3)).unwrap();
        let text = csv_string(&p);
        assert!(text.ends_with("# k=3 n_max=3\n# count=5"));
        assert_eq!(parse(&text).unwrap(), p);
    }

    #[test]
    fn bfile_lines() {
        let d = DSequence::new(vec![0, 0, 0, 1]);
        assert_eq!(bfile_string(&d, 1).unwrap(), "1 0\n2 0\n3 0\n4 1\n");
        assert_eq!(bfile_string(&d, 0).unwrap().lines().next(), Some("0 0"));
        assert!(matches!(
            bfile_string(&DSequence::new(vec![]), 1),
            Err(ChompError::Precondition(_))
        ));
    }

    #[test]
    fn cache_payload_n1() {
        let p = solve(&SolveConfig::new(1, 4)).unwrap();
        let bytes = cache_bytes(&p);
        assert_eq!(&bytes[..4], b"CHMP");
        assert_eq!(bytes.len(), 24);
        assert_eq!(&bytes[16..], &0x0001000000000000u64.to_le_bytes());
    }

    #[test]
    fn cache_errors() {
        let p = solve(&SolveConfig::new(3, 4)).unwrap();
        let good = cache_bytes(&p);
        let path = Path::new("mem.bin");

        let mut bad_magic = good.clone();
        bad_magic[0] = b'X';
        assert_eq!(rule(parse_cache(&bad_magic, path).unwrap_err()).1, MalformedRule::Magic);

        let mut bad_version = good.clone();
        bad_version[4] = 9;
        assert_eq!(rule(parse_cache(&bad_version, path).unwrap_err()).1, MalformedRule::Version(9));

        let short = &good[..good.len() - 8];
        assert!(matches!(
            rule(parse_cache(short, path).unwrap_err()).1,
            MalformedRule::Truncated { .. }
        ));

        let mut unsorted = good.clone();
        let (a, b) = (CACHE_HEADER_LEN, CACHE_HEADER_LEN + 8);
        let first: Vec<u8> = unsorted[a..b].to_vec();
        let second: Vec<u8> = unsorted[b..b + 8].to_vec();
        unsorted[a..b].copy_from_slice(&second);
        unsorted[b..b + 8].copy_from_slice(&first);
        assert_eq!(rule(parse_cache(&unsorted, path).unwrap_err()).1, MalformedRule::Ordering);

        assert_eq!(parse_cache(&good, path).unwrap(), p);
    }
}
