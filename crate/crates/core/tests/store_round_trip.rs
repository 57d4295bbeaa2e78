use std::fs;

use chomp4::error::MalformedRule;
use chomp4::store::{self, DSequence};
use chomp4::{solve, ChompError, PSet, SolveConfig};

fn sample(n: u32, k: usize) -> PSet {
    solve(&SolveConfig::new(n, k)).unwrap()
}

#[test]
fn csv_and_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (n, k) in [(60, 4), (40, 3), (30, 2), (5, 1)] {
        let p = sample(n, k);
        let csv = dir.path().join(format!("p{n}k{k}.csv"));
        let bin = dir.path().join(format!("p{n}k{k}.bin"));
        store::write_csv(&p, &csv).unwrap();
        store::write_cache(&p, &bin).unwrap();
        for path in [&csv, &bin] {
            let back = store::read_any(path).unwrap();
            assert_eq!(back, p, "{}", path.display());
            assert_eq!((back.k(), back.n_max()), (k, n));
        }
        assert_eq!(store::read_csv(&csv).unwrap(), store::read_cache(&bin).unwrap());
    }
}

#[test]
fn writes_are_byte_stable() {
    let p = sample(50, 4);
    assert_eq!(store::csv_string(&p), store::csv_string(&sample(50, 4)));
    assert_eq!(store::cache_bytes(&p), store::cache_bytes(&p.clone()));
    let text = store::csv_string(&p);
    assert!(text.starts_with("a,b,c,d\n1,0,0,0\n2,1,0,0\n"));
    assert!(text.ends_with(&format!("# count={}", p.count())));
    assert_eq!(store::cache_bytes(&p).len(), 16 + 8 * p.count());
}

#[test]
fn bfile_matches_d_sequence() {
    let p = sample(8, 4);
    let d = DSequence::from_pset(&p);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.txt");
    store::write_bfile(&d, &path, 1).unwrap();
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), d.len());
    assert_eq!(&lines[..4], &["1 0", "2 0", "3 0", "4 1"]);
    for (i, line) in lines.iter().enumerate() {
        assert_eq!(*line, format!("{} {}", i + 1, d.values()[i]));
    }
    let zero = store::bfile_string(&d, 0).unwrap();
    assert!(zero.starts_with("0 0\n1 0\n"));
}

#[test]
fn malformed_files_report_path_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&str, usize); 5] = [
        ("a,b,c\n1,0,0\n# count=1", 1),
        ("a,b,c,d\n1,0,0,0\n2,1,0\n# count=2", 3),
        ("a,b,c,d\n2,1,0,0\n1,0,0,0\n# count=2", 3),
        ("a,b,c,d\n1,0,0,0\n2,1,0,0\n# count=3", 4),
        ("a,b,c,d\n1,0,0,0\n2,3,0,0\n# count=2", 3),
    ];
    for (i, (text, want_line)) in cases.iter().enumerate() {
        let path = dir.path().join(format!("bad{i}.csv"));
        fs::write(&path, text).unwrap();
        match store::read_any(&path) {
            Err(ChompError::Malformed { path: p, line, .. }) => {
                assert_eq!(p, path);
                assert_eq!(line, *want_line, "case {i}");
            }
            other => panic!("case {i}: {other:?}"),
        }
    }
}

#[test]
fn truncated_cache_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.bin");
    let mut bytes = store::cache_bytes(&sample(20, 4));
    bytes.truncate(bytes.len() - 3);
    fs::write(&path, &bytes).unwrap();
    assert!(matches!(
        store::read_any(&path),
        Err(ChompError::Malformed {
            rule: MalformedRule::Truncated { .. },
            ..
        })
    ));
}

#[test]
fn missing_file_is_io_error() {
    let err = store::read_any("/nonexistent/dir/p.csv").unwrap_err();
    assert!(matches!(err, ChompError::Io { .. }), "{err}");
}
