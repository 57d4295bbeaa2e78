use std::collections::BTreeSet;

use chomp4::position::tuple_count;
use chomp4::{enumerate_layer, pack, successors, unpack, PackedPosition, Position};
use proptest::prelude::*;

fn rows4(max: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=max, 4).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v[0] = v[0].max(1);
        v
    })
}

proptest! {
    #[test]
    fn pack_round_trip(rows in rows4(u16::MAX as u32)) {
        let p = Position::new(rows).unwrap();
        prop_assert_eq!(unpack(pack(&p).unwrap()).unwrap(), p);
    }

    #[test]
    fn packing_preserves_order(x in rows4(2000), y in rows4(2000)) {
        let (px, py) = (Position::new(x.clone()).unwrap(), Position::new(y.clone()).unwrap());
        prop_assert_eq!(pack(&px).unwrap().cmp(&pack(&py).unwrap()), x.cmp(&y));
    }

    #[test]
    fn successors_shrink_and_stay_valid(rows in rows4(40)) {
        let p = Position::new(rows).unwrap();
        let succ = successors(&p);
        // Every square except the poisoned one is a distinct move target.
        prop_assert!((succ.len() as u64) < p.cells());
        for s in &succ {
            prop_assert!(s.cells() < p.cells());
            prop_assert!(s.rows().iter().zip(p.rows()).all(|(a, b)| a <= b));
            prop_assert!(s.rows().windows(2).all(|w| w[0] >= w[1]));
            prop_assert!(s.row(0) >= 1);
        }
    }

    #[test]
    fn unpack_rejects_increasing_codes(x in any::<u64>()) {
        let f = [(x >> 48) & 0xffff, (x >> 32) & 0xffff, (x >> 16) & 0xffff, x & 0xffff];
        let valid = f[0] >= 1 && f.windows(2).all(|w| w[0] >= w[1]);
        prop_assert_eq!(unpack(PackedPosition(x)).is_ok(), valid);
    }
}

#[test]
fn successor_closure_within_bound() {
    // Every successor of a bounded state is itself within the bound, so the
    // bounded state space is closed under moves.
    let n = 6;
    for s in 1..=4 * n as u64 {
        for p in enumerate_layer(s, n, 4) {
            for q in successors(&p) {
                assert!(q.row(0) <= n);
                assert!(q.cells() < s);
            }
        }
    }
}

#[test]
fn layers_partition_the_state_space() {
    for (n, k) in [(1, 1), (5, 2), (7, 3), (9, 4), (12, 4)] {
        let mut seen = BTreeSet::new();
        for s in 0..=(k as u64 * n as u64 + 1) {
            let layer: Vec<Position> = enumerate_layer(s, n, k).collect();
            assert!(layer.windows(2).all(|w| w[0] < w[1]), "layer {s} not sorted");
            for p in layer {
                assert_eq!(p.cells(), s);
                assert!(p.row(0) <= n && p.k() == k);
                assert!(seen.insert(p));
            }
        }
        // Every non-empty non-increasing k-tuple bounded by n, exactly once.
        assert_eq!(seen.len() as u128, tuple_count(n, k) - 1, "n={n} k={k}");
    }
}
