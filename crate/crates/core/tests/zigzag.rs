//! Linear extensions of zig-zag posets are the descent classes, checked
//! exhaustively on `B_4` and `S_5`.

use descent_algebra::perm::{Permutation, SignedPermutation};
use descent_algebra::poset::{zigzag, zigzag_b, ZigzagFlavor};

fn subsets(items: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..1u32 << items.len()).map(move |m| {
        items
            .iter()
            .enumerate()
            .filter(|(i, _)| m >> i & 1 == 1)
            .map(|(_, &s)| s)
            .collect()
    })
}

#[test]
fn type_a_rank_five() {
    let all = Permutation::all(5).unwrap();
    for pi in all.iter().step_by(7) {
        let mut covered = 0;
        for set in subsets(&[1, 2, 3, 4]) {
            let ext = zigzag(pi, &set).unwrap().linear_extensions().unwrap();
            let expected: Vec<Permutation> = all
                .iter()
                .filter(|s| s.inverse().compose(pi).unwrap().descent_set() == set)
                .cloned()
                .collect();
            assert_eq!(ext, expected, "π={pi} I={set:?}");
            covered += ext.len();
        }
        // descent classes partition the group
        assert_eq!(covered, all.len());
    }
}

#[test]
fn type_b_rank_four() {
    let all = SignedPermutation::all(4).unwrap();
    for pi in all.iter().step_by(5) {
        let mut covered = 0;
        for set in subsets(&[0, 1, 2, 3]) {
            let ext = zigzag_b(pi, &set, ZigzagFlavor::TypeB).unwrap().linear_extensions().unwrap();
            let expected: Vec<SignedPermutation> = all
                .iter()
                .filter(|s| s.inverse().compose(pi).unwrap().descent_set() == set)
                .cloned()
                .collect();
            assert_eq!(ext, expected, "π={pi} I={set:?}");
            covered += ext.len();
        }
        assert_eq!(covered, all.len());
    }
}

#[test]
fn augmented_rank_four() {
    let all = SignedPermutation::all(4).unwrap();
    for pi in all.iter().step_by(5) {
        for set in subsets(&[0, 1, 2, 3, 4]) {
            if set.is_empty() || set.len() == 5 {
                continue;
            }
            let ext = zigzag_b(pi, &set, ZigzagFlavor::Augmented).unwrap().linear_extensions().unwrap();
            let expected: Vec<SignedPermutation> = all
                .iter()
                .filter(|s| s.inverse().compose(pi).unwrap().descent_stats().ades_set == set)
                .cloned()
                .collect();
            assert_eq!(ext, expected, "π={pi} I={set:?}");
        }
    }
}
