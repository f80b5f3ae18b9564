use crate::error::{Error, Result};
use crate::perm::{Permutation, SignedPermutation};

use super::{BPoset, Poset};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZigzagFlavor {
    /// Chain `0 = π(0), π(1), …, π(n)`; `I ⊆ {0, …, n−1}`.
    TypeB,
    /// Chain wrapping back to `π(n+1) = 0`; `I ⊆ {0, …, n}` proper and
    /// nonempty.
    Augmented,
}

/// The chain `π(1), …, π(n)` with `π(s) >_P π(s+1)` exactly for `s ∈ I`.
/// Its linear extensions are the `σ` with `Des(σ^{-1}π) = I`.
pub fn zigzag(pi: &Permutation, set: &[usize]) -> Result<Poset> {
    let n = pi.n();
    if let Some(&s) = set.iter().find(|&&s| s == 0 || s >= n) {
        return Err(Error::InvalidArgument(format!(
            "zig-zag position {s} outside 1..{n}"
        )));
    }
    let covers: Vec<(usize, usize)> = (1..n)
        .map(|s| {
            let (a, b) = (pi.get(s), pi.get(s + 1));
            if set.contains(&s) {
                (b, a)
            } else {
                (a, b)
            }
        })
        .collect();
    Poset::from_covers(n, &covers)
}

/// Type B zig-zag; linear extensions are the `σ` with `Des(σ^{-1}π) = I`
/// (type B) or `aDes(σ^{-1}π) = I` (augmented).
pub fn zigzag_b(pi: &SignedPermutation, set: &[usize], flavor: ZigzagFlavor) -> Result<BPoset> {
    let n = pi.n();
    let top = match flavor {
        ZigzagFlavor::TypeB => n - 1,
        ZigzagFlavor::Augmented => n,
    };
    if let Some(&s) = set.iter().find(|&&s| s > top) {
        return Err(Error::InvalidArgument(format!(
            "zig-zag position {s} outside 0..={top}"
        )));
    }
    if flavor == ZigzagFlavor::Augmented {
        let distinct = (0..=n).filter(|s| set.contains(s)).count();
        if distinct == 0 || distinct == n + 1 {
            return Err(Error::InvalidArgument(
                "augmented zig-zag needs a proper nonempty position set".into(),
            ));
        }
    }
    // value at chain position s, with π(0) = π(n+1) = 0
    let at = |s: usize| if s == 0 || s > n { 0 } else { pi.get(s as i32) };
    let covers: Vec<(i32, i32)> = (0..=top)
        .map(|s| {
            let (a, b) = (at(s), at(s + 1));
            if set.contains(&s) {
                (b, a)
            } else {
                (a, b)
            }
        })
        .collect();
    BPoset::from_covers(n, &covers)
}
