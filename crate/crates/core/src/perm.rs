//! Permutations of `[n]` and signed permutations of `±[n]`, in one-line
//! notation, with the descent statistics used throughout the crate.
//!
//! Composition is `(a ∘ b)(i) = a(b(i))` everywhere. Both kinds share the
//! [`PackedWindow`] encoding: a type A permutation is a signed permutation
//! whose window is all positive, and the signed composition rule
//! `π(-s) = -π(s)` restricts to ordinary composition on such windows.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest rank a window can hold.
pub const MAX_RANK: usize = 16;

/// Enumeration guardrail for `S_n`.
pub const MAX_ENUM_A: usize = 8;

/// Enumeration guardrail for `B_n`.
pub const MAX_ENUM_B: usize = 6;

/// Which group a window belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupKind {
    /// The symmetric group `S_n`.
    A,
    /// The hyperoctahedral group `B_n`.
    B,
}

impl GroupKind {
    pub fn name(self) -> &'static str {
        match self {
            GroupKind::A => "A",
            GroupKind::B => "B",
        }
    }

    /// `n!` or `2^n n!`.
    pub fn order(self, n: usize) -> u128 {
        let fact: u128 = (1..=n as u128).product();
        match self {
            GroupKind::A => fact,
            GroupKind::B => fact << n,
        }
    }

    fn guardrail(self) -> usize {
        match self {
            GroupKind::A => MAX_ENUM_A,
            GroupKind::B => MAX_ENUM_B,
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(GroupKind::A),
            "B" | "b" => Ok(GroupKind::B),
            _ => Err(Error::Parse(format!("unknown group {s:?}"))),
        }
    }
}

/// Canonical fixed-width encoding of a (signed) window; the map key of the
/// group algebra. The derived order is lexicographic on the window.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PackedWindow {
    entries: [i8; MAX_RANK],
    n: u8,
}

impl PackedWindow {
    pub fn identity(n: usize) -> Self {
        let mut entries = [0i8; MAX_RANK];
        for (i, e) in entries.iter_mut().take(n).enumerate() {
            *e = (i + 1) as i8;
        }
        PackedWindow {
            entries,
            n: n as u8,
        }
    }

    /// Validates a signed window: nonzero entries whose absolute values are
    /// a permutation of `1..=n`.
    pub fn from_signed(window: &[i32]) -> Result<Self> {
        let n = window.len();
        let bad = |reason: &str| Error::InvalidPermutation {
            window: format!("{window:?}"),
            reason: reason.to_string(),
        };
        if n == 0 {
            return Err(bad("empty window"));
        }
        if n > MAX_RANK {
            return Err(Error::Capacity {
                what: "window length",
                requested: n as u128,
                limit: MAX_RANK as u128,
            });
        }
        let mut seen = [false; MAX_RANK + 1];
        let mut entries = [0i8; MAX_RANK];
        for (slot, &v) in entries.iter_mut().zip(window) {
            if v == 0 {
                return Err(bad("zero entry"));
            }
            let a = v.unsigned_abs() as usize;
            if a > n {
                return Err(bad("entry out of range"));
            }
            if seen[a] {
                return Err(bad("duplicate entry"));
            }
            seen[a] = true;
            *slot = v as i8;
        }
        Ok(PackedWindow {
            entries,
            n: n as u8,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn as_slice(&self) -> &[i8] {
        &self.entries[..self.n as usize]
    }

    pub fn to_vec(&self) -> Vec<i32> {
        self.as_slice().iter().map(|&v| v as i32).collect()
    }

    pub fn is_unsigned(&self) -> bool {
        self.as_slice().iter().all(|&v| v > 0)
    }

    /// The full map on `±[n] ∪ {0}`.
    #[inline]
    pub fn apply(&self, s: i32) -> i32 {
        match s {
            0 => 0,
            s if s > 0 => self.entries[(s - 1) as usize] as i32,
            s => -(self.entries[(-s - 1) as usize] as i32),
        }
    }

    /// `a ∘ b`; both windows must have the same rank.
    #[inline]
    pub fn compose_unchecked(&self, other: &Self) -> Self {
        let mut entries = [0i8; MAX_RANK];
        for (slot, &b) in entries.iter_mut().zip(other.as_slice()) {
            let a = self.entries[(b.unsigned_abs() - 1) as usize];
            *slot = if b > 0 { a } else { -a };
        }
        PackedWindow { entries, n: self.n }
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub fn inverse(&self) -> Self {
        let mut entries = [0i8; MAX_RANK];
        for (i, &v) in self.as_slice().iter().enumerate() {
            let pos = (i + 1) as i8;
            let a = v.unsigned_abs() as usize;
            entries[a - 1] = if v > 0 { pos } else { -pos };
        }
        PackedWindow { entries, n: self.n }
    }

    /// Dense index of the window inside its group, in `0..order`.
    /// Type A ranks are lexicographic; type B ranks put the sign pattern in
    /// the low bits.
    #[inline]
    pub fn rank(&self, kind: GroupKind) -> usize {
        let n = self.n();
        let mut unused: u32 = (1u32 << n) - 1;
        let mut rank = 0usize;
        let mut signs = 0usize;
        for (i, &v) in self.as_slice().iter().enumerate() {
            let a = v.unsigned_abs() as u32 - 1;
            let smaller = (unused & ((1u32 << a) - 1)).count_ones() as usize;
            rank = rank * (n - i) + smaller;
            unused &= !(1u32 << a);
            if v < 0 {
                signs |= 1 << i;
            }
        }
        match kind {
            GroupKind::A => rank,
            GroupKind::B => (rank << n) | signs,
        }
    }
}

impl fmt::Debug for PackedWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(self.as_slice()))
    }
}

impl fmt::Display for PackedWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(self.as_slice()))
    }
}

fn join(w: &[i8]) -> String {
    w.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_window(s: &str) -> Result<Vec<i32>> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i32>()
                .map_err(|_| Error::Parse(format!("bad window entry {t:?} in {s:?}")))
        })
        .collect()
}

/// A bijection of `[n]` in one-line notation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(PackedWindow);

impl Permutation {
    pub fn new(window: &[usize]) -> Result<Self> {
        let signed: Vec<i32> = window.iter().map(|&v| v as i32).collect();
        Self::from_signed_window(&signed)
    }

    fn from_signed_window(window: &[i32]) -> Result<Self> {
        if let Some(v) = window.iter().find(|&&v| v <= 0) {
            return Err(Error::InvalidPermutation {
                window: format!("{window:?}"),
                reason: format!("entry {v} outside [n]"),
            });
        }
        PackedWindow::from_signed(window).map(Permutation)
    }

    pub fn identity(n: usize) -> Self {
        Permutation(PackedWindow::identity(n))
    }

    /// The n-cycle `ω = (1 2 ⋯ n)`: `ω(i) = i + 1`, `ω(n) = 1`.
    pub fn omega(n: usize) -> Self {
        let w: Vec<usize> = (2..=n).chain(std::iter::once(1)).collect();
        Permutation::new(&w).expect("ω is a bijection")
    }

    pub fn from_packed(p: PackedWindow) -> Result<Self> {
        if p.is_unsigned() {
            Ok(Permutation(p))
        } else {
            Err(Error::InvalidPermutation {
                window: p.to_string(),
                reason: "negative entry in a type A window".into(),
            })
        }
    }

    pub fn packed(&self) -> PackedWindow {
        self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    /// `π(i)` for `1 ≤ i ≤ n`.
    #[inline]
    pub fn get(&self, i: usize) -> usize {
        self.0.entries[i - 1] as usize
    }

    pub fn window(&self) -> Vec<usize> {
        self.0.as_slice().iter().map(|&v| v as usize).collect()
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.0.compose(&other.0).map(Permutation)
    }

    pub fn inverse(&self) -> Self {
        Permutation(self.0.inverse())
    }

    pub fn sign(&self) -> i32 {
        let w = self.0.as_slice();
        let mut inversions = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn descent_set(&self) -> Vec<usize> {
        let w = self.0.as_slice();
        (1..w.len()).filter(|&i| w[i - 1] > w[i]).collect()
    }

    pub fn des(&self) -> usize {
        let w = self.0.as_slice();
        w.windows(2).filter(|p| p[0] > p[1]).count()
    }

    /// Number of cyclic descents; position `n` counts when `π(n) > π(1)`.
    pub fn cdes(&self) -> usize {
        let w = self.0.as_slice();
        self.des() + usize::from(w[w.len() - 1] > w[0])
    }

    pub fn comaj(&self) -> usize {
        let n = self.n();
        self.descent_set().iter().map(|&s| n - s).sum()
    }

    pub fn descent_stats(&self) -> DescentRecord {
        let n = self.n();
        let des_set = self.descent_set();
        let mut cdes_set = des_set.clone();
        if self.get(n) > self.get(1) {
            cdes_set.push(n);
        }
        DescentRecord {
            des: des_set.len(),
            cdes: cdes_set.len(),
            comaj: des_set.iter().map(|&s| n - s).sum(),
            maj: des_set.iter().sum(),
            des_set,
            cdes_set,
        }
    }

    /// `π̃ ∈ S_{n+1}`: `π` followed by the fixed point `n + 1`.
    pub fn embed_tilde(&self) -> Result<Self> {
        let mut w = self.window();
        w.push(w.len() + 1);
        Permutation::new(&w)
    }

    /// `{σ ∘ ω^i : i = 0, …, n−1}`, in order of `i`.
    pub fn cyclic_class(&self) -> Vec<Permutation> {
        let n = self.n();
        let omega = Permutation::omega(n);
        let mut out = Vec::with_capacity(n);
        let mut cur = *self;
        for _ in 0..n {
            out.push(cur);
            cur = Permutation(cur.0.compose_unchecked(&omega.0));
        }
        out
    }

    /// Every element of `S_n`, lexicographically, subject to the guardrail.
    pub fn all(n: usize) -> Result<Vec<Permutation>> {
        Ok(enumerate_group(n, GroupKind::A)?
            .into_iter()
            .map(Permutation)
            .collect())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Permutation::from_signed_window(&parse_window(s)?)
    }
}

/// A signed permutation of `±[n]`; `π(0) = 0` is implicit.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation(PackedWindow);

impl SignedPermutation {
    pub fn new(window: &[i32]) -> Result<Self> {
        PackedWindow::from_signed(window).map(SignedPermutation)
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation(PackedWindow::identity(n))
    }

    pub fn from_packed(p: PackedWindow) -> Self {
        SignedPermutation(p)
    }

    pub fn packed(&self) -> PackedWindow {
        self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    /// `π(s)` for `-n ≤ s ≤ n`.
    #[inline]
    pub fn get(&self, s: i32) -> i32 {
        self.0.apply(s)
    }

    pub fn window(&self) -> Vec<i32> {
        self.0.to_vec()
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.0.compose(&other.0).map(SignedPermutation)
    }

    pub fn inverse(&self) -> Self {
        SignedPermutation(self.0.inverse())
    }

    /// Descent positions in `{0, …, n−1}` with `π(0) = 0`.
    pub fn descent_set(&self) -> Vec<usize> {
        let n = self.n() as i32;
        (0..n)
            .filter(|&i| self.get(i) > self.get(i + 1))
            .map(|i| i as usize)
            .collect()
    }

    pub fn des(&self) -> usize {
        self.descent_set().len()
    }

    /// Augmented descents: ordinary descents plus `n` when `π(n) > 0`.
    pub fn ades(&self) -> usize {
        self.des() + usize::from(self.get(self.n() as i32) > 0)
    }

    pub fn comaj(&self) -> usize {
        let n = self.n();
        self.descent_set().iter().map(|&d| n - d).sum()
    }

    pub fn descent_stats(&self) -> SignedDescentRecord {
        let n = self.n();
        let des_set = self.descent_set();
        let mut ades_set = des_set.clone();
        if self.get(n as i32) > 0 {
            ades_set.push(n);
        }
        // Σ_{s=1}^{n} #{d ∈ D : d < s}
        let left_count = |set: &[usize]| -> usize {
            (1..=n)
                .map(|s| set.iter().filter(|&&d| d < s).count())
                .sum()
        };
        SignedDescentRecord {
            des: des_set.len(),
            ades: ades_set.len(),
            comaj: left_count(&des_set),
            acomaj: left_count(&ades_set),
            des_set,
            ades_set,
        }
    }

    /// Every element of `B_n`, lexicographically, subject to the guardrail.
    pub fn all(n: usize) -> Result<Vec<SignedPermutation>> {
        Ok(enumerate_group(n, GroupKind::B)?
            .into_iter()
            .map(SignedPermutation)
            .collect())
    }
}

impl From<Permutation> for SignedPermutation {
    fn from(p: Permutation) -> Self {
        SignedPermutation(p.0)
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SignedPermutation::new(&parse_window(s)?)
    }
}

/// Descent statistics of a permutation of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescentRecord {
    pub des_set: Vec<usize>,
    pub des: usize,
    pub cdes_set: Vec<usize>,
    pub cdes: usize,
    pub comaj: usize,
    pub maj: usize,
}

/// Type B descent statistics of a signed permutation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignedDescentRecord {
    pub des_set: Vec<usize>,
    pub des: usize,
    pub ades_set: Vec<usize>,
    pub ades: usize,
    pub comaj: usize,
    pub acomaj: usize,
}

static GUARDRAIL_LIFTED: AtomicBool = AtomicBool::new(false);

/// Disables the enumeration guardrail for the rest of the process (the
/// CLI's `--force`). [`MAX_RANK`] still applies.
pub fn lift_guardrail() {
    GUARDRAIL_LIFTED.store(true, Ordering::Relaxed);
}

/// Lists the group exhaustively, lexicographic on windows. Refuses `n`
/// above the enumeration guardrail unless it was lifted.
pub fn enumerate_group(n: usize, kind: GroupKind) -> Result<Vec<PackedWindow>> {
    if n > kind.guardrail() && !GUARDRAIL_LIFTED.load(Ordering::Relaxed) {
        return Err(Error::Capacity {
            what: "group enumeration rank",
            requested: n as u128,
            limit: kind.guardrail() as u128,
        });
    }
    enumerate_group_unguarded(n, kind)
}

/// Like [`enumerate_group`] but only bounded by [`MAX_RANK`].
pub fn enumerate_group_unguarded(n: usize, kind: GroupKind) -> Result<Vec<PackedWindow>> {
    if n == 0 {
        return Err(Error::InvalidArgument("group rank must be positive".into()));
    }
    if n > MAX_RANK {
        return Err(Error::Capacity {
            what: "group enumeration rank",
            requested: n as u128,
            limit: MAX_RANK as u128,
        });
    }
    let mut out = Vec::with_capacity(kind.order(n).min(1 << 24) as usize);
    let mut w: Vec<i32> = (1..=n as i32).collect();
    loop {
        match kind {
            GroupKind::A => out.push(PackedWindow::from_signed(&w)?),
            GroupKind::B => {
                for mask in 0..(1u32 << n) {
                    let s: Vec<i32> = w
                        .iter()
                        .enumerate()
                        .map(|(i, &v)| if mask >> i & 1 == 1 { -v } else { v })
                        .collect();
                    out.push(PackedWindow::from_signed(&s)?);
                }
            }
        }
        if !next_permutation(&mut w) {
            break;
        }
    }
    if kind == GroupKind::B {
        out.sort_unstable();
    }
    Ok(out)
}

fn next_permutation(w: &mut [i32]) -> bool {
    let Some(i) = (1..w.len()).rev().find(|&i| w[i - 1] < w[i]) else {
        return false;
    };
    let j = (i..w.len()).rev().find(|&j| w[j] > w[i - 1]).unwrap();
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn sp(s: &str) -> SignedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn compose_examples() {
        assert_eq!(p("1,2,3").compose(&p("3,1,2")).unwrap(), p("3,1,2"));
        assert_eq!(p("2,1,3").compose(&p("1,3,2")).unwrap(), p("2,3,1"));
        assert_eq!(sp("-1").compose(&sp("-1")).unwrap(), sp("1"));
    }

    #[test]
    fn compose_size_mismatch() {
        let err = p("1,2").compose(&p("1,2,3")).unwrap_err();
        assert_eq!(err, Error::SizeMismatch { left: 2, right: 3 });
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(p("1,2,3").inverse(), p("1,2,3"));
        assert_eq!(p("2,3,1").inverse(), p("3,1,2"));
        assert_eq!(sp("-2,1").inverse(), sp("2,-1"));
    }

    #[test]
    fn descent_stats_examples() {
        let r = p("1,4,3,2").descent_stats();
        assert_eq!(r.des_set, vec![2, 3]);
        assert_eq!(r.des, 2);
        assert_eq!(r.cdes_set, vec![2, 3, 4]);
        assert_eq!(r.cdes, 3);
        assert_eq!(r.comaj, 3);
        assert_eq!(r.maj, 5);

        let id = Permutation::identity(5).descent_stats();
        assert!(id.des_set.is_empty());
        assert_eq!(id.cdes_set, vec![5]);
        assert_eq!(id.cdes, 1);
        assert_eq!(id.comaj, 0);
    }

    #[test]
    fn signed_stats_examples() {
        let r = sp("-2,1").descent_stats();
        assert_eq!(r.des_set, vec![0]);
        assert_eq!(r.des, 1);
        assert_eq!(r.ades_set, vec![0, 2]);
        assert_eq!(r.ades, 2);
        assert_eq!(r.acomaj, 2);

        let r = sp("1,2").descent_stats();
        assert!(r.des_set.is_empty());
        assert_eq!(r.ades_set, vec![2]);
        assert_eq!(r.ades, 1);
        assert_eq!(r.acomaj, 0);
    }

    #[test]
    fn embed_tilde_examples() {
        assert_eq!(p("2,1").embed_tilde().unwrap(), p("2,1,3"));
        assert_eq!(p("1,2").embed_tilde().unwrap(), p("1,2,3"));
        assert_eq!(p("3,1,2").des(), 1);
        assert_eq!(p("3,1,2").embed_tilde().unwrap().cdes(), 2);
    }

    #[test]
    fn cyclic_class_examples() {
        assert_eq!(p("1,2").cyclic_class(), vec![p("1,2"), p("2,1")]);
        let class = p("2,1,3").cyclic_class();
        assert_eq!(class, vec![p("2,1,3"), p("1,3,2"), p("3,2,1")]);
        assert!(class.iter().all(|s| s.cdes() == 2));
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_group(3, GroupKind::A).unwrap().len(), 6);
        let b1 = enumerate_group(1, GroupKind::B).unwrap();
        assert_eq!(b1, vec![sp("-1").packed(), sp("1").packed()]);
        assert_eq!(enumerate_group(2, GroupKind::B).unwrap().len(), 8);
        for kind in [GroupKind::A, GroupKind::B] {
            let all = enumerate_group(4, kind).unwrap();
            assert!(all.windows(2).all(|w| w[0] < w[1]));
            assert_eq!(all.len() as u128, kind.order(4));
        }
    }

    #[test]
    fn enumeration_guardrail() {
        assert!(matches!(
            enumerate_group(9, GroupKind::A),
            Err(Error::Capacity { .. })
        ));
        assert!(matches!(
            enumerate_group(7, GroupKind::B),
            Err(Error::Capacity { .. })
        ));
        assert!(enumerate_group_unguarded(7, GroupKind::B).is_ok());
    }

    #[test]
    fn parsing_rejects_bad_windows() {
        assert!("1,1,2".parse::<Permutation>().is_err());
        assert!("1,4,2".parse::<Permutation>().is_err());
        assert!("-1,2".parse::<Permutation>().is_err());
        assert!("0,1".parse::<SignedPermutation>().is_err());
        assert!("2,-2".parse::<SignedPermutation>().is_err());
        assert!("1,x".parse::<Permutation>().is_err());
    }

    #[test]
    fn ranks_are_dense_and_distinct() {
        for kind in [GroupKind::A, GroupKind::B] {
            let all = enumerate_group(4, kind).unwrap();
            let mut seen = vec![false; all.len()];
            for w in &all {
                let r = w.rank(kind);
                assert!(!seen[r]);
                seen[r] = true;
            }
        }
        let a = enumerate_group(4, GroupKind::A).unwrap();
        assert!(a.iter().enumerate().all(|(i, w)| w.rank(GroupKind::A) == i));
    }

    #[test]
    fn cyclic_descents_invariant_under_rotation_both_sides() {
        for n in 2..=5 {
            let omega = Permutation::omega(n);
            for pi in Permutation::all(n).unwrap() {
                let mut w = Permutation::identity(n);
                for _ in 0..n {
                    assert_eq!(pi.compose(&w).unwrap().cdes(), pi.cdes());
                    assert_eq!(w.compose(&pi).unwrap().cdes(), pi.cdes());
                    w = w.compose(&omega).unwrap();
                }
            }
        }
    }

    #[test]
    fn cyclic_classes_partition_sn() {
        for n in 2..=6 {
            let mut seen = std::collections::BTreeSet::new();
            for pi in Permutation::all(n - 1).unwrap() {
                let tilde = pi.embed_tilde().unwrap();
                assert_eq!(tilde.cdes(), pi.des() + 1);
                for s in tilde.cyclic_class() {
                    assert!(seen.insert(s), "cyclic classes overlap at {s:?}");
                }
            }
            assert_eq!(seen.len() as u128, GroupKind::A.order(n));
        }
    }

    #[test]
    fn cdes_bounds() {
        for n in 2..=6 {
            for pi in Permutation::all(n).unwrap() {
                let r = pi.descent_stats();
                assert!(r.cdes >= 1 && r.cdes < n);
                assert!(r.des_set.iter().all(|d| r.cdes_set.contains(d)));
            }
        }
    }

    #[test]
    fn signed_record_invariants() {
        for n in 1..=4 {
            for pi in SignedPermutation::all(n).unwrap() {
                let r = pi.descent_stats();
                assert!(r.ades >= 1 && r.ades <= n);
                assert_eq!(r.ades, r.des + usize::from(pi.get(n as i32) > 0));
                assert!(r.des_set.iter().all(|d| r.ades_set.contains(d)));
                assert_eq!(r.comaj, pi.comaj());
            }
        }
    }
}
