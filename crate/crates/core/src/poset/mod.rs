//! Finite labeled posets on `[n]` and negation-closed posets on
//! `±[n] ∪ {0}`, with linear extensions, zig-zag constructors and
//! brute-force P-partition oracles.

mod partition;
mod text;
mod zigzag;

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::perm::{
    enumerate_group, GroupKind, Permutation, SignedPermutation, MAX_ENUM_A, MAX_ENUM_B,
};

pub use partition::{
    count_partitions, extension_tags, for_each_partition, order_poly_closed, q_count_partitions,
    q_order_poly_closed, Flavor, PosetRef, TagReport, WORK_LIMIT,
};
pub use text::{parse_poset, AnyPoset};
pub use zigzag::{zigzag, zigzag_b, ZigzagFlavor};

/// Strict order relation over `size` points stored as a closed
/// reachability matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Closure {
    size: usize,
    less: Vec<bool>,
}

impl Closure {
    fn new(size: usize) -> Self {
        Closure {
            size,
            less: vec![false; size * size],
        }
    }

    #[inline]
    fn get(&self, a: usize, b: usize) -> bool {
        self.less[a * self.size + b]
    }

    /// Closes the relation; `Err(i)` reports a point with `i < i`.
    fn close(&mut self) -> std::result::Result<(), usize> {
        let m = self.size;
        for k in 0..m {
            for i in 0..m {
                if !self.less[i * m + k] {
                    continue;
                }
                for j in 0..m {
                    if self.less[k * m + j] {
                        self.less[i * m + j] = true;
                    }
                }
            }
        }
        match (0..m).find(|&i| self.less[i * m + i]) {
            Some(i) => Err(i),
            None => Ok(()),
        }
    }

    /// Pairs `(a, b)` with `a < b` and nothing strictly between.
    fn covers(&self) -> Vec<(usize, usize)> {
        let m = self.size;
        let mut out = Vec::new();
        for a in 0..m {
            for b in 0..m {
                if self.get(a, b) && !(0..m).any(|c| self.get(a, c) && self.get(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// A poset on the labels `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    rel: Closure,
}

impl Poset {
    /// Transitive closure of the given `a < b` covers.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        let mut rel = Closure::new(n);
        for &(a, b) in covers {
            for x in [a, b] {
                if x == 0 || x > n {
                    return Err(Error::InvalidArgument(format!("label {x} outside 1..={n}")));
                }
            }
            rel.less[(a - 1) * n + (b - 1)] = true;
        }
        if rel.close().is_err() {
            let &(a, b) = covers
                .iter()
                .find(|&&(a, b)| rel.get(b - 1, a - 1))
                .expect("a cycle passes through some cover");
            return Err(Error::Inconsistent(a as i32, b as i32));
        }
        Ok(Poset { n, rel })
    }

    pub fn antichain(n: usize) -> Self {
        Poset {
            n,
            rel: Closure::new(n),
        }
    }

    /// The total order `π(1) < π(2) < ⋯ < π(n)`.
    pub fn chain(pi: &Permutation) -> Self {
        let w = pi.window();
        let covers: Vec<(usize, usize)> = w.windows(2).map(|p| (p[0], p[1])).collect();
        Poset::from_covers(pi.n(), &covers).expect("a chain is acyclic")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `a <_P b` for labels in `1..=n`.
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.rel.get(a - 1, b - 1)
    }

    /// All pairs `a <_P b`, lexicographically.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 1..=self.n {
            for b in 1..=self.n {
                if self.less(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Cover relations of the Hasse diagram.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.rel
            .covers()
            .into_iter()
            .map(|(a, b)| (a + 1, b + 1))
            .collect()
    }

    /// The permutations `π` (read as the sequence of labels in increasing
    /// position) such that `i <_P j` forces `π^{-1}(i) < π^{-1}(j)`, in
    /// lexicographic order.
    pub fn linear_extensions(&self) -> Result<Vec<Permutation>> {
        if self.n > MAX_ENUM_A {
            return Err(Error::Capacity {
                what: "linear extensions of a type A poset",
                requested: self.n as u128,
                limit: MAX_ENUM_A as u128,
            });
        }
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(self.n);
        let mut placed = vec![false; self.n + 1];
        self.extend(&mut prefix, &mut placed, &mut out);
        Ok(out)
    }

    fn extend(&self, prefix: &mut Vec<usize>, placed: &mut [bool], out: &mut Vec<Permutation>) {
        if prefix.len() == self.n {
            out.push(Permutation::new(prefix).expect("prefix is a bijection"));
            return;
        }
        for x in 1..=self.n {
            // x must be minimal among the unplaced labels
            if placed[x] || (1..=self.n).any(|y| !placed[y] && self.less(y, x)) {
                continue;
            }
            placed[x] = true;
            prefix.push(x);
            self.extend(prefix, placed, out);
            prefix.pop();
            placed[x] = false;
        }
    }

    /// A poset whose covers are drawn from a random hidden total order,
    /// each comparable pair kept with probability `density`.
    pub fn random<R: Rng>(n: usize, density: f64, rng: &mut R) -> Self {
        let mut order: Vec<usize> = (1..=n).collect();
        order.shuffle(rng);
        let mut covers = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(density) {
                    covers.push((order[i], order[j]));
                }
            }
        }
        Poset::from_covers(n, &covers).expect("covers follow a total order")
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset({}; {:?})", self.n, self.covers())
    }
}

/// A type B poset on `±[n] ∪ {0}`: `i <_P j` holds exactly when
/// `−j <_P −i` does.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BPoset {
    n: usize,
    rel: Closure,
}

impl BPoset {
    #[inline]
    fn idx(&self, s: i32) -> usize {
        (s + self.n as i32) as usize
    }

    #[inline]
    fn label(&self, i: usize) -> i32 {
        i as i32 - self.n as i32
    }

    /// Closure of the covers together with their negated mirrors.
    pub fn from_covers(n: usize, covers: &[(i32, i32)]) -> Result<Self> {
        let mut p = BPoset {
            n,
            rel: Closure::new(2 * n + 1),
        };
        for &(a, b) in covers {
            for x in [a, b] {
                if x.unsigned_abs() as usize > n {
                    return Err(Error::InvalidArgument(format!("label {x} outside ±{n}")));
                }
            }
            let m = p.rel.size;
            let (ia, ib, ma, mb) = (p.idx(a), p.idx(b), p.idx(-b), p.idx(-a));
            p.rel.less[ia * m + ib] = true;
            p.rel.less[ma * m + mb] = true;
        }
        if let Err(i) = p.rel.close() {
            let offending = covers
                .iter()
                .copied()
                .find(|&(a, b)| p.rel.get(p.idx(b), p.idx(a)))
                .unwrap_or((p.label(i), p.label(i)));
            return Err(Error::Inconsistent(offending.0, offending.1));
        }
        Ok(p)
    }

    /// No relations at all.
    pub fn antichain(n: usize) -> Self {
        BPoset {
            n,
            rel: Closure::new(2 * n + 1),
        }
    }

    /// The total order `−π(n) < ⋯ < −π(1) < 0 < π(1) < ⋯ < π(n)`.
    pub fn chain(pi: &SignedPermutation) -> Self {
        let mut labels = vec![0];
        labels.extend(pi.window());
        let covers: Vec<(i32, i32)> = labels.windows(2).map(|p| (p[0], p[1])).collect();
        BPoset::from_covers(pi.n(), &covers).expect("a signed chain is acyclic")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `a <_P b` for labels in `−n..=n`.
    pub fn less(&self, a: i32, b: i32) -> bool {
        self.rel.get(self.idx(a), self.idx(b))
    }

    /// All pairs `a <_P b`, lexicographically.
    pub fn relations(&self) -> Vec<(i32, i32)> {
        let m = self.rel.size;
        let mut out = Vec::new();
        for a in 0..m {
            for b in 0..m {
                if self.rel.get(a, b) {
                    out.push((self.label(a), self.label(b)));
                }
            }
        }
        out
    }

    /// Covers of the Hasse diagram, one representative per mirror pair
    /// `{(a, b), (−b, −a)}` (the lexicographically smaller one).
    pub fn covers(&self) -> Vec<(i32, i32)> {
        self.rel
            .covers()
            .into_iter()
            .map(|(a, b)| (self.label(a), self.label(b)))
            .filter(|&(a, b)| (a, b) <= (-b, -a))
            .collect()
    }

    /// Signed permutations whose chain refines the poset, in lexicographic
    /// order.
    pub fn linear_extensions(&self) -> Result<Vec<SignedPermutation>> {
        if self.n > MAX_ENUM_B {
            return Err(Error::Capacity {
                what: "linear extensions of a type B poset",
                requested: self.n as u128,
                limit: MAX_ENUM_B as u128,
            });
        }
        let rels = self.relations();
        let mut pos = vec![0i32; 2 * self.n + 1];
        let mut out = Vec::new();
        for w in enumerate_group(self.n, GroupKind::B)? {
            for (s, &v) in w.as_slice().iter().enumerate() {
                let s = s as i32 + 1;
                pos[self.idx(v as i32)] = s;
                pos[self.idx(-(v as i32))] = -s;
            }
            if rels
                .iter()
                .all(|&(a, b)| pos[self.idx(a)] < pos[self.idx(b)])
            {
                out.push(SignedPermutation::from_packed(w));
            }
        }
        Ok(out)
    }

    /// A type B poset refined by a random hidden signed chain, keeping each
    /// comparable pair of chain positions `0..=n` with probability
    /// `density`.
    pub fn random<R: Rng>(n: usize, density: f64, rng: &mut R) -> Self {
        let mut labels: Vec<i32> = (1..=n as i32).collect();
        labels.shuffle(rng);
        for l in &mut labels {
            if rng.gen_bool(0.5) {
                *l = -*l;
            }
        }
        labels.insert(0, 0);
        let mut covers = Vec::new();
        for i in 0..=n {
            for j in i + 1..=n {
                if rng.gen_bool(density) {
                    covers.push((labels[i], labels[j]));
                }
            }
        }
        BPoset::from_covers(n, &covers).expect("covers follow a signed chain")
    }
}

impl fmt::Debug for BPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BPoset({}; {:?})", self.n, self.covers())
    }
}
