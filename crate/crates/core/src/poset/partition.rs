//! Brute-force P-partition oracles and the closed forms they must match.
//!
//! Scales: ordinary labels take values in `{0, …, k−1}` (any `k`-element
//! scale gives the same count); type B labels satisfy `f(−i) = −f(i)`,
//! `f(0) = 0` with values in `{−k, …, k}`; augmented additionally keeps
//! positive labels below the top value `k`. The q-weight is
//! `Π_{i=1}^{n} q^{f(i)}` (ordinary) or `Π_{i=1}^{n} q^{|f(i)|}` (type B and
//! augmented).

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::algebra::binomial::{binom_int, qbinomial};
use crate::algebra::QPolynomial;
use crate::error::{Error, Result};
use crate::perm::{PackedWindow, Permutation, SignedPermutation};

use super::{AnyPoset, BPoset, Poset};

/// Upper bound on raw label assignments (before pruning) an oracle accepts.
pub const WORK_LIMIT: u128 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    Ordinary,
    TypeB,
    Augmented,
}

impl std::str::FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ordinary" | "a" => Ok(Flavor::Ordinary),
            "typeb" | "b" => Ok(Flavor::TypeB),
            "aug" | "augmented" => Ok(Flavor::Augmented),
            _ => Err(Error::Parse(format!("unknown flavor {s:?}"))),
        }
    }
}

/// Borrowed view of either poset kind.
#[derive(Debug, Clone, Copy)]
pub enum PosetRef<'a> {
    A(&'a Poset),
    B(&'a BPoset),
}

impl<'a> From<&'a Poset> for PosetRef<'a> {
    fn from(p: &'a Poset) -> Self {
        PosetRef::A(p)
    }
}

impl<'a> From<&'a BPoset> for PosetRef<'a> {
    fn from(p: &'a BPoset) -> Self {
        PosetRef::B(p)
    }
}

impl<'a> From<&'a AnyPoset> for PosetRef<'a> {
    fn from(p: &'a AnyPoset) -> Self {
        match p {
            AnyPoset::A(p) => PosetRef::A(p),
            AnyPoset::B(p) => PosetRef::B(p),
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Term {
    Zero,
    /// `sign · value[var]`
    Var(usize, i32),
}

#[derive(Debug, Clone, Copy)]
struct Check {
    a: Term,
    b: Term,
    strict: bool,
}

/// Label assignment problem: one variable per positive label, each ranging
/// over `lo..=hi`. `checks[v]` holds the constraints whose last variable is
/// `v`.
struct Problem {
    vars: usize,
    lo: i32,
    hi: i32,
    checks: Vec<Vec<Check>>,
    signed_weight: bool,
}

impl Problem {
    fn build(p: PosetRef<'_>, k: usize, flavor: Flavor) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("k must be positive".into()));
        }
        let k = i32::try_from(k).map_err(|_| Error::InvalidArgument("k too large".into()))?;
        let (vars, lo, hi, relations): (usize, i32, i32, Vec<(i32, i32)>) = match (p, flavor) {
            (PosetRef::A(p), Flavor::Ordinary) => (
                p.n(),
                0,
                k - 1,
                p.relations()
                    .into_iter()
                    .map(|(a, b)| (a as i32, b as i32))
                    .collect(),
            ),
            (PosetRef::B(p), Flavor::TypeB) => (p.n(), -k, k, p.relations()),
            (PosetRef::B(p), Flavor::Augmented) => (p.n(), -k, k - 1, p.relations()),
            (PosetRef::A(_), f) => {
                return Err(Error::InvalidArgument(format!(
                    "{f:?} flavor needs a type B poset"
                )))
            }
            (PosetRef::B(_), _) => {
                return Err(Error::InvalidArgument(
                    "ordinary flavor needs a type A poset".into(),
                ))
            }
        };
        let width = (hi - lo + 1) as u128;
        let work = width.checked_pow(vars as u32).unwrap_or(u128::MAX);
        if work > WORK_LIMIT {
            return Err(Error::Capacity {
                what: "P-partition label assignments",
                requested: work,
                limit: WORK_LIMIT,
            });
        }
        let term = |s: i32| match s {
            0 => Term::Zero,
            s => Term::Var(s.unsigned_abs() as usize - 1, s.signum()),
        };
        let last = |t: Term| match t {
            Term::Zero => None,
            Term::Var(v, _) => Some(v),
        };
        let mut checks = vec![Vec::new(); vars];
        for (a, b) in relations {
            let c = Check {
                a: term(a),
                b: term(b),
                strict: a > b,
            };
            let v = last(c.a)
                .max(last(c.b))
                .expect("0 <_P 0 is excluded by irreflexivity");
            checks[v].push(c);
        }
        Ok(Problem {
            vars,
            lo,
            hi,
            checks,
            signed_weight: flavor != Flavor::Ordinary,
        })
    }

    #[inline]
    fn ok(&self, vals: &[i32], v: usize) -> bool {
        let val = |t: Term| match t {
            Term::Zero => 0,
            Term::Var(i, s) => s * vals[i],
        };
        self.checks[v].iter().all(|c| {
            let (x, y) = (val(c.a), val(c.b));
            if c.strict {
                x < y
            } else {
                x <= y
            }
        })
    }

    fn satisfied(&self, vals: &[i32]) -> bool {
        (0..self.vars).all(|v| self.ok(vals, v))
    }

    fn weight(&self, vals: &[i32]) -> usize {
        if self.signed_weight {
            vals.iter().map(|v| v.unsigned_abs() as usize).sum()
        } else {
            vals.iter().map(|&v| v as usize).sum()
        }
    }

    fn dfs(&self, vals: &mut [i32], depth: usize, visit: &mut dyn FnMut(&[i32])) {
        if depth == self.vars {
            visit(vals);
            return;
        }
        for x in self.lo..=self.hi {
            vals[depth] = x;
            if self.ok(vals, depth) {
                self.dfs(vals, depth + 1, visit);
            }
        }
    }

    /// Runs `fold` over all solutions, fanning out over the first
    /// variable's values; partial results are merged in value order.
    fn par_fold<T: Send>(
        &self,
        init: impl Fn() -> T + Sync,
        fold: impl Fn(&mut T, &[i32]) + Sync,
        merge: impl Fn(T, T) -> T + Sync,
    ) -> T {
        if self.vars == 0 {
            let mut acc = init();
            fold(&mut acc, &[]);
            return acc;
        }
        let parts: Vec<T> = (self.lo..=self.hi)
            .into_par_iter()
            .map(|x| {
                let mut acc = init();
                let mut vals = vec![0; self.vars];
                vals[0] = x;
                if self.ok(&vals, 0) {
                    self.dfs(&mut vals, 1, &mut |f| fold(&mut acc, f));
                }
                acc
            })
            .collect();
        parts.into_iter().fold(init(), merge)
    }
}

/// Visits every P-partition as the value vector `(f(1), …, f(n))`.
pub fn for_each_partition<'a>(
    p: impl Into<PosetRef<'a>>,
    k: usize,
    flavor: Flavor,
    mut visit: impl FnMut(&[i32]),
) -> Result<()> {
    let prob = Problem::build(p.into(), k, flavor)?;
    let mut vals = vec![0; prob.vars];
    prob.dfs(&mut vals, 0, &mut visit);
    Ok(())
}

/// Number of P-partitions, by exhaustive enumeration.
pub fn count_partitions<'a>(p: impl Into<PosetRef<'a>>, k: usize, flavor: Flavor) -> Result<u64> {
    let prob = Problem::build(p.into(), k, flavor)?;
    Ok(prob.par_fold(|| 0u64, |acc, _| *acc += 1, |a, b| a + b))
}

/// q-weighted P-partition count, by exhaustive enumeration.
pub fn q_count_partitions<'a>(
    p: impl Into<PosetRef<'a>>,
    k: usize,
    flavor: Flavor,
) -> Result<QPolynomial> {
    let prob = Problem::build(p.into(), k, flavor)?;
    let top = prob.vars * (prob.hi.unsigned_abs().max(prob.lo.unsigned_abs()) as usize) + 1;
    let hist = prob.par_fold(
        || vec![0i64; top],
        |acc, f| acc[prob.weight(f)] += 1,
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
    );
    Ok(QPolynomial::from_ints(hist))
}

/// Disjointness tagging for the fundamental theorem: every P-partition is
/// matched against each linear extension's chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagReport {
    /// Partitions tagged with exactly this extension, in extension order.
    pub per_extension: Vec<u64>,
    /// Partitions matching no extension.
    pub untagged: u64,
    /// Partitions matching two or more extensions.
    pub multiply_tagged: u64,
}

impl TagReport {
    pub fn is_disjoint_cover(&self) -> bool {
        self.untagged == 0 && self.multiply_tagged == 0
    }
}

pub fn extension_tags<'a>(
    p: impl Into<PosetRef<'a>>,
    k: usize,
    flavor: Flavor,
) -> Result<TagReport> {
    let p = p.into();
    let chains: Vec<Problem> = match p {
        PosetRef::A(q) => q
            .linear_extensions()?
            .iter()
            .map(|pi| Problem::build(PosetRef::A(&Poset::chain(pi)), k, flavor))
            .collect::<Result<_>>()?,
        PosetRef::B(q) => q
            .linear_extensions()?
            .iter()
            .map(|pi| Problem::build(PosetRef::B(&BPoset::chain(pi)), k, flavor))
            .collect::<Result<_>>()?,
    };
    let mut report = TagReport {
        per_extension: vec![0; chains.len()],
        untagged: 0,
        multiply_tagged: 0,
    };
    for_each_partition(p, k, flavor, |f| {
        let mut hits = chains.iter().enumerate().filter(|(_, c)| c.satisfied(f));
        match (hits.next(), hits.next()) {
            (None, _) => report.untagged += 1,
            (Some((i, _)), None) => report.per_extension[i] += 1,
            (Some(_), Some(_)) => report.multiply_tagged += 1,
        }
    })?;
    Ok(report)
}

fn check_flavor(w: &PackedWindow, flavor: Flavor) -> Result<()> {
    if flavor == Flavor::Ordinary && !w.is_unsigned() {
        return Err(Error::InvalidArgument(format!(
            "ordinary flavor needs an unsigned window, got {w}"
        )));
    }
    Ok(())
}

/// `(stat, shift)` such that the order polynomial is `C(k + shift − stat, n)`
/// and its q-analog carries `q^{weight}`.
fn closed_form_data(w: &PackedWindow, flavor: Flavor) -> Result<(i64, i64, u32)> {
    check_flavor(w, flavor)?;
    let n = w.n() as i64;
    Ok(match flavor {
        Flavor::Ordinary => {
            let pi = Permutation::from_packed(*w)?;
            (pi.des() as i64, n - 1, pi.comaj() as u32)
        }
        Flavor::TypeB => {
            let r = SignedPermutation::from_packed(*w).descent_stats();
            (r.des as i64, n, r.comaj as u32)
        }
        Flavor::Augmented => {
            let r = SignedPermutation::from_packed(*w).descent_stats();
            (r.ades as i64, n, r.acomaj as u32)
        }
    })
}

/// `C(k+n−1−des, n)`, `C(k+n−des, n)` or `C(k+n−ades, n)`.
pub fn order_poly_closed(w: &PackedWindow, k: usize, flavor: Flavor) -> Result<BigInt> {
    let (stat, shift, _) = closed_form_data(w, flavor)?;
    Ok(binom_int(k as i64 + shift - stat, w.n()))
}

/// `q^{comaj}·[k+n−1−des, n]_q`, `q^{comaj}·[k+n−des, n]_q` or
/// `q^{acomaj}·[k+n−ades, n]_q`.
pub fn q_order_poly_closed(w: &PackedWindow, k: usize, flavor: Flavor) -> Result<QPolynomial> {
    let (stat, shift, weight) = closed_form_data(w, flavor)?;
    let top = k as i64 + shift - stat;
    if top < 0 {
        return Ok(QPolynomial::zero());
    }
    Ok(qbinomial(top as u32, w.n() as u32).shift(weight))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;

    fn a(w: &str) -> Permutation {
        w.parse().unwrap()
    }

    fn b(w: &str) -> SignedPermutation {
        w.parse().unwrap()
    }

    #[test]
    fn antichain_counts() {
        for n in 1..=4 {
            for k in 1..=4usize {
                assert_eq!(
                    count_partitions(&Poset::antichain(n), k, Flavor::Ordinary).unwrap(),
                    (k as u64).pow(n as u32)
                );
                assert_eq!(
                    count_partitions(&BPoset::antichain(n), k, Flavor::TypeB).unwrap(),
                    (2 * k as u64 + 1).pow(n as u32)
                );
                assert_eq!(
                    count_partitions(&BPoset::antichain(n), k, Flavor::Augmented).unwrap(),
                    (2 * k as u64).pow(n as u32)
                );
            }
        }
    }

    #[test]
    fn chain_examples() {
        let pi = a("3,2,1,4");
        assert_eq!(
            count_partitions(&Poset::chain(&pi), 3, Flavor::Ordinary).unwrap(),
            1
        );
        assert_eq!(
            order_poly_closed(&pi.packed(), 3, Flavor::Ordinary).unwrap(),
            BigInt::from(1)
        );
        let s = b("-2,1");
        assert_eq!(
            count_partitions(&BPoset::chain(&s), 2, Flavor::TypeB).unwrap(),
            3
        );
        assert_eq!(
            order_poly_closed(&s.packed(), 2, Flavor::TypeB).unwrap(),
            BigInt::from(3)
        );
        assert_eq!(
            count_partitions(&BPoset::chain(&s), 2, Flavor::Augmented).unwrap(),
            1
        );
        assert_eq!(
            order_poly_closed(&s.packed(), 2, Flavor::Augmented).unwrap(),
            BigInt::from(1)
        );
    }

    #[test]
    fn q_chain_examples() {
        let pi = a("2,1");
        assert_eq!(
            q_count_partitions(&Poset::chain(&pi), 2, Flavor::Ordinary).unwrap(),
            QPolynomial::q_pow(1)
        );
        assert_eq!(
            q_order_poly_closed(&pi.packed(), 2, Flavor::Ordinary).unwrap(),
            QPolynomial::q_pow(1)
        );
        for k in 1..=6 {
            assert_eq!(
                q_count_partitions(&Poset::antichain(1), k, Flavor::Ordinary).unwrap(),
                QPolynomial::q_integer(k as u32)
            );
            let s = b("-2,1");
            let expected = qbinomial(k as u32, 2).shift(2);
            assert_eq!(
                q_count_partitions(&BPoset::chain(&s), k, Flavor::Augmented).unwrap(),
                expected
            );
            assert_eq!(
                q_order_poly_closed(&s.packed(), k, Flavor::Augmented).unwrap(),
                expected
            );
        }
    }

    #[test]
    fn oracle_matches_closed_form_small() {
        for k in 1..=4 {
            for pi in Permutation::all(3).unwrap() {
                let chain = Poset::chain(&pi);
                let q = q_count_partitions(&chain, k, Flavor::Ordinary).unwrap();
                assert_eq!(
                    q,
                    q_order_poly_closed(&pi.packed(), k, Flavor::Ordinary).unwrap()
                );
                assert_eq!(
                    q.eval(&Rational::one()),
                    Rational::from_bigint(
                        order_poly_closed(&pi.packed(), k, Flavor::Ordinary).unwrap()
                    )
                );
            }
            for pi in SignedPermutation::all(2).unwrap() {
                let chain = BPoset::chain(&pi);
                for flavor in [Flavor::TypeB, Flavor::Augmented] {
                    let q = q_count_partitions(&chain, k, flavor).unwrap();
                    assert_eq!(
                        q,
                        q_order_poly_closed(&pi.packed(), k, flavor).unwrap(),
                        "{pi} {flavor:?} k={k}"
                    );
                    assert_eq!(
                        count_partitions(&chain, k, flavor).unwrap() as i64,
                        q.eval(&Rational::one()).to_i64().unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn flavor_and_limit_checks() {
        assert!(count_partitions(&Poset::antichain(2), 2, Flavor::TypeB).is_err());
        assert!(count_partitions(&BPoset::antichain(2), 2, Flavor::Ordinary).is_err());
        assert!(count_partitions(&Poset::antichain(2), 0, Flavor::Ordinary).is_err());
        assert!(matches!(
            count_partitions(&Poset::antichain(8), 11, Flavor::Ordinary),
            Err(Error::Capacity { .. })
        ));
        assert!(order_poly_closed(&b("-1,2").packed(), 2, Flavor::Ordinary).is_err());
    }

    #[test]
    fn tagging_on_v_poset() {
        let p = Poset::from_covers(3, &[(3, 1), (3, 2)]).unwrap();
        let tags = extension_tags(&p, 3, Flavor::Ordinary).unwrap();
        assert!(tags.is_disjoint_cover());
        let exts = p.linear_extensions().unwrap();
        for (pi, &t) in exts.iter().zip(&tags.per_extension) {
            assert_eq!(
                t,
                count_partitions(&Poset::chain(pi), 3, Flavor::Ordinary).unwrap()
            );
        }
    }
}
