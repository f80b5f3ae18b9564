//! Convolution kernels. `generic` is the reference; the ring-specific
//! kernels clear denominators, accumulate in `i128` over a dense rank-indexed
//! buffer and return `None` whenever an exact fast path is unavailable
//! (huge group, coefficient outside `i64`, or accumulator overflow).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::perm::{GroupKind, PackedWindow};

use super::element::Coefficient;
use super::qpoly::QPolynomial;
use super::rational::Rational;

/// Largest group order that gets a dense accumulator.
const DENSE_LIMIT: u128 = 1 << 20;

/// Pair count above which the outer loop is split across threads.
const PAR_THRESHOLD: usize = 1 << 14;

pub(crate) fn generic<C: Coefficient>(
    a: &[(PackedWindow, C)],
    b: &[(PackedWindow, C)],
) -> Vec<(PackedWindow, C)> {
    let mut acc: BTreeMap<PackedWindow, C> = BTreeMap::new();
    for (s, x) in a {
        for (t, y) in b {
            let p = s.compose_unchecked(t);
            let v = x.mul_ref(y);
            match acc.get_mut(&p) {
                Some(slot) => *slot = slot.add_ref(&v),
                None => {
                    acc.insert(p, v);
                }
            }
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Runs `body(acc, i)` for every outer index, in parallel when the work is
/// large. `body` and `merge` report overflow by returning `false` / `None`.
fn drive<Acc, M, B, R>(outer: usize, inner: usize, make: M, body: B, merge: R) -> Option<Acc>
where
    Acc: Send,
    M: Fn() -> Acc + Sync + Send,
    B: Fn(&mut Acc, usize) -> bool + Sync + Send,
    R: Fn(Acc, Acc) -> Option<Acc> + Sync + Send,
{
    if outer.saturating_mul(inner) < PAR_THRESHOLD || rayon::current_num_threads() == 1 {
        let mut acc = make();
        for i in 0..outer {
            if !body(&mut acc, i) {
                return None;
            }
        }
        return Some(acc);
    }
    let min_len = (outer / (4 * rayon::current_num_threads())).max(1);
    (0..outer)
        .into_par_iter()
        .with_min_len(min_len)
        .try_fold(&make, |mut acc, i| body(&mut acc, i).then_some(acc))
        .try_reduce(&make, merge)
}

/// Visits every `(s∘t, i, j)` with the sparser operand outermost.
#[inline]
fn for_pairs(
    a: &[PackedWindow],
    b: &[PackedWindow],
    outer_idx: usize,
    mut f: impl FnMut(PackedWindow, usize, usize) -> bool,
) -> bool {
    if a.len() <= b.len() {
        let s = &a[outer_idx];
        b.iter()
            .enumerate()
            .all(|(j, t)| f(s.compose_unchecked(t), outer_idx, j))
    } else {
        let t = &b[outer_idx];
        a.iter()
            .enumerate()
            .all(|(i, s)| f(s.compose_unchecked(t), i, outer_idx))
    }
}

fn lcm_of<'a>(dens: impl Iterator<Item = &'a BigInt>) -> BigInt {
    dens.fold(BigInt::one(), |acc, d| acc.lcm(d))
}

fn cleared(r: &Rational, den: &BigInt) -> Option<i64> {
    (r.numer() * (den / r.denom())).to_i64()
}

struct DenseScalar {
    vals: Vec<i128>,
    keys: Vec<Option<PackedWindow>>,
}

pub(crate) fn rational(
    kind: GroupKind,
    n: usize,
    a: &[(PackedWindow, Rational)],
    b: &[(PackedWindow, Rational)],
) -> Option<Vec<(PackedWindow, Rational)>> {
    let order = kind.order(n);
    if order > DENSE_LIMIT {
        return None;
    }
    let order = order as usize;
    let da = lcm_of(a.iter().map(|(_, c)| c.denom()));
    let db = lcm_of(b.iter().map(|(_, c)| c.denom()));
    let ia: Vec<i64> = a
        .iter()
        .map(|(_, c)| cleared(c, &da))
        .collect::<Option<_>>()?;
    let ib: Vec<i64> = b
        .iter()
        .map(|(_, c)| cleared(c, &db))
        .collect::<Option<_>>()?;
    let wa: Vec<PackedWindow> = a.iter().map(|(w, _)| *w).collect();
    let wb: Vec<PackedWindow> = b.iter().map(|(w, _)| *w).collect();
    let (outer, inner) = if wa.len() <= wb.len() {
        (wa.len(), wb.len())
    } else {
        (wb.len(), wa.len())
    };

    let make = || DenseScalar {
        vals: vec![0; order],
        keys: vec![None; order],
    };
    let body = |acc: &mut DenseScalar, o: usize| {
        for_pairs(&wa, &wb, o, |p, i, j| {
            let r = p.rank(kind);
            acc.keys[r] = Some(p);
            match acc.vals[r].checked_add(ia[i] as i128 * ib[j] as i128) {
                Some(v) => {
                    acc.vals[r] = v;
                    true
                }
                None => false,
            }
        })
    };
    let merge = |mut x: DenseScalar, y: DenseScalar| {
        for (r, key) in y.keys.into_iter().enumerate() {
            if let Some(k) = key {
                x.keys[r] = Some(k);
                x.vals[r] = x.vals[r].checked_add(y.vals[r])?;
            }
        }
        Some(x)
    };
    let acc = drive(outer, inner, make, body, merge)?;

    let den = da * db;
    let mut out: Vec<(PackedWindow, Rational)> = acc
        .keys
        .into_iter()
        .zip(acc.vals)
        .filter_map(|(k, v)| {
            let k = k?;
            (v != 0).then(|| {
                (
                    k,
                    Rational::from_parts(BigInt::from(v), den.clone()).expect("nonzero"),
                )
            })
        })
        .collect();
    out.sort_unstable_by_key(|x| x.0);
    Some(out)
}

/// Dense integer coefficients (lowest degree first) after multiplying by
/// the common denominator `den`.
fn cleared_poly(p: &QPolynomial, den: &BigInt) -> Option<Vec<i64>> {
    let len = p.degree().map_or(0, |d| d as usize + 1);
    let mut out = vec![0i64; len];
    for (e, c) in p.terms() {
        out[e as usize] = cleared(c, den)?;
    }
    Some(out)
}

struct DensePoly {
    vals: Vec<Option<(PackedWindow, Vec<i128>)>>,
}

pub(crate) fn qpoly(
    kind: GroupKind,
    n: usize,
    a: &[(PackedWindow, QPolynomial)],
    b: &[(PackedWindow, QPolynomial)],
) -> Option<Vec<(PackedWindow, QPolynomial)>> {
    let order = kind.order(n);
    if order > DENSE_LIMIT {
        return None;
    }
    let order = order as usize;
    let da = lcm_of(
        a.iter()
            .flat_map(|(_, p)| p.terms().map(|(_, c)| c.denom())),
    );
    let db = lcm_of(
        b.iter()
            .flat_map(|(_, p)| p.terms().map(|(_, c)| c.denom())),
    );
    let pa: Vec<Vec<i64>> = a
        .iter()
        .map(|(_, p)| cleared_poly(p, &da))
        .collect::<Option<_>>()?;
    let pb: Vec<Vec<i64>> = b
        .iter()
        .map(|(_, p)| cleared_poly(p, &db))
        .collect::<Option<_>>()?;
    let len =
        pa.iter().map(Vec::len).max().unwrap_or(0) + pb.iter().map(Vec::len).max().unwrap_or(0);
    let wa: Vec<PackedWindow> = a.iter().map(|(w, _)| *w).collect();
    let wb: Vec<PackedWindow> = b.iter().map(|(w, _)| *w).collect();
    let (outer, inner) = if wa.len() <= wb.len() {
        (wa.len(), wb.len())
    } else {
        (wb.len(), wa.len())
    };

    let make = || DensePoly {
        vals: vec![None; order],
    };
    let body = |acc: &mut DensePoly, o: usize| {
        for_pairs(&wa, &wb, o, |p, i, j| {
            let slot = &mut acc.vals[p.rank(kind)];
            let (_, dst) = slot.get_or_insert_with(|| (p, vec![0; len]));
            for (x, &cx) in pa[i].iter().enumerate() {
                if cx == 0 {
                    continue;
                }
                for (y, &cy) in pb[j].iter().enumerate() {
                    match dst[x + y].checked_add(cx as i128 * cy as i128) {
                        Some(v) => dst[x + y] = v,
                        None => return false,
                    }
                }
            }
            true
        })
    };
    let merge = |mut x: DensePoly, y: DensePoly| {
        for (r, entry) in y.vals.into_iter().enumerate() {
            let Some((k, src)) = entry else { continue };
            match &mut x.vals[r] {
                Some((_, dst)) => {
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d = d.checked_add(s)?;
                    }
                }
                none => *none = Some((k, src)),
            }
        }
        Some(x)
    };
    let acc = drive(outer, inner, make, body, merge)?;

    let den = da * db;
    let mut out: Vec<(PackedWindow, QPolynomial)> = acc
        .vals
        .into_iter()
        .flatten()
        .filter_map(|(k, dense)| {
            let coeffs: BTreeMap<u32, Rational> = dense
                .into_iter()
                .enumerate()
                .filter(|(_, v)| *v != 0)
                .map(|(e, v)| {
                    (
                        e as u32,
                        Rational::from_parts(BigInt::from(v), den.clone()).expect("nonzero"),
                    )
                })
                .collect();
            let p = QPolynomial::from_map(coeffs);
            (!p.is_zero()).then_some((k, p))
        })
        .collect();
    out.sort_unstable_by_key(|x| x.0);
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::enumerate_group;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_rational(
        rng: &mut ChaCha8Rng,
        group: &[PackedWindow],
        density: f64,
    ) -> Vec<(PackedWindow, Rational)> {
        let mut out = Vec::new();
        for w in group {
            if rng.gen_bool(density) {
                let c = Rational::new(rng.gen_range(-20..=20), rng.gen_range(1..=6));
                if !c.is_zero() {
                    out.push((*w, c));
                }
            }
        }
        out
    }

    #[test]
    fn rational_kernel_matches_reference() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (kind, n) in [
            (GroupKind::A, 1),
            (GroupKind::A, 3),
            (GroupKind::A, 5),
            (GroupKind::B, 2),
            (GroupKind::B, 3),
        ] {
            let group = enumerate_group(n, kind).unwrap();
            for density in [0.05, 0.5, 1.0] {
                let a = random_rational(&mut rng, &group, density);
                let b = random_rational(&mut rng, &group, 1.0 - density / 2.0);
                assert_eq!(
                    rational(kind, n, &a, &b).unwrap(),
                    generic(&a, &b),
                    "{kind} n={n}"
                );
                assert_eq!(rational(kind, n, &b, &a).unwrap(), generic(&b, &a));
            }
        }
    }

    #[test]
    fn rational_kernel_declines_on_overflow() {
        let group = enumerate_group(4, GroupKind::A).unwrap();
        let big = Rational::from_int(i64::MAX);
        let a: Vec<_> = group.iter().map(|w| (*w, big.clone())).collect();
        assert!(rational(GroupKind::A, 4, &a, &a).is_none());
        let c: BigInt = BigInt::from(i64::MAX) * BigInt::from(i64::MAX) * 24;
        let expected: Vec<_> = group
            .iter()
            .map(|w| (*w, Rational::from_bigint(c.clone())))
            .collect();
        assert_eq!(generic(&a, &a), expected);
    }

    #[test]
    fn qpoly_kernel_matches_reference() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (kind, n) in [(GroupKind::A, 3), (GroupKind::A, 4), (GroupKind::B, 2)] {
            let group = enumerate_group(n, kind).unwrap();
            let make = |rng: &mut ChaCha8Rng| -> Vec<(PackedWindow, QPolynomial)> {
                let mut out = Vec::new();
                for w in &group {
                    if !rng.gen_bool(0.6) {
                        continue;
                    }
                    let mut p = QPolynomial::zero();
                    for e in 0..=rng.gen_range(0..5u32) {
                        p = &p
                            + &QPolynomial::monomial(
                                e,
                                Rational::new(rng.gen_range(-5..=5), rng.gen_range(1..=3)),
                            );
                    }
                    if !p.is_zero() {
                        out.push((*w, p));
                    }
                }
                out
            };
            let a = make(&mut rng);
            let b = make(&mut rng);
            assert_eq!(qpoly(kind, n, &a, &b).unwrap(), generic(&a, &b));
        }
    }

    #[test]
    fn empty_operands() {
        let a: Vec<(PackedWindow, Rational)> = Vec::new();
        let b = vec![(PackedWindow::identity(2), Rational::one())];
        assert!(rational(GroupKind::A, 2, &a, &b).unwrap().is_empty());
        assert!(rational(GroupKind::A, 2, &b, &a).unwrap().is_empty());
    }
}
