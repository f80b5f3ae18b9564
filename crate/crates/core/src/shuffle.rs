//! Riffle-shuffle distributions.
//!
//! The probability of the arrangement `π` after one `a`-shuffle of the
//! ordered deck is the coefficient of `π` in the bar structure polynomial at
//! `x = a`, divided by `a^n`. An arrangement lists the cards from the top,
//! so `π(j)` is the card in position `j`; its number of rising sequences is
//! `des(π^{-1}) + 1`.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Rational;
use crate::descent::{
    group_with_stats, structure_poly_from, Counterexample, Element, StructureKind,
    VerificationReport,
};
use crate::error::{Error, Result};
use crate::perm::{enumerate_group, GroupKind, PackedWindow};

/// Most digit words [`gsr_oracle`] will enumerate.
pub const GSR_WORK_LIMIT: u128 = 1 << 26;

/// Largest `m` accepted by [`repeated_shuffle`]; `2^m` must fit an `i64`.
pub const MAX_REPEAT: u32 = 62;

/// A probability distribution on `S_n`. Probabilities are nonnegative and
/// sum to exactly one.
#[derive(Debug, Clone, PartialEq)]
pub struct ShuffleDistribution {
    n: usize,
    /// Packet count; `None` for distributions that are not a single shuffle.
    a: Option<u64>,
    dist: Element,
}

#[derive(Debug, Clone, Serialize)]
struct EntryJson {
    perm: Vec<i32>,
    p: String,
}

#[derive(Debug, Clone, Serialize)]
struct DistributionJson {
    n: usize,
    a: Option<u64>,
    probabilities: Vec<EntryJson>,
}

impl ShuffleDistribution {
    /// The uniform distribution `1/n!` on `S_n`.
    pub fn uniform(n: usize) -> Result<Self> {
        let all = enumerate_group(n, GroupKind::A)?;
        let p = Rational::new(1, all.len() as i64);
        let dist = Element::from_terms(GroupKind::A, n, all.into_iter().map(|w| (w, p.clone())))?;
        Ok(ShuffleDistribution { n, a: None, dist })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> Option<u64> {
        self.a
    }

    pub fn probability(&self, w: &PackedWindow) -> Rational {
        self.dist.coeff(w)
    }

    /// The distribution as a group algebra element.
    pub fn element(&self) -> &Element {
        &self.dist
    }

    /// Every permutation of `S_n` with its probability, zeros included, in
    /// canonical order.
    pub fn entries(&self) -> Result<Vec<(PackedWindow, Rational)>> {
        Ok(enumerate_group(self.n, GroupKind::A)?
            .into_iter()
            .map(|w| (w, self.dist.coeff(&w)))
            .collect())
    }

    /// The distribution of performing `self` then `other`.
    pub fn then(&self, other: &Self) -> Result<Self> {
        let a = match (self.a, other.a) {
            (Some(x), Some(y)) => x.checked_mul(y),
            _ => None,
        };
        // position j ends up holding card self(other(j))
        Ok(ShuffleDistribution {
            n: self.n,
            a,
            dist: self.dist.convolve(&other.dist)?,
        })
    }

    pub fn total(&self) -> Rational {
        self.dist.augmentation()
    }

    pub fn to_json(&self) -> Result<String> {
        let probabilities = self
            .entries()?
            .into_iter()
            .map(|(w, p)| EntryJson {
                perm: w.to_vec(),
                p: p.to_string(),
            })
            .collect();
        let j = DistributionJson {
            n: self.n,
            a: self.a,
            probabilities,
        };
        Ok(serde_json::to_string(&j)?)
    }

    /// `window,probability` rows with a header, windows space-free and
    /// quoted.
    pub fn to_csv(&self) -> Result<String> {
        let mut out = String::from("perm,probability\n");
        for (w, p) in self.entries()? {
            let win: Vec<String> = w.to_vec().iter().map(i32::to_string).collect();
            out.push_str(&format!("\"{}\",{p}\n", win.join(",")));
        }
        Ok(out)
    }
}

/// One `a`-shuffle: `φ̄(a)/a^n`.
pub fn a_shuffle_distribution(n: usize, a: u64) -> Result<ShuffleDistribution> {
    let stats = group_with_stats(n, StructureKind::A)?;
    shuffle_from(&stats, n, a)
}

fn shuffle_from(stats: &[(PackedWindow, usize)], n: usize, a: u64) -> Result<ShuffleDistribution> {
    if a == 0 || a > i64::MAX as u64 {
        return Err(Error::InvalidArgument(format!(
            "packet count {a} outside 1..=2^63-1"
        )));
    }
    let x = Rational::from_int(a as i64);
    let norm = x.pow(n as u32).recip()?;
    let dist = structure_poly_from(stats, n, StructureKind::A, &x, true)?.scale(&norm);
    Ok(ShuffleDistribution {
        n,
        a: Some(a),
        dist,
    })
}

/// `m` successive 2-shuffles, by the closed form `φ̄(2^m)/2^{mn}`.
pub fn repeated_shuffle(n: usize, m: u32) -> Result<ShuffleDistribution> {
    if m == 0 || m > MAX_REPEAT {
        return Err(Error::InvalidArgument(format!(
            "repeat count {m} outside 1..={MAX_REPEAT}"
        )));
    }
    a_shuffle_distribution(n, 1 << m)
}

/// Brute force over all `a^n` digit words: each word cuts the deck by a
/// stable sort of positions by digit (the inverse shuffle); the riffle
/// result is the inverse of that arrangement.
pub fn gsr_oracle(n: usize, a: u64) -> Result<ShuffleDistribution> {
    if a == 0 || n == 0 {
        return Err(Error::InvalidArgument(
            "deck size and packet count must be positive".into(),
        ));
    }
    let words = (a as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if words > GSR_WORK_LIMIT {
        return Err(Error::Capacity {
            what: "digit words",
            requested: words,
            limit: GSR_WORK_LIMIT,
        });
    }
    let count_prefix = |first: u64| -> BTreeMap<Vec<i32>, u64> {
        let mut counts = BTreeMap::new();
        let mut digits = vec![0u64; n];
        digits[0] = first;
        loop {
            // cut: arrangement lists positions with digit 0 first, then 1, ...
            let mut arrangement = Vec::with_capacity(n);
            for v in 0..a {
                arrangement.extend((0..n).filter(|&i| digits[i] == v));
            }
            let mut riffle = vec![0i32; n];
            for (pos, &card) in arrangement.iter().enumerate() {
                riffle[card] = pos as i32 + 1;
            }
            *counts.entry(riffle).or_insert(0) += 1;
            // odometer over digits 1..n
            let mut i = n;
            loop {
                if i <= 1 {
                    return counts;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < a {
                    break;
                }
                digits[i] = 0;
            }
        }
    };
    let merged = (0..a)
        .into_par_iter()
        .map(count_prefix)
        .reduce(BTreeMap::new, |mut acc, part| {
            for (k, v) in part {
                *acc.entry(k).or_insert(0) += v;
            }
            acc
        });
    let total = words as i64;
    let terms = merged
        .into_iter()
        .map(|(w, c)| {
            Ok((
                PackedWindow::from_signed(&w)?,
                Rational::new(c as i64, total),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ShuffleDistribution {
        n,
        a: Some(a),
        dist: Element::from_terms(GroupKind::A, n, terms)?,
    })
}

/// `½ Σ_π |d1(π) − d2(π)|`.
pub fn total_variation(d1: &ShuffleDistribution, d2: &ShuffleDistribution) -> Result<Rational> {
    let diff = d1.dist.sub(&d2.dist)?;
    let mut sum = Rational::zero();
    for (_, c) in diff.terms() {
        sum += &c.abs();
    }
    Ok(&sum * &Rational::new(1, 2))
}

/// `(m, distance to uniform after m 2-shuffles)` for `m = 1..=m_max`.
pub fn tvd_table(n: usize, m_max: u32) -> Result<Vec<(u32, Rational)>> {
    let uniform = ShuffleDistribution::uniform(n)?;
    (1..=m_max)
        .map(|m| Ok((m, total_variation(&repeated_shuffle(n, m)?, &uniform)?)))
        .collect()
}

/// CSV rows `m,decimal,exact` with the decimal to `places` digits.
pub fn tvd_csv(rows: &[(u32, Rational)], places: usize) -> String {
    let mut out = String::from("m,tvd,tvd_exact\n");
    for (m, t) in rows {
        out.push_str(&format!("{m},{},{t}\n", t.to_decimal(places)));
    }
    out
}

/// Brute-force agreement for `a ≤ 4`, the closed form of `m ≤ 3` repeated
/// shuffles against iterated convolution, the composition law for
/// `a, b ≤ 3`, and normalization of every distribution involved.
pub fn verify_shuffle(n: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    let stats = group_with_stats(n, StructureKind::A)?;
    let mut grid = Vec::new();
    let mut cex: Option<Counterexample> = None;
    let mut record =
        |point: Vec<String>, check: &str, lhs: &ShuffleDistribution, rhs: &ShuffleDistribution| {
            grid.push(point.clone());
            if cex.is_some() {
                return;
            }
            if let Some((w, x, y)) = lhs.dist.first_difference(&rhs.dist) {
                cex = Some(Counterexample::new(check, point, w.to_vec(), x, y));
            } else if lhs.total() != Rational::one() {
                cex = Some(Counterexample::new(
                    "normalization",
                    point,
                    vec![],
                    lhs.total(),
                    Rational::one(),
                ));
            }
        };

    let shuffles: Vec<ShuffleDistribution> = (1..=9)
        .map(|a| shuffle_from(&stats, n, a))
        .collect::<Result<_>>()?;
    let by_a = |a: u64| &shuffles[a as usize - 1];

    for a in 1..=4u64 {
        if (a as u128).pow(n as u32) > GSR_WORK_LIMIT {
            continue;
        }
        record(
            vec!["gsr".into(), format!("{a}/1")],
            "gsr",
            &gsr_oracle(n, a)?,
            by_a(a),
        );
    }
    let mut iterated = by_a(2).clone();
    for m in 1..=3u32 {
        if m > 1 {
            iterated = iterated.then(by_a(2))?;
        }
        let closed = if m == 3 {
            shuffle_from(&stats, n, 8)?
        } else {
            by_a(1 << m).clone()
        };
        record(
            vec!["repeat".into(), format!("{m}/1")],
            "repeat",
            &iterated,
            &closed,
        );
    }
    for a in 1..=3u64 {
        for b in 1..=3u64 {
            let point = vec!["compose".into(), format!("{a}/1"), format!("{b}/1")];
            record(point, "compose", &by_a(a).then(by_a(b))?, by_a(a * b));
        }
    }
    Ok(VerificationReport::finish("shuffle", n, grid, cex, started))
}
