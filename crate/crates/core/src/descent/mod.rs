//! Eulerian elements, structure polynomials, their idempotents, q-analogs
//! and the exhaustive verification harness.

mod idempotent;
mod qanalog;
mod report;
mod verify;

use std::fmt;
use std::str::FromStr;

use crate::algebra::binomial::binom_poly_eval;
use crate::algebra::{GroupAlgebraElement, Rational};
use crate::error::{Error, Result};
use crate::perm::{enumerate_group, GroupKind, PackedWindow, Permutation, SignedPermutation};

pub use idempotent::{structure_poly_coeffs, IdempotentFamily};
pub use qanalog::{q_structure_poly, verify_q_identity, QPair};
pub use report::{Counterexample, VerificationReport};
pub use verify::{
    loday_elements, theta_map, verify_augmented_eulerian, verify_cyclic_eulerian,
    verify_eulerian_props, verify_ideal, verify_idempotents, verify_loday, verify_named,
    verify_product_identity, verify_theta, verify_theta_literal, ProductLaw, IDENTITY_NAMES,
};

/// Rational group algebra element, the common currency of this module.
pub type Element = GroupAlgebraElement<Rational>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StructureKind {
    /// `des` on `S_n`, coefficient `C(x+n−1−des, n)`.
    A,
    /// `cdes` on `S_n`, coefficient `C(x+n−1−cdes, n−1)/n`; needs `n ≥ 2`.
    Cyclic,
    /// Type B `des` on `B_n`, coefficient `C(x+n−des, n)`.
    B,
    /// `ades` on `B_n`, coefficient `C(x+n−ades, n)`.
    Augmented,
}

impl StructureKind {
    pub const ALL: [StructureKind; 4] = [
        StructureKind::A,
        StructureKind::Cyclic,
        StructureKind::B,
        StructureKind::Augmented,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StructureKind::A => "a",
            StructureKind::Cyclic => "cyclic",
            StructureKind::B => "b",
            StructureKind::Augmented => "aug",
        }
    }

    pub fn group(self) -> GroupKind {
        match self {
            StructureKind::A | StructureKind::Cyclic => GroupKind::A,
            StructureKind::B | StructureKind::Augmented => GroupKind::B,
        }
    }

    /// The statistic the kind is built on.
    pub fn stat(self, w: &PackedWindow) -> usize {
        match self {
            StructureKind::A => Permutation::from_packed(*w).expect("type A window").des(),
            StructureKind::Cyclic => Permutation::from_packed(*w).expect("type A window").cdes(),
            StructureKind::B => SignedPermutation::from_packed(*w).des(),
            StructureKind::Augmented => SignedPermutation::from_packed(*w).ades(),
        }
    }

    /// Valid Eulerian element indices.
    pub fn eulerian_range(self, n: usize) -> std::ops::RangeInclusive<usize> {
        match self {
            StructureKind::A => 1..=n,
            StructureKind::Cyclic => 1..=n - 1,
            StructureKind::B => 1..=n + 1,
            StructureKind::Augmented => 1..=n,
        }
    }

    /// Eulerian index carried by a statistic value.
    fn eulerian_index(self, stat: usize) -> usize {
        match self {
            StructureKind::A | StructureKind::B => stat + 1,
            StructureKind::Cyclic | StructureKind::Augmented => stat,
        }
    }

    /// Valid idempotent indices (powers of `x` after substitution).
    pub fn idempotent_range(self, n: usize) -> std::ops::RangeInclusive<usize> {
        match self {
            StructureKind::A => 1..=n,
            StructureKind::Cyclic => 1..=n - 1,
            StructureKind::B => 0..=n,
            StructureKind::Augmented => 1..=n,
        }
    }

    pub(crate) fn check_rank(self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidArgument("rank must be positive".into()));
        }
        if self == StructureKind::Cyclic && n < 2 {
            return Err(Error::InvalidArgument("the cyclic kind needs n ≥ 2".into()));
        }
        Ok(())
    }

    /// `(shift, degree, scale)` with coefficient `scale · C(x + shift − stat, degree)`.
    pub(crate) fn rule(self, n: usize) -> (i64, usize, Rational) {
        let n_i = n as i64;
        match self {
            StructureKind::A => (n_i - 1, n, Rational::one()),
            StructureKind::Cyclic => (n_i - 1, n - 1, Rational::new(1, n_i)),
            StructureKind::B | StructureKind::Augmented => (n_i, n, Rational::one()),
        }
    }

    /// Structure-polynomial coefficient of an element with statistic
    /// `stat`, at `x`.
    pub fn coefficient(self, n: usize, stat: usize, x: &Rational) -> Rational {
        let (shift, degree, scale) = self.rule(n);
        let t = x + &Rational::from_int(shift - stat as i64);
        &scale * &binom_poly_eval(&t, degree)
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StructureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(StructureKind::A),
            "cyclic" | "c" => Ok(StructureKind::Cyclic),
            "b" => Ok(StructureKind::B),
            "aug" | "augmented" => Ok(StructureKind::Augmented),
            _ => Err(Error::Parse(format!("unknown kind {s:?}"))),
        }
    }
}

/// Every group element with its kind statistic, in canonical order.
pub fn group_with_stats(n: usize, kind: StructureKind) -> Result<Vec<(PackedWindow, usize)>> {
    kind.check_rank(n)?;
    Ok(enumerate_group(n, kind.group())?
        .into_iter()
        .map(|w| (w, kind.stat(&w)))
        .collect())
}

/// Sum of the group elements whose Eulerian index is `i`.
pub fn eulerian_element(n: usize, kind: StructureKind, i: usize) -> Result<Element> {
    kind.check_rank(n)?;
    let range = kind.eulerian_range(n);
    if !range.contains(&i) {
        return Err(Error::InvalidArgument(format!(
            "Eulerian index {i} outside {}..={} for kind {kind}",
            range.start(),
            range.end()
        )));
    }
    let terms = group_with_stats(n, kind)?
        .into_iter()
        .filter(|&(_, s)| kind.eulerian_index(s) == i)
        .map(|(w, _)| (w, Rational::one()));
    Element::from_terms(kind.group(), n, terms)
}

/// `Σ_π c_kind(x, stat π)·π`, or with `π` replaced by `π^{-1}` when `bar`.
pub fn structure_poly_eval(
    n: usize,
    kind: StructureKind,
    x: &Rational,
    bar: bool,
) -> Result<Element> {
    structure_poly_from(&group_with_stats(n, kind)?, n, kind, x, bar)
}

/// [`structure_poly_eval`] over a precomputed [`group_with_stats`] list.
pub fn structure_poly_from(
    stats: &[(PackedWindow, usize)],
    n: usize,
    kind: StructureKind,
    x: &Rational,
    bar: bool,
) -> Result<Element> {
    let max_stat = stats.iter().map(|&(_, s)| s).max().unwrap_or(0);
    let table: Vec<Rational> = (0..=max_stat).map(|s| kind.coefficient(n, s, x)).collect();
    let terms = stats
        .iter()
        .map(|&(w, s)| (if bar { w.inverse() } else { w }, table[s].clone()));
    Element::from_terms(kind.group(), n, terms)
}

/// Histogram of the kind statistic. Entry `j` holds the coefficient of
/// `t^{j+1}`, where the exponent is `des+1` (A and B), `cdes` (Cyclic) or
/// `ades` (Augmented).
pub fn eulerian_polynomial(n: usize, kind: StructureKind) -> Result<Vec<u64>> {
    let range = {
        kind.check_rank(n)?;
        kind.eulerian_range(n)
    };
    let mut hist = vec![0u64; range.end() - range.start() + 1];
    for (_, s) in group_with_stats(n, kind)? {
        hist[kind.eulerian_index(s) - range.start()] += 1;
    }
    Ok(hist)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> PackedWindow {
        s.parse::<SignedPermutation>().unwrap().packed()
    }

    fn r(v: i64) -> Rational {
        Rational::from_int(v)
    }

    #[test]
    fn eulerian_element_examples() {
        let e = eulerian_element(3, StructureKind::A, 2).unwrap();
        let expected: Vec<PackedWindow> = ["1,3,2", "2,1,3", "2,3,1", "3,1,2"]
            .iter()
            .map(|s| w(s))
            .collect();
        assert_eq!(e, Element::indicator(GroupKind::A, 3, &expected).unwrap());
        assert_eq!(
            eulerian_element(3, StructureKind::Cyclic, 1)
                .unwrap()
                .support_size(),
            3
        );
        let aug = eulerian_element(1, StructureKind::Augmented, 1).unwrap();
        assert_eq!(
            aug,
            Element::indicator(GroupKind::B, 1, &[w("1"), w("-1")]).unwrap()
        );
        assert!(eulerian_element(3, StructureKind::A, 0).is_err());
        assert!(eulerian_element(3, StructureKind::Cyclic, 3).is_err());
        assert!(eulerian_element(1, StructureKind::Cyclic, 1).is_err());
    }

    #[test]
    fn eulerian_elements_partition_the_group() {
        for kind in StructureKind::ALL {
            for n in 2..=4 {
                let mut sum = Element::zero(kind.group(), n);
                for i in kind.eulerian_range(n) {
                    sum = sum.add(&eulerian_element(n, kind, i).unwrap()).unwrap();
                }
                let all = enumerate_group(n, kind.group()).unwrap();
                assert_eq!(
                    sum,
                    Element::indicator(kind.group(), n, &all).unwrap(),
                    "{kind} n={n}"
                );
            }
        }
    }

    #[test]
    fn structure_poly_examples() {
        let phi = structure_poly_eval(1, StructureKind::B, &r(1), false).unwrap();
        assert_eq!(
            phi,
            Element::from_terms(GroupKind::B, 1, [(w("1"), r(2)), (w("-1"), r(1))]).unwrap()
        );
        for n in 1..=4 {
            for k in 1..=4i64 {
                let x = r(k);
                let aug = |kind| {
                    structure_poly_eval(n, kind, &x, false)
                        .unwrap()
                        .augmentation()
                };
                assert_eq!(aug(StructureKind::A), r(k).pow(n as u32));
                assert_eq!(aug(StructureKind::B), r(2 * k + 1).pow(n as u32));
                assert_eq!(aug(StructureKind::Augmented), r(2 * k).pow(n as u32));
                if n >= 2 {
                    assert_eq!(aug(StructureKind::Cyclic), r(k).pow(n as u32 - 1));
                }
            }
        }
    }

    #[test]
    fn bar_inverts_support() {
        let x = r(2);
        let s = structure_poly_eval(3, StructureKind::A, &x, false).unwrap();
        assert_eq!(
            structure_poly_eval(3, StructureKind::A, &x, true).unwrap(),
            s.bar()
        );
    }

    #[test]
    fn eulerian_polynomial_examples() {
        assert_eq!(
            eulerian_polynomial(3, StructureKind::A).unwrap(),
            vec![1, 4, 1]
        );
        assert_eq!(
            eulerian_polynomial(3, StructureKind::Cyclic).unwrap(),
            vec![3, 3]
        );
        assert_eq!(
            eulerian_polynomial(1, StructureKind::Augmented).unwrap(),
            vec![2]
        );
        assert_eq!(
            eulerian_polynomial(2, StructureKind::B).unwrap(),
            vec![1, 6, 1]
        );
    }

    #[test]
    fn kind_parsing() {
        for kind in StructureKind::ALL {
            assert_eq!(kind.name().parse::<StructureKind>().unwrap(), kind);
        }
        assert!("d".parse::<StructureKind>().is_err());
    }
}
