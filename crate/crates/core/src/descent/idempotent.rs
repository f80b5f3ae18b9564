use rayon::prelude::*;

use crate::algebra::binomial::{binom_in_x, binom_int};
use crate::algebra::json::ElementJson;
use crate::algebra::Rational;
use crate::error::{Error, Result};

use super::report::Counterexample;
use super::{group_with_stats, structure_poly_from, Element, StructureKind};

/// Coefficients of `x^i` in a structure polynomial after the kind's
/// substitution (`x ← (x−1)/2` for B, `x ← x/2` for Augmented).
#[derive(Debug, Clone, PartialEq)]
pub struct IdempotentFamily {
    pub kind: StructureKind,
    pub n: usize,
    /// Power of `x` carried by each member.
    pub indices: Vec<usize>,
    pub members: Vec<Element>,
}

impl IdempotentFamily {
    pub fn get(&self, i: usize) -> Option<&Element> {
        self.indices
            .iter()
            .position(|&j| j == i)
            .map(|p| &self.members[p])
    }

    /// First `(i, j)` (row-major) with `e_i e_j ≠ δ_ij e_i`.
    pub fn orthogonality_violation(&self) -> Result<Option<Counterexample>> {
        product_violation(self, self)
    }

    pub fn to_json_value(&self) -> Vec<ElementJson> {
        self.members.iter().map(Element::to_json_value).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("family JSON is always serializable")
    }
}

/// First `(i, j)` in row-major order with `left_i · right_j ≠ δ_ij left_i`.
pub(crate) fn product_violation(
    left: &IdempotentFamily,
    right: &IdempotentFamily,
) -> Result<Option<Counterexample>> {
    let pairs: Vec<(usize, usize)> = (0..left.members.len())
        .flat_map(|a| (0..right.members.len()).map(move |b| (a, b)))
        .collect();
    let results: Vec<Result<Option<Counterexample>>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let (i, j) = (left.indices[a], right.indices[b]);
            let lhs = left.members[a].convolve(&right.members[b])?;
            let rhs = if i == j {
                left.members[a].clone()
            } else {
                Element::zero(left.members[a].kind(), left.n)
            };
            Ok(lhs.first_difference(&rhs).map(|(w, x, y)| {
                Counterexample::new(
                    "idempotent",
                    vec![format!("{i}/1"), format!("{j}/1")],
                    w.to_vec(),
                    x,
                    y,
                )
            }))
        })
        .collect();
    for r in results {
        if let Some(c) = r? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// `p(a·x + b)` for `p` given by coefficients in powers of `x`.
fn substitute_affine(p: &[Rational], a: &Rational, b: &Rational) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); p.len()];
    for (i, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // (a x + b)^i = Σ_j C(i, j) a^j b^{i−j} x^j
        for (j, slot) in out.iter_mut().enumerate().take(i + 1) {
            let binom = Rational::from_bigint(binom_int(i as i64, j));
            *slot += &(&(c * &binom) * &(&a.pow(j as u32) * &b.pow((i - j) as u32)));
        }
    }
    out
}

/// The affine map `x ↦ a·x + b` applied before extracting powers of `x`.
fn substitution(kind: StructureKind) -> (Rational, Rational) {
    match kind {
        StructureKind::A | StructureKind::Cyclic => (Rational::one(), Rational::zero()),
        StructureKind::B => (Rational::new(1, 2), Rational::new(-1, 2)),
        StructureKind::Augmented => (Rational::new(1, 2), Rational::zero()),
    }
}

/// Extracts the idempotent family of a kind and verifies it: vanishing
/// coefficients outside the index range, reconstruction of the substituted
/// structure polynomial, and orthogonality.
pub fn structure_poly_coeffs(n: usize, kind: StructureKind) -> Result<IdempotentFamily> {
    let family = extract_family(n, kind)?;
    if let Some(c) = family.orthogonality_violation()? {
        return Err(Error::InvariantViolation(format!(
            "{kind} idempotents are not orthogonal at (i, j) = ({}, {})",
            c.point[0], c.point[1]
        )));
    }
    Ok(family)
}

/// Extraction with the reconstruction checks but without the
/// orthogonality check.
pub(crate) fn extract_family(n: usize, kind: StructureKind) -> Result<IdempotentFamily> {
    let stats = group_with_stats(n, kind)?;
    let (shift, degree, scale) = kind.rule(n);
    let (a, b) = substitution(kind);
    let max_stat = stats.iter().map(|&(_, s)| s).max().unwrap_or(0);
    let polys: Vec<Vec<Rational>> = (0..=max_stat)
        .map(|s| {
            let p: Vec<Rational> = binom_in_x(shift - s as i64, degree)
                .iter()
                .map(|c| &scale * c)
                .collect();
            substitute_affine(&p, &a, &b)
        })
        .collect();

    let range = kind.idempotent_range(n);
    for (s, p) in polys.iter().enumerate() {
        if let Some((i, _)) = p
            .iter()
            .enumerate()
            .find(|(i, c)| !c.is_zero() && !range.contains(i))
        {
            if stats.iter().any(|&(_, t)| t == s) {
                return Err(Error::InvariantViolation(format!(
                    "{kind} structure polynomial has a nonzero x^{i} coefficient outside the idempotent range"
                )));
            }
        }
    }

    let indices: Vec<usize> = range.collect();
    let members = indices
        .iter()
        .map(|&i| {
            let terms = stats
                .iter()
                .map(|&(w, s)| (w, polys[s].get(i).cloned().unwrap_or_default()));
            Element::from_terms(kind.group(), n, terms)
        })
        .collect::<Result<Vec<_>>>()?;
    let family = IdempotentFamily {
        kind,
        n,
        indices,
        members,
    };

    // Σ_i e_i x^i = S(a x + b) at degree + 1 points determines the polynomial.
    for x in 0..=degree as i64 + 1 {
        let x = Rational::from_int(x);
        let mut lhs = Element::zero(kind.group(), n);
        for (i, e) in family.indices.iter().zip(&family.members) {
            lhs = lhs.add(&e.scale(&x.pow(*i as u32)))?;
        }
        let rhs = structure_poly_from(&stats, n, kind, &(&(&a * &x) + &b), false)?;
        if lhs != rhs {
            return Err(Error::InvariantViolation(format!(
                "{kind} idempotents do not reconstruct the structure polynomial at x = {x}"
            )));
        }
    }
    Ok(family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{GroupKind, PackedWindow};

    fn w(s: &str) -> PackedWindow {
        PackedWindow::from_signed(
            &s.split(',')
                .map(|t| t.parse().unwrap())
                .collect::<Vec<i32>>(),
        )
        .unwrap()
    }

    #[test]
    fn type_a_rank_two() {
        let fam = structure_poly_coeffs(2, StructureKind::A).unwrap();
        assert_eq!(fam.indices, vec![1, 2]);
        let half = Rational::new(1, 2);
        let e1 = Element::from_terms(
            GroupKind::A,
            2,
            [(w("1,2"), half.clone()), (w("2,1"), -&half)],
        )
        .unwrap();
        let e2 = Element::from_terms(
            GroupKind::A,
            2,
            [(w("1,2"), half.clone()), (w("2,1"), half.clone())],
        )
        .unwrap();
        assert_eq!(fam.get(1), Some(&e1));
        assert_eq!(fam.get(2), Some(&e2));
    }

    #[test]
    fn type_b_rank_one() {
        // C(x'+1, 1)(1) + C(x', 1)(−1) at x' = (x−1)/2
        let fam = structure_poly_coeffs(1, StructureKind::B).unwrap();
        assert_eq!(fam.indices, vec![0, 1]);
        let half = Rational::new(1, 2);
        let e0 = Element::from_terms(GroupKind::B, 1, [(w("1"), half.clone()), (w("-1"), -&half)])
            .unwrap();
        let e1 = Element::from_terms(
            GroupKind::B,
            1,
            [(w("1"), half.clone()), (w("-1"), half.clone())],
        )
        .unwrap();
        assert_eq!(fam.get(0), Some(&e0));
        assert_eq!(fam.get(1), Some(&e1));
    }

    #[test]
    fn families_are_orthogonal_small() {
        for kind in StructureKind::ALL {
            for n in 2..=3 {
                let fam = structure_poly_coeffs(n, kind).unwrap();
                assert_eq!(fam.orthogonality_violation().unwrap(), None);
                let sum = fam
                    .members
                    .iter()
                    .fold(Element::zero(kind.group(), n), |acc, e| acc.add(e).unwrap());
                // Σ e_i = S(a + b) = value at x = 1
                let (a, b) = substitution(kind);
                assert_eq!(
                    sum,
                    super::super::structure_poly_eval(n, kind, &(&a + &b), false).unwrap()
                );
            }
        }
    }

    #[test]
    fn affine_substitution() {
        // p(x) = x^2 at x ← (x−1)/2 is (x^2 − 2x + 1)/4
        let p = vec![Rational::zero(), Rational::zero(), Rational::one()];
        let q = substitute_affine(&p, &Rational::new(1, 2), &Rational::new(-1, 2));
        assert_eq!(
            q,
            vec![
                Rational::new(1, 4),
                Rational::new(-1, 2),
                Rational::new(1, 4)
            ]
        );
    }
}
