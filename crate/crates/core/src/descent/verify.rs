use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::binomial::binom_int;
use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::perm::{GroupKind, Permutation};

use super::idempotent::{extract_family, product_violation};
use super::report::{int_point, Counterexample, VerificationReport};
use super::{
    eulerian_element, eulerian_polynomial, group_with_stats, structure_poly_from, Element,
    StructureKind,
};

/// A product law `S(x)·T(y) = U(f(x, y))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProductLaw {
    /// `φ(x)φ(y) = φ(xy)` on `S_n`.
    A,
    /// `φ^(c)(x)φ^(c)(y) = φ^(c)(xy)` on `S_n`.
    Cyclic,
    /// `φ(x)φ(y) = φ(2xy+x+y)` on `B_n`.
    B,
    /// `ψ(x)ψ(y) = ψ(2xy)` on `B_n`.
    Aug,
    /// `ψ(x)φ(y) = ψ(2xy+x)` on `B_n`.
    Mixed,
}

impl ProductLaw {
    pub const ALL: [ProductLaw; 5] = [
        ProductLaw::A,
        ProductLaw::Cyclic,
        ProductLaw::B,
        ProductLaw::Aug,
        ProductLaw::Mixed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProductLaw::A => "a",
            ProductLaw::Cyclic => "cyclic",
            ProductLaw::B => "b",
            ProductLaw::Aug => "aug",
            ProductLaw::Mixed => "mixed",
        }
    }

    /// `(left factor, right factor, result)` kinds.
    pub fn kinds(self) -> (StructureKind, StructureKind, StructureKind) {
        use StructureKind as K;
        match self {
            ProductLaw::A => (K::A, K::A, K::A),
            ProductLaw::Cyclic => (K::Cyclic, K::Cyclic, K::Cyclic),
            ProductLaw::B => (K::B, K::B, K::B),
            ProductLaw::Aug => (K::Augmented, K::Augmented, K::Augmented),
            ProductLaw::Mixed => (K::Augmented, K::B, K::Augmented),
        }
    }

    pub fn apply(self, x: &Rational, y: &Rational) -> Rational {
        let xy = x * y;
        let two_xy = &Rational::from_int(2) * &xy;
        match self {
            ProductLaw::A | ProductLaw::Cyclic => xy,
            ProductLaw::B => &(&two_xy + x) + y,
            ProductLaw::Aug => two_xy,
            ProductLaw::Mixed => &two_xy + x,
        }
    }
}

impl fmt::Display for ProductLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProductLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProductLaw::ALL
            .into_iter()
            .find(|l| l.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown product law {s:?}")))
    }
}

fn first_failure(results: Vec<Result<Option<Counterexample>>>) -> Result<Option<Counterexample>> {
    for r in results {
        if let Some(c) = r? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

fn diff(check: &str, point: Vec<String>, lhs: &Element, rhs: &Element) -> Option<Counterexample> {
    lhs.first_difference(rhs)
        .map(|(w, a, b)| Counterexample::new(check, point, w.to_vec(), a, b))
}

/// Checks `S(x)·T(y) = U(law(x, y))` on the grid `{1, …, n+1}²`, at one
/// seeded random rational point, and the matching idempotent relations.
pub fn verify_product_identity(n: usize, law: ProductLaw) -> Result<VerificationReport> {
    let started = Instant::now();
    let (lk, rk, uk) = law.kinds();
    let ls = group_with_stats(n, lk)?;
    let rs = if rk == lk {
        ls.clone()
    } else {
        group_with_stats(n, rk)?
    };
    let us = if uk == lk {
        ls.clone()
    } else {
        group_with_stats(n, uk)?
    };

    let top = n as i64 + 1;
    let mut points: Vec<(Rational, Rational)> = (1..=top)
        .flat_map(|x| (1..=top).map(move |y| (Rational::from_int(x), Rational::from_int(y))))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + 16 * n as u64 + law as u64);
    let mut random_rational = || Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=7));
    points.push((random_rational(), random_rational()));
    let grid: Vec<Vec<String>> = points
        .iter()
        .map(|(x, y)| vec![x.to_string(), y.to_string()])
        .collect();

    let lefts: Vec<Element> = (1..=top)
        .map(|x| structure_poly_from(&ls, n, lk, &Rational::from_int(x), false))
        .collect::<Result<_>>()?;
    let rights: Vec<Element> = (1..=top)
        .map(|y| structure_poly_from(&rs, n, rk, &Rational::from_int(y), false))
        .collect::<Result<_>>()?;
    let last = points.len() - 1;

    let results: Vec<Result<Option<Counterexample>>> = points
        .par_iter()
        .enumerate()
        .map(|(idx, (x, y))| {
            let (left, right) = if idx == last {
                (
                    structure_poly_from(&ls, n, lk, x, false)?,
                    structure_poly_from(&rs, n, rk, y, false)?,
                )
            } else {
                let (xi, yi) = (idx / top as usize, idx % top as usize);
                (lefts[xi].clone(), rights[yi].clone())
            };
            let lhs = left.convolve(&right)?;
            let rhs = structure_poly_from(&us, n, uk, &law.apply(x, y), false)?;
            let check = if idx == last { "smoke" } else { "product" };
            Ok(diff(check, vec![x.to_string(), y.to_string()], &lhs, &rhs))
        })
        .collect();
    let mut counterexample = first_failure(results)?;

    if counterexample.is_none() {
        let left = extract_family(n, lk)?;
        counterexample = if lk == rk {
            left.orthogonality_violation()?
        } else {
            product_violation(&left, &extract_family(n, rk)?)?
        };
    }
    Ok(VerificationReport::finish(
        law.name(),
        n,
        grid,
        counterexample,
        started,
    ))
}

/// Orthogonality `e_i e_j = δ_ij e_i` of one kind's idempotent family.
pub fn verify_idempotents(n: usize, kind: StructureKind) -> Result<VerificationReport> {
    let started = Instant::now();
    let fam = extract_family(n, kind)?;
    let grid = fam
        .indices
        .iter()
        .flat_map(|&i| {
            fam.indices
                .iter()
                .map(move |&j| int_point(&[i as i64, j as i64]))
        })
        .collect();
    let c = fam.orthogonality_violation()?;
    Ok(VerificationReport::finish(
        format!("idempotents-{kind}"),
        n,
        grid,
        c,
        started,
    ))
}

fn eulerian_check(
    n: usize,
    name: &str,
    lhs: Vec<u64>,
    rhs: Vec<u64>,
    started: Instant,
) -> VerificationReport {
    let c = (lhs != rhs).then(|| {
        Counterexample::new(
            name,
            int_point(&[n as i64]),
            vec![],
            format!("{lhs:?}"),
            format!("{rhs:?}"),
        )
    });
    VerificationReport::finish(
        format!("props-{name}"),
        n,
        vec![int_point(&[n as i64])],
        c,
        started,
    )
}

/// `A^(c)_n(t) = n·A_{n−1}(t)`, for `n ≥ 2`.
pub fn verify_cyclic_eulerian(n: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    let lhs = eulerian_polynomial(n, StructureKind::Cyclic)?;
    let rhs = eulerian_polynomial(n - 1, StructureKind::A)?
        .into_iter()
        .map(|c| c * n as u64)
        .collect();
    Ok(eulerian_check(n, "cyclic", lhs, rhs, started))
}

/// `A^(a)_n(t) = 2^n·A_n(t)`.
pub fn verify_augmented_eulerian(n: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    let lhs = eulerian_polynomial(n, StructureKind::Augmented)?;
    let rhs = eulerian_polynomial(n, StructureKind::A)?
        .into_iter()
        .map(|c| c << n)
        .collect();
    Ok(eulerian_check(n, "aug", lhs, rhs, started))
}

/// Both Eulerian polynomial relations; the cyclic one only for `n ≥ 2`.
pub fn verify_eulerian_props(n: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut parts = Vec::new();
    if n >= 2 {
        parts.push(verify_cyclic_eulerian(n)?);
    }
    parts.push(verify_augmented_eulerian(n)?);
    let grid = parts.iter().map(|r| vec![r.identity.clone()]).collect();
    let c = parts.into_iter().find_map(|r| r.counterexample);
    Ok(VerificationReport::finish("props", n, grid, c, started))
}

/// `(l^k, λ^k)` with `l^j = (−1)^{j−1} Σ_{des π = j−1} sgn(π)·π` and
/// `λ^k = Σ_{i<k} (−1)^i C(n+i, i)·l^{k−i}`.
pub fn loday_elements(n: usize, k: usize) -> Result<(Element, Element)> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "Loday index {k} outside 1..={n}"
        )));
    }
    let stats = group_with_stats(n, StructureKind::A)?;
    let l = |j: usize| -> Result<Element> {
        let outer = if j % 2 == 1 { 1 } else { -1 };
        let terms = stats.iter().filter(|&&(_, d)| d == j - 1).map(|&(w, _)| {
            let sgn = Permutation::from_packed(w).expect("type A window").sign() as i64;
            (w, Rational::from_int(outer * sgn))
        });
        Element::from_terms(GroupKind::A, n, terms)
    };
    let mut lambda = Element::zero(GroupKind::A, n);
    for i in 0..k {
        let c = binom_int((n + i) as i64, i) * if i % 2 == 0 { 1 } else { -1 };
        lambda = lambda.add(&l(k - i)?.scale(&Rational::from_bigint(c)))?;
    }
    Ok((l(k)?, lambda))
}

/// `φ(k) = |λ^k|` coefficientwise for every `1 ≤ k ≤ n`.
pub fn verify_loday(n: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    let stats = group_with_stats(n, StructureKind::A)?;
    let grid: Vec<Vec<String>> = (1..=n as i64).map(|k| int_point(&[k])).collect();
    let results: Vec<Result<Option<Counterexample>>> = (1..=n)
        .into_par_iter()
        .map(|k| {
            let phi = structure_poly_from(
                &stats,
                n,
                StructureKind::A,
                &Rational::from_int(k as i64),
                false,
            )?;
            let (_, lambda) = loday_elements(n, k)?;
            let abs = lambda.map_coeffs(Rational::abs);
            Ok(diff("loday", int_point(&[k as i64]), &phi, &abs))
        })
        .collect();
    let c = first_failure(results)?;
    Ok(VerificationReport::finish("loday", n, grid, c, started))
}

/// Linear extension of `π ↦ Σ_{σ ∈ ⟨π̃⟩} σ` from `Q[S_{n−1}]` to `Q[S_n]`.
pub fn theta_map(a: &Element) -> Result<Element> {
    if a.kind() != GroupKind::A {
        return Err(Error::GroupMismatch {
            left: "A".into(),
            right: a.kind().to_string(),
        });
    }
    let mut terms = Vec::with_capacity(a.support_size() * (a.n() + 1));
    for (w, c) in a.terms() {
        let tilde = Permutation::from_packed(*w)?.embed_tilde()?;
        for s in tilde.cyclic_class() {
            terms.push((s.packed(), c.clone()));
        }
    }
    Element::from_terms(GroupKind::A, a.n() + 1, terms)
}

/// `Θ(E_i) = E_i^(c)`, `Θ(φ_{n−1}(x)) = n·φ^(c)_n(x)` for `x ∈ {1..n}`, and
/// `Θ(E_i)Θ(E_j) = n·Θ(E_i E_j)`: the map is multiplicative up to the
/// factor `n`, so `Θ/n` is the algebra map.
pub fn verify_theta(n: usize) -> Result<VerificationReport> {
    theta_checks(n, false)
}

/// As [`verify_theta`] but with unscaled multiplicativity
/// `Θ(E_i E_j) = Θ(E_i)Θ(E_j)`.
pub fn verify_theta_literal(n: usize) -> Result<VerificationReport> {
    theta_checks(n, true)
}

fn theta_checks(n: usize, literal: bool) -> Result<VerificationReport> {
    let started = Instant::now();
    if n < 2 {
        return Err(Error::InvalidArgument("theta needs n ≥ 2".into()));
    }
    let m = n - 1;
    let mut grid = Vec::new();
    let es: Vec<Element> = (1..=m)
        .map(|i| eulerian_element(m, StructureKind::A, i))
        .collect::<Result<_>>()?;
    let thetas: Vec<Element> = es.iter().map(theta_map).collect::<Result<_>>()?;

    let mut c = None;
    for (i, t) in (1..=m).zip(&thetas) {
        grid.push(vec!["E".into(), format!("{i}/1")]);
        let target = eulerian_element(n, StructureKind::Cyclic, i)?;
        c = c.or_else(|| diff("eulerian", int_point(&[i as i64]), t, &target));
    }
    let small = group_with_stats(m, StructureKind::A)?;
    let big = group_with_stats(n, StructureKind::Cyclic)?;
    let n_rat = Rational::from_int(n as i64);
    for x in 1..=n as i64 {
        grid.push(vec!["phi".into(), format!("{x}/1")]);
        if c.is_none() {
            let xr = Rational::from_int(x);
            let lhs = theta_map(&structure_poly_from(
                &small,
                m,
                StructureKind::A,
                &xr,
                false,
            )?)?;
            let rhs =
                structure_poly_from(&big, n, StructureKind::Cyclic, &xr, false)?.scale(&n_rat);
            c = diff("structure", int_point(&[x]), &lhs, &rhs);
        }
    }
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).collect();
    grid.extend(
        pairs
            .iter()
            .map(|&(i, j)| vec!["EE".into(), format!("{}/1", i + 1), format!("{}/1", j + 1)]),
    );
    if c.is_none() {
        let results: Vec<Result<Option<Counterexample>>> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let image_of_product = theta_map(&es[i].convolve(&es[j])?)?;
                let product_of_images = thetas[i].convolve(&thetas[j])?;
                let point = int_point(&[i as i64 + 1, j as i64 + 1]);
                Ok(if literal {
                    diff(
                        "multiplicative",
                        point,
                        &image_of_product,
                        &product_of_images,
                    )
                } else {
                    diff(
                        "multiplicative",
                        point,
                        &image_of_product.scale(&n_rat),
                        &product_of_images,
                    )
                })
            })
            .collect();
        c = first_failure(results)?;
    }
    let name = if literal { "theta-literal" } else { "theta" };
    Ok(VerificationReport::finish(name, n, grid, c, started))
}

/// Identity names accepted by [`verify_named`].
pub const IDENTITY_NAMES: [&str; 13] = [
    "a",
    "cyclic",
    "b",
    "aug",
    "mixed",
    "loday",
    "theta",
    "theta-literal",
    "props",
    "props-cyclic",
    "props-aug",
    "shuffle",
    "idempotents-mixed",
];

/// Dispatches on an identity name from [`IDENTITY_NAMES`].
pub fn verify_named(n: usize, identity: &str) -> Result<VerificationReport> {
    match identity {
        "loday" => verify_loday(n),
        "theta" => verify_theta(n),
        "theta-literal" => verify_theta_literal(n),
        "props" => verify_eulerian_props(n),
        "props-cyclic" => verify_cyclic_eulerian(n),
        "props-aug" => verify_augmented_eulerian(n),
        "shuffle" => crate::shuffle::verify_shuffle(n),
        "idempotents-mixed" => verify_ideal(n),
        other => match other.parse::<ProductLaw>() {
            Ok(law) => verify_product_identity(n, law),
            Err(_) => Err(Error::InvalidArgument(format!(
                "unknown identity {other:?}"
            ))),
        },
    }
}

/// `e^(a)_i · e_j = δ_ij e^(a)_i` between the augmented and type B families.
pub fn verify_ideal(n: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    let aug = extract_family(n, StructureKind::Augmented)?;
    let b = extract_family(n, StructureKind::B)?;
    let grid = aug
        .indices
        .iter()
        .flat_map(|&i| {
            b.indices
                .iter()
                .map(move |&j| int_point(&[i as i64, j as i64]))
        })
        .collect();
    let c = product_violation(&aug, &b)?;
    Ok(VerificationReport::finish(
        "idempotents-mixed",
        n,
        grid,
        c,
        started,
    ))
}
