use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{GroupKind, PackedWindow, Permutation, SignedPermutation};

use super::kernel;
use super::qpoly::QPolynomial;
use super::rational::Rational;

/// A coefficient ring for [`GroupAlgebraElement`]. Exactly two rings are
/// used: [`Rational`] and [`QPolynomial`].
pub trait Coefficient:
    Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Name used in the JSON encoding.
    const RING: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    /// `Σ_{στ=π} a[σ]·b[τ]` over the given supports. Rings override this
    /// with faster exact kernels.
    fn convolve_terms(
        kind: GroupKind,
        n: usize,
        a: &[(PackedWindow, Self)],
        b: &[(PackedWindow, Self)],
    ) -> Vec<(PackedWindow, Self)> {
        let _ = (kind, n);
        kernel::generic(a, b)
    }
}

impl Coefficient for Rational {
    const RING: &'static str = "rational";

    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn convolve_terms(
        kind: GroupKind,
        n: usize,
        a: &[(PackedWindow, Self)],
        b: &[(PackedWindow, Self)],
    ) -> Vec<(PackedWindow, Self)> {
        kernel::rational(kind, n, a, b).unwrap_or_else(|| kernel::generic(a, b))
    }
}

impl Coefficient for QPolynomial {
    const RING: &'static str = "qpoly";

    fn zero() -> Self {
        QPolynomial::zero()
    }
    fn one() -> Self {
        QPolynomial::one()
    }
    fn is_zero(&self) -> bool {
        QPolynomial::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn convolve_terms(
        kind: GroupKind,
        n: usize,
        a: &[(PackedWindow, Self)],
        b: &[(PackedWindow, Self)],
    ) -> Vec<(PackedWindow, Self)> {
        kernel::qpoly(kind, n, a, b).unwrap_or_else(|| kernel::generic(a, b))
    }
}

/// Sparse element of `C[S_n]` or `C[B_n]`.
#[derive(Clone, PartialEq)]
pub struct GroupAlgebraElement<C: Coefficient> {
    kind: GroupKind,
    n: usize,
    terms: BTreeMap<PackedWindow, C>,
}

impl<C: Coefficient> GroupAlgebraElement<C> {
    pub fn zero(kind: GroupKind, n: usize) -> Self {
        GroupAlgebraElement {
            kind,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(kind: GroupKind, n: usize) -> Self {
        let mut e = Self::zero(kind, n);
        e.terms.insert(PackedWindow::identity(n), C::one());
        e
    }

    /// Builds an element from `(window, coefficient)` pairs. Repeated
    /// windows accumulate; zero results are dropped.
    pub fn from_terms<I>(kind: GroupKind, n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PackedWindow, C)>,
    {
        let mut e = Self::zero(kind, n);
        for (w, c) in terms {
            e.check_member(&w)?;
            e.accumulate(w, &c);
        }
        Ok(e)
    }

    pub(crate) fn from_sorted_unchecked(
        kind: GroupKind,
        n: usize,
        terms: Vec<(PackedWindow, C)>,
    ) -> Self {
        GroupAlgebraElement {
            kind,
            n,
            terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    fn check_member(&self, w: &PackedWindow) -> Result<()> {
        if w.n() != self.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: w.n(),
            });
        }
        if self.kind == GroupKind::A && !w.is_unsigned() {
            return Err(Error::GroupMismatch {
                left: "A".into(),
                right: format!("signed window {w}"),
            });
        }
        Ok(())
    }

    fn accumulate(&mut self, w: PackedWindow, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(slot) => {
                let v = slot.add_ref(c);
                if v.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *slot = v;
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (lexicographic window) order.
    pub fn terms(&self) -> impl Iterator<Item = (&PackedWindow, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &PackedWindow) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeff_of(&self, p: &Permutation) -> C {
        self.coeff(&p.packed())
    }

    pub fn coeff_of_signed(&self, p: &SignedPermutation) -> C {
        self.coeff(&p.packed())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.kind != other.kind {
            return Err(Error::GroupMismatch {
                left: self.kind.to_string(),
                right: other.kind.to_string(),
            });
        }
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.accumulate(*w, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&C::one().neg_ref()))
    }

    pub fn scale(&self, c: &C) -> Self {
        GroupAlgebraElement {
            kind: self.kind,
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(w, v)| (*w, c.mul_ref(v)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    /// The group-algebra product `(a·b)[π] = Σ_{στ=π} a[σ]·b[τ]`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let a: Vec<(PackedWindow, C)> = self.terms.iter().map(|(w, c)| (*w, c.clone())).collect();
        let b: Vec<(PackedWindow, C)> = other.terms.iter().map(|(w, c)| (*w, c.clone())).collect();
        let out = C::convolve_terms(self.kind, self.n, &a, &b);
        Ok(Self::from_sorted_unchecked(self.kind, self.n, out))
    }

    /// Same product as [`convolve`](Self::convolve) through the plain
    /// pairwise reference kernel.
    pub fn convolve_naive(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let a: Vec<(PackedWindow, C)> = self.terms.iter().map(|(w, c)| (*w, c.clone())).collect();
        let b: Vec<(PackedWindow, C)> = other.terms.iter().map(|(w, c)| (*w, c.clone())).collect();
        Ok(Self::from_sorted_unchecked(
            self.kind,
            self.n,
            kernel::generic(&a, &b),
        ))
    }

    /// Replaces the coefficient of `π` by that of `π^{-1}`.
    pub fn bar(&self) -> Self {
        GroupAlgebraElement {
            kind: self.kind,
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.inverse(), c.clone()))
                .collect(),
        }
    }

    /// Sum of all coefficients.
    pub fn augmentation(&self) -> C {
        self.terms.values().fold(C::zero(), |acc, c| acc.add_ref(c))
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> GroupAlgebraElement<D> {
        GroupAlgebraElement {
            kind: self.kind,
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (*w, f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// The first window, in canonical order, where the two elements differ,
    /// with `(self, other)` coefficients.
    pub fn first_difference(&self, other: &Self) -> Option<(PackedWindow, C, C)> {
        let mut keys: Vec<&PackedWindow> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter().find_map(|w| {
            let (x, y) = (self.coeff(w), other.coeff(w));
            (x != y).then_some((*w, x, y))
        })
    }
}

impl GroupAlgebraElement<Rational> {
    /// `Σ_{π ∈ S} c·π` over every listed window.
    pub fn indicator<'a, I>(kind: GroupKind, n: usize, windows: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a PackedWindow>,
    {
        Self::from_terms(kind, n, windows.into_iter().map(|w| (*w, Rational::one())))
    }
}

impl<C: Coefficient> fmt::Debug for GroupAlgebraElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]{{", self.kind, self.n)?;
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}·{w:?}")?;
        }
        f.write_str("}")
    }
}
