use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use super::rational::Rational;

/// Univariate polynomial in `q` with rational coefficients. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPolynomial {
    coeffs: BTreeMap<u32, Rational>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial::default()
    }

    pub fn one() -> Self {
        QPolynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        QPolynomial::monomial(0, c)
    }

    /// `c·q^e`.
    pub fn monomial(e: u32, c: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        QPolynomial { coeffs }
    }

    /// `q^e`.
    pub fn q_pow(e: u32) -> Self {
        QPolynomial::monomial(e, Rational::one())
    }

    /// From dense coefficients, lowest degree first.
    pub fn from_ints<I: IntoIterator<Item = i64>>(dense: I) -> Self {
        let coeffs = dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c != 0)
            .map(|(e, c)| (e as u32, Rational::from_int(c)))
            .collect();
        QPolynomial { coeffs }
    }

    pub(crate) fn from_bigints(dense: Vec<BigInt>) -> Self {
        let coeffs = dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e as u32, Rational::from_bigint(c)))
            .collect();
        QPolynomial { coeffs }
    }

    pub(crate) fn from_map(mut coeffs: BTreeMap<u32, Rational>) -> Self {
        coeffs.retain(|_, c| !c.is_zero());
        QPolynomial { coeffs }
    }

    /// `[m]_q = 1 + q + ⋯ + q^{m−1}`.
    pub fn q_integer(m: u32) -> Self {
        QPolynomial::from_ints((0..m).map(|_| 1))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, e: u32) -> Rational {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return QPolynomial::zero();
        }
        QPolynomial {
            coeffs: self.coeffs.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: u32) -> Self {
        QPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&k, v)| (k + e, v.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, q: &Rational) -> Rational {
        let mut acc = Rational::zero();
        let mut last = 0u32;
        let mut power = Rational::one();
        for (&e, c) in &self.coeffs {
            power = &power * &q.pow(e - last);
            last = e;
            acc += &(c * &power);
        }
        acc
    }

    /// `p(q) ↦ p(q^k)`: the coefficient at `e` moves to `k·e`.
    pub fn substitute_power(&self, k: u32) -> Self {
        assert!(k >= 1, "substitution exponent must be positive");
        QPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (e * k, c.clone()))
                .collect(),
        }
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let mut coeffs = self.coeffs.clone();
        for (&e, c) in &rhs.coeffs {
            let slot = coeffs.entry(e).or_default();
            *slot += c;
            if slot.is_zero() {
                coeffs.remove(&e);
            }
        }
        QPolynomial { coeffs }
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        QPolynomial {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        let mut coeffs: BTreeMap<u32, Rational> = BTreeMap::new();
        for (&a, ca) in &self.coeffs {
            for (&b, cb) in &rhs.coeffs {
                *coeffs.entry(a + b).or_default() += &(ca * cb);
            }
        }
        QPolynomial::from_map(coeffs)
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&e, c) in &self.coeffs {
            let neg = c < &Rational::zero();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag_txt = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                mag.to_string()
            };
            match (e, mag == Rational::one()) {
                (0, _) => f.write_str(&mag_txt)?,
                (1, true) => f.write_str("q")?,
                (1, false) => write!(f, "{mag_txt}q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{mag_txt}q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPolynomial({self})")
    }
}
