//! Ordinary and Gaussian binomial coefficients.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::qpoly::QPolynomial;
use super::rational::Rational;

/// `C(t, n) = t(t−1)⋯(t−n+1)/n!` as a polynomial in `t`, evaluated at an
/// arbitrary rational `t`. For integer `0 ≤ t < n` this is zero.
pub fn binom_poly_eval(t: &Rational, n: usize) -> Rational {
    let mut num = Rational::one();
    for j in 0..n {
        num = &num * &(t - &Rational::from_int(j as i64));
        if num.is_zero() {
            return num;
        }
    }
    let fact: BigInt = (1..=n as u64).map(BigInt::from).product();
    &num / &Rational::from_bigint(fact)
}

/// `C(t, n)` for an integer `t` (possibly negative), exactly.
pub fn binom_int(t: i64, n: usize) -> BigInt {
    if t >= 0 && (t as u64) < n as u64 {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..n as i64 {
        num *= t - j;
        den *= j + 1;
    }
    num / den
}

/// Coefficients `p_0, …, p_n` of `C(x + shift, n)` in powers of `x`.
pub fn binom_in_x(shift: i64, n: usize) -> Vec<Rational> {
    // Π_{j<n} (x + shift − j), expanded lowest degree first.
    let mut poly: Vec<BigInt> = vec![BigInt::one()];
    for j in 0..n as i64 {
        let root = BigInt::from(shift - j);
        let mut next = vec![BigInt::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i] += c * &root;
            next[i + 1] += c;
        }
        poly = next;
    }
    let fact: BigInt = (1..=n as u64).map(BigInt::from).product();
    poly.into_iter()
        .map(|c| Rational::from_parts(c, fact.clone()).expect("n! is nonzero"))
        .collect()
}

/// Gaussian binomial `[a choose b]_q`, by the q-Pascal recurrence
/// `[m choose j] = [m−1 choose j−1] + q^j [m−1 choose j]`. Zero when
/// `b > a`.
pub fn qbinomial(a: u32, b: u32) -> QPolynomial {
    if b > a {
        return QPolynomial::zero();
    }
    let b = b as usize;
    // row[j] holds [m choose j] as dense integer coefficients.
    let mut row: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for m in 1..=a as usize {
        let top = m.min(b);
        let mut next: Vec<Vec<BigInt>> = Vec::with_capacity(top + 1);
        for j in 0..=top {
            let mut poly: Vec<BigInt> = Vec::new();
            if j >= 1 {
                add_shifted(&mut poly, &row[j - 1], 0);
            }
            if j < row.len() {
                add_shifted(&mut poly, &row[j], j);
            }
            next.push(poly);
        }
        row = next;
    }
    QPolynomial::from_bigints(row.pop().unwrap_or_default())
}

fn add_shifted(acc: &mut Vec<BigInt>, p: &[BigInt], shift: usize) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, BigInt::zero());
    }
    for (i, c) in p.iter().enumerate() {
        acc[i + shift] += c;
    }
}
