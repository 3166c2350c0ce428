use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::Rational;

/// Univariate polynomial in `t` with rational coefficients, lowest degree first.
/// The zero polynomial has no coefficients; otherwise the last one is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QPolynomial {
    coefficients: Vec<Rational>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coefficients(vec![c])
    }

    pub fn from_coefficients(mut coefficients: Vec<Rational>) -> Self {
        while coefficients.last().is_some_and(Rational::is_zero) {
            coefficients.pop();
        }
        QPolynomial { coefficients }
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.coefficients.last().cloned().unwrap_or_default()
    }

    pub fn coefficient(&self, power: usize) -> Rational {
        self.coefficients.get(power).cloned().unwrap_or_default()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coefficients
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_int(&self, t: i64) -> Rational {
        self.eval(&Rational::from(t))
    }

    pub fn add(&self, other: &QPolynomial) -> QPolynomial {
        let n = self.coefficients.len().max(other.coefficients.len());
        QPolynomial::from_coefficients(
            (0..n)
                .map(|i| self.coefficient(i) + other.coefficient(i))
                .collect(),
        )
    }

    pub fn scaled(&self, c: &Rational) -> QPolynomial {
        QPolynomial::from_coefficients(self.coefficients.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &QPolynomial) -> QPolynomial {
        if self.is_zero() || other.is_zero() {
            return QPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        QPolynomial::from_coefficients(out)
    }
}

impl fmt::Debug for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{i}")?,
            }
        }
        Ok(())
    }
}

/// The polynomial `binom(alpha*t + beta, n) = prod_{i<n} (alpha*t + beta - i) / n!`.
pub fn binomial_poly(alpha: &BigInt, beta: &BigInt, n: usize) -> QPolynomial {
    let mut p = QPolynomial::constant(Rational::one());
    for i in 0..n {
        let factor = QPolynomial::from_coefficients(vec![
            Rational::from_integer(beta - BigInt::from(i)),
            Rational::from_integer(alpha.clone()),
        ]);
        p = p.mul(&factor);
    }
    p.scaled(&Rational::from_integer(factorial(n)).recip().expect("n! > 0"))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `binom(n, k)` for natural `n`; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// `binom(a, n)` with the convention that it vanishes whenever `a < n`,
/// including negative `a`.
pub fn binomial_or_zero(a: &BigInt, n: usize) -> BigInt {
    if a < &BigInt::from(n) {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..n {
        acc = acc * (a - BigInt::from(i)) / BigInt::from(i + 1);
    }
    acc
}
