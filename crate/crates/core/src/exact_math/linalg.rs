use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{gcd_all, lcm_all, Rational};
use crate::error::{Error, Result};

/// Fixed-length vector of exact rationals.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QVector(Vec<Rational>);

impl QVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        QVector(entries)
    }

    pub fn zeros(len: usize) -> Self {
        QVector(vec![Rational::zero(); len])
    }

    pub fn from_ints<I, T>(values: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        QVector(values.into_iter().map(|v| Rational::from_integer(v)).collect())
    }

    pub fn from_bigints(values: &[BigInt]) -> Self {
        QVector(values.iter().cloned().map(Rational::from_integer).collect())
    }

    /// Unit vector `e_index` of the given length.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.0[index] = Rational::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn dot(&self, other: &QVector) -> Result<Rational> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum())
    }

    pub fn scaled(&self, c: &Rational) -> QVector {
        QVector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> QVector {
        QVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn add(&self, other: &QVector) -> Result<QVector> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(QVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    /// Primitive integer multiple: denominators cleared, entries divided by
    /// their gcd, first nonzero entry positive. The zero vector stays zero.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        primitive(self.integer_direction())
    }

    /// Denominators cleared and entries divided by their gcd, keeping the
    /// direction (the sign is not normalized).
    pub fn integer_direction(&self) -> Vec<BigInt> {
        let lcm = lcm_all(self.0.iter().map(Rational::denom));
        let mut ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|a| a.numer() * (&lcm / a.denom()))
            .collect();
        let g = gcd_all(ints.iter());
        if !g.is_zero() {
            for x in ints.iter_mut() {
                *x = &*x / &g;
            }
        }
        ints
    }

    pub fn canonical(&self) -> QVector {
        QVector::from_bigints(&self.primitive_integer())
    }
}

/// Divides by the gcd and makes the first nonzero entry positive.
pub(crate) fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = gcd_all(v.iter());
    if g.is_zero() {
        return v;
    }
    let negate = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in v.iter_mut() {
        *x = &*x / &g;
        if negate {
            *x = -&*x;
        }
    }
    v
}

impl Index<usize> for QVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl From<Vec<Rational>> for QVector {
    fn from(v: Vec<Rational>) -> Self {
        QVector(v)
    }
}

impl fmt::Debug for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Rectangular matrix over the rationals, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: Vec<QVector>,
    cols: usize,
}

impl QMatrix {
    /// Builds a matrix from rows; `cols` fixes the width even when there are no rows.
    pub fn new(rows: Vec<QVector>, cols: usize) -> Result<Self> {
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Ragged {
                    row: i,
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        Ok(QMatrix { rows, cols })
    }

    pub fn from_rows(rows: Vec<QVector>) -> Result<Self> {
        let cols = rows.first().map_or(0, QVector::len);
        Self::new(rows, cols)
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| QVector::from_ints(r.iter().copied())).collect())
    }

    pub fn zeros(nrows: usize, cols: usize) -> Self {
        QMatrix {
            rows: vec![QVector::zeros(cols); nrows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        QMatrix {
            rows: (0..n).map(|i| QVector::unit(n, i)).collect(),
            cols: n,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[QVector] {
        &self.rows
    }

    pub fn mul_vec(&self, v: &QVector) -> Result<QVector> {
        self.rows
            .iter()
            .map(|r| r.dot(v))
            .collect::<Result<Vec<_>>>()
            .map(QVector::new)
    }

    /// Exact rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<BigInt>> = self.rows.iter().map(QVector::primitive_integer).collect();
        integer_rank(rows, self.cols)
    }

    /// Basis of the right null space, one canonical integer vector per free column.
    pub fn kernel_basis(&self) -> Vec<QVector> {
        let (rref, pivots) = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        (0..self.cols)
            .filter(|&c| is_pivot[c].is_none())
            .map(|free| {
                let mut v = vec![Rational::zero(); self.cols];
                v[free] = Rational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&rref[r][free];
                }
                QVector(v).canonical()
            })
            .collect()
    }

    /// Reduced row echelon form over the rationals plus the pivot columns.
    ///
    /// Pivot choice: leftmost column with a nonzero entry, and within it the
    /// row whose entry has the smallest numerator-times-denominator bit length.
    pub fn rref(&self) -> (Vec<Vec<Rational>>, Vec<usize>) {
        let mut m: Vec<Vec<Rational>> = self.rows.iter().map(|r| r.entries().to_vec()).collect();
        let mut pivots = Vec::new();
        let mut top = 0;
        for c in 0..self.cols {
            if top == m.len() {
                break;
            }
            let Some(p) = (top..m.len())
                .filter(|&r| !m[r][c].is_zero())
                .min_by_key(|&r| (m[r][c].height_bits(), r))
            else {
                continue;
            };
            m.swap(top, p);
            let inv = m[top][c].recip().expect("pivot is nonzero");
            for x in m[top].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = m[top].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r == top || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &(&f * p);
                    }
                }
            }
            pivots.push(c);
            top += 1;
        }
        m.truncate(top);
        (m, pivots)
    }
}

/// Rank of an integer matrix by Bareiss fraction-free elimination.
pub(crate) fn integer_rank(mut m: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let mut prev = BigInt::from(1);
    let mut top = 0;
    for c in 0..cols {
        if top == m.len() {
            break;
        }
        let Some(p) = (top..m.len())
            .filter(|&r| !m[r][c].is_zero())
            .min_by_key(|&r| (m[r][c].bits(), r))
        else {
            continue;
        };
        m.swap(top, p);
        let (head, tail) = m.split_at_mut(top + 1);
        let pivot_row = &head[top];
        for row in tail.iter_mut() {
            let f = row[c].clone();
            for j in c..cols {
                let v = &pivot_row[c] * &row[j] - &f * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = m[top][c].clone();
        top += 1;
    }
    top
}
