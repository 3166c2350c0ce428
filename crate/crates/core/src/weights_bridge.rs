//! Divisor classes on `X^m_{m+2}`, GIT polarizations and Hassett weights.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_math::{binomial, lcm_all, Rational};
use crate::picard_lattice::DivisorClass;
use crate::subsets::k_subsets;

/// A vector of rational weights. Construction through [`WeightVector::new`]
/// enforces `0 < a_i <= 1`; [`phi`] may produce vectors outside that range.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector {
    a: Vec<Rational>,
}

impl WeightVector {
    pub fn new(a: Vec<Rational>) -> Result<Self> {
        let w = WeightVector { a };
        if !w.is_hassett() {
            return Err(Error::Precondition(format!("weights {w} are not all in (0, 1]")));
        }
        Ok(w)
    }

    /// No range check.
    pub fn unchecked(a: Vec<Rational>) -> Self {
        WeightVector { a }
    }

    pub fn entries(&self) -> &[Rational] {
        &self.a
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn sum(&self) -> Rational {
        self.a.iter().sum()
    }

    pub fn is_hassett(&self) -> bool {
        let one = Rational::one();
        self.a.iter().all(|x| x.is_positive() && x <= &one)
    }

    /// `sum a_i = 2`.
    pub fn is_democratic_sum(&self) -> bool {
        self.sum() == Rational::from(2)
    }
}

impl std::fmt::Display for WeightVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.a.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Polarization {
    b: Vec<u64>,
}

impl TryFrom<Vec<u64>> for Polarization {
    type Error = Error;
    fn try_from(b: Vec<u64>) -> Result<Self> {
        Polarization::new(b)
    }
}

impl From<Polarization> for Vec<u64> {
    fn from(p: Polarization) -> Vec<u64> {
        p.b
    }
}

impl Polarization {
    pub fn new(b: Vec<u64>) -> Result<Self> {
        if b.len() < 3 {
            return Err(Error::Precondition(format!("need at least 3 points, got {}", b.len())));
        }
        if b.contains(&0) {
            return Err(Error::Precondition("polarization entries must be positive".into()));
        }
        Ok(Polarization { b })
    }

    pub fn entries(&self) -> &[u64] {
        &self.b
    }

    pub fn total(&self) -> BigInt {
        self.b.iter().map(|&v| BigInt::from(v)).sum()
    }
}

/// `a_j = (y + x_j) / ((m+1) y + sum x_i)` for `j <= m+2`, and
/// `a_{m+3} = 2 - sum_{j <= m+2} a_j`.
pub fn phi(d: &DivisorClass) -> Result<WeightVector> {
    let model = d.model();
    let m = model.m();
    if model.s() != m + 2 {
        return Err(Error::ModelMismatch(format!(
            "phi is defined on X^m_(m+2); got s = {} for m = {m}",
            model.s()
        )));
    }
    let x_sum: Rational = d.x().iter().sum();
    let denom = d.y() * &Rational::from(m + 1) + &x_sum;
    if denom.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let mut a: Vec<Rational> = d
        .x()
        .iter()
        .map(|xj| (d.y() + xj).checked_div(&denom))
        .collect::<Result<_>>()?;
    let partial: Rational = a.iter().sum();
    a.push(Rational::from(2) - partial);
    Ok(WeightVector::unchecked(a))
}

/// `a_i = 2 b_i / |b|`.
pub fn weights_from_polarization(b: &Polarization) -> WeightVector {
    let total = b.total();
    let a = b
        .b
        .iter()
        .map(|&bi| Rational::new(BigInt::from(2) * BigInt::from(bi), total.clone()).expect("total > 0"))
        .collect();
    WeightVector::unchecked(a)
}

/// `b_i = a_i M` with `M` the lcm of the denominators.
pub fn polarization_from_weights(a: &WeightVector) -> Result<Polarization> {
    if !a.is_democratic_sum() {
        return Err(Error::Precondition(format!("weights {a} do not sum to 2")));
    }
    if a.a.iter().any(|x| !x.is_positive()) {
        return Err(Error::Precondition(format!("weights {a} must be positive")));
    }
    let denoms: Vec<BigInt> = a.a.iter().map(|x| x.denom().clone()).collect();
    let lcm = lcm_all(&denoms);
    let scale = Rational::from_integer(lcm);
    let b = a
        .a
        .iter()
        .map(|x| {
            (x * &scale)
                .to_integer()
                .and_then(|v| v.to_u64())
                .ok_or_else(|| Error::Precondition(format!("scaled weight {x} does not fit in 64 bits")))
        })
        .collect::<Result<Vec<u64>>>()?;
    Polarization::new(b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WallSide {
    #[serde(rename = "I")]
    pub subset: Vec<usize>,
    /// Sign of `sum_{i in I} a_i - 1`.
    pub sign: i8,
}

fn ordering_sign(o: Ordering) -> i8 {
    match o {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Position of `a` relative to every wall `sum_{i in I} a_i = 1` with
/// `2 <= |I| <= n/2`. Subsets are 1-based, by size and then lexicographic.
pub fn weight_wall_sides(a: &WeightVector) -> Vec<WallSide> {
    let n = a.len();
    let one = Rational::one();
    let mut out = Vec::new();
    for size in 2..=n / 2 {
        for subset in k_subsets(n, size) {
            let sum: Rational = subset.iter().map(|&i| &a.a[i - 1]).sum();
            out.push(WallSide {
                subset,
                sign: ordering_sign(sum.cmp(&one)),
            });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupedWallSide {
    pub size: usize,
    /// The multiset of weights summed, ascending.
    pub weights: Vec<Rational>,
    #[serde(serialize_with = "crate::serde_big::as_string")]
    pub count: BigInt,
    pub sign: i8,
}

/// [`weight_wall_sides`] with subsets grouped by the multiset of weights
/// they pick up. Symmetric weights give one group per size.
pub fn weight_wall_sides_grouped(a: &WeightVector) -> Vec<GroupedWallSide> {
    let mut tally: BTreeMap<Rational, usize> = BTreeMap::new();
    for x in &a.a {
        *tally.entry(x.clone()).or_default() += 1;
    }
    let values: Vec<(Rational, usize)> = tally.into_iter().collect();
    let mut out = Vec::new();
    for size in 2..=a.len() / 2 {
        let mut picks = vec![0usize; values.len()];
        grouped(&values, 0, size, &mut picks, &mut out);
    }
    out
}

fn grouped(values: &[(Rational, usize)], idx: usize, remaining: usize, picks: &mut Vec<usize>, out: &mut Vec<GroupedWallSide>) {
    if idx == values.len() {
        if remaining != 0 {
            return;
        }
        let mut weights = Vec::new();
        let mut count = BigInt::one();
        for ((value, avail), &j) in values.iter().zip(picks.iter()) {
            count *= binomial(*avail, j);
            weights.extend(std::iter::repeat_n(value.clone(), j));
        }
        let sum: Rational = weights.iter().sum();
        out.push(GroupedWallSide {
            size: weights.len(),
            sign: ordering_sign(sum.cmp(&Rational::one())),
            weights,
            count,
        });
        return;
    }
    for j in 0..=values[idx].1.min(remaining) {
        picks[idx] = j;
        grouped(values, idx + 1, remaining - j, picks, out);
    }
    picks[idx] = 0;
}

/// Whether a reduction morphism from weights `a` to weights `b` exists,
/// i.e. `a_i >= b_i` for every `i`.
pub fn reduction_admissible(a: &WeightVector, b: &WeightVector) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(a.a.iter().zip(&b.a).all(|(x, y)| x >= y))
}
