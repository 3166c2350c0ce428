//! Linear systems `L_{n,d}(m_1, ..., m_s)` of degree-`d` hypersurfaces in
//! `P^n` with assigned multiplicities at general points, and the Hilbert
//! polynomials of the images of the maps they define.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_math::{binomial, binomial_or_zero, binomial_poly, factorial, QMatrix, QPolynomial, QVector, Rational};
use crate::subsets::k_subsets;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSystem")]
pub struct LinearSystem {
    n: u64,
    d: u64,
    mults: Vec<u64>,
}

#[derive(Deserialize)]
struct RawSystem {
    n: u64,
    d: u64,
    mults: Vec<u64>,
}

impl TryFrom<RawSystem> for LinearSystem {
    type Error = Error;
    fn try_from(raw: RawSystem) -> Result<Self> {
        LinearSystem::new(raw.n, raw.d, raw.mults)
    }
}

impl LinearSystem {
    pub fn new(n: u64, d: u64, mults: Vec<u64>) -> Result<Self> {
        if n < 1 {
            return Err(Error::Precondition("ambient dimension n must be at least 1".into()));
        }
        Ok(LinearSystem { n, d, mults })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn mults(&self) -> &[u64] {
        &self.mults
    }

    /// Number of assigned points.
    pub fn s(&self) -> usize {
        self.mults.len()
    }

    /// `t L = L_{n, t d}(t m_1, ..., t m_s)`.
    pub fn scaled(&self, t: u64) -> LinearSystem {
        LinearSystem {
            n: self.n,
            d: self.d * t,
            mults: self.mults.iter().map(|m| m * t).collect(),
        }
    }

    fn n_usize(&self) -> usize {
        self.n as usize
    }
}

fn k_of(sum: &BigInt, r: usize, d: u64) -> BigInt {
    let k = sum - BigInt::from(r) * BigInt::from(d);
    if k.is_negative() {
        BigInt::zero()
    } else {
        k
    }
}

/// `max(sum_{i in I} m_i - r d, 0)` with `r = |I| - 1`. `I` is 1-based.
pub fn k_value(l: &LinearSystem, subset: &[usize]) -> Result<BigInt> {
    if subset.is_empty() {
        return Err(Error::Precondition("index subset must be nonempty".into()));
    }
    let mut seen = vec![false; l.s()];
    let mut sum = BigInt::zero();
    for &i in subset {
        if i == 0 || i > l.s() {
            return Err(Error::Precondition(format!("point label {i} outside 1..={}", l.s())));
        }
        if std::mem::replace(&mut seen[i - 1], true) {
            return Err(Error::Precondition(format!("point label {i} repeated")));
        }
        sum += l.mults[i - 1];
    }
    Ok(k_of(&sum, subset.len() - 1, l.d))
}

/// One class of subsets `I[r]` sharing the same multiplicity multiset.
#[derive(Clone, Debug, PartialEq, Eq)]
struct SubsetClass {
    r: usize,
    count: BigInt,
    k: BigInt,
}

/// Subsets grouped by `(r, multiset of multiplicities)`, in that order.
fn subset_classes(l: &LinearSystem) -> Vec<SubsetClass> {
    let mut tally: BTreeMap<u64, usize> = BTreeMap::new();
    for &m in &l.mults {
        *tally.entry(m).or_default() += 1;
    }
    let values: Vec<(u64, usize)> = tally.into_iter().collect();
    let mut out = Vec::new();
    for size in 1..=l.s() {
        let mut picks = vec![0usize; values.len()];
        collect_classes(&values, 0, size, &mut picks, l.d, &mut out);
    }
    out
}

fn collect_classes(
    values: &[(u64, usize)],
    idx: usize,
    remaining: usize,
    picks: &mut Vec<usize>,
    d: u64,
    out: &mut Vec<SubsetClass>,
) {
    if idx == values.len() {
        if remaining != 0 {
            return;
        }
        let size: usize = picks.iter().sum();
        let mut count = BigInt::one();
        let mut sum = BigInt::zero();
        for (&(value, avail), &j) in values.iter().zip(picks.iter()) {
            count *= binomial(avail, j);
            sum += BigInt::from(value) * BigInt::from(j);
        }
        let r = size - 1;
        out.push(SubsetClass {
            r,
            count,
            k: k_of(&sum, r, d),
        });
        return;
    }
    let (_, avail) = values[idx];
    for j in 0..=avail.min(remaining) {
        picks[idx] = j;
        collect_classes(values, idx + 1, remaining - j, picks, d, out);
    }
    picks[idx] = 0;
}

fn sign(r: usize) -> BigInt {
    if r % 2 == 0 {
        BigInt::from(-1)
    } else {
        BigInt::one()
    }
}

/// `binom(n+d, d) + sum_r sum_{I[r]} (-1)^{r+1} binom(n + k_I - r - 1, n)`,
/// where binomials with top entry below `n` vanish.
pub fn linear_virtual_dim(l: &LinearSystem) -> BigInt {
    let n = l.n_usize();
    let mut total = binomial(n + l.d as usize, n);
    for c in subset_classes(l) {
        let top = BigInt::from(n) + &c.k - BigInt::from(c.r) - 1;
        total += sign(c.r) * &c.count * binomial_or_zero(&top, n);
    }
    total
}

/// `max(virtual dimension, -1)`, without any special-effect containment test.
pub fn linear_expected_dim(l: &LinearSystem) -> BigInt {
    linear_virtual_dim(l).max(BigInt::from(-1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    /// Coefficients in `t`, lowest degree first.
    pub polynomial: QPolynomial,
    #[serde(serialize_with = "crate::serde_big::as_string")]
    pub degree: BigInt,
    #[serde(rename = "N", serialize_with = "crate::serde_big::as_string")]
    pub embedding_dim: BigInt,
    /// Set when `s = n + 2`, the edge of the range the formula is proved for.
    pub boundary_case: bool,
}

impl HilbertData {
    /// `h(t)` at an integer.
    pub fn value_at(&self, t: i64) -> Rational {
        self.polynomial.eval_int(t)
    }

    fn finish(polynomial: QPolynomial, degree: BigInt, n: usize, boundary_case: bool) -> Result<Self> {
        let lead = polynomial.coefficient(n) * Rational::from_integer(factorial(n));
        if lead != Rational::from_integer(degree.clone()) {
            return Err(Error::Inconsistent(format!(
                "degree {degree} disagrees with n! times leading coefficient {lead}"
            )));
        }
        if polynomial.eval_int(0) != Rational::one() {
            return Err(Error::Inconsistent(format!("h(0) = {}", polynomial.eval_int(0))));
        }
        let h1 = polynomial
            .eval_int(1)
            .to_integer()
            .ok_or_else(|| Error::Inconsistent("h(1) is not an integer".into()))?;
        Ok(HilbertData {
            polynomial,
            degree,
            embedding_dim: h1 - 1,
            boundary_case,
        })
    }
}

/// Hilbert polynomial, degree and embedding dimension of the image of the
/// map given by `L`, for `s <= n + 2`.
pub fn hilbert(l: &LinearSystem) -> Result<HilbertData> {
    let n = l.n_usize();
    if l.s() > n + 2 {
        return Err(Error::Precondition(format!(
            "Hilbert formula needs s <= n+2 = {}, got s = {}",
            n + 2,
            l.s()
        )));
    }
    let d = BigInt::from(l.d);
    let mut poly = binomial_poly(&d, &BigInt::from(n), n);
    let mut degree = num_traits::pow(d, n);
    for c in subset_classes(l) {
        if c.k.is_zero() {
            continue;
        }
        let beta = BigInt::from(n as i64 - c.r as i64 - 1);
        let coeff = Rational::from_integer(sign(c.r) * &c.count);
        poly = poly.add(&binomial_poly(&c.k, &beta, n).scaled(&coeff));
        degree += sign(c.r) * &c.count * num_traits::pow(c.k.clone(), n);
    }
    HilbertData::finish(poly, degree, n, l.s() == n + 2)
}

/// `L_{2g-1, g}((g-1)^{2g+1})`.
pub fn sigma_system(g: u64) -> Result<LinearSystem> {
    if g < 2 {
        return Err(Error::Precondition(format!("sigma_system needs g >= 2, got {g}")));
    }
    LinearSystem::new(2 * g - 1, g, vec![g - 1; (2 * g + 1) as usize])
}

/// `L_{2g, 2g+1}((2g-1)^{2g+2})`.
pub fn mu_system(g: u64) -> Result<LinearSystem> {
    if g < 1 {
        return Err(Error::Precondition(format!("mu_system needs g >= 1, got {g}")));
    }
    LinearSystem::new(2 * g, 2 * g + 1, vec![2 * g - 1; (2 * g + 2) as usize])
}

/// Closed form for `Sigma_{2g-1}`: `k_r = g - 1 - r` for `r <= g - 2`.
pub fn hilbert_sigma_odd(g: u64) -> Result<HilbertData> {
    if g < 2 {
        return Err(Error::Precondition(format!("hilbert_sigma_odd needs g >= 2, got {g}")));
    }
    let g = g as usize;
    let n = 2 * g - 1;
    let terms = (0..=g - 2).map(|r| (r, binomial(2 * g + 1, r + 1), g - 1 - r));
    closed_form(n, g, terms)
}

/// Closed form for `Sigma_{2g}`: `k_r = 2g - 1 - 2r` for `r <= g - 1`.
pub fn hilbert_sigma_even(g: u64) -> Result<HilbertData> {
    if g < 1 {
        return Err(Error::Precondition(format!("hilbert_sigma_even needs g >= 1, got {g}")));
    }
    let g = g as usize;
    let n = 2 * g;
    let terms = (0..g).map(|r| (r, binomial(2 * g + 2, r + 1), 2 * g - 1 - 2 * r));
    closed_form(n, 2 * g + 1, terms)
}

fn closed_form(n: usize, d: usize, terms: impl Iterator<Item = (usize, BigInt, usize)>) -> Result<HilbertData> {
    let nb = BigInt::from(n);
    let mut poly = binomial_poly(&BigInt::from(d), &nb, n);
    let mut degree = num_traits::pow(BigInt::from(d), n);
    for (r, count, k) in terms {
        let signed = sign(r) * count;
        let beta = BigInt::from(n as i64 - r as i64 - 1);
        poly = poly.add(&binomial_poly(&BigInt::from(k), &beta, n).scaled(&Rational::from_integer(signed.clone())));
        degree += signed * num_traits::pow(BigInt::from(k), n);
    }
    HilbertData::finish(poly, degree, n, true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KumarSystem {
    pub system: LinearSystem,
    /// Some computed multiplicity was negative and was set to 0.
    pub clamped: bool,
}

/// The linear system on `P^{n-3}` whose image is the GIT quotient of `n`
/// points with polarization `b`.
pub fn kumar_system(b: &[u64]) -> Result<KumarSystem> {
    let n = b.len();
    if n < 5 {
        return Err(Error::Precondition(format!("need at least 5 weights, got {n}")));
    }
    if b.contains(&0) {
        return Err(Error::Precondition("weights must be positive".into()));
    }
    let total: i128 = b.iter().map(|&v| v as i128).sum();
    for (i, &bi) in b.iter().enumerate() {
        if 2 * bi as i128 >= total {
            return Err(Error::Precondition(format!(
                "b_{} = {bi} is not smaller than the sum of the others",
                i + 1
            )));
        }
    }
    let bn = b[n - 1] as i128;
    let (degree, raw): (i128, Vec<i128>) = if total % 2 == 0 {
        let half = total / 2;
        (half - bn, b[..n - 1].iter().map(|&bi| half - bi as i128 - bn).collect())
    } else {
        (total - 2 * bn, b[..n - 1].iter().map(|&bi| total - 2 * bi as i128 - 2 * bn).collect())
    };
    let clamped = raw.iter().any(|&m| m < 0);
    let mults = raw.into_iter().map(|m| m.max(0) as u64).collect();
    Ok(KumarSystem {
        system: LinearSystem::new(n as u64 - 3, degree as u64, mults)?,
        clamped,
    })
}

/// Dimension of the space of `(a_I)`, `I` a `g`-subset of `{1..2g}`, with
/// `sum_{I contains J} a_I = 0` for every `(g-2)`-subset `J`.
pub fn section_space_dim_odd(g: usize) -> Result<usize> {
    if g < 2 {
        return Err(Error::Precondition(format!("section_space_dim_odd needs g >= 2, got {g}")));
    }
    let cols: Vec<Vec<usize>> = k_subsets(2 * g, g).collect();
    let rows: Vec<QVector> = k_subsets(2 * g, g - 2)
        .map(|j| {
            QVector::from_ints(
                cols.iter()
                    .map(|i| i64::from(j.iter().all(|x| i.contains(x)))),
            )
        })
        .collect();
    let m = QMatrix::new(rows, cols.len())?;
    Ok(cols.len() - m.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sys(n: u64, d: u64, mults: &[u64]) -> LinearSystem {
        LinearSystem::new(n, d, mults.to_vec()).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn k_values() {
        let l = sys(3, 2, &[1; 5]);
        assert_eq!(k_value(&l, &[2]).unwrap(), big(1));
        assert_eq!(k_value(&l, &[1, 2]).unwrap(), big(0));
        let l = sys(4, 5, &[3, 1, 4, 1, 5, 9]);
        for i in 1..=6 {
            assert_eq!(k_value(&l, &[i]).unwrap(), big(l.mults()[i - 1] as i64));
        }
        assert!(k_value(&l, &[]).is_err());
        assert!(k_value(&l, &[7]).is_err());
        assert!(k_value(&l, &[1, 1]).is_err());
    }

    #[test]
    fn virtual_dimensions() {
        assert_eq!(linear_virtual_dim(&sys(3, 2, &[1; 5])), big(5));
        assert_eq!(linear_virtual_dim(&sys(2, 3, &[1; 4])), big(6));
        assert_eq!(linear_virtual_dim(&sys(3, 4, &[])), big(35));
        assert_eq!(linear_expected_dim(&sys(2, 1, &[1; 5])), big(-1));
    }

    fn virtual_dim_by_subsets(l: &LinearSystem) -> BigInt {
        let n = l.n() as usize;
        let mut total = binomial(n + l.d() as usize, n);
        for size in 1..=l.s() {
            for subset in k_subsets(l.s(), size) {
                let k = k_value(l, &subset).unwrap();
                let r = size - 1;
                let top = BigInt::from(n) + k - BigInt::from(r) - 1;
                total += sign(r) * binomial_or_zero(&top, n);
            }
        }
        total
    }

    proptest! {
        #[test]
        fn grouping_matches_subset_enumeration(
            n in 1u64..5,
            d in 0u64..7,
            mults in proptest::collection::vec(0u64..5, 0..7),
        ) {
            let l = sys(n, d, &mults);
            prop_assert_eq!(linear_virtual_dim(&l), virtual_dim_by_subsets(&l));
        }
    }

    #[test]
    fn hilbert_examples() {
        let h = hilbert(&sys(3, 2, &[1; 5])).unwrap();
        assert_eq!(h.value_at(1), Rational::from(5));
        assert_eq!(h.value_at(2), Rational::from(15));
        assert_eq!(h.degree, big(3));
        assert_eq!(h.embedding_dim, big(4));
        assert!(h.boundary_case);
        let h = hilbert(&sys(2, 3, &[1; 4])).unwrap();
        assert_eq!((h.value_at(1), h.degree.clone()), (Rational::from(6), big(5)));
        assert!(h.boundary_case);
        let h = hilbert(&sys(4, 5, &[3; 6])).unwrap();
        assert_eq!(h.degree, big(154));
        assert!(hilbert(&sys(2, 3, &[1; 5])).is_err());
        let h = hilbert(&sys(2, 0, &[])).unwrap();
        assert_eq!((h.degree.clone(), h.embedding_dim.clone()), (big(0), big(0)));
    }

    #[test]
    fn closed_forms_agree_with_general_path() {
        for g in 2..=5 {
            assert_eq!(hilbert_sigma_odd(g).unwrap().polynomial, hilbert(&sigma_system(g).unwrap()).unwrap().polynomial);
        }
        for g in 1..=5 {
            assert_eq!(hilbert_sigma_even(g).unwrap().polynomial, hilbert(&mu_system(g).unwrap()).unwrap().polynomial);
        }
        let h3 = hilbert_sigma_odd(3).unwrap();
        assert_eq!((h3.degree.clone(), h3.value_at(1)), (big(40), Rational::from(14)));
        let h2 = hilbert_sigma_odd(2).unwrap();
        assert_eq!((h2.degree.clone(), h2.embedding_dim.clone()), (big(3), big(4)));
        let e1 = hilbert_sigma_even(1).unwrap();
        assert_eq!((e1.degree.clone(), e1.embedding_dim.clone()), (big(5), big(5)));
    }

    #[test]
    fn scaling_law() {
        let corpus = [sys(3, 2, &[1; 5]), sys(2, 3, &[1; 4]), sys(4, 5, &[3; 6]), sys(5, 3, &[2; 7])];
        for l in &corpus {
            let h = hilbert(l).unwrap();
            for t in 1..=4 {
                assert_eq!(h.value_at(t as i64), Rational::from_integer(linear_virtual_dim(&l.scaled(t))));
            }
        }
    }

    #[test]
    fn kumar_examples() {
        let k = kumar_system(&[1; 6]).unwrap();
        assert_eq!(k.system, sys(3, 2, &[1; 5]));
        assert!(!k.clamped);
        assert_eq!(kumar_system(&[1; 5]).unwrap().system, sys(2, 3, &[1; 4]));
        assert_eq!(kumar_system(&[2; 5]).unwrap().system, sys(2, 3, &[1; 4]));
        assert!(kumar_system(&[1; 4]).is_err());
        assert!(kumar_system(&[5, 1, 1, 1, 1]).is_err());
        let k = kumar_system(&[1, 1, 1, 1, 3, 3]).unwrap();
        assert!(k.clamped);
        assert!(k.system.mults().contains(&0));
    }

    proptest! {
        #[test]
        fn kumar_doubling_for_odd_totals(b in proptest::collection::vec(1u64..6, 5..10)) {
            let total: u64 = b.iter().sum();
            prop_assume!(total % 2 == 1);
            prop_assume!(b.iter().all(|&bi| 2 * bi < total));
            let doubled: Vec<u64> = b.iter().map(|v| 2 * v).collect();
            prop_assert_eq!(kumar_system(&b).unwrap(), kumar_system(&doubled).unwrap());
        }
    }

    #[test]
    fn section_spaces() {
        assert_eq!(section_space_dim_odd(2).unwrap(), 5);
        assert_eq!(section_space_dim_odd(3).unwrap(), 14);
        assert_eq!(section_space_dim_odd(4).unwrap(), 42);
    }

    #[test]
    fn system_json() {
        let l = sys(3, 2, &[1; 5]);
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"{"n":3,"d":2,"mults":[1,1,1,1,1]}"#);
        assert_eq!(serde_json::from_str::<LinearSystem>(&s).unwrap(), l);
        assert!(serde_json::from_str::<LinearSystem>(r#"{"n":0,"d":2,"mults":[]}"#).is_err());
    }
}
