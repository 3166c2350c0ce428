//! Divisor and curve classes on the blow-up of `P^m` at `s` general points.
//!
//! Divisors are written `y H + sum x_i E_i` and curves `a l + sum c_i e_i`,
//! with `H.l = 1`, `E_i.e_i = -1` and all mixed products zero. Point labels
//! are 1-based throughout: `E_1` is the exceptional divisor over `p_1`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_math::{binomial, QVector, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawModel")]
pub struct BlowupModel {
    m: usize,
    s: usize,
}

#[derive(Deserialize)]
struct RawModel {
    m: usize,
    s: usize,
}

impl TryFrom<RawModel> for BlowupModel {
    type Error = Error;
    fn try_from(raw: RawModel) -> Result<Self> {
        BlowupModel::new(raw.m, raw.s)
    }
}

impl BlowupModel {
    pub fn new(m: usize, s: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::Precondition(format!("dimension m = {m} must be at least 2")));
        }
        if s < 1 {
            return Err(Error::Precondition("at least one point must be blown up".into()));
        }
        Ok(BlowupModel { m, s })
    }

    /// `X^m_{m+2}`, the model carrying the Mori chamber decomposition.
    pub fn mori(m: usize) -> Result<Self> {
        Self::new(m, m + 2)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Rank of the Picard lattice, `1 + s`.
    pub fn rank(&self) -> usize {
        self.s + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDivisor")]
pub struct DivisorClass {
    model: BlowupModel,
    y: Rational,
    x: Vec<Rational>,
}

#[derive(Deserialize)]
struct RawDivisor {
    model: BlowupModel,
    y: Rational,
    x: Vec<Rational>,
}

impl TryFrom<RawDivisor> for DivisorClass {
    type Error = Error;
    fn try_from(raw: RawDivisor) -> Result<Self> {
        DivisorClass::new(raw.model, raw.y, raw.x)
    }
}

impl DivisorClass {
    pub fn new(model: BlowupModel, y: Rational, x: Vec<Rational>) -> Result<Self> {
        if x.len() != model.s {
            return Err(Error::DimensionMismatch {
                expected: model.s,
                found: x.len(),
            });
        }
        Ok(DivisorClass { model, y, x })
    }

    pub fn from_ints(model: BlowupModel, y: i64, x: &[i64]) -> Result<Self> {
        Self::new(model, y.into(), x.iter().map(|&v| v.into()).collect())
    }

    /// Reads `(y, x_1, ..., x_s)`.
    pub fn from_coordinates(model: BlowupModel, coords: &QVector) -> Result<Self> {
        if coords.len() != model.rank() {
            return Err(Error::DimensionMismatch {
                expected: model.rank(),
                found: coords.len(),
            });
        }
        let e = coords.entries();
        Self::new(model, e[0].clone(), e[1..].to_vec())
    }

    /// The class `H`.
    pub fn hyperplane(model: BlowupModel) -> Self {
        DivisorClass {
            model,
            y: Rational::one(),
            x: vec![Rational::zero(); model.s],
        }
    }

    /// The class `E_i` (1-based).
    pub fn exceptional(model: BlowupModel, i: usize) -> Result<Self> {
        check_label(model, i)?;
        let mut x = vec![Rational::zero(); model.s];
        x[i - 1] = Rational::one();
        Ok(DivisorClass {
            model,
            y: Rational::zero(),
            x,
        })
    }

    /// `d H - sum m_i E_i`.
    pub fn from_degree_and_multiplicities(model: BlowupModel, d: Rational, mults: &[Rational]) -> Result<Self> {
        Self::new(model, d, mults.iter().map(|m| -m).collect())
    }

    pub fn model(&self) -> BlowupModel {
        self.model
    }

    pub fn y(&self) -> &Rational {
        &self.y
    }

    pub fn x(&self) -> &[Rational] {
        &self.x
    }

    pub fn degree(&self) -> &Rational {
        &self.y
    }

    /// Multiplicities `m_i = -x_i`.
    pub fn multiplicities(&self) -> Vec<Rational> {
        self.x.iter().map(|v| -v).collect()
    }

    /// `(y, x_1, ..., x_s)`.
    pub fn coordinates(&self) -> QVector {
        let mut v = Vec::with_capacity(self.model.rank());
        v.push(self.y.clone());
        v.extend(self.x.iter().cloned());
        QVector::new(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCurve")]
pub struct CurveClass {
    model: BlowupModel,
    a: Rational,
    c: Vec<Rational>,
}

#[derive(Deserialize)]
struct RawCurve {
    model: BlowupModel,
    a: Rational,
    c: Vec<Rational>,
}

impl TryFrom<RawCurve> for CurveClass {
    type Error = Error;
    fn try_from(raw: RawCurve) -> Result<Self> {
        CurveClass::new(raw.model, raw.a, raw.c)
    }
}

impl CurveClass {
    pub fn new(model: BlowupModel, a: Rational, c: Vec<Rational>) -> Result<Self> {
        if c.len() != model.s {
            return Err(Error::DimensionMismatch {
                expected: model.s,
                found: c.len(),
            });
        }
        Ok(CurveClass { model, a, c })
    }

    pub fn from_ints(model: BlowupModel, a: i64, c: &[i64]) -> Result<Self> {
        Self::new(model, a.into(), c.iter().map(|&v| v.into()).collect())
    }

    pub fn from_coordinates(model: BlowupModel, coords: &QVector) -> Result<Self> {
        if coords.len() != model.rank() {
            return Err(Error::DimensionMismatch {
                expected: model.rank(),
                found: coords.len(),
            });
        }
        let e = coords.entries();
        Self::new(model, e[0].clone(), e[1..].to_vec())
    }

    /// The strict transform of a general line through `p_i`: `l - e_i`.
    pub fn line_through(model: BlowupModel, i: usize) -> Result<Self> {
        check_label(model, i)?;
        let mut c = vec![Rational::zero(); model.s];
        c[i - 1] = Rational::from(-1);
        Ok(CurveClass {
            model,
            a: Rational::one(),
            c,
        })
    }

    /// The class `a l - sum_{i in points} e_i`.
    pub fn through_points(model: BlowupModel, a: i64, points: &[usize]) -> Result<Self> {
        let mut c = vec![Rational::zero(); model.s];
        for &i in points {
            check_label(model, i)?;
            c[i - 1] = Rational::from(-1);
        }
        Ok(CurveClass {
            model,
            a: a.into(),
            c,
        })
    }

    pub fn model(&self) -> BlowupModel {
        self.model
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn c(&self) -> &[Rational] {
        &self.c
    }

    /// `(a, c_1, ..., c_s)`.
    pub fn coordinates(&self) -> QVector {
        let mut v = Vec::with_capacity(self.model.rank());
        v.push(self.a.clone());
        v.extend(self.c.iter().cloned());
        QVector::new(v)
    }

    /// The linear form `D -> D.C` in divisor coordinates `(y, x_1, ..., x_s)`,
    /// i.e. `(a, -c_1, ..., -c_s)`.
    pub fn pairing_form(&self) -> QVector {
        let mut v = Vec::with_capacity(self.model.rank());
        v.push(self.a.clone());
        v.extend(self.c.iter().map(|x| -x));
        QVector::new(v)
    }

    /// Inverse of [`CurveClass::pairing_form`].
    pub fn from_pairing_form(model: BlowupModel, form: &QVector) -> Result<Self> {
        if form.len() != model.rank() {
            return Err(Error::DimensionMismatch {
                expected: model.rank(),
                found: form.len(),
            });
        }
        let e = form.entries();
        Self::new(model, e[0].clone(), e[1..].iter().map(|x| -x).collect())
    }
}

fn check_label(model: BlowupModel, i: usize) -> Result<()> {
    if i == 0 || i > model.s {
        return Err(Error::Precondition(format!(
            "point label {i} outside 1..={}",
            model.s
        )));
    }
    Ok(())
}

/// Intersection number `D.C = a y - sum c_i x_i`.
pub fn pair(d: &DivisorClass, c: &CurveClass) -> Result<Rational> {
    if d.model != c.model {
        return Err(Error::ModelMismatch(format!(
            "divisor on {:?}, curve on {:?}",
            d.model, c.model
        )));
    }
    let mut acc = &c.a * &d.y;
    for (ci, xi) in c.c.iter().zip(&d.x) {
        acc -= &(ci * xi);
    }
    Ok(acc)
}

/// Default Cremona base `{1, ..., m+1}`.
pub fn default_cremona_base(model: BlowupModel) -> Vec<usize> {
    (1..=model.m + 1).collect()
}

/// Push-forward of `D` under the standard Cremona transformation centered at
/// the `m+1` points of `base`. Points off the base keep their multiplicity.
pub fn cremona_pushforward(d: &DivisorClass, base: &[usize]) -> Result<DivisorClass> {
    let model = d.model;
    if base.len() != model.m + 1 {
        return Err(Error::Precondition(format!(
            "Cremona base must have m+1 = {} points, got {}",
            model.m + 1,
            base.len()
        )));
    }
    let set: BTreeSet<usize> = base.iter().copied().collect();
    if set.len() != base.len() {
        return Err(Error::Precondition("Cremona base points must be distinct".into()));
    }
    for &i in base {
        check_label(model, i)?;
    }
    let m = Rational::from(model.m);
    let deg = &d.y;
    let mults = d.multiplicities();
    let base_sum: Rational = base.iter().map(|&i| &mults[i - 1]).sum();
    let new_deg = deg * &m - &base_sum;
    let mut new_mults = mults.clone();
    let m_minus_one = &m - Rational::one();
    for &i in base {
        // d(m-1) - sum_{j in base, j != i} m_j
        new_mults[i - 1] = deg * &m_minus_one - (&base_sum - &mults[i - 1]);
    }
    DivisorClass::from_degree_and_multiplicities(model, new_deg, &new_mults)
}

/// `-K = (m+1) H - (m-1) sum E_i`.
pub fn anticanonical(model: BlowupModel) -> DivisorClass {
    let x = Rational::from(-(model.m as i64 - 1));
    DivisorClass {
        model,
        y: Rational::from(model.m + 1),
        x: vec![x; model.s],
    }
}

/// All `binom(2g+1, g)` classes `(g-1) l - e_{i_1} - ... - e_{i_g}` on the
/// blow-up of `P^{2g-1}` at `2g+1` points, subsets in lexicographic order.
pub fn contracted_rnc_classes(g: usize) -> Result<Vec<CurveClass>> {
    if g < 2 {
        return Err(Error::Precondition(format!("g = {g} must be at least 2")));
    }
    let model = BlowupModel::new(2 * g - 1, 2 * g + 1)?;
    crate::subsets::k_subsets(2 * g + 1, g)
        .map(|subset| CurveClass::through_points(model, g as i64 - 1, &subset))
        .collect()
}

/// The class `g H - (g-1) sum E_i` on `X^{2g-1}_{2g+1}` cut out by the
/// symmetric linear system.
pub fn symmetric_polarization(g: usize) -> Result<DivisorClass> {
    if g < 2 {
        return Err(Error::Precondition(format!("g = {g} must be at least 2")));
    }
    let model = BlowupModel::new(2 * g - 1, 2 * g + 1)?;
    Ok(DivisorClass {
        model,
        y: Rational::from(g),
        x: vec![Rational::from(-(g as i64 - 1)); model.s],
    })
}

/// Picard rank after blowing up `s` points and then every linear span of at
/// most `c + 1` of them: `1 + sum_{j=0}^{c} binom(s, j+1)`.
pub fn picard_rank_stage(s: usize, c: usize) -> BigInt {
    (0..=c).fold(BigInt::from(1), |acc, j| acc + binomial(s, j + 1))
}
