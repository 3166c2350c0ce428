//! Exact polyhedral cones over the rationals.
//!
//! An [`HCone`] is `{x : n·x >= 0 for every normal n}`; a [`VCone`] is the
//! nonnegative span of its rays plus a linear lineality space. Conversion
//! between the two is the double description method run on primitive
//! integer vectors, with normals inserted in lexicographic order so the
//! result does not depend on the order the caller listed them in.
//!
//! Pairings other than the dot product are handled by the caller, who
//! transforms coordinates before building the cone.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_math::{primitive, QMatrix, QVector};

/// Default cap on the number of rays alive at any double description step.
pub const DEFAULT_RAY_CAP: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawHCone")]
pub struct HCone {
    dim: usize,
    normals: Vec<QVector>,
}

#[derive(Deserialize)]
struct RawHCone {
    dim: usize,
    normals: Vec<QVector>,
}

impl TryFrom<RawHCone> for HCone {
    type Error = Error;
    fn try_from(raw: RawHCone) -> Result<Self> {
        HCone::new(raw.dim, raw.normals)
    }
}

impl HCone {
    /// Canonicalizes the normals, drops zero normals and repeats, and keeps
    /// the first occurrence order.
    pub fn new(dim: usize, normals: Vec<QVector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Precondition("ambient dimension must be positive".into()));
        }
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(normals.len());
        for n in normals {
            if n.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: n.len(),
                });
            }
            let c = ray_form(&n);
            if c.is_zero() {
                continue;
            }
            if seen.insert(c.clone()) {
                out.push(c);
            }
        }
        Ok(HCone { dim, normals: out })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn normals(&self) -> &[QVector] {
        &self.normals
    }

    pub fn contains(&self, v: &QVector) -> Result<bool> {
        Ok(!matches!(self.classify(v)?, Classification::Outside(_)))
    }

    pub fn classify(&self, v: &QVector) -> Result<Classification> {
        classify_point(self, v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VCone {
    dim: usize,
    rays: Vec<QVector>,
    lineality: Vec<QVector>,
}

impl VCone {
    /// Builds a V-representation from arbitrary generators. Redundant
    /// generators are removed, so the rays of the result are extreme.
    pub fn from_generators(dim: usize, generators: Vec<QVector>, lineality: Vec<QVector>) -> Result<Self> {
        Self::from_generators_capped(dim, generators, lineality, DEFAULT_RAY_CAP)
    }

    pub fn from_generators_capped(
        dim: usize,
        generators: Vec<QVector>,
        lineality: Vec<QVector>,
        cap: usize,
    ) -> Result<Self> {
        let mut normals = generators;
        for l in lineality {
            normals.push(l.neg());
            normals.push(l);
        }
        let dual = HCone::new(dim, normals)?;
        let h = v_to_h_parts(&h_to_v_capped(&dual, cap)?);
        h_to_v_capped(&HCone::new(dim, h)?, cap)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[QVector] {
        &self.rays
    }

    pub fn lineality(&self) -> &[QVector] {
        &self.lineality
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }
}

/// Position of a point relative to an [`HCone`]. Indices refer to
/// [`HCone::normals`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", content = "normals", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Classification {
    Interior,
    Boundary(Vec<usize>),
    Outside(Vec<usize>),
}

impl Classification {
    pub fn is_interior(&self) -> bool {
        matches!(self, Classification::Interior)
    }

    pub fn is_boundary(&self) -> bool {
        matches!(self, Classification::Boundary(_))
    }

    pub fn is_outside(&self) -> bool {
        matches!(self, Classification::Outside(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Classification::Interior => "INTERIOR",
            Classification::Boundary(_) => "BOUNDARY",
            Classification::Outside(_) => "OUTSIDE",
        }
    }
}

pub fn classify_point(c: &HCone, v: &QVector) -> Result<Classification> {
    if v.len() != c.dim {
        return Err(Error::DimensionMismatch {
            expected: c.dim,
            found: v.len(),
        });
    }
    let mut active = Vec::new();
    let mut violated = Vec::new();
    for (i, n) in c.normals.iter().enumerate() {
        match n.dot(v)?.sign() {
            Ordering::Less => violated.push(i),
            Ordering::Equal => active.push(i),
            Ordering::Greater => {}
        }
    }
    Ok(if !violated.is_empty() {
        Classification::Outside(violated)
    } else if !active.is_empty() {
        Classification::Boundary(active)
    } else {
        Classification::Interior
    })
}

pub fn h_to_v(c: &HCone) -> Result<VCone> {
    h_to_v_capped(c, DEFAULT_RAY_CAP)
}

pub fn h_to_v_capped(c: &HCone, cap: usize) -> Result<VCone> {
    let mut normals: Vec<Vec<BigInt>> = c.normals.iter().map(integer_entries).collect();
    normals.sort_by(|a, b| lex_cmp(a, b));
    let (rays, lineality) = double_description(c.dim, &normals, cap)?;
    Ok(VCone {
        dim: c.dim,
        rays: rays.iter().map(|r| QVector::from_bigints(r)).collect(),
        lineality: lineality.iter().map(|l| QVector::from_bigints(l)).collect(),
    })
}

/// Irredundant inequality description of a V-cone.
pub fn v_to_h(c: &VCone) -> Result<HCone> {
    v_to_h_capped(c, DEFAULT_RAY_CAP)
}

pub fn v_to_h_capped(c: &VCone, cap: usize) -> Result<HCone> {
    let d = h_to_v_capped(&dual_of_v(c), cap)?;
    HCone::new(c.dim, v_to_h_parts(&d))
}

/// The dual of a V-cone: every ray becomes a normal, every lineality
/// direction an equality.
pub fn dual_of_v(c: &VCone) -> HCone {
    let mut normals = c.rays.clone();
    for l in &c.lineality {
        normals.push(l.clone());
        normals.push(l.neg());
    }
    HCone::new(c.dim, normals).expect("rays share the ambient dimension")
}

/// The dual of an H-cone: the cone generated by its normals, reduced to
/// extreme rays and a lineality basis.
pub fn dual_of_h(c: &HCone) -> Result<VCone> {
    dual_of_h_capped(c, DEFAULT_RAY_CAP)
}

pub fn dual_of_h_capped(c: &HCone, cap: usize) -> Result<VCone> {
    let primal = h_to_v_capped(c, cap)?;
    h_to_v_capped(&dual_of_v(&primal), cap)
}

fn v_to_h_parts(c: &VCone) -> Vec<QVector> {
    let mut normals = c.rays.clone();
    for l in &c.lineality {
        normals.push(l.clone());
        normals.push(l.neg());
    }
    normals
}

/// Clears denominators and divides by the (positive) gcd; direction is kept.
fn ray_form(v: &QVector) -> QVector {
    QVector::from_bigints(&v.integer_direction())
}

fn integer_entries(v: &QVector) -> Vec<BigInt> {
    v.iter()
        .map(|x| x.to_integer().expect("stored normals are integral"))
        .collect()
}

fn lex_cmp(a: &[BigInt], b: &[BigInt]) -> Ordering {
    a.iter().cmp(b.iter())
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn reduce_positive(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = num_integer::Integer::gcd(&g, x);
        }
    }
    if !g.is_zero() && g != BigInt::from(1) {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn with_prefix(len: usize, prefix: usize) -> Self {
        let mut b = Bits::new(len);
        for i in 0..prefix {
            b.set(i);
        }
        b
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

struct Ray {
    v: Vec<BigInt>,
    zeros: Bits,
}

type RaysAndLineality = (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>);

/// Double description on primitive integer normals, processed in the given order.
///
/// Invariant between steps: every processed normal vanishes on the current
/// lineality basis, and `zeros` of each ray is the set of processed normals
/// vanishing on it. Adjacency of a positive/negative pair is decided
/// combinatorially: the pair's common zero set must have at least
/// `effective_dim - 2` members and no third ray may vanish on all of it.
fn double_description(dim: usize, normals: &[Vec<BigInt>], cap: usize) -> Result<RaysAndLineality> {
    let total = normals.len();
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in normals.iter().enumerate() {
        if let Some(pos) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let l = lineality.remove(pos);
            let al = dot(a, &l);
            let al_abs = al.abs();
            for other in lineality.iter_mut() {
                let ao = dot(a, other);
                if ao.is_zero() {
                    continue;
                }
                let mut v: Vec<BigInt> = other
                    .iter()
                    .zip(&l)
                    .map(|(o, li)| &al * o - &ao * li)
                    .collect();
                reduce_positive(&mut v);
                *other = v;
            }
            for r in rays.iter_mut() {
                let ar = dot(a, &r.v);
                if !ar.is_zero() {
                    let signed = if al.is_negative() { -ar } else { ar };
                    let mut v: Vec<BigInt> = r
                        .v
                        .iter()
                        .zip(&l)
                        .map(|(x, li)| &al_abs * x - &signed * li)
                        .collect();
                    reduce_positive(&mut v);
                    r.v = v;
                }
                r.zeros.set(k);
            }
            let oriented: Vec<BigInt> = if al.is_negative() {
                l.iter().map(|x| -x).collect()
            } else {
                l
            };
            rays.push(Ray {
                v: oriented,
                zeros: Bits::with_prefix(total, k),
            });
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let positive: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let negative: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        if negative.is_empty() {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.zeros.set(k);
                }
            }
            continue;
        }

        let effective_dim = dim - lineality.len();
        let needed = effective_dim.saturating_sub(2);
        let mut created = Vec::new();
        for &p in &positive {
            for &n in &negative {
                let common = rays[p].zeros.and(&rays[n].zeros);
                if common.count() < needed {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(i, r)| i != p && i != n && common.is_subset_of(&r.zeros));
                if blocked {
                    continue;
                }
                let vp = &values[p];
                let vn = -&values[n];
                let mut v: Vec<BigInt> = rays[n]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(xn, xp)| vp * xn + &vn * xp)
                    .collect();
                reduce_positive(&mut v);
                let mut zeros = common;
                zeros.set(k);
                created.push(Ray { v, zeros });
                let alive = rays.len() - negative.len() + created.len();
                if alive > cap {
                    return Err(Error::ResourceLimit { cap, count: alive });
                }
            }
        }

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() - negative.len() + created.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if values[i].is_negative() {
                continue;
            }
            if values[i].is_zero() {
                r.zeros.set(k);
            }
            next.push(r);
        }
        next.extend(created);
        rays = next;
    }

    let lineality = canonical_subspace_basis(dim, &lineality);
    let mut out: Vec<Vec<BigInt>> = rays
        .into_iter()
        .map(|r| reduce_mod_subspace(r.v, &lineality))
        .collect();
    out.sort_by(|a, b| lex_cmp(a, b));
    out.dedup();
    Ok((out, lineality))
}

/// Reduced echelon basis of a subspace, each row primitive with a positive pivot.
fn canonical_subspace_basis(dim: usize, basis: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if basis.is_empty() {
        return Vec::new();
    }
    let m = QMatrix::new(basis.iter().map(|b| QVector::from_bigints(b)).collect(), dim)
        .expect("basis vectors share the ambient dimension");
    let (rref, _) = m.rref();
    rref.into_iter()
        .map(|row| primitive(QVector::new(row).primitive_integer()))
        .collect()
}

/// Representative of `v` modulo a reduced echelon basis: zero at every pivot column.
fn reduce_mod_subspace(mut v: Vec<BigInt>, basis: &[Vec<BigInt>]) -> Vec<BigInt> {
    for b in basis {
        let Some(pc) = b.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        if v[pc].is_zero() {
            continue;
        }
        let f = v[pc].clone();
        let bp = &b[pc];
        v = v.iter().zip(b).map(|(x, y)| bp * x - &f * y).collect();
        reduce_positive(&mut v);
    }
    v
}
