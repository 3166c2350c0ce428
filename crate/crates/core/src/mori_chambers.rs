//! Cones of divisors on `X^m_{m+2}`, the wall arrangement of its Mori
//! chamber decomposition, and the curve cones of the even-dimensional
//! quotients.
//!
//! All cones live in divisor coordinates `(y, x_1, ..., x_{m+2})`. Curve
//! cones are computed there as cones of linear forms and converted back with
//! [`CurveClass::from_pairing_form`].

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cone_engine::{dual_of_h_capped, Classification, HCone, DEFAULT_RAY_CAP};
use crate::error::{Error, Result};
use crate::exact_math::{binomial, QVector, Rational};
use crate::picard_lattice::{anticanonical, BlowupModel, CurveClass, DivisorClass};
use crate::subsets::k_subsets;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum WallKind {
    /// `(2-k) y - sum_{i in I} x_i`, `|I| = k-1`.
    A,
    /// `(m-k+1) y - sum_{i in I} x_i + sum_i x_i`, `|I| = k`.
    B,
}

impl fmt::Display for WallKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WallKind::A => "A",
            WallKind::B => "B",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WallLabel {
    pub k: usize,
    #[serde(rename = "I")]
    pub subset: Vec<usize>,
    pub kind: WallKind,
}

impl fmt::Display for WallLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.subset.iter().map(|i| i.to_string()).collect();
        write!(f, "k={} {} I={{{}}}", self.k, self.kind, idx.join(","))
    }
}

/// One hyperplane of the arrangement, oriented so that `-K` is on the
/// nonnegative side. Subsets are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Wall {
    pub k: usize,
    #[serde(rename = "I")]
    pub subset: Vec<usize>,
    pub kind: WallKind,
    pub normal: QVector,
}

impl Wall {
    fn build(m: usize, k: usize, kind: WallKind, subset: Vec<usize>) -> Wall {
        let s = m + 2;
        let mut v = vec![Rational::zero(); s + 1];
        match kind {
            WallKind::A => {
                v[0] = Rational::from(2 - k as i64);
                for &i in &subset {
                    v[i] = Rational::from(-1);
                }
            }
            WallKind::B => {
                v[0] = Rational::from(m as i64 - k as i64 + 1);
                for e in v.iter_mut().skip(1) {
                    *e = Rational::one();
                }
                for &i in &subset {
                    v[i] = Rational::zero();
                }
            }
        }
        let mut normal = QVector::new(v);
        let model = BlowupModel::mori(m).expect("m >= 2");
        let value = normal
            .dot(&anticanonical(model).coordinates())
            .expect("lengths agree");
        if value.is_negative() {
            normal = normal.neg();
        }
        Wall {
            k,
            subset,
            kind,
            normal,
        }
    }

    pub fn label(&self) -> WallLabel {
        WallLabel {
            k: self.k,
            subset: self.subset.clone(),
            kind: self.kind,
        }
    }

    /// `normal . D`.
    pub fn evaluate(&self, d: &DivisorClass) -> Result<Rational> {
        self.normal.dot(&d.coordinates())
    }
}

fn check_m(m: usize) -> Result<BlowupModel> {
    BlowupModel::mori(m)
}

fn coords(m: usize, y: i64, x: &[(usize, i64)], fill: i64) -> QVector {
    let mut v = vec![Rational::from(fill); m + 3];
    v[0] = Rational::from(y);
    for &(i, val) in x {
        v[i] = Rational::from(val);
    }
    QVector::new(v)
}

/// `y + x_i >= 0` for every `i`, and `m y + sum x_i >= 0`.
pub fn eff_cone(m: usize) -> Result<HCone> {
    check_m(m)?;
    let mut normals: Vec<QVector> = (1..=m + 2).map(|i| coords(m, 1, &[(i, 1)], 0)).collect();
    normals.push(coords(m, m as i64, &[], 1));
    HCone::new(m + 3, normals)
}

/// The classes `E_i` and `H - sum_{i in I} E_i` with `|I| = m`, reduced to
/// extreme rays.
pub fn eff_generators(m: usize) -> Result<crate::cone_engine::VCone> {
    check_m(m)?;
    let mut gens: Vec<QVector> = (1..=m + 2).map(|i| coords(m, 0, &[(i, 1)], 0)).collect();
    for subset in k_subsets(m + 2, m) {
        let x: Vec<(usize, i64)> = subset.iter().map(|&i| (i, -1)).collect();
        gens.push(coords(m, 1, &x, 0));
    }
    crate::cone_engine::VCone::from_generators(m + 3, gens, Vec::new())
}

/// The `k = 2` kind-B walls, `x_i <= 0`, and the effective cone normals.
pub fn mov_cone(m: usize) -> Result<HCone> {
    check_m(m)?;
    let mut normals: Vec<QVector> = walls(m)?
        .into_iter()
        .filter(|w| w.k == 2 && w.kind == WallKind::B)
        .map(|w| w.normal)
        .collect();
    normals.extend((1..=m + 2).map(|i| coords(m, 0, &[(i, -1)], 0)));
    normals.extend(eff_cone(m)?.normals().iter().cloned());
    HCone::new(m + 3, normals)
}

/// `x_i <= 0` and `y + x_i + x_j >= 0`.
pub fn nef_cone(m: usize) -> Result<HCone> {
    check_m(m)?;
    let mut normals: Vec<QVector> = (1..=m + 2).map(|i| coords(m, 0, &[(i, -1)], 0)).collect();
    for pair in k_subsets(m + 2, 2) {
        normals.push(coords(m, 1, &[(pair[0], 1), (pair[1], 1)], 0));
    }
    HCone::new(m + 3, normals)
}

/// Every wall with `2 <= k <= (m+3)/2`, ordered by `(k, kind, I)`.
pub fn walls(m: usize) -> Result<Vec<Wall>> {
    check_m(m)?;
    let mut out = Vec::new();
    for k in 2..=(m + 3) / 2 {
        for subset in k_subsets(m + 2, k - 1) {
            out.push(Wall::build(m, k, WallKind::A, subset));
        }
        for subset in k_subsets(m + 2, k) {
            out.push(Wall::build(m, k, WallKind::B, subset));
        }
    }
    Ok(out)
}

fn walls_at(m: usize, k: usize) -> Result<Vec<Wall>> {
    Ok(walls(m)?.into_iter().filter(|w| w.k == k).collect())
}

/// The chamber of `X^{2g}_{2g+2}` containing `-K`: the `k = g+1` walls.
pub fn fano_chamber(m: usize) -> Result<HCone> {
    if m % 2 != 0 {
        return Err(Error::Precondition(format!("fano_chamber needs even m, got {m}")));
    }
    check_m(m)?;
    let normals = walls_at(m, m / 2 + 1)?.into_iter().map(|w| w.normal).collect();
    HCone::new(m + 3, normals)
}

/// The walls of `X^{2g-1}_{2g+1}` whose intersection contains `-K`.
pub fn fano_locus(m: usize) -> Result<Vec<Wall>> {
    if m % 2 != 1 {
        return Err(Error::Precondition(format!("fano_locus needs odd m, got {m}")));
    }
    check_m(m)?;
    walls_at(m, m.div_ceil(2) + 1)
}

/// The Fano region as an H-cone. For odd `m` it is the linear subspace cut
/// out by [`fano_locus`], written with opposite normal pairs, so points on it
/// classify as BOUNDARY and never as INTERIOR.
pub fn fano_region(m: usize) -> Result<HCone> {
    if m % 2 == 0 {
        return fano_chamber(m);
    }
    let mut normals = Vec::new();
    for w in fano_locus(m)? {
        normals.push(w.normal.neg());
        normals.push(w.normal);
    }
    HCone::new(m + 3, normals)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChamberReport {
    pub in_eff: Classification,
    pub in_mov: Classification,
    pub in_nef: Classification,
    pub in_fano: Classification,
    pub active_walls: Vec<WallLabel>,
    pub violated_walls: Vec<WallLabel>,
}

pub fn locate_divisor(d: &DivisorClass) -> Result<ChamberReport> {
    let model = d.model();
    let m = model.m();
    if model.s() != m + 2 {
        return Err(Error::ModelMismatch(format!(
            "chamber queries need s = m+2 = {}, got s = {}",
            m + 2,
            model.s()
        )));
    }
    let v = d.coordinates();
    let mut active_walls = Vec::new();
    let mut violated_walls = Vec::new();
    for w in walls(m)? {
        let val = w.normal.dot(&v)?;
        if val.is_zero() {
            active_walls.push(w.label());
        } else if val.is_negative() {
            violated_walls.push(w.label());
        }
    }
    Ok(ChamberReport {
        in_eff: eff_cone(m)?.classify(&v)?,
        in_mov: mov_cone(m)?.classify(&v)?,
        in_nef: nef_cone(m)?.classify(&v)?,
        in_fano: fano_region(m)?.classify(&v)?,
        active_walls,
        violated_walls,
    })
}

/// Crossing a wall with `k >= 3` flips a `P^{k-2}` into a `P^{m+1-k}`.
pub fn flip_type(w: &Wall, m: usize) -> Result<(usize, usize)> {
    if w.normal.len() != m + 3 {
        return Err(Error::DimensionMismatch {
            expected: m + 3,
            found: w.normal.len(),
        });
    }
    if w.k < 3 {
        return Err(Error::Precondition(format!(
            "k = {} wall bounds the movable cone and is divisorial, not a flip",
            w.k
        )));
    }
    if 2 * w.k > m + 3 {
        return Err(Error::Precondition(format!("k = {} exceeds (m+3)/2 for m = {m}", w.k)));
    }
    Ok((w.k - 2, m + 1 - w.k))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlipStage {
    pub stage: usize,
    pub center_dim: usize,
    #[serde(serialize_with = "crate::serde_big::as_string")]
    pub center_count: BigInt,
    pub inserted_dim: usize,
}

/// The flips taking `X^{2g}_{2g+2}` to the Fano model: at stage `i` the
/// strict transforms of the `i`-planes are flipped.
pub fn flip_sequence(g: usize) -> Result<Vec<FlipStage>> {
    if g < 1 {
        return Err(Error::Precondition("g must be at least 1".into()));
    }
    Ok((1..g)
        .map(|i| FlipStage {
            stage: i,
            center_dim: i,
            center_count: binomial(2 * g + 2, i + 1),
            inserted_dim: 2 * g - 1 - i,
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabeledCurve {
    pub curve: CurveClass,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NeRays {
    #[serde(serialize_with = "crate::serde_big::as_string")]
    pub count: BigInt,
    /// Present only when the rays were enumerated.
    pub rays: Option<Vec<NeRay>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NeRay {
    pub curve: CurveClass,
    pub wall: WallLabel,
    pub family: char,
}

/// Largest `g` for which [`ne_extremal_rays`] enumerates rays.
pub const NE_ENUMERATION_MAX_G: usize = 2;

/// Extremal rays of the Mori cone of the even quotient `Sigma_{2g}`, seen as
/// the dual of its Fano chamber. Kind-A walls give family D, kind-B family C.
pub fn ne_extremal_rays(g: usize) -> Result<NeRays> {
    ne_extremal_rays_capped(g, DEFAULT_RAY_CAP)
}

pub fn ne_extremal_rays_capped(g: usize, cap: usize) -> Result<NeRays> {
    if g < 1 {
        return Err(Error::Precondition("g must be at least 1".into()));
    }
    let count = binomial(2 * g + 3, g + 1);
    if g > NE_ENUMERATION_MAX_G {
        return Ok(NeRays { count, rays: None });
    }
    let m = 2 * g;
    let model = BlowupModel::mori(m)?;
    let chamber_walls = walls_at(m, g + 1)?;
    let chamber = fano_chamber(m)?;
    let dual = dual_of_h_capped(&chamber, cap)?;
    let mut rays = Vec::with_capacity(dual.rays().len());
    for form in dual.rays() {
        let w = chamber_walls
            .iter()
            .find(|w| same_ray(&w.normal, form))
            .ok_or_else(|| Error::Inconsistent(format!("dual ray {form} matches no chamber wall")))?;
        rays.push(NeRay {
            curve: CurveClass::from_pairing_form(model, form)?,
            wall: w.label(),
            family: match w.kind {
                WallKind::A => 'D',
                WallKind::B => 'C',
            },
        });
    }
    if BigInt::from(rays.len()) != count {
        return Err(Error::Inconsistent(format!(
            "enumerated {} rays, expected {count}",
            rays.len()
        )));
    }
    Ok(NeRays {
        count,
        rays: Some(rays),
    })
}

fn same_ray(a: &QVector, b: &QVector) -> bool {
    a.integer_direction() == b.integer_direction()
}

/// Extremal rays of the cone of moving curves of `Sigma_{2g}`: the dual of
/// the effective cone of `X^{2g}_{2g+2}`.
pub fn moving_curve_rays(g: usize) -> Result<Vec<LabeledCurve>> {
    moving_curve_rays_capped(g, DEFAULT_RAY_CAP)
}

pub fn moving_curve_rays_capped(g: usize, cap: usize) -> Result<Vec<LabeledCurve>> {
    if g < 1 {
        return Err(Error::Precondition("g must be at least 1".into()));
    }
    let m = 2 * g;
    let model = BlowupModel::mori(m)?;
    let eff = eff_cone(m)?;
    let dual = dual_of_h_capped(&eff, cap)?;
    let mut out = Vec::with_capacity(dual.rays().len());
    for form in dual.rays() {
        let idx = eff
            .normals()
            .iter()
            .position(|n| same_ray(n, form))
            .ok_or_else(|| Error::Inconsistent(format!("dual ray {form} matches no facet")))?;
        let label = if idx < m + 2 {
            format!("line through p_{}", idx + 1)
        } else {
            format!("degree-{m} rational normal curve through all points")
        };
        out.push(LabeledCurve {
            curve: CurveClass::from_pairing_form(model, form)?,
            label,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone_engine::h_to_v;
    use crate::picard_lattice::pair;

    fn minus_k(m: usize) -> DivisorClass {
        anticanonical(BlowupModel::mori(m).unwrap())
    }

    #[test]
    fn wall_counts() {
        assert_eq!(walls(2).unwrap().len(), 10);
        assert_eq!(walls(4).unwrap().len(), 56);
        let w4 = walls(4).unwrap();
        assert_eq!(w4[0].label(), WallLabel { k: 2, subset: vec![1], kind: WallKind::A });
        assert_eq!(w4[6].label(), WallLabel { k: 2, subset: vec![1, 2], kind: WallKind::B });
    }

    #[test]
    fn anticanonical_on_walls() {
        let mk = minus_k(4);
        for w in walls(4).unwrap() {
            let v = w.evaluate(&mk).unwrap();
            assert!(v.is_positive());
            if w.k == 3 {
                assert_eq!(v, Rational::one());
            }
        }
        for m in [3, 5, 7] {
            for w in fano_locus(m).unwrap() {
                assert!(w.evaluate(&minus_k(m)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn fano_chamber_shapes() {
        let c4 = fano_chamber(4).unwrap();
        assert_eq!(c4.normals().len(), 35);
        assert!(c4.classify(&minus_k(4).coordinates()).unwrap().is_interior());
        let c2 = fano_chamber(2).unwrap();
        let n2 = nef_cone(2).unwrap();
        let mut a: Vec<_> = c2.normals().to_vec();
        let mut b: Vec<_> = n2.normals().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert!(fano_chamber(3).is_err());
        assert!(fano_locus(4).is_err());
    }

    #[test]
    fn effective_cone_normals_are_facets_of_the_generated_cone() {
        for m in [2, 3, 4] {
            let gens = eff_generators(m).unwrap();
            for n in eff_cone(m).unwrap().normals() {
                let vals: Vec<Rational> = gens.rays().iter().map(|r| n.dot(r).unwrap()).collect();
                assert!(vals.iter().all(|v| !v.is_negative()));
                let on: Vec<QVector> = gens
                    .rays()
                    .iter()
                    .zip(&vals)
                    .filter(|(_, v)| v.is_zero())
                    .map(|(r, _)| r.clone())
                    .collect();
                let rank = crate::exact_math::QMatrix::new(on, m + 3).unwrap().rank();
                assert_eq!(rank, m + 2);
            }
        }
    }

    #[test]
    fn generator_counts() {
        assert_eq!(eff_generators(2).unwrap().rays().len(), 10);
        assert_eq!(eff_generators(4).unwrap().rays().len(), 21);
        assert_eq!(eff_cone(2).unwrap().normals().len(), 5);
        assert_eq!(eff_cone(4).unwrap().normals().len(), 7);
    }

    #[test]
    fn cone_memberships() {
        let md2 = BlowupModel::mori(2).unwrap();
        let e1 = DivisorClass::exceptional(md2, 1).unwrap().coordinates();
        assert!(eff_cone(2).unwrap().classify(&e1).unwrap().is_boundary());
        assert!(mov_cone(2).unwrap().classify(&e1).unwrap().is_outside());
        assert!(mov_cone(2).unwrap().classify(&minus_k(2).coordinates()).unwrap().is_interior());
        assert!(nef_cone(2).unwrap().classify(&minus_k(2).coordinates()).unwrap().is_interior());
        let h4 = DivisorClass::hyperplane(BlowupModel::mori(4).unwrap()).coordinates();
        assert!(mov_cone(4).unwrap().classify(&h4).unwrap().is_boundary());
        assert!(nef_cone(4).unwrap().classify(&h4).unwrap().is_boundary());
        let d3 = DivisorClass::from_ints(BlowupModel::mori(3).unwrap(), 3, &[-1; 5]).unwrap();
        assert!(nef_cone(3).unwrap().classify(&d3.coordinates()).unwrap().is_interior());
    }

    #[test]
    fn nested_cones() {
        for m in 2..=5 {
            let nef = h_to_v(&nef_cone(m).unwrap()).unwrap();
            let mov = mov_cone(m).unwrap();
            let mov_v = h_to_v(&mov).unwrap();
            let eff = eff_cone(m).unwrap();
            for r in nef.rays() {
                assert!(mov.contains(r).unwrap());
            }
            for r in mov_v.rays() {
                assert!(eff.contains(r).unwrap());
            }
        }
    }

    #[test]
    fn locate_reports() {
        let r = locate_divisor(&minus_k(4)).unwrap();
        assert!(r.in_eff.is_interior());
        assert!(r.in_mov.is_interior());
        assert!(r.in_nef.is_outside());
        assert!(r.in_fano.is_interior());
        assert!(r.active_walls.is_empty());
        assert!(r.violated_walls.is_empty());

        let e1 = DivisorClass::exceptional(BlowupModel::mori(4).unwrap(), 1).unwrap();
        let r = locate_divisor(&e1).unwrap();
        assert!(r.in_eff.is_boundary());
        assert!(r.in_mov.is_outside());

        let r = locate_divisor(&minus_k(3)).unwrap();
        assert!(r.in_fano.is_boundary());
        assert_eq!(r.active_walls.len(), 20);

        let off = DivisorClass::hyperplane(BlowupModel::new(4, 5).unwrap());
        assert!(matches!(locate_divisor(&off), Err(Error::ModelMismatch(_))));
    }

    #[test]
    fn flips() {
        let w4 = walls(4).unwrap();
        let k3 = w4.iter().find(|w| w.k == 3).unwrap();
        assert_eq!(flip_type(k3, 4).unwrap(), (1, 2));
        let k2 = w4.iter().find(|w| w.k == 2).unwrap();
        assert!(flip_type(k2, 4).is_err());
        let w6 = walls(6).unwrap();
        let k4 = w6.iter().find(|w| w.k == 4).unwrap();
        assert_eq!(flip_type(k4, 6).unwrap(), (2, 3));

        assert!(flip_sequence(1).unwrap().is_empty());
        let s2 = flip_sequence(2).unwrap();
        assert_eq!(s2.len(), 1);
        assert_eq!((s2[0].center_count.clone(), s2[0].inserted_dim), (BigInt::from(15), 2));
        let s3 = flip_sequence(3).unwrap();
        assert_eq!((s3[0].center_count.clone(), s3[0].inserted_dim), (BigInt::from(28), 4));
        assert_eq!((s3[1].center_count.clone(), s3[1].inserted_dim), (BigInt::from(56), 3));
    }

    #[test]
    fn mori_cone_rays() {
        let r1 = ne_extremal_rays(1).unwrap();
        assert_eq!(r1.count, BigInt::from(10));
        assert_eq!(r1.rays.as_ref().unwrap().len(), 10);
        let r2 = ne_extremal_rays(2).unwrap();
        assert_eq!(r2.count, BigInt::from(35));
        let rays = r2.rays.unwrap();
        assert_eq!(rays.iter().filter(|r| r.family == 'D').count(), 15);
        assert_eq!(rays.iter().filter(|r| r.family == 'C').count(), 20);
        let r3 = ne_extremal_rays(3).unwrap();
        assert_eq!(r3.count, BigInt::from(126));
        assert!(r3.rays.is_none());
    }

    #[test]
    fn moving_curves() {
        for g in 1..=3 {
            let rays = moving_curve_rays(g).unwrap();
            assert_eq!(rays.len(), 2 * g + 3);
            assert_eq!(rays.iter().filter(|r| r.label.starts_with("line")).count(), 2 * g + 2);
        }
        let md = BlowupModel::mori(4).unwrap();
        let rays = moving_curve_rays(2).unwrap();
        let rnc = CurveClass::through_points(md, 4, &[1, 2, 3, 4, 5, 6]).unwrap();
        assert!(rays.iter().any(|r| r.curve == rnc));
        for g in 1..=2 {
            let gens = eff_generators(2 * g).unwrap();
            let md = BlowupModel::mori(2 * g).unwrap();
            for c in moving_curve_rays(g).unwrap() {
                for r in gens.rays() {
                    let d = DivisorClass::from_coordinates(md, r).unwrap();
                    assert!(!pair(&d, &c.curve).unwrap().is_negative());
                }
            }
        }
    }

    #[test]
    fn wall_json() {
        let w = &walls(2).unwrap()[5];
        let s = serde_json::to_string(&w.label()).unwrap();
        assert_eq!(s, r#"{"k":2,"I":[1,3],"kind":"B"}"#);
    }
}
