//! Numeric invariants of the quotient `Sigma_m` of `m+3` points on the line.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact_math::{binomial, factorial};
use crate::linear_systems::{hilbert, mu_system, sigma_system};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactSheet {
    pub m: usize,
    pub parity: Parity,
    pub g: usize,
    /// `K = canonical_multiple * H`.
    #[serde(serialize_with = "crate::serde_big::as_string")]
    pub canonical_multiple: BigInt,
    #[serde(serialize_with = "crate::serde_big::as_string")]
    pub pic_rank: BigInt,
    #[serde(serialize_with = "crate::serde_big::opt_as_string")]
    pub class_group_rank: Option<BigInt>,
    #[serde(serialize_with = "crate::serde_big::as_string")]
    pub singular_count: BigInt,
    #[serde(serialize_with = "crate::serde_big::opt_as_string")]
    pub sing_multiplicity: Option<BigInt>,
    #[serde(serialize_with = "map_as_strings")]
    pub gplane_counts: BTreeMap<String, BigInt>,
    #[serde(serialize_with = "crate::serde_big::opt_as_string")]
    pub distinguished_points: Option<BigInt>,
    #[serde(serialize_with = "crate::serde_big::as_string")]
    pub aut_order: BigInt,
    #[serde(serialize_with = "crate::serde_big::as_string")]
    pub degree: BigInt,
    #[serde(rename = "N", serialize_with = "crate::serde_big::as_string")]
    pub embedding_dim: BigInt,
}

fn map_as_strings<S: Serializer>(m: &BTreeMap<String, BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let strings: BTreeMap<&str, String> = m.iter().map(|(k, v)| (k.as_str(), v.to_string())).collect();
    strings.serialize(s)
}

pub fn facts(m: usize) -> Result<FactSheet> {
    if m < 2 {
        return Err(Error::Precondition(format!("m = {m} must be at least 2")));
    }
    if m % 2 == 1 {
        let g = m.div_ceil(2);
        let h = hilbert(&sigma_system(g as u64)?)?;
        let half = factorial(g - 1);
        Ok(FactSheet {
            m,
            parity: Parity::Odd,
            g,
            canonical_multiple: BigInt::from(-2),
            pic_rank: BigInt::from(1),
            class_group_rank: Some(BigInt::from(2 * g + 2)),
            singular_count: binomial(2 * g + 1, g),
            sing_multiplicity: Some(factorial(2 * g - 2) / (&half * &half)),
            gplane_counts: BTreeMap::from([
                ("span".to_string(), binomial(2 * g + 1, g + 1)),
                ("exceptional".to_string(), BigInt::from(2 * g + 1)),
            ]),
            distinguished_points: None,
            aut_order: factorial(2 * g + 2),
            degree: h.degree,
            embedding_dim: h.embedding_dim,
        })
    } else {
        let g = m / 2;
        let h = hilbert(&mu_system(g as u64)?)?;
        let half = factorial(g + 1);
        Ok(FactSheet {
            m,
            parity: Parity::Even,
            g,
            canonical_multiple: BigInt::from(-1),
            pic_rank: BigInt::from(2 * g + 3),
            class_group_rank: None,
            singular_count: BigInt::from(0),
            sing_multiplicity: None,
            gplane_counts: BTreeMap::from([
                ("C".to_string(), binomial(2 * g + 2, g + 1)),
                ("D".to_string(), binomial(2 * g + 2, g)),
            ]),
            distinguished_points: Some(factorial(2 * g + 3) / (BigInt::from(2) * &half * &half)),
            aut_order: factorial(2 * g + 3),
            degree: h.degree,
            embedding_dim: h.embedding_dim,
        })
    }
}
