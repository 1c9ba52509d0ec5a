//! JSON configuration schema for families and frequency vectors.
//!
//! Numeric values may be plain JSON numbers or exact fraction strings like
//! `"1/3"`. Fractions are converted once: partitions through exact rational
//! arithmetic (so branch widths come out as the correctly rounded float of the
//! exact difference), weights and frequencies to the nearest float.
//!
//! ```json
//! {
//!   "systems": [
//!     { "partition": [0, "1/3", "2/3", 1], "flips": [0, 0, 0] },
//!     { "partition": [0, "1/3", "2/3", 1], "flips": [1, 1, 1] }
//!   ],
//!   "weights": ["1/2", "1/2"]
//! }
//! ```
//!
//! Frequency vectors serialize as maps keyed by `"j,k"`; digits missing from
//! the map get frequency zero.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{GlsError, Result};
use crate::scheduler::FrequencyVector;
use crate::system::{Digit, GlsFamily, GlsSystem};

/// A JSON number or an exact fraction string `"a/b"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumberOrRatio {
    Number(f64),
    Ratio(String),
}

impl NumberOrRatio {
    pub fn to_rational(&self) -> Result<BigRational> {
        match self {
            NumberOrRatio::Number(v) => BigRational::from_float(*v)
                .ok_or_else(|| GlsError::ConfigValue(format!("non-finite number {v}"))),
            NumberOrRatio::Ratio(text) => parse_fraction(text),
        }
    }

    pub fn to_f64(&self) -> Result<f64> {
        match self {
            NumberOrRatio::Number(v) => Ok(*v),
            NumberOrRatio::Ratio(text) => parse_fraction(text)?
                .to_f64()
                .ok_or_else(|| GlsError::ConfigValue(format!("fraction {text} overflows"))),
        }
    }
}

fn parse_fraction(text: &str) -> Result<BigRational> {
    let bad = || GlsError::ConfigValue(format!("expected a fraction like \"2/3\", got {text:?}"));
    let mut parts = text.split('/');
    let numerator: BigInt = parts
        .next()
        .ok_or_else(bad)?
        .trim()
        .parse()
        .map_err(|_| bad())?;
    let denominator: BigInt = match parts.next() {
        Some(d) => d.trim().parse().map_err(|_| bad())?,
        None => BigInt::from(1),
    };
    if parts.next().is_some() || denominator == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(numerator, denominator))
}

/// One system: partition points and flips.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemConfig {
    pub partition: Vec<NumberOrRatio>,
    pub flips: Vec<u8>,
}

/// A whole family: systems plus driving weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyConfig {
    pub systems: Vec<SystemConfig>,
    pub weights: Vec<NumberOrRatio>,
}

impl FamilyConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| GlsError::ConfigValue(e.to_string()))
    }

    pub fn build(&self) -> Result<GlsFamily> {
        let systems = self
            .systems
            .iter()
            .map(|sc| {
                let partition = sc
                    .partition
                    .iter()
                    .map(|v| v.to_rational())
                    .collect::<Result<Vec<_>>>()?;
                GlsSystem::from_rationals(&partition, &sc.flips)
            })
            .collect::<Result<Vec<_>>>()?;
        let weights = self
            .weights
            .iter()
            .map(|v| v.to_f64())
            .collect::<Result<Vec<_>>>()?;
        GlsFamily::new(systems, weights)
    }
}

fn parse_digit_key(key: &str) -> Result<Digit> {
    let bad = || GlsError::ConfigValue(format!("expected a digit key like \"1,0\", got {key:?}"));
    let (j, k) = key.split_once(',').ok_or_else(bad)?;
    Ok(Digit::new(
        j.trim().parse().map_err(|_| bad())?,
        k.trim().parse().map_err(|_| bad())?,
    ))
}

/// Build a frequency vector from a `"j,k" -> value` map. Digits missing from
/// the map get frequency zero; keys outside the family are rejected.
pub fn alpha_from_map(
    family: &GlsFamily,
    map: &BTreeMap<String, NumberOrRatio>,
) -> Result<FrequencyVector> {
    let mut values = vec![0.0; family.digit_count()];
    for (key, value) in map {
        let digit = parse_digit_key(key)?;
        values[family.digit_index(digit)?] = value.to_f64()?;
    }
    FrequencyVector::new(family, values)
}

/// Serialize a frequency vector as a `"j,k" -> value` map.
pub fn alpha_to_map(family: &GlsFamily, alpha: &FrequencyVector) -> BTreeMap<String, f64> {
    family
        .digits()
        .iter()
        .zip(alpha.values())
        .map(|(&d, &v)| (format!("{},{}", d.j, d.k), v))
        .collect()
}

/// Parse inline frequencies: `j,k:value` tokens separated by `;` or
/// whitespace, values as numbers or fractions.
pub fn alpha_from_inline(family: &GlsFamily, text: &str) -> Result<FrequencyVector> {
    let mut map = BTreeMap::new();
    for token in text.split(|c: char| c == ';' || c.is_whitespace()) {
        if token.is_empty() {
            continue;
        }
        let (key, value) = token.split_once(':').ok_or_else(|| {
            GlsError::ConfigValue(format!("expected \"j,k:value\", got {token:?}"))
        })?;
        map.insert(key.to_string(), NumberOrRatio::Ratio(value.to_string()));
    }
    alpha_from_map(family, &map)
}
