//! Reference families used throughout the tests, benchmarks, and docs.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::Result;
use crate::system::{GlsFamily, GlsSystem};

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn uniform_partition(base: u32) -> Vec<BigRational> {
    (0..=base as i64).map(|k| ratio(k, base as i64)).collect()
}

/// Signed base-`base` expansions: one orientation-preserving and one
/// orientation-reversing copy of the uniform base-`base` system, driven with
/// weights `(p0, 1 - p0)`. Every point gets expansions `sum +- d_m / base^m`
/// where the sign pattern is the chosen system sequence.
///
/// Weight/width domination holds exactly when `p0` lies strictly between
/// `1/base` and `1 - 1/base`.
pub fn signed_base(base: u32, p0: f64) -> Result<GlsFamily> {
    let partition = uniform_partition(base);
    let preserving = GlsSystem::from_rationals(&partition, &vec![0; base as usize])?;
    let reversing = GlsSystem::from_rationals(&partition, &vec![1; base as usize])?;
    GlsFamily::new(vec![preserving, reversing], vec![p0, 1.0 - p0])
}

/// Mixed integer-base expansions: one uniform orientation-preserving system
/// per entry of `bases`, driven by `weights`. Every point gets uncountably
/// many expansions that interleave digits of the different bases.
pub fn mixed_bases(bases: &[u32], weights: &[f64]) -> Result<GlsFamily> {
    let systems = bases
        .iter()
        .map(|&b| GlsSystem::from_rationals(&uniform_partition(b), &vec![0; b as usize]))
        .collect::<Result<Vec<_>>>()?;
    GlsFamily::new(systems, weights.to_vec())
}
