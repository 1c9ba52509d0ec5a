//! Exact cylinder and interval masses for the digit Bernoulli measure, its
//! driving-coordinate pushforward, and the conditional fibre measures, plus
//! fibre fundamental intervals.
//!
//! Measures are exposed only through mass functions on cylinders and
//! fundamental intervals; the products are exact, so every identity
//! (additivity, consistency between the three measures) is testable without
//! integration machinery. The mass ops return raw products and will underflow
//! for words of depth in the thousands; asymptotic statistics should work with
//! log-masses instead (see [`crate::estimator::local_dim_fibre`]).

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::codec::Word;
use crate::error::{GlsError, Result};
use crate::scheduler::FrequencyVector;
use crate::system::GlsFamily;

/// A finite prefix of a driving coding: which system acts at each step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct FibreCoding {
    systems: Vec<usize>,
}

impl FibreCoding {
    pub fn new(family: &GlsFamily, systems: Vec<usize>) -> Result<Self> {
        let total = family.system_count();
        for &j in &systems {
            if j >= total {
                return Err(GlsError::UnknownSystem { j, total });
            }
        }
        Ok(FibreCoding { systems })
    }

    pub(crate) fn from_validated(systems: Vec<usize>) -> Self {
        FibreCoding { systems }
    }

    pub fn systems(&self) -> &[usize] {
        &self.systems
    }

    pub fn len(&self) -> usize {
        self.systems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.systems.is_empty()
    }
}

/// Image of `[0,1]` under the first `depth` fibre branches along a coding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FundamentalInterval {
    pub a: f64,
    pub b: f64,
    pub depth: usize,
}

impl FundamentalInterval {
    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }
}

/// Bernoulli cylinder mass: the product of the digit frequencies along a word.
pub fn mu_cylinder(family: &GlsFamily, alpha: &FrequencyVector, word: &Word) -> Result<f64> {
    let mut mass = 1.0;
    for &digit in word {
        mass *= alpha.value(family.digit_index(digit)?);
    }
    Ok(mass)
}

/// Mass of a driving cylinder interval: the product of the marginals.
pub fn nu_interval(alpha: &FrequencyVector, jword: &[usize]) -> Result<f64> {
    let total = alpha.marginals().len();
    let mut mass = 1.0;
    for &j in jword {
        if j >= total {
            return Err(GlsError::UnknownSystem { j, total });
        }
        mass *= alpha.marginal(j);
    }
    Ok(mass)
}

/// Conditional fibre mass of the fundamental interval of a word:
/// the product of `alpha_{(j,k)} / alpha_j` along the word.
pub fn m_fibre_mass(family: &GlsFamily, alpha: &FrequencyVector, word: &Word) -> Result<f64> {
    let mut mass = 1.0;
    for &digit in word {
        let index = family.digit_index(digit)?;
        let marginal = alpha.marginal(digit.j);
        if marginal <= 0.0 {
            return Err(GlsError::ZeroMarginal { j: digit.j });
        }
        mass *= alpha.value(index) / marginal;
    }
    Ok(mass)
}

/// Compose the fibre branches of a word over `[0,1]`.
pub fn fundamental_interval(family: &GlsFamily, word: &Word) -> Result<FundamentalInterval> {
    if word.is_empty() {
        return Err(GlsError::EmptyWord);
    }
    let mut offset = 0.0;
    let mut scale = 1.0f64;
    for &digit in word {
        family.digit_index(digit)?;
        let system = &family.systems()[digit.j];
        let l = system.width(digit.k);
        let t = system.left(digit.k) + f64::from(system.flip(digit.k)) * l;
        offset += scale * t;
        scale *= if system.flip(digit.k) == 0 { l } else { -l };
    }
    let (a, b) = if scale >= 0.0 {
        (offset, offset + scale)
    } else {
        (offset + scale, offset)
    };
    Ok(FundamentalInterval {
        a,
        b,
        depth: word.len(),
    })
}

/// Sample a driving coding of length `n` with i.i.d. entries distributed by
/// the marginals of `alpha`. Deterministic in the seed.
pub fn sample_w(alpha: &FrequencyVector, n: usize, seed: u64) -> FibreCoding {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let systems = (0..n)
        .map(|_| sample_categorical(&mut rng, alpha.marginals()))
        .collect();
    FibreCoding::from_validated(systems)
}

/// Draw an index with the given (sub-)probability weights; zero-weight
/// entries are never returned.
pub(crate) fn sample_categorical(rng: &mut impl Rng, weights: &[f64]) -> usize {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    let mut last_positive = 0;
    for (i, &w) in weights.iter().enumerate() {
        if w > 0.0 {
            last_positive = i;
            acc += w;
            if u < acc {
                return i;
            }
        }
    }
    last_positive
}
