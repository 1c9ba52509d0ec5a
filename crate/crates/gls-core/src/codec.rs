//! Encoding points into redundant digit words and decoding words back.
//!
//! A word is a finite digit sequence over a family's alphabet. Decoding
//! composes the digit maps and reports the midpoint of the resulting cell of
//! `[0,1]^2` together with exact width bounds, so every decode carries its own
//! error bar. Encoding is greedy: given a prescribed system sequence, each step
//! picks the branch whose half-open cell contains the running point (the top
//! cell is closed) and continues with the inverse branch. Any word with the
//! same limit is a valid expansion; the greedy policy is one deterministic
//! choice among uncountably many.
//!
//! The series form `sum_m (-1)^{s_1+...+s_{m-1}} t_m / (K_1 ... K_{m-1})` is
//! kept as a cross-check of the iterated-map decoder, not as the primary path:
//! both land in the same cell, so they agree to within the cell width.

use serde::Serialize;

use crate::error::{GlsError, Result};
use crate::scheduler::FrequencyVector;
use crate::system::{Digit, DigitTriple, GlsFamily};

/// A finite digit word over a family's alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Word {
    digits: Vec<Digit>,
}

impl Word {
    /// Build a word, checking every digit against the family.
    pub fn new(family: &GlsFamily, digits: Vec<Digit>) -> Result<Self> {
        for &digit in &digits {
            family.digit_index(digit)?;
        }
        Ok(Word { digits })
    }

    /// Internal constructor for digits already known to belong to the family.
    pub(crate) fn from_validated(digits: Vec<Digit>) -> Self {
        Word { digits }
    }

    pub fn digits(&self) -> &[Digit] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// The system sequence `(j_m)` of the word.
    pub fn driving_sequence(&self) -> Vec<usize> {
        self.digits.iter().map(|d| d.j).collect()
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Digit;
    type IntoIter = std::slice::Iter<'a, Digit>;
    fn into_iter(self) -> Self::IntoIter {
        self.digits.iter()
    }
}

/// Result of decoding a word: cell midpoints plus exact width bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecodedPoint {
    pub w: f64,
    pub x: f64,
    /// Product of the driving weights along the word.
    pub w_width: f64,
    /// Product of the branch widths along the word.
    pub x_width: f64,
}

/// Greedy driving coding of `w`: the first `n` system indices.
///
/// Cells are half-open with the last one closed, so a boundary point takes the
/// cell it starts, and its coding continues with zeros.
pub fn w_to_jseq(family: &GlsFamily, w: f64, n: usize) -> Result<Vec<usize>> {
    if !(0.0..=1.0).contains(&w) {
        return Err(GlsError::OutOfUnitInterval {
            name: "w",
            value: w,
        });
    }
    let mut seq = Vec::with_capacity(n);
    let mut current = w;
    for _ in 0..n {
        let j = family.driving_cell(current)?;
        seq.push(j);
        current = ((current - family.weight_prefix(j)) / family.weights()[j]).clamp(0.0, 1.0);
    }
    Ok(seq)
}

/// Greedy encoding of `x` along a prescribed system sequence.
///
/// At step `m` the branch of system `jseq[m]` whose cell contains the running
/// point is chosen, and the point is pulled back through the inverse branch.
pub fn encode(family: &GlsFamily, jseq: &[usize], x: f64, n: usize) -> Result<Word> {
    if jseq.len() < n {
        return Err(GlsError::InvalidParameter {
            name: "depth exceeds jseq length",
            value: n as f64,
        });
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(GlsError::OutOfUnitInterval {
            name: "x",
            value: x,
        });
    }
    let mut digits = Vec::with_capacity(n);
    let mut current = x;
    for &j in &jseq[..n] {
        let system = family.system(j)?;
        let k = system.branch_of(current)?;
        digits.push(Digit::new(j, k));
        current = system.invert(k, current)?;
    }
    Ok(Word { digits })
}

/// Decode a word to the midpoint of its cell of `[0,1]^2`.
pub fn decode(family: &GlsFamily, word: &Word) -> Result<DecodedPoint> {
    if word.is_empty() {
        return Err(GlsError::EmptyWord);
    }
    // running composition c(y) = offset + scale * y, per coordinate
    let mut w_offset = 0.0;
    let mut w_scale = 1.0;
    let mut x_offset = 0.0;
    let mut x_scale = 1.0f64;
    for &digit in word {
        family.digit_index(digit)?;
        let system = &family.systems()[digit.j];
        w_offset += w_scale * family.weight_prefix(digit.j);
        w_scale *= family.weights()[digit.j];
        let l = system.width(digit.k);
        let t = system.left(digit.k) + f64::from(system.flip(digit.k)) * l;
        x_offset += x_scale * t;
        x_scale *= if system.flip(digit.k) == 0 { l } else { -l };
    }
    Ok(DecodedPoint {
        w: w_offset + w_scale * 0.5,
        x: x_offset + x_scale * 0.5,
        w_width: w_scale,
        x_width: x_scale.abs(),
    })
}

/// Look up the `(s, K, t)` digit data of a word.
pub fn to_triples(family: &GlsFamily, word: &Word) -> Result<Vec<DigitTriple>> {
    word.digits.iter().map(|&d| family.triple_of(d)).collect()
}

/// Partial sum of the signed series expansion
/// `sum_m (-1)^{s_1+...+s_{m-1}} t_m / (K_1 ... K_{m-1})`.
pub fn series_partial_sum(triples: &[DigitTriple]) -> Result<f64> {
    if triples.is_empty() {
        return Err(GlsError::EmptyWord);
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    let mut scale = 1.0;
    for triple in triples {
        sum += sign * triple.offset * scale;
        scale /= triple.base;
        if triple.flip == 1 {
            sign = -sign;
        }
    }
    Ok(sum)
}

/// Empirical digit frequencies of a word: counts over length.
pub fn frequencies(family: &GlsFamily, word: &Word) -> Result<FrequencyVector> {
    if word.is_empty() {
        return Err(GlsError::EmptyWord);
    }
    let mut counts = vec![0usize; family.digit_count()];
    for &digit in word {
        counts[family.digit_index(digit)?] += 1;
    }
    let n = word.len() as f64;
    FrequencyVector::new(family, counts.into_iter().map(|c| c as f64 / n).collect())
}
