//! Deterministic construction of digit words with prescribed asymptotic
//! frequencies, and fibre-respecting weaves.
//!
//! The stage construction emits, at stage `m`, every symbol `e` whose rounded
//! count target `round(m * alpha_e)` just increased, in alphabet order. Counts
//! therefore track `m * alpha_e` to within a constant, which gives the
//! deviation bound `m + 1` for an alphabet of `m` symbols and convergence of
//! the empirical frequencies to `alpha`.
//!
//! Rounding is half away from zero. The rounding rule at exact halves is not
//! forced by anything; any fixed choice keeps the deviation bound, but the
//! documented example outputs depend on it, so it is pinned here.

use serde::Serialize;

use crate::codec::Word;
use crate::error::{GlsError, Result};
use crate::system::{Digit, GlsFamily, SUM_TOLERANCE};

/// A frequency vector over a family's digit alphabet: nonnegative entries in
/// digit order summing to 1. Zero entries are allowed; the digit then never
/// appears in scheduled words.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyVector {
    values: Vec<f64>,
    marginals: Vec<f64>,
}

impl FrequencyVector {
    /// Validate a dense vector of frequencies in digit order.
    pub fn new(family: &GlsFamily, values: Vec<f64>) -> Result<Self> {
        if values.len() != family.digit_count() {
            return Err(GlsError::FrequencyCount {
                expected: family.digit_count(),
                got: values.len(),
            });
        }
        for (&digit, &value) in family.digits().iter().zip(&values) {
            if value.is_nan() || value < 0.0 {
                return Err(GlsError::FrequencyNegative { digit, value });
            }
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(GlsError::FrequencySum { sum });
        }
        let mut marginals = vec![0.0; family.system_count()];
        for (&digit, &value) in family.digits().iter().zip(&values) {
            marginals[digit.j] += value;
        }
        Ok(FrequencyVector { values, marginals })
    }

    /// The uniform vector `1/m` on every digit.
    pub fn uniform(family: &GlsFamily) -> Self {
        let m = family.digit_count();
        Self::new(family, vec![1.0 / m as f64; m]).expect("uniform vector is valid")
    }

    /// The vector `alpha_e = p_j * l_e` under which sampled points distribute
    /// like Lebesgue measure on the square.
    pub fn lebesgue(family: &GlsFamily) -> Self {
        let values = family
            .digits()
            .iter()
            .map(|&d| family.weights()[d.j] * family.systems()[d.j].width(d.k))
            .collect();
        Self::new(family, values).expect("product vector is valid")
    }

    /// Frequencies in digit order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Frequency of the digit with flat index `index`.
    pub fn value(&self, index: usize) -> f64 {
        self.values[index]
    }

    /// Driving marginals `alpha_j = sum_k alpha_{(j,k)}`.
    pub fn marginals(&self) -> &[f64] {
        &self.marginals
    }

    pub fn marginal(&self, j: usize) -> f64 {
        self.marginals[j]
    }

    /// Conditional branch frequencies `alpha_{(j,k)} / alpha_j` of one system.
    pub fn conditional(&self, family: &GlsFamily, j: usize) -> Result<Vec<f64>> {
        if j >= family.system_count() {
            return Err(GlsError::UnknownSystem {
                j,
                total: family.system_count(),
            });
        }
        if self.marginals[j] <= 0.0 {
            return Err(GlsError::ZeroMarginal { j });
        }
        let branches = family.systems()[j].branches();
        let offset = family.digit_index(Digit::new(j, 0))?;
        Ok((0..branches)
            .map(|k| self.values[offset + k] / self.marginals[j])
            .collect())
    }

    /// Error unless every driving marginal is strictly positive.
    pub fn require_positive_marginals(&self) -> Result<()> {
        match self.marginals.iter().position(|&m| m <= 0.0) {
            Some(j) => Err(GlsError::ZeroMarginal { j }),
            None => Ok(()),
        }
    }
}

fn round_half_away(v: f64) -> i64 {
    v.round() as i64
}

/// Stage construction over an abstract weighted alphabet `0..weights.len()`.
///
/// Returns the first `n` symbols of the sequence that emits, at stage `m`,
/// every symbol whose rounded target `round(m * w_e)` just increased, in
/// index order.
pub fn schedule_weights(weights: &[f64], n: usize) -> Result<Vec<usize>> {
    if weights.is_empty() {
        return Err(GlsError::FrequencyCount {
            expected: 1,
            got: 0,
        });
    }
    for &w in weights {
        if w.is_nan() || w < 0.0 {
            return Err(GlsError::InvalidParameter {
                name: "weight",
                value: w,
            });
        }
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > SUM_TOLERANCE {
        return Err(GlsError::FrequencySum { sum });
    }

    let symbols = weights.len();
    let mut targets = vec![0i64; symbols];
    let mut out = Vec::with_capacity(n);
    let mut stage: u64 = 0;
    // the emitted count after stage S is at least S - symbols/2, so the loop
    // finishes well inside this cap
    let cap = (n + symbols) as u64 + 16;
    while out.len() < n {
        stage += 1;
        assert!(stage <= cap, "stage construction overran its bound");
        for e in 0..symbols {
            let next = round_half_away(stage as f64 * weights[e]);
            if next > targets[e] {
                out.push(e);
                targets[e] = next;
            }
        }
    }
    out.truncate(n);
    Ok(out)
}

/// Word of length `n` whose digit frequencies converge to `alpha`.
pub fn freq_sequence(family: &GlsFamily, alpha: &FrequencyVector, n: usize) -> Word {
    let indices = schedule_weights(alpha.values(), n).expect("frequency vector is valid");
    let digits = indices.into_iter().map(|e| family.digits()[e]).collect();
    Word::from_validated(digits)
}

/// Weave per-system schedules along a prescribed system sequence.
///
/// The output word has first coordinates exactly `jseq[..n]`; at the `c`-th
/// visit to system `j` it emits the `c`-th entry of the branch schedule of
/// `j`'s conditional frequencies. Every system that occurs needs a positive
/// marginal, otherwise its branch distribution is undefined.
pub fn weave(
    family: &GlsFamily,
    jseq: &[usize],
    alpha: &FrequencyVector,
    n: usize,
) -> Result<Word> {
    if jseq.len() < n {
        return Err(GlsError::InvalidParameter {
            name: "depth exceeds jseq length",
            value: n as f64,
        });
    }
    let mut needed = vec![0usize; family.system_count()];
    for &j in &jseq[..n] {
        if j >= family.system_count() {
            return Err(GlsError::UnknownSystem {
                j,
                total: family.system_count(),
            });
        }
        needed[j] += 1;
    }

    let mut strands: Vec<Option<std::vec::IntoIter<usize>>> =
        Vec::with_capacity(family.system_count());
    for (j, &count) in needed.iter().enumerate() {
        if count == 0 {
            strands.push(None);
            continue;
        }
        let conditional = alpha.conditional(family, j)?;
        strands.push(Some(schedule_weights(&conditional, count)?.into_iter()));
    }

    let mut digits = Vec::with_capacity(n);
    for &j in &jseq[..n] {
        let k = strands[j]
            .as_mut()
            .expect("strand exists for every occurring system")
            .next()
            .expect("strand length matches occurrence count");
        digits.push(Digit::new(j, k));
    }
    Ok(Word::from_validated(digits))
}

/// Maximum over symbols and prefix lengths of `|count_e(m) - m * w_e|`.
///
/// Counts are piecewise constant in the prefix length, so the maximum is
/// attained at an emission boundary; a single pass checks them all.
pub fn deviation_indices(seq: &[usize], weights: &[f64]) -> f64 {
    let mut counts = vec![0i64; weights.len()];
    let mut worst = 0.0f64;
    for (pos, &e) in seq.iter().enumerate() {
        let w = weights[e];
        let before = (counts[e] as f64 - pos as f64 * w).abs();
        counts[e] += 1;
        let after = (counts[e] as f64 - (pos + 1) as f64 * w).abs();
        worst = worst.max(before).max(after);
    }
    let n = seq.len() as f64;
    for (e, &c) in counts.iter().enumerate() {
        worst = worst.max((c as f64 - n * weights[e]).abs());
    }
    worst
}

/// [`deviation_indices`] over a family word and frequency vector.
pub fn deviation(family: &GlsFamily, word: &Word, alpha: &FrequencyVector) -> Result<f64> {
    let seq = word
        .digits()
        .iter()
        .map(|&d| family.digit_index(d))
        .collect::<Result<Vec<_>>>()?;
    Ok(deviation_indices(&seq, alpha.values()))
}

/// Diagnostic record of a schedule's quality.
#[derive(Debug, Clone, Serialize)]
pub struct ScheduleReport {
    pub length: usize,
    pub deviation: f64,
    pub bound: f64,
}
