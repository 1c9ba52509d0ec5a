//! Finite GLS number systems and families of them with redundancy.
//!
//! A single system is an interval iterated function system on `[0,1]`: a
//! strictly increasing partition `0 = r_0 < r_1 < ... < r_B = 1` together with
//! one orientation flip per branch. Branch `k` maps `[0,1]` affinely onto
//! `[r_k, r_{k+1}]`, orientation preserving when the flip is 0 and reversing
//! when it is 1:
//!
//! ```text
//! h_k(x) = r_k + eps_k * l_k + (-1)^{eps_k} * x * l_k,      l_k = r_{k+1} - r_k.
//! ```
//!
//! Note the offset places the reversed branch at the *upper* endpoint,
//! `r_k + l_k`; the alternative convention `r_k + eps_k` does not map `[0,1]`
//! onto `[r_k, r_{k+1}]` and is deliberately not used anywhere in this crate.
//! The digit data exposed by [`GlsFamily::digit_set`] uses the same convention,
//! `t = r + eps * l`.
//!
//! A family couples `J >= 2` such systems with a positive probability vector
//! `p`. The first coordinate of the product dynamics chooses which system acts
//! via the driving maps `f_j(w) = p_j * w + p_0 + ... + p_{j-1}`, and each pair
//! `e = (j, k)` becomes a digit of a redundant expansion: every `x` in `[0,1]`
//! admits uncountably many digit sequences over the combined alphabet.
//!
//! Partition points and weights may be supplied either as floats or as exact
//! rationals (see [`crate::config`]). Validation and branch widths are computed
//! in exact rational arithmetic and converted to `f64` once, so that e.g. all
//! three branch widths of the partition `0, 1/3, 2/3, 1` are the *same* float.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{GlsError, Result};

/// Tolerance for weight and frequency sums.
pub const SUM_TOLERANCE: f64 = 1e-12;

/// One digit `(j, k)` of a family: branch `k` of system `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "(usize, usize)", from = "(usize, usize)")]
pub struct Digit {
    pub j: usize,
    pub k: usize,
}

impl Digit {
    pub fn new(j: usize, k: usize) -> Self {
        Digit { j, k }
    }
}

impl From<(usize, usize)> for Digit {
    fn from((j, k): (usize, usize)) -> Self {
        Digit { j, k }
    }
}

impl From<Digit> for (usize, usize) {
    fn from(d: Digit) -> Self {
        (d.j, d.k)
    }
}

impl std::fmt::Display for Digit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.j, self.k)
    }
}

/// A single finite GLS IFS on `[0,1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GlsSystem {
    partition: Vec<f64>,
    widths: Vec<f64>,
    flips: Vec<u8>,
}

impl GlsSystem {
    /// Build a system from float partition points and flips.
    ///
    /// The floats are treated as exact rationals (every finite float is one),
    /// so validation is exact and widths are exact differences rounded once.
    pub fn new(partition: &[f64], flips: &[u8]) -> Result<Self> {
        let rational: Option<Vec<BigRational>> = partition
            .iter()
            .map(|&r| BigRational::from_float(r))
            .collect();
        let rational = rational.ok_or(GlsError::PartitionEndpoints {
            first: f64::NAN,
            last: f64::NAN,
        })?;
        Self::from_rationals(&rational, flips)
    }

    /// Build a system from exact rational partition points.
    pub fn from_rationals(partition: &[BigRational], flips: &[u8]) -> Result<Self> {
        if partition.len() < 3 {
            return Err(GlsError::PartitionTooShort {
                got: partition.len(),
            });
        }
        let branches = partition.len() - 1;
        if flips.len() != branches {
            return Err(GlsError::FlipCount {
                expected: branches,
                got: flips.len(),
            });
        }
        if let Some((index, &value)) = flips.iter().enumerate().find(|(_, &f)| f > 1) {
            return Err(GlsError::FlipValue { index, value });
        }

        let first = &partition[0];
        let last = &partition[partition.len() - 1];
        let one = BigRational::from_integer(BigInt::from(1));
        let tol = BigRational::from_float(SUM_TOLERANCE).unwrap();
        if first.abs() > tol || (last - &one).abs() > tol {
            return Err(GlsError::PartitionEndpoints {
                first: first.to_f64().unwrap_or(f64::NAN),
                last: last.to_f64().unwrap_or(f64::NAN),
            });
        }
        for (index, pair) in partition.windows(2).enumerate() {
            if pair[1] <= pair[0] {
                return Err(GlsError::PartitionNotIncreasing { index: index + 1 });
            }
        }

        let widths = partition
            .windows(2)
            .map(|pair| (&pair[1] - &pair[0]).to_f64().unwrap())
            .collect();
        let partition = partition.iter().map(|r| r.to_f64().unwrap()).collect();
        Ok(GlsSystem {
            partition,
            widths,
            flips: flips.to_vec(),
        })
    }

    /// Number of branches `B`.
    pub fn branches(&self) -> usize {
        self.flips.len()
    }

    pub fn partition(&self) -> &[f64] {
        &self.partition
    }

    /// Width `l_k = r_{k+1} - r_k` of branch `k`.
    pub fn width(&self, k: usize) -> f64 {
        self.widths[k]
    }

    /// Flip bit of branch `k` (0 preserves orientation, 1 reverses it).
    pub fn flip(&self, k: usize) -> u8 {
        self.flips[k]
    }

    /// Left endpoint `r_k` of the image of branch `k`.
    pub fn left(&self, k: usize) -> f64 {
        self.partition[k]
    }

    /// Apply branch `k` to a point of `[0,1]`.
    ///
    /// Maps `[0,1]` bijectively onto `[r_k, r_{k+1}]`; endpoints swap when the
    /// branch reverses orientation.
    pub fn apply(&self, k: usize, x: f64) -> Result<f64> {
        if k >= self.branches() {
            return Err(GlsError::UnknownBranch {
                k,
                branches: self.branches(),
            });
        }
        if !(0.0..=1.0).contains(&x) {
            return Err(GlsError::OutOfUnitInterval {
                name: "x",
                value: x,
            });
        }
        let l = self.widths[k];
        let r = self.partition[k];
        Ok(if self.flips[k] == 0 {
            r + x * l
        } else {
            r + l - x * l
        })
    }

    /// Greedy branch lookup: the `k` with `x` in `[r_k, r_{k+1})`, the last
    /// cell closed on the right.
    pub fn branch_of(&self, x: f64) -> Result<usize> {
        if !(0.0..=1.0).contains(&x) {
            return Err(GlsError::OutOfUnitInterval {
                name: "x",
                value: x,
            });
        }
        let b = self.branches();
        // partition is sorted; a linear scan beats a binary search at these sizes
        for k in (0..b).rev() {
            if x >= self.partition[k] {
                return Ok(k.min(b - 1));
            }
        }
        Ok(0)
    }

    /// Inverse of branch `k` on its image interval, clamped into `[0,1]`.
    pub fn invert(&self, k: usize, x: f64) -> Result<f64> {
        if k >= self.branches() {
            return Err(GlsError::UnknownBranch {
                k,
                branches: self.branches(),
            });
        }
        let l = self.widths[k];
        let r = self.partition[k];
        let y = if self.flips[k] == 0 {
            (x - r) / l
        } else {
            (r + l - x) / l
        };
        Ok(y.clamp(0.0, 1.0))
    }
}

/// The affine map of one digit on the unit square: a diagonal matrix plus a
/// translation. The image of `[0,1]^2` is the product cell
/// `[sum_{i<j} p_i, sum_{i<=j} p_i] x [r_{j,k}, r_{j,k+1}]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AffineDigitData {
    /// Diagonal `(p_j, (-1)^{eps} * l_{(j,k)})`.
    pub diagonal: [f64; 2],
    /// Translation `(sum_{i<j} p_i, r_{j,k} + eps * l_{(j,k)})`.
    pub translation: [f64; 2],
}

/// One entry `(s, K, t)` of the digit set: flip bit, reciprocal branch width,
/// and offset `t = r + s * l`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "(u8, f64, f64)", from = "(u8, f64, f64)")]
pub struct DigitTriple {
    pub flip: u8,
    pub base: f64,
    pub offset: f64,
}

impl From<(u8, f64, f64)> for DigitTriple {
    fn from((flip, base, offset): (u8, f64, f64)) -> Self {
        DigitTriple { flip, base, offset }
    }
}

impl From<DigitTriple> for (u8, f64, f64) {
    fn from(t: DigitTriple) -> Self {
        (t.flip, t.base, t.offset)
    }
}

/// Outcome of the weight/width domination check `p_j > l_{(j,k)}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominationReport {
    pub holds: bool,
    /// Digits with `p_j <= l_{(j,k)}`, in digit order.
    pub offenders: Vec<Digit>,
}

/// A finite GLS number system with redundancy: `J >= 2` systems, a positive
/// probability vector over them, and the combined digit alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct GlsFamily {
    systems: Vec<GlsSystem>,
    weights: Vec<f64>,
    /// Prefix sums of the weights, length `J + 1`, ends at (float) 1.
    cum_weights: Vec<f64>,
    /// All digits in `(j, k)`-lexicographic order.
    digits: Vec<Digit>,
    /// `digit_offset[j]` is the flat index of digit `(j, 0)`.
    digit_offset: Vec<usize>,
}

impl GlsFamily {
    pub fn new(systems: Vec<GlsSystem>, weights: Vec<f64>) -> Result<Self> {
        if systems.len() < 2 {
            return Err(GlsError::TooFewSystems { got: systems.len() });
        }
        if weights.len() != systems.len() {
            return Err(GlsError::WeightCount {
                expected: systems.len(),
                got: weights.len(),
            });
        }
        for (index, &value) in weights.iter().enumerate() {
            if value.is_nan() || value <= 0.0 {
                return Err(GlsError::WeightNotPositive { index, value });
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(GlsError::WeightSum { sum });
        }

        let mut cum_weights = Vec::with_capacity(weights.len() + 1);
        let mut acc = 0.0;
        cum_weights.push(0.0);
        for &p in &weights {
            acc += p;
            cum_weights.push(acc);
        }

        let mut digits = Vec::new();
        let mut digit_offset = Vec::with_capacity(systems.len());
        for (j, system) in systems.iter().enumerate() {
            digit_offset.push(digits.len());
            for k in 0..system.branches() {
                digits.push(Digit::new(j, k));
            }
        }

        Ok(GlsFamily {
            systems,
            weights,
            cum_weights,
            digits,
            digit_offset,
        })
    }

    /// Number of systems `J`.
    pub fn system_count(&self) -> usize {
        self.systems.len()
    }

    /// Size of the digit alphabet, `sum_j B_j`.
    pub fn digit_count(&self) -> usize {
        self.digits.len()
    }

    pub fn system(&self, j: usize) -> Result<&GlsSystem> {
        self.systems.get(j).ok_or(GlsError::UnknownSystem {
            j,
            total: self.systems.len(),
        })
    }

    pub fn systems(&self) -> &[GlsSystem] {
        &self.systems
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `sum_{i<j} p_i`, the left endpoint of system `j`'s driving cell.
    pub fn weight_prefix(&self, j: usize) -> f64 {
        self.cum_weights[j]
    }

    /// All digits in `(j, k)`-lexicographic order.
    pub fn digits(&self) -> &[Digit] {
        &self.digits
    }

    /// Flat index of a digit in [`GlsFamily::digits`] order.
    pub fn digit_index(&self, digit: Digit) -> Result<usize> {
        let system = self
            .systems
            .get(digit.j)
            .ok_or(GlsError::UnknownDigit { digit })?;
        if digit.k >= system.branches() {
            return Err(GlsError::UnknownDigit { digit });
        }
        Ok(self.digit_offset[digit.j] + digit.k)
    }

    /// Driving weight `p_e = p_j` of a digit.
    pub fn weight_of(&self, digit: Digit) -> Result<f64> {
        self.digit_index(digit)?;
        Ok(self.weights[digit.j])
    }

    /// Fibre contraction `l_e = r_{j,k+1} - r_{j,k}` of a digit.
    pub fn width_of(&self, digit: Digit) -> Result<f64> {
        self.digit_index(digit)?;
        Ok(self.systems[digit.j].width(digit.k))
    }

    /// Apply the driving map `f_j(w) = p_j w + sum_{i<j} p_i`.
    pub fn apply_driving(&self, j: usize, w: f64) -> Result<f64> {
        if j >= self.systems.len() {
            return Err(GlsError::UnknownSystem {
                j,
                total: self.systems.len(),
            });
        }
        if !(0.0..=1.0).contains(&w) {
            return Err(GlsError::OutOfUnitInterval {
                name: "w",
                value: w,
            });
        }
        Ok(self.weights[j] * w + self.cum_weights[j])
    }

    /// Greedy driving cell lookup: the `j` with `w` in the half-open cell of
    /// `f_j`, the last cell closed. At cell boundaries this picks the cell
    /// whose inverse sends `w` to 0, so boundary codings end in zeros.
    pub fn driving_cell(&self, w: f64) -> Result<usize> {
        if !(0.0..=1.0).contains(&w) {
            return Err(GlsError::OutOfUnitInterval {
                name: "w",
                value: w,
            });
        }
        let total = self.systems.len();
        for j in (0..total).rev() {
            if w >= self.cum_weights[j] {
                return Ok(j.min(total - 1));
            }
        }
        Ok(0)
    }

    /// The affine map data of one digit on the unit square.
    pub fn affine_data(&self, digit: Digit) -> Result<AffineDigitData> {
        self.digit_index(digit)?;
        let system = &self.systems[digit.j];
        let p = self.weights[digit.j];
        let l = system.width(digit.k);
        let flip = system.flip(digit.k);
        let signed_l = if flip == 0 { l } else { -l };
        Ok(AffineDigitData {
            diagonal: [p, signed_l],
            translation: [
                self.cum_weights[digit.j],
                system.left(digit.k) + f64::from(flip) * l,
            ],
        })
    }

    /// The digit set: one `(s, K, t)` triple per digit, in digit order, with
    /// `s` the flip, `K = 1/l` and `t = r + s * l`.
    pub fn digit_set(&self) -> Vec<DigitTriple> {
        self.digits
            .iter()
            .map(|&d| self.triple_of(d).unwrap())
            .collect()
    }

    /// The `(s, K, t)` triple of a single digit.
    pub fn triple_of(&self, digit: Digit) -> Result<DigitTriple> {
        self.digit_index(digit)?;
        let system = &self.systems[digit.j];
        let l = system.width(digit.k);
        let flip = system.flip(digit.k);
        Ok(DigitTriple {
            flip,
            base: 1.0 / l,
            offset: system.left(digit.k) + f64::from(flip) * l,
        })
    }

    /// Check the hypothesis `p_j > l_{(j,k)}` for every digit.
    ///
    /// All dimension formulas in [`crate::dimension`] assume this: the driving
    /// direction must contract strictly slower than every fibre branch.
    pub fn check_domination(&self) -> DominationReport {
        let offenders: Vec<Digit> = self
            .digits
            .iter()
            .copied()
            .filter(|&d| self.weights[d.j] <= self.systems[d.j].width(d.k))
            .collect();
        DominationReport {
            holds: offenders.is_empty(),
            offenders,
        }
    }

    /// Like [`GlsFamily::check_domination`] but as a `Result`, for operations
    /// that require the hypothesis.
    pub fn require_domination(&self) -> Result<()> {
        let report = self.check_domination();
        if report.holds {
            Ok(())
        } else {
            Err(GlsError::DominationViolated {
                offenders: report.offenders,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn s1() -> GlsFamily {
        fixtures::signed_base(3, 0.5).unwrap()
    }

    fn s3() -> GlsFamily {
        fixtures::mixed_bases(&[3, 4], &[0.4, 0.6]).unwrap()
    }

    #[test]
    fn builds_the_signed_base3_systems() {
        let flat = GlsSystem::new(&[0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0], &[0, 0, 0]).unwrap();
        assert_eq!(flat.branches(), 3);
        let reversed = GlsSystem::new(&[0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0], &[1, 1, 1]).unwrap();
        assert_eq!(reversed.flip(1), 1);
    }

    #[test]
    fn rejects_non_monotone_partition() {
        let err = GlsSystem::new(&[0.0, 2.0 / 3.0, 1.0 / 3.0, 1.0], &[0, 0, 0]).unwrap_err();
        assert_eq!(err, GlsError::PartitionNotIncreasing { index: 2 });
    }

    #[test]
    fn rejects_bad_endpoints_flips_and_lengths() {
        assert!(matches!(
            GlsSystem::new(&[0.1, 0.5, 1.0], &[0, 0]),
            Err(GlsError::PartitionEndpoints { .. })
        ));
        assert!(matches!(
            GlsSystem::new(&[0.0, 0.5, 0.9], &[0, 0]),
            Err(GlsError::PartitionEndpoints { .. })
        ));
        assert!(matches!(
            GlsSystem::new(&[0.0, 0.5, 1.0], &[0, 2]),
            Err(GlsError::FlipValue { index: 1, value: 2 })
        ));
        assert!(matches!(
            GlsSystem::new(&[0.0, 0.5, 1.0], &[0]),
            Err(GlsError::FlipCount {
                expected: 2,
                got: 1
            })
        ));
        assert!(matches!(
            GlsSystem::new(&[0.0, 1.0], &[0]),
            Err(GlsError::PartitionTooShort { got: 2 })
        ));
    }

    #[test]
    fn family_enumerates_digits_lexicographically() {
        let family = s1();
        assert_eq!(family.digit_count(), 6);
        assert_eq!(
            family.digits(),
            &[
                Digit::new(0, 0),
                Digit::new(0, 1),
                Digit::new(0, 2),
                Digit::new(1, 0),
                Digit::new(1, 1),
                Digit::new(1, 2)
            ]
        );
        assert_eq!(s3().digit_count(), 7);
    }

    #[test]
    fn family_rejects_bad_weights() {
        let sys = || GlsSystem::new(&[0.0, 0.5, 1.0], &[0, 0]).unwrap();
        assert!(matches!(
            GlsFamily::new(vec![sys(), sys()], vec![0.5, 0.6]),
            Err(GlsError::WeightSum { .. })
        ));
        assert!(matches!(
            GlsFamily::new(vec![sys(), sys()], vec![1.2, -0.2]),
            Err(GlsError::WeightNotPositive { index: 1, .. })
        ));
        assert!(matches!(
            GlsFamily::new(vec![sys()], vec![1.0]),
            Err(GlsError::TooFewSystems { got: 1 })
        ));
    }

    #[test]
    fn apply_h_matches_hand_values() {
        let family = s1();
        let h0 = family.system(0).unwrap();
        let h1 = family.system(1).unwrap();
        assert!((h0.apply(1, 0.5).unwrap() - 0.5).abs() < 1e-15);
        assert!((h1.apply(1, 0.0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((h1.apply(1, 0.5).unwrap() - 0.5).abs() < 1e-15);
        assert!(matches!(
            h0.apply(1, 1.5),
            Err(GlsError::OutOfUnitInterval { .. })
        ));
    }

    #[test]
    fn apply_driving_matches_hand_values() {
        let family = s1();
        assert_eq!(family.apply_driving(0, 1.0).unwrap(), 0.5);
        assert_eq!(family.apply_driving(1, 0.0).unwrap(), 0.5);
        let mixed = s3();
        assert!((mixed.apply_driving(1, 0.5).unwrap() - 0.7).abs() < 1e-15);
        assert!(matches!(
            mixed.apply_driving(1, -0.1),
            Err(GlsError::OutOfUnitInterval { .. })
        ));
    }

    #[test]
    fn affine_data_matches_hand_values() {
        let family = s1();
        let a = family.affine_data(Digit::new(0, 0)).unwrap();
        assert_eq!(a.diagonal[0], 0.5);
        assert!((a.diagonal[1] - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(a.translation, [0.0, 0.0]);

        let b = family.affine_data(Digit::new(1, 0)).unwrap();
        assert_eq!(b.diagonal[0], 0.5);
        assert!((b.diagonal[1] + 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(b.translation[0], 0.5);
        assert!((b.translation[1] - 1.0 / 3.0).abs() < 1e-15);

        let c = s3().affine_data(Digit::new(1, 3)).unwrap();
        assert!((c.diagonal[0] - 0.6).abs() < 1e-15);
        assert!((c.diagonal[1] - 0.25).abs() < 1e-15);
        assert!((c.translation[0] - 0.4).abs() < 1e-15);
        assert!((c.translation[1] - 0.75).abs() < 1e-15);

        assert!(matches!(
            family.affine_data(Digit::new(2, 0)),
            Err(GlsError::UnknownDigit { .. })
        ));
    }

    /// The image of the unit square under a digit's affine map must be exactly
    /// the product of the driving cell and the branch interval.
    #[test]
    fn affine_image_is_the_product_cell() {
        for family in [s1(), s3()] {
            for &digit in family.digits() {
                let data = family.affine_data(digit).unwrap();
                let corners = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]];
                let mut w_lo = f64::INFINITY;
                let mut w_hi = f64::NEG_INFINITY;
                let mut x_lo = f64::INFINITY;
                let mut x_hi = f64::NEG_INFINITY;
                for c in corners {
                    let w = data.diagonal[0] * c[0] + data.translation[0];
                    let x = data.diagonal[1] * c[1] + data.translation[1];
                    w_lo = w_lo.min(w);
                    w_hi = w_hi.max(w);
                    x_lo = x_lo.min(x);
                    x_hi = x_hi.max(x);
                }
                let system = family.system(digit.j).unwrap();
                assert!((w_lo - family.weight_prefix(digit.j)).abs() < 1e-15);
                assert!(
                    (w_hi - (family.weight_prefix(digit.j) + family.weights()[digit.j])).abs()
                        < 1e-15
                );
                assert!((x_lo - system.left(digit.k)).abs() < 1e-15);
                assert!((x_hi - (system.left(digit.k) + system.width(digit.k))).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn digit_set_matches_hand_values_and_is_injective() {
        let family = s1();
        let t = family.triple_of(Digit::new(0, 1)).unwrap();
        assert_eq!(t.flip, 0);
        assert!((t.base - 3.0).abs() < 1e-12);
        assert!((t.offset - 1.0 / 3.0).abs() < 1e-15);

        let t = family.triple_of(Digit::new(1, 1)).unwrap();
        assert_eq!(t.flip, 1);
        assert!((t.offset - 2.0 / 3.0).abs() < 1e-15);

        let t = s3().triple_of(Digit::new(0, 0)).unwrap();
        assert_eq!((t.flip, t.offset), (0, 0.0));
        assert!((t.base - 3.0).abs() < 1e-12);

        // all h_e differ on these fixtures, so triples identify digits
        for family in [s1(), s3()] {
            let set = family.digit_set();
            for (a, ta) in set.iter().enumerate() {
                for tb in set.iter().skip(a + 1) {
                    assert!(ta != tb, "digit triples must be distinct");
                }
            }
        }
    }

    #[test]
    fn domination_check_reports_offenders() {
        assert!(s1().check_domination().holds);
        assert!(s3().check_domination().holds);

        let skewed = fixtures::signed_base(3, 0.2).unwrap();
        let report = skewed.check_domination();
        assert!(!report.holds);
        assert_eq!(
            report.offenders,
            vec![Digit::new(0, 0), Digit::new(0, 1), Digit::new(0, 2)]
        );
    }

    /// Branch images of the open interval are disjoint and tile the interval.
    #[test]
    fn branch_images_are_disjoint() {
        for family in [s1(), s3()] {
            for system in family.systems() {
                for k in 0..system.branches() - 1 {
                    let right = system.left(k) + system.width(k);
                    assert!(right <= system.left(k + 1) + 1e-15);
                }
            }
            for j in 0..family.system_count() - 1 {
                let right = family.weight_prefix(j) + family.weights()[j];
                assert!(right <= family.weight_prefix(j + 1) + 1e-15);
            }
        }
    }

    #[test]
    fn exact_widths_from_rational_partition() {
        let family = s1();
        let system = family.system(0).unwrap();
        // all three widths are the same float when built from exact thirds
        assert_eq!(system.width(0), system.width(1));
        assert_eq!(system.width(1), system.width(2));
    }
}
