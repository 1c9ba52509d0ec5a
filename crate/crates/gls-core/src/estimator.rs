//! Monte-Carlo point clouds and empirical dimension estimates.
//!
//! The primary statistic is grid entropy (information dimension): a finite
//! sample of the digit Bernoulli measure estimates the dimension of that
//! measure, which is what the analytic formulas compute. Box counting of the
//! same samples is kept as a diagnostic only; it answers a different question
//! badly when the sample is sparse relative to the grid.
//!
//! All sampling is deterministic in the seed. Point clouds draw one RNG per
//! sample, seeded by a counter mix of the master seed, so the result is
//! independent of how the work is scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

use crate::codec::Word;
use crate::error::{GlsError, Result};
use crate::measures::{sample_categorical, sample_w};
use crate::scheduler::FrequencyVector;
use crate::system::{Digit, GlsFamily};

/// Provenance of a sampled cloud.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CloudMeta {
    pub depth: usize,
    pub samples: usize,
    pub seed: u64,
}

/// A cloud of decoded points in the unit square.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointCloud {
    points: Vec<[f64; 2]>,
    pub meta: CloudMeta,
}

impl PointCloud {
    pub fn new(points: Vec<[f64; 2]>, meta: CloudMeta) -> Result<Self> {
        for point in &points {
            for (name, &coordinate) in [("w", &point[0]), ("x", &point[1])] {
                if !(0.0..=1.0).contains(&coordinate) {
                    return Err(GlsError::OutOfUnitInterval {
                        name: if name == "w" { "w" } else { "x" },
                        value: coordinate,
                    });
                }
            }
        }
        Ok(PointCloud { points, meta })
    }

    pub fn points(&self) -> &[[f64; 2]] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Write the cloud as CSV with a `w,x` header.
    pub fn write_csv<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "w,x")?;
        for point in &self.points {
            writeln!(out, "{},{}", point[0], point[1])?;
        }
        Ok(())
    }
}

/// A scaling regression: statistic per scale and the fitted slope.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingFit {
    pub scales: Vec<f64>,
    pub statistic: Vec<f64>,
    pub slope: f64,
    /// Root-mean-square residual of the least-squares line.
    pub residual: f64,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Per-sample seed: a counter mix of the master seed, so parallel sampling
/// is reproducible regardless of scheduling.
fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(master.wrapping_add(splitmix64(index)))
}

/// Sample a word of length `n` with i.i.d. digits distributed by `alpha`.
pub fn sample_word(family: &GlsFamily, alpha: &FrequencyVector, n: usize, seed: u64) -> Word {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let digits = (0..n)
        .map(|_| family.digits()[sample_categorical(&mut rng, alpha.values())])
        .collect();
    Word::from_validated(digits)
}

/// Decode the midpoint of a word's cell without building intermediate words.
fn decode_midpoint(family: &GlsFamily, digits: impl Iterator<Item = Digit>) -> [f64; 2] {
    let mut w_offset = 0.0;
    let mut w_scale = 1.0;
    let mut x_offset = 0.0;
    let mut x_scale = 1.0f64;
    for digit in digits {
        let system = &family.systems()[digit.j];
        w_offset += w_scale * family.weight_prefix(digit.j);
        w_scale *= family.weights()[digit.j];
        let l = system.width(digit.k);
        x_offset += x_scale * (system.left(digit.k) + f64::from(system.flip(digit.k)) * l);
        x_scale *= if system.flip(digit.k) == 0 { l } else { -l };
    }
    [w_offset + w_scale * 0.5, x_offset + x_scale * 0.5]
}

/// Sample `samples` decoded points of depth `depth` from the Bernoulli
/// measure of `alpha`. Each point is the midpoint of its depth-`depth` cell,
/// hence within the largest contraction ratio to the power `depth` of a point
/// of the attractor of the sampled measure.
pub fn sample_points(
    family: &GlsFamily,
    alpha: &FrequencyVector,
    depth: usize,
    samples: usize,
    seed: u64,
) -> PointCloud {
    let points: Vec<[f64; 2]> = (0..samples)
        .into_par_iter()
        .map(|index| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, index as u64));
            let digits =
                (0..depth).map(|_| family.digits()[sample_categorical(&mut rng, alpha.values())]);
            decode_midpoint(family, digits)
        })
        .collect();
    PointCloud {
        points,
        meta: CloudMeta {
            depth,
            samples,
            seed,
        },
    }
}

fn validate_scales(scales: &[f64]) -> Result<()> {
    if scales.len() < 3 {
        return Err(GlsError::TooFewScales {
            needed: 3,
            got: scales.len(),
        });
    }
    if scales.iter().any(|s| !s.is_finite()) {
        return Err(GlsError::BadScales);
    }
    for pair in scales.windows(2) {
        if pair[1] >= pair[0] {
            return Err(GlsError::BadScales);
        }
    }
    if scales[0] >= 1.0 || scales[scales.len() - 1] <= 0.0 {
        return Err(GlsError::BadScales);
    }
    Ok(())
}

fn least_squares(xs: &[f64], ys: &[f64]) -> Result<(f64, f64)> {
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let mut covariance = 0.0;
    let mut variance = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        covariance += (x - mean_x) * (y - mean_y);
        variance += (x - mean_x) * (x - mean_x);
    }
    if variance <= 0.0 {
        return Err(GlsError::DegenerateFit {
            reason: "scales have no spread",
        });
    }
    let slope = covariance / variance;
    let intercept = mean_y - slope * mean_x;
    let mut squared = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        let r = y - (slope * x + intercept);
        squared += r * r;
    }
    let residual = (squared / n).sqrt();
    if !slope.is_finite() {
        return Err(GlsError::DegenerateFit {
            reason: "non-finite slope",
        });
    }
    Ok((slope, residual))
}

fn box_index(coordinate: f64, delta: f64) -> u64 {
    // midpoints are interior, the min is a guard for literal 1.0 inputs
    (coordinate.min(1.0 - 1e-12) / delta).floor() as u64
}

fn occupancy_2d(points: &[[f64; 2]], delta: f64) -> BTreeMap<(u64, u64), u64> {
    let mut boxes = BTreeMap::new();
    for point in points {
        *boxes
            .entry((box_index(point[0], delta), box_index(point[1], delta)))
            .or_insert(0u64) += 1;
    }
    boxes
}

fn occupancy_1d(points: &[f64], delta: f64) -> BTreeMap<u64, u64> {
    let mut boxes = BTreeMap::new();
    for &x in points {
        *boxes.entry(box_index(x, delta)).or_insert(0u64) += 1;
    }
    boxes
}

fn entropy_statistic(counts: impl Iterator<Item = u64>, total: f64) -> f64 {
    counts
        .map(|c| {
            let p = c as f64 / total;
            p * p.ln()
        })
        .sum()
}

/// Information-dimension estimate: least-squares slope of the occupied-box
/// statistic `sum_i (n_i/M) log(n_i/M)` against `log delta`.
pub fn grid_entropy_dim(cloud: &PointCloud, scales: &[f64]) -> Result<ScalingFit> {
    if cloud.is_empty() {
        return Err(GlsError::EmptyWord);
    }
    validate_scales(scales)?;
    let total = cloud.len() as f64;
    let statistic: Vec<f64> = scales
        .iter()
        .map(|&delta| entropy_statistic(occupancy_2d(&cloud.points, delta).into_values(), total))
        .collect();
    let xs: Vec<f64> = scales.iter().map(|&d| d.ln()).collect();
    let (slope, residual) = least_squares(&xs, &statistic)?;
    Ok(ScalingFit {
        scales: scales.to_vec(),
        statistic,
        slope,
        residual,
    })
}

/// Box-counting diagnostic: slope of `log N(delta)` against `-log delta`.
pub fn box_count_dim(cloud: &PointCloud, scales: &[f64]) -> Result<ScalingFit> {
    if cloud.is_empty() {
        return Err(GlsError::EmptyWord);
    }
    validate_scales(scales)?;
    let statistic: Vec<f64> = scales
        .iter()
        .map(|&delta| (occupancy_2d(&cloud.points, delta).len() as f64).ln())
        .collect();
    let xs: Vec<f64> = scales.iter().map(|&d| -d.ln()).collect();
    let (slope, residual) = least_squares(&xs, &statistic)?;
    Ok(ScalingFit {
        scales: scales.to_vec(),
        statistic,
        slope,
        residual,
    })
}

/// Fix a driving coding sampled from the marginals of `alpha`, then sample
/// `samples` fibre points along it: branch indices drawn with the conditional
/// frequencies, decoded to the x-coordinate midpoint. Returns the fibre's
/// `w` midpoint together with the x-values.
pub fn sample_fibre_points(
    family: &GlsFamily,
    alpha: &FrequencyVector,
    depth: usize,
    samples: usize,
    seed: u64,
) -> Result<(f64, Vec<f64>)> {
    alpha.require_positive_marginals()?;
    let coding = sample_w(alpha, depth, seed);
    let conditionals: Vec<Vec<f64>> = (0..family.system_count())
        .map(|j| alpha.conditional(family, j))
        .collect::<Result<_>>()?;

    let mut w_offset = 0.0;
    let mut w_scale = 1.0;
    for &j in coding.systems() {
        w_offset += w_scale * family.weight_prefix(j);
        w_scale *= family.weights()[j];
    }
    let w = w_offset + w_scale * 0.5;

    let xs: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|index| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, index as u64));
            let mut offset = 0.0;
            let mut scale = 1.0f64;
            for &j in coding.systems() {
                let k = sample_categorical(&mut rng, &conditionals[j]);
                let system = &family.systems()[j];
                let l = system.width(k);
                offset += scale * (system.left(k) + f64::from(system.flip(k)) * l);
                scale *= if system.flip(k) == 0 { l } else { -l };
            }
            offset + scale * 0.5
        })
        .collect();
    Ok((w, xs))
}

/// One-dimensional grid-entropy estimate along a sampled fibre.
pub fn estimate_dim_fibre(
    family: &GlsFamily,
    alpha: &FrequencyVector,
    depth: usize,
    samples: usize,
    seed: u64,
    scales: &[f64],
) -> Result<ScalingFit> {
    validate_scales(scales)?;
    let (_, xs) = sample_fibre_points(family, alpha, depth, samples, seed)?;
    let total = xs.len() as f64;
    let statistic: Vec<f64> = scales
        .iter()
        .map(|&delta| entropy_statistic(occupancy_1d(&xs, delta).into_values(), total))
        .collect();
    let log_scales: Vec<f64> = scales.iter().map(|&d| d.ln()).collect();
    let (slope, residual) = least_squares(&log_scales, &statistic)?;
    Ok(ScalingFit {
        scales: scales.to_vec(),
        statistic,
        slope,
        residual,
    })
}

/// Per-depth ratio of log fibre mass to log fundamental-interval width along
/// a word. Accumulates log-sums, so it is safe at depths where the raw
/// products underflow. A digit with zero frequency makes the ratio infinite
/// from that depth on.
pub fn local_dim_fibre(
    family: &GlsFamily,
    alpha: &FrequencyVector,
    word: &Word,
) -> Result<Vec<f64>> {
    let mut ratios = Vec::with_capacity(word.len());
    let mut log_mass = 0.0;
    let mut log_width = 0.0;
    for &digit in word {
        let index = family.digit_index(digit)?;
        let marginal = alpha.marginal(digit.j);
        if marginal <= 0.0 {
            return Err(GlsError::ZeroMarginal { j: digit.j });
        }
        log_mass += (alpha.value(index) / marginal).ln();
        log_width += family.systems()[digit.j].width(digit.k).ln();
        ratios.push(log_mass / log_width);
    }
    Ok(ratios)
}
