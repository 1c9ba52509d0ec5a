//! Shared helpers for the integration tests: seeded random instances that
//! satisfy the weight/width domination hypothesis by construction.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gls_core::{FrequencyVector, GlsFamily, GlsSystem};

/// Branch-count combinations with `sum 1/B_j < 1` (domination is impossible
/// otherwise) and at most 10 digits total.
const BRANCH_COMBOS: &[&[usize]] = &[
    &[2, 3],
    &[2, 4],
    &[2, 5],
    &[2, 6],
    &[2, 7],
    &[2, 8],
    &[3, 3],
    &[3, 4],
    &[3, 5],
    &[3, 6],
    &[3, 7],
    &[4, 4],
    &[4, 5],
    &[4, 6],
    &[5, 5],
    &[3, 3, 4],
    &[3, 4, 3],
    &[4, 3, 3],
];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn exponential(rng: &mut impl Rng) -> f64 {
    let u: f64 = rng.gen();
    -(1.0 - u).ln()
}

/// A random family that satisfies domination by construction: weights get
/// `1/B_j` plus a positive share of the slack `1 - sum 1/B_j`, and branch
/// widths are jittered uniformly by strictly less than that share allows.
pub fn random_dominated_family(rng: &mut impl Rng) -> GlsFamily {
    let combo = BRANCH_COMBOS[rng.gen_range(0..BRANCH_COMBOS.len())];
    let slack: f64 = 1.0 - combo.iter().map(|&b| 1.0 / b as f64).sum::<f64>();

    let shares: Vec<f64> = {
        let raw: Vec<f64> = combo.iter().map(|_| exponential(rng)).collect();
        let total: f64 = raw.iter().sum();
        let j_count = combo.len() as f64;
        raw.iter()
            .map(|&e| slack * (0.2 / j_count + 0.8 * e / total))
            .collect()
    };

    let mut weights: Vec<f64> = combo
        .iter()
        .zip(&shares)
        .map(|(&b, &g)| 1.0 / b as f64 + g)
        .collect();
    // make the float sum exactly 1
    let head: f64 = weights[..weights.len() - 1].iter().sum();
    let last = weights.len() - 1;
    weights[last] = 1.0 - head;

    let systems: Vec<GlsSystem> = combo
        .iter()
        .zip(&shares)
        .map(|(&branches, &share)| {
            let jitter = 0.8 * (branches as f64 * share).min(1.0);
            let raw: Vec<f64> = (0..branches)
                .map(|_| 1.0 + jitter * rng.gen::<f64>())
                .collect();
            let total: f64 = raw.iter().sum();
            let mut partition = Vec::with_capacity(branches + 1);
            let mut acc = 0.0;
            partition.push(0.0);
            for &w in &raw[..branches - 1] {
                acc += w / total;
                partition.push(acc);
            }
            partition.push(1.0);
            let flips: Vec<u8> = (0..branches).map(|_| rng.gen_range(0..2u8)).collect();
            GlsSystem::new(&partition, &flips).expect("constructed partition is valid")
        })
        .collect();

    let family = GlsFamily::new(systems, weights).expect("constructed weights are valid");
    assert!(
        family.check_domination().holds,
        "generator must produce dominated families"
    );
    family
}

/// A random strictly positive frequency vector over the family's digits.
pub fn random_alpha(rng: &mut impl Rng, family: &GlsFamily) -> FrequencyVector {
    let raw: Vec<f64> = (0..family.digit_count())
        .map(|_| exponential(rng) + 0.05)
        .collect();
    let total: f64 = raw.iter().sum();
    FrequencyVector::new(family, raw.iter().map(|&v| v / total).collect())
        .expect("normalized positive vector is valid")
}

/// A random positive weight vector of the given size, for abstract schedules.
pub fn random_weights(rng: &mut impl Rng, size: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..size).map(|_| exponential(rng) + 0.02).collect();
    let total: f64 = raw.iter().sum();
    raw.iter().map(|&v| v / total).collect()
}
