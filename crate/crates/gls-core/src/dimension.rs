//! Analytic dimension theory for digit-frequency level sets.
//!
//! Three routes to the same number live here. The closed form evaluates the
//! minimum of `h/chi1` and `1 + (h - chi1)/chi2` from the entropy and the two
//! Lyapunov exponents of the frequency vector. The variational route treats
//! the dimension as the root of `s -> inf_q P(s, q)`, where `P` is the
//! topological pressure of the singular value function perturbed by a linear
//! digit potential; the inner infimum is found by damped Newton on a smooth
//! convex log-sum-exp objective and the root by bisection, which is robust to
//! the kink in `s` at 1. The two routes share no code beyond the family
//! accessors, so their agreement is a meaningful consistency check (the
//! empirical third route lives in [`crate::estimator`]).
//!
//! Everything assumes weight/width domination `p_e > l_e`: the driving
//! coordinate contracts slowest, so norms of the product matrices are
//! products of driving weights, and the singular value function is
//! multiplicative along words. Operations that need the hypothesis return
//! [`GlsError::DominationViolated`] instead of silently computing nonsense.
//!
//! Conventions: natural logarithms throughout; `0 * log 0 = 0`, so digits
//! with zero frequency simply drop out of every sum; entropy is the
//! nonnegative `-sum alpha log alpha`.

use serde::Serialize;

use crate::codec::Word;
use crate::error::{GlsError, Result};
use crate::scheduler::FrequencyVector;
use crate::system::GlsFamily;

const NEWTON_MAX_ITERATIONS: usize = 200;
const NEWTON_GRADIENT_TOLERANCE: f64 = 1e-12;
const BISECTION_MAX_ITERATIONS: usize = 200;

/// Which arm of the dimension minimum is active.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// `h <= chi1`: the dimension is carried by the driving direction alone.
    Driving,
    /// `h > chi1`: full driving direction plus a partial fibre direction.
    DrivingPlusFibre,
}

/// All analytic dimension quantities of one `(family, alpha)` pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionReport {
    pub entropy: f64,
    pub chi1: f64,
    pub chi2: f64,
    pub lyapunov_dim: f64,
    pub dim_level_set: f64,
    pub dim_fibre: f64,
    /// Present when the pressure-root solver was run.
    pub dim_variational: Option<f64>,
    pub branch: Branch,
}

/// The three weighted log-sums every formula is built from. All are <= 0.
struct FreqSums {
    /// `sum alpha_e log alpha_e`
    alpha: f64,
    /// `sum alpha_e log p_e`
    weight: f64,
    /// `sum alpha_e log l_e`
    width: f64,
}

fn freq_sums(family: &GlsFamily, alpha: &FrequencyVector) -> FreqSums {
    let mut sums = FreqSums {
        alpha: 0.0,
        weight: 0.0,
        width: 0.0,
    };
    for (&digit, &a) in family.digits().iter().zip(alpha.values()) {
        if a > 0.0 {
            sums.alpha += a * a.ln();
            sums.weight += a * family.weights()[digit.j].ln();
            sums.width += a * family.systems()[digit.j].width(digit.k).ln();
        }
    }
    sums
}

/// Shannon entropy `-sum alpha log alpha` in nats.
pub fn entropy(family: &GlsFamily, alpha: &FrequencyVector) -> f64 {
    -freq_sums(family, alpha).alpha
}

/// Entropy of the driving marginals.
pub fn driving_entropy(alpha: &FrequencyVector) -> f64 {
    -alpha
        .marginals()
        .iter()
        .filter(|&&m| m > 0.0)
        .map(|&m| m * m.ln())
        .sum::<f64>()
}

/// Lyapunov exponents `(chi1, chi2)` of the Bernoulli measure of `alpha`.
///
/// Under domination the matrix norms along a word are the products of the
/// driving weights and the co-norms the products of the branch widths, so
/// `chi1 = -sum alpha log p` and `chi2 = -sum alpha log l`.
pub fn chi(family: &GlsFamily, alpha: &FrequencyVector) -> Result<(f64, f64)> {
    family.require_domination()?;
    let sums = freq_sums(family, alpha);
    Ok((-sums.weight, -sums.width))
}

fn min_with_branch(arm1: f64, arm2: f64) -> (f64, Branch) {
    if arm1 <= arm2 {
        (arm1.clamp(0.0, 2.0), Branch::Driving)
    } else {
        (arm2.clamp(0.0, 2.0), Branch::DrivingPlusFibre)
    }
}

/// Lyapunov dimension `min { h/chi1, 1 + (h - chi1)/chi2 }`, clamped to `[0,2]`.
pub fn lyapunov_dim(family: &GlsFamily, alpha: &FrequencyVector) -> Result<f64> {
    family.require_domination()?;
    let sums = freq_sums(family, alpha);
    let h = -sums.alpha;
    let chi1 = -sums.weight;
    let chi2 = -sums.width;
    Ok(min_with_branch(h / chi1, 1.0 + (h - chi1) / chi2).0)
}

/// Hausdorff dimension of the two-dimensional digit-frequency level set,
/// in its ratio form
/// `min { sum a log a / sum a log p, 1 + (sum a log a - sum a log p) / sum a log l }`.
///
/// This is the Lyapunov dimension of the frequency vector's Bernoulli measure
/// written with the sign-free sums; both evaluate identically.
pub fn dim_level_set(family: &GlsFamily, alpha: &FrequencyVector) -> Result<f64> {
    Ok(dim_level_set_with_branch(family, alpha)?.0)
}

pub fn dim_level_set_with_branch(
    family: &GlsFamily,
    alpha: &FrequencyVector,
) -> Result<(f64, Branch)> {
    family.require_domination()?;
    let sums = freq_sums(family, alpha);
    let arm1 = sums.alpha / sums.weight;
    let arm2 = 1.0 + (sums.alpha - sums.weight) / sums.width;
    Ok(min_with_branch(arm1, arm2))
}

/// Hausdorff dimension of the fibre level sets: `(h - h_J) / chi2`, where
/// `h_J` is the entropy of the driving marginals. Defined for every valid
/// frequency vector; always in `[0, 1]`.
pub fn dim_fibre(family: &GlsFamily, alpha: &FrequencyVector) -> f64 {
    let sums = freq_sums(family, alpha);
    let h = -sums.alpha;
    let h_driving = driving_entropy(alpha);
    let chi2 = -sums.width;
    ((h - h_driving) / chi2).clamp(0.0, 1.0)
}

/// Log of the per-digit singular value factor `psi_s`: `p^s` below the kink
/// at `s = 1`, `p * l^{s-1}` from the kink on.
fn log_psi(p: f64, l: f64, s: f64) -> f64 {
    if s < 1.0 {
        s * p.ln()
    } else {
        p.ln() + (s - 1.0) * l.ln()
    }
}

/// Singular value function of the product matrix of a word:
/// `(prod p)^s` for `s < 1` and `(prod p)(prod l)^{s-1}` for `1 <= s < 2`.
pub fn phi_s(family: &GlsFamily, word: &Word, s: f64) -> Result<f64> {
    if !(0.0..2.0).contains(&s) {
        return Err(GlsError::InvalidParameter {
            name: "s",
            value: s,
        });
    }
    family.require_domination()?;
    let mut weight_product = 1.0;
    let mut width_product = 1.0;
    for &digit in word {
        family.digit_index(digit)?;
        weight_product *= family.weights()[digit.j];
        width_product *= family.systems()[digit.j].width(digit.k);
    }
    Ok(if s < 1.0 {
        weight_product.powf(s)
    } else {
        weight_product * width_product.powf(s - 1.0)
    })
}

/// Topological pressure of `log phi^s` perturbed by the linear digit
/// potential `sum_e q_e (1_[e] - alpha_e)`:
///
/// ```text
/// P(s, q) = log sum_e psi_s(e) exp(q_e)  -  <q, alpha>.
/// ```
///
/// The potential is constant on 1-cylinders and `psi_s` multiplicative, so
/// the defining cylinder sums give this value exactly at every depth.
/// Accepts `s` in `[0, 2]`; the solver cap at 2 uses the `s >= 1` arm.
pub fn pressure(family: &GlsFamily, alpha: &FrequencyVector, s: f64, q: &[f64]) -> Result<f64> {
    if !(0.0..=2.0).contains(&s) {
        return Err(GlsError::InvalidParameter {
            name: "s",
            value: s,
        });
    }
    family.require_domination()?;
    if q.len() != family.digit_count() {
        return Err(GlsError::LengthMismatch {
            name: "q",
            expected: family.digit_count(),
            got: q.len(),
        });
    }
    let exponents: Vec<f64> = family
        .digits()
        .iter()
        .zip(q)
        .map(|(&digit, &qe)| {
            log_psi(
                family.weights()[digit.j],
                family.systems()[digit.j].width(digit.k),
                s,
            ) + qe
        })
        .collect();
    let linear: f64 = q.iter().zip(alpha.values()).map(|(&qe, &ae)| qe * ae).sum();
    Ok(log_sum_exp(&exponents) - linear)
}

fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    max + values.iter().map(|&v| (v - max).exp()).sum::<f64>().ln()
}

/// Infimum over the perturbation `q` of the pressure, by damped Newton.
///
/// The objective `q -> P(s, q)` is a smooth convex log-sum-exp minus a linear
/// term; it is constant along constant shifts of `q`, so the minimization runs
/// on the zero-sum hyperplane where the reduced Hessian is positive definite.
/// Digits with zero frequency are dropped: along them the infimum is only
/// approached as `q_e -> -inf`, and dropping them attains it.
pub fn inf_q_pressure(family: &GlsFamily, alpha: &FrequencyVector, s: f64) -> Result<f64> {
    if !(0.0..=2.0).contains(&s) {
        return Err(GlsError::InvalidParameter {
            name: "s",
            value: s,
        });
    }
    family.require_domination()?;

    // restrict to the support of alpha
    let mut base = Vec::new();
    let mut weights = Vec::new();
    for (&digit, &a) in family.digits().iter().zip(alpha.values()) {
        if a > 0.0 {
            base.push(log_psi(
                family.weights()[digit.j],
                family.systems()[digit.j].width(digit.k),
                s,
            ));
            weights.push(a);
        }
    }
    let size = base.len();
    let mut q = vec![0.0; size];
    let objective = |q: &[f64]| -> f64 {
        let shifted: Vec<f64> = base.iter().zip(q).map(|(&b, &qe)| b + qe).collect();
        let linear: f64 = q.iter().zip(&weights).map(|(&qe, &ae)| qe * ae).sum();
        log_sum_exp(&shifted) - linear
    };

    let mut value = objective(&q);
    for _ in 0..NEWTON_MAX_ITERATIONS {
        // softmax of the shifted exponents
        let shifted: Vec<f64> = base.iter().zip(&q).map(|(&b, &qe)| b + qe).collect();
        let max = shifted.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let exps: Vec<f64> = shifted.iter().map(|&v| (v - max).exp()).collect();
        let total: f64 = exps.iter().sum();
        let softmax: Vec<f64> = exps.iter().map(|&e| e / total).collect();

        let gradient: Vec<f64> = softmax
            .iter()
            .zip(&weights)
            .map(|(&pi, &ae)| pi - ae)
            .collect();
        let gradient_norm = gradient.iter().fold(0.0f64, |m, &g| m.max(g.abs()));
        if gradient_norm <= NEWTON_GRADIENT_TOLERANCE {
            return Ok(value);
        }

        // Newton system on the zero-sum hyperplane: the rank-one term 11^T/n
        // replaces the null direction of the softmax Hessian with eigenvalue 1
        let mut hessian = vec![vec![0.0; size]; size];
        for row in 0..size {
            for col in 0..size {
                let mut entry = -softmax[row] * softmax[col] + 1.0 / size as f64;
                if row == col {
                    entry += softmax[row];
                }
                hessian[row][col] = entry;
            }
        }
        let negative_gradient: Vec<f64> = gradient.iter().map(|&g| -g).collect();
        let direction = solve_dense(hessian, negative_gradient)
            .unwrap_or_else(|| gradient.iter().map(|&g| -g).collect());

        // the Newton decrement bounds the remaining gap: g - g* ~ -slope / 2;
        // once it sinks to the objective's own rounding noise the line search
        // cannot realize further progress
        let slope: f64 = gradient.iter().zip(&direction).map(|(&g, &d)| g * d).sum();
        if -slope <= 64.0 * f64::EPSILON * (1.0 + value.abs()) {
            return Ok(value);
        }
        let mut step = 1.0;
        loop {
            let candidate: Vec<f64> = q
                .iter()
                .zip(&direction)
                .map(|(&qe, &d)| qe + step * d)
                .collect();
            let candidate_value = objective(&candidate);
            if candidate_value <= value + 1e-4 * step * slope || step < 1e-12 {
                q = candidate;
                value = candidate_value;
                break;
            }
            step *= 0.5;
        }
    }
    Err(GlsError::NonConvergence {
        what: "pressure minimization",
        iterations: NEWTON_MAX_ITERATIONS,
    })
}

/// Gaussian elimination with partial pivoting; `None` on a (near-)singular
/// system, which callers treat as "fall back to a gradient step".
fn solve_dense(mut matrix: Vec<Vec<f64>>, mut rhs: Vec<f64>) -> Option<Vec<f64>> {
    let size = rhs.len();
    for col in 0..size {
        let pivot_row = (col..size)
            .max_by(|&a, &b| {
                matrix[a][col]
                    .abs()
                    .partial_cmp(&matrix[b][col].abs())
                    .unwrap()
            })
            .unwrap();
        if matrix[pivot_row][col].abs() < 1e-300 {
            return None;
        }
        matrix.swap(col, pivot_row);
        rhs.swap(col, pivot_row);
        for row in col + 1..size {
            let factor = matrix[row][col] / matrix[col][col];
            let (pivot_rows, rest) = matrix.split_at_mut(row);
            for (target, &pivot) in rest[0][col..].iter_mut().zip(&pivot_rows[col][col..]) {
                *target -= factor * pivot;
            }
            rhs[row] -= factor * rhs[col];
        }
    }
    let mut solution = vec![0.0; size];
    for row in (0..size).rev() {
        let mut acc = rhs[row];
        for col in row + 1..size {
            acc -= matrix[row][col] * solution[col];
        }
        solution[row] = acc / matrix[row][row];
    }
    Some(solution)
}

/// The variational dimension: the root in `s` of `s -> inf_q P(s, q)` on
/// `[0, 2]`, found by bisection to within `tol`.
///
/// The map is strictly decreasing and piecewise linear with a kink at
/// `s = 1`; bisection does not care about the kink. Returns 2 when the
/// pressure is still nonnegative at the planar cap.
pub fn dim_variational(family: &GlsFamily, alpha: &FrequencyVector, tol: f64) -> Result<f64> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(GlsError::InvalidParameter {
            name: "tol",
            value: tol,
        });
    }
    family.require_domination()?;

    if inf_q_pressure(family, alpha, 2.0)? >= 0.0 {
        return Ok(2.0);
    }
    let mut low = 0.0;
    let mut high = 2.0;
    let mut iterations = 0;
    while high - low > tol {
        iterations += 1;
        if iterations > BISECTION_MAX_ITERATIONS {
            return Err(GlsError::NonConvergence {
                what: "pressure root bisection",
                iterations: BISECTION_MAX_ITERATIONS,
            });
        }
        let mid = 0.5 * (low + high);
        if inf_q_pressure(family, alpha, mid)? >= 0.0 {
            low = mid;
        } else {
            high = mid;
        }
    }
    Ok(0.5 * (low + high))
}

/// Assemble the full report; runs the variational solver when a tolerance is
/// supplied.
pub fn report(
    family: &GlsFamily,
    alpha: &FrequencyVector,
    variational_tol: Option<f64>,
) -> Result<DimensionReport> {
    let (chi1, chi2) = chi(family, alpha)?;
    let (level_set, branch) = dim_level_set_with_branch(family, alpha)?;
    let dim_variational = match variational_tol {
        Some(tol) => Some(dim_variational(family, alpha, tol)?),
        None => None,
    };
    Ok(DimensionReport {
        entropy: entropy(family, alpha),
        chi1,
        chi2,
        lyapunov_dim: lyapunov_dim(family, alpha)?,
        dim_level_set: level_set,
        dim_fibre: dim_fibre(family, alpha),
        dim_variational,
        branch,
    })
}
