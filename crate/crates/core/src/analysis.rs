//! Root matching and empirical convergence order.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::methods::{IterateVector, MethodKind};
use crate::poly::{Polynomial, RootSet};
use crate::solver::{solve_observed, ConfigError, SolveReport, SolverConfig};

/// Below this value a sequence entry is treated as rounding noise.
pub const DEFAULT_NOISE_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub enum AnalysisError {
    LengthMismatch { computed: usize, reference: usize },
    /// The sequence has fewer than three entries.
    TooShort { len: usize },
    /// An entry is negative or not finite.
    InvalidEntry { index: usize },
    /// No interior index had three strictly decreasing entries above the
    /// noise floor.
    NoUsableTriple,
    Config(ConfigError),
}

impl fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalysisError::LengthMismatch {
                computed,
                reference,
            } => write!(f, "{computed} approximations for {reference} reference roots"),
            AnalysisError::TooShort { len } => write!(
                f,
                "sequence has {len} entries, at least 3 are needed (already converged?)"
            ),
            AnalysisError::InvalidEntry { index } => {
                write!(f, "sequence entry {index} is negative or not finite")
            }
            AnalysisError::NoUsableTriple => {
                f.write_str("no three consecutive decreasing entries above the noise floor")
            }
            AnalysisError::Config(err) => write!(f, "invalid solver input: {err}"),
        }
    }
}

impl core::error::Error for AnalysisError {}

impl From<ConfigError> for AnalysisError {
    fn from(err: ConfigError) -> Self {
        AnalysisError::Config(err)
    }
}

/// Pairing of computed approximations with reference roots.
#[derive(Debug, Clone, PartialEq)]
pub struct RootMatching {
    /// `assignment[i]` is the reference index paired with computed index `i`.
    pub assignment: Vec<usize>,
    pub max_error: f64,
    pub per_root_errors: Vec<f64>,
}

/// Pairs `computed` with `reference` so that the largest distance is as small
/// as possible (bottleneck assignment).
///
/// The search walks the sorted candidate distances by bisection and checks
/// each threshold for a perfect matching with augmenting paths, so the
/// result is exact for any degree.
pub fn match_roots(
    computed: &[Complex64],
    reference: &RootSet,
) -> Result<RootMatching, AnalysisError> {
    let n = computed.len();
    if n != reference.len() {
        return Err(AnalysisError::LengthMismatch {
            computed: n,
            reference: reference.len(),
        });
    }
    let dist: Vec<Vec<f64>> = computed
        .iter()
        .map(|z| reference.iter().map(|r| (z - r).norm()).collect())
        .collect();
    let mut candidates: Vec<f64> = dist.iter().flatten().copied().collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    let (mut lo, mut hi) = (0, candidates.len() - 1);
    let mut best = perfect_matching(&dist, candidates[hi]).expect("complete graph matches");
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match perfect_matching(&dist, candidates[mid]) {
            Some(m) => {
                best = m;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    let per_root_errors: Vec<f64> = (0..n).map(|i| dist[i][best[i]]).collect();
    let max_error = per_root_errors.iter().copied().fold(0.0, f64::max);
    Ok(RootMatching {
        assignment: best,
        max_error,
        per_root_errors,
    })
}

// Kuhn's augmenting-path matching restricted to edges with dist <= limit.
fn perfect_matching(dist: &[Vec<f64>], limit: f64) -> Option<Vec<usize>> {
    fn augment(
        i: usize,
        dist: &[Vec<f64>],
        limit: f64,
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for j in 0..dist.len() {
            if dist[i][j] <= limit && !seen[j] {
                seen[j] = true;
                if owner[j].map_or(true, |k| augment(k, dist, limit, seen, owner)) {
                    owner[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }

    let n = dist.len();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let mut seen = vec![false; n];
        if !augment(i, dist, limit, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut assignment = vec![0; n];
    for (j, i) in owner.into_iter().enumerate() {
        assignment[i.expect("perfect matching")] = j;
    }
    Some(assignment)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceKind {
    /// Max matched distance to reference roots.
    Errors,
    /// Max residual `|P(z_k)|`.
    Residuals,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderEstimate {
    /// `per_step_orders[m]` is `rho_m`, defined for interior indices whose
    /// triple strictly decreases and stays above the noise floor.
    pub per_step_orders: Vec<Option<f64>>,
    /// The last defined `rho_m`.
    pub final_order: f64,
    pub sequence_used: SequenceKind,
}

/// Computational order of convergence
/// `rho_m = ln(s_(m+1)/s_m) / ln(s_m/s_(m-1))` with the default noise floor.
pub fn estimate_order(sequence: &[f64]) -> Result<OrderEstimate, AnalysisError> {
    estimate_order_above(sequence, DEFAULT_NOISE_FLOOR, SequenceKind::Errors)
}

/// [`estimate_order`] with an explicit noise floor: `rho_m` is only defined
/// when `s_(m-1) > s_m > s_(m+1) > floor`.
pub fn estimate_order_above(
    sequence: &[f64],
    floor: f64,
    kind: SequenceKind,
) -> Result<OrderEstimate, AnalysisError> {
    if sequence.len() < 3 {
        return Err(AnalysisError::TooShort {
            len: sequence.len(),
        });
    }
    if let Some(index) = sequence.iter().position(|s| !(*s >= 0.0) || !s.is_finite()) {
        return Err(AnalysisError::InvalidEntry { index });
    }
    let mut per_step_orders = vec![None; sequence.len()];
    for m in 1..sequence.len() - 1 {
        let (prev, cur, next) = (sequence[m - 1], sequence[m], sequence[m + 1]);
        if prev > cur && cur > next && next > floor {
            per_step_orders[m] = Some(Float::ln(next / cur) / Float::ln(cur / prev));
        }
    }
    let final_order = per_step_orders
        .iter()
        .rev()
        .find_map(|r| *r)
        .ok_or(AnalysisError::NoUsableTriple)?;
    Ok(OrderEstimate {
        per_step_orders,
        final_order,
        sequence_used: kind,
    })
}

/// First-order bound on the root error attainable in binary64 with Horner
/// evaluation: `max_i eps * sum_k |a_k| |r_i|^(n-k) / |P'(r_i)|`.
pub fn attainable_accuracy(p: &Polynomial, roots: &RootSet) -> f64 {
    error_floor(p, roots, 0.0)
}

/// Smallest root error a run can resolve: per root, the larger of the Horner
/// rounding level and `residual_floor`, divided by `|P'(r_i)|`.
pub fn error_floor(p: &Polynomial, roots: &RootSet, residual_floor: f64) -> f64 {
    roots
        .iter()
        .map(|&r| {
            let modulus = r.norm();
            let magnitude = p
                .coefficients()
                .iter()
                .fold(1.0, |acc, a| acc * modulus + a.norm());
            let (_, dp) = p.eval_with_derivatives(r);
            (f64::EPSILON * magnitude).max(residual_floor) / dp.norm()
        })
        .fold(0.0, f64::max)
}

/// Each root moved by `relative * max(1, |r_i|)` in a seeded random direction.
pub fn perturbed_start(roots: &RootSet, relative: f64, seed: u64) -> IterateVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    roots
        .iter()
        .map(|&r| {
            let angle = rng.gen::<f64>() * 2.0 * PI;
            r + Complex64::from_polar(relative * r.norm().max(1.0), angle)
        })
        .collect::<Vec<_>>()
        .into()
}

/// Error history of one run from a near-root start and its order estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderStudy {
    /// `|e^(m)|`, the max matched error of iterate `m`, for `m = 0..=iterations`.
    pub errors: Vec<f64>,
    pub report: SolveReport,
    /// Noise floor used for the estimate.
    pub floor: f64,
    pub estimate: Result<OrderEstimate, AnalysisError>,
}

/// Runs `method` from `start` and estimates the order from the error
/// sequence against `roots`.
///
/// Freezing is switched off for the run (only exact zeros are held), so every
/// component keeps contracting until rounding stops it. Entries at or below
/// the larger of [`DEFAULT_NOISE_FLOOR`] and [`attainable_accuracy`] are not
/// used.
pub fn order_study(
    p: &Polynomial,
    roots: &RootSet,
    method: MethodKind,
    start: IterateVector,
    config: &SolverConfig,
) -> Result<OrderStudy, AnalysisError> {
    if start.len() != roots.len() {
        return Err(AnalysisError::LengthMismatch {
            computed: start.len(),
            reference: roots.len(),
        });
    }
    let config = SolverConfig {
        freeze_threshold: 0.0,
        ..*config
    };
    let mut errors = Vec::new();
    let report = solve_observed(p, method, start, &config, |_, z| {
        let matching = match_roots(z, roots).expect("lengths checked");
        errors.push(matching.max_error);
    })?;
    let floor = DEFAULT_NOISE_FLOOR.max(attainable_accuracy(p, roots));
    let estimate = estimate_order_above(&errors, floor, SequenceKind::Errors);
    Ok(OrderStudy {
        errors,
        report,
        floor,
        estimate,
    })
}
