//! Iteration driver with the max-residual stopping rule.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::methods::{step_with, IterateVector, MethodKind, StepError, StepParams};
use crate::poly::{is_finite, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Stop once `max_k |P(z_k)| < tolerance`.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Relative collision threshold (see [`StepParams::collision`]).
    pub collision_threshold: f64,
    /// Relative freeze threshold (see [`StepParams::freeze`]).
    pub freeze_threshold: f64,
    /// Absolute denominator floor (see [`StepParams::denominator_floor`]).
    pub denominator_floor: f64,
    /// Any `|z_i|` above this ends the run as `Diverged`.
    pub divergence_ceiling: f64,
    /// On a collision, perturb by relative 1e-8 and retry the step once.
    pub jitter_on_collision: bool,
    pub jitter_seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        let step = StepParams::default();
        SolverConfig {
            tolerance: 1e-10,
            max_iterations: 100,
            collision_threshold: step.collision,
            freeze_threshold: step.freeze,
            denominator_floor: step.denominator_floor,
            divergence_ceiling: 1e12,
            jitter_on_collision: false,
            jitter_seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConfigError {
    Tolerance,
    MaxIterations,
    Thresholds,
    DivergenceCeiling,
    /// The initial vector length differs from the degree.
    InitLength { expected: usize, found: usize },
    /// The initial vector holds a NaN or infinity.
    InitNonFinite,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Tolerance => f.write_str("tolerance must be positive and finite"),
            ConfigError::MaxIterations => f.write_str("max_iterations must be at least 1"),
            ConfigError::Thresholds => f.write_str("thresholds must be non-negative"),
            ConfigError::DivergenceCeiling => {
                f.write_str("divergence ceiling must exceed the tolerance")
            }
            ConfigError::InitLength { expected, found } => {
                write!(f, "expected {expected} initial points, found {found}")
            }
            ConfigError::InitNonFinite => f.write_str("initial points must be finite"),
        }
    }
}

impl core::error::Error for ConfigError {}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.tolerance > 0.0) || !self.tolerance.is_finite() {
            return Err(ConfigError::Tolerance);
        }
        if self.max_iterations == 0 {
            return Err(ConfigError::MaxIterations);
        }
        let thresholds = [
            self.collision_threshold,
            self.freeze_threshold,
            self.denominator_floor,
        ];
        if thresholds.iter().any(|t| !(*t >= 0.0)) {
            return Err(ConfigError::Thresholds);
        }
        if !(self.divergence_ceiling > self.tolerance) {
            return Err(ConfigError::DivergenceCeiling);
        }
        Ok(())
    }

    pub fn step_params(&self) -> StepParams {
        StepParams {
            collision: self.collision_threshold,
            freeze: self.freeze_threshold,
            denominator_floor: self.denominator_floor,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolveStatus {
    Converged,
    MaxIterations,
    Collision,
    Breakdown,
    Diverged,
}

impl SolveStatus {
    pub fn name(self) -> &'static str {
        match self {
            SolveStatus::Converged => "Converged",
            SolveStatus::MaxIterations => "MaxIterations",
            SolveStatus::Collision => "Collision",
            SolveStatus::Breakdown => "Breakdown",
            SolveStatus::Diverged => "Diverged",
        }
    }
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for SolveStatus {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        [
            SolveStatus::Converged,
            SolveStatus::MaxIterations,
            SolveStatus::Collision,
            SolveStatus::Breakdown,
            SolveStatus::Diverged,
        ]
        .into_iter()
        .find(|st| st.name() == s)
        .ok_or(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub status: SolveStatus,
    /// Completed steps `m`.
    pub iterations: usize,
    pub final_points: IterateVector,
    /// `max_k |P(z_k^(m))|` for `m = 0..=iterations`.
    pub residual_history: Vec<f64>,
    /// `|P(z_k)|` at the final points.
    pub per_root_residuals: Vec<f64>,
    /// The step error that ended a `Collision` or `Breakdown` run.
    pub failure: Option<StepError>,
}

impl SolveReport {
    /// Max residual at the returned points.
    pub fn final_residual(&self) -> f64 {
        *self.residual_history.last().expect("history holds iteration 0")
    }

    /// Max residual one step before the stop, if any step was taken.
    pub fn previous_residual(&self) -> Option<f64> {
        let n = self.residual_history.len();
        (n >= 2).then(|| self.residual_history[n - 2])
    }
}

/// `max_k |P(z_k)|`.
pub fn residual_max(p: &Polynomial, z: &[Complex64]) -> f64 {
    z.iter().map(|&zk| p.eval(zk).norm()).fold(0.0, f64::max)
}

/// Runs `method` from `init` until the residual test passes or the run fails.
pub fn solve(
    p: &Polynomial,
    method: MethodKind,
    init: IterateVector,
    config: &SolverConfig,
) -> Result<SolveReport, ConfigError> {
    solve_observed(p, method, init, config, |_, _| {})
}

/// [`solve`], calling `observe(m, z^(m))` for the initial vector and after
/// every accepted step.
pub fn solve_observed<F>(
    p: &Polynomial,
    method: MethodKind,
    init: IterateVector,
    config: &SolverConfig,
    mut observe: F,
) -> Result<SolveReport, ConfigError>
where
    F: FnMut(usize, &IterateVector),
{
    config.validate()?;
    if init.len() != p.degree() {
        return Err(ConfigError::InitLength {
            expected: p.degree(),
            found: init.len(),
        });
    }
    if !init.iter().all(|&z| is_finite(z)) {
        return Err(ConfigError::InitNonFinite);
    }

    let params = config.step_params();
    let mut rng = ChaCha8Rng::seed_from_u64(config.jitter_seed);
    let mut z = init;
    let mut history = Vec::with_capacity(config.max_iterations.min(256) + 1);
    history.push(residual_max(p, &z));
    observe(0, &z);

    let mut status = SolveStatus::MaxIterations;
    let mut failure = None;
    let mut m = 0;
    if history[0] < config.tolerance {
        status = SolveStatus::Converged;
    } else {
        while m < config.max_iterations {
            let mut result = step_with(method, p, &z, &params);
            if config.jitter_on_collision && matches!(result, Err(StepError::Collision { .. })) {
                jitter(&mut z, &mut rng);
                result = step_with(method, p, &z, &params);
            }
            let next = match result {
                Ok(next) => next,
                Err(err) => {
                    status = match err {
                        StepError::Collision { .. } => SolveStatus::Collision,
                        _ => SolveStatus::Breakdown,
                    };
                    failure = Some(err);
                    break;
                }
            };
            z = next;
            m += 1;
            let residual = residual_max(p, &z);
            history.push(residual);
            observe(m, &z);
            if z.max_modulus() > config.divergence_ceiling {
                status = SolveStatus::Diverged;
                break;
            }
            if !residual.is_finite() {
                status = SolveStatus::Breakdown;
                break;
            }
            if residual < config.tolerance {
                status = SolveStatus::Converged;
                break;
            }
        }
    }

    let per_root_residuals = z.iter().map(|&zk| p.eval(zk).norm()).collect();
    Ok(SolveReport {
        status,
        iterations: m,
        final_points: z,
        residual_history: history,
        per_root_residuals,
        failure,
    })
}

// Relative 1e-8 random displacement of every component.
fn jitter(z: &mut IterateVector, rng: &mut ChaCha8Rng) {
    for v in z.as_mut_slice() {
        let angle = rng.gen::<f64>() * 2.0 * PI;
        *v += Complex64::from_polar(1e-8 * v.norm().max(1.0), angle);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::init::aberth_points;
    use crate::poly::builtin_suite;
    use alloc::vec;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn residual_examples() {
        let p = Polynomial::monic(vec![c(0.0), c(-1.0)]).unwrap();
        assert_eq!(residual_max(&p, &[c(2.0), c(-2.0)]), 3.0);
        for (p, roots) in builtin_suite() {
            if let Some(roots) = roots {
                assert!(residual_max(&p, roots.as_slice()) <= 1e-9);
            }
        }
    }

    #[test]
    fn residual_matches_factored_form_on_aberth_points() {
        let (p1, _) = builtin_suite().remove(0);
        let z = aberth_points(&p1).unwrap().points;
        let oracle = z
            .iter()
            .map(|&zk| (1..=4).fold(c(1.0), |acc, r| acc * (zk - c(r as f64))).norm())
            .fold(0.0, f64::max);
        assert!((residual_max(&p1, &z) - oracle).abs() <= 1e-12 * oracle);
    }

    #[test]
    fn exact_roots_stop_immediately() {
        for (p, roots) in builtin_suite() {
            let Some(roots) = roots else { continue };
            for method in MethodKind::ALL {
                let init = IterateVector::new(roots.as_slice().to_vec());
                let report = solve(&p, method, init, &SolverConfig::default()).unwrap();
                assert_eq!(report.status, SolveStatus::Converged);
                assert_eq!(report.iterations, 0);
                assert_eq!(report.residual_history.len(), 1);
                assert_eq!(report.previous_residual(), None);
            }
        }
    }

    #[test]
    fn history_length_and_converged_invariant() {
        let (p1, _) = builtin_suite().remove(0);
        for method in MethodKind::ALL {
            let init = aberth_points(&p1).unwrap().into();
            let report = solve(&p1, method, init, &SolverConfig::default()).unwrap();
            assert_eq!(report.status, SolveStatus::Converged);
            assert_eq!(report.residual_history.len(), report.iterations + 1);
            assert!(report.final_residual() < 1e-10);
            assert!(report.previous_residual().unwrap() >= 1e-10);
        }
    }

    #[test]
    fn max_iterations_status() {
        let (p1, _) = builtin_suite().remove(0);
        let config = SolverConfig {
            max_iterations: 2,
            ..SolverConfig::default()
        };
        let init = aberth_points(&p1).unwrap().into();
        let report = solve(&p1, MethodKind::Wlm, init, &config).unwrap();
        assert_eq!(report.status, SolveStatus::MaxIterations);
        assert_eq!(report.iterations, 2);
        assert_eq!(report.residual_history.len(), 3);
    }

    #[test]
    fn collision_status_and_jitter_retry() {
        let p = Polynomial::monic(vec![c(0.0), c(-1.0)]).unwrap();
        let init = IterateVector::new(vec![c(0.5), c(0.5)]);
        let report = solve(&p, MethodKind::Wlm, init.clone(), &SolverConfig::default()).unwrap();
        assert_eq!(report.status, SolveStatus::Collision);
        assert_eq!(report.iterations, 0);
        assert!(matches!(report.failure, Some(StepError::Collision { .. })));

        let config = SolverConfig {
            jitter_on_collision: true,
            ..SolverConfig::default()
        };
        let report = solve(&p, MethodKind::Wlm, init, &config).unwrap();
        assert_ne!(report.status, SolveStatus::Collision);
        assert!(report.iterations >= 1);
    }

    #[test]
    fn divergence_is_detected() {
        let p = Polynomial::monic(vec![c(0.0), c(-1.0)]).unwrap();
        // a tiny separation makes W_i enormous on the first step
        let init = IterateVector::new(vec![c(0.5), c(0.5 + 1e-9)]);
        let config = SolverConfig {
            divergence_ceiling: 1e6,
            ..SolverConfig::default()
        };
        let report = solve(&p, MethodKind::Wlm, init, &config).unwrap();
        assert_eq!(report.status, SolveStatus::Diverged);
        assert_eq!(report.iterations, 1);
    }

    #[test]
    fn config_validation() {
        let p = Polynomial::monic(vec![c(0.0), c(-1.0)]).unwrap();
        let init = || IterateVector::new(vec![c(2.0), c(-2.0)]);
        let bad = [
            SolverConfig {
                tolerance: 0.0,
                ..SolverConfig::default()
            },
            SolverConfig {
                max_iterations: 0,
                ..SolverConfig::default()
            },
            SolverConfig {
                divergence_ceiling: 1e-12,
                ..SolverConfig::default()
            },
            SolverConfig {
                freeze_threshold: f64::NAN,
                ..SolverConfig::default()
            },
        ];
        for config in bad {
            assert!(solve(&p, MethodKind::Wlm, init(), &config).is_err());
        }
        assert_eq!(
            solve(&p, MethodKind::Wlm, IterateVector::new(vec![c(1.0)]), &SolverConfig::default()),
            Err(ConfigError::InitLength { expected: 2, found: 1 })
        );
    }

    #[test]
    fn loose_tolerance_stops_at_zero() {
        for (p, _) in builtin_suite() {
            let config = SolverConfig {
                tolerance: 1e300,
                divergence_ceiling: f64::INFINITY,
                ..SolverConfig::default()
            };
            let init = aberth_points(&p).unwrap().into();
            let report = solve(&p, MethodKind::Method3, init, &config).unwrap();
            assert_eq!(report.iterations, 0);
        }
    }
}
