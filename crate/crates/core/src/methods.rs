//! The Weierstrass correction and the six simultaneous one-step maps.
//!
//! Every map is a Jacobi (total-step) update: each new component is computed
//! from the old vector only. With `W_i = P(z_i) / prod_{j != i} (z_i - z_j)`
//! and the derivative-free correction `D_i = W_i / (1 - P(z_i - W_i)/P(z_i))`:
//!
//! | method    | update `z_i -> ...`                                     |
//! |-----------|---------------------------------------------------------|
//! | `Wlm`     | `z_i - W_i`                                             |
//! | `Dfm`     | `z_i - D_i`                                             |
//! | `Nwm`     | `z_i - P(z_i) / P'(z_i - W_i/2)`                        |
//! | `Method1` | `z_i - 2P(z_i) / (P'(z_i) + P'(z_i - W_i))`             |
//! | `Method2` | `z_i - 2P(z_i) / (P'(z_i) + P'(z_i - D_i))`             |
//! | `Method3` | `z_i - P(z_i) / P'(z_i - D_i/2)`                        |

use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;
use core::str::FromStr;

use num_complex::Complex64;

use crate::poly::{is_finite, Polynomial};

/// Current approximations `z_1, ..., z_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct IterateVector(Vec<Complex64>);

impl IterateVector {
    pub fn new(values: Vec<Complex64>) -> Self {
        IterateVector(values)
    }

    pub fn into_inner(self) -> Vec<Complex64> {
        self.0
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.0
    }

    pub fn max_modulus(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl Deref for IterateVector {
    type Target = [Complex64];

    fn deref(&self) -> &[Complex64] {
        &self.0
    }
}

impl From<Vec<Complex64>> for IterateVector {
    fn from(values: Vec<Complex64>) -> Self {
        IterateVector(values)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MethodKind {
    Method1,
    Method2,
    Method3,
    Dfm,
    Nwm,
    Wlm,
}

impl MethodKind {
    /// All six methods in benchmark column order.
    pub const ALL: [MethodKind; 6] = [
        MethodKind::Method1,
        MethodKind::Method2,
        MethodKind::Method3,
        MethodKind::Dfm,
        MethodKind::Nwm,
        MethodKind::Wlm,
    ];

    /// Short CLI name: `m1`, `m2`, `m3`, `dfm`, `nwm`, `wlm`.
    pub fn name(self) -> &'static str {
        match self {
            MethodKind::Method1 => "m1",
            MethodKind::Method2 => "m2",
            MethodKind::Method3 => "m3",
            MethodKind::Dfm => "dfm",
            MethodKind::Nwm => "nwm",
            MethodKind::Wlm => "wlm",
        }
    }

    /// Column heading as used in the benchmark grid.
    pub fn label(self) -> &'static str {
        match self {
            MethodKind::Method1 => "Method 1",
            MethodKind::Method2 => "Method 2",
            MethodKind::Method3 => "Method 3",
            MethodKind::Dfm => "DFM",
            MethodKind::Nwm => "NWM",
            MethodKind::Wlm => "WLM",
        }
    }
}

impl fmt::Display for MethodKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseMethodError;

impl fmt::Display for ParseMethodError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown method (expected one of wlm, dfm, nwm, m1, m2, m3)")
    }
}

impl core::error::Error for ParseMethodError {}

impl FromStr for MethodKind {
    type Err = ParseMethodError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MethodKind::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or(ParseMethodError)
    }
}

/// Sub-expression whose denominator vanished.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubExpression {
    /// `1 - P(z_i - W_i) / P(z_i)` or the `P(z_i)` it divides by.
    DerivativeFreeRatio,
    /// `P'(z_i) + P'(...)` in the trapezoidal forms.
    TrapezoidalDenominator,
    /// `P'(...)` at the midpoint in NWM and Method 3.
    MidpointDerivative,
}

impl fmt::Display for SubExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubExpression::DerivativeFreeRatio => "derivative-free ratio",
            SubExpression::TrapezoidalDenominator => "trapezoidal denominator",
            SubExpression::MidpointDerivative => "midpoint derivative",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepError {
    /// Iterate length differs from the polynomial degree.
    LengthMismatch { expected: usize, found: usize },
    /// `|z_first - z_second|` fell below the collision threshold.
    Collision { first: usize, second: usize },
    /// A denominator vanished at a component that is not yet converged.
    VanishingDenominator { component: usize, expr: SubExpression },
    /// A NaN or infinity appeared while updating `component`.
    NonFinite { component: usize },
}

impl fmt::Display for StepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepError::LengthMismatch { expected, found } => {
                write!(f, "expected {expected} approximations, found {found}")
            }
            StepError::Collision { first, second } => {
                write!(f, "approximations {first} and {second} collided")
            }
            StepError::VanishingDenominator { component, expr } => {
                write!(f, "{expr} vanished at component {component}")
            }
            StepError::NonFinite { component } => {
                write!(f, "non-finite value at component {component}")
            }
        }
    }
}

impl core::error::Error for StepError {}

/// Numerical guards applied by [`step_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepParams {
    /// Relative collision threshold; the effective value is
    /// `collision * (1 + max_i |z_i|)`.
    pub collision: f64,
    /// Relative freeze threshold; a component with
    /// `|P(z_i)| < freeze * max(1, |a_n|)` is held fixed.
    pub freeze: f64,
    /// Absolute floor on denominator moduli.
    pub denominator_floor: f64,
}

impl Default for StepParams {
    fn default() -> Self {
        StepParams {
            collision: 1e-12,
            freeze: 1e-13,
            denominator_floor: 1e-290,
        }
    }
}

impl StepParams {
    fn collision_threshold(&self, z: &[Complex64]) -> f64 {
        let max = z.iter().map(|v| v.norm()).fold(0.0, f64::max);
        self.collision * (1.0 + max)
    }

    fn freeze_threshold(&self, p: &Polynomial) -> f64 {
        self.freeze * p.constant_term().norm().max(1.0)
    }
}

fn check_collisions(z: &[Complex64], threshold: f64) -> Result<(), StepError> {
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            if (z[i] - z[j]).norm() < threshold {
                return Err(StepError::Collision { first: i, second: j });
            }
        }
    }
    Ok(())
}

fn check_len(p: &Polynomial, z: &[Complex64]) -> Result<(), StepError> {
    if z.len() != p.degree() {
        return Err(StepError::LengthMismatch {
            expected: p.degree(),
            found: z.len(),
        });
    }
    Ok(())
}

fn weierstrass_denominator(z: &[Complex64], i: usize) -> Complex64 {
    z.iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .fold(Complex64::new(1.0, 0.0), |acc, (_, &zj)| acc * (z[i] - zj))
}

/// `W_i = P(z_i) / prod_{j != i} (z_i - z_j)` for every component.
pub fn weierstrass_corrections(
    p: &Polynomial,
    z: &[Complex64],
    params: &StepParams,
) -> Result<Vec<Complex64>, StepError> {
    check_len(p, z)?;
    check_collisions(z, params.collision_threshold(z))?;
    Ok((0..z.len())
        .map(|i| p.eval(z[i]) / weierstrass_denominator(z, i))
        .collect())
}

/// One step of `method` with the default guards.
pub fn step(
    method: MethodKind,
    p: &Polynomial,
    z: &IterateVector,
) -> Result<IterateVector, StepError> {
    step_with(method, p, z, &StepParams::default())
}

/// One Jacobi step of `method`. Components already satisfying the freeze
/// test are copied through unchanged but still enter the other components'
/// Weierstrass products.
pub fn step_with(
    method: MethodKind,
    p: &Polynomial,
    z: &IterateVector,
    params: &StepParams,
) -> Result<IterateVector, StepError> {
    check_len(p, z)?;
    check_collisions(z, params.collision_threshold(z))?;
    let freeze = params.freeze_threshold(p);
    let floor = params.denominator_floor;
    let guard = |d: Complex64, component: usize, expr: SubExpression| {
        if d.norm() < floor {
            Err(StepError::VanishingDenominator { component, expr })
        } else {
            Ok(d)
        }
    };

    let mut next = Vec::with_capacity(z.len());
    for (i, &zi) in z.iter().enumerate() {
        let (pz, dpz) = p.eval_with_derivatives(zi);
        if pz.norm() < freeze || pz == Complex64::new(0.0, 0.0) {
            next.push(zi);
            continue;
        }
        let w = pz / weierstrass_denominator(z, i);
        // D_i = W_i / (1 - P(z_i - W_i) / P(z_i))
        let derivative_free = || -> Result<Complex64, StepError> {
            let pz = guard(pz, i, SubExpression::DerivativeFreeRatio)?;
            let ratio = Complex64::new(1.0, 0.0) - p.eval(zi - w) / pz;
            Ok(w / guard(ratio, i, SubExpression::DerivativeFreeRatio)?)
        };
        let trapezoid = |shift: Complex64| -> Result<Complex64, StepError> {
            let (_, dq) = p.eval_with_derivatives(zi - shift);
            let den = guard(dpz + dq, i, SubExpression::TrapezoidalDenominator)?;
            Ok(zi - 2.0 * pz / den)
        };
        let midpoint = |shift: Complex64| -> Result<Complex64, StepError> {
            let (_, dq) = p.eval_with_derivatives(zi - 0.5 * shift);
            Ok(zi - pz / guard(dq, i, SubExpression::MidpointDerivative)?)
        };
        let zi_new = match method {
            MethodKind::Wlm => zi - w,
            MethodKind::Dfm => zi - derivative_free()?,
            MethodKind::Nwm => midpoint(w)?,
            MethodKind::Method1 => trapezoid(w)?,
            MethodKind::Method2 => trapezoid(derivative_free()?)?,
            MethodKind::Method3 => midpoint(derivative_free()?)?,
        };
        if !is_finite(zi_new) {
            return Err(StepError::NonFinite { component: i });
        }
        next.push(zi_new);
    }
    Ok(IterateVector(next))
}

/// Relative residual of the interpolation identity
/// `P(t) = (1 + sum_j W_j / (t - z_j)) * prod_j (t - z_j)`,
/// i.e. `|lhs - rhs| / max(1, |lhs|)`.
pub fn lagrange_identity_residual(
    p: &Polynomial,
    z: &[Complex64],
    t: Complex64,
    params: &StepParams,
) -> Result<f64, StepError> {
    let w = weierstrass_corrections(p, z, params)?;
    let threshold = params.collision_threshold(z);
    if let Some(j) = z.iter().position(|&zj| (t - zj).norm() < threshold) {
        return Err(StepError::Collision {
            first: j,
            second: z.len(),
        });
    }
    let sum = w
        .iter()
        .zip(z)
        .fold(Complex64::new(1.0, 0.0), |acc, (&wj, &zj)| acc + wj / (t - zj));
    let prod = z
        .iter()
        .fold(Complex64::new(1.0, 0.0), |acc, &zj| acc * (t - zj));
    let lhs = p.eval(t);
    Ok((lhs - sum * prod).norm() / lhs.norm().max(1.0))
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

    fn z2_minus_1() -> Polynomial {
        Polynomial::monic(vec![c(0.0), c(-1.0)]).unwrap()
    }

    #[test]
    fn method_names_round_trip() {
        for m in MethodKind::ALL {
            assert_eq!(m.name().parse::<MethodKind>(), Ok(m));
        }
        assert_eq!("M3".parse::<MethodKind>(), Ok(MethodKind::Method3));
        assert_eq!("WLM".parse::<MethodKind>(), Ok(MethodKind::Wlm));
        assert!("newton".parse::<MethodKind>().is_err());
    }

    #[test]
    fn weierstrass_quadratic() {
        let w = weierstrass_corrections(&z2_minus_1(), &[c(2.0), c(-2.0)], &StepParams::default())
            .unwrap();
        assert_eq!(w, vec![c(0.75), c(-0.75)]);
    }

    #[test]
    fn weierstrass_zero_at_exact_root() {
        let (p1, _) = builtin_suite().remove(0);
        let z = [c(1.0), c(7.0), Complex64::new(0.0, 3.0), c(-2.0)];
        let w = weierstrass_corrections(&p1, &z, &StepParams::default()).unwrap();
        assert_eq!(w[0], c(0.0));
        assert!(w[1..].iter().all(|v| v.norm() > 0.0));
    }

    #[test]
    fn weierstrass_matches_direct_product_on_aberth_points() {
        let (p1, roots) = builtin_suite().remove(0);
        let roots = roots.unwrap();
        let z = aberth_points(&p1).unwrap().points;
        let w = weierstrass_corrections(&p1, &z, &StepParams::default()).unwrap();
        for i in 0..z.len() {
            // P from its factored form, denominator from an independent loop
            let mut num = c(1.0);
            for &r in roots.iter() {
                num *= z[i] - r;
            }
            let mut den = c(1.0);
            for j in 0..z.len() {
                if j != i {
                    den *= z[i] - z[j];
                }
            }
            let oracle = num / den;
            assert!((w[i] - oracle).norm() <= 1e-12 * oracle.norm());
        }
    }

    #[test]
    fn collisions_are_reported() {
        let p = z2_minus_1();
        let z = [c(0.5), c(0.5 + 1e-14)];
        assert_eq!(
            weierstrass_corrections(&p, &z, &StepParams::default()),
            Err(StepError::Collision { first: 0, second: 1 })
        );
        assert_eq!(
            step(MethodKind::Method1, &p, &IterateVector::new(z.to_vec())),
            Err(StepError::Collision { first: 0, second: 1 })
        );
    }

    #[test]
    fn length_mismatch() {
        let p = z2_minus_1();
        assert_eq!(
            step(MethodKind::Wlm, &p, &IterateVector::new(vec![c(1.0)])),
            Err(StepError::LengthMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn wlm_and_method1_on_quadratic() {
        let p = z2_minus_1();
        let z = IterateVector::new(vec![c(2.0), c(-2.0)]);
        let wlm = step(MethodKind::Wlm, &p, &z).unwrap();
        assert_eq!(&*wlm, &[c(1.25), c(-1.25)]);

        // 2 - 2*3 / (P'(2) + P'(1.25)) = 2 - 6/6.5
        let m1 = step(MethodKind::Method1, &p, &z).unwrap();
        assert!((m1[0] - c(2.0 - 6.0 / 6.5)).norm() < 1e-15);
        assert!((m1[0].re - 1.076923).abs() < 1e-6);
        assert!((m1[1] + m1[0]).norm() < 1e-15);
    }

    // Hand-expanded formulas on z^2 - 1 at (2, -2): W_1 = 0.75, P(2) = 3,
    // P(1.25) = 0.5625, so D_1 = 0.75 / (1 - 0.1875) = 12/13.
    #[test]
    fn derivative_free_family_on_quadratic() {
        let p = z2_minus_1();
        let z = IterateVector::new(vec![c(2.0), c(-2.0)]);
        let d = 12.0 / 13.0;
        let cases = [
            (MethodKind::Dfm, 2.0 - d),
            (MethodKind::Nwm, 2.0 - 3.0 / (2.0 * (2.0 - 0.375))),
            (MethodKind::Method2, 2.0 - 6.0 / (4.0 + 2.0 * (2.0 - d))),
            (MethodKind::Method3, 2.0 - 3.0 / (2.0 * (2.0 - d / 2.0))),
        ];
        for (method, want) in cases {
            let out = step(method, &p, &z).unwrap();
            assert!((out[0] - c(want)).norm() < 1e-14, "{method}: {}", out[0]);
            assert!((out[1] + c(want)).norm() < 1e-14, "{method}: {}", out[1]);
        }
    }

    #[test]
    fn exact_roots_are_fixed_points() {
        for (p, roots) in builtin_suite() {
            let Some(roots) = roots else { continue };
            let z = IterateVector::new(roots.as_slice().to_vec());
            for method in MethodKind::ALL {
                assert_eq!(step(method, &p, &z).unwrap(), z);
            }
        }
    }

    #[test]
    fn frozen_component_passes_through() {
        let (p1, _) = builtin_suite().remove(0);
        let z = IterateVector::new(vec![c(1.0 + 1e-16), c(2.1), c(2.9), c(4.2)]);
        for method in MethodKind::ALL {
            let out = step(method, &p1, &z).unwrap();
            assert_eq!(out[0], z[0]);
            assert_ne!(out[1], z[1]);
        }
    }

    #[test]
    fn vanishing_ratio_is_reported() {
        // On z^2 - 1 with z_2 = 0.5, W_1 = 2 z_1 when z_1^2 - z_1 + 1 = 0. Then
        // z_1 - W_1 = -z_1 and P(-z_1) = P(z_1), so 1 - P(z_1 - W_1)/P(z_1) = 0.
        let p = z2_minus_1();
        let z1 = Complex64::new(0.5, num_traits::Float::sqrt(0.75));
        let z = IterateVector::new(vec![z1, c(0.5)]);
        let params = StepParams {
            denominator_floor: 1e-12,
            ..StepParams::default()
        };
        for method in [MethodKind::Dfm, MethodKind::Method2, MethodKind::Method3] {
            assert_eq!(
                step_with(method, &p, &z, &params),
                Err(StepError::VanishingDenominator {
                    component: 0,
                    expr: SubExpression::DerivativeFreeRatio
                })
            );
        }
        assert!(step_with(MethodKind::Wlm, &p, &z, &params).is_ok());
    }

    #[test]
    fn lagrange_identity_on_aberth_points() {
        let (p1, _) = builtin_suite().remove(0);
        let z = aberth_points(&p1).unwrap().points;
        let r = lagrange_identity_residual(&p1, &z, c(0.0), &StepParams::default()).unwrap();
        assert!(r <= 1e-10, "{r}");
        assert!(matches!(
            lagrange_identity_residual(&p1, &z, z[2], &StepParams::default()),
            Err(StepError::Collision { first: 2, .. })
        ));
    }
}
