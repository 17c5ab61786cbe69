//! Aberth starting points on a circle of Henrici radius.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;
use num_traits::Float;

use crate::methods::IterateVector;
use crate::poly::Polynomial;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitError {
    /// Every coefficient is zero, so `R = 0` and all points would coincide.
    DegenerateRadius,
}

impl fmt::Display for InitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitError::DegenerateRadius => {
                f.write_str("Henrici radius is zero; supply custom initial points")
            }
        }
    }
}

impl core::error::Error for InitError {}

/// Starting approximations together with the circle they sit on.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialPoints {
    pub points: Vec<Complex64>,
    pub radius: f64,
    pub center: Complex64,
}

impl From<InitialPoints> for IterateVector {
    fn from(init: InitialPoints) -> Self {
        IterateVector::new(init.points)
    }
}

/// `R = 2 max_k |a_k|^(1/k)`, the radius of a disk about the origin holding
/// every zero of the monic polynomial.
pub fn henrici_radius(p: &Polynomial) -> f64 {
    let max = p
        .coefficients()
        .iter()
        .enumerate()
        .map(|(i, a)| Float::powf(a.norm(), 1.0 / (i + 1) as f64))
        .fold(0.0, f64::max);
    2.0 * max
}

/// `z_k = -a_1/n + R exp(i pi/n (2k - 3/2))` for `k = 1..=n`.
pub fn aberth_points(p: &Polynomial) -> Result<InitialPoints, InitError> {
    let radius = henrici_radius(p);
    if radius <= 0.0 {
        return Err(InitError::DegenerateRadius);
    }
    let n = p.degree();
    let center = -p.coefficients()[0] / n as f64;
    let points = (1..=n)
        .map(|k| {
            let angle = PI / n as f64 * (2.0 * k as f64 - 1.5);
            center + Complex64::from_polar(radius, angle)
        })
        .collect();
    Ok(InitialPoints {
        points,
        radius,
        center,
    })
}
