//! Monic complex polynomials.
//!
//! A [`Polynomial`] of degree `n` stands for
//! `z^n + a_1 z^(n-1) + ... + a_(n-1) z + a_n`. The leading 1 is implicit and
//! the stored coefficients run from `a_1` down to `a_n`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

/// Errors raised while building a [`Polynomial`] or a [`RootSet`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolyError {
    /// The coefficient or root list was empty (degree 0).
    Empty,
    /// The leading coefficient was zero.
    ZeroLeading,
    /// Entry `index` has a NaN or infinite component.
    NonFinite { index: usize },
    /// Roots `first` and `second` coincide.
    DuplicateRoot { first: usize, second: usize },
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::Empty => f.write_str("polynomial must have degree at least 1"),
            PolyError::ZeroLeading => f.write_str("leading coefficient is zero"),
            PolyError::NonFinite { index } => write!(f, "entry {index} is not finite"),
            PolyError::DuplicateRoot { first, second } => {
                write!(f, "roots {first} and {second} coincide (zeros must be simple)")
            }
        }
    }
}

impl core::error::Error for PolyError {}

pub(crate) fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Monic polynomial with complex coefficients, immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Normalizes `leading * z^n + coeffs[0] z^(n-1) + ... + coeffs[n-1]` to
    /// monic form by dividing every coefficient by `leading`.
    pub fn from_coefficients(leading: Complex64, coeffs: &[Complex64]) -> Result<Self, PolyError> {
        if coeffs.is_empty() {
            return Err(PolyError::Empty);
        }
        if !is_finite(leading) {
            return Err(PolyError::NonFinite { index: 0 });
        }
        if leading == Complex64::new(0.0, 0.0) {
            return Err(PolyError::ZeroLeading);
        }
        let mut out = Vec::with_capacity(coeffs.len());
        for (i, &c) in coeffs.iter().enumerate() {
            if !is_finite(c) {
                return Err(PolyError::NonFinite { index: i + 1 });
            }
            out.push(c / leading);
        }
        Self::monic(out)
    }

    /// Builds the polynomial from already-monic coefficients `[a_1, ..., a_n]`.
    pub fn monic(coeffs: Vec<Complex64>) -> Result<Self, PolyError> {
        if coeffs.is_empty() {
            return Err(PolyError::Empty);
        }
        if let Some(index) = coeffs.iter().position(|&c| !is_finite(c)) {
            return Err(PolyError::NonFinite { index: index + 1 });
        }
        Ok(Polynomial { coeffs })
    }

    /// Expands `prod_j (z - r_j)` by repeated convolution with linear factors.
    pub fn from_roots(roots: &RootSet) -> Self {
        let n = roots.len();
        // full[k] is the coefficient of z^(m-k) after m factors; full[0] stays 1.
        let mut full = vec![Complex64::new(0.0, 0.0); n + 1];
        full[0] = Complex64::new(1.0, 0.0);
        for (m, &r) in roots.iter().enumerate() {
            for k in (1..=m + 1).rev() {
                let prev = full[k - 1];
                full[k] -= r * prev;
            }
        }
        full.remove(0);
        Polynomial { coeffs: full }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficients `[a_1, ..., a_n]`, highest power first.
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `a_n`, i.e. `P(0)`.
    pub fn constant_term(&self) -> Complex64 {
        self.coeffs[self.coeffs.len() - 1]
    }

    /// `P(z)` by Horner's scheme.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, &a| acc * z + a)
    }

    /// `(P(z), P'(z))` from a single fused Horner pass.
    pub fn eval_with_derivatives(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(1.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &a in &self.coeffs {
            dp = dp * z + p;
            p = p * z + a;
        }
        (p, dp)
    }

    /// The polynomial `q(z) = P(z + shift)`, computed by repeated synthetic
    /// division (Taylor shift). `q` is monic of the same degree.
    pub fn shifted(&self, shift: Complex64) -> Self {
        let n = self.degree();
        let mut full = Vec::with_capacity(n + 1);
        full.push(Complex64::new(1.0, 0.0));
        full.extend_from_slice(&self.coeffs);
        for i in 0..n {
            for j in 1..=n - i {
                let prev = full[j - 1];
                full[j] += shift * prev;
            }
        }
        full.remove(0);
        Polynomial { coeffs: full }
    }
}

/// A list of pairwise distinct, finite roots.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    roots: Vec<Complex64>,
}

impl RootSet {
    pub fn new(roots: Vec<Complex64>) -> Result<Self, PolyError> {
        if roots.is_empty() {
            return Err(PolyError::Empty);
        }
        if let Some(index) = roots.iter().position(|&r| !is_finite(r)) {
            return Err(PolyError::NonFinite { index });
        }
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                if roots[i] == roots[j] {
                    return Err(PolyError::DuplicateRoot { first: i, second: j });
                }
            }
        }
        Ok(RootSet { roots })
    }

    /// Real roots, convenient for the Wilkinson-type test cases.
    pub fn real(roots: &[f64]) -> Result<Self, PolyError> {
        Self::new(roots.iter().map(|&r| Complex64::new(r, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.roots
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Complex64> {
        self.roots.iter()
    }

    pub fn min_separation(&self) -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..self.roots.len() {
            for j in i + 1..self.roots.len() {
                best = best.min((self.roots[i] - self.roots[j]).norm());
            }
        }
        best
    }
}

/// The four test polynomials, in order P1, P2, P3, P4.
///
/// P1-P3 are `(z-1)...(z-n)` for `n = 4, 5, 6` and carry their roots. P4 is
/// `z^8 + 5z^7 + 3z^6 + 7z^5 + 6z^4 + 8z^3 + z^2 + 3z + 7`, with no closed-form
/// roots.
pub fn builtin_suite() -> Vec<(Polynomial, Option<RootSet>)> {
    let mut suite = Vec::with_capacity(4);
    for n in 4..=6 {
        let roots: Vec<f64> = (1..=n).map(f64::from).collect();
        let roots = RootSet::real(&roots).expect("integer roots are distinct");
        suite.push((Polynomial::from_roots(&roots), Some(roots)));
    }
    let p4 = [5.0, 3.0, 7.0, 6.0, 8.0, 1.0, 3.0, 7.0]
        .iter()
        .map(|&a| Complex64::new(a, 0.0))
        .collect();
    suite.push((Polynomial::monic(p4).expect("finite coefficients"), None));
    suite
}

/// Names used for the built-in polynomials, aligned with [`builtin_suite`].
pub const BUILTIN_NAMES: [&str; 4] = ["P1", "P2", "P3", "P4"];

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    // Schoolbook convolution of the full coefficient lists.
    fn convolve(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![c(0.0); a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    fn expand(roots: &[f64]) -> Vec<Complex64> {
        roots
            .iter()
            .fold(vec![c(1.0)], |acc, &r| convolve(&acc, &[c(1.0), c(-r)]))
    }

    #[test]
    fn convolution_oracle_gives_p1() {
        assert_eq!(expand(&[1.0, 2.0, 3.0, 4.0]), [1.0, -10.0, 35.0, -50.0, 24.0].map(c));
    }

    #[test]
    fn from_coefficients_p1() {
        let full = expand(&[1.0, 2.0, 3.0, 4.0]);
        let p = Polynomial::from_coefficients(full[0], &full[1..]).unwrap();
        assert_eq!(p.degree(), 4);
        assert_eq!(p.coefficients(), &[-10.0, 35.0, -50.0, 24.0].map(c));
    }

    #[test]
    fn from_coefficients_scales_by_leading() {
        let p = Polynomial::from_coefficients(c(2.0), &[c(-2.0)]).unwrap();
        assert_eq!(p.coefficients(), &[c(-1.0)]);
    }

    #[test]
    fn from_coefficients_errors() {
        assert_eq!(
            Polynomial::from_coefficients(c(0.0), &[c(1.0)]),
            Err(PolyError::ZeroLeading)
        );
        assert_eq!(Polynomial::from_coefficients(c(1.0), &[]), Err(PolyError::Empty));
        assert_eq!(
            Polynomial::from_coefficients(c(1.0), &[c(1.0), c(f64::NAN)]),
            Err(PolyError::NonFinite { index: 2 })
        );
        assert_eq!(
            Polynomial::from_coefficients(Complex64::new(1.0, f64::INFINITY), &[c(1.0)]),
            Err(PolyError::NonFinite { index: 0 })
        );
    }

    #[test]
    fn from_roots_matches_convolution() {
        let p = Polynomial::from_roots(&RootSet::real(&[1.0, 2.0, 3.0, 4.0]).unwrap());
        assert_eq!(p.coefficients(), &expand(&[1.0, 2.0, 3.0, 4.0])[1..]);
        // cross-check against the factored form
        assert_eq!(p.eval(c(0.0)), c(24.0));
        assert_eq!(p.eval(c(5.0)), c(24.0));
    }

    #[test]
    fn from_roots_single_and_degree_five() {
        let r = Complex64::new(0.5, -2.0);
        let p = Polynomial::from_roots(&RootSet::new(vec![r]).unwrap());
        assert_eq!(p.coefficients(), &[-r]);

        let p = Polynomial::from_roots(&RootSet::real(&[1.0, 2.0, 3.0, 4.0, 5.0]).unwrap());
        assert_eq!(p.degree(), 5);
        assert_eq!(p.eval(c(0.0)), c(-120.0));
    }

    #[test]
    fn root_set_rejects_duplicates() {
        assert_eq!(
            RootSet::real(&[1.0, 2.0, 1.0]),
            Err(PolyError::DuplicateRoot { first: 0, second: 2 })
        );
        assert_eq!(RootSet::real(&[]), Err(PolyError::Empty));
    }

    #[test]
    fn eval_p1_examples() {
        let (p1, _) = builtin_suite().remove(0);
        assert_eq!(p1.eval(c(1.0)), c(0.0));
        assert_eq!(p1.eval(c(0.0)), c(24.0));
        assert_eq!(p1.eval(c(5.0)), c(24.0));
    }

    #[test]
    fn eval_with_derivatives_examples() {
        let p = Polynomial::monic(vec![c(0.0), c(-1.0)]).unwrap();
        assert_eq!(p.eval_with_derivatives(c(2.0)), (c(3.0), c(4.0)));

        let (p1, _) = builtin_suite().remove(0);
        assert_eq!(p1.eval_with_derivatives(c(1.0)), (c(0.0), c(-6.0)));

        for (p, _) in builtin_suite() {
            let n = p.degree();
            let a = p.coefficients();
            assert_eq!(p.eval_with_derivatives(c(0.0)), (a[n - 1], a[n - 2]));
        }
    }

    #[test]
    fn builtin_suite_shape() {
        let suite = builtin_suite();
        assert_eq!(suite.len(), 4);
        assert_eq!(
            suite[0].1.as_ref().unwrap().as_slice(),
            &[1.0, 2.0, 3.0, 4.0].map(c)
        );
        assert_eq!(suite[3].0.degree(), 8);
        assert_eq!(suite[3].0.constant_term(), c(7.0));
        assert!(suite[3].1.is_none());
        for (p, roots) in &suite {
            if let Some(roots) = roots {
                for &r in roots.iter() {
                    assert!(p.eval(r).norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn shift_matches_direct_evaluation() {
        let (p4, _) = builtin_suite().remove(3);
        let shift = Complex64::new(0.3, -0.7);
        let q = p4.shifted(shift);
        for z in [c(0.0), Complex64::new(1.0, 1.0), c(-2.0)] {
            let lhs = q.eval(z);
            let rhs = p4.eval(z + shift);
            assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1.0));
        }
    }
}
