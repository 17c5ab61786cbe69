//! Simultaneous iterative methods for all simple zeros of a polynomial.
//!
//! The crate covers the whole pipeline of a simultaneous root-finding
//! experiment:
//!
//! * [`poly`]: monic complex polynomials, Horner evaluation of `P` and `P'`,
//!   and the four built-in test polynomials.
//! * [`init`]: Aberth starting points on a circle of Henrici radius.
//! * [`methods`]: the Weierstrass correction and the six one-step maps
//!   (WLM, DFM, NWM and the trapezoidal/midpoint Methods 1-3).
//! * [`solver`]: the iteration driver with the max-residual stopping rule.
//! * [`analysis`]: root matching and computational order of convergence.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, report
//! serialization and the command-line runner live in `simulzero-cli`.
//!
//! ```
//! use simulzero::{aberth_points, builtin_suite, solve, MethodKind, SolveStatus, SolverConfig};
//!
//! let (p1, _) = builtin_suite().remove(0);
//! let start = aberth_points(&p1).unwrap();
//! let report = solve(&p1, MethodKind::Method3, start.into(), &SolverConfig::default()).unwrap();
//! assert_eq!(report.status, SolveStatus::Converged);
//! ```

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod analysis;
pub mod init;
pub mod methods;
pub mod poly;
pub mod solver;

pub use num_complex::Complex64;

pub use analysis::{
    attainable_accuracy, error_floor, estimate_order, estimate_order_above, match_roots, order_study,
    perturbed_start, AnalysisError, OrderEstimate, OrderStudy, RootMatching, SequenceKind,
};
pub use init::{aberth_points, henrici_radius, InitError, InitialPoints};
pub use methods::{
    lagrange_identity_residual, step, step_with, weierstrass_corrections, IterateVector,
    MethodKind, ParseMethodError, StepError, StepParams, SubExpression,
};
pub use poly::{builtin_suite, PolyError, Polynomial, RootSet};
pub use solver::{
    residual_max, solve, solve_observed, ConfigError, SolveReport, SolveStatus, SolverConfig,
};
