//! Shared numerical kernels: bracketed root finding, adaptive quadrature
//! with logarithmic endpoint handling, and a dense symmetric eigensolver.
//!
//! All routines are pure functions of their inputs and safe to call from any
//! number of threads.

mod eigen;
mod quadrature;
mod roots;

pub use eigen::{symmetric_eigenvalues, SymmetricMatrix};
pub use quadrature::integrate_log_singular;
pub use roots::{expand_bracket, find_root, RootProblem};

/// ln(1 - e^{-x}) for x > 0 without cancellation on either end of the range.
///
/// Below ln 2 the complement 1 - e^{-x} is formed from expm1 (accurate for
/// small x); above it the direct ln1p(-e^{-x}) keeps tiny results exact, down
/// to ln1p(-e^{-700}) and beyond where the answer underflows gracefully to -0.
pub fn log1mexp(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x <= std::f64::consts::LN_2 {
        (-(-x).exp_m1()).ln()
    } else {
        (-(-x).exp()).ln_1p()
    }
}
