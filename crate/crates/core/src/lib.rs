//! Noiseless, energy-constrained information capacity of bosonic systems.
//!
//! The capacity of a noiseless channel is the maximum von Neumann entropy
//! reachable at a fixed mean energy, and for independent bosonic modes that
//! maximum is attained by a thermal state, so every capacity here reduces to
//! partition-function arithmetic over a spectrum of mode frequencies:
//!
//! * [`thermal`] solves the inverse-temperature constraint for an arbitrary
//!   spectrum and evaluates the capacity in bits, together with the closed
//!   narrowband/wideband formulas and the optimal multi-mode energy split.
//! * [`nonlinear`] builds the effective spectra of quadratically nonlinear
//!   mode Hamiltonians (squeezing, two-mode parametric down-conversion, mode
//!   swapping and its broadband variant) and the capacity gains they induce.
//! * [`pdc`] treats the broadband parametric down-conversion channel: exact
//!   integral partition function, low-coupling perturbative expansion, and a
//!   discrete-comb cross-check.
//! * [`fock`] is a brute-force validator on truncated photon-number ladders.
//! * [`numerics`] holds the root finding, quadrature, and eigenvalue kernels.
//!
//! Everything is dimensionless: frequencies are in units of a caller-chosen
//! reference, hbar = 1, and energies are in units of hbar times that
//! reference frequency.

// Validations are written as `!(x > 0.0)` on purpose: the negation also
// rejects NaN, which `x <= 0.0` would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod fock;
pub mod nonlinear;
pub mod numerics;
pub mod pdc;
pub mod thermal;

pub use error::{Error, Result};
