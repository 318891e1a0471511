//! Thermal-state capacity of a collection of independent bosonic modes.
//!
//! For a spectrum of mode frequencies nu_k (dimensionless, hbar = 1) the
//! entropy maximizer at mean energy E is the thermal state at the inverse
//! temperature beta solving
//!
//! ```text
//! E = sum_k nu_k / (e^{beta nu_k} - 1),
//! ```
//!
//! with log-partition function
//!
//! ```text
//! ln Z(beta) = sum_k ln[1 / (1 - e^{-beta nu_k})]
//! ```
//!
//! and capacity
//!
//! ```text
//! C = (beta E + ln Z) / ln 2   bits.
//! ```
//!
//! The closed-form special cases are the single-mode law C = g(E/omega) with
//! g the thermal mode entropy, and the equispaced-comb (wideband) law
//! C = (pi/ln 2) sqrt(2 E / (3 delta_omega)).

use crate::error::{Error, Result};
use crate::numerics::{expand_bracket, log1mexp, RootProblem};

use std::f64::consts::{LN_2, PI};

/// Relative energy residual accepted from the constraint solve.
const ENERGY_RESIDUAL_REL: f64 = 1e-10;
/// A mode whose next occupancy contribution falls below this fraction of the
/// accumulated energy is dropped when truncating an infinite comb.
const COMB_TAIL_REL: f64 = 1e-12;

/// A finite list of strictly positive dimensionless mode frequencies.
///
/// Frequencies are in units of a caller-chosen reference; a zero frequency is
/// rejected because it would hold unbounded entropy at any positive energy.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSpectrum {
    frequencies: Vec<f64>,
}

impl ModeSpectrum {
    pub fn new(frequencies: Vec<f64>) -> Result<Self> {
        if frequencies.is_empty() {
            return Err(Error::domain("mode spectrum must be nonempty"));
        }
        for (k, &nu) in frequencies.iter().enumerate() {
            if !nu.is_finite() || nu <= 0.0 {
                return Err(Error::positivity(format!(
                    "mode {k} has frequency {nu}; all frequencies must be finite and positive"
                )));
            }
        }
        Ok(ModeSpectrum { frequencies })
    }

    /// Truncated equispaced comb {k * delta_omega} holding an energy `energy`,
    /// cut off once the next mode's occupancy contribution drops below 1e-12
    /// of the energy accumulated so far. The truncation inverse temperature is
    /// taken at half the continuum estimate pi/sqrt(6 E delta_omega), which
    /// only widens the retained band.
    pub fn wideband_comb(delta_omega: f64, energy: f64) -> Result<Self> {
        if !(delta_omega > 0.0) || !delta_omega.is_finite() {
            return Err(Error::domain(format!(
                "mode spacing must be positive, got {delta_omega}"
            )));
        }
        if !(energy > 0.0) || !energy.is_finite() {
            return Err(Error::domain(format!("energy must be positive, got {energy}")));
        }
        let beta_tail = 0.5 * PI / (6.0 * energy * delta_omega).sqrt();
        ModeSpectrum::new(comb_until_tail(delta_omega, beta_tail)?)
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn len(&self) -> usize {
        self.frequencies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequencies.is_empty() // never true; constructors reject empty lists
    }

    /// Disjoint union of two spectra.
    pub fn concat(&self, other: &ModeSpectrum) -> ModeSpectrum {
        let mut frequencies = self.frequencies.clone();
        frequencies.extend_from_slice(&other.frequencies);
        ModeSpectrum { frequencies }
    }
}

/// Frequencies k * spacing, k = 1, 2, ..., kept while the occupancy energy at
/// inverse temperature `beta_tail` is at least 1e-12 of the running total.
pub(crate) fn comb_until_tail(spacing: f64, beta_tail: f64) -> Result<Vec<f64>> {
    let mut freqs = Vec::new();
    let mut acc = 0.0;
    for k in 1..=50_000_000u64 {
        let nu = k as f64 * spacing;
        let contrib = nu / (beta_tail * nu).exp_m1();
        if contrib < COMB_TAIL_REL * acc {
            return Ok(freqs);
        }
        acc += contrib;
        freqs.push(nu);
    }
    Err(Error::NoConvergence { what: "comb truncation rule retained too many modes" })
}

/// Entropy in bits of a single thermal bosonic mode with mean occupancy `x`:
///
/// ```text
/// (1 + x) log2(1 + x) - x log2 x,    value 0 at x = 0.
/// ```
///
/// Strictly increasing and concave on x >= 0.
pub fn thermal_entropy(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::domain(format!(
            "mean occupancy must be finite and nonnegative, got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    Ok((x * (1.0 / x).ln_1p() + x.ln_1p()) / LN_2)
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::domain(format!(
            "inverse temperature must be positive and finite, got {beta}"
        )));
    }
    Ok(())
}

/// ln Z = sum_k ln[1 / (1 - e^{-beta nu_k})].
pub fn ln_partition(spectrum: &ModeSpectrum, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    Ok(spectrum.frequencies().iter().map(|&nu| -log1mexp(beta * nu)).sum())
}

/// Mean thermal energy sum_k nu_k / (e^{beta nu_k} - 1); strictly decreasing
/// in beta, unbounded as beta -> 0+ and vanishing as beta -> inf.
pub fn energy_at(spectrum: &ModeSpectrum, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    Ok(spectrum
        .frequencies()
        .iter()
        .map(|&nu| nu / (beta * nu).exp_m1())
        .sum())
}

/// Mean photon number of one mode: 1 / (e^{beta nu} - 1).
fn occupancy(beta: f64, nu: f64) -> f64 {
    1.0 / (beta * nu).exp_m1()
}

/// Solved energy constraint for one spectrum.
#[derive(Debug, Clone)]
pub struct ThermalSolution {
    /// Inverse temperature solving the energy constraint; infinite at E = 0.
    pub beta: f64,
    /// Achieved mean energy sum_k nu_k * occupancy_k.
    pub energy: f64,
    /// ln Z at `beta`.
    pub ln_z: f64,
    /// (beta * energy + ln_z) / ln 2.
    pub capacity_bits: f64,
    /// Per-mode mean photon numbers, aligned with the spectrum.
    pub occupancies: Vec<f64>,
}

/// Solves the energy constraint for `spectrum` at mean energy `energy` and
/// returns the capacity in bits. E = 0 short-circuits to the ground state
/// (zero capacity, infinite beta).
pub fn solve_thermal(spectrum: &ModeSpectrum, energy: f64) -> Result<ThermalSolution> {
    if !energy.is_finite() || energy < 0.0 {
        return Err(Error::domain(format!(
            "energy must be finite and nonnegative, got {energy}"
        )));
    }
    if energy == 0.0 {
        return Ok(ThermalSolution {
            beta: f64::INFINITY,
            energy: 0.0,
            ln_z: 0.0,
            capacity_bits: 0.0,
            occupancies: vec![0.0; spectrum.len()],
        });
    }

    let objective = |beta: f64| energy_at(spectrum, beta).unwrap_or(f64::INFINITY) - energy;
    let mean_nu: f64 =
        spectrum.frequencies().iter().sum::<f64>() / spectrum.len() as f64;
    let guess = mean_nu / energy;
    let (lo, hi) = expand_bracket(&objective, guess)?;
    let beta = RootProblem::new(objective, lo, hi).solve()?;

    let occupancies: Vec<f64> =
        spectrum.frequencies().iter().map(|&nu| occupancy(beta, nu)).collect();
    let achieved: f64 = spectrum
        .frequencies()
        .iter()
        .zip(&occupancies)
        .map(|(&nu, &n)| nu * n)
        .sum();
    if (achieved - energy).abs() > ENERGY_RESIDUAL_REL * energy {
        return Err(Error::NoConvergence {
            what: "energy constraint residual above tolerance",
        });
    }
    let ln_z = ln_partition(spectrum, beta)?;
    Ok(ThermalSolution {
        beta,
        energy: achieved,
        ln_z,
        capacity_bits: (beta * achieved + ln_z) / LN_2,
        occupancies,
    })
}

/// Single-mode capacity g(E / omega) in bits.
pub fn narrowband_capacity(omega: f64, energy: f64) -> Result<f64> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::domain(format!("mode frequency must be positive, got {omega}")));
    }
    if !energy.is_finite() || energy < 0.0 {
        return Err(Error::domain(format!(
            "energy must be finite and nonnegative, got {energy}"
        )));
    }
    thermal_entropy(energy / omega)
}

/// Closed wideband law (pi / ln 2) sqrt(2 E / (3 delta_omega)), valid when
/// E >> delta_omega.
pub fn wideband_capacity_closed(energy: f64, delta_omega: f64) -> Result<f64> {
    if !(energy > 0.0) || !energy.is_finite() {
        return Err(Error::domain(format!("energy must be positive, got {energy}")));
    }
    if !(delta_omega > 0.0) || !delta_omega.is_finite() {
        return Err(Error::domain(format!(
            "mode spacing must be positive, got {delta_omega}"
        )));
    }
    Ok(PI / LN_2 * (2.0 * energy / (3.0 * delta_omega)).sqrt())
}

/// Wideband transmission rate (1 / ln 2) sqrt(pi P / 3) in bits per unit
/// time, with P the power; equals the closed wideband capacity divided by the
/// transmission time 2 pi / delta_omega at P = E delta_omega / (2 pi).
pub fn rate_from_power(power: f64) -> Result<f64> {
    if !(power > 0.0) || !power.is_finite() {
        return Err(Error::domain(format!("power must be positive, got {power}")));
    }
    Ok((PI * power / 3.0).sqrt() / LN_2)
}

/// Optimal energy split across modes.
#[derive(Debug, Clone)]
pub struct Allocation {
    /// Per-mode energies, aligned with the spectrum.
    pub energies: Vec<f64>,
    /// Their sum.
    pub total: f64,
}

/// Optimal per-mode energy allocation maximizing sum_j g(e_j / nu_j) under
/// sum_j e_j = E.
///
/// The maximizer is the common-temperature thermal split e_j = nu_j *
/// occupancy_j at the solved beta: the marginal entropy per unit energy,
/// log2(1 + 1/n_j) / nu_j = beta / ln 2, is then equal across modes, which is
/// the stationarity condition of the constrained maximum.
pub fn optimal_allocation(
    spectrum: &ModeSpectrum,
    energy: f64,
) -> Result<(Allocation, ThermalSolution)> {
    if !(energy > 0.0) || !energy.is_finite() {
        return Err(Error::domain(format!("energy must be positive, got {energy}")));
    }
    let solution = solve_thermal(spectrum, energy)?;
    let energies: Vec<f64> = spectrum
        .frequencies()
        .iter()
        .zip(&solution.occupancies)
        .map(|(&nu, &n)| nu * n)
        .collect();
    let total = energies.iter().sum();
    Ok((Allocation { energies, total }, solution))
}
