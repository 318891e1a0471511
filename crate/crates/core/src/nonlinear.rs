//! Effective spectra of quadratically nonlinear mode Hamiltonians.
//!
//! Each Hamiltonian here is diagonalized by a canonical (Bogoliubov-type)
//! transformation into free modes, so its capacity is the linear-system
//! capacity evaluated on a reshaped frequency spectrum:
//!
//! * squeezing shifts a single mode from omega to sqrt(omega^2 - xi^2);
//! * a parametric pair shifts two degenerate modes the same way;
//! * a swapping network of N equal-frequency modes splits omega into
//!   omega + lambda_j with lambda_j the eigenvalues of the coupling matrix;
//! * the broadband swap applies one fixed eigenvalue pattern to every rung of
//!   an equispaced comb, contracting N-1 branches by 1-r and stretching one
//!   by 1 + (N-1) r.
//!
//! Ground-state shifts are tracked for energy accounting but never enter a
//! capacity: the Hamiltonians are normalized so the ground state has zero
//! energy, making the constraint energy the mode energy itself.

use crate::error::{Error, Result};
use crate::numerics::{symmetric_eigenvalues, SymmetricMatrix};
use crate::thermal::{
    comb_until_tail, narrowband_capacity, solve_thermal, thermal_entropy, ModeSpectrum,
};

use std::f64::consts::PI;

fn effective_frequency(omega: f64, xi: f64) -> f64 {
    if xi == 0.0 {
        omega
    } else {
        ((omega - xi) * (omega + xi)).sqrt()
    }
}

fn check_coupling(omega: f64, xi: f64) -> Result<()> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::domain(format!("mode frequency must be positive, got {omega}")));
    }
    if !xi.is_finite() || xi.abs() >= omega {
        return Err(Error::domain(format!(
            "coupling |{xi}| must stay below the frequency {omega} to keep the Hamiltonian bounded"
        )));
    }
    Ok(())
}

fn check_energy(energy: f64) -> Result<()> {
    if !energy.is_finite() || energy < 0.0 {
        return Err(Error::domain(format!(
            "energy must be finite and nonnegative, got {energy}"
        )));
    }
    Ok(())
}

/// One mode of frequency `omega` with a squeezing term of strength `xi`,
/// |xi| < omega.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeChannel {
    omega: f64,
    xi: f64,
}

impl SqueezeChannel {
    pub fn new(omega: f64, xi: f64) -> Result<Self> {
        check_coupling(omega, xi)?;
        Ok(SqueezeChannel { omega, xi })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    /// Normal-mode frequency sqrt(omega^2 - xi^2).
    pub fn effective_frequency(&self) -> f64 {
        effective_frequency(self.omega, self.xi)
    }

    /// Bogoliubov angle (1/4) ln[(omega + xi) / (omega - xi)].
    pub fn bogoliubov_angle(&self) -> f64 {
        0.25 * ((self.omega + self.xi) / (self.omega - self.xi)).ln()
    }

    /// Constant subtracted from the Hamiltonian so the ground state is null:
    /// (omega - sqrt(omega^2 - xi^2)) / 2.
    pub fn ground_shift(&self) -> f64 {
        0.5 * (self.omega - self.effective_frequency())
    }
}

/// Capacity g(E / sqrt(omega^2 - xi^2)) of the squeezed mode.
pub fn squeeze_capacity(channel: &SqueezeChannel, energy: f64) -> Result<f64> {
    check_energy(energy)?;
    thermal_entropy(energy / channel.effective_frequency())
}

/// Capacity gained over the uncoupled mode at the same energy; nonnegative,
/// zero only at xi = 0, and tending to -log2(1 - xi^2/omega^2)/2 at high
/// energy.
pub fn squeeze_gain(channel: &SqueezeChannel, energy: f64) -> Result<f64> {
    Ok(squeeze_capacity(channel, energy)? - narrowband_capacity(channel.omega, energy)?)
}

/// Two degenerate modes of frequency `omega` coupled by a parametric
/// down-conversion term of strength `xi`, |xi| < omega.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PdcPair {
    omega: f64,
    xi: f64,
}

impl PdcPair {
    pub fn new(omega: f64, xi: f64) -> Result<Self> {
        check_coupling(omega, xi)?;
        Ok(PdcPair { omega, xi })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn effective_frequency(&self) -> f64 {
        effective_frequency(self.omega, self.xi)
    }

    /// omega - sqrt(omega^2 - xi^2), the two-mode ground-state shift.
    pub fn ground_shift(&self) -> f64 {
        self.omega - self.effective_frequency()
    }
}

/// Capacity 2 g(E / (2 sqrt(omega^2 - xi^2))) of the coupled pair sharing
/// energy E.
pub fn pdc_pair_capacity(pair: &PdcPair, energy: f64) -> Result<f64> {
    check_energy(energy)?;
    Ok(2.0 * thermal_entropy(energy / (2.0 * pair.effective_frequency()))?)
}

/// Capacity gained over two uncoupled modes sharing the same energy.
pub fn pdc_pair_gain(pair: &PdcPair, energy: f64) -> Result<f64> {
    check_energy(energy)?;
    let uncoupled = 2.0 * thermal_entropy(energy / (2.0 * pair.omega))?;
    Ok(pdc_pair_capacity(pair, energy)? - uncoupled)
}

/// N modes of common frequency `omega` hopping through a symmetric coupling
/// matrix with null diagonal. The normal-mode frequencies are
/// omega + lambda_j with lambda_j the coupling eigenvalues, which sum to zero
/// by trace preservation and must all keep omega + lambda_j positive.
#[derive(Debug, Clone)]
pub struct SwapNetwork {
    omega: f64,
    coupling: SymmetricMatrix,
    eigenvalues: Vec<f64>,
}

impl SwapNetwork {
    pub fn new(omega: f64, coupling: SymmetricMatrix) -> Result<Self> {
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::domain(format!(
                "common frequency must be positive, got {omega}"
            )));
        }
        let n = coupling.dim();
        if n < 2 {
            return Err(Error::domain(format!(
                "swap network needs at least 2 modes, got {n}"
            )));
        }
        for i in 0..n {
            if coupling.get(i, i) != 0.0 {
                return Err(Error::domain(format!(
                    "coupling diagonal must be exactly zero, entry ({i},{i}) is {}",
                    coupling.get(i, i)
                )));
            }
        }
        let eigenvalues = symmetric_eigenvalues(&coupling)?;
        let sum: f64 = eigenvalues.iter().sum();
        let scale: f64 = eigenvalues.iter().map(|l| l.abs()).sum();
        if sum.abs() > 1e-10 * (1.0 + scale) {
            return Err(Error::NoConvergence {
                what: "coupling eigenvalues do not sum to zero within tolerance",
            });
        }
        for &l in &eigenvalues {
            if omega + l <= 0.0 {
                return Err(Error::positivity(format!(
                    "normal-mode frequency omega + {l} = {} is not positive",
                    omega + l
                )));
            }
        }
        Ok(SwapNetwork { omega, coupling, eigenvalues })
    }

    /// Two modes with a single swap amplitude `xi`.
    pub fn pair(omega: f64, xi: f64) -> Result<Self> {
        let coupling =
            SymmetricMatrix::from_fn(2, |i, j| if i == j { 0.0 } else { xi })?;
        SwapNetwork::new(omega, coupling)
    }

    /// N modes all pairwise coupled with the same amplitude.
    pub fn all_pairs(n_modes: usize, omega: f64, xi: f64) -> Result<Self> {
        let coupling =
            SymmetricMatrix::from_fn(n_modes, |i, j| if i == j { 0.0 } else { xi })?;
        SwapNetwork::new(omega, coupling)
    }

    pub fn n_modes(&self) -> usize {
        self.coupling.dim()
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn coupling(&self) -> &SymmetricMatrix {
        &self.coupling
    }

    /// Coupling eigenvalues, ascending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }
}

/// Normal-mode spectrum {omega + lambda_j}, ascending.
pub fn swap_spectrum(network: &SwapNetwork) -> Result<ModeSpectrum> {
    let freqs: Vec<f64> = network
        .eigenvalues()
        .iter()
        .map(|&l| network.omega() + l)
        .collect();
    if let Some(bad) = freqs.iter().find(|&&nu| nu <= 0.0) {
        return Err(Error::positivity(format!(
            "normal-mode frequency {bad} is not positive"
        )));
    }
    ModeSpectrum::new(freqs)
}

/// Capacity of the swap network: the optimal energy split over the
/// normal-mode spectrum, i.e. the thermal solve at energy E.
pub fn swap_capacity(network: &SwapNetwork, energy: f64) -> Result<f64> {
    check_energy(energy)?;
    let spectrum = swap_spectrum(network)?;
    Ok(solve_thermal(&spectrum, energy)?.capacity_bits)
}

/// Capacity gained over N uncoupled modes sharing the same energy,
/// N g(E / (N omega)).
pub fn swap_gain(network: &SwapNetwork, energy: f64) -> Result<f64> {
    check_energy(energy)?;
    if network.eigenvalues().iter().all(|&l| l == 0.0) {
        // An uncoupled network is its own reference; skip the subtraction of
        // two solver results that would leave residual noise.
        return Ok(0.0);
    }
    let n = network.n_modes() as f64;
    let uncoupled = n * thermal_entropy(energy / (n * network.omega()))?;
    Ok(swap_capacity(network, energy)? - uncoupled)
}

/// N parallel equispaced combs coupled rung by rung with the fixed
/// eigenvalue pattern lambda_jk = -omega_k r (N-1 times) and
/// lambda_Nk = omega_k (N-1) r, 0 <= r < 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BroadbandSwapConfig {
    n_modes: usize,
    r: f64,
    delta_omega: f64,
}

impl BroadbandSwapConfig {
    pub fn new(n_modes: usize, r: f64, delta_omega: f64) -> Result<Self> {
        if n_modes < 1 {
            return Err(Error::domain("broadband swap needs at least one comb"));
        }
        if !r.is_finite() || !(0.0..1.0).contains(&r) {
            return Err(Error::domain(format!(
                "contraction parameter r must lie in [0, 1), got {r}"
            )));
        }
        if !(delta_omega > 0.0) || !delta_omega.is_finite() {
            return Err(Error::domain(format!(
                "mode spacing must be positive, got {delta_omega}"
            )));
        }
        Ok(BroadbandSwapConfig { n_modes, r, delta_omega })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn delta_omega(&self) -> f64 {
        self.delta_omega
    }

    /// Frequency factor 1 - r of the N-1 contracted branches.
    pub fn contracted_factor(&self) -> f64 {
        1.0 - self.r
    }

    /// Frequency factor 1 + (N-1) r of the stretched branch.
    pub fn stretched_factor(&self) -> f64 {
        1.0 + (self.n_modes as f64 - 1.0) * self.r
    }
}

/// First `k_max` rungs of every branch of the coupled comb, ascending. The
/// per-rung mean frequency stays k * delta_omega by trace preservation.
pub fn broadband_swap_spectrum(
    config: &BroadbandSwapConfig,
    k_max: usize,
) -> Result<ModeSpectrum> {
    if k_max < 1 {
        return Err(Error::domain("k_max must be at least 1"));
    }
    let mut freqs = Vec::with_capacity(config.n_modes() * k_max);
    for k in 1..=k_max {
        let base = k as f64 * config.delta_omega();
        for _ in 0..config.n_modes() - 1 {
            freqs.push(config.contracted_factor() * base);
        }
        freqs.push(config.stretched_factor() * base);
    }
    freqs.sort_by(|a, b| a.total_cmp(b));
    ModeSpectrum::new(freqs)
}

/// Capacity of the coupled comb at energy E, with the comb length chosen
/// branch-wise by the occupancy-tail rule (the contracted branches need more
/// rungs than the stretched one).
pub fn broadband_swap_capacity(config: &BroadbandSwapConfig, energy: f64) -> Result<f64> {
    if !(energy > 0.0) || !energy.is_finite() {
        return Err(Error::domain(format!("energy must be positive, got {energy}")));
    }
    let n = config.n_modes() as f64;
    // Continuum estimate of the inverse temperature over all branches; the
    // halved value only lengthens the retained combs.
    let branch_weight = (n - 1.0) / config.contracted_factor()
        + 1.0 / config.stretched_factor();
    let beta_hat =
        PI * (branch_weight / (6.0 * energy * config.delta_omega())).sqrt();
    let beta_tail = 0.5 * beta_hat;

    let mut freqs = Vec::new();
    if config.n_modes() > 1 {
        let contracted =
            comb_until_tail(config.contracted_factor() * config.delta_omega(), beta_tail)?;
        for _ in 0..config.n_modes() - 1 {
            freqs.extend_from_slice(&contracted);
        }
    }
    freqs.extend(comb_until_tail(
        config.stretched_factor() * config.delta_omega(),
        beta_tail,
    )?);
    freqs.sort_by(|a, b| a.total_cmp(b));
    let spectrum = ModeSpectrum::new(freqs)?;
    Ok(solve_thermal(&spectrum, energy)?.capacity_bits)
}
