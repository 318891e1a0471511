//! Broadband parametric down-conversion channel.
//!
//! Signal and idler combs whose frequencies pair up to the pump frequency
//! omega_p are coupled, over a top-hat band of fractional width zeta centered
//! on omega_p/2, with a constant strength xi. Diagonalizing shifts every
//! coupled mode frequency down by Omega = [omega_p - sqrt(omega_p^2 -
//! 4 xi^2)]/2, so the log-partition function becomes three frequency
//! integrals (below, inside, above the band) of ln[1/(1 - e^{-lambda omega})]
//! with the in-band segment shifted by Omega.
//!
//! Three routes to the capacity are implemented and cross-checked:
//!
//! * `exact_capacity` evaluates the integrals adaptively and root-solves the
//!   energy constraint in lambda;
//! * `perturbative_capacity` expands to first order in the dimensionless
//!   coupling epsilon = 4 xi^2 / omega_p^2, through the log-partition density
//!   (1/beta) Int_0^beta ln[1/(1-e^{-x})] dx, its in-band correction
//!   (1/4) ln[(1-e^{-beta(1+zeta)/2})/(1-e^{-beta(1-zeta)/2})], and the
//!   dimensionless energy gamma = E delta_omega / (2 omega_p^2);
//! * `discrete_capacity` feeds the literal mode comb to the thermal solver.

use crate::error::{Error, Result};
use crate::numerics::{expand_bracket, integrate_log_singular, log1mexp, RootProblem};
use crate::thermal::{solve_thermal, ModeSpectrum};

use std::f64::consts::{LN_2, PI};

/// Below this argument the integrand is handled by its small-x series.
const SERIES_CROSSOVER: f64 = 1e-3;
/// Relative tolerance of the adaptive quadrature behind the exact route.
const QUAD_TOL_REL: f64 = 1e-11;

/// The integrand ln[1/(1 - e^{-x})].
fn bose_log(x: f64) -> f64 {
    -log1mexp(x)
}

/// Antiderivative of the small-x series
/// ln[1/(1-e^{-x})] = -ln x + x/2 - x^2/24 + x^4/2880 + O(x^6),
/// vanishing at x = 0. The x^6 remainder is below 1e-20 at the crossover.
fn bose_log_series_integral(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    x - x * x.ln() + x * x / 4.0 - x * x * x / 72.0 + x.powi(5) / 14_400.0
}

/// Int_a^b ln[1/(1-e^{-x})] dx for 0 <= a <= b, series below the crossover
/// and adaptive quadrature above it.
fn bose_log_integral(a: f64, b: f64) -> Result<f64> {
    debug_assert!(a >= 0.0 && b >= a);
    if a == b {
        return Ok(0.0);
    }
    if b <= SERIES_CROSSOVER {
        return Ok(bose_log_series_integral(b) - bose_log_series_integral(a));
    }
    if a < SERIES_CROSSOVER {
        let head = bose_log_series_integral(SERIES_CROSSOVER) - bose_log_series_integral(a);
        let tail = integrate_log_singular(bose_log, SERIES_CROSSOVER, b, QUAD_TOL_REL)?;
        return Ok(head + tail);
    }
    integrate_log_singular(bose_log, a, b, QUAD_TOL_REL)
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::domain(format!(
            "scaled inverse temperature must be positive, got {beta}"
        )));
    }
    Ok(())
}

fn check_zeta(zeta: f64) -> Result<()> {
    if !zeta.is_finite() || !(0.0..1.0).contains(&zeta) {
        return Err(Error::domain(format!(
            "fractional bandwidth must lie in [0, 1), got {zeta}"
        )));
    }
    Ok(())
}

/// Log-partition density of the uncoupled band,
/// (1/beta) Int_0^beta ln[1/(1-e^{-x})] dx: positive, strictly decreasing,
/// tending to pi^2/(6 beta) for large beta and to 1 - ln beta for small beta.
pub fn ln_z_density(beta: f64) -> Result<f64> {
    check_beta(beta)?;
    Ok(bose_log_integral(0.0, beta)? / beta)
}

/// d/dbeta of `ln_z_density`, reduced analytically to
/// (ln[1/(1-e^{-beta})] - density) / beta so no quadrature is differentiated.
pub fn d_ln_z_density(beta: f64) -> Result<f64> {
    Ok((bose_log(beta) - ln_z_density(beta)?) / beta)
}

/// Second beta-derivative of `ln_z_density`:
/// (-1/(e^beta - 1) - 2 d/dbeta density) / beta.
pub fn d2_ln_z_density(beta: f64) -> Result<f64> {
    Ok((-1.0 / beta.exp_m1() - 2.0 * d_ln_z_density(beta)?) / beta)
}

/// First-order coupling correction to the log-partition density,
/// (1/4) ln[(1 - e^{-beta(1+zeta)/2}) / (1 - e^{-beta(1-zeta)/2})]:
/// nonnegative, zero at zeta = 0, vanishing for large beta.
pub fn band_correction(beta: f64, zeta: f64) -> Result<f64> {
    check_beta(beta)?;
    check_zeta(zeta)?;
    if zeta == 0.0 {
        return Ok(0.0);
    }
    let upper = beta * (1.0 + zeta) / 2.0;
    let lower = beta * (1.0 - zeta) / 2.0;
    Ok(0.25 * (log1mexp(upper) - log1mexp(lower)))
}

/// d/dbeta of `band_correction`, in closed form.
pub fn d_band_correction(beta: f64, zeta: f64) -> Result<f64> {
    check_beta(beta)?;
    check_zeta(zeta)?;
    if zeta == 0.0 {
        return Ok(0.0);
    }
    let a_hi = (1.0 + zeta) / 2.0;
    let a_lo = (1.0 - zeta) / 2.0;
    Ok(0.25 * (a_hi / (beta * a_hi).exp_m1() - a_lo / (beta * a_lo).exp_m1()))
}

/// Solves d/dbeta ln_z_density(beta0) = -gamma for the leading-order scaled
/// inverse temperature; unique because the left side is strictly increasing
/// toward zero. For small gamma, beta0 approaches pi/sqrt(6 gamma).
pub fn solve_beta0(gamma: f64) -> Result<f64> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::domain(format!(
            "dimensionless energy must be positive, got {gamma}"
        )));
    }
    let objective = |beta: f64| match d_ln_z_density(beta) {
        Ok(v) => v + gamma,
        Err(_) => f64::NAN,
    };
    let guess = PI / (6.0 * gamma).sqrt();
    let (lo, hi) = expand_bracket(&objective, guess)?;
    RootProblem::new(objective, lo, hi).solve()
}

/// First-order shift of the scaled inverse temperature,
/// -d_band_correction(beta0) / d2_ln_z_density(beta0).
pub fn beta1_correction(beta0: f64, zeta: f64) -> Result<f64> {
    check_beta(beta0)?;
    Ok(-d_band_correction(beta0, zeta)? / d2_ln_z_density(beta0)?)
}

/// Perturbative solution record: leading and first-order scaled inverse
/// temperatures and the capacity coefficients in bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbativeSolution {
    pub beta0: f64,
    pub beta1: f64,
    pub c0_bits: f64,
    pub c1_bits: f64,
}

/// Capacity coefficients at dimensionless energy `gamma` and bandwidth
/// `zeta`: c0 = [beta0 gamma + ln_z_density(beta0)] / ln 2 and
/// c1 = band_correction(beta0, zeta) / ln 2. Both depend on the physical
/// scales only through gamma. The beta1 shift cancels out of the capacity at
/// first order (the constraint is stationary in beta) but is reported.
pub fn perturbative_solution(gamma: f64, zeta: f64) -> Result<PerturbativeSolution> {
    let beta0 = solve_beta0(gamma)?;
    let beta1 = beta1_correction(beta0, zeta)?;
    let c0_bits = (beta0 * gamma + ln_z_density(beta0)?) / LN_2;
    let c1_bits = band_correction(beta0, zeta)? / LN_2;
    Ok(PerturbativeSolution { beta0, beta1, c0_bits, c1_bits })
}

/// Broadband down-conversion channel: pump frequency (the reference unit),
/// comb spacing, top-hat fractional coupling bandwidth, and in-band coupling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PdcBroadband {
    omega_p: f64,
    delta_omega: f64,
    zeta: f64,
    xi: f64,
}

impl PdcBroadband {
    pub fn new(omega_p: f64, delta_omega: f64, zeta: f64, xi: f64) -> Result<Self> {
        if !(omega_p > 0.0) || !omega_p.is_finite() {
            return Err(Error::domain(format!(
                "pump frequency must be positive, got {omega_p}"
            )));
        }
        if !(delta_omega > 0.0) || !delta_omega.is_finite() {
            return Err(Error::domain(format!(
                "mode spacing must be positive, got {delta_omega}"
            )));
        }
        if !zeta.is_finite() || zeta <= 0.0 || zeta >= 1.0 {
            return Err(Error::domain(format!(
                "fractional bandwidth must lie in (0, 1), got {zeta}"
            )));
        }
        if !xi.is_finite() || xi < 0.0 {
            return Err(Error::domain(format!(
                "coupling must be finite and nonnegative, got {xi}"
            )));
        }
        let channel = PdcBroadband { omega_p, delta_omega, zeta, xi };
        if channel.epsilon() >= 1.0 - zeta * zeta {
            return Err(Error::positivity(format!(
                "epsilon = {} >= 1 - zeta^2 = {}; the lowest coupled mode frequency would not stay positive",
                channel.epsilon(),
                1.0 - zeta * zeta
            )));
        }
        Ok(channel)
    }

    pub fn omega_p(&self) -> f64 {
        self.omega_p
    }

    pub fn delta_omega(&self) -> f64 {
        self.delta_omega
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    /// Dimensionless coupling 4 xi^2 / omega_p^2, the expansion parameter.
    pub fn epsilon(&self) -> f64 {
        let s = 2.0 * self.xi / self.omega_p;
        s * s
    }

    /// In-band ground shift Omega = [omega_p - sqrt(omega_p^2 - 4 xi^2)] / 2.
    pub fn ground_shift(&self) -> f64 {
        if self.xi == 0.0 {
            return 0.0;
        }
        let root = ((self.omega_p - 2.0 * self.xi) * (self.omega_p + 2.0 * self.xi)).sqrt();
        0.5 * (self.omega_p - root)
    }

    /// Dimensionless energy gamma = E delta_omega / (2 omega_p^2).
    pub fn gamma(&self, energy: f64) -> f64 {
        energy * self.delta_omega / (2.0 * self.omega_p * self.omega_p)
    }

    /// Lower edge of the coupled band, omega_p (1 - zeta) / 2.
    pub fn band_lo(&self) -> f64 {
        self.omega_p * (1.0 - self.zeta) / 2.0
    }

    /// Upper edge of the coupled band, omega_p (1 + zeta) / 2.
    pub fn band_hi(&self) -> f64 {
        self.omega_p * (1.0 + self.zeta) / 2.0
    }

    /// True when epsilon is inside the trusted first-order window (<= 0.1);
    /// callers may still run the expansion up to 0.5 at reduced accuracy.
    pub fn is_weakly_coupled(&self) -> bool {
        self.epsilon() <= 0.1
    }

    /// The three integration segments in shifted frequency u = omega - shift:
    /// below the band, inside it (shifted by Omega), above it.
    fn segments(&self) -> [(f64, f64); 3] {
        let shift = self.ground_shift();
        [
            (0.0, self.band_lo()),
            (self.band_lo() - shift, self.band_hi() - shift),
            (self.band_hi(), self.omega_p),
        ]
    }
}

fn check_positive_energy(energy: f64) -> Result<()> {
    if !(energy > 0.0) || !energy.is_finite() {
        return Err(Error::domain(format!("energy must be positive, got {energy}")));
    }
    Ok(())
}

/// ln Z(lambda) from the three-segment frequency integral.
pub fn exact_ln_partition(channel: &PdcBroadband, lambda: f64) -> Result<f64> {
    check_beta(lambda)?;
    let mut total = 0.0;
    for (u_lo, u_hi) in channel.segments() {
        total += bose_log_integral(lambda * u_lo, lambda * u_hi)? / lambda;
    }
    Ok(2.0 / channel.delta_omega() * total)
}

/// Mean energy -d/dlambda ln Z(lambda), with the lambda-derivative taken
/// analytically segment by segment (the same integral values are reused, no
/// quadrature is differentiated numerically).
pub fn exact_mean_energy(channel: &PdcBroadband, lambda: f64) -> Result<f64> {
    check_beta(lambda)?;
    let mut total = 0.0;
    for (u_lo, u_hi) in channel.segments() {
        let integral = bose_log_integral(lambda * u_lo, lambda * u_hi)? / lambda;
        let edge_hi = u_hi * bose_log(lambda * u_hi);
        let edge_lo = if u_lo > 0.0 { u_lo * bose_log(lambda * u_lo) } else { 0.0 };
        total += (integral - edge_hi + edge_lo) / lambda;
    }
    Ok(2.0 / channel.delta_omega() * total)
}

/// Capacity from the integral partition function: root-solves the energy
/// constraint in lambda, then evaluates (lambda E + ln Z) / ln 2.
pub fn exact_capacity(channel: &PdcBroadband, energy: f64) -> Result<f64> {
    check_positive_energy(energy)?;
    let objective = |lambda: f64| match exact_mean_energy(channel, lambda) {
        Ok(v) => v - energy,
        Err(_) => f64::NAN,
    };
    let gamma = channel.gamma(energy);
    let guess = solve_beta0(gamma)? / channel.omega_p();
    let (lo, hi) = expand_bracket(&objective, guess)?;
    let lambda = RootProblem::new(objective, lo, hi).solve()?;
    let achieved = exact_mean_energy(channel, lambda)?;
    if (achieved - energy).abs() > 1e-9 * energy {
        return Err(Error::NoConvergence {
            what: "integral energy constraint residual above tolerance",
        });
    }
    Ok((lambda * achieved + exact_ln_partition(channel, lambda)?) / LN_2)
}

/// First-order capacity (2 omega_p / delta_omega) [c0(gamma) + epsilon
/// c1(gamma, zeta)] together with the solution record. Errs for epsilon >=
/// 0.5; between 0.1 and 0.5 the result is returned but `is_weakly_coupled`
/// reports false so callers can surface a warning.
pub fn perturbative_capacity(
    channel: &PdcBroadband,
    energy: f64,
) -> Result<(f64, PerturbativeSolution)> {
    check_positive_energy(energy)?;
    let epsilon = channel.epsilon();
    if epsilon >= 0.5 {
        return Err(Error::domain(format!(
            "epsilon = {epsilon} is too large for the first-order expansion (limit 0.5)"
        )));
    }
    let solution = perturbative_solution(channel.gamma(energy), channel.zeta())?;
    let capacity = 2.0 * channel.omega_p() / channel.delta_omega()
        * (solution.c0_bits + epsilon * solution.c1_bits);
    Ok((capacity, solution))
}

/// The literal mode comb: signal frequencies k delta_omega and idler partners
/// omega_p - k delta_omega for all k with k delta_omega < omega_p, each
/// lowered by the ground shift when it falls strictly inside the coupled
/// band.
pub fn discrete_spectrum(channel: &PdcBroadband) -> Result<ModeSpectrum> {
    let shift = channel.ground_shift();
    let half_band = channel.zeta() * channel.omega_p() / 2.0;
    let center = channel.omega_p() / 2.0;
    let mut freqs = Vec::new();
    let mut k = 1u64;
    loop {
        let omega_k = k as f64 * channel.delta_omega();
        if omega_k >= channel.omega_p() {
            break;
        }
        let in_band = (omega_k - center).abs() < half_band;
        let omega_shift = if in_band { shift } else { 0.0 };
        freqs.push(omega_k - omega_shift);
        freqs.push(channel.omega_p() - omega_k - omega_shift);
        k += 1;
    }
    if freqs.is_empty() {
        return Err(Error::domain(
            "mode spacing at or above the pump frequency leaves no comb modes",
        ));
    }
    freqs.sort_by(|a, b| a.total_cmp(b));
    ModeSpectrum::new(freqs)
}

/// Capacity of the literal comb via the thermal solver; converges to
/// `exact_capacity` as the spacing shrinks.
pub fn discrete_capacity(channel: &PdcBroadband, energy: f64) -> Result<f64> {
    check_positive_energy(energy)?;
    let spectrum = discrete_spectrum(channel)?;
    Ok(solve_thermal(&spectrum, energy)?.capacity_bits)
}

/// Infinite-bandwidth reference (2 pi / ln 2) (omega_p / delta_omega)
/// sqrt(2 gamma / 3): two uncut wideband branches sharing the energy.
pub fn asymptotic_capacity(channel: &PdcBroadband, energy: f64) -> Result<f64> {
    check_positive_energy(energy)?;
    let gamma = channel.gamma(energy);
    Ok(2.0 * PI / LN_2 * channel.omega_p() / channel.delta_omega()
        * (2.0 * gamma / 3.0).sqrt())
}
