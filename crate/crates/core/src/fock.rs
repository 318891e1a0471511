//! Brute-force validation on truncated photon-number ladders.
//!
//! Everything here recomputes thermal quantities by explicit summation over
//! Fock states |0>, |1>, ..., |n_max> instead of closed forms, so the rest of
//! the crate can be checked against it. The truncation is certifiable because
//! the thermal weights are geometric: the ladder is long enough when
//! e^{-beta nu (n_max + 1)} < 1e-12 (1 - e^{-beta nu}).

use crate::error::{Error, Result};
use crate::numerics::{log1mexp, RootProblem};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use std::f64::consts::LN_2;

/// Geometric tail bound defining an admissible truncation.
const TAIL_REL: f64 = 1e-12;
/// Hard cap keeping accidental huge ladders from exhausting memory.
const MAX_LEVELS: usize = 10_000_000;

fn check_mode(nu: f64, beta: f64) -> Result<()> {
    if !(nu > 0.0) || !nu.is_finite() {
        return Err(Error::domain(format!("mode frequency must be positive, got {nu}")));
    }
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::domain(format!(
            "inverse temperature must be positive, got {beta}"
        )));
    }
    Ok(())
}

fn tail_ok(nu: f64, beta: f64, n_max: usize) -> bool {
    let x = beta * nu;
    // e^{-x (n_max + 1)} < 1e-12 (1 - e^{-x}), compared in log space.
    -x * (n_max as f64 + 1.0) < TAIL_REL.ln() + log1mexp(x)
}

/// Smallest ladder length satisfying the geometric tail rule.
pub fn required_levels(nu: f64, beta: f64) -> Result<usize> {
    check_mode(nu, beta)?;
    let x = beta * nu;
    let bound = (TAIL_REL.ln() + log1mexp(x)) / -x; // n_max + 1 must exceed this
    let n_max = if bound <= 0.0 { 0 } else { bound.floor() as usize + 1 };
    if n_max > MAX_LEVELS {
        return Err(Error::truncation(format!(
            "tail rule needs {n_max} levels, above the {MAX_LEVELS} cap"
        )));
    }
    Ok(n_max)
}

/// ln of the explicitly summed partition function sum_{n=0}^{n_max}
/// e^{-beta nu n}. Errs when the ladder is too short for the tail rule.
pub fn truncated_ln_partition(nu: f64, beta: f64, n_max: usize) -> Result<f64> {
    check_mode(nu, beta)?;
    if !tail_ok(nu, beta, n_max) {
        return Err(Error::truncation(format!(
            "n_max = {n_max} leaves a geometric tail above {TAIL_REL} for beta*nu = {}",
            beta * nu
        )));
    }
    let q = (-beta * nu).exp();
    let mut weight = 1.0;
    let mut z = 0.0;
    for _ in 0..=n_max {
        z += weight;
        weight *= q;
    }
    Ok(z.ln())
}

/// A thermal state written out as explicit level probabilities.
#[derive(Debug, Clone)]
pub struct TruncatedThermal {
    pub nu: f64,
    pub beta: f64,
    pub n_max: usize,
    /// probabilities[n] proportional to e^{-beta nu n}, normalized over the
    /// ladder.
    pub probabilities: Vec<f64>,
}

impl TruncatedThermal {
    pub fn new(nu: f64, beta: f64, n_max: usize) -> Result<Self> {
        check_mode(nu, beta)?;
        if n_max > MAX_LEVELS {
            return Err(Error::domain(format!("n_max = {n_max} above the {MAX_LEVELS} cap")));
        }
        if !tail_ok(nu, beta, n_max) {
            return Err(Error::truncation(format!(
                "n_max = {n_max} leaves a geometric tail above {TAIL_REL} for beta*nu = {}",
                beta * nu
            )));
        }
        let q = (-beta * nu).exp();
        let mut probabilities = Vec::with_capacity(n_max + 1);
        let mut weight = 1.0;
        for _ in 0..=n_max {
            probabilities.push(weight);
            weight *= q;
        }
        let z: f64 = probabilities.iter().sum();
        for p in &mut probabilities {
            *p /= z;
        }
        Ok(TruncatedThermal { nu, beta, n_max, probabilities })
    }

    /// Mean photon number of the truncated distribution.
    pub fn mean_occupancy(&self) -> f64 {
        self.probabilities
            .iter()
            .enumerate()
            .map(|(n, &p)| n as f64 * p)
            .sum()
    }

    /// Mean energy nu * <n>.
    pub fn mean_energy(&self) -> f64 {
        self.nu * self.mean_occupancy()
    }
}

/// Shannon entropy in bits of an explicit probability vector.
pub fn distribution_entropy(probabilities: &[f64]) -> f64 {
    probabilities
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.ln())
        .sum::<f64>()
        / LN_2
}

/// Entropy of the truncated thermal state, -sum_n p_n log2 p_n.
pub fn truncated_entropy(state: &TruncatedThermal) -> f64 {
    distribution_entropy(&state.probabilities)
}

/// Inverse temperature putting a single mode of frequency `nu` at mean
/// energy `energy`.
fn beta_for_energy(nu: f64, energy: f64) -> f64 {
    // occupancy E/nu means e^{beta nu} = 1 + nu/E
    (nu / energy).ln_1p() / nu
}

/// Projects a positive weight vector onto {p > 0, sum p = 1, sum (nu n) p =
/// E} through the exponential tilt p_i proportional to w_i e^{-s nu i}: the
/// tilted mean energy is strictly decreasing in s, so the unique s matching
/// the target is found by a bracketed root solve. This is the
/// minimum-relative-entropy projection onto the energy shell, positive by
/// construction. Returns false if the solve stalls.
fn project_onto_energy_shell(p: &mut [f64], levels: &[f64], energy: f64) -> bool {
    let log_w: Vec<f64> = p.iter().map(|&w| w.ln()).collect();
    let tilted = |s: f64| -> Vec<f64> {
        let mut shift = f64::NEG_INFINITY;
        for (lw, &a) in log_w.iter().zip(levels) {
            shift = shift.max(lw - s * a);
        }
        let mut out: Vec<f64> = log_w
            .iter()
            .zip(levels)
            .map(|(lw, &a)| (lw - s * a - shift).exp())
            .collect();
        let total: f64 = out.iter().sum();
        for v in &mut out {
            *v /= total;
        }
        out
    };
    let residual = |s: f64| -> f64 {
        tilted(s).iter().zip(levels).map(|(&pi, &a)| pi * a).sum::<f64>() - energy
    };

    // Bracket the tilt; the residual is strictly decreasing in s.
    let (mut lo, mut hi) = (0.0, 0.0);
    let r0 = residual(0.0);
    if r0 > 0.0 {
        let mut step = 1.0;
        loop {
            hi += step;
            if residual(hi) <= 0.0 {
                lo = hi - step;
                break;
            }
            step *= 2.0;
            if hi > 1e6 {
                return false;
            }
        }
    } else {
        let mut step = 1.0;
        loop {
            lo -= step;
            if residual(lo) >= 0.0 {
                hi = lo + step;
                break;
            }
            step *= 2.0;
            if lo < -1e6 {
                return false;
            }
        }
    }
    let problem = RootProblem::new(residual, lo, hi);
    let s = match problem.solve() {
        Ok(s) => s,
        Err(_) => return false,
    };
    p.copy_from_slice(&tilted(s));
    let res: f64 = p.iter().zip(levels).map(|(&pi, &a)| pi * a).sum::<f64>() - energy;
    res.abs() <= 1e-10 * energy.max(1.0)
}

/// Samples `n_trials` random probability vectors on the ladder under the
/// energy constraint and reports whether none of them beats the thermal
/// entropy by more than 1e-9 bits. The sampler is a uniform Dirichlet draw
/// projected onto the energy shell by an exponential tilt (see
/// `project_onto_energy_shell`); the check is one-sided, so occasional
/// projection stalls only discard that trial.
pub fn variational_check(nu: f64, energy: f64, n_max: usize, n_trials: usize) -> Result<bool> {
    if !(nu > 0.0) || !nu.is_finite() {
        return Err(Error::domain(format!("mode frequency must be positive, got {nu}")));
    }
    if !energy.is_finite() || energy < 0.0 {
        return Err(Error::domain(format!(
            "energy must be finite and nonnegative, got {energy}"
        )));
    }
    if energy == 0.0 {
        // Only the ground state is feasible; its entropy is 0, matching the
        // thermal limit.
        return Ok(true);
    }
    if energy >= nu * n_max as f64 {
        return Err(Error::truncation(format!(
            "energy {energy} not reachable on a ladder topping out at {}",
            nu * n_max as f64
        )));
    }
    let beta = beta_for_energy(nu, energy);
    let thermal = TruncatedThermal::new(nu, beta, n_max)?;
    let reference = truncated_entropy(&thermal);

    let levels: Vec<f64> = (0..=n_max).map(|n| nu * n as f64).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0b0e_5eed);
    let mut p = vec![0.0; n_max + 1];
    for _ in 0..n_trials {
        let mut total = 0.0;
        for pi in p.iter_mut() {
            let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
            *pi = -u.ln();
            total += *pi;
        }
        for pi in p.iter_mut() {
            *pi /= total;
        }
        if !project_onto_energy_shell(&mut p, &levels, energy) {
            continue;
        }
        if distribution_entropy(&p) > reference + 1e-9 {
            return Ok(false);
        }
    }
    Ok(true)
}
