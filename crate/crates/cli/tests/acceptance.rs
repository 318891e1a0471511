//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (run with `-- --nocapture` to see them all).
//!
//! Criterion 9 is currently red and is expected to be: it demands that the
//! two-mode swapping capacity divided by log2[E/(omega - |xi|)] sits within
//! 15% of 1 at E = 10^3 for xi in {0.99, 0.999, 0.9999}. The divergent part
//! of that capacity is carried by the soft normal mode and does obey the law
//! (its share lands within 3%, see the nonlinear invariants suite), but the
//! total also keeps the hard mode's bounded entropy (~9.4 bits) plus the
//! log2(e) offsets, which decay only logarithmically: the true ratios are
//! 1.594, 1.494, 1.424, monotone toward 1 but reaching 1.15 only once
//! omega - |xi| < 2e-17, below what f64 can represent for xi near 1. The
//! assertion is kept as stated rather than loosened.

use capacity_core::fock::{
    required_levels, truncated_entropy, truncated_ln_partition, variational_check,
    TruncatedThermal,
};
use capacity_core::nonlinear::{
    broadband_swap_capacity, squeeze_gain, swap_capacity, BroadbandSwapConfig, SqueezeChannel,
    SwapNetwork,
};
use capacity_core::numerics::log1mexp;
use capacity_core::pdc::{
    exact_capacity, perturbative_capacity, perturbative_solution, PdcBroadband,
};
use capacity_core::thermal::{
    narrowband_capacity, optimal_allocation, solve_thermal, thermal_entropy,
    wideband_capacity_closed, ModeSpectrum,
};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use std::f64::consts::{LN_2, PI};
use std::process::Command;

fn report(name: &str, pass: bool, detail: &str) {
    println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
}

#[test]
fn c01_narrowband_identity() {
    let err = (narrowband_capacity(1.0, 1.0).unwrap() - 2.0).abs();
    let pass = err <= 1e-12;
    report("criterion 01 (narrowband identity)", pass, &format!("|C(1,1) - 2| = {err:.3e}"));
    assert!(pass);
}

#[test]
fn c02_squeeze_gain_asymptote() {
    let mut worst = 0.0f64;
    for &ratio in &[0.3, 0.6, 0.9] {
        let channel = SqueezeChannel::new(1.0, ratio).unwrap();
        let gain = squeeze_gain(&channel, 1e6).unwrap();
        let asymptote = -0.5 * (1.0 - ratio * ratio).log2();
        worst = worst.max((gain - asymptote).abs());
    }
    let pass = worst <= 1e-3;
    report(
        "criterion 02 (squeeze-gain asymptote)",
        pass,
        &format!("worst |gain - asymptote| = {worst:.3e} bits at E/omega = 1e6"),
    );
    assert!(pass);
}

#[test]
fn c03_wideband_law() {
    let energy = 1e5;
    let comb = ModeSpectrum::wideband_comb(1.0, energy).unwrap();
    let solved = solve_thermal(&comb, energy).unwrap().capacity_bits;
    let closed = wideband_capacity_closed(energy, 1.0).unwrap();
    let rel = ((solved - closed) / closed).abs();
    let pass = rel <= 5e-3;
    report(
        "criterion 03 (wideband square-root law)",
        pass,
        &format!("comb {solved:.4} vs closed {closed:.4}, relative gap {rel:.3e}"),
    );
    assert!(pass);
}

#[test]
fn c04_fock_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut worst_lnz = 0.0f64;
    let mut worst_entropy = 0.0f64;
    for _ in 0..100 {
        let nu = rng.gen_range(0.2..3.0);
        let beta = rng.gen_range(0.2..4.0);
        let n_max = required_levels(nu, beta).unwrap();
        let summed = truncated_ln_partition(nu, beta, n_max).unwrap();
        worst_lnz = worst_lnz.max((summed - -log1mexp(beta * nu)).abs());
        let ladder = TruncatedThermal::new(nu, beta, n_max).unwrap();
        let s = truncated_entropy(&ladder);
        let g = thermal_entropy(ladder.mean_occupancy()).unwrap();
        worst_entropy = worst_entropy.max((s - g).abs());
    }
    let n_max = required_levels(1.0, 2.0f64.ln()).unwrap();
    let variational = variational_check(1.0, 1.0, n_max, 10_000).unwrap();
    let pass = worst_lnz <= 1e-9 && worst_entropy <= 1e-9 && variational;
    report(
        "criterion 04 (photon-ladder oracle equivalence)",
        pass,
        &format!(
            "worst |ln Z| gap {worst_lnz:.2e}, worst entropy gap {worst_entropy:.2e}, variational check {variational}"
        ),
    );
    assert!(pass);
}

#[test]
fn c05_pdc_perturbative_consistency() {
    let omega_p = 1.0;
    let delta = 1e-3;
    let mut worst = 0.0f64;
    let mut bound = f64::INFINITY;
    for &epsilon in &[0.0025f64, 0.01] {
        for &gamma in &[1e-3, 1e-2, 1e-1, 1.0] {
            let xi = epsilon.sqrt() * omega_p / 2.0;
            let channel = PdcBroadband::new(omega_p, delta, 0.5, xi).unwrap();
            let energy = gamma * 2.0 * omega_p * omega_p / delta;
            let exact = exact_capacity(&channel, energy).unwrap();
            let (pert, _) = perturbative_capacity(&channel, energy).unwrap();
            let rel = ((exact - pert) / exact).abs();
            let margin = 5.0 * epsilon * epsilon - rel;
            if margin < bound {
                bound = margin;
                worst = rel;
            }
            assert!(
                rel <= 5.0 * epsilon * epsilon,
                "eps={epsilon} gamma={gamma}: relative gap {rel}"
            );
        }
    }
    report(
        "criterion 05 (exact vs perturbative)",
        true,
        &format!("tightest point: relative gap {worst:.3e} within its 5*eps^2 budget"),
    );
}

#[test]
fn c06_c1_positivity_and_vanishing() {
    let mut min_c1 = f64::INFINITY;
    for i in 0..20 {
        let gamma = 1e-4 * (1e5f64).powf(i as f64 / 19.0);
        for j in 1..=9 {
            let zeta = 0.1 * j as f64;
            let c1 = perturbative_solution(gamma, zeta).unwrap().c1_bits;
            min_c1 = min_c1.min(c1);
        }
    }
    let limit = perturbative_solution(1e-8, 0.5).unwrap().c1_bits;
    let pass = min_c1 > 0.0 && limit <= 1e-4;
    report(
        "criterion 06 (c1 positivity and vanishing limit)",
        pass,
        &format!("min c1 on grid = {min_c1:.3e} bits, c1(1e-8, 0.5) = {limit:.3e}"),
    );
    assert!(pass);
}

#[test]
fn c07_c0_asymptote() {
    let sol = perturbative_solution(1e-6, 0.5).unwrap();
    let ratio = sol.c0_bits / 1e-6f64.sqrt();
    let want = PI / LN_2 * (2.0f64 / 3.0).sqrt();
    let rel = ((ratio - want) / want).abs();
    let pass = rel <= 0.02;
    report(
        "criterion 07 (c0 small-gamma asymptote)",
        pass,
        &format!("c0/sqrt(gamma) = {ratio:.6} vs {want:.6}, relative gap {rel:.2e}"),
    );
    assert!(pass);
}

/// Best value over a simplex lattice of roughly 1e4 allocations.
fn grid_search_best(nus: &[f64], energy: f64) -> f64 {
    let entropy_sum = |shares: &[f64]| -> f64 {
        shares
            .iter()
            .zip(nus)
            .map(|(&e, &nu)| thermal_entropy(e.max(0.0) / nu).unwrap())
            .sum()
    };
    let mut best = 0.0f64;
    match nus.len() {
        2 => {
            let q = 10_000;
            for i in 0..=q {
                let e0 = energy * i as f64 / q as f64;
                best = best.max(entropy_sum(&[e0, energy - e0]));
            }
        }
        3 => {
            let q = 140;
            for i in 0..=q {
                for j in 0..=(q - i) {
                    let e0 = energy * i as f64 / q as f64;
                    let e1 = energy * j as f64 / q as f64;
                    best = best.max(entropy_sum(&[e0, e1, energy - e0 - e1]));
                }
            }
        }
        4 => {
            let q = 34;
            for i in 0..=q {
                for j in 0..=(q - i) {
                    for k in 0..=(q - i - j) {
                        let e0 = energy * i as f64 / q as f64;
                        let e1 = energy * j as f64 / q as f64;
                        let e2 = energy * k as f64 / q as f64;
                        best = best.max(entropy_sum(&[e0, e1, e2, energy - e0 - e1 - e2]));
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    best
}

#[test]
fn c08_allocation_optimality() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    let mut worst_margin = f64::INFINITY;
    for case in 0..50 {
        let n = 2 + case % 3;
        let nus: Vec<f64> = (0..n).map(|_| rng.gen_range(0.2..3.0)).collect();
        let energy = rng.gen_range(0.5..5.0);
        let spectrum = ModeSpectrum::new(nus.clone()).unwrap();
        let (_, sol) = optimal_allocation(&spectrum, energy).unwrap();
        let best = grid_search_best(&nus, energy);
        worst_margin = worst_margin.min(sol.capacity_bits - best);
        assert!(
            sol.capacity_bits >= best - 1e-8,
            "case {case} nus {nus:?} E {energy}: solver {} vs grid {best}",
            sol.capacity_bits
        );
    }
    report(
        "criterion 08 (allocation beats grid search)",
        true,
        &format!("worst solver-minus-grid margin {worst_margin:.3e} bits over 50 spectra"),
    );
}

#[test]
fn c09_swap_divergence_ratio() {
    let energy = 1e3;
    let mut ratios = Vec::new();
    for &xi in &[0.99f64, 0.999, 0.9999] {
        let network = SwapNetwork::pair(1.0, xi).unwrap();
        let capacity = swap_capacity(&network, energy).unwrap();
        let law = (energy / (1.0 - xi)).log2();
        ratios.push(capacity / law);
    }
    let monotone = ratios[0] > ratios[1] && ratios[1] > ratios[2] && ratios[2] > 1.0;
    let in_band = ratios.iter().all(|r| (0.85..=1.15).contains(r));
    let pass = monotone && in_band;
    report(
        "criterion 09 (swap divergence ratio)",
        pass,
        &format!(
            "capacity/log2[E/(omega-|xi|)] = {:.4}, {:.4}, {:.4} (monotone toward 1: {monotone}; inside [0.85, 1.15]: {in_band})",
            ratios[0], ratios[1], ratios[2]
        ),
    );
    assert!(
        pass,
        "ratios {ratios:?}: the divergent term obeys the law but the total capacity \
         keeps a bounded ~9.4-bit remainder at f64-representable couplings; see the \
         module comment and the soft-mode test in the nonlinear invariants suite"
    );
}

#[test]
fn c10_broadband_swap_growth() {
    let energy = 1e5;
    let spacing = 1.0;
    let mut prev = 0.0;
    let mut caps = Vec::new();
    for k in 0..5 {
        let r = 0.2 * k as f64;
        let cfg = BroadbandSwapConfig::new(3, r, spacing).unwrap();
        let c = broadband_swap_capacity(&cfg, energy).unwrap();
        caps.push(c);
        assert!(c > prev, "capacity not strictly increasing at r={r}");
        prev = c;
    }
    let cfg = BroadbandSwapConfig::new(3, 0.9, spacing).unwrap();
    let at_09 = broadband_swap_capacity(&cfg, energy).unwrap();
    let reference = 3.0f64.sqrt() * wideband_capacity_closed(energy, spacing).unwrap();
    let beats = at_09 > reference;

    // The emitted table must carry both reference curves so the scaling
    // question stays inspectable; their values are not asserted.
    let out = Command::new(env!("CARGO_BIN_EXE_capacity"))
        .args(["swapband", "--modes", "3", "--spacing", "1", "--energy", "1000", "--r-grid", "0:0.8:3"])
        .output()
        .expect("binary runs");
    let header_ok = String::from_utf8_lossy(&out.stdout)
        .starts_with("r,capacity_bits,ref_sqrt_n_bits,ref_contracted_bits");

    let pass = beats && header_ok;
    report(
        "criterion 10 (broadband swap growth)",
        pass,
        &format!(
            "capacities {caps:?} increasing; C(r=0.9) = {at_09:.1} vs sqrt(3) C_wb = {reference:.1}; reference columns emitted: {header_ok}"
        ),
    );
    assert!(pass);
}

#[test]
fn c11_csv_determinism() {
    let invocations: [&[&str]; 3] = [
        &["fig1", "--energy-grid", "0.1:1000000:5:log", "--xi-grid", "0.1:0.9:5"],
        &["fig2", "--gamma-grid", "0.001:1:5:log", "--pump-ratio", "1000"],
        &["fig3", "--energy-grid", "1:100:4:log", "--xi-grid", "0:0.9:4"],
    ];
    let mut all_equal = true;
    for args in invocations {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_capacity"))
                .args(args)
                .output()
                .expect("binary runs")
        };
        let first = run();
        let second = run();
        assert!(first.status.success(), "{:?} failed", args);
        all_equal &= first.stdout == second.stdout && !first.stdout.is_empty();
    }
    report(
        "criterion 11 (byte-identical CSV)",
        all_equal,
        "fig1/fig2/fig3 rerun byte-identically",
    );
    assert!(all_equal);
}
