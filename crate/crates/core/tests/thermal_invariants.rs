//! Cross-cutting invariants of the thermal solver, checked against the
//! Fock-ladder oracle and brute-force allocation scans.

use capacity_core::fock::{required_levels, truncated_entropy, TruncatedThermal};
use capacity_core::thermal::{
    energy_at, ln_partition, narrowband_capacity, optimal_allocation, solve_thermal,
    thermal_entropy, wideband_capacity_closed, ModeSpectrum,
};

use proptest::prelude::*;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use std::f64::consts::LN_2;

fn spectrum(nus: &[f64]) -> ModeSpectrum {
    ModeSpectrum::new(nus.to_vec()).unwrap()
}

#[test]
fn entropy_anchor_against_fock_ladder() {
    // g(1.25) evaluated three ways: closed form, narrowband at omega = 0.8,
    // and the explicit photon-ladder summation.
    let closed = thermal_entropy(1.25).unwrap();
    assert!((closed - 2.229921134636).abs() < 1e-11, "{closed}");
    assert_eq!(narrowband_capacity(0.8, 1.0).unwrap(), closed);

    let beta = (1.0f64 + 1.0 / 1.25).ln();
    let ladder = TruncatedThermal::new(1.0, beta, required_levels(1.0, beta).unwrap()).unwrap();
    assert!((truncated_entropy(&ladder) - closed).abs() < 1e-9);
}

#[test]
fn solver_matches_fock_entropies_on_split_spectrum() {
    let sol = solve_thermal(&spectrum(&[0.5, 1.5]), 2.0).unwrap();
    assert!((sol.beta - 0.700153613439).abs() < 1e-9, "beta {}", sol.beta);
    assert!(
        (sol.capacity_bits - 4.400811758391).abs() < 1e-9,
        "capacity {}",
        sol.capacity_bits
    );
    // Per-mode entropies summed from explicit ladders.
    let mut total = 0.0;
    for &nu in [0.5f64, 1.5].iter() {
        let ladder =
            TruncatedThermal::new(nu, sol.beta, required_levels(nu, sol.beta).unwrap()).unwrap();
        total += truncated_entropy(&ladder);
    }
    assert!(
        (total - sol.capacity_bits).abs() < 1e-8,
        "fock total {total} vs capacity {}",
        sol.capacity_bits
    );
}

#[test]
fn wideband_comb_approaches_closed_law() {
    let delta = 1.0;
    let energy = 1e5;
    let comb = ModeSpectrum::wideband_comb(delta, energy).unwrap();
    let solved = solve_thermal(&comb, energy).unwrap().capacity_bits;
    let closed = wideband_capacity_closed(energy, delta).unwrap();
    let rel = ((solved - closed) / closed).abs();
    assert!(rel <= 5e-3, "comb {solved} vs closed {closed}: rel {rel}");
}

#[test]
fn additivity_over_disjoint_union() {
    let left = spectrum(&[0.4, 1.1]);
    let right = spectrum(&[0.9, 2.3, 3.1]);
    let union = left.concat(&right);
    let sol = solve_thermal(&union, 4.2).unwrap();
    // Entropy of each part at the jointly solved beta.
    let mut parts = 0.0;
    for s in [&left, &right] {
        let e = energy_at(s, sol.beta).unwrap();
        let lnz = ln_partition(s, sol.beta).unwrap();
        parts += (sol.beta * e + lnz) / LN_2;
    }
    assert!(
        (parts - sol.capacity_bits).abs() < 1e-10 * (1.0 + sol.capacity_bits),
        "parts {parts} vs union {}",
        sol.capacity_bits
    );
}

#[test]
fn allocation_beats_grid_scan_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let nus = [rng.gen_range(0.2..3.0), rng.gen_range(0.2..3.0)];
        let energy = rng.gen_range(0.5..5.0);
        let (_, sol) = optimal_allocation(&spectrum(&nus), energy).unwrap();
        let mut best = 0.0f64;
        let points = 10_000;
        for i in 0..=points {
            let e0 = energy * i as f64 / points as f64;
            let rest = (energy - e0).max(0.0);
            let v = thermal_entropy(e0 / nus[0]).unwrap()
                + thermal_entropy(rest / nus[1]).unwrap();
            best = best.max(v);
        }
        assert!(
            sol.capacity_bits >= best - 1e-8,
            "nus {nus:?} E {energy}: solver {} vs scan {best}",
            sol.capacity_bits
        );
    }
}

proptest! {
    #[test]
    fn capacity_identity_holds(
        nus in proptest::collection::vec(0.05f64..5.0, 1..6),
        energy in 0.01f64..50.0,
    ) {
        let s = ModeSpectrum::new(nus).unwrap();
        let sol = solve_thermal(&s, energy).unwrap();
        let lhs = sol.capacity_bits * LN_2;
        let rhs = sol.beta * sol.energy + sol.ln_z;
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + sol.ln_z.abs()));
        // Occupancies follow the Bose form at the solved beta.
        for (k, (&nu, &n)) in s.frequencies().iter().zip(&sol.occupancies).enumerate() {
            let bose = 1.0 / (sol.beta * nu).exp_m1();
            prop_assert!((n - bose).abs() <= 1e-12 * (1.0 + bose), "mode {k}");
        }
        // The achieved energy re-sums from the occupancies.
        let resum: f64 = s.frequencies().iter().zip(&sol.occupancies)
            .map(|(&nu, &n)| nu * n).sum();
        prop_assert!((resum - sol.energy).abs() <= 1e-10 * sol.energy.max(1e-300));
    }

    #[test]
    fn capacity_monotone_in_energy_and_frequency_scale(
        nus in proptest::collection::vec(0.05f64..5.0, 1..6),
        energy in 0.1f64..20.0,
        bump in 1.05f64..4.0,
    ) {
        let s = ModeSpectrum::new(nus.clone()).unwrap();
        let base = solve_thermal(&s, energy).unwrap().capacity_bits;
        let more = solve_thermal(&s, energy * bump).unwrap().capacity_bits;
        prop_assert!(more > base, "capacity not increasing in E: {base} -> {more}");

        let stretched: Vec<f64> = nus.iter().map(|nu| nu * bump).collect();
        let s2 = ModeSpectrum::new(stretched).unwrap();
        let scaled = solve_thermal(&s2, energy).unwrap().capacity_bits;
        prop_assert!(scaled < base, "capacity not decreasing under frequency scaling");
    }
}
