//! Consistency of the broadband down-conversion routes: analytic derivatives
//! against finite differences, the first-order expansion against the exact
//! integral, and the behavior of the capacity coefficients.

use capacity_core::pdc::{
    asymptotic_capacity, band_correction, d_band_correction, d2_ln_z_density, d_ln_z_density,
    exact_capacity, exact_ln_partition, ln_z_density, perturbative_capacity,
    perturbative_solution, PdcBroadband,
};

/// Central difference with relative step 1e-6.
fn central_diff(f: impl Fn(f64) -> f64, x: f64) -> f64 {
    let h = 1e-6 * x;
    (f(x + h) - f(x - h)) / (2.0 * h)
}

#[test]
fn density_derivatives_match_finite_differences() {
    for k in 0..30 {
        let beta = 0.1 * 1.26f64.powi(k); // 0.1 .. ~100
        let analytic = d_ln_z_density(beta).unwrap();
        let numeric = central_diff(|b| ln_z_density(b).unwrap(), beta);
        assert!(
            (analytic - numeric).abs() <= 1e-6 * analytic.abs(),
            "beta={beta}: d {analytic} vs fd {numeric}"
        );

        let analytic2 = d2_ln_z_density(beta).unwrap();
        let numeric2 = central_diff(|b| d_ln_z_density(b).unwrap(), beta);
        assert!(
            (analytic2 - numeric2).abs() <= 1e-6 * analytic2.abs(),
            "beta={beta}: d2 {analytic2} vs fd {numeric2}"
        );
    }
}

#[test]
fn band_correction_derivative_matches_finite_differences() {
    for &beta in &[0.3, 1.0, 3.0, 10.0] {
        for &zeta in &[0.1, 0.5, 0.9] {
            let analytic = d_band_correction(beta, zeta).unwrap();
            let numeric = central_diff(|b| band_correction(b, zeta).unwrap(), beta);
            assert!(
                (analytic - numeric).abs() <= 1e-6 * analytic.abs().max(1e-12),
                "beta={beta} zeta={zeta}: {analytic} vs {numeric}"
            );
        }
    }
}

#[test]
fn exact_ln_partition_expands_linearly_in_epsilon() {
    // Fit ln Z(lambda fixed; epsilon) = a + b eps + c eps^2 through three
    // couplings and compare the linear coefficient with the in-band
    // correction kernel.
    let omega_p = 1.0;
    let delta = 1e-3;
    let zeta = 0.5;
    let lambda = 1.0; // beta = lambda * omega_p = 1
    let prefactor = 2.0 * omega_p / delta;

    let ln_z_at = |eps: f64| {
        let xi = eps.sqrt() * omega_p / 2.0;
        let p = PdcBroadband::new(omega_p, delta, zeta, xi).unwrap();
        exact_ln_partition(&p, lambda).unwrap()
    };
    let base = ln_z_at(1e-300); // effectively zero coupling
    let eps = [0.0025, 0.005, 0.01];
    let y: Vec<f64> = eps.iter().map(|&e| ln_z_at(e) - base).collect();

    // Richardson from the two smaller couplings; the third checks stability.
    let slope = 2.0 * y[0] / eps[0] - y[1] / eps[1];
    let slope_hi = 2.0 * y[1] / eps[1] - y[2] / eps[2];
    let want = prefactor * band_correction(1.0, zeta).unwrap();
    assert!(
        ((slope - want) / want).abs() <= 0.01,
        "fitted slope {slope} vs kernel {want}"
    );
    assert!(
        ((slope_hi - want) / want).abs() <= 0.01,
        "coarse slope {slope_hi} vs kernel {want}"
    );
}

#[test]
fn perturbative_tracks_exact_to_second_order() {
    let omega_p = 1.0;
    let delta = 1e-3;
    for &epsilon in &[0.0025f64, 0.01] {
        for &gamma in &[1e-3, 1e-2, 1e-1, 1.0] {
            let xi = epsilon.sqrt() * omega_p / 2.0;
            let p = PdcBroadband::new(omega_p, delta, 0.5, xi).unwrap();
            let energy = gamma * 2.0 * omega_p * omega_p / delta;
            let exact = exact_capacity(&p, energy).unwrap();
            let (pert, _) = perturbative_capacity(&p, energy).unwrap();
            let rel = ((exact - pert) / exact).abs();
            assert!(
                rel <= 5.0 * epsilon * epsilon,
                "eps={epsilon} gamma={gamma}: relative gap {rel}"
            );
        }
    }
}

#[test]
fn beta0_satisfies_the_energy_stationarity() {
    for &gamma in &[1e-6, 1e-3, 0.1, 1.0, 10.0] {
        let sol = perturbative_solution(gamma, 0.5).unwrap();
        let residual = (d_ln_z_density(sol.beta0).unwrap() + gamma).abs();
        assert!(
            residual <= 1e-10 * gamma.max(1.0),
            "gamma={gamma}: stationarity residual {residual}"
        );
    }
}

#[test]
fn correction_coefficient_positive_across_grid() {
    for i in 0..20 {
        // 20 log-spaced points over [1e-4, 10].
        let gamma = 1e-4 * (1e5f64).powf(i as f64 / 19.0);
        for j in 1..=9 {
            let zeta = 0.1 * j as f64;
            let sol = perturbative_solution(gamma, zeta).unwrap();
            assert!(
                sol.c1_bits > 0.0,
                "c1 not positive at gamma={gamma} zeta={zeta}: {}",
                sol.c1_bits
            );
        }
    }
}

#[test]
fn correction_coefficient_vanishes_at_infinite_bandwidth() {
    // gamma -> 0 is the infinite-pump-frequency limit at fixed E and spacing.
    let sol = perturbative_solution(1e-8, 0.5).unwrap();
    assert!(sol.c1_bits <= 1e-4, "c1 {}", sol.c1_bits);
}

#[test]
fn exact_capacity_below_infinite_band_reference() {
    // A finite cutoff holds less entropy than two uncut wideband branches,
    // and the gap closes as gamma -> 0.
    let delta = 1e-3;
    let mut prev_ratio = 0.0;
    for &gamma in &[1.0, 0.1, 0.01, 1e-3] {
        let p = PdcBroadband::new(1.0, delta, 0.5, 0.0).unwrap();
        let energy = gamma * 2.0 / delta;
        let exact = exact_capacity(&p, energy).unwrap();
        let asym = asymptotic_capacity(&p, energy).unwrap();
        assert!(exact <= asym, "gamma={gamma}: exact {exact} above reference {asym}");
        let ratio = exact / asym;
        assert!(ratio > prev_ratio, "gamma={gamma}: ratio {ratio} not closing");
        prev_ratio = ratio;
    }
    assert!(prev_ratio > 0.95, "gamma=1e-3 should be within 5% of the reference");
}
