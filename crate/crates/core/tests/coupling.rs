use std::f64::consts::PI;

use qedab::constants::ALPHA;
use qedab::coupling::{f_from_mode, potential_amplitudes};
use qedab::{
    coupling_g, f_factor, g_from_potential, solve_lowest_mode, CavityGeometry, CavityMode,
    QubitSpectrum,
};

fn solved(rho1: f64, ratio: f64, dz_ratio: f64) -> (CavityGeometry, CavityMode) {
    let g = CavityGeometry::from_ratios(rho1, ratio, dz_ratio).unwrap();
    let m = solve_lowest_mode(&g).unwrap();
    (g, m)
}

/// D from the phasor sum of the two wall contributions, independent of the
/// closed form.
#[test]
fn wall_potentials_add_to_single_phasor() {
    for ratio in [0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0] {
        let (g, m) = solved(2.5e-3, ratio, 1e-3);
        let p = potential_amplitudes(&m, &g).unwrap();
        assert!(p.theta > -PI && p.theta <= PI);
        let period = 2.0 * PI / m.omega;
        for i in 0..=256 {
            let t = period * i as f64 / 256.0;
            let direct = p.wall_sum(&m, &g, t);
            let combined = p.combined(&m, t);
            assert!(
                (direct - combined).abs() <= 1e-10 * p.v0.max(p.v1_0.abs()),
                "ratio {ratio} t {t}: {direct} vs {combined}"
            );
        }
    }
}

#[test]
fn equal_walls_cancel() {
    // Synthetic a₁ = a₂ with kδρ → 0 must leave no exterior potential.
    let a = 1.6;
    for kd in [1e-2, 1e-4, 1e-6] {
        let d = (a * a + a * a - 2.0 * a * a * f64::cos(kd)).sqrt();
        assert!(d < 2.0 * a * kd);
    }
}

#[test]
fn reference_potential_consistent_with_quoted_coupling() {
    let (g, m) = solved(2.5e-3, 0.1, 1e-3);
    let q = QubitSpectrum::from_splitting(m.omega, 1.0).unwrap();
    let p = potential_amplitudes(&m, &g).unwrap();
    let g12 = g_from_potential(&p, &q);
    assert!((g12 / (2.0 * PI) / 5.27e6 - 1.0).abs() < 0.02);
}

#[test]
fn two_routes_to_g_agree() {
    for ratio in [0.05, 0.1, 0.5, 1.0] {
        for sg in [0.2, 0.7, 1.0] {
            let (g, m) = solved(3e-3, ratio, 2e-3);
            let q = QubitSpectrum::from_splitting(m.omega, sg).unwrap();
            let c = coupling_g(&m, &g, &q).unwrap();
            let alt = g_from_potential(&c.potential, &q);
            assert!((alt / c.g_angular - 1.0).abs() < 1e-10);
            let expect = c.f_factor * (ALPHA * g.delta_z() / g.rho1()).sqrt() * sg;
            assert!((c.g_over_omega / expect - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn f_reconstructed_from_quoted_numbers() {
    // f = (g/ω)/√(α δz/ρ₁) with g/2π = 5.27 MHz, ω/2π = 9.09 GHz.
    let f_quoted = (5.27e6 / 9.09e9) / (ALPHA * 1e-3).sqrt();
    assert!((f_quoted - 0.215).abs() < 1e-3);
    let f = f_factor(0.1).unwrap();
    assert!((f / f_quoted - 1.0).abs() < 0.05);
}

#[test]
fn f_is_scale_invariant() {
    let (g_small, m_small) = solved(2.5e-3, 0.1, 1e-3);
    let (g_large, m_large) = solved(25e-3, 0.1, 1e-3);
    let a = f_from_mode(&m_small, &g_small).unwrap();
    let b = f_from_mode(&m_large, &g_large).unwrap();
    assert!((a / b - 1.0).abs() < 1e-10);
    assert!((f_factor(0.1).unwrap() / a - 1.0).abs() < 1e-10);
}

#[test]
fn f_is_invariant_under_coefficient_rescaling() {
    let (g, m) = solved(1.0, 0.1, 1e-3);
    let base = f_from_mode(&m, &g).unwrap();
    for s in [0.5, 3.0] {
        let mut scaled = CavityMode { coeff_a: s * m.coeff_a, coeff_b: s * m.coeff_b, ..m };
        scaled.beta = qedab::beta_factor(&scaled, &g).unwrap();
        let f = f_from_mode(&scaled, &g).unwrap();
        assert!((f / base - 1.0).abs() < 1e-10);
    }
}

#[test]
fn weak_coupling_over_thin_cavities() {
    for i in 1..=20 {
        let ratio = i as f64 * 0.05;
        for dz in [1e-4, 1e-3, 1e-2] {
            let (g, m) = solved(2.5e-3, ratio, dz);
            let q = QubitSpectrum::from_splitting(m.omega, 1.0).unwrap();
            let c = coupling_g(&m, &g, &q).unwrap();
            assert!(c.g_over_omega < 1e-2 && c.is_weak_coupling());
            assert!(c.f_factor >= 0.0 && c.potential.v0 >= 0.0);
        }
    }
}

#[test]
fn f_grows_with_width() {
    let mut prev = 0.0;
    for i in 1..=20 {
        let f = f_factor(i as f64 * 0.05).unwrap();
        assert!(f > prev);
        prev = f;
    }
}
