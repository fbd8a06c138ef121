//! Shared fixtures for the criterion benchmarks.

use qedab::{
    coupling_g, solve_lowest_mode, CavityGeometry, CouplingResult, JCSystem, QubitSpectrum,
};

/// ρ₁ = 2.5 mm, δρ/ρ₁ = 0.1, δz/ρ₁ = 1e-3.
pub fn reference_geometry() -> CavityGeometry {
    CavityGeometry::from_ratios(2.5e-3, 0.1, 1e-3).expect("valid geometry")
}

pub fn reference_coupling() -> (f64, CouplingResult) {
    let geometry = reference_geometry();
    let mode = solve_lowest_mode(&geometry).expect("mode");
    let qubit = QubitSpectrum::from_splitting(mode.omega, 1.0).expect("qubit");
    let coupling = coupling_g(&mode, &geometry, &qubit).expect("coupling");
    (mode.omega, coupling)
}

/// Resonant system at the reference coupling.
pub fn reference_system(rwa: bool) -> JCSystem {
    let (omega, coupling) = reference_coupling();
    JCSystem::new(omega, omega, coupling.g_angular)
        .with_theta(coupling.potential.theta)
        .with_rwa(rwa)
        .with_n_cut(JCSystem::default_n_cut(0, rwa))
}

/// `points` samples covering `periods` vacuum Rabi periods.
pub fn time_grid(system: &JCSystem, periods: f64, points: usize) -> Vec<f64> {
    let t_end = periods * 2.0 * std::f64::consts::PI / (2.0 * system.g);
    (0..points)
        .map(|i| t_end * i as f64 / (points - 1) as f64)
        .collect()
}
