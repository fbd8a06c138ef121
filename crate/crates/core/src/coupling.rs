//! Scalar potential at the qubit site and the resulting coupling strength.
//!
//! The surface charges of the inner and outer walls produce
//! `V_j(t) = V_j⁰ (a e^{−iω(t−ρ_j/c)} + h.c.)`, which add to
//! `V(t) = −V₀ (a e^{−i(ωt−θ)} + h.c.)`. The qubit charge `q̂ = e sin γ (σ₊+σ₋)`
//! sees this potential, giving `H_int = ħg(σ₊+σ₋)(a e^{iθ} + a† e^{−iθ})`.

use std::f64::consts::PI;

use crate::cavity::{solve_lowest_mode, CavityGeometry, CavityMode};
use crate::constants::{ALPHA, E_CHARGE, HBAR};
use crate::error::Result;
use crate::qubit::{charge_matrix_element, QubitSpectrum};

/// Reference inner radius used by [`f_factor`]; f depends only on δρ/ρ₁.
pub const F_REFERENCE_RHO1: f64 = 1.0;
/// g/ω above this is outside the weak-coupling regime the RWA presumes.
pub const WEAK_COUPLING_LIMIT: f64 = 1e-2;

/// Scalar-potential amplitudes at the qubit site.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarPotential {
    /// a₁ = u(ρ₁)/(kρ₁).
    pub a1: f64,
    /// a₂ = u(ρ₂)/(kρ₂).
    pub a2: f64,
    /// D = √(a₁² + a₂² − 2a₁a₂cos(kδρ)).
    pub big_d: f64,
    /// Inner-wall amplitude V₁⁰, V.
    pub v1_0: f64,
    /// Outer-wall amplitude V₂⁰, V.
    pub v2_0: f64,
    /// Total amplitude V₀ ≥ 0, V.
    pub v0: f64,
    /// Phase shift θ ∈ (−π, π].
    pub theta: f64,
}

impl ScalarPotential {
    /// Classical value of the two wall contributions at time `t` for a unit
    /// coherent amplitude: `V₁⁰cos(ω(t−ρ₁/c)) + V₂⁰cos(ω(t−ρ₂/c))`.
    pub fn wall_sum(&self, mode: &CavityMode, geometry: &CavityGeometry, t: f64) -> f64 {
        let phase = mode.omega * t;
        self.v1_0 * (phase - mode.k * geometry.rho1()).cos()
            + self.v2_0 * (phase - mode.k * geometry.rho2()).cos()
    }

    /// The same signal from the combined form `−V₀cos(ωt − θ)`.
    pub fn combined(&self, mode: &CavityMode, t: f64) -> f64 {
        -self.v0 * (mode.omega * t - self.theta).cos()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingResult {
    pub potential: ScalarPotential,
    /// Geometric factor f(δρ/ρ₁).
    pub f_factor: f64,
    /// g/ω.
    pub g_over_omega: f64,
    /// Coupling magnitude |g|, rad/s. The sign from ħg = −qV₀/2 is dropped;
    /// every observable depends on g².
    pub g_angular: f64,
}

impl CouplingResult {
    pub fn g_hz(&self) -> f64 {
        self.g_angular / (2.0 * PI)
    }

    pub fn is_weak_coupling(&self) -> bool {
        self.g_over_omega < WEAK_COUPLING_LIMIT
    }
}

/// √(αkδz/(2π²β)), the dimensionless amplitude shared by V_j⁰ and V₀.
fn potential_scale(mode: &CavityMode, geometry: &CavityGeometry) -> f64 {
    (ALPHA * mode.k * geometry.delta_z() / (2.0 * PI * PI * mode.beta)).sqrt()
}

fn wrap_angle(x: f64) -> f64 {
    let w = x.rem_euclid(2.0 * PI);
    if w > PI {
        w - 2.0 * PI
    } else {
        w
    }
}

pub fn potential_amplitudes(mode: &CavityMode, geometry: &CavityGeometry) -> Result<ScalarPotential> {
    let (r1, r2) = (geometry.rho1(), geometry.rho2());
    let a1 = mode.u(r1)? / (mode.k * r1);
    let a2 = mode.u(r2)? / (mode.k * r2);
    let k_drho = mode.k * geometry.delta_rho();
    let (s, c) = k_drho.sin_cos();
    let big_d = (a1 * a1 + a2 * a2 - 2.0 * a1 * a2 * c).max(0.0).sqrt();

    // ħω/e in volts.
    let volt = HBAR * mode.omega / E_CHARGE;
    let scale = volt * potential_scale(mode, geometry);
    let theta = wrap_angle(mode.k * r1 - (a2 * s).atan2(a1 - a2 * c));

    Ok(ScalarPotential {
        a1,
        a2,
        big_d,
        v1_0: -scale * a1,
        v2_0: scale * a2,
        v0: scale * big_d,
        theta,
    })
}

/// f = √(D²kρ₁/(2π²β)) for an already solved mode.
pub fn f_from_mode(mode: &CavityMode, geometry: &CavityGeometry) -> Result<f64> {
    let d = potential_amplitudes(mode, geometry)?.big_d;
    Ok((d * d * mode.k * geometry.rho1() / (2.0 * PI * PI * mode.beta)).sqrt())
}

/// Geometric factor f(δρ/ρ₁), solving the mode at a fixed reference radius.
pub fn f_factor(delta_rho_over_rho1: f64) -> Result<f64> {
    // δz never enters f; any positive height will do.
    let geometry = CavityGeometry::from_ratios(F_REFERENCE_RHO1, delta_rho_over_rho1, 1e-3)?;
    let mode = solve_lowest_mode(&geometry)?;
    f_from_mode(&mode, &geometry)
}

/// Coupling from the geometric factor: `g = ω·f·√(αδz/ρ₁)·sin γ`.
pub fn coupling_g(
    mode: &CavityMode,
    geometry: &CavityGeometry,
    spectrum: &QubitSpectrum,
) -> Result<CouplingResult> {
    let potential = potential_amplitudes(mode, geometry)?;
    let f = f_from_mode(mode, geometry)?;
    let g_over_omega = f * (ALPHA * geometry.delta_z() / geometry.rho1()).sqrt() * spectrum.sin_gamma;
    Ok(CouplingResult {
        potential,
        f_factor: f,
        g_over_omega,
        g_angular: g_over_omega * mode.omega,
    })
}

/// Coupling from the potential amplitude: `ħ|g| = qV₀/2` with the Cooper-pair
/// charge amplitude `q = 2e·sin γ`.
pub fn g_from_potential(potential: &ScalarPotential, spectrum: &QubitSpectrum) -> f64 {
    let q = 2.0 * charge_matrix_element(spectrum);
    q * potential.v0 / (2.0 * HBAR)
}
