//! Two-level Cooper-pair-box spectrum.
//!
//! The charge Hamiltonian in the `{|0⟩, |1⟩}` basis is
//! `[[ε₀, −E_J/2], [−E_J/2, ε₁]]` with `ε_n = E_c(n − n_g)²`. Its
//! eigenstates are a rotation by `γ/2`:
//! `|g⟩ = cos(γ/2)|0⟩ + sin(γ/2)|1⟩`, `|e⟩ = −sin(γ/2)|0⟩ + cos(γ/2)|1⟩`.

use crate::constants::{constants, E_CHARGE, HBAR};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitParams {
    /// Charging energy E_c, J.
    pub e_c: f64,
    /// Josephson coupling |E_J|, J. A flux-controlled phase on E_J only
    /// rotates the eigenvectors and is absorbed into the basis.
    pub e_j: f64,
    /// Gate charge n_g.
    pub n_g: f64,
}

impl QubitParams {
    pub fn new(e_c: f64, e_j: f64, n_g: f64) -> Result<Self> {
        if !(e_c > 0.0 && e_c.is_finite()) {
            return Err(Error::InvalidQubit(format!("e_c must be > 0 (got {e_c})")));
        }
        if !(e_j >= 0.0 && e_j.is_finite()) {
            return Err(Error::InvalidQubit(format!("e_j must be >= 0 (got {e_j})")));
        }
        if !n_g.is_finite() {
            return Err(Error::InvalidQubit("n_g must be finite".into()));
        }
        Ok(Self { e_c, e_j, n_g })
    }

    /// Energies given as E/h in Hz.
    pub fn from_hz(e_c_hz: f64, e_j_hz: f64, n_g: f64) -> Result<Self> {
        let h = constants().h();
        Self::new(e_c_hz * h, e_j_hz * h, n_g)
    }

    /// Charge-state energy ε_n = E_c(n − n_g)².
    pub fn charge_energy(&self, n: u8) -> f64 {
        let d = f64::from(n) - self.n_g;
        self.e_c * d * d
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitSpectrum {
    /// Ground energy E_g, J.
    pub energy_g: f64,
    /// Excited energy E_e, J.
    pub energy_e: f64,
    /// (E_e − E_g)/ħ, rad/s.
    pub omega_q: f64,
    /// Mixing angle γ ∈ [0, π].
    pub gamma_mix: f64,
    pub sin_gamma: f64,
}

impl QubitSpectrum {
    /// Spectrum specified directly by its splitting and mixing, for
    /// scenarios that bypass the Cooper-pair-box parameters. Energies are
    /// placed symmetrically about zero.
    pub fn from_splitting(omega_q: f64, sin_gamma: f64) -> Result<Self> {
        if !(omega_q >= 0.0 && omega_q.is_finite()) {
            return Err(Error::InvalidQubit(format!("omega_q must be >= 0 (got {omega_q})")));
        }
        if !(0.0..=1.0).contains(&sin_gamma) {
            return Err(Error::InvalidQubit(format!(
                "sin_gamma must lie in [0, 1] (got {sin_gamma})"
            )));
        }
        let half = 0.5 * HBAR * omega_q;
        Ok(Self {
            energy_g: -half,
            energy_e: half,
            omega_q,
            gamma_mix: sin_gamma.asin(),
            sin_gamma,
        })
    }

    /// ω_q = 0, reached only for E_J = 0 at n_g = 1/2.
    pub fn is_degenerate(&self) -> bool {
        self.omega_q == 0.0
    }

    /// `|g⟩` in the charge basis `(|0⟩, |1⟩)`.
    pub fn ground_state(&self) -> [f64; 2] {
        let (s, c) = (0.5 * self.gamma_mix).sin_cos();
        [c, s]
    }

    /// `|e⟩` in the charge basis `(|0⟩, |1⟩)`.
    pub fn excited_state(&self) -> [f64; 2] {
        let (s, c) = (0.5 * self.gamma_mix).sin_cos();
        [-s, c]
    }
}

pub fn qubit_spectrum(params: &QubitParams) -> QubitSpectrum {
    let bias = params.e_c * (1.0 - 2.0 * params.n_g);
    let splitting = bias.hypot(params.e_j);
    let gamma = params.e_j.atan2(bias);
    let mean = 0.5 * (params.charge_energy(0) + params.charge_energy(1));
    QubitSpectrum {
        energy_g: mean - 0.5 * splitting,
        energy_e: mean + 0.5 * splitting,
        omega_q: splitting / HBAR,
        gamma_mix: gamma,
        // sin of atan2 with a non-negative first argument
        sin_gamma: if splitting > 0.0 { params.e_j / splitting } else { 0.0 },
    }
}

/// Off-diagonal charge matrix element `e·sin γ` of `q̂ = e sin γ (σ₊ + σ₋)`.
pub fn charge_matrix_element(spectrum: &QubitSpectrum) -> f64 {
    E_CHARGE * spectrum.sin_gamma
}
