//! Spontaneous emission of the qubit into free-space continuum modes.

use std::f64::consts::PI;

use crate::constants::{ALPHA, C};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayParams {
    /// Qubit angular frequency ω_q, rad/s.
    pub omega_q: f64,
    /// Junction length ℓ, m.
    pub junction_length: f64,
    pub sin_gamma: f64,
}

impl DecayParams {
    pub fn new(omega_q: f64, junction_length: f64, sin_gamma: f64) -> Result<Self> {
        if !(omega_q >= 0.0 && omega_q.is_finite()) {
            return Err(Error::InvalidDecay(format!("omega_q must be >= 0 (got {omega_q})")));
        }
        if !(junction_length > 0.0 && junction_length.is_finite()) {
            return Err(Error::InvalidDecay(format!(
                "junction_length must be > 0 (got {junction_length})"
            )));
        }
        if !(0.0..=1.0).contains(&sin_gamma) {
            return Err(Error::InvalidDecay(format!(
                "sin_gamma must lie in [0, 1] (got {sin_gamma})"
            )));
        }
        Ok(Self { omega_q, junction_length, sin_gamma })
    }
}

/// Γ = 16αℓ²ω_q³ sin²γ / (3c²), in 1/s.
pub fn spontaneous_rate(params: &DecayParams) -> f64 {
    let l = params.junction_length;
    let w = params.omega_q;
    let s = params.sin_gamma;
    16.0 * ALPHA * l * l * w * w * w * s * s / (3.0 * C * C)
}

/// Number of vacuum Rabi periods per decay time, Ω_R/(2πΓ). Infinite when
/// Γ = 0.
pub fn coherence_budget(gamma_rate: f64, rabi: f64) -> Result<f64> {
    if rabi.is_nan() || rabi <= 0.0 {
        return Err(Error::Domain(format!("Rabi frequency must be > 0 (got {rabi})")));
    }
    if gamma_rate == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(rabi / (2.0 * PI * gamma_rate))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference() -> DecayParams {
        DecayParams::new(2.0 * PI * 5e9, 300e-9, 1.0).unwrap()
    }

    #[test]
    fn reference_rate() {
        let gamma = spontaneous_rate(&reference());
        assert!((gamma / 1.207 - 1.0).abs() < 0.01, "Γ = {gamma}");
        assert!(1.0 / gamma > 0.72 && 1.0 / gamma < 0.95);
    }

    #[test]
    fn decoupled() {
        let p = DecayParams { sin_gamma: 0.0, ..reference() };
        assert_eq!(spontaneous_rate(&p), 0.0);
        assert_eq!(coherence_budget(0.0, 1.0).unwrap(), f64::INFINITY);
    }

    #[test]
    fn budget() {
        let rabi = 2.0 * PI * 2.0 * 5.27e6;
        let b = coherence_budget(1.21, rabi).unwrap();
        assert!((b / 8.7e6 - 1.0).abs() < 0.01);
        let p4 = DecayParams { junction_length: 4.0 * 300e-9, ..reference() };
        let b1 = coherence_budget(spontaneous_rate(&reference()), rabi).unwrap();
        let b4 = coherence_budget(spontaneous_rate(&p4), rabi).unwrap();
        assert!((b1 / b4 - 16.0).abs() < 1e-12);
        assert!(coherence_budget(1.0, 0.0).is_err());
    }

    #[test]
    fn validation() {
        assert!(DecayParams::new(1.0, 0.0, 1.0).is_err());
        assert!(DecayParams::new(1.0, 1e-7, 1.2).is_err());
        assert!(DecayParams::new(-1.0, 1e-7, 1.0).is_err());
    }
}
