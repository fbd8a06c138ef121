//! Physical constants (CODATA 2018, SI).
//!
//! Lengths are in meters, energies in joules, and every angular frequency
//! field is named as such (`omega*`, rad/s) to keep it apart from plain Hz.
//! Formulas taken from Gaussian-unit expressions are only used where α and
//! c carry the unit dependence, so no conversion factor appears downstream.

use std::f64::consts::PI;

/// Fine-structure constant α.
pub const ALPHA: f64 = 7.297_352_569_3e-3;
/// Speed of light in vacuum, m/s (exact).
pub const C: f64 = 2.997_924_58e8;
/// Reduced Planck constant ħ, J·s (exact).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Elementary charge, C (exact).
pub const E_CHARGE: f64 = 1.602_176_634e-19;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub alpha: f64,
    pub c: f64,
    pub hbar: f64,
    pub e: f64,
}

impl PhysicalConstants {
    /// Planck constant h = 2πħ.
    pub fn h(&self) -> f64 {
        2.0 * PI * self.hbar
    }
}

pub fn constants() -> PhysicalConstants {
    PhysicalConstants {
        alpha: ALPHA,
        c: C,
        hbar: HBAR,
        e: E_CHARGE,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codata_values() {
        let k = constants();
        assert!(((1.0 / k.alpha) - 137.035_999).abs() < 1e-5);
        assert_eq!(k.c, 299_792_458.0);
        assert_eq!(k, constants());
    }

    #[test]
    fn alpha_matches_its_definition() {
        // SI: α = e²/(4πε₀ħc), so e²/(ħcα) must reproduce 4πε₀.
        const EPSILON_0: f64 = 8.854_187_812_8e-12;
        let k = constants();
        let four_pi_eps0 = k.e * k.e / (k.hbar * k.c * k.alpha);
        assert!((four_pi_eps0 / (4.0 * PI * EPSILON_0) - 1.0).abs() < 1e-9);
    }
}
