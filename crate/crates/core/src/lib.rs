//! Charge qubit coupled to an annular microwave cavity through the scalar
//! potential alone.
//!
//! The qubit sits outside the cavity, where the cavity fields vanish, and
//! interacts with the mode only through the potential of the wall surface
//! charges. This crate solves the lowest cavity mode, the resulting
//! coupling strength, the Jaynes-Cummings dressed states and Rabi dynamics,
//! and the competing free-space decay rate.
//!
//! ```
//! use qedab::{coupling_g, solve_lowest_mode, CavityGeometry, QubitSpectrum};
//!
//! let geometry = CavityGeometry::from_ratios(2.5e-3, 0.1, 1e-3)?;
//! let mode = solve_lowest_mode(&geometry)?;
//! let qubit = QubitSpectrum::from_splitting(mode.omega, 1.0)?;
//! let coupling = coupling_g(&mode, &geometry, &qubit)?;
//! assert!((mode.frequency_hz() / 9.09e9 - 1.0).abs() < 0.01);
//! assert!((coupling.g_hz() / 5.27e6 - 1.0).abs() < 0.02);
//! # Ok::<(), qedab::Error>(())
//! ```

pub mod cavity;
pub mod constants;
pub mod coupling;
pub mod decay;
pub mod dynamics;
pub mod error;
pub mod qubit;
pub mod quadrature;

pub use cavity::{
    beta_factor, boundary_determinant, field_amplitudes, radial_u, solve_lowest_mode,
    CavityGeometry, CavityMode, FieldAmplitudes,
};
pub use constants::{constants, PhysicalConstants};
pub use coupling::{
    coupling_g, f_factor, f_from_mode, g_from_potential, potential_amplitudes, CouplingResult,
    ScalarPotential,
};
pub use decay::{coherence_budget, spontaneous_rate, DecayParams};
pub use dynamics::{
    build_hamiltonian, dressed_frequencies, evolve, fock_exchange_splitting,
    fock_initial_splitting, lamb_shift, rabi_populations_analytic, BasisState, DressedPair,
    EvolutionResult, InitialState, JCSystem, Propagator, QubitLevel,
};
pub use error::{Error, Result};
pub use qubit::{charge_matrix_element, qubit_spectrum, QubitParams, QubitSpectrum};
