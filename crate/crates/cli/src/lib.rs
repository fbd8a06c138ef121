//! Scenario runner behind the `qedab` binary: parses a JSON scenario and
//! renders the mode report, decay report and figure sweeps as CSV.

pub mod config;
pub mod run;

pub use config::{ConfigError, Grid, Product, QubitLabel, QubitSpec, Scenario};
pub use run::{
    fmt_num, resolve, run_all, run_decay, run_fig2, run_fig3a, run_fig3b, run_mode, run_product,
    run_rabi, CliError, Report, Resolved,
};

/// Scenario with the reference device: ρ₁ = 2.5 mm, δρ/ρ₁ = 0.1,
/// δz/ρ₁ = 1e-3, sin γ = 1 at resonance, ℓ = 300 nm.
pub const DEFAULT_SCENARIO: &str = include_str!("../scenarios/default.json");

pub fn default_scenario() -> Scenario {
    Scenario::from_json_str(DEFAULT_SCENARIO).expect("bundled scenario is valid")
}
