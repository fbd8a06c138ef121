//! Scenario execution. Every product is rendered to CSV text in memory so the
//! binary only decides where the bytes go.

use std::f64::consts::PI;
use std::fmt::Write as _;

use thiserror::Error;

use qedab::{
    coherence_budget, coupling_g, dressed_frequencies, evolve, f_factor, qubit_spectrum,
    solve_lowest_mode, spontaneous_rate, BasisState, CavityGeometry, CavityMode, CouplingResult,
    DecayParams, JCSystem, Propagator, QubitSpectrum,
};

use crate::config::{linspace, ConfigError, Product, QubitLabel, QubitSpec, Scenario};

/// Samples per default time grid.
pub const DEFAULT_TIME_POINTS: usize = 2001;
/// Rabi periods covered by a default time grid.
pub const DEFAULT_RABI_PERIODS: f64 = 10.0;
/// Default detuning sweep spans ±this many g.
pub const DEFAULT_DETUNING_SPAN_G: f64 = 20.0;
pub const DEFAULT_DETUNING_POINTS: usize = 401;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Solver(#[from] qedab::Error),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            _ => 1,
        }
    }
}

/// Rendered CSV plus the diagnostics gathered while producing it.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub text: String,
    pub warnings: Vec<String>,
    /// Set when a sweep had rows and none of them could be computed.
    pub all_rows_failed: bool,
}

/// Number format used in every CSV cell: 12 significant digits.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.11e}")
}

/// Cavity mode, qubit and coupling of a scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resolved {
    pub geometry: CavityGeometry,
    pub mode: CavityMode,
    pub spectrum: QubitSpectrum,
    pub coupling: CouplingResult,
}

impl Resolved {
    /// Δ = ω_q − ω, rad/s.
    pub fn detuning(&self) -> f64 {
        self.spectrum.omega_q - self.mode.omega
    }
}

pub fn resolve(scenario: &Scenario, warnings: &mut Vec<String>) -> Result<Resolved, CliError> {
    let geometry = scenario.geometry;
    let mode = solve_lowest_mode(&geometry)?;
    let spectrum = match scenario.qubit {
        QubitSpec::Params(p) => qubit_spectrum(&p),
        QubitSpec::Override { sin_gamma, omega_q_over_2pi_hz } => {
            let omega_q = omega_q_over_2pi_hz.map_or(mode.omega, |f| 2.0 * PI * f);
            QubitSpectrum::from_splitting(omega_q, sin_gamma)?
        }
    };
    let coupling = coupling_g(&mode, &geometry, &spectrum)?;
    if !coupling.is_weak_coupling() {
        warnings.push(format!(
            "g/omega = {:.3e} is outside the weak-coupling regime",
            coupling.g_over_omega
        ));
    }
    Ok(Resolved { geometry, mode, spectrum, coupling })
}

fn key_value(rows: &[(&str, f64)]) -> String {
    let mut out = String::from("quantity,value\n");
    for (k, v) in rows {
        let _ = writeln!(out, "{k},{}", fmt_num(*v));
    }
    out
}

pub fn run_mode(scenario: &Scenario) -> Result<Report, CliError> {
    let mut warnings = Vec::new();
    let geometry = scenario.geometry;
    let mode = solve_lowest_mode(&geometry)?;
    let (inner, outer) = mode.boundary_residuals(&geometry)?;
    let text = key_value(&[
        ("rho1_m", geometry.rho1()),
        ("rho2_m", geometry.rho2()),
        ("delta_z_m", geometry.delta_z()),
        ("k_per_m", mode.k),
        ("k_rho1", mode.k * geometry.rho1()),
        ("omega_over_2pi_hz", mode.frequency_hz()),
        ("beta", mode.beta),
        ("coeff_a", mode.coeff_a),
        ("coeff_b", mode.coeff_b),
        ("boundary_residual_inner", inner),
        ("boundary_residual_outer", outer),
    ]);
    if inner.abs() > 1e-8 || outer.abs() > 1e-8 {
        warnings.push(format!("boundary residuals {inner:.3e}, {outer:.3e} exceed 1e-8"));
    }
    Ok(Report { text, warnings, all_rows_failed: false })
}

pub fn run_fig2(scenario: &Scenario) -> Result<Report, CliError> {
    let grid = &scenario.simulation.delta_rho_over_rho1;
    let mut report = Report {
        text: String::from("delta_rho_over_rho1,f_factor\n"),
        ..Default::default()
    };
    let mut failures = 0;
    for &r in grid {
        match f_factor(r) {
            Ok(f) => {
                let _ = writeln!(report.text, "{},{}", fmt_num(r), fmt_num(f));
            }
            Err(e) => {
                failures += 1;
                report.warnings.push(format!("delta_rho_over_rho1 = {r}: {e}"));
                let _ = writeln!(report.text, "{},", fmt_num(r));
            }
        }
    }
    report.all_rows_failed = !grid.is_empty() && failures == grid.len();
    Ok(report)
}

pub fn run_fig3a(scenario: &Scenario) -> Result<Report, CliError> {
    let mut report = Report {
        text: String::from(
            "detuning_over_2pi_hz,omega_plus_minus_omega_over_2pi_hz,omega_minus_minus_omega_over_2pi_hz\n",
        ),
        ..Default::default()
    };
    let res = resolve(scenario, &mut report.warnings)?;
    let omega = res.mode.omega;
    let g = res.coupling.g_angular;
    let detunings = scenario.simulation.detunings_over_2pi_hz.clone().unwrap_or_else(|| {
        let span = DEFAULT_DETUNING_SPAN_G * g / (2.0 * PI);
        linspace(-span, span, DEFAULT_DETUNING_POINTS)
    });
    let mut failures = 0;
    for &d in &detunings {
        let sys = JCSystem::new(omega, omega + 2.0 * PI * d, g).with_n_cut(1);
        match dressed_pair_numeric(&sys) {
            Ok((plus, minus)) => {
                let _ = writeln!(
                    report.text,
                    "{},{},{}",
                    fmt_num(d),
                    fmt_num((plus - omega) / (2.0 * PI)),
                    fmt_num((minus - omega) / (2.0 * PI))
                );
            }
            Err(e) => {
                failures += 1;
                report.warnings.push(format!("detuning {d} Hz: {e}"));
                let _ = writeln!(report.text, "{},,", fmt_num(d));
            }
        }
    }
    report.all_rows_failed = !detunings.is_empty() && failures == detunings.len();
    Ok(report)
}

/// ω₊ and ω₋ of the one-excitation doublet from the diagonalized
/// Hamiltonian, measured from the ground level `|g, 0⟩`.
pub fn dressed_pair_numeric(system: &JCSystem) -> Result<(f64, f64), CliError> {
    let prop = Propagator::new(system)?;
    let missing = || qedab::Error::InvalidSystem("one-excitation block not found".into());
    let ground = prop.block_eigenvalues(BasisState::ground(0).index()).ok_or_else(missing)?[0];
    let mut pair = prop.block_eigenvalues(BasisState::excited(0).index()).ok_or_else(missing)?;
    if pair.len() == 1 {
        // g = 0: |e, 0⟩ and |g, 1⟩ are separate blocks
        pair.extend(prop.block_eigenvalues(BasisState::ground(1).index()).ok_or_else(missing)?);
        pair.sort_by(f64::total_cmp);
    }
    match pair.as_slice() {
        [lo, hi] => Ok((hi - ground, lo - ground)),
        _ => Err(missing().into()),
    }
}

fn evolution_csv(
    system: &JCSystem,
    initial: BasisState,
    times: &[f64],
) -> Result<String, CliError> {
    let r = evolve(system, &initial.into(), times)?;
    let mut text = String::from("time_s,p_excited,n_photon,norm\n");
    for i in 0..r.len() {
        let _ = writeln!(
            text,
            "{},{},{},{}",
            fmt_num(r.times[i]),
            fmt_num(r.p_excited[i]),
            fmt_num(r.n_photon[i]),
            fmt_num(r.norm[i])
        );
    }
    Ok(text)
}

/// Scenario times, or `DEFAULT_RABI_PERIODS` periods of `rabi` otherwise.
fn time_grid(scenario: &Scenario, rabi: f64, warnings: &mut Vec<String>) -> Result<Vec<f64>, CliError> {
    let period = 2.0 * PI / rabi;
    match &scenario.simulation.times_s {
        Some(t) => {
            let span = t.last().copied().unwrap_or(0.0) - t.first().copied().unwrap_or(0.0);
            if span < 2.0 * period {
                warnings.push(format!(
                    "time grid spans {span:.3e} s, less than two Rabi periods ({:.3e} s)",
                    2.0 * period
                ));
            }
            Ok(t.clone())
        }
        None if rabi > 0.0 => Ok(linspace(0.0, DEFAULT_RABI_PERIODS * period, DEFAULT_TIME_POINTS)),
        None => Err(ConfigError {
            field: "simulation.times_s".into(),
            message: "required when the system does not oscillate".into(),
        }
        .into()),
    }
}

pub fn run_fig3b(scenario: &Scenario) -> Result<Report, CliError> {
    let mut warnings = Vec::new();
    let res = resolve(scenario, &mut warnings)?;
    let omega = res.mode.omega;
    let sys = JCSystem::new(omega, omega, res.coupling.g_angular)
        .with_theta(res.coupling.potential.theta)
        .with_n_cut(scenario.simulation.n_cut.unwrap_or(JCSystem::default_n_cut(0, true)));
    let rabi = dressed_frequencies(&sys, 1)?.rabi;
    let times = time_grid(scenario, rabi, &mut warnings)?;
    let text = evolution_csv(&sys, BasisState::excited(0), &times)?;
    Ok(Report { text, warnings, all_rows_failed: false })
}

/// The scenario's own Jaynes-Cummings system and initial state.
pub fn scenario_system(scenario: &Scenario, res: &Resolved) -> (JCSystem, BasisState) {
    let sim = &scenario.simulation;
    let initial = match sim.initial_qubit {
        QubitLabel::Excited => BasisState::excited(sim.initial_photons),
        QubitLabel::Ground => BasisState::ground(sim.initial_photons),
    };
    let n_cut = sim
        .n_cut
        .unwrap_or(JCSystem::default_n_cut(sim.initial_photons, sim.rwa));
    let sys = JCSystem::new(res.mode.omega, res.spectrum.omega_q, res.coupling.g_angular)
        .with_theta(res.coupling.potential.theta)
        .with_n_cut(n_cut)
        .with_rwa(sim.rwa);
    (sys, initial)
}

pub fn run_rabi(scenario: &Scenario) -> Result<Report, CliError> {
    let mut warnings = Vec::new();
    let res = resolve(scenario, &mut warnings)?;
    let (sys, initial) = scenario_system(scenario, &res);
    let rabi = dressed_frequencies(&sys, initial.excitations().max(1))?.rabi;
    let times = time_grid(scenario, rabi, &mut warnings)?;
    let text = evolution_csv(&sys, initial, &times)?;
    Ok(Report { text, warnings, all_rows_failed: false })
}

pub fn run_decay(scenario: &Scenario) -> Result<Report, CliError> {
    let decay = scenario.decay.ok_or_else(|| ConfigError {
        field: "decay".into(),
        message: "section required for the decay product".into(),
    })?;
    let mut warnings = Vec::new();
    let res = resolve(scenario, &mut warnings)?;
    let omega_q = decay
        .omega_q_over_2pi_hz
        .map_or(res.spectrum.omega_q, |f| 2.0 * PI * f);
    let sin_gamma = decay.sin_gamma.unwrap_or(res.spectrum.sin_gamma);
    let params = DecayParams::new(omega_q, decay.junction_length_m, sin_gamma)?;
    let gamma = spontaneous_rate(&params);
    let g = res.coupling.g_angular;
    let delta = res.detuning();
    let rabi = (4.0 * g * g + delta * delta).sqrt();
    let budget = if gamma == 0.0 {
        f64::INFINITY
    } else {
        coherence_budget(gamma, rabi)?
    };
    let text = key_value(&[
        ("omega_q_over_2pi_hz", omega_q / (2.0 * PI)),
        ("junction_length_m", decay.junction_length_m),
        ("sin_gamma", sin_gamma),
        ("gamma_per_s", gamma),
        ("lifetime_s", 1.0 / gamma),
        ("rabi_over_2pi_hz", rabi / (2.0 * PI)),
        ("coherence_budget_rabi_periods", budget),
    ]);
    Ok(Report { text, warnings, all_rows_failed: false })
}

pub fn run_product(scenario: &Scenario, product: Product) -> Result<Report, CliError> {
    match product {
        Product::Mode => run_mode(scenario),
        Product::Fig2 => run_fig2(scenario),
        Product::Fig3a => run_fig3a(scenario),
        Product::Fig3b => run_fig3b(scenario),
        Product::Rabi => run_rabi(scenario),
        Product::Decay => run_decay(scenario),
    }
}

/// Every product listed in the scenario, in listed order.
pub fn run_all(scenario: &Scenario) -> Result<Vec<(Product, Report)>, CliError> {
    scenario
        .products
        .iter()
        .map(|&p| run_product(scenario, p).map(|r| (p, r)))
        .collect()
}
