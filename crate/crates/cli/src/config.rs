//! Scenario configuration: one JSON document with the sections `geometry`,
//! `qubit`, `simulation`, `decay` and `output`. Units are part of each key
//! name and unknown keys are rejected.

use std::fmt;
use std::path::Path;

use serde::Deserialize;

use qedab::{CavityGeometry, QubitParams};

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    /// Dotted path of the offending field, or empty for document-level errors.
    pub field: String,
    pub message: String,
}

impl ConfigError {
    fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self { field: field.into(), message: message.into() }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.field, self.message)
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    geometry: RawGeometry,
    qubit: RawQubit,
    #[serde(default)]
    simulation: RawSimulation,
    decay: Option<RawDecay>,
    #[serde(default)]
    output: RawOutput,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGeometry {
    rho1_m: f64,
    rho2_m: f64,
    delta_z_m: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQubit {
    ec_over_h_hz: Option<f64>,
    ej_over_h_hz: Option<f64>,
    n_g: Option<f64>,
    sin_gamma: Option<f64>,
    omega_q_over_2pi_hz: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSimulation {
    times_s: Option<Grid>,
    detunings_over_2pi_hz: Option<Grid>,
    delta_rho_over_rho1: Option<Grid>,
    initial_state: Option<RawInitialState>,
    n_cut: Option<usize>,
    #[serde(default = "default_true")]
    rwa: bool,
}

fn default_true() -> bool {
    true
}

impl Default for RawSimulation {
    fn default() -> Self {
        Self {
            times_s: None,
            detunings_over_2pi_hz: None,
            delta_rho_over_rho1: None,
            initial_state: None,
            n_cut: None,
            rwa: true,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInitialState {
    qubit: QubitLabel,
    photons: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum QubitLabel {
    #[serde(rename = "g")]
    Ground,
    #[serde(rename = "e")]
    Excited,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDecay {
    junction_length_m: f64,
    omega_q_over_2pi_hz: Option<f64>,
    sin_gamma: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    products: Option<Vec<Product>>,
}

/// A sampling grid, written either as an explicit list or as
/// `{"start": a, "stop": b, "points": n}` (endpoints included).
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Grid {
    Values(Vec<f64>),
    Linspace(Linspace),
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Linspace {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        match self {
            Grid::Values(v) => v.clone(),
            Grid::Linspace(l) => linspace(l.start, l.stop, l.points),
        }
    }
}

pub fn linspace(start: f64, stop: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![start],
        n => (0..n)
            .map(|i| {
                if i == n - 1 {
                    stop
                } else {
                    start + (stop - start) * (i as f64 / (n - 1) as f64)
                }
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Product {
    Mode,
    Fig2,
    Fig3a,
    Fig3b,
    Rabi,
    Decay,
}

impl Product {
    pub const ALL: [Product; 6] = [
        Product::Mode,
        Product::Fig2,
        Product::Fig3a,
        Product::Fig3b,
        Product::Rabi,
        Product::Decay,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Product::Mode => "mode",
            Product::Fig2 => "fig2",
            Product::Fig3a => "fig3a",
            Product::Fig3b => "fig3b",
            Product::Rabi => "rabi",
            Product::Decay => "decay",
        }
    }
}

/// How the qubit enters a scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QubitSpec {
    /// Cooper-pair-box parameters.
    Params(QubitParams),
    /// Direct mixing and splitting; `None` means resonant with the cavity.
    Override {
        sin_gamma: f64,
        omega_q_over_2pi_hz: Option<f64>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Simulation {
    pub times_s: Option<Vec<f64>>,
    pub detunings_over_2pi_hz: Option<Vec<f64>>,
    pub delta_rho_over_rho1: Vec<f64>,
    pub initial_qubit: QubitLabel,
    pub initial_photons: usize,
    pub n_cut: Option<usize>,
    pub rwa: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecaySpec {
    pub junction_length_m: f64,
    pub omega_q_over_2pi_hz: Option<f64>,
    pub sin_gamma: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub geometry: CavityGeometry,
    pub qubit: QubitSpec,
    pub simulation: Simulation,
    pub decay: Option<DecaySpec>,
    pub products: Vec<Product>,
}

/// δρ/ρ₁ ∈ {0.05, 0.10, …, 1.00}.
pub fn default_fig2_grid() -> Vec<f64> {
    (1..=20).map(|i| i as f64 / 20.0).collect()
}

fn strictly_increasing(field: &str, v: &[f64]) -> Result<(), ConfigError> {
    if let Some(bad) = v.iter().position(|x| !x.is_finite()) {
        return Err(ConfigError::new(field, format!("entry {bad} is not finite")));
    }
    if let Some(i) = v.windows(2).position(|w| w[1] <= w[0]) {
        return Err(ConfigError::new(
            field,
            format!("grid must be strictly increasing (entries {i} and {})", i + 1),
        ));
    }
    Ok(())
}

fn grid(field: &str, g: Option<Grid>) -> Result<Option<Vec<f64>>, ConfigError> {
    match g {
        None => Ok(None),
        Some(g) => {
            let v = g.values();
            strictly_increasing(field, &v)?;
            Ok(Some(v))
        }
    }
}

fn unit_interval(field: &str, v: f64) -> Result<f64, ConfigError> {
    if !(0.0..=1.0).contains(&v) {
        return Err(ConfigError::new(field, format!("must lie in [0, 1] (got {v})")));
    }
    Ok(v)
}

fn non_negative(field: &str, v: f64) -> Result<f64, ConfigError> {
    if !(v >= 0.0 && v.is_finite()) {
        return Err(ConfigError::new(field, format!("must be a finite number >= 0 (got {v})")));
    }
    Ok(v)
}

impl Scenario {
    pub fn from_json_str(text: &str) -> Result<Self, ConfigError> {
        let raw: RawScenario =
            serde_json::from_str(text).map_err(|e| ConfigError::new("", e.to_string()))?;
        Self::from_raw(raw)
    }

    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::new("", format!("cannot read {}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    fn from_raw(raw: RawScenario) -> Result<Self, ConfigError> {
        let g = raw.geometry;
        let geometry = CavityGeometry::new(g.rho1_m, g.rho2_m, g.delta_z_m)
            .map_err(|e| ConfigError::new("geometry", e.to_string()))?;

        let q = raw.qubit;
        let has_params = q.ec_over_h_hz.is_some() || q.ej_over_h_hz.is_some() || q.n_g.is_some();
        let has_override = q.sin_gamma.is_some() || q.omega_q_over_2pi_hz.is_some();
        let qubit = match (has_params, has_override) {
            (true, true) => {
                return Err(ConfigError::new(
                    "qubit",
                    "give either ec_over_h_hz/ej_over_h_hz/n_g or sin_gamma/omega_q_over_2pi_hz, not both",
                ))
            }
            (false, false) => {
                return Err(ConfigError::new(
                    "qubit",
                    "needs ec_over_h_hz/ej_over_h_hz/n_g or sin_gamma",
                ))
            }
            (true, false) => {
                let need = |name: &str, v: Option<f64>| {
                    v.ok_or_else(|| ConfigError::new(format!("qubit.{name}"), "missing"))
                };
                let ec = need("ec_over_h_hz", q.ec_over_h_hz)?;
                let ej = need("ej_over_h_hz", q.ej_over_h_hz)?;
                let ng = need("n_g", q.n_g)?;
                let params = QubitParams::from_hz(ec, ej, ng)
                    .map_err(|e| ConfigError::new("qubit", e.to_string()))?;
                QubitSpec::Params(params)
            }
            (false, true) => {
                let sg = q
                    .sin_gamma
                    .ok_or_else(|| ConfigError::new("qubit.sin_gamma", "missing"))?;
                let sin_gamma = unit_interval("qubit.sin_gamma", sg)?;
                let omega_q_over_2pi_hz = q
                    .omega_q_over_2pi_hz
                    .map(|w| non_negative("qubit.omega_q_over_2pi_hz", w))
                    .transpose()?;
                QubitSpec::Override { sin_gamma, omega_q_over_2pi_hz }
            }
        };

        let s = raw.simulation;
        let times_s = grid("simulation.times_s", s.times_s)?;
        if let Some(t) = &times_s {
            if t.first().is_some_and(|&t0| t0 < 0.0) {
                return Err(ConfigError::new("simulation.times_s", "times must be >= 0"));
            }
        }
        let detunings_over_2pi_hz = grid("simulation.detunings_over_2pi_hz", s.detunings_over_2pi_hz)?;
        let delta_rho_over_rho1 = grid("simulation.delta_rho_over_rho1", s.delta_rho_over_rho1)?
            .unwrap_or_else(default_fig2_grid);
        if let Some(bad) = delta_rho_over_rho1.iter().find(|&&r| r <= 0.0) {
            return Err(ConfigError::new(
                "simulation.delta_rho_over_rho1",
                format!("ratios must be > 0 (got {bad})"),
            ));
        }
        let (initial_qubit, initial_photons) = s
            .initial_state
            .map(|i| (i.qubit, i.photons))
            .unwrap_or((QubitLabel::Excited, 0));
        if let Some(n) = s.n_cut {
            if n < 1 {
                return Err(ConfigError::new("simulation.n_cut", "must be >= 1"));
            }
            if n < initial_photons {
                return Err(ConfigError::new(
                    "simulation.n_cut",
                    format!("must be >= initial photon number {initial_photons}"),
                ));
            }
        }

        let decay = raw
            .decay
            .map(|d| -> Result<DecaySpec, ConfigError> {
                if !(d.junction_length_m > 0.0 && d.junction_length_m.is_finite()) {
                    return Err(ConfigError::new(
                        "decay.junction_length_m",
                        format!("must be > 0 (got {})", d.junction_length_m),
                    ));
                }
                Ok(DecaySpec {
                    junction_length_m: d.junction_length_m,
                    omega_q_over_2pi_hz: d
                        .omega_q_over_2pi_hz
                        .map(|w| non_negative("decay.omega_q_over_2pi_hz", w))
                        .transpose()?,
                    sin_gamma: d.sin_gamma.map(|v| unit_interval("decay.sin_gamma", v)).transpose()?,
                })
            })
            .transpose()?;

        Ok(Scenario {
            geometry,
            qubit,
            simulation: Simulation {
                times_s,
                detunings_over_2pi_hz,
                delta_rho_over_rho1,
                initial_qubit,
                initial_photons,
                n_cut: s.n_cut,
                rwa: s.rwa,
            },
            decay,
            products: raw.output.products.unwrap_or_else(|| Product::ALL.to_vec()),
        })
    }
}
