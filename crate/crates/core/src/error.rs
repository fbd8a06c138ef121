use thiserror::Error;

/// Errors raised by the solvers in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("invalid qubit parameters: {0}")]
    InvalidQubit(String),

    #[error("invalid decay parameters: {0}")]
    InvalidDecay(String),

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("no root of the boundary determinant in kρ₁ ∈ ({lo:.4e}, {hi:.4e}]")]
    NoRoot { lo: f64, hi: f64 },

    #[error("bisection did not converge within {0} iterations")]
    NonConvergence(usize),

    #[error("adaptive quadrature exceeded depth {0} on [{1:.6e}, {2:.6e}]")]
    Quadrature(usize, f64, f64),

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("invalid initial state: {0}")]
    InvalidState(String),

    #[error("truncation leak: top Fock level holds {population:.3e} at t = {time:.6e} s (n_cut = {n_cut})")]
    TruncationLeak { population: f64, time: f64, n_cut: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
