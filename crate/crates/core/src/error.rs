//! Error type shared by the solver modules.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum SolverError {
    /// A recovered macroscopic state had non-positive density or temperature.
    /// Signals solver breakdown; `location` names the cell, interface or stage.
    #[error("inadmissible state at {location}: rho = {rho:.6e}, theta = {theta:.6e}")]
    InadmissibleState {
        rho: f64,
        theta: f64,
        location: String,
    },

    /// A projection target frame with theta <= 0 was requested.
    #[error("projection target temperature must be positive, got {theta:.6e}")]
    NonPositiveTemperature { theta: f64 },

    /// Newton iteration for a polynomial root did not converge.
    #[error("root solve for Hermite degree {degree} did not converge in {iterations} iterations")]
    RootSolveFailed { degree: usize, iterations: usize },

    /// The field supports no wave propagation, so no CFL step exists.
    #[error("maximum signal speed is zero; cannot select a time step")]
    ZeroSignalSpeed,

    /// A scheme or integrator parameter was out of range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, SolverError>;
