//! Moment method solver for the 1D Boltzmann-BGK equation.
//!
//! The distribution function is expanded in Hermite basis functions about a
//! local velocity/temperature frame and closed at an arbitrary order M by a
//! gradient regularization of the top coefficients. The spatial scheme is a
//! finite volume HLL flux with conservative linear reconstruction; time
//! integration is a second-order Runge-Kutta-Chebyshev scheme inside a
//! Strang splitting whose adjacent collision half-steps are merged
//! analytically.
//!
//! Modules:
//! - [`hermite`]: Hermite polynomials, roots, Gauss-Hermite rules
//! - [`index`]: dense enumeration of 3D multi-indices with neighbor tables
//! - [`rep`]: moment representation of a distribution and its local algebra
//! - [`project`]: frame changes via the homotopy ODE
//! - [`quadrature`]: quadrature oracle backing the test suites
//! - [`grid`]: 1D grid, boundary conditions, solution field
//! - [`scheme`]: closure, reconstruction, HLL flux, convection right-hand side
//! - [`rkc`]: Runge-Kutta-Chebyshev coefficients, step and stage selection
//! - [`strang`]: splitting drivers advancing a field to a target time

pub mod error;
pub mod grid;
pub mod hermite;
pub mod index;
pub mod project;
pub mod quadrature;
pub mod rep;
pub mod rkc;
pub mod scheme;
pub mod strang;

pub use error::{Result, SolverError};
pub use grid::{BoundaryCondition, Field, GridSpec};
pub use index::{MultiIndexTable, DIM, NO_INDEX};
pub use rep::{MacroState, MomentRep};
pub use rkc::{RkcCoeffs, StepPlan};
pub use scheme::Reconstruction;
pub use strang::{AdvanceOptions, AdvanceStats, Integrator};
