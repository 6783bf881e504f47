//! Scenario configuration, run driver, output files, and the study
//! harnesses for the BGK moment solver.

pub mod config;
pub mod output;
pub mod riemann;
pub mod scenario;
pub mod study;
