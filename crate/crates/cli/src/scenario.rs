//! Initial fields for the built-in scenarios.

use std::f64::consts::PI;

use bgk_moments::{Field, GridSpec, MacroState, MultiIndexTable};

use crate::config::{Scenario, ScenarioConfig};

/// Macroscopic initial profile of a scenario at position x.
pub fn initial_state(cfg: &ScenarioConfig, x: f64) -> MacroState {
    match cfg.scenario {
        Scenario::Periodic => {
            // rho = 2 + cos(pi x)/2, u = (1 + sin(pi x)/2, sin(pi x)/2, 0),
            // p = 1 with the ideal-gas relation p = rho theta
            let rho = 2.0 + 0.5 * (PI * x).cos();
            MacroState::new(
                rho,
                [1.0 + 0.5 * (PI * x).sin(), 0.5 * (PI * x).sin(), 0.0],
                1.0 / rho,
            )
        }
        Scenario::ShockTube | Scenario::Custom => {
            let r = &cfg.riemann;
            if x < r.x_split {
                MacroState::new(r.rho_l, [r.u1_l, 0.0, 0.0], r.theta_l)
            } else {
                MacroState::new(r.rho_r, [r.u1_r, 0.0, 0.0], r.theta_r)
            }
        }
    }
}

/// Field of local Maxwellians sampled at the cell centers.
pub fn initial_field(cfg: &ScenarioConfig) -> Field {
    let table = MultiIndexTable::new(cfg.order);
    let (x_min, x_max) = cfg.domain();
    let grid = GridSpec::new(cfg.cells, x_min, x_max);
    Field::from_profile(&table, grid, cfg.bc, cfg.kn, |x| initial_state(cfg, x))
}
