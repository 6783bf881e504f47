//! Uniform 1D grid, boundary conditions, and the per-cell solution field.

use std::sync::Arc;

use crate::index::MultiIndexTable;
use crate::rep::{MacroState, MomentRep};

/// Uniform mesh over [x_min, x_max] with n cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub n: usize,
    pub x_min: f64,
    pub x_max: f64,
}

impl GridSpec {
    pub fn new(n: usize, x_min: f64, x_max: f64) -> Self {
        assert!(n >= 3, "grid needs at least 3 cells");
        assert!(x_max > x_min);
        GridSpec { n, x_min, x_max }
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.n as f64
    }

    pub fn cell_center(&self, i: usize) -> f64 {
        self.x_min + (i as f64 + 0.5) * self.dx()
    }
}

/// Ghost-cell construction at the domain ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryCondition {
    Periodic,
    /// Zero-gradient copy of the nearest interior cell.
    Copy,
}

impl BoundaryCondition {
    /// Map a possibly out-of-range signed index to an interior cell.
    pub fn resolve(&self, i: isize, n: usize) -> usize {
        let n = n as isize;
        match self {
            BoundaryCondition::Periodic => (i.rem_euclid(n)) as usize,
            BoundaryCondition::Copy => i.clamp(0, n - 1) as usize,
        }
    }
}

/// Per-cell moment representations plus grid geometry, boundary condition
/// and the global Knudsen number. Between steps all cells are standard
/// representations, so frame velocity and temperature are the macroscopic
/// fields; the collision frequency of a cell is nu = rho / Kn.
#[derive(Debug, Clone)]
pub struct Field {
    pub cells: Vec<MomentRep>,
    pub grid: GridSpec,
    pub bc: BoundaryCondition,
    pub kn: f64,
}

impl Field {
    /// Field of local Maxwellians sampled from a macroscopic profile at the
    /// cell centers.
    pub fn from_profile<P>(
        table: &Arc<MultiIndexTable>,
        grid: GridSpec,
        bc: BoundaryCondition,
        kn: f64,
        profile: P,
    ) -> Self
    where
        P: Fn(f64) -> MacroState,
    {
        assert!(kn > 0.0);
        let cells = (0..grid.n)
            .map(|i| MomentRep::maxwellian(table, &profile(grid.cell_center(i))))
            .collect();
        Field {
            cells,
            grid,
            bc,
            kn,
        }
    }

    pub fn n(&self) -> usize {
        self.grid.n
    }

    pub fn order(&self) -> usize {
        self.cells[0].order()
    }

    pub fn table(&self) -> &Arc<MultiIndexTable> {
        self.cells[0].table()
    }

    /// Cell by signed index, resolved through the boundary condition.
    pub fn cell(&self, i: isize) -> &MomentRep {
        &self.cells[self.bc.resolve(i, self.grid.n)]
    }

    /// Density of a (standard representation) cell.
    pub fn rho(&self, i: isize) -> f64 {
        self.cell(i).coeffs()[0]
    }

    pub fn u1(&self, i: isize) -> f64 {
        self.cell(i).u_frame()[0]
    }

    pub fn theta(&self, i: isize) -> f64 {
        self.cell(i).theta_frame()
    }

    /// Collision frequency nu = rho / Kn of a cell.
    pub fn nu(&self, i: isize) -> f64 {
        self.rho(i) / self.kn
    }

    /// Largest theta/nu over the cells; enters the parabolic stage bound.
    pub fn max_theta_over_nu(&self) -> f64 {
        (0..self.grid.n as isize)
            .map(|i| self.theta(i) / self.nu(i))
            .fold(0.0, f64::max)
    }

    /// Totals of the conserved moments, scaled by the cell volume.
    pub fn conserved_totals(&self) -> [f64; 5] {
        let dx = self.grid.dx();
        let mut total = [0.0; 5];
        for c in &self.cells {
            let m = c.conserved_moments();
            for k in 0..5 {
                total[k] += dx * m[k];
            }
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_geometry() {
        let g = GridSpec::new(4, -1.0, 1.0);
        assert!((g.dx() - 0.5).abs() < 1e-15);
        assert!((g.cell_center(0) + 0.75).abs() < 1e-15);
        assert!((g.cell_center(3) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn boundary_resolution() {
        let p = BoundaryCondition::Periodic;
        assert_eq!(p.resolve(-1, 5), 4);
        assert_eq!(p.resolve(5, 5), 0);
        assert_eq!(p.resolve(-6, 5), 4);
        let c = BoundaryCondition::Copy;
        assert_eq!(c.resolve(-2, 5), 0);
        assert_eq!(c.resolve(7, 5), 4);
        assert_eq!(c.resolve(3, 5), 3);
    }

    #[test]
    fn profile_initialization() {
        let t = MultiIndexTable::new(3);
        let grid = GridSpec::new(8, 0.0, 1.0);
        let f = Field::from_profile(&t, grid, BoundaryCondition::Copy, 0.5, |x| {
            MacroState::new(1.0 + x, [x, 0.0, 0.0], 2.0)
        });
        assert_eq!(f.n(), 8);
        assert!((f.rho(0) - (1.0 + grid.cell_center(0))).abs() < 1e-15);
        assert!((f.u1(7) - grid.cell_center(7)).abs() < 1e-15);
        assert!((f.nu(0) - f.rho(0) / 0.5).abs() < 1e-15);
    }
}
