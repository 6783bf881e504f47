//! Run driver and the convergence / cost-scaling harnesses.

use std::time::Instant;

use bgk_moments::scheme::Reconstruction;
use bgk_moments::strang::advance;
use bgk_moments::{AdvanceOptions, AdvanceStats, Field, Result};

use crate::config::ScenarioConfig;
use crate::output::SolutionRecord;
use crate::scenario::initial_field;

pub fn advance_options(cfg: &ScenarioConfig) -> AdvanceOptions {
    AdvanceOptions {
        cfl: cfg.cfl,
        epsilon: cfg.epsilon,
        reconstruction: if cfg.reconstruction {
            Reconstruction::Linear
        } else {
            Reconstruction::FirstOrder
        },
        integrator: cfg.integrator,
        max_dt: None,
    }
}

/// Completed run: final field, solution record, step stats, wall time.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub field: Field,
    pub record: SolutionRecord,
    pub stats: AdvanceStats,
    pub wall_seconds: f64,
}

/// Initialize the scenario and advance it to t_end.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<RunOutput> {
    let field0 = initial_field(cfg);
    let start = Instant::now();
    let (field, stats) = advance(&field0, cfg.t_end, &advance_options(cfg))?;
    let wall_seconds = start.elapsed().as_secs_f64();
    let record = SolutionRecord::from_field(&field, cfg.write_coeffs);
    Ok(RunOutput {
        field,
        record,
        stats,
        wall_seconds,
    })
}

/// L1 difference of a coarse profile against the block-averaged reference.
pub fn l1_error_against_reference(coarse: &[f64], reference: &[f64], dx_coarse: f64) -> f64 {
    assert!(!coarse.is_empty());
    assert_eq!(
        reference.len() % coarse.len(),
        0,
        "coarse cells must divide the reference grid"
    );
    let block = reference.len() / coarse.len();
    coarse
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let avg: f64 =
                reference[i * block..(i + 1) * block].iter().sum::<f64>() / block as f64;
            (v - avg).abs() * dx_coarse
        })
        .sum()
}

#[derive(Debug, Clone)]
pub struct ConvergenceRow {
    pub n: usize,
    pub l1_rho: f64,
    pub l1_theta: f64,
    /// Observed order against the previous (coarser) grid.
    pub order_rho: Option<f64>,
    pub order_theta: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    /// Least-squares slope of ln L1(rho) against ln N, negated.
    pub fitted_order_rho: f64,
    pub fitted_order_theta: f64,
}

/// L1 errors and observed orders against a block-averaged fine-grid
/// reference solution of the same scenario.
pub fn convergence_study(
    cfg: &ScenarioConfig,
    grids: &[usize],
    ref_n: usize,
) -> Result<ConvergenceTable> {
    assert!(grids.iter().all(|&n| n < ref_n && ref_n % n == 0));
    let mut ref_cfg = cfg.clone();
    ref_cfg.cells = ref_n;
    let reference = run_scenario(&ref_cfg)?;
    let ref_rho = reference.record.column("rho").expect("rho column");
    let ref_theta = reference.record.column("theta").expect("theta column");

    let (x_min, x_max) = cfg.domain();
    let mut rows: Vec<ConvergenceRow> = Vec::new();
    for &n in grids {
        let mut c = cfg.clone();
        c.cells = n;
        let run = run_scenario(&c)?;
        let dx = (x_max - x_min) / n as f64;
        let l1_rho =
            l1_error_against_reference(&run.record.column("rho").unwrap(), &ref_rho, dx);
        let l1_theta =
            l1_error_against_reference(&run.record.column("theta").unwrap(), &ref_theta, dx);
        let (order_rho, order_theta) = match rows.last() {
            Some(prev) => {
                let ratio = (n as f64 / prev.n as f64).ln();
                (
                    Some((prev.l1_rho / l1_rho).ln() / ratio),
                    Some((prev.l1_theta / l1_theta).ln() / ratio),
                )
            }
            None => (None, None),
        };
        rows.push(ConvergenceRow {
            n,
            l1_rho,
            l1_theta,
            order_rho,
            order_theta,
        });
    }

    let pts_rho: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| ((r.n as f64).ln(), r.l1_rho.ln()))
        .collect();
    let pts_theta: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| ((r.n as f64).ln(), r.l1_theta.ln()))
        .collect();
    Ok(ConvergenceTable {
        fitted_order_rho: -least_squares_slope(&pts_rho),
        fitted_order_theta: -least_squares_slope(&pts_theta),
        rows,
    })
}

#[derive(Debug, Clone)]
pub struct ScalingRow {
    pub n: usize,
    pub wall_seconds: f64,
    pub steps: u64,
    pub avg_dt: f64,
    pub avg_stages: f64,
    pub avg_dt_over_s: f64,
}

#[derive(Debug, Clone)]
pub struct ScalingTable {
    pub rows: Vec<ScalingRow>,
    /// ln-ln slopes against N.
    pub slope_wall_time: f64,
    pub slope_dt: f64,
    pub slope_dt_over_s: f64,
}

/// Wall time and step-size scaling over a list of grids.
pub fn scaling_benchmark(cfg: &ScenarioConfig, grids: &[usize]) -> Result<ScalingTable> {
    let mut rows = Vec::with_capacity(grids.len());
    for &n in grids {
        let mut c = cfg.clone();
        c.cells = n;
        let run = run_scenario(&c)?;
        rows.push(ScalingRow {
            n,
            wall_seconds: run.wall_seconds,
            steps: run.stats.steps,
            avg_dt: run.stats.avg_dt(),
            avg_stages: run.stats.avg_stages(),
            avg_dt_over_s: run.stats.avg_dt_over_s(),
        });
    }
    let pts = |f: &dyn Fn(&ScalingRow) -> f64| -> Vec<(f64, f64)> {
        rows.iter()
            .map(|r| ((r.n as f64).ln(), f(r).ln()))
            .collect()
    };
    Ok(ScalingTable {
        slope_wall_time: least_squares_slope(&pts(&|r| r.wall_seconds)),
        slope_dt: least_squares_slope(&pts(&|r| r.avg_dt)),
        slope_dt_over_s: least_squares_slope(&pts(&|r| r.avg_dt_over_s)),
        rows,
    })
}

/// Slope of the least-squares line through (x, y) points.
pub fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}
