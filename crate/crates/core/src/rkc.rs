//! Second-order Runge-Kutta-Chebyshev stepping with CFL and stage selection.
//!
//! The s-stage scheme advances w' = F(w) through the recursion
//!
//!   W_0 = w^n,
//!   W_1 = W_0 + mu~_1 dt F(W_0),
//!   W_j = (1 - mu_j - nu_j) W_0 + mu_j W_{j-1} + nu_j W_{j-2}
//!         + mu~_j dt F(W_{j-1}) + gamma~_j dt F(W_0),    j = 2..s,
//!   w^{n+1} = W_s,
//!
//! with coefficients built from Chebyshev polynomials at omega0 = 1 + eps/s^2.
//! The damping factor eps trades real-axis stability length for tolerance of
//! imaginary eigenvalue parts; the large default eps = 10 accommodates the
//! convection spectrum and leaves a real stability interval of about
//! beta(s) = 0.34 (s^2 - 1), which is the bound the stage selection uses.
//!
//! The time step itself is convective, lambda_max dt / dx <= CFL, and the
//! stage count is the smallest s >= 2 with
//!
//!   dt (lambda_max / dx + 2 (M+1) / dx^2 (theta/nu)_max) <= CFL beta(s) / 2.

use crate::error::{Result, SolverError};
use crate::grid::Field;
use crate::rep::MomentRep;
use crate::scheme::{convection_rhs, max_signal_speed, Reconstruction};

/// First-kind Chebyshev polynomial T_j(x) by the three-term recurrence.
pub fn chebyshev_t(j: usize, x: f64) -> f64 {
    chebyshev_t_derivs(j, x).0
}

/// (T_j, T_j', T_j'') by the differentiated recurrences.
pub fn chebyshev_t_derivs(j: usize, x: f64) -> (f64, f64, f64) {
    if j == 0 {
        return (1.0, 0.0, 0.0);
    }
    let (mut t0, mut t1) = (1.0, x);
    let (mut d0, mut d1) = (0.0, 1.0);
    let (mut dd0, mut dd1) = (0.0, 0.0);
    for _ in 1..j {
        let t2 = 2.0 * x * t1 - t0;
        let d2 = 2.0 * t1 + 2.0 * x * d1 - d0;
        let dd2 = 4.0 * d1 + 2.0 * x * dd1 - dd0;
        t0 = t1;
        t1 = t2;
        d0 = d1;
        d1 = d2;
        dd0 = dd1;
        dd1 = dd2;
    }
    (t1, d1, dd1)
}

/// Approximate real-axis stability boundary for damping eps = 10; used
/// operationally by the stage selection.
pub fn beta(s: usize) -> f64 {
    0.34 * ((s * s) as f64 - 1.0)
}

/// Coefficient set of an s-stage second-order scheme.
#[derive(Debug, Clone)]
pub struct RkcCoeffs {
    pub s: usize,
    pub epsilon: f64,
    pub omega0: f64,
    pub omega1: f64,
    /// a_j = 1 - b_j T_j(omega0), j = 0..=s
    pub a: Vec<f64>,
    /// b_j = T_j''(omega0) / T_j'(omega0)^2 for j >= 2, b_0 = b_1 = b_2
    pub b: Vec<f64>,
    /// mu_j = 2 b_j omega0 / b_{j-1}, j = 2..=s (index j)
    pub mu: Vec<f64>,
    /// nu_j = -b_j / b_{j-2}, j = 2..=s
    pub nu: Vec<f64>,
    /// mu~_1 = b_1 omega1; mu~_j = 2 b_j omega1 / b_{j-1}
    pub mu_tilde: Vec<f64>,
    /// gamma~_j = -a_{j-1} mu~_j, j = 2..=s
    pub gamma_tilde: Vec<f64>,
}

impl RkcCoeffs {
    pub fn new(s: usize, epsilon: f64) -> Result<Self> {
        if s < 2 {
            return Err(SolverError::InvalidParameter(format!(
                "RKC needs at least 2 stages, got {s}"
            )));
        }
        let omega0 = 1.0 + epsilon / (s * s) as f64;
        let (_, ds, dds) = chebyshev_t_derivs(s, omega0);
        let omega1 = ds / dds;

        let mut b = vec![0.0; s + 1];
        for j in 2..=s {
            let (_, d, dd) = chebyshev_t_derivs(j, omega0);
            b[j] = dd / (d * d);
        }
        b[0] = b[2];
        b[1] = b[2];
        let a: Vec<f64> = (0..=s)
            .map(|j| 1.0 - b[j] * chebyshev_t(j, omega0))
            .collect();

        let mut mu = vec![0.0; s + 1];
        let mut nu = vec![0.0; s + 1];
        let mut mu_tilde = vec![0.0; s + 1];
        let mut gamma_tilde = vec![0.0; s + 1];
        mu_tilde[1] = b[1] * omega1;
        for j in 2..=s {
            mu[j] = 2.0 * b[j] * omega0 / b[j - 1];
            nu[j] = -b[j] / b[j - 2];
            mu_tilde[j] = 2.0 * b[j] * omega1 / b[j - 1];
            gamma_tilde[j] = -a[j - 1] * mu_tilde[j];
        }
        Ok(RkcCoeffs {
            s,
            epsilon,
            omega0,
            omega1,
            a,
            b,
            mu,
            nu,
            mu_tilde,
            gamma_tilde,
        })
    }
}

/// One scalar step of the scheme applied to y' = lambda y with z = lambda dt;
/// returns the amplification factor W_s. This is the stability polynomial.
pub fn amplification_factor(coeffs: &RkcCoeffs, z: f64) -> f64 {
    let s = coeffs.s;
    let w0 = 1.0f64;
    let mut w_prev2 = w0;
    let mut w_prev = w0 + coeffs.mu_tilde[1] * z * w0;
    if s == 1 {
        return w_prev;
    }
    for j in 2..=s {
        let w = (1.0 - coeffs.mu[j] - coeffs.nu[j]) * w0
            + coeffs.mu[j] * w_prev
            + coeffs.nu[j] * w_prev2
            + coeffs.mu_tilde[j] * z * w_prev
            + coeffs.gamma_tilde[j] * z * w0;
        w_prev2 = w_prev;
        w_prev = w;
    }
    w_prev
}

/// Convective CFL step: dt = cfl dx / lambda_max.
pub fn select_timestep(field: &Field, cfl: f64) -> Result<f64> {
    if !(cfl > 0.0 && cfl <= 1.0) {
        return Err(SolverError::InvalidParameter(format!(
            "CFL must lie in (0, 1], got {cfl}"
        )));
    }
    let lambda = max_signal_speed(field);
    if lambda <= 0.0 {
        return Err(SolverError::ZeroSignalSpeed);
    }
    Ok(cfl * field.grid.dx() / lambda)
}

/// Smallest stage count covering given convection and diffusion rates:
/// dt (convection_rate + diffusion_rate) <= cfl beta(s) / 2, s >= 2.
pub fn stages_for_rates(dt: f64, convection_rate: f64, diffusion_rate: f64, cfl: f64) -> usize {
    let need = 2.0 * dt * (convection_rate + diffusion_rate) / cfl;
    let mut s = ((need / 0.34 + 1.0).sqrt().ceil() as usize).max(2);
    while beta(s) < need {
        s += 1;
    }
    // ceil can overshoot by one
    while s > 2 && beta(s - 1) >= need {
        s -= 1;
    }
    s
}

/// Stage count for a field and time step, with the diffusion rate
/// 2 (M+1) / dx^2 (theta/nu)_max taken over the current cells.
pub fn select_stages(dt: f64, field: &Field, cfl: f64) -> usize {
    let dx = field.grid.dx();
    let convection = max_signal_speed(field) / dx;
    let diffusion = 2.0 * (field.order() + 1) as f64 / (dx * dx) * field.max_theta_over_nu();
    stages_for_rates(dt, convection, diffusion, cfl)
}

/// Time step and stage plan for one convection step of a field.
#[derive(Debug, Clone, Copy)]
pub struct StepPlan {
    pub dt: f64,
    pub s: usize,
    pub lambda_max: f64,
    pub diffusion_bound: f64,
}

impl StepPlan {
    /// Plan at the CFL step, optionally clipped to a smaller dt (then the
    /// stage count shrinks accordingly).
    pub fn new(field: &Field, cfl: f64, clip: Option<f64>) -> Result<StepPlan> {
        let mut dt = select_timestep(field, cfl)?;
        if let Some(cap) = clip {
            dt = dt.min(cap);
        }
        let dx = field.grid.dx();
        let lambda_max = max_signal_speed(field);
        let diffusion_bound =
            2.0 * (field.order() + 1) as f64 / (dx * dx) * field.max_theta_over_nu();
        let s = stages_for_rates(dt, lambda_max / dx, diffusion_bound, cfl);
        Ok(StepPlan {
            dt,
            s,
            lambda_max,
            diffusion_bound,
        })
    }
}

/// One s-stage step of the convection part over dt.
///
/// Stage states stay in the starting field's per-cell frames; each stage's
/// right-hand side is evaluated on the re-standardized stage field (the
/// closure is recomputed there) and projected back, so the stage combination
/// itself is plain coefficient arithmetic. The result is re-standardized
/// cellwise with cleared closure slots.
pub fn rkc_step(
    field: &Field,
    dt: f64,
    coeffs: &RkcCoeffs,
    recon: Reconstruction,
) -> Result<Field> {
    let n = field.n();
    let f0 = convection_rhs(field, recon)?;

    let mut w_prev2: Vec<MomentRep> = field.cells.clone();
    let mut w_prev: Vec<MomentRep> = field.cells.clone();
    for i in 0..n {
        w_prev[i].axpy_same_frame(coeffs.mu_tilde[1] * dt, &f0[i]);
    }

    for j in 2..=coeffs.s {
        let stage_field = standardized_stage(field, &w_prev, j - 1)?;
        let fj = convection_rhs(&stage_field, recon)?;
        let mut w_next = Vec::with_capacity(n);
        for i in 0..n {
            let base = &field.cells[i];
            let mut w = base.clone();
            w.scale(1.0 - coeffs.mu[j] - coeffs.nu[j]);
            w.axpy_same_frame(coeffs.mu[j], &w_prev[i]);
            w.axpy_same_frame(coeffs.nu[j], &w_prev2[i]);
            let f_back = fj[i].project(base.u_frame(), base.theta_frame())?;
            w.axpy_same_frame(coeffs.mu_tilde[j] * dt, &f_back);
            w.axpy_same_frame(coeffs.gamma_tilde[j] * dt, &f0[i]);
            w_next.push(w);
        }
        w_prev2 = std::mem::replace(&mut w_prev, w_next);
    }

    finish_step(field, w_prev, "final stage")
}

/// Forward Euler on the convection part; the comparison integrator.
pub fn euler_step(field: &Field, dt: f64, recon: Reconstruction) -> Result<Field> {
    let rhs = convection_rhs(field, recon)?;
    let mut cells = field.cells.clone();
    for (c, r) in cells.iter_mut().zip(&rhs) {
        c.axpy_same_frame(dt, r);
    }
    finish_step(field, cells, "euler step")
}

/// Euler time step honoring both the convective and the parabolic bound,
/// dt (lambda/dx + diffusion) <= cfl.
pub fn euler_timestep(field: &Field, cfl: f64) -> Result<f64> {
    if !(cfl > 0.0 && cfl <= 1.0) {
        return Err(SolverError::InvalidParameter(format!(
            "CFL must lie in (0, 1], got {cfl}"
        )));
    }
    let dx = field.grid.dx();
    let lambda = max_signal_speed(field);
    if lambda <= 0.0 {
        return Err(SolverError::ZeroSignalSpeed);
    }
    let diffusion = 2.0 * (field.order() + 1) as f64 / (dx * dx) * field.max_theta_over_nu();
    Ok(cfl / (lambda / dx + diffusion))
}

fn standardized_stage(base: &Field, cells: &[MomentRep], stage: usize) -> Result<Field> {
    let mut std_cells = Vec::with_capacity(cells.len());
    for (i, c) in cells.iter().enumerate() {
        std_cells.push(c.to_standard().map_err(|e| at_stage(e, i, stage))?);
    }
    Ok(Field {
        cells: std_cells,
        grid: base.grid,
        bc: base.bc,
        kn: base.kn,
    })
}

fn finish_step(base: &Field, cells: Vec<MomentRep>, what: &str) -> Result<Field> {
    let mut out_cells = Vec::with_capacity(cells.len());
    for (i, c) in cells.into_iter().enumerate() {
        let mut std = c
            .to_standard()
            .map_err(|e| at_stage_named(e, i, what))?;
        std.zero_closure_slots();
        out_cells.push(std);
    }
    Ok(Field {
        cells: out_cells,
        grid: base.grid,
        bc: base.bc,
        kn: base.kn,
    })
}

fn at_stage(e: SolverError, cell: usize, stage: usize) -> SolverError {
    at_stage_named(e, cell, &format!("stage {stage}"))
}

fn at_stage_named(e: SolverError, cell: usize, what: &str) -> SolverError {
    match e {
        SolverError::InadmissibleState { rho, theta, .. } => SolverError::InadmissibleState {
            rho,
            theta,
            location: format!("cell {cell}, {what}"),
        },
        other => other,
    }
}
