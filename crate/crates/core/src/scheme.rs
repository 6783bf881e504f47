//! Finite volume machinery on the 1D grid.
//!
//! One right-hand-side evaluation runs: fill the |alpha| = M + 1 closure
//! slots, build left/right interface states, combine them with the HLL flux,
//! and difference the fluxes per cell. With linear reconstruction the slopes
//! are minmod limited on like-for-like coefficients with neighbors projected
//! into the center cell's frame, which keeps the reconstruction conservative
//! (the average of a cell's two interface extrapolations is the cell value).
//! With reconstruction disabled the interface states degenerate to the cell
//! values carrying centrally differenced closure slots, which is exactly the
//! first-order scheme.

use crate::error::{Result, SolverError};
use crate::grid::Field;
use crate::hermite::hermite_max_root;
use crate::index::NO_INDEX;
use crate::rep::MomentRep;

/// Spatial accuracy of the interface states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reconstruction {
    /// Minmod-limited linear reconstruction with one-sided interface closure.
    Linear,
    /// Cell values with central closure; the first-order scheme.
    FirstOrder,
}

/// Left/right states and signal speed bounds at one interface.
#[derive(Debug, Clone)]
pub struct InterfaceState {
    /// State extrapolated from the left cell; standard representation with
    /// closure slots filled.
    pub left: MomentRep,
    /// State extrapolated from the right cell, same form.
    pub right: MomentRep,
    pub lam_left: f64,
    pub lam_right: f64,
}

/// All n + 1 interface states of a field; entry j sits between cells j - 1
/// and j (resolved through the boundary condition).
#[derive(Debug, Clone)]
pub struct InterfaceStates {
    pub states: Vec<InterfaceState>,
}

pub fn minmod(a: f64, b: f64) -> f64 {
    if a > 0.0 && b > 0.0 {
        a.min(b)
    } else if a < 0.0 && b < 0.0 {
        a.max(b)
    } else {
        0.0
    }
}

/// Signal speed bound factor C_{M+1}, the largest root of He_{M+1}.
pub fn signal_speed_factor(order: usize) -> f64 {
    hermite_max_root(order + 1).expect("Hermite root iteration converges for practical orders")
}

/// Fill every |alpha| = M + 1 slot of every cell from the central difference
/// of the neighbors' order-M standard coefficients:
///   f_{i,alpha} = -(theta_i / nu_i) (f_{i+1,alpha-e1} - f_{i-1,alpha-e1}) / (2 dx).
/// Slots whose alpha_1 component vanishes have no x-gradient source and are
/// set to zero.
pub fn closure_first_order(field: &Field) -> Field {
    let mut out = field.clone();
    let table = field.table().clone();
    let dx = field.grid.dx();
    let top_start = table.state_len();
    for i in 0..field.n() {
        let ii = i as isize;
        let scale = -field.theta(ii) / field.nu(ii) / (2.0 * dx);
        let left = field.cell(ii - 1);
        let right = field.cell(ii + 1);
        for idx in top_start..table.len() {
            let down = table.minus(idx, 0);
            out.cells[i].coeffs_mut()[idx] = if down != NO_INDEX {
                scale * (right.coeffs()[down as usize] - left.coeffs()[down as usize])
            } else {
                0.0
            };
        }
    }
    out
}

/// Interface states for the requested reconstruction mode.
pub fn interface_states(field: &Field, recon: Reconstruction) -> Result<InterfaceStates> {
    match recon {
        Reconstruction::Linear => reconstruct(field),
        Reconstruction::FirstOrder => first_order_states(field),
    }
}

fn first_order_states(field: &Field) -> Result<InterfaceStates> {
    let filled = closure_first_order(field);
    let c = signal_speed_factor(field.order());
    let n = field.n() as isize;
    let mut states = Vec::with_capacity(field.n() + 1);
    for j in 0..=n {
        let (il, ir) = (j - 1, j);
        let (ul, tl) = (field.u1(il), field.theta(il));
        let (ur, tr) = (field.u1(ir), field.theta(ir));
        states.push(InterfaceState {
            left: filled.cell(il).clone(),
            right: filled.cell(ir).clone(),
            lam_left: (ul - c * tl.sqrt()).min(ur - c * tr.sqrt()),
            lam_right: (ul + c * tl.sqrt()).max(ur + c * tr.sqrt()),
        });
    }
    Ok(InterfaceStates { states })
}

/// Linear reconstruction of the interface states.
///
/// Slopes are minmod limited per coefficient after projecting each neighbor
/// into the center cell's own frame; the extrapolated states are brought to
/// their standard representations, their closure slots are filled by the
/// one-sided difference of the adjacent cells' order-M coefficients scaled
/// with the reconstructed interface theta/nu, and the signal speeds follow
/// from the reconstructed frames.
pub fn reconstruct(field: &Field) -> Result<InterfaceStates> {
    let table = field.table().clone();
    let n = field.n();
    let dx = field.grid.dx();
    let state_len = table.state_len();
    let c = signal_speed_factor(field.order());

    // per-cell slopes in the cell's own frame
    let mut slopes: Vec<Vec<f64>> = Vec::with_capacity(n);
    for i in 0..n {
        let ii = i as isize;
        let me = &field.cells[i];
        let left = field
            .cell(ii - 1)
            .project(me.u_frame(), me.theta_frame())?;
        let right = field
            .cell(ii + 1)
            .project(me.u_frame(), me.theta_frame())?;
        let mut g = vec![0.0; table.len()];
        for idx in 0..state_len {
            g[idx] = minmod(
                (right.coeffs()[idx] - me.coeffs()[idx]) / dx,
                (me.coeffs()[idx] - left.coeffs()[idx]) / dx,
            );
        }
        slopes.push(g);
    }

    // donor-side extrapolation in the donor's frame; ghost donors under the
    // copy boundary are flat
    let extrapolate = |j: isize, side_sign: f64| -> MomentRep {
        let donor = field.bc.resolve(j, n);
        let mut rep = field.cells[donor].clone();
        let ghost = j < 0 || j >= n as isize;
        if !(ghost && field.bc == crate::grid::BoundaryCondition::Copy) {
            let g = &slopes[donor];
            let coeffs = rep.coeffs_mut();
            for idx in 0..state_len {
                coeffs[idx] += side_sign * 0.5 * dx * g[idx];
            }
        }
        rep
    };

    let top_start = state_len;
    let mut states = Vec::with_capacity(n + 1);
    for j in 0..=n as isize {
        let raw_left = extrapolate(j - 1, 1.0);
        let raw_right = extrapolate(j, -1.0);
        let left = raw_left.to_standard().map_err(|e| at_interface(e, j))?;
        let mut left = left;
        let right = raw_right.to_standard().map_err(|e| at_interface(e, j))?;
        let mut right = right;

        // one-sided closure gradient across this interface, from the cells'
        // standard coefficients
        let cl = field.cell(j - 1);
        let cr = field.cell(j);
        let scale_l = -left.theta_frame() / (left.coeffs()[0] / field.kn);
        let scale_r = -right.theta_frame() / (right.coeffs()[0] / field.kn);
        for idx in top_start..table.len() {
            let down = table.minus(idx, 0);
            let grad = if down != NO_INDEX {
                (cr.coeffs()[down as usize] - cl.coeffs()[down as usize]) / dx
            } else {
                0.0
            };
            left.coeffs_mut()[idx] = scale_l * grad;
            right.coeffs_mut()[idx] = scale_r * grad;
        }

        let (ul, tl) = (left.u_frame()[0], left.theta_frame());
        let (ur, tr) = (right.u_frame()[0], right.theta_frame());
        states.push(InterfaceState {
            left,
            right,
            lam_left: (ul - c * tl.sqrt()).min(ur - c * tr.sqrt()),
            lam_right: (ul + c * tl.sqrt()).max(ur + c * tr.sqrt()),
        });
    }
    Ok(InterfaceStates { states })
}

fn at_interface(e: SolverError, j: isize) -> SolverError {
    match e {
        SolverError::InadmissibleState { rho, theta, .. } => SolverError::InadmissibleState {
            rho,
            theta,
            location: format!("interface {j}"),
        },
        other => other,
    }
}

/// HLL flux through one interface, as a moment representation valid for
/// |alpha| <= M (closure slots zero), in the left state's frame:
/// upwind when zero lies outside [lam_left, lam_right], otherwise the
/// blended middle state with the dissipative state-jump term.
pub fn hll_flux(iface: &InterfaceState) -> Result<MomentRep> {
    debug_assert!(iface.lam_left <= iface.lam_right);
    if iface.lam_left >= 0.0 {
        return Ok(iface.left.flux_moments(0));
    }
    if iface.lam_right <= 0.0 {
        return Ok(iface.right.flux_moments(0));
    }
    let (ll, lr) = (iface.lam_left, iface.lam_right);
    let width = lr - ll;
    let fl = iface.left.flux_moments(0);
    let fr = iface.right.flux_moments(0);
    let u = iface.left.u_frame();
    let theta = iface.left.theta_frame();
    let mut flux = MomentRep::linear_combine(lr / width, &fl, -ll / width, &fr, u, theta)?;
    let jump = MomentRep::linear_combine(
        ll * lr / width,
        &iface.right,
        -ll * lr / width,
        &iface.left,
        u,
        theta,
    )?;
    flux.axpy_same_frame(1.0, &jump);
    flux.zero_closure_slots();
    Ok(flux)
}

/// Time derivative of every cell's coefficients in the cell's own frame,
///   RHS_i = (G_{i-1/2} - G_{i+1/2}) / dx,
/// valid for |alpha| <= M. The closure slots entering the fluxes carry the
/// regularization, so this is the convection and diffusion right-hand side
/// together.
pub fn convection_rhs(field: &Field, recon: Reconstruction) -> Result<Vec<MomentRep>> {
    let ifs = interface_states(field, recon)?;
    let fluxes: Vec<MomentRep> = ifs
        .states
        .iter()
        .map(hll_flux)
        .collect::<Result<Vec<_>>>()?;
    let inv_dx = 1.0 / field.grid.dx();
    let mut rhs = Vec::with_capacity(field.n());
    for i in 0..field.n() {
        let cell = &field.cells[i];
        rhs.push(MomentRep::linear_combine(
            inv_dx,
            &fluxes[i],
            -inv_dx,
            &fluxes[i + 1],
            cell.u_frame(),
            cell.theta_frame(),
        )?);
    }
    Ok(rhs)
}

/// Largest signal speed magnitude over all interfaces, from the cell states'
/// own u_1 and theta. Kept independent of the reconstruction so it is
/// unaffected by collision steps, which the merged splitting relies on.
pub fn max_signal_speed(field: &Field) -> f64 {
    let c = signal_speed_factor(field.order());
    let n = field.n() as isize;
    let mut speed: f64 = 0.0;
    for j in 0..=n {
        for i in [j - 1, j] {
            let (u, t) = (field.u1(i), field.theta(i));
            speed = speed.max((u - c * t.sqrt()).abs()).max((u + c * t.sqrt()).abs());
        }
    }
    speed
}
