//! Hermite moment representation of a velocity distribution function.
//!
//! A distribution f(xi) on R^3 is stored as the coefficients f_alpha of the
//! expansion
//!
//!   f(xi) = sum_{|alpha| <= M+1} f_alpha H_{theta,alpha}((xi - u) / sqrt(theta)),
//!
//!   H_{theta,alpha}(v) = (2 pi)^{-3/2} theta^{-(|alpha|+3)/2}
//!                        exp(-|v|^2 / 2) prod_d He_{alpha_d}(v_d),
//!
//! about an expansion frame (u, theta) that need not coincide with the
//! distribution's own mean velocity and temperature. Coefficients with
//! |alpha| = M + 1 are closure slots: they are populated transiently by the
//! regularizing closure and are not part of the state proper.
//!
//! When the frame equals the distribution's own macroscopic (u, theta), the
//! representation is called standard; then f_{e_d} = 0 for each d and
//! sum_d f_{2 e_d} = 0.

use std::sync::Arc;

use crate::error::{Result, SolverError};
use crate::hermite::hermite_eval_all;
use crate::index::{MultiIndexTable, DIM, NO_INDEX};

/// Macroscopic density, velocity and temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MacroState {
    pub rho: f64,
    pub u: [f64; 3],
    pub theta: f64,
}

impl MacroState {
    pub fn new(rho: f64, u: [f64; 3], theta: f64) -> Self {
        MacroState { rho, u, theta }
    }

    pub fn is_admissible(&self) -> bool {
        self.rho > 0.0 && self.theta > 0.0
    }
}

/// A distribution function as Hermite coefficients about a given frame.
#[derive(Debug, Clone)]
pub struct MomentRep {
    table: Arc<MultiIndexTable>,
    u_frame: [f64; 3],
    theta_frame: f64,
    coeffs: Vec<f64>,
}

impl MomentRep {
    /// Representation with all coefficients zero, in the given frame.
    pub fn zero(table: &Arc<MultiIndexTable>, u_frame: [f64; 3], theta_frame: f64) -> Self {
        assert!(theta_frame > 0.0, "frame temperature must be positive");
        MomentRep {
            table: Arc::clone(table),
            u_frame,
            theta_frame,
            coeffs: vec![0.0; table.len()],
        }
    }

    /// The local Maxwellian of a macroscopic state: in its own frame it is
    /// exactly rho times the zeroth basis function.
    pub fn maxwellian(table: &Arc<MultiIndexTable>, state: &MacroState) -> Self {
        assert!(state.is_admissible(), "Maxwellian needs rho > 0 and theta > 0");
        let mut rep = MomentRep::zero(table, state.u, state.theta);
        rep.coeffs[0] = state.rho;
        rep
    }

    pub fn from_parts(
        table: &Arc<MultiIndexTable>,
        u_frame: [f64; 3],
        theta_frame: f64,
        coeffs: Vec<f64>,
    ) -> Self {
        assert!(theta_frame > 0.0);
        assert_eq!(coeffs.len(), table.len(), "coefficient array length mismatch");
        MomentRep {
            table: Arc::clone(table),
            u_frame,
            theta_frame,
            coeffs,
        }
    }

    pub fn table(&self) -> &Arc<MultiIndexTable> {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn u_frame(&self) -> [f64; 3] {
        self.u_frame
    }

    pub fn theta_frame(&self) -> f64 {
        self.theta_frame
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    pub fn coeff(&self, alpha: [u8; DIM]) -> f64 {
        match self.table.index_of(alpha) {
            Some(i) => self.coeffs[i],
            None => 0.0,
        }
    }

    /// Clear the transient |alpha| = M + 1 slots.
    pub fn zero_closure_slots(&mut self) {
        let start = self.table.state_len();
        for c in &mut self.coeffs[start..] {
            *c = 0.0;
        }
    }

    /// Conserved moments (rho, rho u, rho |u|^2 + 3 rho theta) of the
    /// distribution. Linear in the coefficients at fixed frame and
    /// independent of the frame itself, so valid for any rep, including
    /// flux and derivative data that is not an admissible state.
    pub fn conserved_moments(&self) -> [f64; 5] {
        let f0 = self.coeffs[0];
        let mut out = [0.0; 5];
        out[0] = f0;
        let mut energy = 0.0;
        for d in 0..DIM {
            let f1 = self.coeffs[self.table.unit(d)];
            let f2 = self.coeffs[self.table.double(d)];
            let ud = self.u_frame[d];
            out[1 + d] = f0 * ud + f1;
            energy += self.theta_frame * f0 + 2.0 * f1 * ud + 2.0 * f2 + f0 * ud * ud;
        }
        out[4] = energy;
        out
    }

    /// Recover (rho, u, theta) from the coefficients of orders <= 2.
    ///
    /// Representation independent: any frame yields the same state. Errors
    /// when the recovered density or temperature is not positive.
    pub fn macro_state(&self) -> Result<MacroState> {
        let m = self.conserved_moments();
        let rho = m[0];
        if !(rho > 0.0) {
            return Err(SolverError::InadmissibleState {
                rho,
                theta: f64::NAN,
                location: "moment representation".to_string(),
            });
        }
        let u = [m[1] / rho, m[2] / rho, m[3] / rho];
        let u_sq = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
        let theta = (m[4] - rho * u_sq) / (3.0 * rho);
        if !(theta > 0.0) {
            return Err(SolverError::InadmissibleState {
                rho,
                theta,
                location: "moment representation".to_string(),
            });
        }
        Ok(MacroState { rho, u, theta })
    }

    /// Analytic BGK collision step on a standard representation: every
    /// coefficient of order 2 <= |alpha| <= M decays by exp(-nu dt); the
    /// conserved orders |alpha| < 2 and the closure slots are untouched.
    pub fn collision_relax(&self, nu: f64, dt: f64) -> MomentRep {
        debug_assert!(nu >= 0.0 && dt >= 0.0);
        let mut out = self.clone();
        let decay = (-nu * dt).exp();
        let lo = self.table.degree_start(2);
        let hi = self.table.state_len();
        for c in &mut out.coeffs[lo..hi] {
            *c *= decay;
        }
        out
    }

    /// Coefficients of xi_j f in the same frame, valid for |alpha| <= M:
    ///   F_{j,alpha} = theta f_{alpha-e_j} + u_j f_alpha + (alpha_j + 1) f_{alpha+e_j}.
    /// Indices with a negative component contribute zero. The |alpha| = M+1
    /// closure slots of the input feed the order-M flux coefficients; the
    /// output slots are left zero.
    pub fn flux_moments(&self, j: usize) -> MomentRep {
        let t = &self.table;
        let mut out = MomentRep::zero(t, self.u_frame, self.theta_frame);
        let uj = self.u_frame[j];
        let theta = self.theta_frame;
        for idx in 0..t.state_len() {
            let mut v = uj * self.coeffs[idx];
            let down = t.minus(idx, j);
            if down != NO_INDEX {
                v += theta * self.coeffs[down as usize];
            }
            let up = t.plus(idx, j);
            if up != NO_INDEX {
                let aj = t.multi_index(idx)[j] as f64;
                v += (aj + 1.0) * self.coeffs[up as usize];
            }
            out.coeffs[idx] = v;
        }
        out
    }

    /// Pointwise value of the truncated expansion at velocity xi, including
    /// any populated closure slots.
    pub fn eval(&self, xi: [f64; 3]) -> f64 {
        let t = &self.table;
        let max_deg = t.order() + 1;
        let theta = self.theta_frame;
        let sqrt_theta = theta.sqrt();

        let mut he = [[0.0f64; 32]; DIM];
        let mut v_sq = 0.0;
        for d in 0..DIM {
            let v = (xi[d] - self.u_frame[d]) / sqrt_theta;
            v_sq += v * v;
            hermite_eval_all(max_deg, v, &mut he[d]);
        }

        // theta^{-(k+3)/2} for k = 0..=M+1
        let mut theta_pow = [0.0f64; 32];
        theta_pow[0] = theta.powf(-1.5);
        for k in 1..=max_deg {
            theta_pow[k] = theta_pow[k - 1] / sqrt_theta;
        }

        let mut sum = 0.0;
        for idx in 0..t.len() {
            let c = self.coeffs[idx];
            if c == 0.0 {
                continue;
            }
            let a = t.multi_index(idx);
            let basis = he[0][a[0] as usize] * he[1][a[1] as usize] * he[2][a[2] as usize];
            sum += c * theta_pow[t.degree(idx)] * basis;
        }
        const TWO_PI_POW: f64 = 0.06349363593424097; // (2 pi)^{-3/2}
        sum * TWO_PI_POW * (-0.5 * v_sq).exp()
    }

    /// In-place fused multiply-add: self += scale * other, which requires
    /// identical frames. Used by the schemes after projecting to a common
    /// frame.
    pub fn axpy_same_frame(&mut self, scale: f64, other: &MomentRep) {
        debug_assert_eq!(self.u_frame, other.u_frame);
        debug_assert_eq!(self.theta_frame, other.theta_frame);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += scale * b;
        }
    }

    pub fn scale(&mut self, factor: f64) {
        for c in &mut self.coeffs {
            *c *= factor;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(m: usize) -> Arc<MultiIndexTable> {
        MultiIndexTable::new(m)
    }

    #[test]
    fn maxwellian_is_basis_aligned() {
        let t = table(3);
        let rep = MomentRep::maxwellian(&t, &MacroState::new(1.0, [0.0; 3], 1.0));
        assert_eq!(rep.coeffs()[0], 1.0);
        assert!(rep.coeffs()[1..].iter().all(|&c| c == 0.0));

        // shock tube left state
        let s = MacroState::new(0.445, [0.698 * 2.0f64.sqrt(), 0.0, 0.0], 13.21);
        let rep = MomentRep::maxwellian(&t, &s);
        assert_eq!(rep.coeffs()[0], 0.445);
        assert_eq!(rep.u_frame(), s.u);
        assert_eq!(rep.theta_frame(), 13.21);
        let back = rep.macro_state().unwrap();
        assert!((back.rho - s.rho).abs() < 1e-15);
        assert!((back.theta - s.theta).abs() < 1e-12);
    }

    #[test]
    fn macro_recovery_standard_rep() {
        let t = table(3);
        let mut rep = MomentRep::zero(&t, [0.3, -0.1, 0.0], 2.5);
        rep.coeffs_mut()[0] = 2.0;
        // trace-free second order: +a, -a, 0
        let d0 = t.double(0);
        let d1 = t.double(1);
        rep.coeffs_mut()[d0] = 0.25;
        rep.coeffs_mut()[d1] = -0.25;
        let s = rep.macro_state().unwrap();
        assert!((s.rho - 2.0).abs() < 1e-15);
        assert_eq!(s.u, rep.u_frame());
        assert!((s.theta - 2.5).abs() < 1e-14);
    }

    #[test]
    fn macro_recovery_hot_frame() {
        // standard normal expanded in a theta' = 2 frame
        let t = table(3);
        let mut rep = MomentRep::zero(&t, [0.0; 3], 2.0);
        rep.coeffs_mut()[0] = 1.0;
        for d in 0..3 {
            rep.coeffs_mut()[t.double(d)] = -0.5;
        }
        let s = rep.macro_state().unwrap();
        assert!((s.rho - 1.0).abs() < 1e-15);
        assert!(s.u.iter().all(|&v| v.abs() < 1e-15));
        assert!((s.theta - 1.0).abs() < 1e-14);
    }

    #[test]
    fn macro_recovery_shifted_frame() {
        // standard normal expanded about u' = (0.5, 0, 0)
        let t = table(3);
        let mut rep = MomentRep::zero(&t, [0.5, 0.0, 0.0], 1.0);
        rep.coeffs_mut()[0] = 1.0;
        rep.coeffs_mut()[t.unit(0)] = -0.5;
        rep.coeffs_mut()[t.double(0)] = 0.125;
        let s = rep.macro_state().unwrap();
        assert!((s.rho - 1.0).abs() < 1e-15);
        assert!(s.u.iter().all(|&v| v.abs() < 1e-14));
        assert!((s.theta - 1.0).abs() < 1e-14);
    }

    #[test]
    fn macro_recovery_rejects_bad_states() {
        let t = table(3);
        let mut rep = MomentRep::zero(&t, [0.0; 3], 1.0);
        rep.coeffs_mut()[0] = -1.0;
        assert!(rep.macro_state().is_err());
        rep.coeffs_mut()[0] = 1.0;
        for d in 0..3 {
            rep.coeffs_mut()[t.double(d)] = -0.6; // drives theta negative
        }
        assert!(rep.macro_state().is_err());
    }

    #[test]
    fn flux_of_maxwellian() {
        let t = table(3);
        let rest = MomentRep::maxwellian(&t, &MacroState::new(1.0, [0.0; 3], 1.0));
        let flux = rest.flux_moments(0);
        assert_eq!(flux.coeffs()[0], 0.0); // zero mass flux

        let moving = MomentRep::maxwellian(&t, &MacroState::new(1.0, [2.0, 0.0, 0.0], 1.0));
        let flux = moving.flux_moments(0);
        assert!((flux.coeffs()[0] - 2.0).abs() < 1e-15); // rho u_1
    }

    #[test]
    fn collision_examples() {
        let t = table(3);
        let maxw = MomentRep::maxwellian(&t, &MacroState::new(1.3, [0.2, 0.0, 0.0], 0.8));
        let relaxed = maxw.collision_relax(7.0, 3.0);
        assert_eq!(relaxed.coeffs(), maxw.coeffs()); // fixed point

        let mut rep = MomentRep::maxwellian(&t, &MacroState::new(1.0, [0.0; 3], 1.0));
        let i200 = t.index_of([2, 0, 0]).unwrap();
        rep.coeffs_mut()[i200] = 0.3;
        let half = rep.collision_relax(1.0, 2.0f64.ln());
        assert!((half.coeffs()[i200] - 0.15).abs() < 1e-15);
        let ident = rep.collision_relax(5.0, 0.0);
        assert_eq!(ident.coeffs(), rep.coeffs());
    }

    #[test]
    fn collision_conserves_and_contracts() {
        let t = table(4);
        let mut rep = MomentRep::maxwellian(&t, &MacroState::new(1.5, [0.4, -0.2, 0.1], 1.1));
        // trace-free order-2 block plus some higher content
        rep.coeffs_mut()[t.double(0)] = 0.1;
        rep.coeffs_mut()[t.double(1)] = -0.1;
        let i31 = t.index_of([3, 1, 0]).unwrap();
        rep.coeffs_mut()[i31] = 0.07;
        let before = rep.conserved_moments();
        let after_rep = rep.collision_relax(2.0, 0.5);
        let after = after_rep.conserved_moments();
        for k in 0..5 {
            assert!((before[k] - after[k]).abs() < 1e-14);
        }
        assert!(after_rep.coeffs()[i31].abs() < rep.coeffs()[i31].abs());
    }

    #[test]
    fn eval_gaussian_peak_and_decay() {
        let t = table(3);
        let rep = MomentRep::maxwellian(&t, &MacroState::new(1.0, [0.0; 3], 1.0));
        let peak = rep.eval([0.0; 3]);
        assert!((peak - 0.06349363593424097).abs() < 1e-15);
        assert!(rep.eval([40.0, 0.0, 0.0]).abs() < 1e-300);
    }
}
