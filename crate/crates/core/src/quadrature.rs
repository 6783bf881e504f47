//! Tensor Gauss-Hermite quadrature oracle for the test suites.
//!
//! Everything here goes through [`MomentRep::eval`], the pointwise value of
//! the expansion, so the results are independent of the coefficient algebra
//! in `project` and `flux_moments` that they are used to check.
//!
//! The quadrature runs in the representation's own frame, where the
//! integrand divided by the Gaussian weight is a polynomial of per-axis
//! degree at most 2(M + 1), so the default 40-node rule is exact for every
//! order the expansion can carry (up to rounding).

use crate::hermite::{hermite_eval_all, GaussHermite};
use crate::rep::MomentRep;

/// Default nodes per axis.
pub const DEFAULT_NODES: usize = 40;

const TWO_PI_POW_3_2: f64 = 15.749609945722419; // (2 pi)^{3/2}

/// Integral of f(xi) g(xi) over velocity space by tensor quadrature in the
/// rep's own frame.
pub fn integrate<G: Fn([f64; 3]) -> f64>(rep: &MomentRep, nodes_per_axis: usize, g: G) -> f64 {
    let rule = GaussHermite::new(nodes_per_axis);
    let u = rep.u_frame();
    let sqrt_theta = rep.theta_frame().sqrt();
    let mut total = 0.0;
    for (i, &wi) in rule.nodes.iter().enumerate() {
        for (j, &wj) in rule.nodes.iter().enumerate() {
            for (k, &wk) in rule.nodes.iter().enumerate() {
                let w = [wi, wj, wk];
                let xi = [
                    u[0] + sqrt_theta * w[0],
                    u[1] + sqrt_theta * w[1],
                    u[2] + sqrt_theta * w[2],
                ];
                let gauss_free = rep.eval(xi)
                    * TWO_PI_POW_3_2
                    * (0.5 * (w[0] * w[0] + w[1] * w[1] + w[2] * w[2])).exp();
                let weight = rule.weights[i] * rule.weights[j] * rule.weights[k];
                total += weight * gauss_free * g(xi);
            }
        }
    }
    total * rep.theta_frame().powf(1.5)
}

/// Hermite coefficients of the rep's distribution in the target frame
/// (u_t, theta_t), for every |alpha| <= M + 1:
///
///   f_alpha = theta_t^{|alpha|/2} / alpha! *
///             integral of f(xi) prod_d He_{alpha_d}((xi_d - u_t_d)/sqrt(theta_t))
///
/// This is the dual pairing of the expansion and defines the ground truth
/// for `project`.
pub fn coefficients_in_frame(
    rep: &MomentRep,
    u_target: [f64; 3],
    theta_target: f64,
    nodes_per_axis: usize,
) -> Vec<f64> {
    assert!(theta_target > 0.0);
    let table = rep.table().clone();
    let max_deg = table.order() + 1;
    let rule = GaussHermite::new(nodes_per_axis);
    let u = rep.u_frame();
    let sqrt_theta = rep.theta_frame().sqrt();
    let sqrt_theta_t = theta_target.sqrt();

    let mut acc = vec![0.0f64; table.len()];
    let mut he = [[0.0f64; 32]; 3];
    for (i, &wi) in rule.nodes.iter().enumerate() {
        for (j, &wj) in rule.nodes.iter().enumerate() {
            for (k, &wk) in rule.nodes.iter().enumerate() {
                let w = [wi, wj, wk];
                let xi = [
                    u[0] + sqrt_theta * w[0],
                    u[1] + sqrt_theta * w[1],
                    u[2] + sqrt_theta * w[2],
                ];
                let gauss_free = rep.eval(xi)
                    * TWO_PI_POW_3_2
                    * (0.5 * (w[0] * w[0] + w[1] * w[1] + w[2] * w[2])).exp();
                let weight = rule.weights[i] * rule.weights[j] * rule.weights[k];
                let wf = weight * gauss_free;
                for d in 0..3 {
                    let y = (xi[d] - u_target[d]) / sqrt_theta_t;
                    hermite_eval_all(max_deg, y, &mut he[d]);
                }
                for idx in 0..table.len() {
                    let a = table.multi_index(idx);
                    acc[idx] +=
                        wf * he[0][a[0] as usize] * he[1][a[1] as usize] * he[2][a[2] as usize];
                }
            }
        }
    }

    let vol = rep.theta_frame().powf(1.5);
    let mut theta_pow = [0.0f64; 32];
    theta_pow[0] = 1.0;
    for p in 1..=max_deg {
        theta_pow[p] = theta_pow[p - 1] * sqrt_theta_t;
    }
    let factorial = |n: usize| -> f64 { (1..=n).map(|v| v as f64).product::<f64>().max(1.0) };
    for idx in 0..table.len() {
        let a = table.multi_index(idx);
        let fact =
            factorial(a[0] as usize) * factorial(a[1] as usize) * factorial(a[2] as usize);
        acc[idx] *= vol * theta_pow[table.degree(idx)] / fact;
    }
    acc
}

/// (rho, rho u, rho |u|^2 + 3 rho theta) by direct velocity moments.
pub fn conserved_by_quadrature(rep: &MomentRep, nodes_per_axis: usize) -> [f64; 5] {
    [
        integrate(rep, nodes_per_axis, |_| 1.0),
        integrate(rep, nodes_per_axis, |xi| xi[0]),
        integrate(rep, nodes_per_axis, |xi| xi[1]),
        integrate(rep, nodes_per_axis, |xi| xi[2]),
        integrate(rep, nodes_per_axis, |xi| {
            xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::MultiIndexTable;
    use crate::rep::MacroState;

    #[test]
    fn maxwellian_moments() {
        let t = MultiIndexTable::new(3);
        let s = MacroState::new(1.3, [0.4, -0.2, 0.1], 0.9);
        let rep = MomentRep::maxwellian(&t, &s);
        let m = conserved_by_quadrature(&rep, 24);
        assert!((m[0] - 1.3).abs() < 1e-12);
        for d in 0..3 {
            assert!((m[1 + d] - 1.3 * s.u[d]).abs() < 1e-12);
        }
        let u_sq: f64 = s.u.iter().map(|v| v * v).sum();
        assert!((m[4] - (1.3 * u_sq + 3.0 * 1.3 * 0.9)).abs() < 1e-11);
    }

    #[test]
    fn own_frame_coefficients_reproduce_the_rep() {
        let t = MultiIndexTable::new(3);
        let mut rep = MomentRep::maxwellian(&t, &MacroState::new(1.0, [0.2, 0.0, -0.3], 1.4));
        rep.coeffs_mut()[t.index_of([2, 0, 0]).unwrap()] = 0.1;
        rep.coeffs_mut()[t.index_of([0, 0, 2]).unwrap()] = -0.1;
        rep.coeffs_mut()[t.index_of([1, 2, 1]).unwrap()] = 0.05;
        let got = coefficients_in_frame(&rep, rep.u_frame(), rep.theta_frame(), DEFAULT_NODES);
        for (idx, (a, b)) in got.iter().zip(rep.coeffs()).enumerate() {
            assert!((a - b).abs() < 1e-10, "idx {idx}: {a} vs {b}");
        }
    }
}
