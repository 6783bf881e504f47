//! Quadrature-oracle checks of the moment algebra: everything here compares
//! coefficient-space operations against velocity-space integrals of the
//! pointwise expansion.

use std::sync::Arc;

use bgk_moments::hermite::hermite_eval;
use bgk_moments::index::MultiIndexTable;
use bgk_moments::quadrature::{coefficients_in_frame, conserved_by_quadrature, integrate};
use bgk_moments::rep::{MacroState, MomentRep};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_rep(table: &Arc<MultiIndexTable>, rng: &mut ChaCha8Rng) -> MomentRep {
    let state = MacroState::new(
        0.5 + 1.5 * rng.gen::<f64>(),
        [
            2.0 * rng.gen::<f64>() - 1.0,
            2.0 * rng.gen::<f64>() - 1.0,
            2.0 * rng.gen::<f64>() - 1.0,
        ],
        0.5 + 1.5 * rng.gen::<f64>(),
    );
    let mut rep = MomentRep::maxwellian(table, &state);
    let amp = 0.1 * state.rho;
    for idx in table.degree_start(2)..table.state_len() {
        let deg = table.degree(idx) as f64;
        rep.coeffs_mut()[idx] = amp * (2.0 * rng.gen::<f64>() - 1.0) * 0.5f64.powf(deg - 2.0);
    }
    rep
}

fn random_frame(rep: &MomentRep, rng: &mut ChaCha8Rng) -> ([f64; 3], f64) {
    // |du| <= 1 and theta ratio in [1/2, 2]
    let dir = [
        2.0 * rng.gen::<f64>() - 1.0,
        2.0 * rng.gen::<f64>() - 1.0,
        2.0 * rng.gen::<f64>() - 1.0,
    ];
    let norm = (dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]).sqrt();
    let len = rng.gen::<f64>() / norm.max(1e-9);
    let u0 = rep.u_frame();
    let u = [
        u0[0] + len * dir[0],
        u0[1] + len * dir[1],
        u0[2] + len * dir[2],
    ];
    let theta = rep.theta_frame() * (0.5 + 1.5 * rng.gen::<f64>());
    (u, theta)
}

#[test]
fn project_matches_quadrature_oracle() {
    let table = MultiIndexTable::new(3);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..6 {
        let rep = random_rep(&table, &mut rng);
        let (u, theta) = random_frame(&rep, &mut rng);
        let projected = rep.project(u, theta).unwrap();
        let oracle = coefficients_in_frame(&rep, u, theta, 40);
        let rho = rep.coeffs()[0];
        for idx in 0..table.len() {
            let diff = (projected.coeffs()[idx] - oracle[idx]).abs() / rho;
            assert!(
                diff < 1e-8,
                "idx {idx}: projected {} oracle {}",
                projected.coeffs()[idx],
                oracle[idx]
            );
        }
    }
}

#[test]
fn macro_recovery_matches_direct_moments() {
    let table = MultiIndexTable::new(4);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let rep = random_rep(&table, &mut rng);
    let (u, theta) = random_frame(&rep, &mut rng);
    let off_frame = rep.project(u, theta).unwrap();
    let m = off_frame.conserved_moments();
    let q = conserved_by_quadrature(&off_frame, 40);
    for k in 0..5 {
        assert!((m[k] - q[k]).abs() < 1e-9 * (1.0 + q[k].abs()), "moment {k}");
    }
    let s = off_frame.macro_state().unwrap();
    let rho = q[0];
    let uq = [q[1] / rho, q[2] / rho, q[3] / rho];
    let theta_q = (q[4] - rho * (uq[0] * uq[0] + uq[1] * uq[1] + uq[2] * uq[2])) / (3.0 * rho);
    assert!((s.rho - rho).abs() < 1e-10);
    for d in 0..3 {
        assert!((s.u[d] - uq[d]).abs() < 1e-10);
    }
    assert!((s.theta - theta_q).abs() < 1e-10);
}

/// Dual pairing of an arbitrary velocity function with the Hermite basis in
/// the given frame; the coefficient a function xi -> g(xi) f(xi) would carry.
fn dual_coefficient(
    rep: &MomentRep,
    u: [f64; 3],
    theta: f64,
    alpha: [u8; 3],
    weight: impl Fn([f64; 3]) -> f64,
) -> f64 {
    let fact = |n: u8| (1..=n as u64).map(|v| v as f64).product::<f64>().max(1.0);
    let pairing = integrate(rep, 40, |xi| {
        let mut p = weight(xi);
        for d in 0..3 {
            p *= hermite_eval(alpha[d] as usize, (xi[d] - u[d]) / theta.sqrt());
        }
        p
    });
    let deg = (alpha[0] + alpha[1] + alpha[2]) as f64;
    pairing * theta.powf(0.5 * deg) / (fact(alpha[0]) * fact(alpha[1]) * fact(alpha[2]))
}

#[test]
fn flux_moments_match_quadrature_of_xi_f() {
    let table = MultiIndexTable::new(3);
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let rep = random_rep(&table, &mut rng);
    let rho = rep.coeffs()[0];
    for j in 0..2 {
        let flux = rep.flux_moments(j);
        for idx in 0..table.state_len() {
            let alpha = table.multi_index(idx);
            let oracle =
                dual_coefficient(&rep, rep.u_frame(), rep.theta_frame(), alpha, |xi| xi[j]);
            assert!(
                (flux.coeffs()[idx] - oracle).abs() / rho < 1e-8,
                "j={j} alpha={alpha:?}: {} vs {oracle}",
                flux.coeffs()[idx]
            );
        }
    }
}

#[test]
fn flux_mass_component_is_the_mass_flux() {
    let table = MultiIndexTable::new(3);
    let rep = MomentRep::maxwellian(&table, &MacroState::new(1.0, [2.0, 0.0, 0.0], 1.0));
    let mass_flux = integrate(&rep, 32, |xi| xi[0]);
    let flux = rep.flux_moments(0);
    assert!((flux.coeffs()[0] - mass_flux).abs() < 1e-10);
    assert!((mass_flux - 2.0).abs() < 1e-10);
}

#[test]
fn bimodal_mixture_combines_correctly() {
    // 0.5 M(rho=1,u=0,theta=1) + 0.5 M(rho=1,u=(1,0,0),theta=1) in the frame
    // (u=(0.5,0,0), theta=1): closed-form coefficients from the shifted
    // Maxwellian expansions, cross-checked against quadrature
    let table = MultiIndexTable::new(4);
    let a = MomentRep::maxwellian(&table, &MacroState::new(1.0, [0.0; 3], 1.0));
    let b = MomentRep::maxwellian(&table, &MacroState::new(1.0, [1.0, 0.0, 0.0], 1.0));
    let frame_u = [0.5, 0.0, 0.0];
    let mix = MomentRep::linear_combine(0.5, &a, 0.5, &b, frame_u, 1.0).unwrap();

    let fact = |n: u64| (1..=n).map(|v| v as f64).product::<f64>().max(1.0);
    for n in 0..=5u8 {
        let expect =
            0.5 * ((-0.5f64).powi(n as i32) + 0.5f64.powi(n as i32)) / fact(n as u64);
        let got = mix.coeff([n, 0, 0]);
        assert!((got - expect).abs() < 1e-10, "n={n}: {got} vs {expect}");
    }

    // quadrature on the two pieces confirms the combined rep
    let oa = coefficients_in_frame(&a, frame_u, 1.0, 40);
    let ob = coefficients_in_frame(&b, frame_u, 1.0, 40);
    for idx in 0..table.len() {
        let expect = 0.5 * oa[idx] + 0.5 * ob[idx];
        assert!((mix.coeffs()[idx] - expect).abs() < 1e-9, "idx {idx}");
    }
}

#[test]
fn standard_representation_invariants_hold() {
    let table = MultiIndexTable::new(4);
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..8 {
        let rep = random_rep(&table, &mut rng);
        let (u, theta) = random_frame(&rep, &mut rng);
        let off = rep.project(u, theta).unwrap();
        let std = off.to_standard().unwrap();
        let rho = std.coeffs()[0];
        let mut trace = 0.0;
        for d in 0..3 {
            assert!(std.coeffs()[table.unit(d)].abs() < 1e-10 * rho);
            trace += std.coeffs()[table.double(d)];
        }
        assert!(trace.abs() < 1e-10 * rho);
    }
}
