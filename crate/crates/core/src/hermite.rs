//! Probabilists' Hermite polynomials He_n and Gauss-Hermite quadrature rules.
//!
//! The basis functions of the moment expansion are built from He_n with the
//! three-term recurrence
//!
//!   He_0(x) = 1,  He_1(x) = x,  He_{n+1}(x) = x He_n(x) - n He_{n-1}(x),
//!
//! orthogonal with respect to the standard Gaussian weight:
//!   E[He_m He_n] = n! delta_{mn} for X ~ N(0, 1).
//!
//! The maximal root of He_{M+1} bounds the signal speed of the order-M
//! moment system, and the quadrature rule here integrates exactly against
//! the Gaussian measure, which is what the testing oracle needs.

use crate::error::{Result, SolverError};

/// Evaluate He_n(x) by the three-term recurrence.
pub fn hermite_eval(n: usize, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => x,
        _ => {
            let mut prev = 1.0;
            let mut cur = x;
            for k in 1..n {
                let next = x * cur - (k as f64) * prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Evaluate He_0..=He_n at x into `out` (length n + 1).
pub fn hermite_eval_all(n: usize, x: f64, out: &mut [f64]) {
    debug_assert!(out.len() >= n + 1);
    out[0] = 1.0;
    if n == 0 {
        return;
    }
    out[1] = x;
    for k in 1..n {
        out[k + 1] = x * out[k] - (k as f64) * out[k - 1];
    }
}

/// Largest real root of He_n, to absolute tolerance 1e-12.
///
/// He_n is positive, increasing and convex to the right of its largest
/// root, so a Newton iteration started from the upper bound 2 sqrt(n)
/// descends monotonically onto the root. A bisection bracket guards the
/// iteration anyway.
pub fn hermite_max_root(n: usize) -> Result<f64> {
    assert!(n >= 1, "He_0 has no roots");
    if n == 1 {
        return Ok(0.0);
    }
    const MAX_ITER: usize = 200;
    let mut hi = 2.0 * (n as f64).sqrt();
    let mut lo = 0.0;
    let mut x = hi;
    for _ in 0..MAX_ITER {
        let f = hermite_eval(n, x);
        let df = n as f64 * hermite_eval(n - 1, x);
        if f > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        if df != 0.0 {
            let newton = x - f / df;
            // converged Newton steps can land exactly on a bracket end, so
            // test them before the bracket fallback
            if (newton - x).abs() < 1e-13 {
                return Ok(newton);
            }
            if newton > lo && newton < hi {
                x = newton;
                continue;
            }
        }
        let mid = 0.5 * (lo + hi);
        if (mid - x).abs() < 1e-13 || hi - lo < 1e-13 {
            return Ok(mid);
        }
        x = mid;
    }
    Err(SolverError::RootSolveFailed {
        degree: n,
        iterations: MAX_ITER,
    })
}

/// Gauss-Hermite rule for the normalized Gaussian measure: nodes are the
/// roots of He_n and the weights sum to one, so
///   E[g(X)] ~= sum_k w_k g(x_k),  X ~ N(0, 1),
/// exactly for polynomials of degree <= 2n - 1.
#[derive(Debug, Clone)]
pub struct GaussHermite {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussHermite {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let nodes = hermite_roots(n);
        // w_k = 1 / sum_{j<n} h_j(x_k)^2 with orthonormal h_j = He_j / sqrt(j!)
        let mut weights = Vec::with_capacity(n);
        let mut h = vec![0.0; n];
        for &x in &nodes {
            orthonormal_all(n - 1, x, &mut h);
            let s: f64 = h.iter().map(|v| v * v).sum();
            weights.push(1.0 / s);
        }
        GaussHermite { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Orthonormal Hermite values h_0..=h_n at x; h_{k+1} = (x h_k - sqrt(k) h_{k-1}) / sqrt(k+1).
fn orthonormal_all(n: usize, x: f64, out: &mut [f64]) {
    out[0] = 1.0;
    if n == 0 {
        return;
    }
    out[1] = x;
    for k in 1..n {
        out[k + 1] = (x * out[k] - (k as f64).sqrt() * out[k - 1]) / ((k + 1) as f64).sqrt();
    }
}

/// All roots of He_n in increasing order, found by interlacing: the roots of
/// He_{k+1} are separated by those of He_k, so each is bracketed and safe to
/// bisect before polishing with Newton.
fn hermite_roots(n: usize) -> Vec<f64> {
    let mut roots = vec![0.0f64]; // He_1
    for k in 1..n {
        let deg = k + 1;
        let bound = 2.0 * (deg as f64).sqrt();
        let mut brackets = Vec::with_capacity(deg + 1);
        brackets.push(-bound);
        brackets.extend_from_slice(&roots);
        brackets.push(bound);
        let mut next = Vec::with_capacity(deg);
        for w in brackets.windows(2) {
            next.push(refine_root(deg, w[0], w[1]));
        }
        roots = next;
    }
    roots
}

fn refine_root(n: usize, mut lo: f64, mut hi: f64) -> f64 {
    let orient = hermite_eval(n, hi).signum();
    let mut x = 0.5 * (lo + hi);
    for _ in 0..100 {
        let f = hermite_eval(n, x) * orient;
        if f > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let df = (n as f64) * hermite_eval(n - 1, x) * orient;
        if df != 0.0 {
            let newton = x - f / df;
            if (newton - x).abs() < 1e-15 * (1.0 + x.abs()) {
                return newton;
            }
            if newton > lo && newton < hi {
                x = newton;
                continue;
            }
        }
        let mid = 0.5 * (lo + hi);
        if (mid - x).abs() < 1e-15 * (1.0 + x.abs()) || hi - lo < 1e-15 * (1.0 + x.abs()) {
            return mid;
        }
        x = mid;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_values() {
        assert_eq!(hermite_eval(0, 7.3), 1.0);
        assert_eq!(hermite_eval(1, -2.5), -2.5);
        // He_2(x) = x^2 - 1
        assert_eq!(hermite_eval(2, 1.0), 0.0);
        // He_3(x) = x^3 - 3x
        assert_eq!(hermite_eval(3, 2.0), 2.0);
    }

    #[test]
    fn eval_all_matches_single() {
        let mut buf = vec![0.0; 9];
        hermite_eval_all(8, 0.7, &mut buf);
        for (k, &v) in buf.iter().enumerate() {
            assert!((v - hermite_eval(k, 0.7)).abs() < 1e-13);
        }
    }

    #[test]
    fn max_roots_match_closed_forms() {
        assert_eq!(hermite_max_root(1).unwrap(), 0.0);
        assert!((hermite_max_root(2).unwrap() - 1.0).abs() < 1e-12);
        // He_3 = x^3 - 3x, largest root sqrt(3)
        assert!((hermite_max_root(3).unwrap() - 3.0f64.sqrt()).abs() < 1e-12);
        // He_4 = x^4 - 6x^2 + 3, largest root sqrt(3 + sqrt(6))
        let c4 = (3.0 + 6.0f64.sqrt()).sqrt();
        assert!((hermite_max_root(4).unwrap() - c4).abs() < 1e-12);
        assert!((hermite_max_root(4).unwrap() - 2.3344142183389773).abs() < 1e-10);
    }

    #[test]
    fn max_root_is_a_root_and_rightmost() {
        for n in 2..=12 {
            let r = hermite_max_root(n).unwrap();
            assert!(hermite_eval(n, r).abs() < 1e-7 * (1.0 + r.powi(n as i32)));
            // strictly positive beyond, and interlacing pushes roots outward
            assert!(hermite_eval(n, r + 1e-6) > 0.0);
            if n > 2 {
                assert!(r > hermite_max_root(n - 1).unwrap());
            }
        }
    }

    #[test]
    fn quadrature_moments_of_gaussian() {
        let rule = GaussHermite::new(20);
        let total: f64 = rule.weights.iter().sum();
        assert!((total - 1.0).abs() < 1e-13);
        // E[x^2] = 1, E[x^4] = 3, E[x^6] = 15, odd moments vanish
        let moment = |p: i32| -> f64 {
            rule.nodes
                .iter()
                .zip(&rule.weights)
                .map(|(x, w)| w * x.powi(p))
                .sum()
        };
        assert!(moment(1).abs() < 1e-13);
        assert!((moment(2) - 1.0).abs() < 1e-12);
        assert!((moment(4) - 3.0).abs() < 1e-11);
        assert!((moment(6) - 15.0).abs() < 1e-10);
    }

    #[test]
    fn quadrature_is_exact_on_hermite_orthogonality() {
        // E[He_m He_n] = n! delta_mn, checked with the 40-node rule
        let rule = GaussHermite::new(40);
        let factorial = |n: usize| (1..=n).map(|k| k as f64).product::<f64>().max(1.0);
        for m in 0..=10 {
            for n in 0..=10 {
                let val: f64 = rule
                    .nodes
                    .iter()
                    .zip(&rule.weights)
                    .map(|(x, w)| w * hermite_eval(m, *x) * hermite_eval(n, *x))
                    .sum();
                let expect = if m == n { factorial(n) } else { 0.0 };
                assert!(
                    (val - expect).abs() < 1e-8 * (1.0 + expect),
                    "m={m} n={n}: {val} vs {expect}"
                );
            }
        }
    }
}
