//! Exact Riemann solver for the 1D Euler equations of a monatomic ideal gas.
//!
//! Serves as the independent near-fluid oracle for the shock tube: at small
//! Knudsen number the kinetic solution approaches the Euler solution of the
//! same initial data with gamma = 5/3 and p = rho theta.
//!
//! Standard construction: Newton iteration on the pressure function
//! f_L(p) + f_R(p) + (u_R - u_L) = 0 picks the star pressure, then the
//! solution is sampled along similarity rays xi = (x - x0)/t.

/// One constant gas state.
#[derive(Debug, Clone, Copy)]
pub struct GasState {
    pub rho: f64,
    pub u: f64,
    pub p: f64,
}

impl GasState {
    pub fn from_theta(rho: f64, u: f64, theta: f64) -> Self {
        GasState {
            rho,
            u,
            p: rho * theta,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RiemannSolution {
    pub gamma: f64,
    pub left: GasState,
    pub right: GasState,
    pub p_star: f64,
    pub u_star: f64,
    pub rho_star_l: f64,
    pub rho_star_r: f64,
}

/// Wave speeds of the solved problem (similarity coordinates).
#[derive(Debug, Clone, Copy)]
pub struct WaveSpeeds {
    /// Head and tail of the left wave (equal for a shock).
    pub left_head: f64,
    pub left_tail: f64,
    pub contact: f64,
    /// Head and tail of the right wave (equal for a shock).
    pub right_head: f64,
    pub right_tail: f64,
}

impl RiemannSolution {
    pub fn solve(left: GasState, right: GasState, gamma: f64) -> Self {
        let fk = |p: f64, s: &GasState| -> f64 {
            let c = (gamma * s.p / s.rho).sqrt();
            if p <= s.p {
                2.0 * c / (gamma - 1.0) * ((p / s.p).powf((gamma - 1.0) / (2.0 * gamma)) - 1.0)
            } else {
                let a = 2.0 / ((gamma + 1.0) * s.rho);
                let b = (gamma - 1.0) / (gamma + 1.0) * s.p;
                (p - s.p) * (a / (p + b)).sqrt()
            }
        };
        let f = |p: f64| fk(p, &left) + fk(p, &right) + (right.u - left.u);

        // Newton from a positivity-safe guess with bisection fallback
        let mut lo = 1e-12 * (left.p + right.p);
        let mut hi = 10.0 * (left.p + right.p);
        while f(hi) < 0.0 {
            hi *= 10.0;
        }
        let mut p = 0.5 * (left.p + right.p);
        for _ in 0..200 {
            let fp = f(p);
            if fp > 0.0 {
                hi = p;
            } else {
                lo = p;
            }
            let h = 1e-7 * p;
            let d = (f(p + h) - f(p - h)) / (2.0 * h);
            let mut next = if d != 0.0 { p - fp / d } else { 0.5 * (lo + hi) };
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - p).abs() < 1e-14 * p.max(1.0) {
                p = next;
                break;
            }
            p = next;
        }
        let p_star = p;
        let u_star = 0.5 * (left.u + right.u) + 0.5 * (fk(p_star, &right) - fk(p_star, &left));
        let b = (gamma - 1.0) / (gamma + 1.0);
        let star_density = |s: &GasState| -> f64 {
            if p_star <= s.p {
                s.rho * (p_star / s.p).powf(1.0 / gamma)
            } else {
                s.rho * (p_star / s.p + b) / (1.0 + b * p_star / s.p)
            }
        };
        RiemannSolution {
            gamma,
            left,
            right,
            p_star,
            u_star,
            rho_star_l: star_density(&left),
            rho_star_r: star_density(&right),
        }
    }

    pub fn wave_speeds(&self) -> WaveSpeeds {
        let g = self.gamma;
        let cl = (g * self.left.p / self.left.rho).sqrt();
        let cr = (g * self.right.p / self.right.rho).sqrt();
        let (left_head, left_tail) = if self.p_star <= self.left.p {
            let c_star = cl * (self.p_star / self.left.p).powf((g - 1.0) / (2.0 * g));
            (self.left.u - cl, self.u_star - c_star)
        } else {
            let s = self.left.u
                - cl * ((g + 1.0) / (2.0 * g) * self.p_star / self.left.p
                    + (g - 1.0) / (2.0 * g))
                    .sqrt();
            (s, s)
        };
        let (right_tail, right_head) = if self.p_star <= self.right.p {
            let c_star = cr * (self.p_star / self.right.p).powf((g - 1.0) / (2.0 * g));
            (self.u_star + c_star, self.right.u + cr)
        } else {
            let s = self.right.u
                + cr * ((g + 1.0) / (2.0 * g) * self.p_star / self.right.p
                    + (g - 1.0) / (2.0 * g))
                    .sqrt();
            (s, s)
        };
        WaveSpeeds {
            left_head,
            left_tail,
            contact: self.u_star,
            right_head,
            right_tail,
        }
    }

    /// Sample the self-similar solution at xi = (x - x0) / t.
    pub fn sample(&self, xi: f64) -> GasState {
        let g = self.gamma;
        let w = self.wave_speeds();
        if xi <= w.left_head {
            return self.left;
        }
        if xi < w.left_tail {
            // inside the left rarefaction fan
            let cl = (g * self.left.p / self.left.rho).sqrt();
            let u = (2.0 / (g + 1.0)) * (cl + (g - 1.0) / 2.0 * self.left.u + xi);
            let c = cl - (g - 1.0) / 2.0 * (u - self.left.u);
            let rho = self.left.rho * (c / cl).powf(2.0 / (g - 1.0));
            let p = self.left.p * (c / cl).powf(2.0 * g / (g - 1.0));
            return GasState { rho, u, p };
        }
        if xi < w.contact {
            return GasState {
                rho: self.rho_star_l,
                u: self.u_star,
                p: self.p_star,
            };
        }
        if xi <= w.right_tail {
            return GasState {
                rho: self.rho_star_r,
                u: self.u_star,
                p: self.p_star,
            };
        }
        if xi < w.right_head {
            let cr = (g * self.right.p / self.right.rho).sqrt();
            let u = (2.0 / (g + 1.0)) * (-cr + (g - 1.0) / 2.0 * self.right.u + xi);
            let c = cr + (g - 1.0) / 2.0 * (u - self.right.u);
            let rho = self.right.rho * (c / cr).powf(2.0 / (g - 1.0));
            let p = self.right.p * (c / cr).powf(2.0 * g / (g - 1.0));
            return GasState { rho, u, p };
        }
        self.right
    }
}
