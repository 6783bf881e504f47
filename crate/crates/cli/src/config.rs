//! Scenario configuration: defaults per scenario, a flat key=value config
//! file, and command-line overrides layered on top.

use std::collections::BTreeMap;
use std::path::PathBuf;

use bgk_moments::{BoundaryCondition, Integrator};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("unknown scenario '{0}' (expected periodic, shock_tube or custom)")]
    UnknownScenario(String),
    #[error("unknown key '{0}' in config file")]
    UnknownKey(String),
    #[error("invalid value for '{key}': {value}")]
    InvalidValue { key: String, value: String },
    #[error("exactly one of kn and kn_prime may be supplied")]
    BothKnudsen,
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error("cannot read config file {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// Built-in problem setups.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    /// Smooth periodic wave on [-1, 1].
    Periodic,
    /// Riemann shock tube on [0, 1] with copy boundaries.
    ShockTube,
    /// Two-state Riemann problem with user-supplied states.
    Custom,
}

impl Scenario {
    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        match s {
            "periodic" => Ok(Scenario::Periodic),
            "shock_tube" | "shock-tube" => Ok(Scenario::ShockTube),
            "custom" => Ok(Scenario::Custom),
            other => Err(ConfigError::UnknownScenario(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Scenario::Periodic => "periodic",
            Scenario::ShockTube => "shock_tube",
            Scenario::Custom => "custom",
        }
    }
}

/// Two constant states split at x_split; drives the shock tube and custom
/// scenarios.
#[derive(Debug, Clone, Copy)]
pub struct RiemannSetup {
    pub x_min: f64,
    pub x_max: f64,
    pub x_split: f64,
    pub rho_l: f64,
    pub u1_l: f64,
    pub theta_l: f64,
    pub rho_r: f64,
    pub u1_r: f64,
    pub theta_r: f64,
}

pub fn shock_tube_setup() -> RiemannSetup {
    RiemannSetup {
        x_min: 0.0,
        x_max: 1.0,
        x_split: 0.5,
        rho_l: 0.445,
        u1_l: 0.698 * std::f64::consts::SQRT_2,
        theta_l: 13.21,
        rho_r: 0.5,
        u1_r: 0.0,
        theta_r: 1.9,
    }
}

/// Fully resolved problem definition.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    /// Moment order M.
    pub order: usize,
    /// Cell count N.
    pub cells: usize,
    /// Global Knudsen number (after any kn_prime conversion).
    pub kn: f64,
    pub cfl: f64,
    pub t_end: f64,
    pub reconstruction: bool,
    pub integrator: Integrator,
    pub epsilon: f64,
    pub out: Option<PathBuf>,
    /// Write the standard-frame coefficients |alpha| <= min(M, 3) per cell.
    pub write_coeffs: bool,
    /// Reference grid for convergence studies.
    pub ref_n: usize,
    /// Grid list for convergence and scaling studies.
    pub grids: Vec<usize>,
    pub bc: BoundaryCondition,
    pub riemann: RiemannSetup,
}

impl ScenarioConfig {
    pub fn domain(&self) -> (f64, f64) {
        match self.scenario {
            Scenario::Periodic => (-1.0, 1.0),
            _ => (self.riemann.x_min, self.riemann.x_max),
        }
    }
}

/// Conversion from the alternative Knudsen convention:
/// Kn' = (8/5) sqrt(2/pi) Kn, so Kn = Kn' (5/8) sqrt(pi/2).
pub fn knudsen_convert(kn_prime: f64) -> f64 {
    kn_prime * 0.625 * (std::f64::consts::PI / 2.0).sqrt()
}

pub fn knudsen_to_prime(kn: f64) -> f64 {
    kn * 1.6 * (2.0 / std::f64::consts::PI).sqrt()
}

/// Unresolved option set; file keys and CLI flags both land here, CLI last.
#[derive(Debug, Clone, Default)]
pub struct ConfigBuilder {
    pub scenario: Option<Scenario>,
    pub order: Option<usize>,
    pub cells: Option<usize>,
    pub kn: Option<f64>,
    pub kn_prime: Option<f64>,
    pub cfl: Option<f64>,
    pub t_end: Option<f64>,
    pub reconstruction: Option<bool>,
    pub integrator: Option<Integrator>,
    pub epsilon: Option<f64>,
    pub out: Option<PathBuf>,
    pub write_coeffs: Option<bool>,
    pub ref_n: Option<usize>,
    pub grids: Option<Vec<usize>>,
    pub bc: Option<BoundaryCondition>,
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
    pub x_split: Option<f64>,
    pub rho_l: Option<f64>,
    pub u1_l: Option<f64>,
    pub theta_l: Option<f64>,
    pub rho_r: Option<f64>,
    pub u1_r: Option<f64>,
    pub theta_r: Option<f64>,
}

fn parse_bool(key: &str, v: &str) -> Result<bool, ConfigError> {
    match v {
        "true" | "on" | "1" | "yes" => Ok(true),
        "false" | "off" | "0" | "no" => Ok(false),
        _ => Err(ConfigError::InvalidValue {
            key: key.to_string(),
            value: v.to_string(),
        }),
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, ConfigError> {
    v.parse().map_err(|_| ConfigError::InvalidValue {
        key: key.to_string(),
        value: v.to_string(),
    })
}

pub fn parse_grid_list(key: &str, v: &str) -> Result<Vec<usize>, ConfigError> {
    v.split(',')
        .map(|tok| parse_num(key, tok.trim()))
        .collect()
}

impl ConfigBuilder {
    /// Read a flat key=value file; '#' starts a comment.
    pub fn from_file(path: &PathBuf) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.clone(),
            source,
        })?;
        let mut map = BTreeMap::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::InvalidValue {
                key: line.to_string(),
                value: "missing '='".to_string(),
            })?;
            map.insert(key.trim().to_string(), value.trim().to_string());
        }
        let mut b = ConfigBuilder::default();
        for (key, v) in &map {
            match key.as_str() {
                "scenario" => b.scenario = Some(Scenario::parse(v)?),
                "M" | "m" => b.order = Some(parse_num(key, v)?),
                "N" | "n" => b.cells = Some(parse_num(key, v)?),
                "kn" => b.kn = Some(parse_num(key, v)?),
                "kn_prime" => b.kn_prime = Some(parse_num(key, v)?),
                "cfl" => b.cfl = Some(parse_num(key, v)?),
                "t_end" => b.t_end = Some(parse_num(key, v)?),
                "reconstruction" => b.reconstruction = Some(parse_bool(key, v)?),
                "integrator" => {
                    b.integrator = Some(match v.as_str() {
                        "rkc" => Integrator::Rkc,
                        "euler" => Integrator::Euler,
                        _ => {
                            return Err(ConfigError::InvalidValue {
                                key: key.clone(),
                                value: v.clone(),
                            })
                        }
                    })
                }
                "epsilon" => b.epsilon = Some(parse_num(key, v)?),
                "out" => b.out = Some(PathBuf::from(v)),
                "coeffs" => b.write_coeffs = Some(parse_bool(key, v)?),
                "ref_n" => b.ref_n = Some(parse_num(key, v)?),
                "grids" => b.grids = Some(parse_grid_list(key, v)?),
                "bc" => {
                    b.bc = Some(match v.as_str() {
                        "periodic" => BoundaryCondition::Periodic,
                        "copy" => BoundaryCondition::Copy,
                        _ => {
                            return Err(ConfigError::InvalidValue {
                                key: key.clone(),
                                value: v.clone(),
                            })
                        }
                    })
                }
                "x_min" => b.x_min = Some(parse_num(key, v)?),
                "x_max" => b.x_max = Some(parse_num(key, v)?),
                "x_split" => b.x_split = Some(parse_num(key, v)?),
                "rho_l" => b.rho_l = Some(parse_num(key, v)?),
                "u1_l" => b.u1_l = Some(parse_num(key, v)?),
                "theta_l" => b.theta_l = Some(parse_num(key, v)?),
                "rho_r" => b.rho_r = Some(parse_num(key, v)?),
                "u1_r" => b.u1_r = Some(parse_num(key, v)?),
                "theta_r" => b.theta_r = Some(parse_num(key, v)?),
                other => return Err(ConfigError::UnknownKey(other.to_string())),
            }
        }
        Ok(b)
    }

    /// Overlay `other` on top of self (later layer wins where set).
    pub fn overlay(mut self, other: ConfigBuilder) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f; } )* };
        }
        take!(
            scenario, order, cells, kn, kn_prime, cfl, t_end, reconstruction, integrator,
            epsilon, out, write_coeffs, ref_n, grids, bc, x_min, x_max, x_split, rho_l, u1_l,
            theta_l, rho_r, u1_r, theta_r
        );
        self
    }

    /// Resolve against the scenario defaults and validate.
    pub fn build(self) -> Result<ScenarioConfig, ConfigError> {
        let scenario = self.scenario.unwrap_or(Scenario::Periodic);
        if self.kn.is_some() && self.kn_prime.is_some() {
            return Err(ConfigError::BothKnudsen);
        }
        let kn = match (self.kn, self.kn_prime) {
            (Some(_), Some(_)) => unreachable!("checked above"),
            (Some(kn), None) => kn,
            (None, Some(kp)) => knudsen_convert(kp),
            (None, None) => match scenario {
                Scenario::Periodic => 0.5,
                Scenario::ShockTube | Scenario::Custom => knudsen_convert(0.001),
            },
        };

        let mut riemann = shock_tube_setup();
        macro_rules! set {
            ($($f:ident),*) => { $( if let Some(v) = self.$f { riemann.$f = v; } )* };
        }
        set!(x_min, x_max, x_split, rho_l, u1_l, theta_l, rho_r, u1_r, theta_r);

        let cfg = ScenarioConfig {
            scenario,
            order: self.order.unwrap_or(3),
            cells: self.cells.unwrap_or(match scenario {
                Scenario::Periodic => 200,
                _ => 400,
            }),
            kn,
            cfl: self.cfl.unwrap_or(0.95),
            t_end: self.t_end.unwrap_or(match scenario {
                Scenario::Periodic => 0.4,
                _ => 0.1314 / std::f64::consts::SQRT_2,
            }),
            reconstruction: self.reconstruction.unwrap_or(true),
            integrator: self.integrator.unwrap_or(Integrator::Rkc),
            epsilon: self.epsilon.unwrap_or(10.0),
            out: self.out,
            write_coeffs: self.write_coeffs.unwrap_or(false),
            ref_n: self.ref_n.unwrap_or(320),
            grids: self.grids.unwrap_or_else(|| match scenario {
                Scenario::Periodic => vec![20, 40, 80],
                _ => vec![100, 200, 400],
            }),
            bc: self.bc.unwrap_or(match scenario {
                Scenario::Periodic => BoundaryCondition::Periodic,
                _ => BoundaryCondition::Copy,
            }),
            riemann,
        };
        if !(cfg.kn > 0.0) {
            return Err(ConfigError::NonPositive("kn"));
        }
        if !(cfg.cfl > 0.0) {
            return Err(ConfigError::NonPositive("cfl"));
        }
        if !(cfg.t_end >= 0.0) {
            return Err(ConfigError::NonPositive("t_end"));
        }
        if !(cfg.epsilon > 0.0) {
            return Err(ConfigError::NonPositive("epsilon"));
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn knudsen_conversion_examples() {
        // Kn' = 0.001 -> Kn = 0.001 * (5/8) sqrt(pi/2)
        let kn = knudsen_convert(0.001);
        assert!((kn - 7.8332e-4).abs() < 1e-7, "{kn}");
        // unit case: Kn' = (8/5) sqrt(2/pi) -> Kn = 1
        let kp = 1.6 * (2.0 / std::f64::consts::PI).sqrt();
        assert!((knudsen_convert(kp) - 1.0).abs() < 1e-15);
        // round trip
        for v in [0.3, 1.7, 0.001] {
            assert!((knudsen_convert(knudsen_to_prime(v)) - v).abs() < 1e-16 + 1e-15 * v);
        }
    }

    #[test]
    fn scenario_defaults() {
        let cfg = ConfigBuilder::default().build().unwrap();
        assert_eq!(cfg.scenario, Scenario::Periodic);
        assert_eq!(cfg.cells, 200);
        assert!((cfg.kn - 0.5).abs() < 1e-15);
        assert!((cfg.cfl - 0.95).abs() < 1e-15);
        assert_eq!(cfg.bc, BoundaryCondition::Periodic);

        let cfg = ConfigBuilder {
            scenario: Some(Scenario::ShockTube),
            ..Default::default()
        }
        .build()
        .unwrap();
        assert_eq!(cfg.cells, 400);
        assert_eq!(cfg.bc, BoundaryCondition::Copy);
        assert!((cfg.t_end - 0.1314 / 2.0f64.sqrt()).abs() < 1e-15);
        assert!((cfg.kn - knudsen_convert(0.001)).abs() < 1e-18);
    }

    #[test]
    fn both_knudsen_forms_rejected() {
        let b = ConfigBuilder {
            kn: Some(0.5),
            kn_prime: Some(0.001),
            ..Default::default()
        };
        assert!(matches!(b.build(), Err(ConfigError::BothKnudsen)));
    }

    #[test]
    fn file_parsing_and_overlay() {
        let dir = std::env::temp_dir();
        let path = dir.join("bgk_sim_cfg_test.txt");
        std::fs::write(
            &path,
            "# comment\nscenario = shock_tube\nN = 100\nkn_prime = 0.002\nreconstruction = off\ngrids = 10, 20,40\n",
        )
        .unwrap();
        let file = ConfigBuilder::from_file(&path).unwrap();
        let cli = ConfigBuilder {
            cells: Some(50),
            ..Default::default()
        };
        let cfg = file.overlay(cli).build().unwrap();
        std::fs::remove_file(&path).ok();
        assert_eq!(cfg.scenario, Scenario::ShockTube);
        assert_eq!(cfg.cells, 50); // CLI wins
        assert!(!cfg.reconstruction);
        assert_eq!(cfg.grids, vec![10, 20, 40]);
        assert!((cfg.kn - knudsen_convert(0.002)).abs() < 1e-18);
    }

    #[test]
    fn unknown_keys_are_errors() {
        let dir = std::env::temp_dir();
        let path = dir.join("bgk_sim_cfg_bad.txt");
        std::fs::write(&path, "frobnicate = 1\n").unwrap();
        let r = ConfigBuilder::from_file(&path);
        std::fs::remove_file(&path).ok();
        assert!(matches!(r, Err(ConfigError::UnknownKey(_))));
    }
}
