//! Plot-ready CSV output and the run metadata sidecar.
//!
//! All numbers are written with 17 significant digits so identical runs
//! produce identical bytes.

use std::io::Write;
use std::path::Path;

use bgk_moments::{AdvanceStats, Field};

use crate::config::ScenarioConfig;

/// Per-cell macroscopic solution row, optionally with the standard-frame
/// coefficients of order <= min(M, 3).
#[derive(Debug, Clone)]
pub struct SolutionRecord {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

impl SolutionRecord {
    pub fn from_field(field: &Field, with_coeffs: bool) -> Self {
        let mut header = vec![
            "x".to_string(),
            "rho".to_string(),
            "u1".to_string(),
            "u2".to_string(),
            "u3".to_string(),
            "theta".to_string(),
        ];
        let table = field.table().clone();
        let coeff_limit = field.order().min(3);
        let coeff_count = table.degree_start(coeff_limit + 1);
        if with_coeffs {
            for idx in 0..coeff_count {
                let a = table.multi_index(idx);
                header.push(format!("f_{}{}{}", a[0], a[1], a[2]));
            }
        }
        let mut rows = Vec::with_capacity(field.n());
        for (i, cell) in field.cells.iter().enumerate() {
            let mut row = vec![
                field.grid.cell_center(i),
                cell.coeffs()[0],
                cell.u_frame()[0],
                cell.u_frame()[1],
                cell.u_frame()[2],
                cell.theta_frame(),
            ];
            if with_coeffs {
                row.extend_from_slice(&cell.coeffs()[..coeff_count]);
            }
            rows.push(row);
        }
        SolutionRecord { header, rows }
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        s.push_str(&self.header.join(","));
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| fmt(*v)).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn write_csv(&self, path: &Path) -> std::io::Result<()> {
        let mut f = std::fs::File::create(path)?;
        f.write_all(self.to_csv().as_bytes())
    }
}

/// key=value sidecar with the run configuration and step statistics.
pub fn metadata_text(cfg: &ScenarioConfig, stats: &AdvanceStats, wall_seconds: f64) -> String {
    let mut s = String::new();
    let mut kv = |k: &str, v: String| {
        s.push_str(k);
        s.push('=');
        s.push_str(&v);
        s.push('\n');
    };
    kv("scenario", cfg.scenario.name().to_string());
    kv("M", cfg.order.to_string());
    kv("N", cfg.cells.to_string());
    kv("kn", fmt(cfg.kn));
    kv("cfl", fmt(cfg.cfl));
    kv("t_end", fmt(cfg.t_end));
    kv("reconstruction", cfg.reconstruction.to_string());
    kv(
        "integrator",
        match cfg.integrator {
            bgk_moments::Integrator::Rkc => "rkc".to_string(),
            bgk_moments::Integrator::Euler => "euler".to_string(),
        },
    );
    kv("epsilon", fmt(cfg.epsilon));
    kv("steps", stats.steps.to_string());
    kv("sum_dt", fmt(stats.sum_dt));
    kv("avg_dt", fmt(stats.avg_dt()));
    kv("avg_stages", fmt(stats.avg_stages()));
    kv("avg_dt_over_s", fmt(stats.avg_dt_over_s()));
    kv("wall_time_seconds", fmt(wall_seconds));
    s
}

/// Sidecar path: `<out>.meta`.
pub fn meta_path(out: &Path) -> std::path::PathBuf {
    let mut os = out.as_os_str().to_owned();
    os.push(".meta");
    std::path::PathBuf::from(os)
}
