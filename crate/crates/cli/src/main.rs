use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bgk_sim::config::{parse_grid_list, ConfigBuilder, Scenario};
use bgk_sim::output::{meta_path, metadata_text};
use bgk_sim::study::{convergence_study, run_scenario, scaling_benchmark};

#[derive(Parser)]
#[command(
    name = "bgk-sim",
    about = "1D Boltzmann-BGK moment solver: scenario runs, convergence and cost-scaling studies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write the solution CSV plus a metadata sidecar.
    Run(CommonOpts),
    /// L1 convergence against a block-averaged fine-grid reference.
    Convergence(CommonOpts),
    /// Wall-time and step-size scaling over a list of grids.
    Scaling(CommonOpts),
}

#[derive(Args)]
struct CommonOpts {
    /// Flat key=value config file; command-line flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// periodic | shock_tube | custom
    #[arg(long)]
    scenario: Option<String>,
    /// Moment order M.
    #[arg(long = "M")]
    order: Option<usize>,
    /// Cell count N.
    #[arg(long = "N")]
    cells: Option<usize>,
    /// Global Knudsen number.
    #[arg(long)]
    kn: Option<f64>,
    /// Alternative Knudsen convention, converted internally.
    #[arg(long = "kn-prime", conflicts_with = "kn")]
    kn_prime: Option<f64>,
    #[arg(long)]
    cfl: Option<f64>,
    #[arg(long = "t-end")]
    t_end: Option<f64>,
    /// Disable the linear reconstruction (first-order scheme).
    #[arg(long = "no-reconstruction")]
    no_reconstruction: bool,
    /// rkc | euler
    #[arg(long)]
    integrator: Option<String>,
    /// RKC damping factor.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Output CSV path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the standard-frame coefficients |alpha| <= min(M, 3).
    #[arg(long)]
    coeffs: bool,
    /// Reference grid for convergence runs.
    #[arg(long = "ref-N")]
    ref_n: Option<usize>,
    /// Comma-separated grid list for studies.
    #[arg(long)]
    grids: Option<String>,
}

impl CommonOpts {
    fn builder(&self) -> Result<ConfigBuilder, Box<dyn std::error::Error>> {
        let base = match &self.config {
            Some(path) => ConfigBuilder::from_file(path)?,
            None => ConfigBuilder::default(),
        };
        let mut cli = ConfigBuilder {
            order: self.order,
            cells: self.cells,
            kn: self.kn,
            kn_prime: self.kn_prime,
            cfl: self.cfl,
            t_end: self.t_end,
            epsilon: self.epsilon,
            out: self.out.clone(),
            ref_n: self.ref_n,
            ..Default::default()
        };
        if let Some(s) = &self.scenario {
            cli.scenario = Some(Scenario::parse(s)?);
        }
        if self.no_reconstruction {
            cli.reconstruction = Some(false);
        }
        if self.coeffs {
            cli.write_coeffs = Some(true);
        }
        if let Some(i) = &self.integrator {
            cli.integrator = Some(match i.as_str() {
                "rkc" => bgk_moments::Integrator::Rkc,
                "euler" => bgk_moments::Integrator::Euler,
                other => return Err(format!("unknown integrator '{other}'").into()),
            });
        }
        if let Some(g) = &self.grids {
            cli.grids = Some(parse_grid_list("grids", g)?);
        }
        Ok(base.overlay(cli))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<(), Box<dyn std::error::Error>> {
    match cli.command {
        Command::Run(opts) => {
            let cfg = opts.builder()?.build()?;
            let run = run_scenario(&cfg)?;
            println!(
                "{} N={} M={} Kn={:.6e}: {} steps, avg dt {:.4e}, avg s {:.2}, {:.3}s",
                cfg.scenario.name(),
                cfg.cells,
                cfg.order,
                cfg.kn,
                run.stats.steps,
                run.stats.avg_dt(),
                run.stats.avg_stages(),
                run.wall_seconds
            );
            if let Some(out) = &cfg.out {
                run.record.write_csv(out)?;
                std::fs::write(meta_path(out), metadata_text(&cfg, &run.stats, run.wall_seconds))?;
                println!("wrote {} and {}", out.display(), meta_path(out).display());
            }
            Ok(())
        }
        Command::Convergence(opts) => {
            let cfg = opts.builder()?.build()?;
            let table = convergence_study(&cfg, &cfg.grids, cfg.ref_n)?;
            println!("N,l1_rho,order_rho,l1_theta,order_theta");
            let mut csv = String::from("N,l1_rho,order_rho,l1_theta,order_theta\n");
            for r in &table.rows {
                let line = format!(
                    "{},{:.16e},{},{:.16e},{}",
                    r.n,
                    r.l1_rho,
                    r.order_rho.map_or(String::new(), |o| format!("{o:.4}")),
                    r.l1_theta,
                    r.order_theta.map_or(String::new(), |o| format!("{o:.4}")),
                );
                println!("{line}");
                csv.push_str(&line);
                csv.push('\n');
            }
            println!(
                "fitted order: rho {:.4}, theta {:.4} (reference N = {})",
                table.fitted_order_rho, table.fitted_order_theta, cfg.ref_n
            );
            if let Some(out) = &cfg.out {
                std::fs::write(out, csv)?;
            }
            Ok(())
        }
        Command::Scaling(opts) => {
            let cfg = opts.builder()?.build()?;
            let table = scaling_benchmark(&cfg, &cfg.grids)?;
            println!("N,wall_seconds,steps,avg_dt,avg_stages,avg_dt_over_s");
            let mut csv = String::from("N,wall_seconds,steps,avg_dt,avg_stages,avg_dt_over_s\n");
            for r in &table.rows {
                let line = format!(
                    "{},{:.16e},{},{:.16e},{:.16e},{:.16e}",
                    r.n, r.wall_seconds, r.steps, r.avg_dt, r.avg_stages, r.avg_dt_over_s
                );
                println!("{line}");
                csv.push_str(&line);
                csv.push('\n');
            }
            println!(
                "ln-ln slopes vs N: wall time {:.3}, dt {:.3}, dt/s {:.3}",
                table.slope_wall_time, table.slope_dt, table.slope_dt_over_s
            );
            if let Some(out) = &cfg.out {
                std::fs::write(out, csv)?;
            }
            Ok(())
        }
    }
}
