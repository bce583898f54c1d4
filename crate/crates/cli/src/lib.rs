//! Command-line front end for `fracolloc`: tables, figure data, node sets,
//! collocation matrices and solutions as CSV.

pub mod commands;
pub mod config;
pub mod error;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::Parser;

pub use commands::{run, Table};
pub use config::{parse_config_file, parse_n_list, parse_real_list, Command, RunConfig, Settings};
pub use error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(name = "fracolloc", version, about = "Spectral collocation for Riemann–Liouville fractional problems")]
pub struct Args {
    /// table1 | table2 | table3 | fig1 | nodes | matrix | solve
    #[arg(long)]
    pub command: Option<String>,
    /// Degrees: `10`, `5,10,20`, `4..15` or `4:15`
    #[arg(long = "N")]
    pub n: Option<String>,
    #[arg(long = "N-range")]
    pub n_range: Option<String>,
    /// Value list: `0.5`, `0.1,0.2` or `0.1:0.9:0.1`
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<String>,
    #[arg(long = "K", allow_hyphen_values = true)]
    pub k: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// cheb | leg | mu
    #[arg(long)]
    pub family: Option<String>,
    /// e.g. `C1,C2,C3`
    #[arg(long)]
    pub choices: Option<String>,
    /// Output file; stdout when absent
    #[arg(long)]
    pub out: Option<String>,
    #[arg(long = "mesh-points")]
    pub mesh_points: Option<String>,
    /// Reserved, unused
    #[arg(long)]
    pub seed: Option<String>,
    /// nodal | mesh
    #[arg(long)]
    pub norm: Option<String>,
    #[arg(long = "n-ref")]
    pub n_ref: Option<String>,
    /// one | sine
    #[arg(long)]
    pub rhs: Option<String>,
    /// key = value file; flags take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl Args {
    pub fn settings(&self) -> Settings {
        Settings {
            command: self.command.clone(),
            n: self.n.clone(),
            n_range: self.n_range.clone(),
            sigma: self.sigma.clone(),
            k: self.k.clone(),
            mu: self.mu.clone(),
            family: self.family.clone(),
            choices: self.choices.clone(),
            out: self.out.clone(),
            mesh_points: self.mesh_points.clone(),
            seed: self.seed.clone(),
            norm: self.norm.clone(),
            n_ref: self.n_ref.clone(),
            rhs: self.rhs.clone(),
        }
    }

    pub fn run_config(&self) -> Result<RunConfig> {
        let file = match &self.config {
            Some(path) => parse_config_file(&std::fs::read_to_string(path)?)?,
            None => Settings::default(),
        };
        RunConfig::from_settings(&self.settings().or(file))
    }
}

pub fn write_csv<W: Write>(table: &Table, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&table.header)?;
    for row in &table.rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Runs the configured command, writes its CSV, and reports rows that
/// failed after the table is written.
pub fn execute(cfg: &RunConfig) -> Result<()> {
    let table = run(cfg)?;
    match &cfg.out {
        Some(path) => write_csv(&table, File::create(path)?)?,
        None => write_csv(&table, io::stdout().lock())?,
    }
    if table.failures > 0 {
        return Err(CliError::PartialFailure {
            failed: table.failures,
            total: table.rows.len(),
        });
    }
    Ok(())
}
