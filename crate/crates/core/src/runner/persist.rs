//! CSV and JSON outputs. CSV bodies depend only on the numbers, so identical
//! configs reproduce them byte for byte; wall times live in run.json only.

use super::{ConvergenceTable, SweepResult};
use crate::config::RunConfig;
use crate::matter::MatterSolution;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

pub const SCHEMA_VERSION: u32 = 1;

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io { path: path.display().to_string(), source }
}

fn csv_err(path: &Path) -> impl FnOnce(csv::Error) -> Error + '_ {
    move |e| Error::Io { path: path.display().to_string(), source: std::io::Error::other(e.to_string()) }
}

fn writer(path: &Path) -> Result<csv::Writer<std::fs::File>> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(io(dir))?;
    }
    csv::Writer::from_path(path).map_err(csv_err(path))
}

#[derive(Serialize)]
struct SpectrumRow {
    gamma_over_omega: f64,
    eig_index: usize,
    energy: f64,
}

/// `gamma_over_omega,eig_index,energy`
pub fn write_spectrum_csv(result: &SweepResult, path: &Path) -> Result<()> {
    let mut w = writer(path)?;
    for (p, s) in result.points.iter().zip(&result.solutions) {
        for (i, &e) in s.eigenvalues.iter().enumerate() {
            w.serialize(SpectrumRow { gamma_over_omega: p.gamma_over_omega, eig_index: i, energy: e })
                .map_err(csv_err(path))?;
        }
    }
    w.flush().map_err(io(path))
}

#[derive(Serialize)]
struct DispersionRow {
    k: f64,
    k_beta: f64,
    band: usize,
    energy: f64,
    photon_number: Option<f64>,
}

/// `k,k_beta,band,energy,photon_number` (photon_number empty when not computed)
pub fn write_dispersion_csv(result: &SweepResult, path: &Path) -> Result<()> {
    let mut w = writer(path)?;
    for (p, s) in result.points.iter().zip(&result.solutions) {
        for (i, &e) in s.eigenvalues.iter().enumerate() {
            let n = s.photon_number.as_ref().and_then(|v| v.get(i).copied());
            w.serialize(DispersionRow { k: p.k, k_beta: p.k_beta, band: i, energy: e, photon_number: n })
                .map_err(csv_err(path))?;
        }
    }
    w.flush().map_err(io(path))
}

#[derive(Serialize)]
struct ConvergenceCsvRow {
    n_basis: usize,
    n_fock: usize,
    dim: usize,
    max_rel_deviation: f64,
    converged: bool,
}

/// `n_basis,n_fock,dim,max_rel_deviation,converged`
pub fn write_convergence_csv(table: &ConvergenceTable, path: &Path) -> Result<()> {
    let mut w = writer(path)?;
    for r in &table.rows {
        w.serialize(ConvergenceCsvRow {
            n_basis: r.rung[0],
            n_fock: r.rung[1],
            dim: r.dim,
            max_rel_deviation: r.max_rel_deviation,
            converged: r.converged,
        })
        .map_err(csv_err(path))?;
    }
    w.flush().map_err(io(path))
}

#[derive(Serialize)]
struct MatterRow {
    index: usize,
    energy: f64,
}

#[derive(Serialize)]
struct MatterJson<'a> {
    schema_version: u32,
    config: &'a RunConfig,
    box_length: f64,
    n_points: usize,
    energies: &'a [f64],
    dipoles: &'a [Vec<f64>],
    #[serde(skip_serializing_if = "Option::is_none")]
    wavefunctions: Option<&'a [Vec<f64>]>,
}

/// `matter.csv` (index, energy) and `matter.json` (wavefunctions optional).
pub fn write_matter(cfg: &RunConfig, sol: &MatterSolution, dir: &Path) -> Result<Vec<PathBuf>> {
    let csv_path = dir.join("matter.csv");
    let mut w = writer(&csv_path)?;
    for (index, &energy) in sol.energies.iter().enumerate() {
        w.serialize(MatterRow { index, energy }).map_err(csv_err(&csv_path))?;
    }
    w.flush().map_err(io(&csv_path))?;
    let json_path = dir.join("matter.json");
    let body = MatterJson {
        schema_version: SCHEMA_VERSION,
        config: cfg,
        box_length: sol.grid.box_length,
        n_points: sol.grid.n_points,
        energies: &sol.energies,
        dipoles: &sol.dipoles,
        wavefunctions: cfg.output.wavefunctions.then_some(&sol.wavefunctions[..]),
    };
    write_json(&json_path, &body)?;
    Ok(vec![csv_path, json_path])
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(io(dir))?;
    }
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: std::io::Error::other(e.to_string()),
    })?;
    std::fs::write(path, text + "\n").map_err(io(path))
}

/// The run.json envelope. `command`, `gauge`, `eigvecs` and `config` together
/// are enough to repeat the run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunEnvelope {
    pub schema_version: u32,
    pub command: String,
    pub gauge: Option<String>,
    pub eigvecs: bool,
    pub config: RunConfig,
    pub axis: serde_json::Value,
    pub eigenvalues: Vec<Vec<f64>>,
    pub observables: serde_json::Value,
    pub convergence: serde_json::Value,
    pub timings: serde_json::Value,
}

impl RunEnvelope {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(io(path))?;
        let env: RunEnvelope = serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        env.config.validate()?;
        Ok(env)
    }
}

fn observables_json(r: &SweepResult) -> serde_json::Value {
    serde_json::json!({
        "photon_number": r.solutions.iter().map(|s| s.photon_number.clone()).collect::<Vec<_>>(),
        "fock_excitation": r.solutions.iter().map(|s| s.fock_excitation.clone()).collect::<Vec<_>>(),
        "top_population": r.solutions.iter().map(|s| s.top_population.clone()).collect::<Vec<_>>(),
        "box_length": r.solutions.iter().map(|s| s.box_length).collect::<Vec<_>>(),
        "eigenvectors": r.solutions.iter().map(|s| s.eigenvectors.clone()).collect::<Vec<_>>(),
    })
}

/// What a command produced.
pub enum Output<'a> {
    Spectrum(&'a SweepResult),
    Dispersion(&'a SweepResult),
    Convergence(&'a ConvergenceTable),
}

/// Writes the CSV for the result plus `run.json`; returns the written paths.
pub fn persist(
    cfg: &RunConfig,
    command: &str,
    gauge: Option<&str>,
    eigvecs: bool,
    out: Output<'_>,
    dir: &Path,
) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    let sweep = match &out {
        Output::Spectrum(r) | Output::Dispersion(r) => *r,
        Output::Convergence(t) => &t.reference,
    };
    if cfg.output.csv {
        let p = match &out {
            Output::Spectrum(r) => {
                let p = dir.join("spectrum.csv");
                write_spectrum_csv(r, &p)?;
                p
            }
            Output::Dispersion(r) => {
                let p = dir.join("dispersion.csv");
                write_dispersion_csv(r, &p)?;
                p
            }
            Output::Convergence(t) => {
                let p = dir.join("convergence.csv");
                write_convergence_csv(t, &p)?;
                p
            }
        };
        written.push(p);
    }
    let convergence = match &out {
        Output::Convergence(t) => serde_json::json!({
            "tolerance": t.tolerance,
            "rows": t.rows,
            "converged_rung": t.converged_rung,
            "monotone": t.monotone,
        }),
        _ => serde_json::json!({
            "rung": sweep.rung,
            "ladder": sweep.spec.ladder,
            "residual": sweep.solutions.iter().map(|s| s.residual).collect::<Vec<_>>(),
            "ladder_delta": sweep.solutions.iter().map(|s| s.ladder_delta).collect::<Vec<_>>(),
            "solver": sweep.solutions.iter().map(|s| s.solver.clone()).collect::<Vec<_>>(),
            "dim": sweep.solutions.iter().map(|s| s.dim).collect::<Vec<_>>(),
        }),
    };
    let env = RunEnvelope {
        schema_version: SCHEMA_VERSION,
        command: command.to_string(),
        gauge: gauge.map(str::to_string),
        eigvecs,
        config: cfg.clone(),
        axis: serde_json::json!({
            "spec": sweep.spec.axis,
            "points": sweep.points,
            "cross_section": sweep.cross_section(),
        }),
        eigenvalues: sweep.solutions.iter().map(|s| s.eigenvalues.clone()).collect(),
        observables: observables_json(sweep),
        convergence,
        timings: serde_json::json!({
            "total_seconds": sweep.seconds,
            "per_point_seconds": sweep.solutions.iter().map(|s| s.seconds).collect::<Vec<_>>(),
            "per_rung_seconds": match &out {
                Output::Convergence(t) => t.rows.iter().map(|r| r.wall_seconds).collect::<Vec<_>>(),
                _ => Vec::new(),
            },
        }),
    };
    if cfg.output.json {
        let p = dir.join("run.json");
        write_json(&p, &env)?;
        written.push(p);
    }
    Ok(written)
}
