use clap::{Args, Parser, Subcommand};
use radqed::config::RunConfig;
use radqed::hamiltonians::Gauge;
use radqed::runner::{self, Output, RunEnvelope, SweepSpec};
use radqed::Error;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Multi-gauge cavity-QED eigensolver.
#[derive(Parser)]
#[command(name = "radqed", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// run configuration (TOML, or an echoed run.json)
    config: PathBuf,
    /// output directory [default: output.directory, $RADQED_OUT, ./radqed-out]
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct Solve {
    #[command(flatten)]
    common: Common,
    /// pf | pa | ad | rad | rad-k | rad-k-blwa | pa-k-blwa
    #[arg(long)]
    gauge: Option<String>,
    /// keep eigenvectors in run.json
    #[arg(long)]
    eigvecs: bool,
}

#[derive(Subcommand)]
enum Command {
    /// DVR matter eigenstates and dipoles
    MatterSolve(Common),
    /// spectrum at the configured coupling
    Spectrum(Solve),
    /// spectra over the γ/ω axis
    SweepCoupling(Solve),
    /// bands along k (k_β = k unless sweep.k_beta is set)
    Dispersion(Solve),
    /// bands over the (k, k_β) plane
    Dispersion2d(Solve),
    /// basis ladder against its top rung
    Convergence(Solve),
    /// bands with their Coulomb-gauge photon number
    PhotonNumber(Solve),
    /// repeat a run from its run.json
    Replay {
        run_json: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn out_dir(flag: Option<PathBuf>, cfg: &RunConfig) -> PathBuf {
    if let Some(p) = flag {
        return p;
    }
    if !cfg.output.directory.is_empty() {
        return PathBuf::from(&cfg.output.directory);
    }
    std::env::var_os("RADQED_OUT").map(PathBuf::from).unwrap_or_else(|| PathBuf::from("radqed-out"))
}

fn default_gauge(command: &str, cfg: &RunConfig) -> Gauge {
    let periodic = cfg.model.potential.is_periodic();
    match command {
        "dispersion2d" => Gauge::RadKBlwa,
        "dispersion" | "photon-number" => Gauge::RadK,
        _ if periodic && !matches!(cfg.model.potential, radqed::matter::PotentialModel::Cosine { .. }) => Gauge::RadK,
        _ => Gauge::Rad,
    }
}

fn run(command: &str, cfg: RunConfig, gauge: Option<&str>, eigvecs: bool, out: Option<PathBuf>) -> radqed::Result<()> {
    let mut cfg = cfg;
    if eigvecs {
        cfg.output.eigenvectors = true;
    }
    let dir = out_dir(out, &cfg);
    if command == "matter-solve" {
        let sol = runner::matter_solve(&cfg)?;
        for p in runner::write_matter(&cfg, &sol, &dir)? {
            eprintln!("wrote {}", p.display());
        }
        println!("E0 = {:.10}  ({} states, box {:.4})", sol.energies[0], sol.n_states(), sol.grid.box_length);
        return Ok(());
    }
    let gauge: Gauge = match gauge {
        Some(g) => g.parse()?,
        None => default_gauge(command, &cfg),
    };
    let k_resolved_axis = gauge.is_k_resolved() || (gauge == Gauge::Pa && cfg.model.potential.is_periodic());
    let axis = match command {
        "spectrum" => runner::single_point_axis(&cfg),
        "sweep-coupling" => runner::coupling_axis(&cfg),
        "dispersion" | "photon-number" => runner::momentum_axis(&cfg),
        "dispersion2d" => runner::plane_axis(&cfg),
        "convergence" if k_resolved_axis => runner::momentum_axis(&cfg),
        "convergence" => runner::coupling_axis(&cfg),
        other => return Err(Error::Config(format!("unknown command {other}"))),
    };
    let spec = SweepSpec::from_config(&cfg, gauge, axis);
    let g = Some(gauge.name());
    let written = match command {
        "convergence" => {
            let t = runner::convergence_study(&cfg, &spec, cfg.sweep.tolerance)?;
            println!("{:>8} {:>6} {:>8} {:>14} {:>10}", "n_basis", "n_fock", "dim", "max_rel_dev", "seconds");
            for r in &t.rows {
                println!(
                    "{:>8} {:>6} {:>8} {:>14.3e} {:>10.2}",
                    r.rung[0], r.rung[1], r.dim, r.max_rel_deviation, r.wall_seconds
                );
            }
            match t.converged_rung {
                Some(r) => println!("converged at {:?} (tolerance {:e})", r, t.tolerance),
                None => println!("no rung below the top one meets tolerance {:e}", t.tolerance),
            }
            if !t.monotone {
                eprintln!("warning: ladder deviation is not monotone (truncation pathology)");
            }
            runner::persist(&cfg, command, g, eigvecs, Output::Convergence(&t), &dir)?
        }
        "photon-number" => {
            let r = runner::photon_character(&cfg, &spec)?;
            runner::persist(&cfg, command, g, eigvecs, Output::Dispersion(&r), &dir)?
        }
        "dispersion" | "dispersion2d" => {
            let r = runner::sweep_dispersion(&cfg, &spec)?;
            runner::persist(&cfg, command, g, eigvecs, Output::Dispersion(&r), &dir)?
        }
        _ => {
            let r = runner::sweep_coupling(&cfg, &spec)?;
            if command == "spectrum" {
                println!("{:?}", r.solutions[0].eigenvalues);
            }
            runner::persist(&cfg, command, g, eigvecs, Output::Spectrum(&r), &dir)?
        }
    };
    for p in written {
        eprintln!("wrote {}", p.display());
    }
    Ok(())
}

fn load(path: &Path) -> radqed::Result<RunConfig> {
    RunConfig::load(path)
}

fn dispatch(cli: Cli) -> radqed::Result<()> {
    match cli.command {
        Command::MatterSolve(c) => run("matter-solve", load(&c.config)?, None, false, c.out),
        Command::Spectrum(s) => run("spectrum", load(&s.common.config)?, s.gauge.as_deref(), s.eigvecs, s.common.out),
        Command::SweepCoupling(s) => {
            run("sweep-coupling", load(&s.common.config)?, s.gauge.as_deref(), s.eigvecs, s.common.out)
        }
        Command::Dispersion(s) => run("dispersion", load(&s.common.config)?, s.gauge.as_deref(), s.eigvecs, s.common.out),
        Command::Dispersion2d(s) => {
            run("dispersion2d", load(&s.common.config)?, s.gauge.as_deref(), s.eigvecs, s.common.out)
        }
        Command::Convergence(s) => run("convergence", load(&s.common.config)?, s.gauge.as_deref(), s.eigvecs, s.common.out),
        Command::PhotonNumber(s) => {
            run("photon-number", load(&s.common.config)?, s.gauge.as_deref(), s.eigvecs, s.common.out)
        }
        Command::Replay { run_json, out } => {
            let env = RunEnvelope::load(&run_json)?;
            run(&env.command, env.config, env.gauge.as_deref(), env.eigvecs, out)
        }
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_config() { 2 } else { 3 })
        }
    }
}
