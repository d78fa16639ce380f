//! Parameter sweeps, self-convergence ladders and result persistence.

mod boxsel;
mod persist;

pub use boxsel::{balance_box, scale_box, tail_weights};
pub use persist::{
    persist, write_convergence_csv, write_dispersion_csv, write_matter, write_spectrum_csv, Output, RunEnvelope,
    SCHEMA_VERSION,
};

use crate::config::RunConfig;
use crate::hamiltonians::{
    build_ad_cosine, build_pa_k_blwa_exact, build_pa_k_lwa, build_pa_lwa, build_pf, build_rad_k, build_rad_k_blwa,
    build_rad_single, pf_operator, rad_single_operator, Gauge, GaugeHamiltonian, KResolvedContext,
};
use crate::matter::{solve_matter_auto, MatterSolution, RealGrid, ELECTRON_CHARGE};
use crate::observables::{coulomb_photon_number, fock_excitation};
use crate::operators::{eig_hermitian, lowest_eigenpairs, LanczosOptions, LinearOperator};
use crate::transforms::CavityMode;
use crate::{Error, Result, C64, HBAR};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// What a sweep varies.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Axis {
    /// γ/ω_c (or γ₀/ω₀) at fixed k
    Coupling { gamma_over_omega: Vec<f64> },
    /// k at fixed coupling; k_β = k unless fixed
    Momentum { k: Vec<f64>, k_beta: Option<f64> },
    /// the (k, k_β) plane, k major
    Plane { k: Vec<f64>, k_beta: Vec<f64> },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxisPoint {
    pub gamma_over_omega: f64,
    pub k: f64,
    pub k_beta: f64,
}

impl Axis {
    pub fn points(&self, cfg: &RunConfig) -> Vec<AxisPoint> {
        let g0 = cfg.cavity.gamma_over_omega;
        let k0 = cfg.sweep.k_point;
        let kb0 = cfg.sweep.k_beta.unwrap_or(k0);
        match self {
            Axis::Coupling { gamma_over_omega } => gamma_over_omega
                .iter()
                .map(|&g| AxisPoint { gamma_over_omega: g, k: k0, k_beta: kb0 })
                .collect(),
            Axis::Momentum { k, k_beta } => k
                .iter()
                .map(|&k| AxisPoint { gamma_over_omega: g0, k, k_beta: k_beta.unwrap_or(k) })
                .collect(),
            Axis::Plane { k, k_beta } => k
                .iter()
                .flat_map(|&k| k_beta.iter().map(move |&kb| AxisPoint { gamma_over_omega: g0, k, k_beta: kb }))
                .collect(),
        }
    }

    fn is_sorted(&self) -> bool {
        let inc = |v: &[f64]| v.iter().all(|x| x.is_finite()) && v.windows(2).all(|w| w[1] > w[0]);
        match self {
            Axis::Coupling { gamma_over_omega } => inc(gamma_over_omega),
            Axis::Momentum { k, .. } => inc(k),
            Axis::Plane { k, k_beta } => inc(k) && inc(k_beta),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObservableSet {
    /// Coulomb-gauge ⟨a†a⟩ (RAD family via the unitary chain, p·A directly)
    pub photon_number: bool,
    /// native ladder excitation
    pub fock_excitation: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub gauge: Gauge,
    pub axis: Axis,
    /// basis rungs (n_matter | n_k | n_bands, n_fock); the first is the working
    /// basis, the last the reference for ladder deltas
    pub ladder: Vec<[usize; 2]>,
    pub n_eigs: usize,
    pub observables: ObservableSet,
    pub keep_vectors: bool,
    pub parallel: bool,
}

impl SweepSpec {
    pub fn validate(&self, cfg: &RunConfig) -> Result<()> {
        if self.ladder.is_empty() {
            return Err(Error::Config("sweep needs at least one basis rung".into()));
        }
        if self.ladder.windows(2).any(|w| !(w[1][0] > w[0][0] && w[1][1] > w[0][1])) {
            return Err(Error::Config(format!("ladder must increase strictly in both entries: {:?}", self.ladder)));
        }
        if !self.axis.is_sorted() {
            return Err(Error::Config("axis values must be finite and strictly increasing".into()));
        }
        let periodic = cfg.model.potential.is_periodic();
        if self.gauge.is_k_resolved() && !periodic {
            return Err(Error::Unsupported(format!(
                "gauge {} needs a periodic model, got {}",
                self.gauge,
                cfg.model.potential.name()
            )));
        }
        if self.gauge == Gauge::Ad && !matches!(cfg.model.potential, crate::matter::PotentialModel::Cosine { .. }) {
            return Err(Error::Unsupported(format!(
                "the AD gauge needs the cosine model, got {}",
                cfg.model.potential.name()
            )));
        }
        if matches!(self.gauge, Gauge::Rad | Gauge::Ad) && periodic && cfg.basis.k_box == 0.0 {
            return Err(Error::Config(
                "basis.k_box must be set for a periodic model on the K grid (tail balance needs confinement)".into(),
            ));
        }
        if !matches!(self.axis, Axis::Coupling { .. }) && !periodic {
            return Err(Error::Unsupported("momentum axes need a periodic model".into()));
        }
        if self.gauge == Gauge::Pf && self.observables.photon_number {
            return Err(Error::Unsupported("Coulomb photon number is not defined for PF states".into()));
        }
        Ok(())
    }

    /// Spec from the config: working basis plus ladder, γ log grid or k grid.
    pub fn from_config(cfg: &RunConfig, gauge: Gauge, axis: Axis) -> Self {
        let periodic = gauge.is_k_resolved() || (gauge == Gauge::Pa && cfg.model.potential.is_periodic());
        Self {
            gauge,
            axis,
            ladder: cfg.rungs(periodic, gauge == Gauge::Pf),
            n_eigs: cfg.sweep.n_eigs,
            observables: ObservableSet::default(),
            keep_vectors: cfg.output.eigenvectors,
            parallel: cfg.sweep.parallel,
        }
    }
}

pub fn coupling_axis(cfg: &RunConfig) -> Axis {
    Axis::Coupling { gamma_over_omega: cfg.coupling_axis() }
}

pub fn single_point_axis(cfg: &RunConfig) -> Axis {
    Axis::Coupling { gamma_over_omega: vec![cfg.cavity.gamma_over_omega] }
}

pub fn momentum_axis(cfg: &RunConfig) -> Axis {
    Axis::Momentum { k: cfg.k_grid(cfg.sweep.n_k_points, cfg.sweep.k_max), k_beta: cfg.sweep.k_beta }
}

pub fn plane_axis(cfg: &RunConfig) -> Axis {
    Axis::Plane {
        k: cfg.k_grid(cfg.sweep.n_k_points, cfg.sweep.k_max),
        k_beta: cfg.k_grid(cfg.sweep.n_k_beta_points, cfg.sweep.k_beta_max),
    }
}

/// Solution at one axis point and one basis rung.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSolution {
    pub eigenvalues: Vec<f64>,
    pub dim: usize,
    pub solver: String,
    /// worst ‖Hv − λv‖/(1+|λ|) when vectors were computed
    pub residual: Option<f64>,
    pub box_length: Option<f64>,
    pub photon_number: Option<Vec<f64>>,
    pub fock_excitation: Option<Vec<f64>>,
    /// population in the top two Fock levels, per state
    pub top_population: Option<Vec<f64>>,
    pub seconds: f64,
    /// max relative deviation from the top rung (sweeps with a ladder)
    pub ladder_delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eigenvectors: Option<Vec<Vec<[f64; 2]>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub points: Vec<AxisPoint>,
    /// working rung actually reported
    pub rung: [usize; 2],
    pub solutions: Vec<PointSolution>,
    pub seconds: f64,
}

impl SweepResult {
    /// Lowest `n` eigenvalues per point.
    pub fn eigenvalues(&self, n: usize) -> Vec<Vec<f64>> {
        self.solutions.iter().map(|s| s.eigenvalues[..n.min(s.eigenvalues.len())].to_vec()).collect()
    }

    /// Indices of points on the k = k_β cross-section.
    pub fn cross_section(&self) -> Vec<usize> {
        self.points.iter().enumerate().filter(|(_, p)| (p.k - p.k_beta).abs() < 1e-12).map(|(i, _)| i).collect()
    }
}

/// Max over the lowest `n` levels of |a − b|/|b|.
pub fn max_relative_deviation(a: &[f64], b: &[f64], n: usize) -> f64 {
    (0..n.min(a.len()).min(b.len())).map(|i| ((a[i] - b[i]) / b[i]).abs()).fold(0.0, f64::max)
}

/// Shared, expensive inputs prepared once per sweep.
struct Prepared {
    matter: Option<MatterSolution>,
}

fn prepare(cfg: &RunConfig, spec: &SweepSpec) -> Result<Prepared> {
    let matter = if spec.gauge == Gauge::Pf {
        let n_states = spec.ladder.iter().map(|r| r[0]).max().unwrap_or(cfg.basis.n_matter);
        let b = &cfg.basis;
        Some(solve_matter_auto(&cfg.model.potential, cfg.model.mass, b.n_dvr, b.dvr_box, n_states, b.boundary_tol)?)
    } else {
        None
    };
    Ok(Prepared { matter })
}

fn mode_at(cfg: &RunConfig, gamma_over_omega: f64) -> Result<CavityMode<f64>> {
    let w = cfg.cavity.omega_c;
    CavityMode::from_gamma(w, gamma_over_omega * w, ELECTRON_CHARGE, cfg.model.mass)
}

fn uses_k_grid(cfg: &RunConfig, gauge: Gauge) -> bool {
    match gauge {
        Gauge::Rad | Gauge::Ad => true,
        Gauge::Pa => !cfg.model.potential.is_periodic(),
        _ => false,
    }
}

/// Box of the first rung at each point (explicit, or tail-balanced).
fn base_boxes(cfg: &RunConfig, spec: &SweepSpec, points: &[AxisPoint]) -> Result<Vec<Option<f64>>> {
    if !uses_k_grid(cfg, spec.gauge) {
        return Ok(vec![None; points.len()]);
    }
    if cfg.basis.k_box > 0.0 {
        return Ok(vec![Some(cfg.basis.k_box); points.len()]);
    }
    let rung = spec.ladder[0];
    let n_states = spec.n_eigs.min(rung[0] * rung[1] / 4).max(1);
    let one = |p: &AxisPoint| -> Result<Option<f64>> {
        let mode = mode_at(cfg, p.gamma_over_omega)?;
        balance_box(&cfg.model.potential, cfg.model.mass, &mode, rung[0], rung[1], n_states).map(Some)
    };
    map_points(spec.parallel, points, one)
}

fn box_for_rung(cfg: &RunConfig, base: Option<f64>, base_n: usize, n: usize) -> Option<f64> {
    base.map(|l| if cfg.basis.k_box > 0.0 { l } else { scale_box(l, base_n, n) })
}

fn map_points<T: Send>(
    parallel: bool,
    points: &[AxisPoint],
    f: impl Fn(&AxisPoint) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    let wrap = |p: &AxisPoint| {
        f(p).map_err(|e| Error::AtAxis { value: axis_value(p), source: Box::new(e) })
    };
    if parallel {
        points.par_iter().map(wrap).collect()
    } else {
        points.iter().map(wrap).collect()
    }
}

fn axis_value(p: &AxisPoint) -> f64 {
    if p.k == 0.0 && p.k_beta == 0.0 {
        p.gamma_over_omega
    } else {
        p.k
    }
}

fn vectors_out(vs: &[Vec<C64>]) -> Vec<Vec<[f64; 2]>> {
    vs.iter().map(|v| v.iter().map(|z| [z.re, z.im]).collect()).collect()
}

/// Diagonalize one (point, rung). Dense below `basis.dense_max_dim`, otherwise
/// Lanczos on the matrix-free PF/RAD operators.
fn solve_point(
    cfg: &RunConfig,
    spec: &SweepSpec,
    prep: &Prepared,
    rung: [usize; 2],
    point: &AxisPoint,
    box_length: Option<f64>,
) -> Result<PointSolution> {
    let t = Instant::now();
    let model = &cfg.model.potential;
    let mass = cfg.model.mass;
    let [n1, nf] = rung;
    let obs = spec.observables;
    let want_vectors = obs.photon_number || obs.fock_excitation || spec.keep_vectors;
    let dense_max = cfg.basis.dense_max_dim;

    let iterative = |op: &dyn LinearOperator, n_eigs: usize| {
        let opts = LanczosOptions { n_eigs, want_vectors, ..Default::default() };
        lowest_eigenpairs(op, &opts)
    };

    let h: GaugeHamiltonian = match spec.gauge {
        Gauge::Pf => {
            let sol = prep.matter.as_ref().expect("PF sweeps prepare matter states");
            let mode = mode_at(cfg, point.gamma_over_omega)?;
            if n1 * nf > dense_max && !spec.keep_vectors {
                let op = pf_operator(sol, &mode, n1, nf)?;
                let n = spec.n_eigs.min(op.dim() - 1);
                let r = iterative(&op, n)?;
                let fock = r.eigenvectors.as_ref().filter(|_| obs.fock_excitation).map(|vs| {
                    vs.iter()
                        .map(|v| {
                            let nrm: f64 = v.iter().map(|x| x * x).sum();
                            v.iter().enumerate().map(|(i, x)| x * x * (i % nf) as f64).sum::<f64>() / nrm
                        })
                        .collect()
                });
                return Ok(PointSolution {
                    residual: r.residuals.iter().zip(&r.eigenvalues).map(|(r, l)| r / (1.0 + l.abs())).reduce(f64::max),
                    eigenvalues: r.eigenvalues,
                    dim: op.dim(),
                    solver: "lanczos".into(),
                    box_length: None,
                    photon_number: None,
                    fock_excitation: fock,
                    top_population: None,
                    seconds: t.elapsed().as_secs_f64(),
                    ladder_delta: None,
                    eigenvectors: None,
                });
            }
            build_pf(sol, &mode, n1, nf)?
        }
        Gauge::Pa | Gauge::Ad | Gauge::Rad if uses_k_grid(cfg, spec.gauge) => {
            let l = box_length.expect("K-grid gauges carry a box");
            let grid = RealGrid::new(n1, l)?;
            let mode = mode_at(cfg, point.gamma_over_omega)?;
            if spec.gauge == Gauge::Rad && n1 * nf > dense_max && !obs.photon_number && !spec.keep_vectors {
                let (op, _) = rad_single_operator(model, &grid, mass, &mode, nf)?;
                let n = spec.n_eigs.min(op.dim() - 1);
                let r = iterative(&op, n)?;
                let fock = r
                    .eigenvectors
                    .as_ref()
                    .filter(|_| obs.fock_excitation)
                    .map(|vs| vs.iter().map(|v| op.ladder_excitation(v)).collect());
                return Ok(PointSolution {
                    residual: r.residuals.iter().zip(&r.eigenvalues).map(|(r, l)| r / (1.0 + l.abs())).reduce(f64::max),
                    eigenvalues: r.eigenvalues,
                    dim: op.dim(),
                    solver: "lanczos".into(),
                    box_length: Some(l),
                    photon_number: None,
                    fock_excitation: fock,
                    top_population: None,
                    seconds: t.elapsed().as_secs_f64(),
                    ladder_delta: None,
                    eigenvectors: None,
                });
            }
            match spec.gauge {
                Gauge::Pa => build_pa_lwa(model, &grid, mass, &mode, nf, true)?,
                Gauge::Ad => build_ad_cosine(model, &grid, mass, &mode, nf)?,
                _ => build_rad_single(model, &grid, mass, &mode, nf)?,
            }
        }
        gauge => {
            let disp = cfg.dispersion(point.gamma_over_omega);
            let ctx = KResolvedContext::new(point.k, n1, nf)?.with_k_beta(point.k_beta);
            match gauge {
                Gauge::Pa => build_pa_k_lwa(model, &ctx, &disp, mass)?,
                Gauge::RadK => build_rad_k(model, &ctx, &disp, mass)?,
                Gauge::RadKBlwa => build_rad_k_blwa(model, &ctx, &disp, mass, cfg.cavity.boost_number)?,
                Gauge::PaKBlwa => build_pa_k_blwa_exact(model, &ctx, &disp, mass)?,
                _ => unreachable!("K-grid gauges handled above"),
            }
        }
    };
    dense_solution(&h, spec, box_length, want_vectors, t)
}

fn dense_solution(
    h: &GaugeHamiltonian,
    spec: &SweepSpec,
    box_length: Option<f64>,
    want_vectors: bool,
    t: Instant,
) -> Result<PointSolution> {
    let s = eig_hermitian(&h.matrix, want_vectors)?;
    let n = spec.n_eigs.min(h.dim());
    let states: Vec<Vec<C64>> = (0..if want_vectors { n } else { 0 }).map(|i| s.vector(i).expect("vectors")).collect();
    let obs = spec.observables;
    let mut photon = None;
    let mut top = None;
    if obs.photon_number {
        let mut vals = Vec::with_capacity(n);
        let mut tops = Vec::with_capacity(n);
        for st in &states {
            if h.gauge.is_rad_family() {
                let p = coulomb_photon_number(st, h)?;
                vals.push(p.value);
                tops.push(p.top_population);
            } else {
                vals.push(fock_excitation(st, h)?);
                tops.push(crate::observables::top_population(st, h)?);
            }
        }
        photon = Some(vals);
        top = Some(tops);
    }
    let fock = if obs.fock_excitation {
        Some(states.iter().map(|st| fock_excitation(st, h)).collect::<Result<Vec<_>>>()?)
    } else {
        None
    };
    Ok(PointSolution {
        eigenvalues: s.eigenvalues[..n].to_vec(),
        dim: h.dim(),
        solver: "dense".into(),
        residual: s.max_residual,
        box_length,
        photon_number: photon,
        fock_excitation: fock,
        top_population: top,
        seconds: t.elapsed().as_secs_f64(),
        ladder_delta: None,
        eigenvectors: spec.keep_vectors.then(|| vectors_out(&states)),
    })
}

fn run_rung(
    cfg: &RunConfig,
    spec: &SweepSpec,
    prep: &Prepared,
    points: &[AxisPoint],
    boxes: &[Option<f64>],
    rung: [usize; 2],
) -> Result<Vec<PointSolution>> {
    let base_n = spec.ladder[0][0];
    let idx: Vec<usize> = (0..points.len()).collect();
    let one = |i: &usize| -> Result<PointSolution> {
        let l = box_for_rung(cfg, boxes[*i], base_n, rung[0]);
        solve_point(cfg, spec, prep, rung, &points[*i], l)
            .map_err(|e| Error::AtAxis { value: axis_value(&points[*i]), source: Box::new(e) })
    };
    if spec.parallel {
        idx.par_iter().map(one).collect()
    } else {
        idx.iter().map(one).collect()
    }
}

/// Diagonalize the spec's gauge at every axis point on the working rung. With
/// a ladder of two or more rungs the top rung is also solved and the
/// per-point deviation recorded.
pub fn run_sweep(cfg: &RunConfig, spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate(cfg)?;
    let t = Instant::now();
    let points = spec.axis.points(cfg);
    let prep = prepare(cfg, spec)?;
    let boxes = base_boxes(cfg, spec, &points)?;
    let rung = spec.ladder[0];
    let mut solutions = run_rung(cfg, spec, &prep, &points, &boxes, rung)?;
    if spec.ladder.len() >= 2 {
        let top = run_rung(cfg, spec, &prep, &points, &boxes, *spec.ladder.last().expect("ladder"))?;
        for (s, r) in solutions.iter_mut().zip(&top) {
            s.ladder_delta = Some(max_relative_deviation(&s.eigenvalues, &r.eigenvalues, spec.n_eigs));
        }
    }
    Ok(SweepResult { spec: spec.clone(), points, rung, solutions, seconds: t.elapsed().as_secs_f64() })
}

/// Spectra versus γ/ω_c on the configured axis.
pub fn sweep_coupling(cfg: &RunConfig, spec: &SweepSpec) -> Result<SweepResult> {
    if !matches!(spec.axis, Axis::Coupling { .. }) {
        return Err(Error::Config("sweep_coupling needs a coupling axis".into()));
    }
    run_sweep(cfg, spec)
}

/// Band energies versus k (or the (k, k_β) plane) at fixed coupling.
pub fn sweep_dispersion(cfg: &RunConfig, spec: &SweepSpec) -> Result<SweepResult> {
    if matches!(spec.axis, Axis::Coupling { .. }) {
        return Err(Error::Config("sweep_dispersion needs a momentum axis".into()));
    }
    run_sweep(cfg, spec)
}

/// Dispersion with the Coulomb-gauge photon number of every band.
pub fn photon_character(cfg: &RunConfig, spec: &SweepSpec) -> Result<SweepResult> {
    let mut s = spec.clone();
    s.observables.photon_number = true;
    if matches!(s.axis, Axis::Coupling { .. }) {
        run_sweep(cfg, &s)
    } else {
        sweep_dispersion(cfg, &s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub rung: [usize; 2],
    pub dim: usize,
    /// max over the axis of the relative deviation from the top rung
    pub max_rel_deviation: f64,
    pub per_point: Vec<f64>,
    pub wall_seconds: f64,
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTable {
    pub tolerance: f64,
    pub rows: Vec<ConvergenceRow>,
    /// smallest rung within tolerance of the top rung (the top rung excluded)
    pub converged_rung: Option<[usize; 2]>,
    /// deviation nonincreasing up the ladder
    pub monotone: bool,
    pub reference: SweepResult,
}

/// Every rung over the whole axis against the top rung.
pub fn convergence_study(cfg: &RunConfig, spec: &SweepSpec, tolerance: f64) -> Result<ConvergenceTable> {
    spec.validate(cfg)?;
    if spec.ladder.len() < 2 {
        return Err(Error::Config("convergence study needs a ladder of at least two rungs".into()));
    }
    let t = Instant::now();
    let points = spec.axis.points(cfg);
    let prep = prepare(cfg, spec)?;
    let boxes = base_boxes(cfg, spec, &points)?;
    let mut runs = Vec::new();
    for &rung in &spec.ladder {
        let t = Instant::now();
        let sols = run_rung(cfg, spec, &prep, &points, &boxes, rung)?;
        runs.push((rung, sols, t.elapsed().as_secs_f64()));
    }
    let (top_rung, top, _) = runs.last().cloned().expect("ladder");
    let rows: Vec<ConvergenceRow> = runs
        .iter()
        .map(|(rung, sols, secs)| {
            let per_point: Vec<f64> = sols
                .iter()
                .zip(&top)
                .map(|(s, r)| max_relative_deviation(&s.eigenvalues, &r.eigenvalues, spec.n_eigs))
                .collect();
            let max = per_point.iter().copied().fold(0.0, f64::max);
            ConvergenceRow {
                rung: *rung,
                dim: sols.first().map_or(0, |s| s.dim),
                max_rel_deviation: max,
                per_point,
                wall_seconds: *secs,
                converged: max <= tolerance,
            }
        })
        .collect();
    let n = rows.len();
    let converged_rung = rows[..n - 1].iter().find(|r| r.converged).map(|r| r.rung);
    let monotone = rows.windows(2).all(|w| w[1].max_rel_deviation <= w[0].max_rel_deviation * (1.0 + 1e-12) + 1e-15);
    let reference = SweepResult {
        spec: spec.clone(),
        points,
        rung: top_rung,
        solutions: top,
        seconds: t.elapsed().as_secs_f64(),
    };
    Ok(ConvergenceTable { tolerance, rows, converged_rung, monotone, reference })
}

/// ħΩ_k/2 of the dressed mode at a point (the zero-point offset of every band).
pub fn zero_point(cfg: &RunConfig, p: &AxisPoint) -> Result<f64> {
    let d = cfg.dispersion(p.gamma_over_omega);
    let w = d.omega(p.k_beta)?;
    let g = d.gamma(p.k_beta)?;
    Ok(0.5 * HBAR * (w * w + 2.0 * g * g).sqrt())
}

/// max − min over the axis of band `band`, optionally after removing the
/// photon zero-point energy ħΩ_k/2 (which disperses with k itself).
pub fn band_width(cfg: &RunConfig, result: &SweepResult, band: usize, subtract_zero_point: bool) -> Result<f64> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (p, s) in result.points.iter().zip(&result.solutions) {
        let e = s.eigenvalues[band] - if subtract_zero_point { zero_point(cfg, p)? } else { 0.0 };
        lo = lo.min(e);
        hi = hi.max(e);
    }
    Ok(hi - lo)
}

/// Matter eigenstates of the configured model (DVR, auto-expanded box).
pub fn matter_solve(cfg: &RunConfig) -> Result<MatterSolution> {
    let b = &cfg.basis;
    solve_matter_auto(&cfg.model.potential, cfg.model.mass, b.n_dvr, b.dvr_box, b.n_matter, b.boundary_tol)
}
