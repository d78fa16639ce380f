//! K-grid builders: RAD (single and multimode), AD for the cosine model,
//! and the shared plane-wave matter machinery.

use super::{Gauge, GaugeHamiltonian, ParamRecord, RadFrame, RadGridOperator};
use crate::matter::{box_fourier_coeff, PotentialModel, RealGrid, ELECTRON_CHARGE};
use crate::operators::{kron, HermitianMatrix, JointBasis, QuadratureCalculus};
use crate::transforms::{coupling_gamma, normal_mode_transform, CavityMode};
use crate::{Error, Result, C64, HBAR};
use faer::Mat;
use std::f64::consts::PI;

const MAX_MODES: usize = 8;
/// Couplings below this fraction of the largest off-diagonal one are skipped.
const GRID_COEFF_CUTOFF: f64 = 1e-14;

/// Plane waves e^{iKx}/√L with K_i = (i − (N−1)/2)ΔK, symmetric about 0 (a
/// half-integer offset for even N), and Galerkin couplings ⟨K|V|K′⟩ = V̂(K′−K)
/// from the exact Fourier coefficients of the L-periodized potential.
pub(crate) struct KGridMatter {
    pub grid: RealGrid,
    pub kvals: Vec<f64>,
    /// V̂(wΔK) indexed by w + N − 1, w ∈ (−N, N)
    coeffs: Vec<f64>,
    coeff_floor: f64,
}

impl KGridMatter {
    pub fn new(model: &PotentialModel, grid: &RealGrid) -> Result<Self> {
        let n = grid.n_points;
        let dk = 2.0 * PI / grid.box_length;
        let kvals = (0..n).map(|i| (i as f64 - 0.5 * (n - 1) as f64) * dk).collect();
        let coeffs: Vec<f64> = (0..2 * n - 1)
            .map(|i| box_fourier_coeff(model, grid.box_length, (i as f64 - (n - 1) as f64) * dk))
            .collect::<Result<_>>()?;
        let max = coeffs.iter().enumerate().filter(|(i, _)| *i != n - 1).fold(0.0f64, |a, (_, c)| a.max(c.abs()));
        Ok(Self { grid: *grid, kvals, coeffs, coeff_floor: GRID_COEFF_CUTOFF * max })
    }

    pub fn n(&self) -> usize {
        self.grid.n_points
    }

    pub fn dk(&self) -> f64 {
        2.0 * PI / self.grid.box_length
    }

    /// V̂ for the label difference w = j − i, or None when negligible.
    pub fn coeff(&self, w: i64) -> Option<f64> {
        let c = self.coeffs[(w + self.n() as i64 - 1) as usize];
        (c.abs() > self.coeff_floor || w == 0).then_some(c)
    }

    /// Unitary F[i,K] = e^{iKx_i}/√N to the real grid.
    fn dft(&self) -> Mat<C64> {
        let n = self.n();
        let xs = self.grid.points();
        let norm = 1.0 / (n as f64).sqrt();
        Mat::from_fn(n, n, |i, k| C64::from_polar(norm, self.kvals[k] * xs[i]))
    }

    /// F·diag(ħ²K²/2m)·F† (real because the K set is symmetric).
    pub fn kinetic_real_space(&self, mass: f64) -> Mat<f64> {
        let n = self.n();
        let dx = self.grid.dx();
        let row: Vec<f64> = (0..n)
            .map(|d| {
                self.kvals
                    .iter()
                    .map(|&k| HBAR * HBAR * k * k / (2.0 * mass) * (k * d as f64 * dx).cos())
                    .sum::<f64>()
                    / n as f64
            })
            .collect();
        Mat::from_fn(n, n, |i, j| row[i.abs_diff(j)])
    }

    /// F·P V(x − s) P·F† for each shift s. Conjugation maps K → −K within the
    /// set, so each matrix is real symmetric.
    pub fn shifted_potentials(&self, shifts: &[f64]) -> Vec<Mat<f64>> {
        let n = self.n();
        let f = self.dft();
        let fh = f.adjoint().to_owned();
        let dk = self.dk();
        shifts
            .iter()
            .map(|&s| {
                let t = Mat::from_fn(n, n, |i, j| {
                    let w = j as i64 - i as i64;
                    self.coeff(w).map_or(C64::new(0.0, 0.0), |c| C64::from_polar(c, w as f64 * dk * s))
                });
                let m = &f * &t * &fh;
                Mat::from_fn(n, n, |i, j| 0.5 * (m[(i, j)].re + m[(j, i)].re))
            })
            .collect()
    }
}

/// One photon block per label difference w ∈ (−N, N), via `block(c, G)`.
fn difference_blocks(kg: &KGridMatter, block: impl Fn(f64, f64) -> Mat<C64>) -> Vec<Option<Mat<C64>>> {
    let n = kg.n() as i64;
    (-(n - 1)..n).map(|w| kg.coeff(w).map(|c| block(c, w as f64 * kg.dk()))).collect()
}

/// Places `blocks[j − i]` at (K_i, K_j) and adds a diagonal `diag(i, a)`.
fn assemble_blocks(
    kg: &KGridMatter,
    nph: usize,
    blocks: &[Option<Mat<C64>>],
    diag: impl Fn(usize, usize) -> f64,
) -> Mat<C64> {
    let n = kg.n();
    let dim = n * nph;
    let mut h = Mat::<C64>::zeros(dim, dim);
    for i in 0..n {
        for j in 0..n {
            if let Some(b) = &blocks[j + n - 1 - i] {
                for a in 0..nph {
                    for c in 0..nph {
                        h[(i * nph + a, j * nph + c)] += b[(a, c)];
                    }
                }
            }
        }
        for a in 0..nph {
            h[(i * nph + a, i * nph + a)] += diag(i, a);
        }
    }
    symmetrize(&mut h);
    h
}

fn frame_for(mode: &CavityMode<f64>, mass: f64) -> Result<RadFrame> {
    mode.validate()?;
    let gamma = coupling_gamma(&[*mode], &[ELECTRON_CHARGE], &[mass])?[0];
    RadFrame::new(mode.omega, gamma, mass)
}

fn rad_record(model: &PotentialModel, frame: &RadFrame, mode: &CavityMode<f64>, n_matter: usize, n_fock: usize) -> ParamRecord {
    ParamRecord {
        model: Some(*model),
        mass: frame.mass,
        omega: frame.omega,
        gamma: Some(frame.gamma),
        a0: mode.a0,
        frame: Some(*frame),
        n_matter,
        n_fock: vec![n_fock],
        ..Default::default()
    }
}

/// Single-particle, single-mode RAD on the K grid of `grid`:
/// H = Σ_K ħ²K²/2m_eff ⊗ 1 + Σ_{K,K′} V̂(K′−K)|K⟩⟨K′| ⊗ e^{i(K′−K)λq̂} + 1 ⊗ ħΩ(b†b+½).
pub fn build_rad_single(
    model: &PotentialModel,
    grid: &RealGrid,
    mass: f64,
    mode: &CavityMode<f64>,
    n_fock: usize,
) -> Result<GaugeHamiltonian> {
    let frame = frame_for(mode, mass)?;
    let kg = KGridMatter::new(model, grid)?;
    let n = kg.n();
    let basis = crate::operators::FockBasis::new(n_fock, frame.omega_dressed)?;
    let calc = QuadratureCalculus::new(&basis)?;
    let lam = frame.displacement;
    let blocks = difference_blocks(&kg, |c, g| calc.apply(|q| C64::from_polar(c, g * lam * q)));
    let h = assemble_blocks(&kg, n_fock, &blocks, |i, a| {
        HBAR * HBAR * kg.kvals[i] * kg.kvals[i] / (2.0 * frame.m_eff) + HBAR * frame.omega_dressed * (a as f64 + 0.5)
    });
    Ok(GaugeHamiltonian {
        gauge: Gauge::Rad,
        matrix: HermitianMatrix::new(h)?,
        basis: JointBasis::new(n, vec![n_fock]),
        params: rad_record(model, &frame, mode, n, n_fock),
        matter_momenta: kg.kvals.clone(),
    })
}

/// Average conjugate pairs so that roundoff in the spectral calculus cannot
/// leave a residual anti-Hermitian part.
pub(crate) fn symmetrize(h: &mut Mat<C64>) {
    let n = h.nrows();
    for j in 0..n {
        for i in 0..j {
            let m = 0.5 * (h[(i, j)] + h[(j, i)].conj());
            h[(i, j)] = m;
            h[(j, i)] = m.conj();
        }
        h[(j, j)] = C64::new(h[(j, j)].re, 0.0);
    }
}

/// The same RAD Hamiltonian as a real operator in the (x grid ⊗ q̂ eigenbasis)
/// product basis, where the potential is block diagonal in the photon index:
/// one projected V(x − λμ_j) per q̂ eigenvalue μ_j.
pub fn rad_single_operator(
    model: &PotentialModel,
    grid: &RealGrid,
    mass: f64,
    mode: &CavityMode<f64>,
    n_fock: usize,
) -> Result<(RadGridOperator, RadFrame)> {
    let frame = frame_for(mode, mass)?;
    let kg = KGridMatter::new(model, grid)?;
    let basis = crate::operators::FockBasis::new(n_fock, frame.omega_dressed)?;
    let calc = QuadratureCalculus::new(&basis)?;
    let photon = calc_photon(&calc, frame.omega_dressed);
    let shifts: Vec<f64> = calc.eigenvalues.iter().map(|mu| frame.displacement * mu).collect();
    let potential = kg.shifted_potentials(&shifts);
    let quantum = HBAR * frame.omega_dressed;
    Ok((RadGridOperator { kinetic: kg.kinetic_real_space(frame.m_eff), photon, potential, quantum }, frame))
}

/// Sᵀ·ħΩ(n+½)·S in the q̂ eigenbasis.
fn calc_photon(calc: &QuadratureCalculus, omega: f64) -> Mat<f64> {
    let s = &calc.eigenvectors;
    let n = s.nrows();
    Mat::from_fn(n, n, |a, b| (0..n).map(|k| s[(k, a)] * HBAR * omega * (k as f64 + 0.5) * s[(k, b)]).sum())
}

/// AD Hamiltonian for the cosine model on the K grid:
/// ħ²K²/2m_eff ⊗ 1 + Σ V̂(K′−K)|K⟩⟨K′| ⊗ e^{−i(K′−K)ξP̂} + 1⊗ħΩ(b†b+½).
pub fn build_ad_cosine(
    model: &PotentialModel,
    grid: &RealGrid,
    mass: f64,
    mode: &CavityMode<f64>,
    n_fock: usize,
) -> Result<GaugeHamiltonian> {
    if !matches!(model, PotentialModel::Cosine { .. }) {
        return Err(Error::Unsupported(format!(
            "the AD builder needs a trigonometric potential, got {}",
            model.name()
        )));
    }
    let frame = frame_for(mode, mass)?;
    let kg = KGridMatter::new(model, grid)?;
    let n = kg.n();
    let basis = crate::operators::FockBasis::new(n_fock, frame.omega_dressed)?;
    let calc = QuadratureCalculus::new(&basis)?;
    let xi = frame.xi;
    let blocks = difference_blocks(&kg, |c, g| calc.apply_momentum(|p| C64::from_polar(c, -g * xi * p)));
    let h = assemble_blocks(&kg, n_fock, &blocks, |i, a| {
        HBAR * HBAR * kg.kvals[i] * kg.kvals[i] / (2.0 * frame.m_eff) + HBAR * frame.omega_dressed * (a as f64 + 0.5)
    });
    Ok(GaugeHamiltonian {
        gauge: Gauge::Ad,
        matrix: HermitianMatrix::new(h)?,
        basis: JointBasis::new(n, vec![n_fock]),
        params: rad_record(model, &frame, mode, n, n_fock),
        matter_momenta: kg.kvals.clone(),
    })
}

/// Multimode RAD (≤ 8 modes, full tensor Fock space). Normal modes come from
/// the g-matrix; each contributes a factor e^{i(K′−K)λ_α q̂_α}.
pub fn build_rad_multimode(
    model: &PotentialModel,
    grid: &RealGrid,
    mass: f64,
    modes: &[CavityMode<f64>],
    n_fock: &[usize],
) -> Result<GaugeHamiltonian> {
    if modes.len() > MAX_MODES {
        return Err(Error::Unsupported(format!("{} modes exceeds the dense limit of {MAX_MODES}", modes.len())));
    }
    if modes.len() != n_fock.len() {
        return Err(Error::Dimension("one Fock truncation per mode required".into()));
    }
    let nms = normal_mode_transform(modes, &[ELECTRON_CHARGE], &[mass])?;
    let m_eff = nms.effective_mass(0, mass)?;
    let lams = nms.displacements(0);
    let kg = KGridMatter::new(model, grid)?;
    let n = kg.n();
    let calcs: Vec<QuadratureCalculus> = nms
        .omegas
        .iter()
        .zip(n_fock)
        .map(|(&om, &nf)| QuadratureCalculus::new(&crate::operators::FockBasis::new(nf, om)?))
        .collect::<Result<_>>()?;
    let nph: usize = n_fock.iter().product();
    let blocks = difference_blocks(&kg, |c, g| {
        let mut e = Mat::from_fn(1, 1, |_, _| C64::new(c, 0.0));
        for (calc, &lam) in calcs.iter().zip(&lams) {
            e = kron(&e, &calc.exp_i(-g * lam));
        }
        e
    });
    let joint = JointBasis::new(n, n_fock.to_vec());
    let ladder: Vec<f64> = (0..nph)
        .map(|p| {
            let (_, occ) = joint.split(p);
            occ.iter().zip(&nms.omegas).map(|(&k, &om)| HBAR * om * (k as f64 + 0.5)).sum()
        })
        .collect();
    let h = assemble_blocks(&kg, nph, &blocks, |i, a| HBAR * HBAR * kg.kvals[i] * kg.kvals[i] / (2.0 * m_eff) + ladder[a]);
    Ok(GaugeHamiltonian {
        gauge: Gauge::Rad,
        matrix: HermitianMatrix::new(h)?,
        basis: joint,
        params: ParamRecord {
            model: Some(*model),
            mass,
            omega: modes[0].omega,
            a0: modes[0].a0,
            n_matter: n,
            n_fock: n_fock.to_vec(),
            ..Default::default()
        },
        matter_momenta: kg.kvals.clone(),
    })
}
