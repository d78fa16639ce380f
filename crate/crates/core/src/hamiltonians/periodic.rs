//! k-resolved builders for periodic potentials on the κ lattice, including the
//! beyond-long-wavelength (independent k, k_β) forms.

use super::grid_rad::symmetrize;
use super::{exact_quadratic, Gauge, GaugeHamiltonian, ParamRecord, RadFrame};
use crate::matter::{PotentialModel, ELECTRON_CHARGE};
use crate::observables::coulomb_number_operator;
use crate::operators::{FockBasis, HermitianMatrix, JointBasis, QuadratureCalculus};
use crate::transforms::Dispersion;
use crate::{Error, Result, C64, HBAR};
use faer::Mat;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KResolvedContext {
    pub k: f64,
    /// photon wavevector; `None` means k_β = k
    pub k_beta: Option<f64>,
    /// number of κ values (odd, symmetric about 0)
    pub n_bands: usize,
    pub n_fock: usize,
}

impl KResolvedContext {
    pub fn new(k: f64, n_bands: usize, n_fock: usize) -> Result<Self> {
        let c = Self { k, k_beta: None, n_bands, n_fock };
        c.validate()?;
        Ok(c)
    }

    pub fn with_k_beta(mut self, k_beta: f64) -> Self {
        self.k_beta = Some(k_beta);
        self
    }

    pub fn k_beta(&self) -> f64 {
        self.k_beta.unwrap_or(self.k)
    }

    pub fn n_max(&self) -> usize {
        self.n_bands / 2
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_bands % 2 == 0 {
            return Err(Error::InvalidParameter(format!("n_bands = {} must be odd (symmetric κ range)", self.n_bands)));
        }
        if self.n_fock < 2 {
            return Err(Error::InvalidBasis(format!("n_fock = {} < 2", self.n_fock)));
        }
        if !self.k.is_finite() || !self.k_beta().is_finite() {
            return Err(Error::InvalidParameter("k and k_beta must be finite".into()));
        }
        Ok(())
    }

    /// Whether k lies in (−π/a0, π/a0]. Builders accept any k; spectra are
    /// periodic in k at fixed k_β.
    pub fn in_first_zone(&self, a0: f64) -> bool {
        self.k > -PI / a0 && self.k <= PI / a0
    }
}

/// Which photon-number operator the boost −ħk_β N̂ uses in the RAD frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoostNumber {
    /// the RAD ladder b†b
    RadLadder,
    /// a†a expressed through the Bogoliubov map and the π/2 rotation
    Dressed,
    /// a†a carried through the full per-block chain, including the ξK translation
    Full,
}

struct Lattice {
    a0: f64,
    kvals: Vec<f64>,
    labels: Vec<i64>,
    /// v(n) for n ≥ 1
    harmonics: Vec<(i64, f64)>,
}

impl Lattice {
    fn new(model: &PotentialModel, ctx: &KResolvedContext) -> Result<Self> {
        ctx.validate()?;
        model.validate()?;
        let a0 = model
            .lattice_constant()
            .ok_or_else(|| Error::Unsupported(format!("{} is not periodic", model.name())))?;
        let b = 2.0 * PI / a0;
        let nm = ctx.n_max() as i64;
        let labels: Vec<i64> = (-nm..=nm).collect();
        let kvals = labels.iter().map(|&n| ctx.k + n as f64 * b).collect();
        Ok(Self { a0, kvals, labels, harmonics: model.significant_harmonics()? })
    }

    fn b(&self) -> f64 {
        2.0 * PI / self.a0
    }

    fn coeff(&self, d: i64) -> Option<f64> {
        self.harmonics.iter().find(|(n, _)| *n == d.abs()).map(|&(_, v)| v)
    }
}

fn frame_at(disp: &Dispersion<f64>, k_beta: f64, mass: f64) -> Result<RadFrame> {
    RadFrame::new(disp.omega(k_beta)?, disp.gamma(k_beta)?, mass)
}

fn assemble_rad(
    model: &PotentialModel,
    ctx: &KResolvedContext,
    disp: &Dispersion<f64>,
    mass: f64,
    boost: Option<BoostNumber>,
) -> Result<GaugeHamiltonian> {
    let lat = Lattice::new(model, ctx)?;
    let k_beta = ctx.k_beta();
    let frame = frame_at(disp, k_beta, mass)?;
    let nf = ctx.n_fock;
    let calc = QuadratureCalculus::new(&FockBasis::new(nf, frame.omega_dressed)?)?;
    let nk = lat.kvals.len();
    let dim = nk * nf;
    let mut h = Mat::<C64>::zeros(dim, dim);
    let b = lat.b();
    // hopping blocks v(κ′)·e^{iκ′λq̂}, one per retained κ′
    for &(n, v) in &lat.harmonics {
        for sign in [1i64, -1] {
            let d = sign * n;
            let block = calc.exp_i(-(d as f64) * b * frame.displacement);
            for i in 0..nk {
                let j = i as i64 + d;
                if j < 0 || j >= nk as i64 {
                    continue;
                }
                let j = j as usize;
                debug_assert_eq!(lat.labels[j] - lat.labels[i], d);
                for a in 0..nf {
                    for c in 0..nf {
                        h[(i * nf + a, j * nf + c)] += block[(a, c)] * v;
                    }
                }
            }
        }
    }
    for (i, &kk) in lat.kvals.iter().enumerate() {
        let kin: Mat<C64> = match boost {
            None => Mat::from_fn(nf, nf, |a, c| {
                C64::new(if a == c { HBAR * HBAR * kk * kk / (2.0 * frame.m_eff) } else { 0.0 }, 0.0)
            }),
            Some(kind) => boosted_kinetic(&frame, kk, k_beta, nf, kind),
        };
        for a in 0..nf {
            for c in 0..nf {
                h[(i * nf + a, i * nf + c)] += kin[(a, c)];
            }
            h[(i * nf + a, i * nf + a)] += HBAR * frame.omega_dressed * (a as f64 + 0.5);
        }
    }
    symmetrize(&mut h);
    Ok(GaugeHamiltonian {
        gauge: if boost.is_some() { Gauge::RadKBlwa } else { Gauge::RadK },
        matrix: HermitianMatrix::new(h)?,
        basis: JointBasis::new(nk, vec![nf]),
        params: ParamRecord {
            model: Some(*model),
            mass,
            omega: frame.omega,
            gamma: Some(frame.gamma),
            a0: amplitude(frame.gamma, frame.omega, mass),
            frame: Some(frame),
            k: Some(ctx.k),
            k_beta: Some(k_beta),
            n_matter: nk,
            n_fock: vec![nf],
            boost,
        },
        matter_momenta: lat.kvals,
    })
}

fn amplitude(gamma: f64, omega: f64, mass: f64) -> f64 {
    gamma * (mass * HBAR / (ELECTRON_CHARGE * ELECTRON_CHARGE * omega)).sqrt()
}

/// (ħK − ħk_β N̂)²/2m_eff on the photon factor, exact within the truncation.
fn boosted_kinetic(frame: &RadFrame, k: f64, k_beta: f64, nf: usize, kind: BoostNumber) -> Mat<C64> {
    let big = nf + 2;
    let number: Mat<C64> = match kind {
        BoostNumber::RadLadder => {
            Mat::from_fn(big, big, |a, c| C64::new(if a == c { a as f64 } else { 0.0 }, 0.0))
        }
        BoostNumber::Dressed => coulomb_number_operator(frame, 0.0, big),
        BoostNumber::Full => coulomb_number_operator(frame, k, big),
    };
    let o = Mat::from_fn(big, big, |a, c| {
        let d = if a == c { C64::new(HBAR * k, 0.0) } else { C64::new(0.0, 0.0) };
        d - number[(a, c)] * (HBAR * k_beta)
    });
    let sq = &o * &o;
    Mat::from_fn(nf, nf, |a, c| sq[(a, c)] / (2.0 * frame.m_eff))
}

/// k-projected RAD with k_β = ctx.k_beta() (defaults to k):
/// ħΩ(b†b+½) + Σ_κ ħ²(k+κ)²/2m_eff + Σ_{κ,κ′≠0} v(κ′)|k+κ⟩⟨k+κ+κ′| ⊗ e^{iκ′λq̂}.
/// The single-argument (k_β = k) case is one cross-section of the (k, k_β) plane.
pub fn build_rad_k(model: &PotentialModel, ctx: &KResolvedContext, disp: &Dispersion<f64>, mass: f64) -> Result<GaugeHamiltonian> {
    assemble_rad(model, ctx, disp, mass, None)
}

/// Beyond-long-wavelength RAD: kinetic blocks (ħ(k+κ) − ħk_β N̂)²/2m_eff.
pub fn build_rad_k_blwa(
    model: &PotentialModel,
    ctx: &KResolvedContext,
    disp: &Dispersion<f64>,
    mass: f64,
    boost: BoostNumber,
) -> Result<GaugeHamiltonian> {
    assemble_rad(model, ctx, disp, mass, Some(boost))
}

/// Boosted exact Coulomb-gauge benchmark:
/// ħω_β(a†a+½) + Σ_κ (ħ(k+κ) − zA_β(a†+a) − ħk_β a†a)²/2m + Σ v(κ′) hopping.
pub fn build_pa_k_blwa_exact(
    model: &PotentialModel,
    ctx: &KResolvedContext,
    disp: &Dispersion<f64>,
    mass: f64,
) -> Result<GaugeHamiltonian> {
    let lat = Lattice::new(model, ctx)?;
    let k_beta = ctx.k_beta();
    let omega = disp.omega(k_beta)?;
    let gamma = disp.gamma(k_beta)?;
    let a = amplitude(gamma, omega, mass);
    let h = plane_wave_pa(&lat, &[ctx.k], ctx.n_max(), ctx.n_fock, k_beta, omega, a, mass, true)?;
    Ok(GaugeHamiltonian {
        gauge: Gauge::PaKBlwa,
        matrix: HermitianMatrix::new(h)?,
        basis: JointBasis::new(lat.kvals.len(), vec![ctx.n_fock]),
        params: ParamRecord {
            model: Some(*model),
            mass,
            omega,
            gamma: Some(gamma),
            a0: a,
            k: Some(ctx.k),
            k_beta: Some(k_beta),
            n_matter: lat.kvals.len(),
            n_fock: vec![ctx.n_fock],
            ..Default::default()
        },
        matter_momenta: lat.kvals,
    })
}

/// Exact Coulomb-gauge Hamiltonian in the long-wavelength limit, with the mode
/// of wavevector k_β (frequency ω_{k_β}, coupling γ_{k_β}) but no photon
/// momentum: Σ_κ (ħ(k+κ) − zA(a†+a))²/2m + ħω(a†a+½) + Σ v(κ′) hopping.
/// The exact partner of [`build_rad_k`].
pub fn build_pa_k_lwa(
    model: &PotentialModel,
    ctx: &KResolvedContext,
    disp: &Dispersion<f64>,
    mass: f64,
) -> Result<GaugeHamiltonian> {
    let lat = Lattice::new(model, ctx)?;
    let k_beta = ctx.k_beta();
    let omega = disp.omega(k_beta)?;
    let gamma = disp.gamma(k_beta)?;
    let a = amplitude(gamma, omega, mass);
    let h = plane_wave_pa(&lat, &[ctx.k], ctx.n_max(), ctx.n_fock, 0.0, omega, a, mass, true)?;
    Ok(GaugeHamiltonian {
        gauge: Gauge::Pa,
        matrix: HermitianMatrix::new(h)?,
        basis: JointBasis::new(lat.kvals.len(), vec![ctx.n_fock]),
        params: ParamRecord {
            model: Some(*model),
            mass,
            omega,
            gamma: Some(gamma),
            a0: a,
            k: Some(ctx.k),
            k_beta: Some(k_beta),
            n_matter: lat.kvals.len(),
            n_fock: vec![ctx.n_fock],
            ..Default::default()
        },
        matter_momenta: lat.kvals,
    })
}

/// Beyond-LWA Coulomb-gauge Hamiltonian on the union of κ ladders built on
/// each offset in `ks` (matter-major, offsets in order). With `boosted` the
/// photon momentum is absorbed into the matter label; otherwise the field's
/// e^{±ik_βx} factors connect K to K ± k_β explicitly.
#[allow(clippy::too_many_arguments)]
pub fn build_pa_blwa_plane_waves(
    model: &PotentialModel,
    ks: &[f64],
    n_max: usize,
    n_fock: usize,
    k_beta: f64,
    disp: &Dispersion<f64>,
    mass: f64,
    boosted: bool,
) -> Result<GaugeHamiltonian> {
    let ctx = KResolvedContext::new(ks.first().copied().unwrap_or(0.0), 2 * n_max + 1, n_fock)?;
    let lat = Lattice::new(model, &ctx)?;
    let omega = disp.omega(k_beta)?;
    let gamma = disp.gamma(k_beta)?;
    let a = amplitude(gamma, omega, mass);
    let h = plane_wave_pa(&lat, ks, n_max, n_fock, k_beta, omega, a, mass, boosted)?;
    let b = lat.b();
    let momenta: Vec<f64> = ks
        .iter()
        .flat_map(|&k| (-(n_max as i64)..=n_max as i64).map(move |n| k + n as f64 * b))
        .collect();
    Ok(GaugeHamiltonian {
        gauge: Gauge::PaKBlwa,
        matrix: HermitianMatrix::new(h)?,
        basis: JointBasis::new(momenta.len(), vec![n_fock]),
        params: ParamRecord {
            model: Some(*model),
            mass,
            omega,
            gamma: Some(gamma),
            a0: a,
            k_beta: Some(k_beta),
            n_matter: momenta.len(),
            n_fock: vec![n_fock],
            ..Default::default()
        },
        matter_momenta: momenta,
    })
}

#[allow(clippy::too_many_arguments)]
fn plane_wave_pa(
    lat: &Lattice,
    ks: &[f64],
    n_max: usize,
    nf: usize,
    k_beta: f64,
    omega: f64,
    a: f64,
    mass: f64,
    boosted: bool,
) -> Result<Mat<C64>> {
    let b = lat.b();
    let z = ELECTRON_CHARGE;
    let momenta: Vec<f64> = ks
        .iter()
        .flat_map(|&k| (-(n_max as i64)..=n_max as i64).map(move |n| k + n as f64 * b))
        .collect();
    let nk = momenta.len();
    let dim = nk * nf;
    let mut h = Mat::<C64>::zeros(dim, dim);
    let lattice_step = |d: f64| -> Option<i64> {
        let t = d / b;
        let r = t.round();
        ((t - r).abs() < 1e-9 && r != 0.0).then_some(r as i64)
    };
    let x1 = exact_quadratic(nf + 1, |bb, bd| bb + bd);
    let lower = exact_quadratic(nf, |bb, _| bb.clone());
    let lower2 = exact_quadratic(nf, |bb, _| bb * bb);
    let x2sym = exact_quadratic(nf, |bb, bd| bb * bd + bd * bb);
    for i in 0..nk {
        for j in 0..nk {
            if let Some(d) = lattice_step(momenta[j] - momenta[i]) {
                if let Some(v) = lat.coeff(d) {
                    for f in 0..nf {
                        h[(i * nf + f, j * nf + f)] += C64::new(v, 0.0);
                    }
                }
            }
        }
        let kk = momenta[i];
        if boosted {
            // (ħK − zA X − ħk_β N)² in nf+1 levels, cropped to nf
            let o = Mat::from_fn(nf + 1, nf + 1, |f, g| {
                let mut v = -z * a * x1[(f, g)];
                if f == g {
                    v += HBAR * kk - HBAR * k_beta * f as f64;
                }
                v
            });
            let sq = &o * &o;
            for f in 0..nf {
                for g in 0..nf {
                    h[(i * nf + f, i * nf + g)] += C64::new(sq[(f, g)] / (2.0 * mass), 0.0);
                }
                h[(i * nf + f, i * nf + f)] += HBAR * omega * (f as f64 + 0.5);
            }
        } else {
            for f in 0..nf {
                h[(i * nf + f, i * nf + f)] += C64::new(
                    HBAR * HBAR * kk * kk / (2.0 * mass) + HBAR * omega * (f as f64 + 0.5),
                    0.0,
                );
                for g in 0..nf {
                    // e^{±ik_βx} only through the a, a† pieces; aa† + a†a stays local
                    h[(i * nf + f, i * nf + g)] += C64::new(z * z * a * a / (2.0 * mass) * x2sym[(f, g)], 0.0);
                }
            }
            for j in 0..nk {
                let dk = momenta[i] - momenta[j];
                let close = |t: f64| (dk - t).abs() < 1e-9 * (1.0 + k_beta.abs());
                for f in 0..nf {
                    for g in 0..nf {
                        let mut v = 0.0;
                        // K = K′ + k_β: a e^{ik_βx}; kinetic cross term −(zA/2m)(K+K′)
                        if close(k_beta) {
                            v += -z * a * HBAR * (momenta[i] + momenta[j]) / (2.0 * mass) * lower[(f, g)];
                        }
                        if close(-k_beta) {
                            v += -z * a * HBAR * (momenta[i] + momenta[j]) / (2.0 * mass) * lower[(g, f)];
                        }
                        if close(2.0 * k_beta) {
                            v += z * z * a * a / (2.0 * mass) * lower2[(f, g)];
                        }
                        if close(-2.0 * k_beta) {
                            v += z * z * a * a / (2.0 * mass) * lower2[(g, f)];
                        }
                        if v != 0.0 {
                            h[(i * nf + f, j * nf + g)] += C64::new(v, 0.0);
                        }
                    }
                }
            }
        }
    }
    symmetrize(&mut h);
    Ok(h)
}
