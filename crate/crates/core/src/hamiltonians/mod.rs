//! Joint matter⊗photon Hamiltonians in every gauge/representation.

mod grid_rad;
mod pa;
mod periodic;
mod pf;
mod structured;

pub use grid_rad::{build_ad_cosine, build_rad_multimode, build_rad_single, rad_single_operator};
pub use pa::build_pa_lwa;
pub use periodic::{
    build_pa_blwa_plane_waves, build_pa_k_blwa_exact, build_pa_k_lwa, build_rad_k, build_rad_k_blwa, BoostNumber,
    KResolvedContext,
};
pub use pf::{build_pf, pf_operator};
pub use structured::{PfOperator, RadGridOperator};

use crate::matter::PotentialModel;
use crate::operators::{ladder_extended, HermitianMatrix, JointBasis};
use crate::transforms::{bogoliubov, effective_mass_single, effective_xi_single};
use crate::{Result, HBAR};
use faer::Mat;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Gauge {
    Pf,
    Pa,
    Ad,
    Rad,
    RadK,
    RadKBlwa,
    PaKBlwa,
}

impl Gauge {
    pub const ALL: [Gauge; 7] =
        [Gauge::Pf, Gauge::Pa, Gauge::Ad, Gauge::Rad, Gauge::RadK, Gauge::RadKBlwa, Gauge::PaKBlwa];

    pub fn is_rad_family(&self) -> bool {
        matches!(self, Gauge::Rad | Gauge::RadK | Gauge::RadKBlwa)
    }

    /// Builders on the κ lattice of a periodic model.
    pub fn is_k_resolved(&self) -> bool {
        matches!(self, Gauge::RadK | Gauge::RadKBlwa | Gauge::PaKBlwa)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gauge::Pf => "pf",
            Gauge::Pa => "pa",
            Gauge::Ad => "ad",
            Gauge::Rad => "rad",
            Gauge::RadK => "rad-k",
            Gauge::RadKBlwa => "rad-k-blwa",
            Gauge::PaKBlwa => "pa-k-blwa",
        }
    }
}

impl std::fmt::Display for Gauge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Gauge {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.to_ascii_lowercase().replace('_', "-");
        Gauge::ALL
            .into_iter()
            .find(|g| g.name() == norm)
            .ok_or_else(|| crate::Error::Config(format!("unknown gauge '{s}'")))
    }
}

/// Single-mode dressed-frame quantities shared by the AD/RAD builders.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadFrame {
    pub omega: f64,
    pub gamma: f64,
    pub mass: f64,
    pub omega_dressed: f64,
    pub u: f64,
    pub v: f64,
    pub xi: f64,
    /// λ = ξΩ: the rotated-frame potential is V(x − λq̂)
    pub displacement: f64,
    pub m_eff: f64,
}

impl RadFrame {
    pub fn new(omega: f64, gamma: f64, mass: f64) -> Result<Self> {
        let b = bogoliubov(omega, gamma)?;
        let xi = effective_xi_single(omega, gamma, mass);
        Ok(Self {
            omega,
            gamma,
            mass,
            omega_dressed: b.omega_dressed,
            u: b.u,
            v: b.v,
            xi,
            displacement: xi * b.omega_dressed,
            m_eff: effective_mass_single(mass, omega, gamma)?,
        })
    }

    /// Dimensionless coupling of the phase factor in Fock units, λ·√(ħ/2Ω).
    pub fn fock_coupling(&self) -> f64 {
        self.displacement * (HBAR / (2.0 * self.omega_dressed)).sqrt()
    }
}

/// Everything needed to reproduce and interpret a built matrix.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ParamRecord {
    pub model: Option<PotentialModel>,
    pub mass: f64,
    /// bare mode frequency (ω_c, or ω_{k_β} for k-resolved builders)
    pub omega: f64,
    pub gamma: Option<f64>,
    pub a0: f64,
    pub frame: Option<RadFrame>,
    pub k: Option<f64>,
    pub k_beta: Option<f64>,
    pub n_matter: usize,
    pub n_fock: Vec<usize>,
    pub boost: Option<BoostNumber>,
}

#[derive(Clone, Debug)]
pub struct GaugeHamiltonian {
    pub gauge: Gauge,
    pub matrix: HermitianMatrix,
    pub basis: JointBasis,
    pub params: ParamRecord,
    /// plane-wave momentum of each matter index (empty for PF)
    pub matter_momenta: Vec<f64>,
}

impl GaugeHamiltonian {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

/// Polynomial in b, b† evaluated in n+2 levels and cropped to n, so that every
/// kept matrix element equals that of the untruncated operator.
pub(crate) fn exact_quadratic(n: usize, f: impl Fn(&Mat<f64>, &Mat<f64>) -> Mat<f64>) -> Mat<f64> {
    let b = ladder_extended(n + 2);
    let bd = b.transpose().to_owned();
    let full = f(&b, &bd);
    Mat::from_fn(n, n, |i, j| full[(i, j)])
}

pub(crate) fn identity(n: usize) -> Mat<f64> {
    Mat::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 })
}
