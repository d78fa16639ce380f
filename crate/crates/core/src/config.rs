//! Run configuration (TOML). Unknown keys are rejected; every default is
//! materialized when the resolved config is echoed.

use crate::matter::PotentialModel;
use crate::transforms::CouplingScaling;
use crate::{hamiltonians::BoostNumber, Error, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelBlock,
    #[serde(default)]
    pub cavity: CavityBlock,
    #[serde(default)]
    pub basis: BasisBlock,
    #[serde(default)]
    pub sweep: SweepBlock,
    #[serde(default)]
    pub output: OutputBlock,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelBlock {
    pub potential: PotentialModel,
    #[serde(default = "one")]
    pub mass: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CavityBlock {
    /// ω_c (or ω₀ at k = 0 for dispersive cavities)
    pub omega_c: f64,
    /// speed of light in the dispersion ω_k = √(ω_c² + c²k²)
    pub c: f64,
    /// γ₀/ω₀ for single-point commands
    pub gamma_over_omega: f64,
    pub coupling_scaling: CouplingScaling,
    /// photon-number operator used by the beyond-LWA boost in the RAD frame
    pub boost_number: BoostNumber,
}

impl Default for CavityBlock {
    fn default() -> Self {
        Self {
            omega_c: 1.0,
            c: 137.035_999,
            gamma_over_omega: 0.0,
            coupling_scaling: CouplingScaling::FixedA,
            boost_number: BoostNumber::Full,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BasisBlock {
    /// points of the real-space DVR used for matter eigenstates
    pub n_dvr: usize,
    /// initial DVR box; grown automatically until states vanish at the edges
    pub dvr_box: f64,
    pub boundary_tol: f64,
    /// matter states kept by PF
    pub n_matter: usize,
    /// dense K grid (RAD, p·A, AD) and its box; k_box = 0 selects the box per
    /// coupling by tail balance (confining models only)
    pub n_k: usize,
    pub k_box: f64,
    /// κ values for periodic models (odd)
    pub n_bands: usize,
    pub n_fock: usize,
    /// convergence ladder: [[n_matter_or_k_or_bands, n_fock], ...]
    pub ladder: Vec<[usize; 2]>,
    /// above this dimension PF and RAD use the iterative solver
    pub dense_max_dim: usize,
}

impl Default for BasisBlock {
    fn default() -> Self {
        Self {
            n_dvr: 2048,
            dvr_box: 6.0,
            boundary_tol: 1e-8,
            n_matter: 50,
            n_k: 100,
            k_box: 0.0,
            n_bands: 101,
            n_fock: 20,
            ladder: Vec::new(),
            dense_max_dim: 2500,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepBlock {
    /// explicit γ/ω values; when empty a log grid is used
    pub gammas: Vec<f64>,
    pub gamma_min: f64,
    pub gamma_max: f64,
    pub n_gamma: usize,
    /// k grid over [−k_max, k_max]; k_max = 0 means the zone edge π/a0
    pub n_k_points: usize,
    pub k_max: f64,
    /// k_β grid for two-dimensional dispersions; k_beta_max = 0 means π/a0
    pub n_k_beta_points: usize,
    pub k_beta_max: f64,
    /// k (and k_β) of single-k periodic commands
    pub k_point: f64,
    /// fixed k_β for one-dimensional dispersions; absent means k_β = k
    pub k_beta: Option<f64>,
    pub n_eigs: usize,
    /// evaluate points in parallel
    pub parallel: bool,
    /// self-convergence tolerance (relative) for ladder studies
    pub tolerance: f64,
}

impl Default for SweepBlock {
    fn default() -> Self {
        Self {
            gammas: Vec::new(),
            gamma_min: 0.01,
            gamma_max: 100.0,
            n_gamma: 9,
            n_k_points: 41,
            k_max: 0.0,
            n_k_beta_points: 21,
            k_beta_max: 0.0,
            k_point: 0.0,
            k_beta: None,
            n_eigs: 10,
            parallel: true,
            tolerance: 1e-6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputBlock {
    /// empty: use $RADQED_OUT or ./radqed-out
    pub directory: String,
    pub csv: bool,
    pub json: bool,
    pub eigenvectors: bool,
    pub wavefunctions: bool,
}

impl Default for OutputBlock {
    fn default() -> Self {
        Self { directory: String::new(), csv: true, json: true, eigenvectors: false, wavefunctions: false }
    }
}

fn one() -> f64 {
    1.0
}

impl RunConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads TOML, or the `config` member of an echoed `run.json`.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| Error::Io { path: path.display().to_string(), source })?;
        if path.extension().is_some_and(|e| e == "json") {
            let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::Config(e.to_string()))?;
            let inner = v.get("config").cloned().unwrap_or(v);
            let cfg: RunConfig = serde_json::from_value(inner).map_err(|e| Error::Config(e.to_string()))?;
            cfg.validate()?;
            Ok(cfg)
        } else {
            Self::from_toml_str(&text)
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::Config(s));
        self.model.potential.validate().map_err(|e| Error::Config(e.to_string()))?;
        if !(self.model.mass > 0.0) {
            return bad(format!("model.mass = {} must be positive", self.model.mass));
        }
        let c = &self.cavity;
        if !(c.omega_c > 0.0) || !(c.c > 0.0) || !(c.gamma_over_omega >= 0.0) {
            return bad("cavity: omega_c, c must be positive and gamma_over_omega >= 0".into());
        }
        let b = &self.basis;
        if !(b.k_box >= 0.0 && b.dvr_box > 0.0 && b.boundary_tol > 0.0) {
            return bad("basis: k_box >= 0, dvr_box > 0 and boundary_tol > 0 required".into());
        }
        if b.n_fock < 2 || b.n_k < 8 || b.n_dvr < 8 || b.n_matter == 0 {
            return bad("basis: n_fock >= 2, n_k >= 8, n_dvr >= 8, n_matter >= 1 required".into());
        }
        if b.n_bands % 2 == 0 {
            return bad(format!("basis.n_bands = {} must be odd", b.n_bands));
        }
        for w in b.ladder.windows(2) {
            if !(w[1][0] > w[0][0] && w[1][1] > w[0][1]) {
                return bad(format!("basis.ladder must increase strictly in both entries: {:?}", b.ladder));
            }
        }
        let s = &self.sweep;
        if s.gammas.iter().any(|g| !(g.is_finite() && *g >= 0.0)) || s.gammas.windows(2).any(|w| w[1] <= w[0]) {
            return bad("sweep.gammas must be finite, non-negative and strictly increasing".into());
        }
        if s.gammas.is_empty() && !(s.gamma_min > 0.0 && s.gamma_max >= s.gamma_min && s.n_gamma >= 1) {
            return bad("sweep: need 0 < gamma_min <= gamma_max and n_gamma >= 1".into());
        }
        if s.n_k_points == 0 || s.n_k_beta_points == 0 || !(s.k_max >= 0.0 && s.k_beta_max >= 0.0) {
            return bad("sweep: k grids need at least one point and non-negative extents".into());
        }
        if !s.k_point.is_finite() || s.k_beta.is_some_and(|k| !k.is_finite()) {
            return bad("sweep: k_point and k_beta must be finite".into());
        }
        if s.n_eigs == 0 {
            return bad("sweep.n_eigs must be positive".into());
        }
        Ok(())
    }

    /// Coupling axis γ/ω (sorted).
    pub fn coupling_axis(&self) -> Vec<f64> {
        let s = &self.sweep;
        if !s.gammas.is_empty() {
            return s.gammas.clone();
        }
        if s.n_gamma == 1 {
            return vec![s.gamma_min];
        }
        let (a, b) = (s.gamma_min.ln(), s.gamma_max.ln());
        (0..s.n_gamma).map(|i| (a + (b - a) * i as f64 / (s.n_gamma - 1) as f64).exp()).collect()
    }

    /// Basis rungs: the ladder, or the single working basis when it is empty.
    /// The first entry is n_matter (PF), n_k (K-grid gauges) or n_bands.
    pub fn rungs(&self, periodic: bool, pf: bool) -> Vec<[usize; 2]> {
        let b = &self.basis;
        if !b.ladder.is_empty() {
            return b.ladder.clone();
        }
        let first = if pf {
            b.n_matter
        } else if periodic {
            b.n_bands
        } else {
            b.n_k
        };
        vec![[first, b.n_fock]]
    }

    /// Symmetric grid of `n` points over [−extent, extent]; extent 0 means π/a0.
    pub fn k_grid(&self, n: usize, extent: f64) -> Vec<f64> {
        let a0 = self.model.potential.lattice_constant().unwrap_or(1.0);
        let e = if extent > 0.0 { extent } else { std::f64::consts::PI / a0 };
        if n == 1 {
            return vec![0.0];
        }
        (0..n).map(|i| -e + 2.0 * e * i as f64 / (n - 1) as f64).collect()
    }

    /// ω_k, γ_k along the cavity dispersion at the configured γ₀/ω₀.
    pub fn dispersion(&self, gamma_over_omega: f64) -> crate::Dispersion {
        crate::Dispersion {
            omega_c: self.cavity.omega_c,
            c: self.cavity.c,
            gamma0: gamma_over_omega * self.cavity.omega_c,
            scaling: self.cavity.coupling_scaling,
        }
    }
}
