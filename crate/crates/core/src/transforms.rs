//! Photonic-frame mathematics: coupling γ, Bogoliubov and normal-mode
//! transforms, the effective coupling ξ, effective mass and cavity dispersion.
//!
//! Closed forms are generic over [`Real`]; the multimode eigenproblem is f64.

use crate::scalar::{hbar, Real};
use crate::{Error, Result};
use faer::{Mat, Side};
use serde::{Deserialize, Serialize};

/// One retained cavity mode. The matter coordinate is the x axis, so only
/// `polarization[0]` enters p·A; the full vector enters e·e′ between modes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CavityMode<T> {
    pub omega: T,
    pub a0: T,
    pub polarization: [T; 3],
    pub k_beta: T,
}

impl<T: Real> CavityMode<T> {
    pub fn new(omega: T, a0: T) -> Result<Self> {
        let m = Self { omega, a0, polarization: [T::one(), T::zero(), T::zero()], k_beta: T::zero() };
        m.validate()?;
        Ok(m)
    }

    pub fn with_polarization(mut self, e: [T; 3]) -> Result<Self> {
        self.polarization = e;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega > T::zero()) {
            return Err(Error::InvalidParameter(format!("mode frequency {:?} must be positive", self.omega)));
        }
        let n2 = self.polarization.iter().fold(T::zero(), |a, &x| a + x * x);
        if (n2 - T::one()).abs() > T::lit(1e-6) {
            return Err(Error::InvalidParameter("polarization must be a unit vector".into()));
        }
        Ok(())
    }

    /// Mode whose vector-potential amplitude produces coupling `gamma` for one particle.
    pub fn from_gamma(omega: T, gamma: T, charge: T, mass: T) -> Result<Self> {
        let a0 = gamma * (mass * hbar::<T>() / (charge * charge * omega)).sqrt();
        Self::new(omega, a0)
    }

    fn dot(&self, other: &Self) -> T {
        (0..3).fold(T::zero(), |a, i| a + self.polarization[i] * other.polarization[i])
    }
}

/// γ_β = |A_β|·√((ω_β/ħ)·Σ_j z_j²/m_j)
pub fn coupling_gamma<T: Real>(modes: &[CavityMode<T>], charges: &[T], masses: &[T]) -> Result<Vec<T>> {
    if charges.len() != masses.len() {
        return Err(Error::Dimension("charges and masses differ in length".into()));
    }
    if masses.iter().any(|&m| !(m > T::zero())) {
        return Err(Error::InvalidParameter("masses must be positive".into()));
    }
    let s = charges.iter().zip(masses).fold(T::zero(), |a, (&z, &m)| a + z * z / m);
    Ok(modes.iter().map(|md| md.a0.abs() * (md.omega / hbar::<T>() * s).sqrt()).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BogoliubovResult<T> {
    pub omega_dressed: T,
    pub u: T,
    pub v: T,
    /// zero-point shift (ħ/2)(Ω − ω)
    pub zpe_shift: T,
}

pub fn bogoliubov<T: Real>(omega: T, gamma: T) -> Result<BogoliubovResult<T>> {
    if !(omega > T::zero()) || !gamma.is_finite() {
        return Err(Error::InvalidParameter(format!("bogoliubov(omega = {omega:?}, gamma = {gamma:?})")));
    }
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let big = (omega * omega + two * gamma * gamma).sqrt();
    let r = (big / omega).sqrt();
    Ok(BogoliubovResult {
        omega_dressed: big,
        u: half * (r + r.recip()),
        v: half * (r - r.recip()),
        zpe_shift: half * hbar::<T>() * (big - omega),
    })
}

/// ξ = √(2/m)·γ/Ω² — the completed-square coefficient of the single-mode problem.
pub fn effective_xi_single<T: Real>(omega: T, gamma: T, mass: T) -> T {
    let big2 = omega * omega + T::lit(2.0) * gamma * gamma;
    (T::lit(2.0) / mass).sqrt() * gamma / big2
}

/// m_eff = m·Ω²/ω², equivalently 1/m_eff = 1/m − Ω²ξ².
pub fn effective_mass_single<T: Real>(mass: T, omega: T, gamma: T) -> Result<T> {
    let b = bogoliubov(omega, gamma)?;
    let xi = effective_xi_single(omega, gamma, mass);
    let inv = mass.recip() - b.omega_dressed * b.omega_dressed * xi * xi;
    if !(inv > T::zero()) {
        return Err(Error::InvalidParameter(format!("1/m_eff = {inv:?} is not positive")));
    }
    Ok(inv.recip())
}

/// Phase coefficient λ = ξΩ: in the rotated frame the potential reads V(x − λq̂).
pub fn rad_displacement<T: Real>(omega: T, gamma: T, mass: T) -> T {
    let b = bogoliubov(omega, gamma).expect("positive omega");
    effective_xi_single(omega, gamma, mass) * b.omega_dressed
}

/// Multimode normal-mode data for one particle on the x axis.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormalModeSet {
    pub omegas: Vec<f64>,
    /// rows are normal modes: Q_α = Σ_β o[α][β] q_β
    pub o_matrix: Vec<Vec<f64>>,
    /// vector-potential magnitudes carried by each normal mode along x
    pub a_alpha: Vec<f64>,
    /// ξ_α for the single particle (one row per particle in general)
    pub xi: Vec<Vec<f64>>,
    pub g_matrix: Vec<Vec<f64>>,
}

impl NormalModeSet {
    /// 1/m_eff = 1/m − Σ_α Ω_α² ξ_α² for particle `j`.
    pub fn effective_mass(&self, j: usize, mass: f64) -> Result<f64> {
        let inv = 1.0 / mass
            - self.omegas.iter().zip(&self.xi[j]).map(|(o, x)| o * o * x * x).sum::<f64>();
        if !(inv > 0.0) {
            return Err(Error::InvalidParameter(format!("1/m_eff = {inv} is not positive")));
        }
        Ok(1.0 / inv)
    }

    /// Phase coefficients λ_α = ξ_α Ω_α.
    pub fn displacements(&self, j: usize) -> Vec<f64> {
        self.omegas.iter().zip(&self.xi[j]).map(|(o, x)| o * x).collect()
    }
}

pub fn normal_mode_transform(
    modes: &[CavityMode<f64>],
    charges: &[f64],
    masses: &[f64],
) -> Result<NormalModeSet> {
    if modes.is_empty() {
        return Err(Error::InvalidParameter("at least one mode required".into()));
    }
    for m in modes {
        m.validate()?;
    }
    let gam = coupling_gamma(modes, charges, masses)?;
    let nm = modes.len();
    let g = Mat::from_fn(nm, nm, |b, c| {
        let d = if b == c { modes[b].omega * modes[b].omega } else { 0.0 };
        d + 2.0 * gam[b] * gam[c] * modes[b].dot(&modes[c])
    });
    let evd = g
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Eigensolver(format!("g-matrix: {e:?}")))?;
    let ev: Vec<f64> = evd.S().column_vector().iter().copied().collect();
    if ev.iter().any(|&x| !(x > 0.0)) {
        return Err(Error::InvalidParameter(format!("g-matrix not positive definite: {ev:?}")));
    }
    let u = evd.U();
    // deterministic sign: largest component of each normal mode positive
    let mut o = vec![vec![0.0; nm]; nm];
    for a in 0..nm {
        let col: Vec<f64> = (0..nm).map(|b| u[(b, a)]).collect();
        let piv = col.iter().copied().fold(0.0f64, |acc, x| if x.abs() > acc.abs() { x } else { acc });
        let s = if piv < 0.0 { -1.0 } else { 1.0 };
        for b in 0..nm {
            o[a][b] = s * col[b];
        }
    }
    let omegas: Vec<f64> = ev.iter().map(|x| x.sqrt()).collect();
    // p·A linear coupling of q_β: −(z/m)·√(2ω_β/ħ)·A_β·e_β,x · p̂ q̂_β (summed over particles)
    let mut xi = Vec::with_capacity(charges.len());
    for (&z, &m) in charges.iter().zip(masses) {
        let c: Vec<f64> = modes
            .iter()
            .map(|md| z / m * (2.0 * md.omega / crate::HBAR).sqrt() * md.a0 * md.polarization[0])
            .collect();
        xi.push(
            (0..nm)
                .map(|a| (0..nm).map(|b| o[a][b] * c[b]).sum::<f64>() / (omegas[a] * omegas[a]))
                .collect(),
        );
    }
    let a_alpha = (0..nm)
        .map(|a| (0..nm).map(|b| o[a][b] * modes[b].a0 * modes[b].polarization[0]).sum())
        .collect();
    let g_matrix = (0..nm).map(|b| (0..nm).map(|c| g[(b, c)]).collect()).collect();
    Ok(NormalModeSet { omegas, o_matrix: o, a_alpha, xi, g_matrix })
}

/// How γ follows the photon wavevector along a dispersion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CouplingScaling {
    /// constant |A| (fixed mode volume): γ_k = γ₀·√(ω_k/ω₀)
    FixedA,
    FixedGamma,
}

/// Fabry–Pérot dispersion ω_k = √(ω_c² + c²k²) with the matching γ_k.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dispersion<T> {
    pub omega_c: T,
    pub c: T,
    pub gamma0: T,
    pub scaling: CouplingScaling,
}

pub fn cavity_dispersion<T: Real>(omega_c: T, c: T, k: T) -> Result<T> {
    if !(omega_c > T::zero()) || !(c > T::zero()) {
        return Err(Error::InvalidParameter("omega_c and c must be positive".into()));
    }
    Ok((omega_c * omega_c + c * c * k * k).sqrt())
}

impl<T: Real> Dispersion<T> {
    pub fn omega(&self, k: T) -> Result<T> {
        cavity_dispersion(self.omega_c, self.c, k)
    }

    pub fn gamma(&self, k: T) -> Result<T> {
        let w = self.omega(k)?;
        Ok(match self.scaling {
            CouplingScaling::FixedA => self.gamma0 * (w / self.omega_c).sqrt(),
            CouplingScaling::FixedGamma => self.gamma0,
        })
    }
}
