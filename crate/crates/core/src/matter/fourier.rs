use super::{PotentialModel, RealGrid};
use crate::{Error, Result, C64};
use rustfft::FftPlanner;
use std::f64::consts::PI;

/// 𝒱(K) = (1/2π)·Σ_x V(x)e^{iKx}Δx on the dual grid K_n = nΔK, n ∈ [−N/2, N/2).
#[derive(Clone, Debug)]
pub struct FourierTable {
    pub grid: RealGrid,
    /// indexed by n + N/2
    pub values: Vec<C64>,
}

impl FourierTable {
    pub fn dk(&self) -> f64 {
        2.0 * PI / self.grid.box_length
    }

    /// 𝒱 at integer label n, aliased into [−N/2, N/2).
    pub fn at(&self, n: i64) -> C64 {
        let nn = self.grid.n_points as i64;
        let idx = (n + nn / 2).rem_euclid(nn);
        self.values[idx as usize]
    }

    /// Matrix element ⟨K|V|K′⟩ = ΔK·𝒱(K′ − K) between plane waves e^{iKx}/√L.
    pub fn element(&self, dn: i64) -> C64 {
        self.at(dn) * self.dk()
    }
}

pub fn potential_fourier_dense(potential: &PotentialModel, grid: &RealGrid) -> Result<FourierTable> {
    potential.validate()?;
    let n = grid.n_points;
    let mut buf: Vec<C64> = grid
        .points()
        .iter()
        .enumerate()
        .map(|(index, &x)| {
            let v = potential.sample(x);
            if v.is_finite() {
                Ok(C64::new(v, 0.0))
            } else {
                Err(Error::NonFinitePotential { index, x })
            }
        })
        .collect::<Result<_>>()?;
    // inverse FFT computes Σ_j f_j e^{+2πi jm/N}
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let pre = grid.dx() / (2.0 * PI);
    let half = (n / 2) as i64;
    let values = (0..n as i64)
        .map(|i| {
            let label = i - half;
            // e^{iK x_j} = e^{-iπ label} e^{2πi label j/N}
            let sign = if label.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            buf[label.rem_euclid(n as i64) as usize] * (pre * sign)
        })
        .collect();
    Ok(FourierTable { grid: *grid, values })
}

/// Analytic unit-cell coefficient v(κ) for the periodic variants.
pub fn unit_cell_fourier_coeff(potential: &PotentialModel, kappa: f64) -> Result<C64> {
    potential.validate()?;
    let a0 = potential
        .lattice_constant()
        .ok_or_else(|| Error::Unsupported(format!("{} is not periodic", potential.name())))?;
    let t = kappa * a0 / (2.0 * PI);
    let n = t.round();
    if (t - n).abs() > 1e-9 * (1.0 + t.abs()) {
        return Err(Error::InvalidParameter(format!("kappa = {kappa} is not a reciprocal lattice vector")));
    }
    Ok(C64::new(potential.lattice_coeff(n as i64)?, 0.0))
}

/// max_x |Σ_{|n|≤n_terms} v(κ_n)e^{iκ_n x} − V(x)| (κ = 0 omitted for erf).
pub fn bloch_reconstruction_check(potential: &PotentialModel, n_terms: usize, xs: &[f64]) -> Result<f64> {
    potential.validate()?;
    let a0 = potential
        .lattice_constant()
        .ok_or_else(|| Error::Unsupported(format!("{} is not periodic", potential.name())))?;
    let b = 2.0 * PI / a0;
    let coeffs: Vec<f64> = (1..=n_terms as i64).map(|n| potential.lattice_coeff(n)).collect::<Result<_>>()?;
    Ok(xs
        .iter()
        .map(|&x| {
            let rec: f64 = coeffs.iter().enumerate().map(|(i, v)| 2.0 * v * (b * (i + 1) as f64 * x).cos()).sum();
            (rec - potential.sample(x)).abs()
        })
        .fold(0.0, f64::max))
}

/// Exact Fourier coefficient of the potential periodized at period L:
/// V̂(G) = (1/L)∫_{−L/2}^{L/2} V(x)e^{iGx}dx. Every model is even, so V̂ is real.
pub fn box_fourier_coeff(potential: &PotentialModel, box_length: f64, g: f64) -> Result<f64> {
    potential.validate()?;
    if !(box_length > 0.0 && box_length.is_finite() && g.is_finite()) {
        return Err(Error::InvalidParameter(format!("box {box_length}, G {g}")));
    }
    let h = 0.5 * box_length;
    let sinc = |q: f64| if q == 0.0 { 1.0 } else { (q * h).sin() / (q * h) };
    Ok(match *potential {
        PotentialModel::Free => 0.0,
        PotentialModel::Harmonic { stiffness } => 0.5 * stiffness * even_moment(2, h, g),
        PotentialModel::DoubleWell { alpha, beta } => -alpha * even_moment(2, h, g) + beta * even_moment(4, h, g),
        PotentialModel::Cosine { v0, k0 } => 0.5 * v0 * (sinc(g - k0) + sinc(g + k0)),
        PotentialModel::PeriodicErfCoulomb { a0, .. } => {
            let b = 2.0 * PI / a0;
            potential
                .significant_harmonics()?
                .iter()
                .map(|&(n, v)| v * (sinc(g - b * n as f64) + sinc(g + b * n as f64)))
                .sum()
        }
    })
}

/// (1/2h)∫_{−h}^{h} x^p cos(Gx) dx by integration by parts.
fn even_moment(p: i32, h: f64, g: f64) -> f64 {
    if g == 0.0 {
        return if p % 2 == 0 { h.powi(p) / (p + 1) as f64 } else { 0.0 };
    }
    let (s, c) = (g * h).sin_cos();
    // j = ∫x^q cos, t = ∫x^q sin, built up from q = 0
    let (mut j, mut t) = (2.0 * s / g, 0.0);
    for q in 1..=p {
        let hq = h.powi(q);
        let odd = q % 2 == 1;
        // [x^q sin(Gx)] and [−x^q cos(Gx)] between −h and h
        let bs = if odd { 0.0 } else { 2.0 * hq * s };
        let bc = if odd { -2.0 * hq * c } else { 0.0 };
        let nj = bs / g - q as f64 / g * t;
        let nt = bc / g + q as f64 / g * j;
        j = nj;
        t = nt;
    }
    j / (2.0 * h)
}
